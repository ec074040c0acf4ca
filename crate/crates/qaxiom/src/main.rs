use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let wants_json = argv.iter().any(|a| a == "--json");
    let result = qaxiom::frontend::dispatch(&argv);
    if result.exit_code == 2 && result.command.is_empty() {
        // Usage / argument errors render like any CLI tool.
        eprintln!("{}", result.text.trim_end());
    } else if wants_json {
        println!("{}", qaxiom::frontend::render_json(&result.json));
    } else {
        let mut out = std::io::stdout();
        let _ = writeln!(out, "{}", result.text.trim_end());
    }
    std::process::exit(result.exit_code);
}
