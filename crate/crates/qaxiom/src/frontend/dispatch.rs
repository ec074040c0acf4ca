//! Command dispatch: maps CLI invocations onto the library operations and
//! renders the resulting reports as aligned text or canonical JSON.
//!
//! Exit codes: 0 for success (or a passing verdict), 1 for a computed
//! failing verdict (INCONSISTENT, residual over tolerance, not
//! quantized), 2 for usage and parse errors.

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::flux::{
    canonical_action_integral, flux_quantization, loop_integral, plaquette_phase, GaugeField,
    GaugeKind, LoopPath,
};
use crate::repr::{
    grid_representation, landau_representation, representation_audit, Convention, GridGauge,
    Representation,
};
use crate::spectra::{
    kinetic_hamiltonian, landau_level_check, limit_scan, spectrum, uncertainty, ScanContext,
    ScanQuantity, Sector, StateSpec,
};
use crate::symalg::{
    dimension_check, equivalence_check, jacobi_check, mixed_commutator, normal_order, substitute,
    Algebra, Coefficient, DerivativeMode, DimensionMap, Substitution, Verdict,
};

use super::files::{resolve_algebra, resolve_substitution};
use super::parser::parse_polynomial;

#[derive(Parser)]
#[command(
    name = "qaxiom",
    about = "Workbench for noncommutative operator algebras: exact commutator \
             rewriting, matrix representations, spectra, uncertainty and flux checks",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Emit a single canonical JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
}

fn parse_epsilon(text: &str) -> std::result::Result<i8, String> {
    match text {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(format!("epsilon12 must be +1 or -1, got `{other}`")),
    }
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Reduced Planck constant.
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    /// Electric charge.
    #[arg(long = "e", default_value_t = 1.0)]
    charge: f64,
    /// Magnetic field strength.
    #[arg(long = "B", default_value_t = 1.0)]
    field: f64,
    /// Mass.
    #[arg(long = "M", default_value_t = 1.0)]
    mass: f64,
    /// Angular velocity of the bounded motion.
    #[arg(long, default_value_t = 0.5)]
    alphadot: f64,
}

impl ParamArgs {
    fn map(&self) -> BTreeMap<String, f64> {
        let mut p = BTreeMap::new();
        p.insert("hbar".to_string(), self.hbar);
        p.insert("e".to_string(), self.charge);
        p.insert("B".to_string(), self.field);
        p.insert("M".to_string(), self.mass);
        p.insert("alphadot".to_string(), self.alphadot);
        p
    }
}

#[derive(Args, Clone)]
struct RepArgs {
    /// Representation kind.
    #[arg(long = "rep", value_enum, default_value_t = RepChoice::Landau)]
    rep: RepChoice,
    /// Ladder truncation (landau representation).
    #[arg(long, default_value_t = 256)]
    ntrunc: usize,
    /// Grid points per axis (grid representation; power of two >= 16).
    #[arg(long, default_value_t = 64)]
    npoints: usize,
    /// Box side length (grid representation).
    #[arg(long, default_value_t = 20.0)]
    boxsize: f64,
    /// Gauge for the grid kinetic momenta.
    #[arg(long, value_enum, default_value_t = GaugeChoice::None)]
    gauge: GaugeChoice,
    /// Cyclotron-frequency convention used by level checks.
    #[arg(long, value_enum, default_value_t = ConventionChoice::Standard)]
    convention: ConventionChoice,
    #[arg(long, value_parser = parse_epsilon, default_value = "-1")]
    epsilon12: i8,
    #[command(flatten)]
    params: ParamArgs,
}

impl RepArgs {
    fn build(&self) -> Result<Representation> {
        match self.rep {
            RepChoice::Landau => landau_representation(
                self.ntrunc,
                self.params.map(),
                self.convention.into(),
            ),
            RepChoice::Grid => grid_representation(
                self.npoints,
                self.boxsize,
                self.gauge.into(),
                self.params.map(),
                self.epsilon12,
            ),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RepChoice {
    Landau,
    Grid,
}

#[derive(Clone, Copy, ValueEnum)]
enum GaugeChoice {
    None,
    Paper,
    Symmetric,
}

impl From<GaugeChoice> for GridGauge {
    fn from(g: GaugeChoice) -> GridGauge {
        match g {
            GaugeChoice::None => GridGauge::None,
            GaugeChoice::Paper => GridGauge::Paper,
            GaugeChoice::Symmetric => GridGauge::Symmetric,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionChoice {
    Standard,
    Paper,
}

impl From<ConventionChoice> for Convention {
    fn from(c: ConventionChoice) -> Convention {
        match c {
            ConventionChoice::Standard => Convention::Standard,
            ConventionChoice::Paper => Convention::Paper,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal-order a (bracketed) expression under an algebra.
    Commute {
        expression: String,
        #[arg(long, default_value = "heisenberg2")]
        algebra: String,
        #[arg(long, value_parser = parse_epsilon)]
        epsilon12: Option<i8>,
    },
    /// Normal-order an expression under an algebra.
    #[command(name = "normal-order")]
    NormalOrder {
        expression: String,
        #[arg(long, default_value = "heisenberg2")]
        algebra: String,
        #[arg(long, value_parser = parse_epsilon)]
        epsilon12: Option<i8>,
    },
    /// Check the Jacobi identity on every generator triple.
    Jacobi {
        #[arg(long, default_value = "heisenberg2")]
        algebra: String,
        #[arg(long, value_parser = parse_epsilon)]
        epsilon12: Option<i8>,
    },
    /// Check dimensional homogeneity of a commutator table.
    Dims {
        #[arg(long, default_value = "heisenberg2")]
        algebra: String,
        #[arg(long, value_parser = parse_epsilon)]
        epsilon12: Option<i8>,
        /// Override or extend the dimension map, e.g. --dim B=-2.
        #[arg(long = "dim", value_name = "KEY=VAL")]
        dims: Vec<String>,
    },
    /// Apply a substitution to an expression, then normal-order.
    Subst {
        expression: String,
        #[arg(long)]
        subst: String,
        #[arg(long, default_value = "heisenberg2")]
        algebra: String,
        #[arg(long, value_parser = parse_epsilon)]
        epsilon12: Option<i8>,
    },
    /// Re-derive every declared commutator through a substitution.
    Equiv {
        #[arg(long, default_value = "magnetic2")]
        algebra: String,
        #[arg(long, default_value = "preset:eq5")]
        subst: String,
        #[arg(long, value_parser = parse_epsilon)]
        epsilon12: Option<i8>,
    },
    /// Decompose the mixed commutator D1(f2·) - D2(f1·) exactly.
    Mixed {
        #[arg(long, value_enum, default_value_t = ModeChoice::Position)]
        mode: ModeChoice,
        #[arg(long, value_parser = parse_epsilon, default_value = "-1")]
        epsilon12: i8,
        /// Scalar coefficient expressions c_mn; defaults model the bounded
        /// cyclotron motion and its momentum-space dual.
        #[arg(long)]
        c11: Option<String>,
        #[arg(long)]
        c12: Option<String>,
        #[arg(long)]
        c21: Option<String>,
        #[arg(long)]
        c22: Option<String>,
    },
    /// Numerically audit a representation against an algebra.
    Audit {
        #[arg(long, default_value = "magnetic2")]
        algebra: String,
        #[arg(long)]
        tolerance: Option<f64>,
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Eigenvalues of a Hamiltonian on the projected subspace.
    Spectrum {
        #[arg(long, default_value_t = 5)]
        levels: usize,
        /// Hamiltonian expression; defaults to the kinetic (P1^2+P2^2)/(2M).
        #[arg(long)]
        hamiltonian: Option<String>,
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Uncertainty product and Robertson bound for two observables.
    Uncertainty {
        #[arg(long = "op-a", default_value = "Q1")]
        op_a: String,
        #[arg(long = "op-b", default_value = "Q2")]
        op_b: String,
        /// State spec: ground, basis:N or random:SEED.
        #[arg(long, default_value = "ground")]
        state: String,
        /// Shorthand for --state random:SEED.
        #[arg(long, conflicts_with = "state")]
        seed: Option<u64>,
        #[arg(long)]
        hamiltonian: Option<String>,
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Tabulate a quantity over a parameter sweep.
    Scan {
        #[arg(long, value_enum)]
        quantity: QuantityChoice,
        #[arg(long, value_enum, default_value_t = SectorChoice::Qq)]
        sector: SectorChoice,
        #[arg(long, default_value = "B")]
        param: String,
        /// Comma-separated positive values, e.g. 1,0.1,0.01.
        #[arg(long)]
        values: String,
        #[arg(long, default_value_t = 64)]
        ntrunc: usize,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Loop integral of e·A and flux-quantization detection.
    Flux {
        /// Path: `circle:r=RADIUS,n=SEGMENTS` or a two-column CSV file.
        #[arg(long)]
        path: String,
        #[arg(long, value_enum, default_value_t = FluxGaugeChoice::Symmetric)]
        gauge: FluxGaugeChoice,
        #[arg(long, value_parser = parse_epsilon, default_value = "-1")]
        epsilon12: i8,
        /// Quantization tolerance on the residual (in units of h).
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        /// Momentum rule for the canonical action comparison:
        /// preset:ea (P = e·A of the active gauge), preset:eq5, or a file.
        #[arg(long)]
        subst: Option<String>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Peierls link phases on a square grid of sites.
    Plaquette {
        #[arg(long, default_value_t = 8)]
        npoints: usize,
        #[arg(long, default_value_t = 1.0)]
        spacing: f64,
        #[arg(long, value_enum, default_value_t = FluxGaugeChoice::Symmetric)]
        gauge: FluxGaugeChoice,
        #[arg(long, value_parser = parse_epsilon, default_value = "-1")]
        epsilon12: i8,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeChoice {
    Position,
    Momentum,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityChoice {
    #[value(name = "commutator-scale")]
    CommutatorScale,
    #[value(name = "magnetic-length")]
    MagneticLength,
    #[value(name = "uncertainty-product")]
    UncertaintyProduct,
}

#[derive(Clone, Copy, ValueEnum)]
enum SectorChoice {
    Qq,
    Pp,
}

#[derive(Clone, Copy, ValueEnum)]
enum FluxGaugeChoice {
    Paper,
    Symmetric,
    Landau,
}

impl From<FluxGaugeChoice> for GaugeKind {
    fn from(g: FluxGaugeChoice) -> GaugeKind {
        match g {
            FluxGaugeChoice::Paper => GaugeKind::Paper,
            FluxGaugeChoice::Symmetric => GaugeKind::Symmetric,
            FluxGaugeChoice::Landau => GaugeKind::Landau,
        }
    }
}

/// Outcome of one CLI invocation.
pub struct CommandResult {
    pub command: String,
    pub json: Value,
    pub text: String,
    pub exit_code: i32,
}

/// Routes an argument vector (including the program name) to the matching
/// operation.
pub fn dispatch(argv: &[String]) -> CommandResult {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render().to_string();
            return CommandResult {
                command: String::new(),
                json: json!({"error": rendered, "exitCode": 2}),
                text: rendered,
                exit_code: 2,
            };
        }
    };
    let command = command_name(&cli.command).to_string();
    match run(&cli.command) {
        Ok(outcome) => {
            let status = if outcome.exit_code == 0 { "ok" } else { "fail" };
            let json = json!({
                "command": command,
                "input": {
                    "argv": argv[1..].to_vec(),
                },
                "report": outcome.report,
                "status": status,
                "exitCode": outcome.exit_code,
            });
            CommandResult {
                command,
                json,
                text: outcome.text,
                exit_code: outcome.exit_code,
            }
        }
        Err(err) => {
            let message = err.to_string();
            CommandResult {
                command: command.clone(),
                json: json!({
                    "command": command,
                    "input": {"argv": argv[1..].to_vec()},
                    "error": message,
                    "exitCode": 2,
                }),
                text: format!("error: {message}"),
                exit_code: 2,
            }
        }
    }
}

/// Convenience wrapper for tests: dispatch with string arguments and an
/// implicit program name.
pub fn dispatch_args(args: &[&str]) -> CommandResult {
    let mut argv = vec!["qaxiom".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    dispatch(&argv)
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Commute { .. } => "commute",
        Cmd::NormalOrder { .. } => "normal-order",
        Cmd::Jacobi { .. } => "jacobi",
        Cmd::Dims { .. } => "dims",
        Cmd::Subst { .. } => "subst",
        Cmd::Equiv { .. } => "equiv",
        Cmd::Mixed { .. } => "mixed",
        Cmd::Audit { .. } => "audit",
        Cmd::Spectrum { .. } => "spectrum",
        Cmd::Uncertainty { .. } => "uncertainty",
        Cmd::Scan { .. } => "scan",
        Cmd::Flux { .. } => "flux",
        Cmd::Plaquette { .. } => "plaquette",
    }
}

struct Outcome {
    report: Value,
    text: String,
    exit_code: i32,
}

fn to_value<T: Serialize>(report: &T) -> Value {
    serde_json::to_value(report).expect("reports serialize")
}

fn run(cmd: &Cmd) -> Result<Outcome> {
    match cmd {
        Cmd::Commute {
            expression,
            algebra,
            epsilon12,
        }
        | Cmd::NormalOrder {
            expression,
            algebra,
            epsilon12,
        } => {
            let a = resolve_algebra(algebra, *epsilon12)?;
            let input = parse_polynomial(expression, &a)?;
            let result = normal_order(&input, &a)?;
            let report = json!({
                "algebra": algebra,
                "expression": expression,
                "result": result.to_string(),
            });
            Ok(Outcome {
                text: format!("{expression}  =>  {result}"),
                report,
                exit_code: 0,
            })
        }
        Cmd::Jacobi { algebra, epsilon12 } => {
            let a = resolve_algebra(algebra, *epsilon12)?;
            let report = jacobi_check(&a);
            let mut text = format!(
                "jacobi check over {} triples: {}\n",
                report.triples_checked,
                if report.all_zero { "all residuals zero" } else { "NONZERO residuals" }
            );
            for r in &report.nonzero_residuals {
                text.push_str(&format!(
                    "  [{}, [{}, {}]] cycle residual: {}\n",
                    r.triple[0], r.triple[1], r.triple[2], r.residual
                ));
            }
            Ok(Outcome {
                exit_code: if report.all_zero { 0 } else { 1 },
                report: to_value(&report),
                text,
            })
        }
        Cmd::Dims {
            algebra,
            epsilon12,
            dims,
        } => {
            let a = resolve_algebra(algebra, *epsilon12)?;
            let mut map = DimensionMap::standard();
            for entry in dims {
                let (key, value) = entry.split_once('=').ok_or_else(|| {
                    Error::UsageError(format!("--dim expects KEY=VAL, got `{entry}`"))
                })?;
                let dim: i64 = value.parse().map_err(|_| {
                    Error::UsageError(format!("dimension for `{key}` must be an integer"))
                })?;
                map.insert(key.trim(), dim);
            }
            let report = dimension_check(&a, &map)?;
            let mut text = String::new();
            for e in &report.entries {
                let rhs = if e.rhs_exponents.is_empty() {
                    "zero RHS".to_string()
                } else {
                    format!("{:?}", e.rhs_exponents)
                };
                text.push_str(&format!(
                    "{:<10} L^{:<3} vs {:<12} {}\n",
                    e.pair,
                    e.lhs_exponent,
                    rhs,
                    if e.pass { "ok" } else { "MISMATCH" }
                ));
            }
            text.push_str(if report.all_pass {
                "all entries homogeneous\n"
            } else {
                "dimensional mismatch found\n"
            });
            Ok(Outcome {
                exit_code: if report.all_pass { 0 } else { 1 },
                report: to_value(&report),
                text,
            })
        }
        Cmd::Subst {
            expression,
            subst,
            algebra,
            epsilon12,
        } => {
            let a = resolve_algebra(algebra, *epsilon12)?;
            let s = resolve_substitution(subst, &a)?;
            let input = parse_polynomial(expression, &a)?;
            let result = substitute(&input, &s, &a)?;
            let report = json!({
                "algebra": algebra,
                "expression": expression,
                "substitution": s.to_string(),
                "result": result.to_string(),
            });
            Ok(Outcome {
                text: format!("{expression}  =>  {result}"),
                report,
                exit_code: 0,
            })
        }
        Cmd::Equiv {
            algebra,
            subst,
            epsilon12,
        } => {
            let a = resolve_algebra(algebra, *epsilon12)?;
            let s = resolve_substitution(subst, &a)?;
            let report = equivalence_check(&a, &s)?;
            let mut text = format!("substitution: {}\n", report.substitution);
            text.push_str(&format!(
                "{:<10} {:<24} {:<24} {}\n",
                "pair", "declared", "derived", "residual"
            ));
            for p in &report.pairs {
                text.push_str(&format!(
                    "{:<10} {:<24} {:<24} {}\n",
                    p.pair,
                    p.declared.to_string(),
                    p.derived.to_string(),
                    if p.matches { "0".to_string() } else { p.residual.to_string() }
                ));
            }
            text.push_str(&format!("verdict: {}\n", report.verdict));
            Ok(Outcome {
                exit_code: if report.verdict == Verdict::Consistent { 0 } else { 1 },
                report: to_value(&report),
                text,
            })
        }
        Cmd::Mixed {
            mode,
            epsilon12,
            c11,
            c12,
            c21,
            c22,
        } => {
            let mode = match mode {
                ModeChoice::Position => DerivativeMode::Position,
                ModeChoice::Momentum => DerivativeMode::Momentum,
            };
            let defaults = match mode {
                DerivativeMode::Position => crate::symalg::cyclotron_coefficients(*epsilon12),
                DerivativeMode::Momentum => {
                    crate::symalg::cyclotron_dual_coefficients(*epsilon12)
                }
            };
            let ctx = Algebra::heisenberg2(*epsilon12);
            let entry = |text: &Option<String>, fallback: &Coefficient| -> Result<Coefficient> {
                match text {
                    None => Ok(fallback.clone()),
                    Some(t) => {
                        let poly = parse_polynomial(t, &ctx)?;
                        if !poly.is_scalar() {
                            return Err(Error::UsageError(format!(
                                "coefficient `{t}` must be a scalar expression"
                            )));
                        }
                        Ok(poly.scalar_part())
                    }
                }
            };
            let c = [
                [entry(c11, &defaults[0][0])?, entry(c12, &defaults[0][1])?],
                [entry(c21, &defaults[1][0])?, entry(c22, &defaults[1][1])?],
            ];
            let result = mixed_commutator(&c, mode);
            let text = format!(
                "scalar part: {}\nremainder:   {} * (f2 d1 - f1 d2) with f1 = {}, f2 = {}\n",
                result.scalar_part,
                result.derivative_prefactor,
                result.remainder_f1,
                result.remainder_f2
            );
            Ok(Outcome {
                report: to_value(&result),
                text,
                exit_code: 0,
            })
        }
        Cmd::Audit {
            algebra,
            tolerance,
            rep,
        } => {
            let a = resolve_algebra(algebra, Some(rep.epsilon12))?;
            let representation = rep.build()?;
            let report = representation_audit(&representation, &a, *tolerance)?;
            let mut text = format!(
                "{:<10} {:>14} {:>10}  result\n",
                "pair", "residual", "tolerance"
            );
            for e in &report.entries {
                text.push_str(&format!(
                    "{:<10} {:>14.3e} {:>10.1e}  {}\n",
                    e.pair,
                    e.operator_norm,
                    e.tolerance,
                    if e.pass { "pass" } else { "FAIL" }
                ));
            }
            Ok(Outcome {
                exit_code: if report.all_pass { 0 } else { 1 },
                report: to_value(&report),
                text,
            })
        }
        Cmd::Spectrum {
            levels,
            hamiltonian,
            rep,
        } => {
            let representation = rep.build()?;
            let h = lower_hamiltonian(hamiltonian, rep.epsilon12)?;
            let report = spectrum(&representation, &h, *levels)?;
            let check = landau_level_check(&report, rep.params.hbar);
            let mut text = format!("hamiltonian: {}\n", report.hamiltonian);
            text.push_str(&format!(
                "{:<6} {:>18} {:>18} {:>12}\n",
                "level", "eigenvalue", "expected", "rel. error"
            ));
            for e in &check.entries {
                text.push_str(&format!(
                    "{:<6} {:>18.12} {:>18.12} {:>12.2e}\n",
                    e.level, e.measured, e.expected, e.relative_error
                ));
            }
            if let Some(ratio) = check.spacing_ratio {
                text.push_str(&format!(
                    "measured spacing / (hbar * omega_c[{:?}]) = {ratio:.9}\n",
                    check.convention
                ));
            }
            let mut value = to_value(&report);
            value["levelCheck"] = to_value(&check);
            Ok(Outcome {
                report: value,
                text,
                exit_code: 0,
            })
        }
        Cmd::Uncertainty {
            op_a,
            op_b,
            state,
            seed,
            hamiltonian,
            rep,
        } => {
            let representation = rep.build()?;
            let ctx = Algebra::heisenberg2(rep.epsilon12);
            let a = parse_polynomial(op_a, &ctx)?;
            let b = parse_polynomial(op_b, &ctx)?;
            let h = lower_hamiltonian(hamiltonian, rep.epsilon12)?;
            let state = match seed {
                Some(s) => StateSpec::Random(*s),
                None => StateSpec::parse(state, h)?,
            };
            let report = uncertainty(&representation, &state, &a, &b)?;
            let text = format!(
                "state: {}\ndelta({}) = {:.12}\ndelta({}) = {:.12}\nproduct = {:.12}\nrobertson bound = {:.12}\nreference hbar bound = {}\nsaturation = {}\n",
                report.state,
                report.operator_a,
                report.delta_a,
                report.operator_b,
                report.delta_b,
                report.product,
                report.robertson_bound,
                report.paper_bound,
                report
                    .saturation_ratio
                    .map(|r| format!("{r:.9}"))
                    .unwrap_or_else(|| "n/a (zero bound)".to_string()),
            );
            Ok(Outcome {
                report: to_value(&report),
                text,
                exit_code: 0,
            })
        }
        Cmd::Scan {
            quantity,
            sector,
            param,
            values,
            ntrunc,
            params,
        } => {
            let values = parse_value_list(values)?;
            let ctx = ScanContext {
                params: params.map(),
                sector: match sector {
                    SectorChoice::Qq => Sector::QQ,
                    SectorChoice::Pp => Sector::PP,
                },
                ntrunc: *ntrunc,
                ..ScanContext::default()
            };
            let quantity = match quantity {
                QuantityChoice::CommutatorScale => ScanQuantity::CommutatorScale,
                QuantityChoice::MagneticLength => ScanQuantity::MagneticLength,
                QuantityChoice::UncertaintyProduct => ScanQuantity::UncertaintyProduct,
            };
            let report = limit_scan(quantity, param, &values, &ctx)?;
            let mut text = format!("{:<16} {:>18}\n", param, "quantity");
            for row in &report.rows {
                text.push_str(&format!("{:<16} {:>18.12}\n", row.value, row.quantity));
            }
            Ok(Outcome {
                report: to_value(&report),
                text,
                exit_code: 0,
            })
        }
        Cmd::Flux {
            path,
            gauge,
            epsilon12,
            tolerance,
            subst,
            params,
        } => {
            let gauge = GaugeField::new((*gauge).into(), params.field, params.charge, *epsilon12)?;
            let loop_path = resolve_path(path)?;
            let value = loop_integral(&loop_path, &gauge)?;
            let h = 2.0 * std::f64::consts::PI * params.hbar;
            let quant = flux_quantization(value, h, *tolerance)?;
            let canonical = match subst {
                None => None,
                Some(spec) => {
                    let rule = resolve_momentum_rule(spec, &gauge, *epsilon12)?;
                    let action = canonical_action_integral(&loop_path, &rule, &params.map())?;
                    Some(json!({
                        "value": action,
                        "difference": action - value,
                    }))
                }
            };
            let mut report = json!({
                "gauge": {
                    "kind": gauge.kind,
                    "B": gauge.b,
                    "e": gauge.e,
                    "epsilon12": gauge.epsilon12,
                    "symbolicCurl": gauge.symbolic_curl().to_string(),
                    "curlValue": gauge.curl_value(),
                },
                "path": {"points": loop_path.len(), "signedArea": loop_path.signed_area()},
                "quantization": to_value(&quant),
            });
            if let Some(c) = canonical {
                report["canonicalAction"] = c;
            }
            let text = format!(
                "e * loop integral of A = {value:.12}\nflux quantum h = {h:.12}\nnearest N = {}, residual = {:.3e} => {}\n",
                quant.nearest_n,
                quant.residual,
                if quant.quantized { "quantized" } else { "NOT quantized" }
            );
            Ok(Outcome {
                exit_code: if quant.quantized { 0 } else { 1 },
                report,
                text,
            })
        }
        Cmd::Plaquette {
            npoints,
            spacing,
            gauge,
            epsilon12,
            params,
        } => {
            let gauge = GaugeField::new((*gauge).into(), params.field, params.charge, *epsilon12)?;
            let report = plaquette_phase(*npoints, *spacing, &gauge, params.hbar)?;
            let text = format!(
                "per-plaquette phase = {:.12} (closed form {:.12}, spread {:.2e})\ntotal phase mod 2pi = {:.12} over {} plaquettes\n",
                report.per_plaquette_phase,
                report.closed_form,
                report.spread,
                report.total_phase_mod_2pi,
                report.plaquette_count
            );
            Ok(Outcome {
                report: to_value(&report),
                text,
                exit_code: 0,
            })
        }
    }
}

fn parse_value_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Error::UsageError(format!("invalid scan value `{part}`")))
        })
        .collect()
}

fn lower_hamiltonian(text: &Option<String>, epsilon12: i8) -> Result<crate::symalg::NCPolynomial> {
    match text {
        None => Ok(kinetic_hamiltonian()),
        Some(t) => parse_polynomial(t, &Algebra::heisenberg2(epsilon12)),
    }
}

/// `circle:r=RADIUS,n=SEGMENTS` or a CSV file path.
fn resolve_path(spec: &str) -> Result<LoopPath> {
    if let Some(rest) = spec.strip_prefix("circle:") {
        let mut radius = None;
        let mut segments = None;
        for part in rest.split(',') {
            match part.split_once('=') {
                Some(("r", v)) => {
                    radius = Some(v.parse::<f64>().map_err(|_| {
                        Error::UsageError(format!("invalid circle radius `{v}`"))
                    })?)
                }
                Some(("n", v)) => {
                    segments = Some(v.parse::<usize>().map_err(|_| {
                        Error::UsageError(format!("invalid segment count `{v}`"))
                    })?)
                }
                _ => {
                    return Err(Error::UsageError(format!(
                        "unknown circle component `{part}` (expected r=..,n=..)"
                    )))
                }
            }
        }
        let radius = radius.ok_or_else(|| Error::UsageError("circle needs r=RADIUS".into()))?;
        let segments = segments.unwrap_or(100_000);
        return LoopPath::circle(radius, segments);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Error::UsageError(format!("cannot read path file `{spec}`: {e}")))?;
    LoopPath::from_csv(&text)
}

fn resolve_momentum_rule(
    spec: &str,
    gauge: &GaugeField,
    epsilon12: i8,
) -> Result<Substitution> {
    match spec {
        "preset:ea" | "ea" => Ok(gauge.momentum_rule()),
        "preset:eq5" | "eq5" => {
            let paper = GaugeField::new(GaugeKind::Paper, gauge.b, gauge.e, epsilon12)?;
            Ok(paper.momentum_rule())
        }
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::UsageError(format!(
                    "`{path}` is neither a momentum-rule preset (preset:ea, preset:eq5) nor a readable file: {e}"
                ))
            })?;
            super::files::parse_substitution_file(&text, &Algebra::heisenberg2(epsilon12))
        }
    }
}

/// Canonical JSON rendering: serde_json's default map is ordered, so
/// serializing through `Value` yields sorted keys and byte-stable output.
pub fn render_json(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values render")
}
