//! Eigenvalue and uncertainty diagnostics on matrix representations.
//!
//! Everything here acts on the projected subspace of a representation: the
//! Hamiltonian and the observables are first compressed to `Vᴴ·M·V`, so
//! states live in the truncation-safe coordinates and the Robertson
//! inequality is a theorem about the compressed matrices rather than an
//! approximation.

use std::collections::BTreeMap;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::repr::{
    hermitian_eigen_sorted, landau_representation, Convention, RepKind, RepSummary,
    Representation,
};
use crate::symalg::{Generator, NCPolynomial};

type CVec = DVector<Complex64>;
type CMat = crate::repr::opmatrix::CMat;

const HERMITICITY_TOL: f64 = 1e-9;

/// The kinetic Hamiltonian `(P1² + P2²)/(2M)` used as the default for
/// ground-state construction and spectrum runs.
pub fn kinetic_hamiltonian() -> NCPolynomial {
    let p1 = NCPolynomial::generator(Generator::p(1));
    let p2 = NCPolynomial::generator(Generator::p(2));
    let half_m_inv = crate::symalg::Coefficient::ratio(1, 2).mul(
        &crate::symalg::Coefficient::symbol("M")
            .inverse()
            .expect("M is invertible"),
    );
    p1.mul(&p1).add(&p2.mul(&p2)).scale(&half_m_inv)
}

/// The cyclotron frequency under a convention flag: `e·B/M` (standard) or
/// `e·B/(2M)`.
pub fn cyclotron_frequency(convention: Convention, params: &BTreeMap<String, f64>) -> f64 {
    let e = params.get("e").copied().unwrap_or(1.0);
    let b = params.get("B").copied().unwrap_or(1.0);
    let m = params.get("M").copied().unwrap_or(1.0);
    match convention {
        Convention::Standard => e * b / m,
        Convention::Paper => e * b / (2.0 * m),
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpectrumReport {
    pub representation: RepSummary,
    pub hamiltonian: String,
    pub eigenvalues: Vec<f64>,
    pub convention: Convention,
    pub omega_c: f64,
    /// Deviation of each level from `hbar·ω_c·(n + 1/2)` under the
    /// report's convention.
    pub per_level_deviation: Vec<f64>,
}

/// Lowest `nlevels` eigenvalues of the projected Hamiltonian, ascending.
///
/// For ladder representations the result is cross-checked against the same
/// computation at half the truncation; a shift above 1e-8 in the top
/// requested level means the truncation cannot support the request.
pub fn spectrum(rep: &Representation, h: &NCPolynomial, nlevels: usize) -> Result<SpectrumReport> {
    let values = spectrum_levels(rep, h, nlevels)?;
    if let RepKind::Landau { ntrunc } = *rep.kind() {
        let half = ntrunc / 2;
        if nlevels > 0 && half >= 2 && nlevels <= (half - 1) / 4 {
            let smaller = rep.rebuilt_at(half)?;
            let check = spectrum_levels(&smaller, h, nlevels)?;
            let shift = (check[nlevels - 1] - values[nlevels - 1]).abs();
            if shift > 1e-8 {
                return Err(Error::TruncationTooSmall(format!(
                    "level {} shifts by {shift:.3e} between ntrunc = {ntrunc} and {half}",
                    nlevels - 1
                )));
            }
        }
    }
    let omega_c = cyclotron_frequency(rep.convention(), rep.params());
    let hbar = rep.param("hbar")?;
    let per_level_deviation = values
        .iter()
        .enumerate()
        .map(|(n, ev)| ev - hbar * omega_c * (n as f64 + 0.5))
        .collect();
    Ok(SpectrumReport {
        representation: rep.summary(),
        hamiltonian: h.to_string(),
        eigenvalues: values,
        convention: rep.convention(),
        omega_c,
        per_level_deviation,
    })
}

fn spectrum_levels(rep: &Representation, h: &NCPolynomial, nlevels: usize) -> Result<Vec<f64>> {
    if nlevels == 0 {
        return Ok(Vec::new());
    }
    if nlevels > rep.projector_rank() / 4 {
        return Err(Error::TruncationTooSmall(format!(
            "{nlevels} levels requested but the projected rank {} supports at most {}",
            rep.projector_rank(),
            rep.projector_rank() / 4
        )));
    }
    let compressed = rep.projected_compile(h)?;
    let deviation = crate::repr::hermiticity_defect(&compressed);
    if deviation > HERMITICITY_TOL {
        return Err(Error::NonHermitian {
            deviation,
            tolerance: HERMITICITY_TOL,
        });
    }
    let (values, _) = hermitian_eigen_sorted(&compressed);
    Ok(values.into_iter().take(nlevels).collect())
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelCheckEntry {
    pub level: usize,
    pub measured: f64,
    pub expected: f64,
    pub relative_error: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelCheckReport {
    pub convention: Convention,
    pub omega_c: f64,
    pub entries: Vec<LevelCheckEntry>,
    /// Mean measured level spacing divided by `hbar·ω_c`. Documents the
    /// convention mismatch (2.0 under the halved-frequency convention)
    /// instead of asserting either choice.
    pub spacing_ratio: Option<f64>,
    pub all_pass: bool,
}

/// Compares a spectrum against `hbar·ω_c·(n + 1/2)` under the report's own
/// convention, at relative tolerance 1e-9.
pub fn landau_level_check(report: &SpectrumReport, hbar: f64) -> LevelCheckReport {
    let omega = report.omega_c;
    let entries: Vec<LevelCheckEntry> = report
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(n, &measured)| {
            let expected = hbar * omega * (n as f64 + 0.5);
            let relative_error =
                (measured - expected).abs() / expected.abs().max(f64::MIN_POSITIVE);
            LevelCheckEntry {
                level: n,
                measured,
                expected,
                relative_error,
                pass: relative_error < 1e-9,
            }
        })
        .collect();
    let spacing_ratio = if report.eigenvalues.len() >= 2 {
        let diffs: Vec<f64> = report.eigenvalues.windows(2).map(|w| w[1] - w[0]).collect();
        let mean = diffs.iter().sum::<f64>() / diffs.len() as f64;
        Some(mean / (hbar * omega))
    } else {
        None
    };
    LevelCheckReport {
        convention: report.convention,
        omega_c: omega,
        all_pass: entries.iter().all(|e| e.pass),
        entries,
        spacing_ratio,
    }
}

/// How to pick the state vector for an uncertainty evaluation.
#[derive(Clone, Debug)]
pub enum StateSpec {
    /// Lowest eigenvector of a supplied Hamiltonian.
    Ground(NCPolynomial),
    /// The n-th basis vector of the projected subspace.
    Basis(usize),
    /// A seeded pseudo-random normalized vector.
    Random(u64),
}

impl StateSpec {
    /// Parses CLI forms: `ground`, `basis:3`, `random:42`.
    pub fn parse(text: &str, ground_hamiltonian: NCPolynomial) -> Result<StateSpec> {
        if text == "ground" {
            return Ok(StateSpec::Ground(ground_hamiltonian));
        }
        if let Some(rest) = text.strip_prefix("basis:") {
            let n = rest
                .parse()
                .map_err(|_| Error::InvalidParam(format!("invalid basis index `{rest}`")))?;
            return Ok(StateSpec::Basis(n));
        }
        if let Some(rest) = text.strip_prefix("random:") {
            let seed = rest
                .parse()
                .map_err(|_| Error::InvalidParam(format!("invalid random seed `{rest}`")))?;
            return Ok(StateSpec::Random(seed));
        }
        Err(Error::InvalidParam(format!(
            "unknown state spec `{text}` (expected ground, basis:N or random:SEED)"
        )))
    }

    pub fn describe(&self) -> String {
        match self {
            StateSpec::Ground(h) => format!("ground of {h}"),
            StateSpec::Basis(n) => format!("basis:{n}"),
            StateSpec::Random(seed) => format!("random:{seed}"),
        }
    }

    /// Builds the vector in projected coordinates.
    pub fn build(&self, rep: &Representation) -> Result<CVec> {
        let r = rep.projector_rank();
        match self {
            StateSpec::Ground(h) => {
                let compressed = rep.projected_compile(h)?;
                let deviation = crate::repr::hermiticity_defect(&compressed);
                if deviation > HERMITICITY_TOL {
                    return Err(Error::NonHermitian {
                        deviation,
                        tolerance: HERMITICITY_TOL,
                    });
                }
                let (_, vectors) = hermitian_eigen_sorted(&compressed);
                Ok(vectors.column(0).into_owned())
            }
            StateSpec::Basis(n) => {
                if *n >= r {
                    return Err(Error::InvalidParam(format!(
                        "basis index {n} outside projected rank {r}"
                    )));
                }
                let mut v = CVec::zeros(r);
                v[*n] = Complex64::new(1.0, 0.0);
                Ok(v)
            }
            StateSpec::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut v = CVec::from_fn(r, |_, _| {
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                });
                let norm = v.norm();
                if norm == 0.0 {
                    v[0] = Complex64::new(1.0, 0.0);
                } else {
                    v /= Complex64::new(norm, 0.0);
                }
                Ok(v)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct UncertaintyReport {
    pub representation: RepSummary,
    pub state: String,
    pub operator_a: String,
    pub operator_b: String,
    pub delta_a: f64,
    pub delta_b: f64,
    pub product: f64,
    /// `|⟨[A, B]⟩|/2`, the provable lower bound for the product.
    pub robertson_bound: f64,
    /// The unnormalized `hbar` bound carried for comparison; not a theorem.
    pub paper_bound: f64,
    /// `product / robertson_bound`; 1 means the bound is saturated.
    pub saturation_ratio: Option<f64>,
}

/// Standard deviations of two observables on one state, with the Robertson
/// bound computed from the same state and the same compressed operators.
pub fn uncertainty(
    rep: &Representation,
    state: &StateSpec,
    op_a: &NCPolynomial,
    op_b: &NCPolynomial,
) -> Result<UncertaintyReport> {
    let v = state.build(rep)?;
    uncertainty_with_state(rep, &v, state.describe(), op_a, op_b)
}

/// Same as [`uncertainty`] but with a caller-supplied state vector in
/// projected coordinates. The vector must be normalized within 1e-12.
pub fn uncertainty_with_state(
    rep: &Representation,
    state: &CVec,
    state_label: String,
    op_a: &NCPolynomial,
    op_b: &NCPolynomial,
) -> Result<UncertaintyReport> {
    if state.len() != rep.projector_rank() {
        return Err(Error::InvalidParam(format!(
            "state has dimension {} but the projected subspace has rank {}",
            state.len(),
            rep.projector_rank()
        )));
    }
    let norm_defect = (state.norm() - 1.0).abs();
    if norm_defect > 1e-12 {
        return Err(Error::UnnormalizedState(norm_defect));
    }

    let a = compressed_observable(rep, op_a)?;
    let b = compressed_observable(rep, op_b)?;

    let delta_a = deviation(&a, state);
    let delta_b = deviation(&b, state);
    let product = delta_a * delta_b;

    let comm = &a * &b - &b * &a;
    let robertson_bound = expectation(&comm, state).norm() / 2.0;
    let paper_bound = rep.param("hbar")?;
    let saturation_ratio = if robertson_bound > 1e-300 {
        Some(product / robertson_bound)
    } else {
        None
    };

    Ok(UncertaintyReport {
        representation: rep.summary(),
        state: state_label,
        operator_a: op_a.to_string(),
        operator_b: op_b.to_string(),
        delta_a,
        delta_b,
        product,
        robertson_bound,
        paper_bound,
        saturation_ratio,
    })
}

fn compressed_observable(rep: &Representation, op: &NCPolynomial) -> Result<CMat> {
    let m = rep.projected_compile(op)?;
    let deviation = crate::repr::hermiticity_defect(&m);
    if deviation > HERMITICITY_TOL {
        return Err(Error::NonHermitianObservable { deviation });
    }
    // Work with the exactly Hermitian part so variances stay real.
    Ok((&m + m.adjoint()).scale(0.5))
}

fn expectation(m: &CMat, v: &CVec) -> Complex64 {
    let mv = m * v;
    v.dotc(&mv)
}

fn deviation(m: &CMat, v: &CVec) -> f64 {
    let mean = expectation(m, v).re;
    let m2 = expectation(&(m * m), v).re;
    (m2 - mean * mean).max(0.0).sqrt()
}

/// Quantity scanned by [`limit_scan`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ScanQuantity {
    CommutatorScale,
    MagneticLength,
    UncertaintyProduct,
}

/// Which commutator sector a scale refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    QQ,
    PP,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanRow {
    pub value: f64,
    pub quantity: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanReport {
    pub quantity: ScanQuantity,
    pub sector: Option<Sector>,
    pub param: String,
    pub rows: Vec<ScanRow>,
}

/// Context for a parameter scan: base parameters plus what to measure.
pub struct ScanContext {
    pub params: BTreeMap<String, f64>,
    pub sector: Sector,
    pub ntrunc: usize,
    pub pair: (NCPolynomial, NCPolynomial),
}

impl Default for ScanContext {
    fn default() -> Self {
        ScanContext {
            params: crate::repr::default_params(),
            sector: Sector::QQ,
            ntrunc: 64,
            pair: (
                NCPolynomial::generator(Generator::q(1)),
                NCPolynomial::generator(Generator::q(2)),
            ),
        }
    }
}

/// Tabulates a quantity against a parameter sweep. Commutator scales are
/// the closed forms `hbar/(e·B)` (QQ sector) and `hbar·e·B` (PP); the
/// uncertainty product is measured on the ground state of the kinetic
/// Hamiltonian at each parameter value.
pub fn limit_scan(
    quantity: ScanQuantity,
    param: &str,
    values: &[f64],
    ctx: &ScanContext,
) -> Result<ScanReport> {
    if values.is_empty() {
        return Err(Error::InvalidParam("empty scan value list".into()));
    }
    for v in values {
        if !v.is_finite() || *v <= 0.0 {
            return Err(Error::InvalidParam(format!(
                "scan values must be positive and finite, got {v}"
            )));
        }
    }
    if !ctx.params.contains_key(param) {
        return Err(Error::InvalidParam(format!(
            "unknown scan parameter `{param}`"
        )));
    }
    let mut rows = Vec::new();
    for &v in values {
        let mut params = ctx.params.clone();
        params.insert(param.to_string(), v);
        let hbar = params["hbar"];
        let e = params["e"];
        let b = params["B"];
        let q = match quantity {
            ScanQuantity::CommutatorScale => match ctx.sector {
                Sector::QQ => hbar / (e * b),
                Sector::PP => hbar * e * b,
            },
            ScanQuantity::MagneticLength => (hbar / (e * b)).sqrt(),
            ScanQuantity::UncertaintyProduct => {
                let rep = landau_representation(ctx.ntrunc, params, Convention::Standard)?;
                let state = StateSpec::Ground(kinetic_hamiltonian());
                let report = uncertainty(&rep, &state, &ctx.pair.0, &ctx.pair.1)?;
                report.product
            }
        };
        rows.push(ScanRow {
            value: v,
            quantity: q,
        });
    }
    Ok(ScanReport {
        quantity,
        sector: match quantity {
            ScanQuantity::CommutatorScale => Some(ctx.sector),
            _ => None,
        },
        param: param.to_string(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::{default_params, grid_representation, GridGauge};
    use std::f64::consts::PI;

    fn landau(ntrunc: usize, convention: Convention) -> Representation {
        landau_representation(ntrunc, default_params(), convention).unwrap()
    }

    #[test]
    fn landau_levels_standard_convention() {
        // (P1² + P2²)/2M at hbar = e = B = M = 1 has levels n + 1/2.
        let rep = landau(256, Convention::Standard);
        let report = spectrum(&rep, &kinetic_hamiltonian(), 5).unwrap();
        let expected = [0.5, 1.5, 2.5, 3.5, 4.5];
        for (ev, ex) in report.eigenvalues.iter().zip(expected) {
            assert!((ev - ex).abs() / ex < 1e-10, "{ev} vs {ex}");
        }
        let check = landau_level_check(&report, 1.0);
        assert!(check.all_pass);
        assert!((check.spacing_ratio.unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn doubling_b_doubles_spacing() {
        let mut params = default_params();
        params.insert("B".to_string(), 2.0);
        let rep = landau_representation(128, params, Convention::Standard).unwrap();
        let report = spectrum(&rep, &kinetic_hamiltonian(), 3).unwrap();
        let spacing = report.eigenvalues[1] - report.eigenvalues[0];
        assert!((spacing - 2.0).abs() < 1e-10);
    }

    #[test]
    fn paper_convention_reports_ratio_two() {
        let rep = landau(128, Convention::Paper);
        let report = spectrum(&rep, &kinetic_hamiltonian(), 5).unwrap();
        let check = landau_level_check(&report, 1.0);
        // The measured spacing is hbar·eB/M while the halved-frequency
        // convention expects hbar·eB/2M.
        assert!((check.spacing_ratio.unwrap() - 2.0).abs() < 1e-9);
        assert!(!check.all_pass);
    }

    #[test]
    fn empty_spectrum_checks_vacuously() {
        let rep = landau(64, Convention::Standard);
        let report = spectrum(&rep, &kinetic_hamiltonian(), 0).unwrap();
        let check = landau_level_check(&report, 1.0);
        assert!(check.all_pass);
        assert!(check.spacing_ratio.is_none());
        assert!(check.entries.is_empty());
    }

    #[test]
    fn too_many_levels_rejected() {
        let rep = landau(16, Convention::Standard);
        assert!(matches!(
            spectrum(&rep, &kinetic_hamiltonian(), 12),
            Err(Error::TruncationTooSmall(_))
        ));
    }

    #[test]
    fn truncation_sensitive_spectrum_rejected_by_halving_check() {
        // The lowest levels of the negated kinetic Hamiltonian live at the
        // top of the truncated spectrum, which moves wildly with ntrunc.
        let rep = landau(64, Convention::Standard);
        let h = kinetic_hamiltonian().neg();
        assert!(matches!(
            spectrum(&rep, &h, 5),
            Err(Error::TruncationTooSmall(_))
        ));
    }

    #[test]
    fn non_hermitian_rejected() {
        let rep = landau(32, Convention::Standard);
        let h = NCPolynomial::generator(Generator::q(1))
            .mul(&NCPolynomial::generator(Generator::q(2)));
        assert!(matches!(spectrum(&rep, &h, 2), Err(Error::NonHermitian { .. })));
    }

    #[test]
    fn grid_free_particle_ground_mode_is_soft() {
        // The interior-localized projector cannot contain the exact
        // constant mode (that would reintroduce the periodic seam into
        // every commutator), so the free-particle ground energy is not
        // exactly zero; it stays at the scale of the first box mode
        // (2π/L)²/2 instead of the much larger oscillator scales.
        let rep = grid_representation(64, 20.0, GridGauge::None, default_params(), -1).unwrap();
        let report = spectrum(&rep, &kinetic_hamiltonian(), 3).unwrap();
        let first_free = 0.5 * (2.0 * PI / 20.0_f64).powi(2);
        assert!(report.eigenvalues[0] >= -1e-9);
        assert!(
            report.eigenvalues[0] < 2.0 * first_free,
            "ground {} vs free mode {first_free}",
            report.eigenvalues[0]
        );
    }

    #[test]
    fn lowest_landau_level_saturates_robertson() {
        let rep = landau(128, Convention::Standard);
        let state = StateSpec::Ground(kinetic_hamiltonian());
        let q1 = NCPolynomial::generator(Generator::q(1));
        let q2 = NCPolynomial::generator(Generator::q(2));
        let report = uncertainty(&rep, &state, &q1, &q2).unwrap();
        // ΔQ1·ΔQ2 = hbar/(2eB) = 0.5 at unit parameters.
        assert!((report.product - 0.5).abs() < 1e-9, "{}", report.product);
        assert!((report.robertson_bound - 0.5).abs() < 1e-9);
        assert!((report.saturation_ratio.unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn oscillator_ground_state_position_momentum() {
        let rep = landau(128, Convention::Standard);
        let state = StateSpec::Ground(kinetic_hamiltonian());
        let q1 = NCPolynomial::generator(Generator::q(1));
        let p1 = NCPolynomial::generator(Generator::p(1));
        let report = uncertainty(&rep, &state, &q1, &p1).unwrap();
        assert!((report.product - 0.5).abs() < 1e-9, "{}", report.product);
    }

    #[test]
    fn random_states_respect_robertson() {
        let rep = landau(48, Convention::Standard);
        let q1 = NCPolynomial::generator(Generator::q(1));
        let p1 = NCPolynomial::generator(Generator::p(1));
        for seed in 0..100 {
            let state = StateSpec::Random(seed);
            let report = uncertainty(&rep, &state, &q1, &p1).unwrap();
            assert!(
                report.product >= report.robertson_bound - 1e-10,
                "seed {seed}: product {} < bound {}",
                report.product,
                report.robertson_bound
            );
        }
    }

    #[test]
    fn shift_invariance_of_deviation() {
        let rep = landau(64, Convention::Standard);
        let state = StateSpec::Random(7);
        let q1 = NCPolynomial::generator(Generator::q(1));
        let shifted = q1.add(&NCPolynomial::scalar(crate::symalg::Coefficient::ratio(
            17, 4,
        )));
        let p1 = NCPolynomial::generator(Generator::p(1));
        let base = uncertainty(&rep, &state, &q1, &p1).unwrap();
        let shift = uncertainty(&rep, &state, &shifted, &p1).unwrap();
        assert!((base.delta_a - shift.delta_a).abs() < 1e-12);
    }

    #[test]
    fn unnormalized_state_rejected() {
        let rep = landau(16, Convention::Standard);
        let mut v = CVec::zeros(rep.projector_rank());
        v[0] = Complex64::new(2.0, 0.0);
        let q1 = NCPolynomial::generator(Generator::q(1));
        let q2 = NCPolynomial::generator(Generator::q(2));
        let err = uncertainty_with_state(&rep, &v, "raw".into(), &q1, &q2);
        assert!(matches!(err, Err(Error::UnnormalizedState(_))));
    }

    #[test]
    fn scan_closed_forms() {
        let ctx = ScanContext::default();
        let report =
            limit_scan(ScanQuantity::CommutatorScale, "B", &[1.0, 0.1, 0.01], &ctx).unwrap();
        let got: Vec<f64> = report.rows.iter().map(|r| r.quantity).collect();
        assert_eq!(got, vec![1.0, 10.0, 100.0]);

        let ctx_pp = ScanContext {
            sector: Sector::PP,
            ..ScanContext::default()
        };
        let report =
            limit_scan(ScanQuantity::CommutatorScale, "B", &[1.0, 0.1, 0.01], &ctx_pp).unwrap();
        let got: Vec<f64> = report.rows.iter().map(|r| r.quantity).collect();
        assert_eq!(got, vec![1.0, 0.1, 0.01]);

        assert!(matches!(
            limit_scan(ScanQuantity::MagneticLength, "B", &[-1.0], &ctx),
            Err(Error::InvalidParam(_))
        ));
    }

    #[test]
    fn scan_scale_ratios_invert_field_ratios_exactly() {
        // scale(B1)/scale(B2) = B2/B1 is equivalent to scale(B)·B being a
        // constant, which avoids comparing two differently-rounded
        // quotients.
        let ctx = ScanContext::default();
        let report =
            limit_scan(ScanQuantity::CommutatorScale, "B", &[1.0, 0.1, 0.01], &ctx).unwrap();
        for row in &report.rows {
            assert_eq!(row.quantity * row.value, 1.0, "B = {}", row.value);
        }
    }

    #[test]
    fn scan_uncertainty_product_tracks_inverse_b() {
        let ctx = ScanContext::default();
        let report = limit_scan(
            ScanQuantity::UncertaintyProduct,
            "B",
            &[1.0, 0.1, 0.01],
            &ctx,
        )
        .unwrap();
        let expected = [0.5, 5.0, 50.0];
        for (row, ex) in report.rows.iter().zip(expected) {
            assert!(
                (row.quantity - ex).abs() < 1e-6,
                "B = {}: {} vs {ex}",
                row.value,
                row.quantity
            );
        }
    }
}
