//! Finite-dimensional matrix representations of the generator algebras.
//!
//! Two constructions are provided. The truncated-ladder representation
//! realizes the magnetic commutators on a single oscillator mode: kinetic
//! momenta are the two quadratures with `[P1, P2] = i·hbar·e·B`, and the
//! positions are the rescaled opposite quadratures, which forces
//! `[P_m, Q_n] = -i·hbar·δ_mn` and `[Q1, Q2] = i·hbar/(e·B)` exactly on
//! the truncation-safe subspace. The periodic-grid representation uses
//! diagonal positions and spectral-derivative canonical momenta (which
//! commute exactly), plus gauge-coupled kinetic momenta.
//!
//! Commutator identities are corrupted by truncation at the edges of any
//! finite basis, so every residual is measured on an explicit projected
//! subspace: the first `ntrunc - 1` number states for the ladder, and
//! windowed low-frequency states for the grid.

pub mod opmatrix;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symalg::{Algebra, NCPolynomial, PairClass};

use opmatrix::{operator_norm, Basis, CMat, OpMatrix};

pub use opmatrix::hermitian_eigen_sorted;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GridGauge {
    None,
    Paper,
    Symmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Standard,
    Paper,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RepKind {
    Landau {
        ntrunc: usize,
    },
    Grid {
        npoints: usize,
        boxsize: f64,
        gauge: GridGauge,
    },
}

/// Numeric parameter set for compiling coefficients. The constructors
/// validate positivity (the grid additionally accepts `B = 0`);
/// `alphadot` participates only when an expression mentions it.
pub fn default_params() -> BTreeMap<String, f64> {
    let mut p = BTreeMap::new();
    p.insert("hbar".to_string(), 1.0);
    p.insert("e".to_string(), 1.0);
    p.insert("B".to_string(), 1.0);
    p.insert("M".to_string(), 1.0);
    p.insert("alphadot".to_string(), 0.5);
    p
}

#[derive(Clone, Debug)]
pub struct Representation {
    kind: RepKind,
    convention: Convention,
    epsilon12: i8,
    params: BTreeMap<String, f64>,
    assignment: BTreeMap<crate::symalg::Generator, OpMatrix>,
    basis: Basis,
    dim: usize,
    projector_rank: usize,
    default_tolerance: f64,
}

/// Summary serialized into every report that references a representation.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RepSummary {
    #[serde(flatten)]
    pub kind: RepKind,
    pub dimension: usize,
    pub projector_rank: usize,
    pub convention: Convention,
    pub epsilon12: i8,
    pub params: BTreeMap<String, f64>,
}

fn require_positive(params: &BTreeMap<String, f64>, zero_ok: &[&str]) -> Result<()> {
    for (name, value) in params {
        let floor_ok = zero_ok.contains(&name.as_str()) && *value == 0.0;
        if !value.is_finite() || (*value <= 0.0 && !floor_ok) {
            return Err(Error::InvalidParam(format!(
                "parameter {name} must be positive and finite, got {value}"
            )));
        }
    }
    for required in ["hbar", "e", "B", "M"] {
        if !params.contains_key(required) {
            return Err(Error::MissingParam(required.to_string()));
        }
    }
    Ok(())
}

/// Builds the truncated-ladder representation on `ntrunc` number states.
///
/// `P1`, `P2` are the oscillator quadratures scaled so that
/// `[P1, P2] = i·hbar·e·B` holds exactly on the projected subspace
/// (rank `ntrunc - 1`); `Q1 = -P2/(e·B)` and `Q2 = P1/(e·B)` then close
/// the remaining brackets.
pub fn landau_representation(
    ntrunc: usize,
    params: BTreeMap<String, f64>,
    convention: Convention,
) -> Result<Representation> {
    if ntrunc < 2 {
        return Err(Error::InvalidTruncation(format!(
            "ntrunc must be >= 2, got {ntrunc}"
        )));
    }
    require_positive(&params, &[])?;
    let hbar = params["hbar"];
    let e = params["e"];
    let b = params["B"];

    let mut ladder = CMat::zeros(ntrunc, ntrunc);
    for n in 1..ntrunc {
        ladder[(n - 1, n)] = c((n as f64).sqrt());
    }
    let raise = ladder.adjoint();

    let alpha = (hbar * e * b / 2.0).sqrt();
    let pi1 = (&ladder + &raise) * c(alpha);
    let pi2 = (&raise - &ladder) * Complex64::new(0.0, alpha);
    let q1 = &pi2 * c(-1.0 / (e * b));
    let q2 = &pi1 * c(1.0 / (e * b));

    let mut assignment = BTreeMap::new();
    use crate::symalg::Generator;
    assignment.insert(Generator::p(1), OpMatrix::from_left(pi1, 1));
    assignment.insert(Generator::p(2), OpMatrix::from_left(pi2, 1));
    assignment.insert(Generator::q(1), OpMatrix::from_left(q1, 1));
    assignment.insert(Generator::q(2), OpMatrix::from_left(q2, 1));

    let rank = ntrunc - 1;
    let mut vl = CMat::zeros(ntrunc, rank);
    for i in 0..rank {
        vl[(i, i)] = c(1.0);
    }
    Ok(Representation {
        kind: RepKind::Landau { ntrunc },
        convention,
        epsilon12: -1,
        params,
        assignment,
        basis: Basis {
            vl,
            vr: CMat::identity(1, 1),
        },
        dim: ntrunc,
        projector_rank: rank,
        default_tolerance: 1e-10,
    })
}

/// The C-infinity flat-top window used for the grid projector: 1 on the
/// interior, smoothly 0 at the periodic seam, with all derivatives
/// vanishing at both ends of the taper.
fn flat_top_window(x: f64, half_box: f64, taper: f64) -> f64 {
    let u = (half_box - x.abs()) / taper;
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    let f = |t: f64| (-1.0 / t).exp();
    f(u) / (f(u) + f(1.0 - u))
}

/// Orthonormal basis of low-momentum, interior-localized states for one
/// grid axis.
///
/// Takes the leading eigenvectors of `W·P_band·W` (window times band
/// projector times window), which are the states best concentrated in
/// both senses at once. The kept count is chosen within `0.3n..=0.45n` as
/// the largest for which the projected defect of `[p, q] + i·hbar` stays
/// at `1e-7·hbar` (or failing that, within a factor 2 of the best
/// attainable); states beyond that count start to feel the periodic seam,
/// where the position operator wraps around and the canonical commutator
/// genuinely fails.
fn interior_band_basis(n: usize, hbar: f64, momentum: &CMat, q: &CMat) -> CMat {
    let spacing = q[(1, 1)].re - q[(0, 0)].re;
    let half = spacing * n as f64 / 2.0;
    // The taper needs enough grid points to be spectrally smooth but must
    // leave an interior; both limits bite only for small grids.
    let taper = (10.0 * spacing).clamp(0.3 * half, 0.6 * half);
    let fmax = ((0.34 * n as f64).floor() as i64).max(2);

    let window = CMat::from_fn(n, n, |i, j| {
        if i == j {
            c(flat_top_window(q[(i, i)].re, half, taper))
        } else {
            c(0.0)
        }
    });
    let root = 1.0 / (n as f64).sqrt();
    let dft = CMat::from_fn(n, n, |m, j| {
        Complex64::from_polar(root, -2.0 * PI * (m as f64) * (j as f64) / n as f64)
    });
    let freq = |m: usize| {
        if m < n / 2 {
            m as i64
        } else {
            m as i64 - n as i64
        }
    };
    let band = CMat::from_fn(n, n, |i, j| {
        if i == j && freq(i).abs() <= fmax {
            c(1.0)
        } else {
            c(0.0)
        }
    });
    let concentration = &window * dft.adjoint() * band * &dft * &window;
    let (values, vectors) = hermitian_eigen_sorted(&concentration);
    // Concentration eigenvalues plateau at 1 and become numerically
    // degenerate there; ties are broken toward low kinetic energy so the
    // kept span always contains the softest interior states.
    let kinetic: Vec<f64> = (0..n)
        .map(|i| {
            let col = vectors.column(i);
            let pv = momentum * col;
            pv.dotc(&pv).re
        })
        .collect();
    let kinetic_scale = kinetic.iter().cloned().fold(f64::MIN_POSITIVE, f64::max);
    let score = |i: usize| (1.0 - values[i]) * 1e10 + kinetic[i] / kinetic_scale;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        score(a)
            .partial_cmp(&score(b))
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let defect = momentum * q - q * momentum
        + CMat::identity(n, n) * Complex64::new(0.0, hbar);
    let candidate = |keep: usize| -> CMat {
        let mut v = CMat::zeros(n, keep);
        for (col, &i) in order.iter().take(keep).enumerate() {
            v.set_column(col, &vectors.column(i));
        }
        v
    };
    // Keep as many states as the canonical-pair defect allows, bounded so
    // the rank stays near n/2 per axis.
    let floor = ((0.3 * n as f64) as usize).max(2);
    let ceiling = ((0.45 * n as f64) as usize).max(floor);
    let residuals: Vec<f64> = (floor..=ceiling)
        .map(|keep| {
            let v = candidate(keep);
            operator_norm(&(v.adjoint() * &defect * &v)) / hbar
        })
        .collect();
    let min_residual = residuals.iter().cloned().fold(f64::INFINITY, f64::min);
    let threshold = (2.0 * min_residual).max(1e-7);
    let keep = (floor..=ceiling)
        .rev()
        .find(|keep| residuals[keep - floor] <= threshold)
        .expect("minimum itself satisfies the threshold");
    candidate(keep)
}

/// Builds the periodic-grid representation on `npoints²` sites.
///
/// Positions are diagonal and centered at zero, canonical momenta are
/// spectral derivatives (exactly commuting), and the operators assigned to
/// `P_m` are the kinetic `Π_m = p_m - e·A_m(Q)` for the chosen gauge.
/// The projector spans low-frequency, interior-localized states (see
/// [`interior_band_basis`]) with rank on the order of `npoints²/4`.
pub fn grid_representation(
    npoints: usize,
    boxsize: f64,
    gauge: GridGauge,
    params: BTreeMap<String, f64>,
    epsilon12: i8,
) -> Result<Representation> {
    if npoints < 16 || !npoints.is_power_of_two() {
        return Err(Error::InvalidGrid(format!(
            "npoints must be a power of two >= 16, got {npoints}"
        )));
    }
    if !boxsize.is_finite() || boxsize <= 0.0 {
        return Err(Error::InvalidGrid(format!(
            "boxsize must be positive, got {boxsize}"
        )));
    }
    if epsilon12 != 1 && epsilon12 != -1 {
        return Err(Error::InvalidParam("epsilon12 must be +1 or -1".into()));
    }
    // B = 0 is the legitimate field-free case; it only scales the gauge
    // coupling of the kinetic momenta.
    require_positive(&params, &["B", "alphadot"])?;
    let hbar = params["hbar"];
    let e = params["e"];
    let b = params["B"];

    let n = npoints;
    let spacing = boxsize / n as f64;
    let coord = |j: usize| (j as f64 - n as f64 / 2.0) * spacing;

    let q = CMat::from_fn(n, n, |i, j| if i == j { c(coord(i)) } else { c(0.0) });

    // Spectral derivative: momentum is diagonal in the DFT basis.
    let root = 1.0 / (n as f64).sqrt();
    let dft = CMat::from_fn(n, n, |m, j| {
        Complex64::from_polar(root, -2.0 * PI * (m as f64) * (j as f64) / n as f64)
    });
    let freq = |m: usize| {
        if m < n / 2 {
            m as f64
        } else {
            m as f64 - n as f64
        }
    };
    let kdiag = CMat::from_fn(n, n, |i, j| {
        if i == j {
            c(hbar * 2.0 * PI * freq(i) / boxsize)
        } else {
            c(0.0)
        }
    });
    let momentum = dft.adjoint() * kdiag * &dft;

    let v1d = interior_band_basis(n, hbar, &momentum, &q);
    let rank = v1d.ncols() * v1d.ncols();

    // Vector-potential couplings: A1 = a1·Q2, A2 = a2·Q1.
    let (a1, a2) = match gauge {
        GridGauge::None => (0.0, 0.0),
        GridGauge::Paper => (b * epsilon12 as f64, -b * epsilon12 as f64),
        GridGauge::Symmetric => (-b / 2.0, b / 2.0),
    };
    let p1 = OpMatrix::from_left(momentum.clone(), n)
        .add(&OpMatrix::from_right(n, q.clone()).scale(c(-e * a1)));
    let p2 = OpMatrix::from_right(n, momentum)
        .add(&OpMatrix::from_left(q.clone(), n).scale(c(-e * a2)));

    let mut assignment = BTreeMap::new();
    use crate::symalg::Generator;
    assignment.insert(Generator::q(1), OpMatrix::from_left(q.clone(), n));
    assignment.insert(Generator::q(2), OpMatrix::from_right(n, q));
    assignment.insert(Generator::p(1), p1);
    assignment.insert(Generator::p(2), p2);

    Ok(Representation {
        kind: RepKind::Grid {
            npoints,
            boxsize,
            gauge,
        },
        convention: Convention::Standard,
        epsilon12,
        params,
        assignment,
        basis: Basis {
            vl: v1d.clone(),
            vr: v1d,
        },
        dim: n * n,
        projector_rank: rank,
        default_tolerance: 1e-5,
    })
}

impl Representation {
    pub fn kind(&self) -> &RepKind {
        &self.kind
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn projector_rank(&self) -> usize {
        self.projector_rank
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }

    pub fn param(&self, name: &str) -> Result<f64> {
        self.params
            .get(name)
            .copied()
            .ok_or_else(|| Error::MissingParam(name.to_string()))
    }

    pub fn default_tolerance(&self) -> f64 {
        self.default_tolerance
    }

    pub fn summary(&self) -> RepSummary {
        RepSummary {
            kind: self.kind.clone(),
            dimension: self.dim,
            projector_rank: self.projector_rank,
            convention: self.convention,
            epsilon12: self.epsilon12,
            params: self.params.clone(),
        }
    }

    pub fn generator_matrix(&self, g: crate::symalg::Generator) -> Result<&OpMatrix> {
        self.assignment
            .get(&g)
            .ok_or_else(|| Error::UnknownGenerator(g.to_string()))
    }

    /// Homomorphic image of a polynomial: words map to matrix products in
    /// word order, coefficients to complex scalars evaluated from the
    /// representation parameters.
    pub fn compile(&self, p: &NCPolynomial) -> Result<OpMatrix> {
        let (ld, rd) = self.factor_dims();
        let mut acc = OpMatrix::zero(ld, rd);
        for (word, coeff) in p.terms() {
            let z = coeff.eval(&self.params)?;
            let mut prod: Option<OpMatrix> = None;
            for g in &word.0 {
                let m = self.generator_matrix(*g)?;
                prod = Some(match prod {
                    None => m.clone(),
                    Some(p) => p.mul(m),
                });
            }
            let prod = prod.unwrap_or_else(|| OpMatrix::identity(ld, rd));
            acc = acc.add(&prod.scale(z));
        }
        Ok(acc)
    }

    fn factor_dims(&self) -> (usize, usize) {
        match self.kind {
            RepKind::Landau { ntrunc } => (ntrunc, 1),
            RepKind::Grid { npoints, .. } => (npoints, npoints),
        }
    }

    /// `Vᴴ M V`: the operator restricted to the truncation-safe subspace.
    pub fn projected(&self, m: &OpMatrix) -> CMat {
        m.projected(&self.basis)
    }

    /// Compile and project in one step.
    pub fn projected_compile(&self, p: &NCPolynomial) -> Result<CMat> {
        Ok(self.projected(&self.compile(p)?))
    }

    /// Residual norm of `M` on the projected subspace.
    pub fn projected_norm(&self, m: &OpMatrix) -> f64 {
        operator_norm(&self.projected(m))
    }

    /// Rebuilds a ladder representation at a different truncation with the
    /// same parameters and convention. Used by the spectrum convergence
    /// check.
    pub fn rebuilt_at(&self, ntrunc: usize) -> Result<Representation> {
        match self.kind {
            RepKind::Landau { .. } => {
                landau_representation(ntrunc, self.params.clone(), self.convention)
            }
            RepKind::Grid { .. } => Err(Error::InvalidParam(
                "rebuild at a different truncation is defined for ladder representations".into(),
            )),
        }
    }

    /// Conjugates every generator matrix (and the projector basis) by a
    /// unitary. Only single-factor representations support this; it exists
    /// so tests can verify basis-change invariance of residual norms.
    pub fn conjugated(&self, u: &CMat) -> Representation {
        let (_, rd) = self.factor_dims();
        assert_eq!(rd, 1, "conjugation is implemented for ladder-shaped bases");
        let mut assignment = BTreeMap::new();
        for (g, m) in &self.assignment {
            let dense = m.to_dense();
            assignment.insert(*g, OpMatrix::from_left(u * dense * u.adjoint(), 1));
        }
        let mut out = self.clone();
        out.assignment = assignment;
        out.basis = Basis {
            vl: u * &self.basis.vl,
            vr: self.basis.vr.clone(),
        };
        out
    }
}

/// One row of a representation audit.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ResidualReport {
    pub pair: String,
    pub class: PairClass,
    pub operator_norm: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditReport {
    pub representation: RepSummary,
    pub entries: Vec<ResidualReport>,
    pub all_pass: bool,
}

/// Measures `‖P(compile([g,h]) - compile(declared RHS))P‖` for every pair
/// of the algebra. The commutator is evaluated at the matrix level, so
/// this certifies what the representation actually realizes.
pub fn representation_audit(
    rep: &Representation,
    algebra: &Algebra,
    tolerance: Option<f64>,
) -> Result<AuditReport> {
    let tol = tolerance.unwrap_or(rep.default_tolerance);
    let mut entries = Vec::new();
    for (g, h) in algebra.oriented_pairs() {
        let formal = NCPolynomial::generator(g)
            .mul(&NCPolynomial::generator(h))
            .sub(&NCPolynomial::generator(h).mul(&NCPolynomial::generator(g)));
        let lhs = rep.compile(&formal)?;
        let rhs = rep.compile(&NCPolynomial::scalar(algebra.bracket(g, h)))?;
        let norm = rep.projected_norm(&lhs.sub(&rhs));
        entries.push(ResidualReport {
            pair: format!("[{g}, {h}]"),
            class: PairClass::of(g, h),
            operator_norm: norm,
            tolerance: tol,
            pass: norm < tol,
        });
    }
    Ok(AuditReport {
        representation: rep.summary(),
        all_pass: entries.iter().all(|e| e.pass),
        entries,
    })
}

pub use opmatrix::{hermiticity_deviation as hermiticity_defect, operator_norm as spectral_norm};
