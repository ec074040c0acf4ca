//! Gauge potentials, loop integrals and flux-quantization detection.
//!
//! The three gauge choices share a linear evaluation rule `A(point)` and a
//! symbolic curl, and the line integrals use the midpoint rule on
//! polylines. A midpoint segment integral is exact for linear fields, so
//! all quadrature error comes from approximating the curve by a polygon
//! (second order in the segment count).

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symalg::{Coefficient, GenKind, Generator, NCPolynomial, Substitution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GaugeKind {
    /// `A_m = B·ε_mn·Q_n`; curl `2B·ε_21`.
    Paper,
    /// `A = (B/2)·(-Q2, Q1)`; curl `B`.
    Symmetric,
    /// `A = (0, B·Q1)`; curl `B`.
    Landau,
}

/// A constant-field gauge potential with its evaluation rule and symbolic
/// curl.
#[derive(Clone, Debug)]
pub struct GaugeField {
    pub kind: GaugeKind,
    pub b: f64,
    pub e: f64,
    pub epsilon12: i8,
}

impl GaugeField {
    pub fn new(kind: GaugeKind, b: f64, e: f64, epsilon12: i8) -> Result<GaugeField> {
        if !b.is_finite() || !e.is_finite() {
            return Err(Error::InvalidParam("gauge parameters must be finite".into()));
        }
        if epsilon12 != 1 && epsilon12 != -1 {
            return Err(Error::InvalidParam("epsilon12 must be +1 or -1".into()));
        }
        Ok(GaugeField {
            kind,
            b,
            e,
            epsilon12,
        })
    }

    /// The potential at a point.
    pub fn eval(&self, point: [f64; 2]) -> [f64; 2] {
        let eps = self.epsilon12 as f64;
        match self.kind {
            GaugeKind::Paper => [self.b * eps * point[1], -self.b * eps * point[0]],
            GaugeKind::Symmetric => [-self.b / 2.0 * point[1], self.b / 2.0 * point[0]],
            GaugeKind::Landau => [0.0, self.b * point[0]],
        }
    }

    /// Symbolic curl as an exact coefficient in the constant `B`.
    pub fn symbolic_curl(&self) -> Coefficient {
        let b = Coefficient::symbol("B");
        match self.kind {
            // curl = 2B·eps21 with eps21 = -eps12.
            GaugeKind::Paper => b.mul(&Coefficient::integer(-2 * self.epsilon12 as i64)),
            GaugeKind::Symmetric | GaugeKind::Landau => b,
        }
    }

    /// Numeric curl at this field's `B`.
    pub fn curl_value(&self) -> f64 {
        let mut params = BTreeMap::new();
        params.insert("B".to_string(), self.b);
        self.symbolic_curl()
            .eval(&params)
            .expect("curl references only B")
            .re
    }

    /// The momentum rule `P_m = e·A_m(Q)` as a symbolic substitution, with
    /// coefficients in `e` and `B`.
    pub fn momentum_rule(&self) -> Substitution {
        let e = Coefficient::symbol("e");
        let b = Coefficient::symbol("B");
        let eb = e.mul(&b);
        let eps = Coefficient::integer(self.epsilon12 as i64);
        let q = |n: u32| NCPolynomial::generator(Generator::q(n));
        let mut s = Substitution::identity();
        let (img1, img2) = match self.kind {
            GaugeKind::Paper => (
                q(2).scale(&eb.mul(&eps)),
                q(1).scale(&eb.mul(&eps).neg()),
            ),
            GaugeKind::Symmetric => (
                q(2).scale(&eb.mul(&Coefficient::ratio(-1, 2))),
                q(1).scale(&eb.mul(&Coefficient::ratio(1, 2))),
            ),
            GaugeKind::Landau => (NCPolynomial::zero(), q(1).scale(&eb)),
        };
        s.set(Generator::p(1), img1).expect("linear by construction");
        s.set(Generator::p(2), img2).expect("linear by construction");
        s
    }

    pub fn parse_kind(name: &str) -> Result<GaugeKind> {
        match name {
            "paper" => Ok(GaugeKind::Paper),
            "symmetric" => Ok(GaugeKind::Symmetric),
            "landau" => Ok(GaugeKind::Landau),
            other => Err(Error::UsageError(format!(
                "unknown gauge `{other}` (expected paper, symmetric or landau)"
            ))),
        }
    }
}

/// An ordered polyline in the plane. Closed paths do not repeat their
/// first point; the closing segment is implicit.
#[derive(Clone, Debug)]
pub struct LoopPath {
    points: Vec<[f64; 2]>,
    closed: bool,
}

impl LoopPath {
    pub fn closed(points: Vec<[f64; 2]>) -> Result<LoopPath> {
        if points.len() < 3 {
            return Err(Error::InvalidPath(format!(
                "a closed path needs at least 3 points, got {}",
                points.len()
            )));
        }
        let first = points[0];
        let last = points[points.len() - 1];
        if first == last {
            return Err(Error::InvalidPath(
                "closed paths must not repeat their endpoint; the closing segment is implicit"
                    .into(),
            ));
        }
        Ok(LoopPath {
            points,
            closed: true,
        })
    }

    pub fn open(points: Vec<[f64; 2]>) -> Result<LoopPath> {
        if points.len() < 2 {
            return Err(Error::InvalidPath("an open path needs at least 2 points".into()));
        }
        Ok(LoopPath {
            points,
            closed: false,
        })
    }

    /// A regular polygon approximating a circle of radius `r` centered at
    /// the origin, counterclockwise.
    pub fn circle(radius: f64, segments: usize) -> Result<LoopPath> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidPath(format!("radius must be positive, got {radius}")));
        }
        if segments < 3 {
            return Err(Error::InvalidPath(format!(
                "a circle needs at least 3 segments, got {segments}"
            )));
        }
        let points = (0..segments)
            .map(|k| {
                let theta = TAU * k as f64 / segments as f64;
                [radius * theta.cos(), radius * theta.sin()]
            })
            .collect();
        LoopPath::closed(points)
    }

    /// Two-column CSV, one point per line. A header line is tolerated.
    pub fn from_csv(text: &str) -> Result<LoopPath> {
        let mut points = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let body = line.trim();
            if body.is_empty() {
                continue;
            }
            let cols: Vec<&str> = body.split(',').map(str::trim).collect();
            if cols.len() != 2 {
                return Err(Error::ParseError {
                    line: i + 1,
                    message: format!("expected two comma-separated columns, got {}", cols.len()),
                });
            }
            match (cols[0].parse::<f64>(), cols[1].parse::<f64>()) {
                (Ok(x), Ok(y)) => points.push([x, y]),
                _ if i == 0 => continue, // header
                _ => {
                    return Err(Error::ParseError {
                        line: i + 1,
                        message: format!("cannot parse point `{body}`"),
                    })
                }
            }
        }
        LoopPath::closed(points)
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn reversed(&self) -> LoopPath {
        let mut points = self.points.clone();
        points.reverse();
        LoopPath {
            points,
            closed: self.closed,
        }
    }

    pub fn translated(&self, delta: [f64; 2]) -> LoopPath {
        LoopPath {
            points: self
                .points
                .iter()
                .map(|p| [p[0] + delta[0], p[1] + delta[1]])
                .collect(),
            closed: self.closed,
        }
    }

    /// Signed polygon area by the shoelace formula (closed paths).
    pub fn signed_area(&self) -> f64 {
        let n = self.points.len();
        let mut acc = 0.0;
        for i in 0..n {
            let a = self.points[i];
            let b = self.points[(i + 1) % n];
            acc += a[0] * b[1] - b[0] * a[1];
        }
        acc / 2.0
    }

    fn segments(&self) -> Vec<([f64; 2], [f64; 2])> {
        let n = self.points.len();
        let last = if self.closed { n } else { n - 1 };
        (0..last)
            .map(|i| (self.points[i], self.points[(i + 1) % n]))
            .collect()
    }
}

/// Midpoint-rule integral of a vector field along the path.
fn polyline_integral(path: &LoopPath, field: impl Fn([f64; 2]) -> [f64; 2]) -> f64 {
    let mut acc = 0.0;
    for (a, b) in path.segments() {
        let mid = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
        let f = field(mid);
        acc += f[0] * (b[0] - a[0]) + f[1] * (b[1] - a[1]);
    }
    acc
}

/// `e·∮A·dQ` along a closed path.
pub fn loop_integral(path: &LoopPath, gauge: &GaugeField) -> Result<f64> {
    if !path.is_closed() {
        return Err(Error::OpenPath);
    }
    let e = gauge.e;
    Ok(polyline_integral(path, |p| {
        let a = gauge.eval(p);
        [e * a[0], e * a[1]]
    }))
}

/// `∮P·dQ` with the momenta given by a linear substitution rule
/// `P_m -> c_m0 + Σ_n c_mn·Q_n`, coefficients evaluated from `params`.
pub fn canonical_action_integral(
    path: &LoopPath,
    rule: &Substitution,
    params: &BTreeMap<String, f64>,
) -> Result<f64> {
    if !path.is_closed() {
        return Err(Error::OpenPath);
    }
    // Fold each image into constant + linear coefficients on Q1, Q2.
    let mut folded = [[0.0f64; 3]; 2];
    for m in 1..=2u32 {
        let image = rule.image(Generator::p(m));
        if image.degree() > 1 {
            return Err(Error::NonLinearSubstitution {
                generator: Generator::p(m).to_string(),
                degree: image.degree(),
            });
        }
        for (word, coeff) in image.terms() {
            let value = coeff.eval(params)?;
            if value.im.abs() > 1e-12 {
                return Err(Error::InvalidParam(format!(
                    "momentum rule for P{m} evaluates to a complex coefficient {value}"
                )));
            }
            let slot = match word.0.as_slice() {
                [] => 0,
                [g] if g.kind == GenKind::Q && (g.index == 1 || g.index == 2) => g.index as usize,
                [g] => {
                    return Err(Error::NonLinearSubstitution {
                        generator: Generator::p(m).to_string(),
                        degree: usize::from(g.kind == GenKind::P),
                    })
                }
                _ => unreachable!("degree checked above"),
            };
            folded[(m - 1) as usize][slot] = value.re;
        }
    }
    Ok(polyline_integral(path, |p| {
        [
            folded[0][0] + folded[0][1] * p[0] + folded[0][2] * p[1],
            folded[1][0] + folded[1][1] * p[0] + folded[1][2] * p[1],
        ]
    }))
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FluxReport {
    pub integral_value: f64,
    /// The flux quantum `h = 2π·hbar`.
    pub h: f64,
    pub nearest_n: i64,
    /// `|value - N·h| / h`, in `[0, 1/2]`.
    pub residual: f64,
    pub quantized: bool,
    pub tolerance: f64,
}

/// Detects integer multiples of the flux quantum.
pub fn flux_quantization(value: f64, h: f64, tolerance: f64) -> Result<FluxReport> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::NonPositiveQuantum(h));
    }
    let ratio = value / h;
    let nearest = ratio.round();
    let residual = (ratio - nearest).abs();
    Ok(FluxReport {
        integral_value: value,
        h,
        nearest_n: nearest as i64,
        residual,
        quantized: residual < tolerance,
        tolerance,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PlaquetteReport {
    pub npoints: usize,
    pub spacing: f64,
    pub gauge: GaugeKind,
    pub symbolic_curl: Coefficient,
    /// Per-plaquette phase in `[0, 2π)`, measured from the link products.
    pub per_plaquette_phase: f64,
    /// Largest deviation of any plaquette from the first one.
    pub spread: f64,
    /// `e·curl·spacing²/hbar mod 2π`, the closed form the measurement must
    /// reproduce for a constant field.
    pub closed_form: f64,
    pub total_phase_mod_2pi: f64,
    pub plaquette_count: usize,
}

/// Link phases `exp(-(i·e/hbar)∫A·dl)` on an `npoints × npoints` grid of
/// sites; returns the per-plaquette phase and the total phase mod 2π.
pub fn plaquette_phase(
    npoints: usize,
    spacing: f64,
    gauge: &GaugeField,
    hbar: f64,
) -> Result<PlaquetteReport> {
    if npoints < 2 {
        return Err(Error::InvalidGrid(format!(
            "plaquette grid needs npoints >= 2, got {npoints}"
        )));
    }
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(Error::InvalidGrid(format!(
            "spacing must be positive, got {spacing}"
        )));
    }
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(Error::InvalidParam(format!("hbar must be positive, got {hbar}")));
    }
    let coord = |i: usize| (i as f64 - (npoints as f64 - 1.0) / 2.0) * spacing;
    // Line integral of e·A along a straight link, exact for linear A.
    let link = |a: [f64; 2], b: [f64; 2]| {
        let mid = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
        let f = gauge.eval(mid);
        gauge.e * (f[0] * (b[0] - a[0]) + f[1] * (b[1] - a[1]))
    };

    let mut phases = Vec::new();
    for i in 0..npoints - 1 {
        for j in 0..npoints - 1 {
            let p00 = [coord(i), coord(j)];
            let p10 = [coord(i + 1), coord(j)];
            let p11 = [coord(i + 1), coord(j + 1)];
            let p01 = [coord(i), coord(j + 1)];
            // Counterclockwise link sum; the Peierls phase of the
            // plaquette product is exp(-i·sum/hbar).
            let sum = link(p00, p10) + link(p10, p11) + link(p11, p01) + link(p01, p00);
            let product_arg = -sum / hbar;
            let phase = (-product_arg).rem_euclid(TAU);
            phases.push(phase);
        }
    }
    let first = phases[0];
    let spread = phases
        .iter()
        .map(|p| {
            let d = (p - first).abs();
            d.min(TAU - d)
        })
        .fold(0.0, f64::max);
    let closed_form = (gauge.e * gauge.curl_value() * spacing * spacing / hbar).rem_euclid(TAU);
    let total: f64 = phases.iter().sum::<f64>().rem_euclid(TAU);
    Ok(PlaquetteReport {
        npoints,
        spacing,
        gauge: gauge.kind,
        symbolic_curl: gauge.symbolic_curl(),
        per_plaquette_phase: first,
        spread,
        closed_form,
        total_phase_mod_2pi: total,
        plaquette_count: phases.len(),
    })
}
