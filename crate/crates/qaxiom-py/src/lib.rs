//! Python bindings for the qaxiom workbench.
//!
//! Reports cross the boundary as canonical JSON strings (sorted keys, the
//! same documents the CLI emits with `--json`); simple results come back
//! as native values.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qaxiom::frontend;
use qaxiom::repr;
use qaxiom::spectra;
use qaxiom::symalg as sym;

fn err(e: qaxiom::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    let v = serde_json::to_value(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(frontend::render_json(&v))
}

fn params_map(hbar: f64, e: f64, b: f64, m: f64, alphadot: f64) -> BTreeMap<String, f64> {
    let mut p = BTreeMap::new();
    p.insert("hbar".to_string(), hbar);
    p.insert("e".to_string(), e);
    p.insert("B".to_string(), b);
    p.insert("M".to_string(), m);
    p.insert("alphadot".to_string(), alphadot);
    p
}

/// A commutator table with central right-hand sides.
#[pyclass(frozen)]
struct Algebra {
    inner: sym::Algebra,
}

#[pymethods]
impl Algebra {
    /// The canonical table for two degrees of freedom.
    #[staticmethod]
    #[pyo3(signature = (epsilon12 = -1))]
    fn heisenberg2(epsilon12: i8) -> PyResult<Self> {
        if epsilon12.abs() != 1 {
            return Err(PyValueError::new_err("epsilon12 must be +1 or -1"));
        }
        Ok(Algebra {
            inner: sym::Algebra::heisenberg2(epsilon12),
        })
    }

    /// The magnetic table for two degrees of freedom.
    #[staticmethod]
    #[pyo3(signature = (epsilon12 = -1))]
    fn magnetic2(epsilon12: i8) -> PyResult<Self> {
        if epsilon12.abs() != 1 {
            return Err(PyValueError::new_err("epsilon12 must be +1 or -1"));
        }
        Ok(Algebra {
            inner: sym::Algebra::magnetic2(epsilon12),
        })
    }

    /// Parse the algebra text format (`k = 2`, `comm P1 Q1 = -i*hbar`, ...).
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Algebra {
            inner: frontend::parse_algebra_file(text).map_err(err)?,
        })
    }

    #[getter]
    fn epsilon12(&self) -> i8 {
        self.inner.epsilon12()
    }

    /// Normal-order an expression; brackets expand to commutators.
    fn commute(&self, expression: &str) -> PyResult<String> {
        let poly = frontend::parse_polynomial(expression, &self.inner).map_err(err)?;
        Ok(sym::normal_order(&poly, &self.inner)
            .map_err(err)?
            .to_string())
    }

    /// Alias of `commute`, mirroring the CLI subcommand pair.
    fn normal_order(&self, expression: &str) -> PyResult<String> {
        self.commute(expression)
    }

    /// Apply a substitution to an expression, then normal-order.
    fn substitute(&self, expression: &str, rule: &Substitution) -> PyResult<String> {
        let poly = frontend::parse_polynomial(expression, &self.inner).map_err(err)?;
        Ok(sym::substitute(&poly, &rule.inner, &self.inner)
            .map_err(err)?
            .to_string())
    }

    /// Jacobi-identity report as JSON.
    fn jacobi_json(&self) -> PyResult<String> {
        to_json(&sym::jacobi_check(&self.inner))
    }

    /// Equivalence report for a substitution as JSON.
    fn equivalence_json(&self, rule: &Substitution) -> PyResult<String> {
        to_json(&sym::equivalence_check(&self.inner, &rule.inner).map_err(err)?)
    }

    /// Dimensional-homogeneity report under the geometric-units map.
    fn dimension_json(&self) -> PyResult<String> {
        to_json(&sym::dimension_check(&self.inner, &sym::DimensionMap::standard()).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Algebra(\n{})", self.inner)
    }
}

/// A linear generator substitution.
#[pyclass(frozen)]
struct Substitution {
    inner: sym::Substitution,
}

#[pymethods]
impl Substitution {
    #[staticmethod]
    fn identity() -> Self {
        Substitution {
            inner: sym::Substitution::identity(),
        }
    }

    /// The momentum-as-gauge-potential rule `P_m -> e*B*eps_mn*Q_n`.
    #[staticmethod]
    fn eq5(algebra: &Algebra) -> PyResult<Self> {
        Ok(Substitution {
            inner: sym::Substitution::momentum_to_position(&algebra.inner).map_err(err)?,
        })
    }

    /// Parse the substitution text format against an algebra.
    #[staticmethod]
    fn from_text(text: &str, algebra: &Algebra) -> PyResult<Self> {
        Ok(Substitution {
            inner: frontend::parse_substitution_file(text, &algebra.inner).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Substitution({})", self.inner)
    }
}

/// A finite-dimensional matrix representation of the generators.
#[pyclass(frozen)]
struct Representation {
    inner: repr::Representation,
}

fn parse_convention(name: &str) -> PyResult<repr::Convention> {
    match name {
        "standard" => Ok(repr::Convention::Standard),
        "paper" => Ok(repr::Convention::Paper),
        other => Err(PyValueError::new_err(format!(
            "unknown convention `{other}` (expected standard or paper)"
        ))),
    }
}

fn parse_grid_gauge(name: &str) -> PyResult<repr::GridGauge> {
    match name {
        "none" => Ok(repr::GridGauge::None),
        "paper" => Ok(repr::GridGauge::Paper),
        "symmetric" => Ok(repr::GridGauge::Symmetric),
        other => Err(PyValueError::new_err(format!(
            "unknown gauge `{other}` (expected none, paper or symmetric)"
        ))),
    }
}

#[pymethods]
impl Representation {
    /// Truncated-ladder representation on `ntrunc` number states.
    #[staticmethod]
    #[pyo3(signature = (ntrunc, hbar = 1.0, e = 1.0, b = 1.0, m = 1.0, alphadot = 0.5, convention = "standard"))]
    fn landau(
        ntrunc: usize,
        hbar: f64,
        e: f64,
        b: f64,
        m: f64,
        alphadot: f64,
        convention: &str,
    ) -> PyResult<Self> {
        Ok(Representation {
            inner: repr::landau_representation(
                ntrunc,
                params_map(hbar, e, b, m, alphadot),
                parse_convention(convention)?,
            )
            .map_err(err)?,
        })
    }

    /// Periodic-grid representation on `npoints x npoints` sites.
    #[staticmethod]
    #[pyo3(signature = (npoints, boxsize, gauge = "none", hbar = 1.0, e = 1.0, b = 1.0, m = 1.0, alphadot = 0.5, epsilon12 = -1))]
    #[allow(clippy::too_many_arguments)]
    fn grid(
        npoints: usize,
        boxsize: f64,
        gauge: &str,
        hbar: f64,
        e: f64,
        b: f64,
        m: f64,
        alphadot: f64,
        epsilon12: i8,
    ) -> PyResult<Self> {
        Ok(Representation {
            inner: repr::grid_representation(
                npoints,
                boxsize,
                parse_grid_gauge(gauge)?,
                params_map(hbar, e, b, m, alphadot),
                epsilon12,
            )
            .map_err(err)?,
        })
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn projector_rank(&self) -> usize {
        self.inner.projector_rank()
    }

    /// Residual audit against an algebra, as JSON.
    #[pyo3(signature = (algebra, tolerance = None))]
    fn audit_json(&self, algebra: &Algebra, tolerance: Option<f64>) -> PyResult<String> {
        to_json(&repr::representation_audit(&self.inner, &algebra.inner, tolerance).map_err(err)?)
    }

    /// Lowest eigenvalues of a Hamiltonian on the projected subspace.
    #[pyo3(signature = (levels, hamiltonian = None))]
    fn spectrum(&self, levels: usize, hamiltonian: Option<&str>) -> PyResult<Vec<f64>> {
        let h = self.lower_hamiltonian(hamiltonian)?;
        Ok(spectra::spectrum(&self.inner, &h, levels)
            .map_err(err)?
            .eigenvalues)
    }

    /// Full spectrum report (including the level check) as JSON.
    #[pyo3(signature = (levels, hamiltonian = None))]
    fn spectrum_json(&self, levels: usize, hamiltonian: Option<&str>) -> PyResult<String> {
        let h = self.lower_hamiltonian(hamiltonian)?;
        let report = spectra::spectrum(&self.inner, &h, levels).map_err(err)?;
        let hbar = self.inner.param("hbar").map_err(err)?;
        let check = spectra::landau_level_check(&report, hbar);
        let mut value = serde_json::to_value(&report)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        value["levelCheck"] = serde_json::to_value(&check)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(frontend::render_json(&value))
    }

    /// Uncertainty report for two observables on a state spec
    /// (`ground`, `basis:N`, `random:SEED`), as JSON.
    #[pyo3(signature = (op_a, op_b, state = "ground", hamiltonian = None))]
    fn uncertainty_json(
        &self,
        op_a: &str,
        op_b: &str,
        state: &str,
        hamiltonian: Option<&str>,
    ) -> PyResult<String> {
        let ctx = sym::Algebra::heisenberg2(-1);
        let a = frontend::parse_polynomial(op_a, &ctx).map_err(err)?;
        let b = frontend::parse_polynomial(op_b, &ctx).map_err(err)?;
        let h = self.lower_hamiltonian(hamiltonian)?;
        let spec = spectra::StateSpec::parse(state, h).map_err(err)?;
        to_json(&spectra::uncertainty(&self.inner, &spec, &a, &b).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!(
            "Representation(dimension={}, projector_rank={})",
            self.inner.dimension(),
            self.inner.projector_rank()
        )
    }
}

impl Representation {
    fn lower_hamiltonian(&self, text: Option<&str>) -> PyResult<sym::NCPolynomial> {
        match text {
            None => Ok(spectra::kinetic_hamiltonian()),
            Some(t) => {
                frontend::parse_polynomial(t, &sym::Algebra::heisenberg2(-1)).map_err(err)
            }
        }
    }
}

/// Exact decomposition of the mixed commutator, as JSON. Defaults model
/// the bounded cyclotron motion (position mode) and its dual.
#[pyfunction]
#[pyo3(signature = (mode = "position", epsilon12 = -1))]
fn mixed_commutator_json(mode: &str, epsilon12: i8) -> PyResult<String> {
    let (mode, c) = match mode {
        "position" => (
            sym::DerivativeMode::Position,
            sym::cyclotron_coefficients(epsilon12),
        ),
        "momentum" => (
            sym::DerivativeMode::Momentum,
            sym::cyclotron_dual_coefficients(epsilon12),
        ),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown mode `{other}` (expected position or momentum)"
            )))
        }
    };
    to_json(&sym::mixed_commutator(&c, mode))
}

/// Loop integral of e·A around an origin-centered circle plus flux
/// quantization, as JSON.
#[pyfunction]
#[pyo3(signature = (radius, segments = 100_000, gauge = "symmetric", b = 1.0, e = 1.0, hbar = 1.0, epsilon12 = -1))]
fn circle_flux_json(
    radius: f64,
    segments: usize,
    gauge: &str,
    b: f64,
    e: f64,
    hbar: f64,
    epsilon12: i8,
) -> PyResult<String> {
    use qaxiom::flux;
    let kind = flux::GaugeField::parse_kind(gauge).map_err(err)?;
    let field = flux::GaugeField::new(kind, b, e, epsilon12).map_err(err)?;
    let path = flux::LoopPath::circle(radius, segments).map_err(err)?;
    let value = flux::loop_integral(&path, &field).map_err(err)?;
    let quantum = 2.0 * std::f64::consts::PI * hbar;
    let report = flux::flux_quantization(value, quantum, 1e-6).map_err(err)?;
    let mut doc = serde_json::to_value(&report)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    doc["symbolicCurl"] = serde_json::Value::String(field.symbolic_curl().to_string());
    Ok(frontend::render_json(&doc))
}

/// Peierls plaquette phases on a square grid, as JSON.
#[pyfunction]
#[pyo3(signature = (npoints = 8, spacing = 1.0, gauge = "symmetric", b = 1.0, e = 1.0, hbar = 1.0, epsilon12 = -1))]
fn plaquette_json(
    npoints: usize,
    spacing: f64,
    gauge: &str,
    b: f64,
    e: f64,
    hbar: f64,
    epsilon12: i8,
) -> PyResult<String> {
    use qaxiom::flux;
    let kind = flux::GaugeField::parse_kind(gauge).map_err(err)?;
    let field = flux::GaugeField::new(kind, b, e, epsilon12).map_err(err)?;
    to_json(&flux::plaquette_phase(npoints, spacing, &field, hbar).map_err(err)?)
}

/// Parse an expression and return its canonical printed form.
#[pyfunction]
fn parse_roundtrip(expression: &str) -> PyResult<String> {
    let ast = frontend::parse_expression(expression).map_err(err)?;
    Ok(frontend::print_ast(&ast))
}

#[pymodule]
#[pyo3(name = "qaxiom")]
fn qaxiom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_class::<Substitution>()?;
    m.add_class::<Representation>()?;
    m.add_function(wrap_pyfunction!(mixed_commutator_json, m)?)?;
    m.add_function(wrap_pyfunction!(circle_flux_json, m)?)?;
    m.add_function(wrap_pyfunction!(plaquette_json, m)?)?;
    m.add_function(wrap_pyfunction!(parse_roundtrip, m)?)?;
    Ok(())
}
