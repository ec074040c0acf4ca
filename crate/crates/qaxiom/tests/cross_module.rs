//! Checks that couple the symbolic layer to the matrix representations:
//! substitution/compilation commutativity, homomorphism quality, basis
//! invariance, spectral stability.

mod common;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use common::{random_polynomial, realized_ladder_algebra, rng};
use qaxiom::repr::{
    default_params, grid_representation, landau_representation, representation_audit,
    spectral_norm, Convention, GridGauge, Representation,
};
use qaxiom::spectra::{kinetic_hamiltonian, spectrum};
use qaxiom::symalg::{substitute, Algebra, NCPolynomial, Substitution};

type CMat = DMatrix<Complex64>;

fn landau(ntrunc: usize) -> Representation {
    landau_representation(ntrunc, default_params(), Convention::Standard).unwrap()
}

/// Substitution at the matrix level: each word maps to the product of the
/// compiled generator images, with no re-normal-ordering.
fn matrix_substitute(
    p: &NCPolynomial,
    s: &Substitution,
    rep: &Representation,
) -> qaxiom::repr::opmatrix::OpMatrix {
    let mut acc: Option<qaxiom::repr::opmatrix::OpMatrix> = None;
    for (word, coeff) in p.terms() {
        let z = coeff.eval(rep.params()).unwrap();
        let mut prod = rep.compile(&NCPolynomial::one()).unwrap();
        for g in &word.0 {
            let image = rep.compile(&s.image(*g)).unwrap();
            prod = prod.mul(&image);
        }
        let term = prod.scale(z);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    acc.unwrap_or_else(|| rep.compile(&NCPolynomial::zero()).unwrap())
}

#[test]
fn substitution_commutes_with_compilation_on_ladder() {
    // The re-normal-ordering inside `substitute` uses the relations the
    // ladder representation actually realizes, so both routes agree on the
    // projected subspace.
    let a = realized_ladder_algebra();
    let s = Substitution::momentum_to_position(&a).unwrap();
    let rep = landau(128);
    let mut r = rng(71);
    for _ in 0..25 {
        let p = random_polynomial(&mut r, 3, 3);
        let symbolic_first = rep.compile(&substitute(&p, &s, &a).unwrap()).unwrap();
        let matrices_first = matrix_substitute(&p, &s, &rep);
        let diff = rep.projected(&symbolic_first.sub(&matrices_first));
        let norm = spectral_norm(&diff);
        assert!(norm < 1e-10, "polynomial {p}: residual {norm}");
    }
}

#[test]
fn substitution_commutes_with_compilation_on_grid() {
    // The momentum rule maps everything into commuting position operators,
    // which the grid realizes exactly.
    let a = Algebra::heisenberg2(-1);
    let s = Substitution::momentum_to_position(&a).unwrap();
    let rep = grid_representation(16, 10.0, GridGauge::None, default_params(), -1).unwrap();
    let mut r = rng(73);
    for _ in 0..25 {
        let p = random_polynomial(&mut r, 3, 3);
        let symbolic_first = rep.compile(&substitute(&p, &s, &a).unwrap()).unwrap();
        let matrices_first = matrix_substitute(&p, &s, &rep);
        let diff = rep.projected(&symbolic_first.sub(&matrices_first));
        let norm = spectral_norm(&diff);
        assert!(norm < 1e-10, "polynomial {p}: residual {norm}");
    }
}

#[test]
fn identity_substitution_commutes_on_ladder() {
    let a = realized_ladder_algebra();
    let rep = landau(96);
    let mut r = rng(79);
    for _ in 0..20 {
        let p = random_polynomial(&mut r, 3, 3);
        let ordered = rep
            .compile(&substitute(&p, &Substitution::identity(), &a).unwrap())
            .unwrap();
        let raw = rep.compile(&p).unwrap();
        let norm = spectral_norm(&rep.projected(&ordered.sub(&raw)));
        assert!(norm < 1e-10, "polynomial {p}: residual {norm}");
    }
}

#[test]
fn compile_is_projected_homomorphism() {
    let rep = landau(128);
    let mut r = rng(83);
    for _ in 0..30 {
        let p = random_polynomial(&mut r, 3, 2);
        let q = random_polynomial(&mut r, 3, 2);
        let product = rep.compile(&p.mul(&q)).unwrap();
        let separate = rep.compile(&p).unwrap().mul(&rep.compile(&q).unwrap());
        let norm = spectral_norm(&rep.projected(&product.sub(&separate)));
        assert!(norm < 1e-9, "residual {norm} for {p} times {q}");
    }
}

#[test]
fn residual_norms_invariant_under_basis_change() {
    let rep = landau(32);
    // A deterministic pseudo-random unitary from a QR factorization.
    let mut r = rng(89);
    let raw = CMat::from_fn(32, 32, |_, _| {
        Complex64::new(
            r.random_range(-1.0..1.0_f64),
            r.random_range(-1.0..1.0_f64),
        )
    });
    let qr = raw.qr();
    let u = qr.q();
    let conjugated = rep.conjugated(&u);
    for algebra in [Algebra::magnetic2(-1), Algebra::heisenberg2(-1)] {
        let base = representation_audit(&rep, &algebra, None).unwrap();
        let moved = representation_audit(&conjugated, &algebra, None).unwrap();
        for (b, m) in base.entries.iter().zip(moved.entries.iter()) {
            assert!(
                (b.operator_norm - m.operator_norm).abs() < 1e-9,
                "{}: {} vs {}",
                b.pair,
                b.operator_norm,
                m.operator_norm
            );
        }
    }
}

#[test]
fn real_position_polynomials_compile_hermitian_on_grid() {
    // Positions commute on the grid, so real-coefficient polynomials in
    // them are Hermitian to rounding. (On the ladder the two positions do
    // not commute and products like Q1·Q2 legitimately pick up an
    // anti-Hermitian part.)
    let rep = grid_representation(16, 10.0, GridGauge::None, default_params(), -1).unwrap();
    let mut r = rng(97);
    for _ in 0..20 {
        let mut p = NCPolynomial::zero();
        for _ in 0..3 {
            let word = qaxiom::symalg::Word(
                (0..r.random_range(0..4))
                    .map(|_| qaxiom::symalg::Generator::q(r.random_range(1..=2)))
                    .collect(),
            );
            let rational = common::random_rational(&mut r);
            p.add_term(
                word,
                qaxiom::symalg::Coefficient::gaussian(
                    qaxiom::symalg::GaussianRational::from_rational(rational),
                ),
            );
        }
        let m = rep.projected(&rep.compile(&p).unwrap());
        let defect = qaxiom::repr::hermiticity_defect(&m);
        assert!(defect < 1e-12, "defect {defect} for {p}");
    }
}

#[test]
fn eigenvalues_stable_under_truncation_growth() {
    let h = kinetic_hamiltonian();
    let coarse = spectrum(&landau(128), &h, 5).unwrap();
    let fine = spectrum(&landau(256), &h, 5).unwrap();
    for (a, b) in coarse.eigenvalues.iter().zip(fine.eigenvalues.iter()) {
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }
}

#[test]
fn grid_audit_field_free_against_heisenberg() {
    // With no gauge coupling the grid realizes the canonical table: the
    // momentum-momentum and position-position pairs are exact, the cross
    // pairs are limited by the interior projector.
    let mut params = default_params();
    params.insert("B".to_string(), 0.0);
    let rep = grid_representation(64, 20.0, GridGauge::None, params, -1).unwrap();
    let report = representation_audit(&rep, &Algebra::heisenberg2(-1), None).unwrap();
    assert!(report.all_pass, "entries: {:?}", report.entries);
    for entry in &report.entries {
        match entry.pair.as_str() {
            "[P1, P2]" | "[Q1, Q2]" => assert!(entry.operator_norm < 1e-12, "{}", entry.operator_norm),
            _ => assert!(entry.operator_norm < 1e-5, "{}", entry.operator_norm),
        }
    }
}

#[test]
fn grid_kinetic_commutator_tracks_symbolic_curl() {
    // [Π1, Π2] = i·hbar·e·curl(A): curl is 2B·eps21 for the gauge with
    // both components coupled, B for the symmetric one.
    use qaxiom::symalg::{Coefficient, Generator};
    for (gauge, curl_factor) in [(GridGauge::Paper, 2i64), (GridGauge::Symmetric, 1)] {
        let rep = grid_representation(64, 20.0, gauge, default_params(), -1).unwrap();
        let p1 = NCPolynomial::generator(Generator::p(1));
        let p2 = NCPolynomial::generator(Generator::p(2));
        let comm = p1.mul(&p2).sub(&p2.mul(&p1));
        let expected = NCPolynomial::scalar(
            Coefficient::i()
                .mul(&Coefficient::symbol("hbar"))
                .mul(&Coefficient::symbol("e"))
                .mul(&Coefficient::integer(curl_factor))
                .mul(&Coefficient::symbol("B")),
        );
        let residual = rep
            .compile(&comm)
            .unwrap()
            .sub(&rep.compile(&expected).unwrap());
        let norm = rep.projected_norm(&residual);
        assert!(norm < 1e-6, "gauge {gauge:?}: residual {norm}");
    }
}

#[test]
fn audit_landau_against_realized_table_passes() {
    let rep = landau(256);
    let report = representation_audit(&rep, &realized_ladder_algebra(), None).unwrap();
    assert!(report.all_pass, "entries: {:?}", report.entries);
}

#[test]
fn audit_landau_against_magnetic_flags_momentum_pair() {
    // The declared magnetic table has [P1, P2] = -i·hbar·e·B under the
    // default sign convention while the representation realizes +i·hbar·e·B,
    // so that single pair fails with residual 2·hbar·e·B.
    let rep = landau(256);
    let report = representation_audit(&rep, &Algebra::magnetic2(-1), None).unwrap();
    assert!(!report.all_pass);
    for entry in &report.entries {
        if entry.pair == "[P1, P2]" {
            assert!(
                (entry.operator_norm - 2.0).abs() < 1e-10,
                "residual {}",
                entry.operator_norm
            );
        } else {
            assert!(entry.pass, "{} failed at {}", entry.pair, entry.operator_norm);
        }
    }
}
