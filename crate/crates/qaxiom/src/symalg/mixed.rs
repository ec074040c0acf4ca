//! Exact decomposition of the mixed commutator `D̂₁(f₂·) − D̂₂(f₁·)`.
//!
//! Models wavefunction arguments `X = (X₁, X₂)` with linear momentum (or
//! position) functions `f_m = Σ_n c_mn X_n` and derivative operators
//! `D̂_m = ∓iħ∂_m`: minus in position mode (`D̂ = P̂`), plus in momentum
//! mode (`D̂ = Q̂`). The product rule gives a central scalar part plus a
//! first-order remainder; both are returned exactly. The scalar part alone
//! is the textbook answer, the remainder is what a scalar-only reading
//! drops.

use serde::Serialize;

use super::poly::{GenKind, Generator, NCPolynomial};
use super::scalar::Coefficient;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DerivativeMode {
    /// Wavefunctions of position; `D̂_m = -i·hbar·∂/∂Q_m`.
    Position,
    /// Wavefunctions of momentum; `D̂_m = +i·hbar·∂/∂P_m`.
    Momentum,
}

impl DerivativeMode {
    fn argument_kind(self) -> GenKind {
        match self {
            DerivativeMode::Position => GenKind::Q,
            DerivativeMode::Momentum => GenKind::P,
        }
    }

    /// The `∓i·hbar` prefactor carried by `D̂`.
    pub fn prefactor(self) -> Coefficient {
        let i_hbar = Coefficient::i().mul(&Coefficient::symbol("hbar"));
        match self {
            DerivativeMode::Position => i_hbar.neg(),
            DerivativeMode::Momentum => i_hbar,
        }
    }
}

/// The exact operator decomposition of `D̂₁(f₂·) − D̂₂(f₁·)`.
///
/// `scalar_part` multiplies the identity; the remainder is the first-order
/// operator `prefactor · (f₂∘∂₁ − f₁∘∂₂)` with `f₁`, `f₂` stored as linear
/// polynomials in the argument generators.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MixedCommutatorResult {
    pub mode: DerivativeMode,
    pub scalar_part: Coefficient,
    pub remainder_f2: NCPolynomial,
    pub remainder_f1: NCPolynomial,
    pub derivative_prefactor: Coefficient,
}

impl MixedCommutatorResult {
    pub fn remainder_is_zero(&self) -> bool {
        self.remainder_f1.is_zero() && self.remainder_f2.is_zero()
    }
}

/// Expands the mixed commutator for the coefficient matrix `c` (row = f
/// index, column = argument index, both 1-based in the physics reading).
///
/// Scalar part: `prefactor · (c₂₁ − c₁₂)`. Remainder functions:
/// `f_m = Σ_n c_mn X_n`.
pub fn mixed_commutator(
    c: &[[Coefficient; 2]; 2],
    mode: DerivativeMode,
) -> MixedCommutatorResult {
    let kind = mode.argument_kind();
    let arg = |n: u32| {
        NCPolynomial::generator(Generator {
            kind,
            index: n,
        })
    };
    let f = |m: usize| {
        arg(1)
            .scale(&c[m - 1][0])
            .add(&arg(2).scale(&c[m - 1][1]))
    };
    let prefactor = mode.prefactor();
    let scalar_part = prefactor.mul(&c[1][0].sub(&c[0][1]));
    MixedCommutatorResult {
        mode,
        scalar_part,
        remainder_f2: f(2),
        remainder_f1: f(1),
        derivative_prefactor: prefactor,
    }
}

/// The bounded-motion coefficient matrix `c_mn = M·alphadot·ε_mn`.
pub fn cyclotron_coefficients(epsilon12: i8) -> [[Coefficient; 2]; 2] {
    let m_alphadot = Coefficient::symbol("M").mul(&Coefficient::symbol("alphadot"));
    let eps = |m: i64, n: i64| {
        if m == n {
            Coefficient::zero()
        } else if m < n {
            m_alphadot.mul(&Coefficient::integer(epsilon12 as i64))
        } else {
            m_alphadot.mul(&Coefficient::integer(-(epsilon12 as i64)))
        }
    };
    [[eps(1, 1), eps(1, 2)], [eps(2, 1), eps(2, 2)]]
}

/// The inverse relation `Q_m = -(M·alphadot)^-1·ε_mn·P_n`, the coefficient
/// matrix for the momentum-representation dual of the bounded-motion case.
pub fn cyclotron_dual_coefficients(epsilon12: i8) -> [[Coefficient; 2]; 2] {
    let inv = Coefficient::symbol("M")
        .mul(&Coefficient::symbol("alphadot"))
        .inverse()
        .expect("M*alphadot is a single invertible term")
        .neg();
    let eps = |m: i64, n: i64| {
        if m == n {
            Coefficient::zero()
        } else if m < n {
            inv.mul(&Coefficient::integer(epsilon12 as i64))
        } else {
            inv.mul(&Coefficient::integer(-(epsilon12 as i64)))
        }
    };
    [[eps(1, 1), eps(1, 2)], [eps(2, 1), eps(2, 2)]]
}
