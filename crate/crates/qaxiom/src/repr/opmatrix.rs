//! Dense complex operators with a two-factor Kronecker structure.
//!
//! Every operator is a sum of terms `L ⊗ R`. Ladder representations use a
//! trivial right factor (`rdim = 1`); periodic grids keep one factor per
//! axis, which keeps products and projections at the per-axis matrix size
//! instead of the full tensor-product dimension.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[derive(Clone, Debug)]
struct KronTerm {
    left: CMat,
    right: CMat,
}

/// A linear operator on `C^(ldim·rdim)` stored as `Σ Lᵢ ⊗ Rᵢ`.
#[derive(Clone, Debug)]
pub struct OpMatrix {
    ldim: usize,
    rdim: usize,
    terms: Vec<KronTerm>,
}

impl OpMatrix {
    pub fn zero(ldim: usize, rdim: usize) -> Self {
        OpMatrix {
            ldim,
            rdim,
            terms: Vec::new(),
        }
    }

    pub fn identity(ldim: usize, rdim: usize) -> Self {
        OpMatrix {
            ldim,
            rdim,
            terms: vec![KronTerm {
                left: CMat::identity(ldim, ldim),
                right: CMat::identity(rdim, rdim),
            }],
        }
    }

    /// `m ⊗ I`.
    pub fn from_left(m: CMat, rdim: usize) -> Self {
        let ldim = m.nrows();
        assert_eq!(m.nrows(), m.ncols(), "factors must be square");
        OpMatrix {
            ldim,
            rdim,
            terms: vec![KronTerm {
                left: m,
                right: CMat::identity(rdim, rdim),
            }],
        }
    }

    /// `I ⊗ m`.
    pub fn from_right(ldim: usize, m: CMat) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "factors must be square");
        let rdim = m.nrows();
        OpMatrix {
            ldim,
            rdim,
            terms: vec![KronTerm {
                left: CMat::identity(ldim, ldim),
                right: m,
            }],
        }
    }

    pub fn dim(&self) -> usize {
        self.ldim * self.rdim
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.ldim, self.rdim), (other.ldim, other.rdim));
        // With a trivial right factor everything collapses into one dense
        // block, which keeps ladder-representation compiles at a single
        // matrix per polynomial.
        if self.rdim == 1 {
            let mut acc = CMat::zeros(self.ldim, self.ldim);
            for t in self.terms.iter().chain(other.terms.iter()) {
                acc += &t.left * t.right[(0, 0)];
            }
            return OpMatrix {
                ldim: self.ldim,
                rdim: 1,
                terms: vec![KronTerm {
                    left: acc,
                    right: CMat::identity(1, 1),
                }],
            };
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        OpMatrix {
            ldim: self.ldim,
            rdim: self.rdim,
            terms,
        }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        OpMatrix {
            ldim: self.ldim,
            rdim: self.rdim,
            terms: self
                .terms
                .iter()
                .map(|t| KronTerm {
                    left: &t.left * z,
                    right: t.right.clone(),
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(c(-1.0)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.ldim, self.rdim), (other.ldim, other.rdim));
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(KronTerm {
                    left: &a.left * &b.left,
                    right: &a.right * &b.right,
                });
            }
        }
        OpMatrix {
            ldim: self.ldim,
            rdim: self.rdim,
            terms,
        }
    }

    pub fn adjoint(&self) -> Self {
        OpMatrix {
            ldim: self.ldim,
            rdim: self.rdim,
            terms: self
                .terms
                .iter()
                .map(|t| KronTerm {
                    left: t.left.adjoint(),
                    right: t.right.adjoint(),
                })
                .collect(),
        }
    }

    /// Materializes the full `dim × dim` matrix.
    pub fn to_dense(&self) -> CMat {
        let d = self.dim();
        let mut acc = CMat::zeros(d, d);
        for t in &self.terms {
            acc += t.left.kronecker(&t.right);
        }
        acc
    }

    /// `Vᴴ M V` for the factored basis `V = VL ⊗ VR`.
    pub fn projected(&self, basis: &Basis) -> CMat {
        let r = basis.rank();
        let mut acc = CMat::zeros(r, r);
        for t in &self.terms {
            let l = basis.vl.adjoint() * &t.left * &basis.vl;
            let rgt = basis.vr.adjoint() * &t.right * &basis.vr;
            acc += l.kronecker(&rgt);
        }
        acc
    }
}

/// An orthonormal, Kronecker-factored basis of the truncation-safe
/// subspace: columns of `VL ⊗ VR`.
#[derive(Clone, Debug)]
pub struct Basis {
    pub vl: CMat,
    pub vr: CMat,
}

impl Basis {
    pub fn rank(&self) -> usize {
        self.vl.ncols() * self.vr.ncols()
    }
}

/// Eigenvalues (ascending, index tie-break) and matching eigenvectors of a
/// Hermitian matrix. The input is symmetrized first so callers may pass
/// matrices that are Hermitian only up to rounding.
pub fn hermitian_eigen_sorted(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        vectors.set_column(new_col, &eig.eigenvectors.column(old_col));
    }
    (values, vectors)
}

/// Spectral (2-) norm via the largest eigenvalue of `MᴴM`.
pub fn operator_norm(m: &CMat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    let gram = m.adjoint() * m;
    let (values, _) = hermitian_eigen_sorted(&gram);
    values.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Largest absolute entry of `M - Mᴴ`, the Hermiticity defect.
pub fn hermiticity_deviation(m: &CMat) -> f64 {
    let diff = m - m.adjoint();
    diff.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(values: &[[f64; 2]; 2]) -> CMat {
        CMat::from_fn(2, 2, |i, j| c(values[i][j]))
    }

    #[test]
    fn kron_product_order_matches_dense() {
        let a = small(&[[1.0, 2.0], [3.0, 4.0]]);
        let b = small(&[[0.0, 1.0], [1.0, 0.0]]);
        let left = OpMatrix::from_left(a.clone(), 2);
        let right = OpMatrix::from_right(2, b.clone());
        let prod = left.mul(&right);
        assert_eq!(prod.to_dense(), a.kronecker(&b));
        // Left and right factors commute structurally.
        let swapped = right.mul(&left);
        assert_eq!(swapped.to_dense(), a.kronecker(&b));
    }

    #[test]
    fn rdim_one_add_consolidates() {
        let a = OpMatrix::from_left(small(&[[1.0, 0.0], [0.0, 1.0]]), 1);
        let b = OpMatrix::from_left(small(&[[0.0, 1.0], [0.0, 0.0]]), 1);
        let sum = a.add(&b);
        assert_eq!(sum.terms.len(), 1);
        assert_eq!(sum.to_dense(), small(&[[1.0, 1.0], [0.0, 1.0]]));
    }

    #[test]
    fn operator_norm_of_diagonal() {
        let m = small(&[[3.0, 0.0], [0.0, -5.0]]);
        assert!((operator_norm(&m) - 5.0).abs() < 1e-12);
        assert_eq!(operator_norm(&CMat::zeros(0, 0)), 0.0);
    }

    #[test]
    fn eigen_sort_is_ascending() {
        let m = small(&[[2.0, 0.0], [0.0, -1.0]]);
        let (values, vectors) = hermitian_eigen_sorted(&m);
        assert!(values[0] < values[1]);
        assert_eq!(values, vec![-1.0, 2.0]);
        // The ground eigenvector is e2.
        assert!((vectors[(1, 0)].norm() - 1.0).abs() < 1e-12);
    }
}
