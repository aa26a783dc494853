//! Interface shared by every algebra the checkers can inspect.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use crate::finroot::RootType;
use crate::linalg::{BasisKey, LatticeVec, Vector};

/// Ad-diagonalizable abelian subalgebra, split by the role each element
/// plays in reading off a root.
#[derive(Clone, Debug, Default)]
pub struct ToralBasis {
    /// Eigenvalues on these give the finite (epsilon) coordinates.
    pub finite: Vec<Vector>,
    /// Central elements; every root vanishes on them.
    pub central: Vec<Vector>,
    /// Degree derivations; eigenvalues give the lattice coordinates.
    pub derivations: Vec<Vector>,
}

impl ToralBasis {
    pub fn all(&self) -> Vec<Vector> {
        self.finite.iter().chain(&self.central).chain(&self.derivations).cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.finite.len() + self.central.len() + self.derivations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A Lie algebra over Q graded by finite weights and a lattice `Z^nu`,
/// presented through a canonical homogeneous basis of each graded piece.
pub trait GradedLieAlgebra: Send + Sync {
    fn label(&self) -> String;
    /// Type and rank of the finite root system the weights live in.
    fn root_type(&self) -> (RootType, usize);
    /// Number of epsilon coordinates of a finite weight.
    fn weight_len(&self) -> usize;
    fn nu(&self) -> usize;
    /// Candidate finite weights, including zero.
    fn finite_weights(&self) -> Vec<Vec<i64>>;
    /// Canonical basis of the piece of finite weight `finite` and lattice degree `sigma`.
    fn graded_piece(&self, finite: &[i64], sigma: &[i64]) -> Vec<Vector>;
    fn bracket(&self, x: &Vector, y: &Vector) -> Vector;
    fn form(&self, x: &Vector, y: &Vector) -> Rational;
    fn toral(&self) -> ToralBasis;
    /// Lattice degree of a basis key.
    fn key_degree(&self, key: &BasisKey) -> LatticeVec;
    /// Extra lattice radius used when a graded piece is produced by brackets.
    fn margin(&self) -> i64 {
        3
    }

    fn degree_basis(&self, sigma: &[i64]) -> Vec<Vector> {
        self.finite_weights().iter().flat_map(|w| self.graded_piece(w, sigma)).collect()
    }
}

/// Lattice degree of `v` if all its keys share one.
pub fn homogeneous_degree(alg: &dyn GradedLieAlgebra, v: &Vector) -> Option<LatticeVec> {
    let mut it = v.keys().map(|k| alg.key_degree(k));
    let first = it.next()?;
    it.all(|d| d == first).then_some(first)
}

/// `(ad x)^n y`
pub fn ad_power(alg: &dyn GradedLieAlgebra, x: &Vector, y: &Vector, n: usize) -> Vector {
    let mut v = y.clone();
    for _ in 0..n {
        if v.is_zero() {
            break;
        }
        v = alg.bracket(x, &v);
    }
    v
}

/// Smallest `n <= limit` with `(ad x)^n y = 0`.
pub fn nilpotency_index(alg: &dyn GradedLieAlgebra, x: &Vector, y: &Vector, limit: usize) -> Option<usize> {
    let mut v = y.clone();
    for n in 0..=limit {
        if v.is_zero() {
            return Some(n);
        }
        v = alg.bracket(x, &v);
    }
    None
}

/// `exp(ad x)(y)`; errors when `ad x` is not nilpotent on `y` within `limit` steps.
pub fn exp_ad(alg: &dyn GradedLieAlgebra, x: &Vector, y: &Vector, limit: usize) -> Result<Vector> {
    let mut out = Vector::new();
    let mut term = y.clone();
    let mut fact = Rational::one();
    for k in 0..=limit {
        if term.is_zero() {
            return Ok(out);
        }
        if k > 0 {
            fact *= Rational::from_integer(k.into());
        }
        out.axpy(&fact.recip(), &term);
        term = alg.bracket(x, &term);
    }
    if term.is_zero() {
        Ok(out)
    } else {
        Err(Error::NonNilpotent(limit))
    }
}

/// `[x, [y, z]] + [y, [z, x]] + [z, [x, y]]`
pub fn jacobiator(alg: &dyn GradedLieAlgebra, x: &Vector, y: &Vector, z: &Vector) -> Vector {
    let a = alg.bracket(x, &alg.bracket(y, z));
    let b = alg.bracket(y, &alg.bracket(z, x));
    let c = alg.bracket(z, &alg.bracket(x, y));
    a.add(&b).add(&c)
}

/// `([x, y], z) - (x, [y, z])`
pub fn invariance_defect(alg: &dyn GradedLieAlgebra, x: &Vector, y: &Vector, z: &Vector) -> Rational {
    alg.form(&alg.bracket(x, y), z) - alg.form(x, &alg.bracket(y, z))
}

pub fn is_zero_rational(r: &Rational) -> bool {
    r.is_zero()
}
