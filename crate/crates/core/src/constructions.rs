//! Affinization, split classical algebras over multiquadratic fields, and
//! extensions of a graded algebra by a complement through a cocycle.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{GradedLieAlgebra, ToralBasis};
use crate::error::{Error, Result};
use crate::exact_arith::{int, is_prime, radical_basis, Rational};
use crate::finroot::{build_finite_root_system, RootType};
use crate::linalg::{lattice, lattice_box, relations, BasisKey, LatticeVec, Matrix, MatKey, Vector};
use crate::matlie::{index_weight, MatrixEngine};
use crate::quantum_torus::SignMatrix;

fn is_extra(k: &BasisKey) -> bool {
    matches!(k, BasisKey::Central(_) | BasisKey::Derivation(_))
}

/// `L = G + C + D` with `[x, y]' = [x, y] + sum_i (d_i x, y) c_i`,
/// `[d_i, x] = d_i x`, `C` central and `(c_i, d_j) = delta_ij`.
pub struct Affinization {
    base: Arc<dyn GradedLieAlgebra>,
}

/// Affinize a graded algebra. For `nu = 0` nothing is added.
pub fn affinize(base: Arc<dyn GradedLieAlgebra>) -> Affinization {
    Affinization { base }
}

/// Element of an affinization split into its three parts.
#[derive(Clone, Debug, PartialEq)]
pub struct AffinizedElement {
    pub g: Vector,
    pub c: Vec<Rational>,
    pub d: Vec<Rational>,
}

impl AffinizedElement {
    pub fn split(v: &Vector, nu: usize) -> Self {
        Self {
            g: v.filter(|k| !is_extra(k)),
            c: (0..nu).map(|i| v.get(&BasisKey::Central(i as u16))).collect(),
            d: (0..nu).map(|i| v.get(&BasisKey::Derivation(i as u16))).collect(),
        }
    }

    pub fn join(&self) -> Vector {
        let mut v = self.g.clone();
        for (i, x) in self.c.iter().enumerate() {
            v.add_term(BasisKey::Central(i as u16), x.clone());
        }
        for (i, x) in self.d.iter().enumerate() {
            v.add_term(BasisKey::Derivation(i as u16), x.clone());
        }
        v
    }
}

impl Affinization {
    pub fn base(&self) -> &Arc<dyn GradedLieAlgebra> {
        &self.base
    }

    /// `d_i v`: multiply each homogeneous part by its `i`-th degree.
    pub fn degree_derivation(&self, i: usize, v: &Vector) -> Vector {
        Vector::from_terms(v.iter().map(|(k, c)| (k.clone(), c * int(self.base.key_degree(k)[i]))))
    }
}

impl GradedLieAlgebra for Affinization {
    fn label(&self) -> String {
        format!("aff({})", self.base.label())
    }

    fn root_type(&self) -> (RootType, usize) {
        self.base.root_type()
    }

    fn weight_len(&self) -> usize {
        self.base.weight_len()
    }

    fn nu(&self) -> usize {
        self.base.nu()
    }

    fn finite_weights(&self) -> Vec<Vec<i64>> {
        self.base.finite_weights()
    }

    fn graded_piece(&self, finite: &[i64], sigma: &[i64]) -> Vec<Vector> {
        let mut out = self.base.graded_piece(finite, sigma);
        if finite.iter().all(|&x| x == 0) && sigma.iter().all(|&x| x == 0) {
            for i in 0..self.nu() {
                out.push(Vector::unit(BasisKey::Central(i as u16)));
                out.push(Vector::unit(BasisKey::Derivation(i as u16)));
            }
        }
        out
    }

    fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let nu = self.nu();
        let a = AffinizedElement::split(x, nu);
        let b = AffinizedElement::split(y, nu);
        let mut out = self.base.bracket(&a.g, &b.g);
        for i in 0..nu {
            let dx = self.degree_derivation(i, &a.g);
            out.add_term(BasisKey::Central(i as u16), self.base.form(&dx, &b.g));
            if !a.d[i].is_zero() {
                out.axpy(&a.d[i], &self.degree_derivation(i, &b.g));
            }
            if !b.d[i].is_zero() {
                out.axpy(&-b.d[i].clone(), &dx);
            }
        }
        out
    }

    fn form(&self, x: &Vector, y: &Vector) -> Rational {
        let nu = self.nu();
        let a = AffinizedElement::split(x, nu);
        let b = AffinizedElement::split(y, nu);
        let mut s = self.base.form(&a.g, &b.g);
        for i in 0..nu {
            s += &a.c[i] * &b.d[i] + &a.d[i] * &b.c[i];
        }
        s
    }

    fn toral(&self) -> ToralBasis {
        let nu = self.nu() as u16;
        ToralBasis {
            finite: self.base.toral().finite,
            central: (0..nu).map(|i| Vector::unit(BasisKey::Central(i))).collect(),
            derivations: (0..nu).map(|i| Vector::unit(BasisKey::Derivation(i))).collect(),
        }
    }

    fn key_degree(&self, key: &BasisKey) -> LatticeVec {
        if is_extra(key) {
            lattice(&vec![0; self.nu()])
        } else {
            self.base.key_degree(key)
        }
    }

    fn margin(&self) -> i64 {
        self.base.margin()
    }
}

/// Involutive index permutation and signs of the matrix `J` defining the
/// classical algebra `{X : X^t J + J X = 0}`: `J = sum_p j_p e_{p, pi(p)}`.
fn j_structure(t: RootType, ell: usize) -> Vec<(usize, i64)> {
    let n = if t == RootType::B { 2 * ell + 1 } else { 2 * ell };
    (0..n)
        .map(|p| {
            if p < ell {
                (p + ell, 1)
            } else if p < 2 * ell {
                (p - ell, if t == RootType::C { -1 } else { 1 })
            } else {
                (p, 1)
            }
        })
        .collect()
}

/// Split classical algebra of type B, C or D over `Q(sqrt p_1, ..., sqrt p_k)`,
/// with form `(x (x) a, y (x) b) = (x, y) f(a, b)` and `f` the rational part of `ab`.
pub struct ClassicalMatrixAlgebra {
    root_type: RootType,
    ell: usize,
    size: usize,
    radicals: Vec<u64>,
    engine: MatrixEngine,
    weights: Vec<Vec<i64>>,
    rational_pieces: HashMap<Vec<i64>, Vec<Vector>>,
}

/// The algebra `G (x) K` for a multiquadratic field `K`.
pub type ExtendedScalarsAlgebra = ClassicalMatrixAlgebra;

fn mat(row: usize, col: usize) -> BasisKey {
    BasisKey::Mat(MatKey::new(row, col, &[], false))
}

impl ClassicalMatrixAlgebra {
    pub fn new(t: RootType, ell: usize, primes: &[u64]) -> Result<Self> {
        if !matches!(t, RootType::B | RootType::C | RootType::D) {
            return Err(Error::Unsupported(format!("no matrix realisation of type {t} here; use B, C or D")));
        }
        let roots = build_finite_root_system(t, ell)?;
        let mut sorted = primes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != primes.len() {
            return Err(Error::InvalidArgument("primes must be distinct".into()));
        }
        if let Some(p) = primes.iter().find(|p| !is_prime(**p)) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let j = j_structure(t, ell);
        let size = j.len();
        let mut weights: Vec<Vec<i64>> = roots.roots().iter().cloned().collect();
        weights.sort();
        let mut rational_pieces = HashMap::new();
        for w in &weights {
            let keys: Vec<(usize, usize)> = (0..size)
                .flat_map(|p| (0..size).map(move |q| (p, q)))
                .filter(|&(p, q)| {
                    let a = index_weight(ell, p);
                    let b = index_weight(ell, q);
                    a.iter().zip(&b).map(|(x, y)| x - y).collect::<Vec<_>>() == *w
                })
                .collect();
            // image of e_pq under X -> X^t J + J X
            let images: Vec<Vector> = keys
                .iter()
                .map(|&(p, q)| {
                    let (pp, jp) = j[p];
                    Vector::from_terms([(mat(q, pp), int(jp)), (mat(pp, q), int(j[pp].1))])
                })
                .collect();
            let basis: Vec<Vector> = relations(&images)
                .iter()
                .map(|c| Vector::from_terms(keys.iter().zip(c).map(|(&(p, q), x)| (mat(p, q), x.clone()))))
                .collect();
            rational_pieces.insert(w.clone(), basis);
        }
        let mut engine = MatrixEngine::new(Arc::new(SignMatrix::trivial(0)));
        if t == RootType::B {
            engine.form_scale = int(2);
        }
        Ok(Self { root_type: t, ell, size, radicals: radical_basis(primes), engine, weights, rational_pieces })
    }

    pub fn matrix_size(&self) -> usize {
        self.size
    }

    /// Squarefree integers `a` whose square roots form the scalar basis.
    pub fn radicals(&self) -> &[u64] {
        &self.radicals
    }

    pub fn scalar_dim(&self) -> usize {
        self.radicals.len()
    }

    /// `x (x) sqrt(a)` for `x` with rational matrix keys.
    pub fn tensor(x: &Vector, a: u64) -> Vector {
        Vector::from_terms(x.iter().map(|(k, c)| match k {
            BasisKey::Mat(m) => (BasisKey::Mat(MatKey { radical: a, ..m.clone() }), c.clone()),
            other => (other.clone(), c.clone()),
        }))
    }
}

pub fn build_extension_example(t: RootType, rank: usize, primes: &[u64]) -> Result<ExtendedScalarsAlgebra> {
    ClassicalMatrixAlgebra::new(t, rank, primes)
}

impl GradedLieAlgebra for ClassicalMatrixAlgebra {
    fn label(&self) -> String {
        if self.radicals.len() == 1 {
            format!("{}{} over Q", self.root_type, self.ell)
        } else {
            format!("{}{} over Q(sqrt {:?})", self.root_type, self.ell, self.radicals)
        }
    }

    fn root_type(&self) -> (RootType, usize) {
        (self.root_type, self.ell)
    }

    fn weight_len(&self) -> usize {
        self.ell
    }

    fn nu(&self) -> usize {
        0
    }

    fn finite_weights(&self) -> Vec<Vec<i64>> {
        self.weights.clone()
    }

    fn graded_piece(&self, finite: &[i64], sigma: &[i64]) -> Vec<Vector> {
        if !sigma.is_empty() {
            return Vec::new();
        }
        let Some(base) = self.rational_pieces.get(finite) else {
            return Vec::new();
        };
        base.iter().flat_map(|b| self.radicals.iter().map(move |&a| Self::tensor(b, a))).collect()
    }

    fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        self.engine.bracket(x, y)
    }

    fn form(&self, x: &Vector, y: &Vector) -> Rational {
        self.engine.trace_form(x, y)
    }

    fn toral(&self) -> ToralBasis {
        ToralBasis {
            finite: (0..self.ell)
                .map(|r| Vector::from_terms([(mat(r, r), Rational::one()), (mat(self.ell + r, self.ell + r), -Rational::one())]))
                .collect(),
            ..Default::default()
        }
    }

    fn key_degree(&self, _key: &BasisKey) -> LatticeVec {
        LatticeVec::new()
    }
}

/// A derivation `rho(x)` of the base algebra attached to a complement basis element.
#[derive(Clone)]
pub enum Derivation {
    Zero,
    /// Degree derivation along the given lattice axis.
    Degree(usize),
    Map(Arc<dyn Fn(&Vector) -> Vector + Send + Sync>),
}

impl Derivation {
    pub fn apply(&self, base: &dyn GradedLieAlgebra, v: &Vector) -> Vector {
        match self {
            Derivation::Zero => Vector::new(),
            Derivation::Degree(i) => Vector::from_terms(v.iter().map(|(k, c)| (k.clone(), c * int(base.key_degree(k)[*i])))),
            Derivation::Map(f) => f(v),
        }
    }
}

/// Data of `L = A + E`: the Lie algebra `E` by structure constants, the
/// action `rho`, the cocycle `tau` with values in `A`, and the form on `E`.
#[derive(Clone)]
pub struct ExtensionSpec {
    pub base: Arc<dyn GradedLieAlgebra>,
    pub dim: usize,
    /// `[x_i, x_j]_E = sum_k structure[i][j][k] x_k`
    pub structure: Vec<Vec<Vec<Rational>>>,
    pub rho: Vec<Derivation>,
    pub tau: Vec<Vec<Vector>>,
    pub form: Matrix,
    /// Complement elements adjoined to the toral subalgebra.
    pub toral_part: Vec<usize>,
}

impl ExtensionSpec {
    /// `E` abelian, `rho = 0`, `tau = 0`, identity form, all of `E` toral.
    pub fn central(base: Arc<dyn GradedLieAlgebra>, dim: usize) -> Self {
        Self {
            base,
            dim,
            structure: vec![vec![vec![Rational::zero(); dim]; dim]; dim],
            rho: vec![Derivation::Zero; dim],
            tau: vec![vec![Vector::new(); dim]; dim],
            form: Matrix::identity(dim),
            toral_part: (0..dim).collect(),
        }
    }

    fn e_bracket(&self, i: usize, j: usize) -> &[Rational] {
        &self.structure[i][j]
    }
}

pub struct CocycleExtension {
    spec: ExtensionSpec,
}

fn complement(i: usize) -> BasisKey {
    BasisKey::Complement(i as u16)
}

fn violation(msg: String) -> Error {
    Error::CocycleViolation(msg)
}

/// Validate the cocycle conditions on the base window of radius `window` and build `L`.
pub fn build_extension_by_cocycle(spec: ExtensionSpec, window: i64) -> Result<CocycleExtension> {
    let n = spec.dim;
    if spec.rho.len() != n || spec.tau.len() != n || spec.structure.len() != n || spec.form.rows() != n {
        return Err(Error::DimensionMismatch("extension data does not match the complement dimension".into()));
    }
    if !spec.form.is_symmetric() {
        return Err(violation("form on the complement is not symmetric".into()));
    }
    let base = spec.base.clone();
    for i in 0..n {
        for j in 0..n {
            if spec.tau[i][j] != spec.tau[j][i].neg() {
                return Err(violation(format!("tau(x{}, x{}) != -tau(x{}, x{})", i + 1, j + 1, j + 1, i + 1)));
            }
            let s = spec.e_bracket(i, j);
            let t = spec.e_bracket(j, i);
            if s.iter().zip(t).any(|(a, b)| a != &-b.clone()) {
                return Err(violation(format!("[x{}, x{}]_E is not antisymmetric", i + 1, j + 1)));
            }
        }
    }
    let mut sample = Vec::new();
    for sigma in lattice_box(base.nu(), window) {
        sample.extend(base.degree_basis(&sigma));
    }
    let zero = vec![0i64; base.nu()];
    let degree_zero = base.degree_basis(&zero);
    let rho_of = |k: usize, v: &Vector| spec.rho[k].apply(base.as_ref(), v);
    let e_action = |i: usize, j: usize, v: &Vector| {
        let mut out = Vector::new();
        for (k, c) in spec.e_bracket(i, j).iter().enumerate() {
            out.axpy(c, &rho_of(k, v));
        }
        out
    };
    for i in 0..n {
        for a in &degree_zero {
            let finite_zero = base.toral().finite.iter().all(|h| base.bracket(h, a).is_zero());
            if !finite_zero && !rho_of(i, a).is_zero() {
                return Err(violation(format!("rho(x{}) does not kill the finite part at {a}", i + 1)));
            }
        }
        for (ai, a) in sample.iter().enumerate() {
            for b in sample.iter().skip(ai).take(8) {
                let lhs = rho_of(i, &base.bracket(a, b));
                let rhs = base.bracket(&rho_of(i, a), b).add(&base.bracket(a, &rho_of(i, b)));
                if lhs != rhs {
                    return Err(violation(format!("rho(x{}) is not a derivation on [{a}, {b}]", i + 1)));
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for a in &sample {
                let lhs = base.bracket(&spec.tau[i][j], a);
                let rhs = rho_of(i, &rho_of(j, a)).sub(&rho_of(j, &rho_of(i, a))).sub(&e_action(i, j, a));
                if lhs != rhs {
                    return Err(violation(format!(
                        "ad tau(x{}, x{}) != [rho x{}, rho x{}] - rho[x{}, x{}] on {a}",
                        i + 1,
                        j + 1,
                        i + 1,
                        j + 1,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
    }
    let tau_of = |coeffs: &[Rational], k: usize| {
        let mut out = Vector::new();
        for (m, c) in coeffs.iter().enumerate() {
            out.axpy(c, &spec.tau[m][k]);
        }
        out
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let cyc = [(i, j, k), (j, k, i), (k, i, j)];
                let mut total = Vector::new();
                for (x, y, z) in cyc {
                    total = total.add(&rho_of(x, &spec.tau[y][z]));
                    total = total.sub(&tau_of(spec.e_bracket(x, y), z));
                }
                if !total.is_zero() {
                    return Err(violation(format!("cyclic identity fails on (x{}, x{}, x{})", i + 1, j + 1, k + 1)));
                }
            }
        }
    }
    Ok(CocycleExtension { spec })
}

impl CocycleExtension {
    pub fn spec(&self) -> &ExtensionSpec {
        &self.spec
    }

    fn split(&self, v: &Vector) -> (Vector, Vec<Rational>) {
        let a = v.filter(|k| !matches!(k, BasisKey::Complement(_)));
        let e = (0..self.spec.dim).map(|i| v.get(&complement(i))).collect();
        (a, e)
    }
}

impl GradedLieAlgebra for CocycleExtension {
    fn label(&self) -> String {
        format!("{} + E(dim {})", self.spec.base.label(), self.spec.dim)
    }

    fn root_type(&self) -> (RootType, usize) {
        self.spec.base.root_type()
    }

    fn weight_len(&self) -> usize {
        self.spec.base.weight_len()
    }

    fn nu(&self) -> usize {
        self.spec.base.nu()
    }

    fn finite_weights(&self) -> Vec<Vec<i64>> {
        self.spec.base.finite_weights()
    }

    fn graded_piece(&self, finite: &[i64], sigma: &[i64]) -> Vec<Vector> {
        let mut out = self.spec.base.graded_piece(finite, sigma);
        if finite.iter().all(|&x| x == 0) && sigma.iter().all(|&x| x == 0) {
            out.extend((0..self.spec.dim).map(|i| Vector::unit(complement(i))));
        }
        out
    }

    fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let base = self.spec.base.as_ref();
        let (a, e) = self.split(x);
        let (b, f) = self.split(y);
        let mut out = base.bracket(&a, &b);
        for i in 0..self.spec.dim {
            if !e[i].is_zero() {
                out.axpy(&e[i], &self.spec.rho[i].apply(base, &b));
            }
            if !f[i].is_zero() {
                out.axpy(&-f[i].clone(), &self.spec.rho[i].apply(base, &a));
            }
            for j in 0..self.spec.dim {
                let c = &e[i] * &f[j];
                if c.is_zero() {
                    continue;
                }
                for (k, s) in self.spec.e_bracket(i, j).iter().enumerate() {
                    out.add_term(complement(k), &c * s);
                }
                out.axpy(&c, &self.spec.tau[i][j]);
            }
        }
        out
    }

    fn form(&self, x: &Vector, y: &Vector) -> Rational {
        let (a, e) = self.split(x);
        let (b, f) = self.split(y);
        let mut s = self.spec.base.form(&a, &b);
        for i in 0..self.spec.dim {
            for j in 0..self.spec.dim {
                s += &e[i] * &f[j] * self.spec.form.get(i, j);
            }
        }
        s
    }

    fn toral(&self) -> ToralBasis {
        let mut t = self.spec.base.toral();
        t.central.extend(self.spec.toral_part.iter().map(|&i| Vector::unit(complement(i))));
        t
    }

    fn key_degree(&self, key: &BasisKey) -> LatticeVec {
        match key {
            BasisKey::Complement(_) => lattice(&vec![0; self.nu()]),
            k => self.spec.base.key_degree(k),
        }
    }

    fn margin(&self) -> i64 {
        self.spec.base.margin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::jacobiator;
    use crate::decomp::decompose_window;

    #[test]
    fn sp4_root_spaces() {
        let sp4 = ClassicalMatrixAlgebra::new(RootType::C, 2, &[]).unwrap();
        let w = decompose_window(&sp4, 0).unwrap();
        assert_eq!(w.len(), 9);
        for r in w.roots() {
            let expect = if r.is_isotropic() { 2 } else { 1 };
            assert_eq!(w.dim(r), expect, "{r}");
        }
    }

    #[test]
    fn orthogonal_algebras_have_expected_dimensions() {
        for (t, l, dim) in [(RootType::B, 2, 10), (RootType::D, 4, 28), (RootType::B, 3, 21), (RootType::C, 3, 21)] {
            let alg = ClassicalMatrixAlgebra::new(t, l, &[]).unwrap();
            let total: usize = alg.finite_weights().iter().map(|w| alg.graded_piece(w, &[]).len()).sum();
            assert_eq!(total, dim, "{t}{l}");
        }
    }

    #[test]
    fn extension_scalars_dimension() {
        let alg = build_extension_example(RootType::C, 2, &[2, 3]).unwrap();
        assert_eq!(alg.scalar_dim(), 4);
        assert_eq!(alg.graded_piece(&[1, -1], &[]).len(), 4);
        assert!(build_extension_example(RootType::C, 2, &[4]).is_err());
        assert!(build_extension_example(RootType::C, 2, &[3, 3]).is_err());
        assert!(matches!(build_extension_example(RootType::E, 6, &[2]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn antisymmetry_violation_rejected() {
        let base: Arc<dyn GradedLieAlgebra> = Arc::new(ClassicalMatrixAlgebra::new(RootType::C, 2, &[]).unwrap());
        let mut spec = ExtensionSpec::central(base, 2);
        spec.tau[0][1] = Vector::unit(mat(0, 0));
        let err = build_extension_by_cocycle(spec, 0).err().unwrap();
        assert!(matches!(err, Error::CocycleViolation(_)));
    }

    #[test]
    fn central_extension_jacobi() {
        let base: Arc<dyn GradedLieAlgebra> = Arc::new(ClassicalMatrixAlgebra::new(RootType::C, 2, &[]).unwrap());
        let ext = build_extension_by_cocycle(ExtensionSpec::central(base, 2), 0).unwrap();
        let b = ext.degree_basis(&[]);
        for x in b.iter().take(6) {
            for y in b.iter().skip(3).take(6) {
                for z in b.iter().skip(8) {
                    assert!(jacobiator(&ext, x, y, z).is_zero());
                }
            }
        }
    }
}
