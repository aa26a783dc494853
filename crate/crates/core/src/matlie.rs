//! `2l x 2l` matrices over the quantum torus, the involution `X* = E^-1 bar(X)^t E`
//! and the graded pieces of `B = {X : X* = -X}` and of its derived algebra.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{GradedLieAlgebra, ToralBasis};
use crate::decomp::{GradedPiece, Root};
use crate::error::{Error, Result};
use crate::exact_arith::{radical_product, GaussianRational, Rational};
use crate::finroot::{build_finite_root_system, RootType};
use crate::linalg::{lattice, lattice_add, lattice_box, lattice_neg, lattice_sub, sup_norm, BasisKey, LatticeVec, MatKey, Span, Vector};
use crate::quantum_torus::{SignMatrix, TorusElement};

/// Weight of the basis index `p` of the natural module: `eps_p`, `-eps_{p-l}`,
/// or zero for the extra index of odd orthogonal algebras.
pub fn index_weight(ell: usize, p: usize) -> Vec<i64> {
    let mut w = vec![0; ell];
    if p < ell {
        w[p] = 1;
    } else if p < 2 * ell {
        w[p - ell] = -1;
    }
    w
}

pub fn key_weight(ell: usize, k: &MatKey) -> Vec<i64> {
    let a = index_weight(ell, k.row as usize);
    let b = index_weight(ell, k.col as usize);
    a.iter().zip(&b).map(|(x, y)| x - y).collect()
}

/// Product of two matrix monomials, if the inner indices match.
pub fn key_product(q: &SignMatrix, a: &MatKey, b: &MatKey) -> Option<(MatKey, Rational)> {
    if a.col != b.row {
        return None;
    }
    let mut c = Rational::from_integer(q.c(&a.degree, &b.degree).into());
    if a.imag && b.imag {
        c = -c;
    }
    let (g, radical) = radical_product(a.radical, b.radical);
    if g != 1 {
        c *= Rational::from_integer(g.into());
    }
    Some((
        MatKey {
            degree: lattice_add(&a.degree, &b.degree),
            row: a.row,
            col: b.col,
            imag: a.imag != b.imag,
            radical,
        },
        c,
    ))
}

/// Matrix multiplication, commutator and trace form on sparse matrices.
#[derive(Clone, Debug)]
pub struct MatrixEngine {
    pub q: Arc<SignMatrix>,
    pub form_scale: Rational,
}

impl MatrixEngine {
    pub fn new(q: Arc<SignMatrix>) -> Self {
        Self { q, form_scale: Rational::one() }
    }

    pub fn product(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (ka, ca) in x.iter() {
            let BasisKey::Mat(a) = ka else { continue };
            for (kb, cb) in y.iter() {
                let BasisKey::Mat(b) = kb else { continue };
                if let Some((k, c)) = key_product(&self.q, a, b) {
                    out.add_term(BasisKey::Mat(k), c * ca * cb);
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        self.product(x, y).sub(&self.product(y, x))
    }

    /// Constant, real, rational part of `tr(xy)`, scaled by `form_scale`.
    pub fn trace_form(&self, x: &Vector, y: &Vector) -> Rational {
        let mut s = Rational::zero();
        for (ka, ca) in x.iter() {
            let BasisKey::Mat(a) = ka else { continue };
            for (kb, cb) in y.iter() {
                let BasisKey::Mat(b) = kb else { continue };
                if a.row != b.col || a.degree.iter().zip(&b.degree).any(|(u, v)| u + v != 0) {
                    continue;
                }
                if let Some((k, c)) = key_product(&self.q, a, b) {
                    if !k.imag && k.radical == 1 {
                        s += c * ca * cb;
                    }
                }
            }
        }
        s * &self.form_scale
    }
}

fn mat(row: usize, col: usize, sigma: &[i64], imag: bool) -> BasisKey {
    BasisKey::Mat(MatKey::new(row, col, sigma, imag))
}

fn sign(s: i8) -> Rational {
    Rational::from_integer(s.into())
}

/// Dense `2l x 2l` matrix with quantum torus entries.
#[derive(Clone, Debug, PartialEq)]
pub struct LieElement {
    ell: usize,
    q: Arc<SignMatrix>,
    entries: Vec<TorusElement>,
}

impl LieElement {
    pub fn zero(ell: usize, q: Arc<SignMatrix>) -> Self {
        let n = 2 * ell;
        Self { ell, entries: vec![TorusElement::zero(q.clone()); n * n], q }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn size(&self) -> usize {
        2 * self.ell
    }

    pub fn entry(&self, i: usize, j: usize) -> &TorusElement {
        &self.entries[i * self.size() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: TorusElement) {
        let n = self.size();
        self.entries[i * n + j] = a;
    }

    /// `a e_{i,j}`
    pub fn elementary(ell: usize, q: Arc<SignMatrix>, i: usize, j: usize, a: TorusElement) -> Result<Self> {
        if i >= 2 * ell || j >= 2 * ell {
            return Err(Error::InvalidArgument(format!("index ({i},{j}) out of range")));
        }
        let mut x = Self::zero(ell, q);
        x.set(i, j, a);
        Ok(x)
    }

    fn diagonal(ell: usize, q: Arc<SignMatrix>, r: usize, lower: i64) -> Self {
        let mut x = Self::zero(ell, q.clone());
        let one = TorusElement::one(q.clone());
        x.set(r, r, one.clone());
        x.set(ell + r, ell + r, one.scale(&GaussianRational::from_ints(lower, 0)));
        x
    }

    /// `e_rr - e_{l+r,l+r}`
    pub fn h_dot(ell: usize, q: Arc<SignMatrix>, r: usize) -> Self {
        Self::diagonal(ell, q, r, -1)
    }

    /// `e_rr + e_{l+r,l+r}`
    pub fn h_ddot(ell: usize, q: Arc<SignMatrix>, r: usize) -> Self {
        Self::diagonal(ell, q, r, 1)
    }

    /// `E = [[0, I], [-I, 0]]`
    pub fn j_matrix(ell: usize, q: Arc<SignMatrix>) -> Self {
        let mut x = Self::zero(ell, q.clone());
        let one = TorusElement::one(q);
        for r in 0..ell {
            x.set(r, ell + r, one.clone());
            x.set(ell + r, r, one.neg());
        }
        x
    }

    fn check_shape(&self, o: &Self) -> Result<()> {
        if self.ell != o.ell {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.size(), o.size())));
        }
        if *self.q != *o.q {
            return Err(Error::MismatchedTorus);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_shape(o)?;
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(Self { ell: self.ell, q: self.q.clone(), entries })
    }

    pub fn neg(&self) -> Self {
        Self { ell: self.ell, q: self.q.clone(), entries: self.entries.iter().map(|a| a.neg()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { ell: self.ell, q: self.q.clone(), entries: self.entries.iter().map(|a| a.scale(c)).collect() }
    }

    /// Multiply every entry on the left by `a`.
    pub fn left_mul(&self, a: &TorusElement) -> Result<Self> {
        let entries = self.entries.iter().map(|x| a.mul(x)).collect::<Result<_>>()?;
        Ok(Self { ell: self.ell, q: self.q.clone(), entries })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_shape(o)?;
        let n = self.size();
        let mut out = Self::zero(self.ell, self.q.clone());
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.entry(i, j).add(&a.mul(b)?)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        let mut out = Self::zero(self.ell, self.q.clone());
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.entry(i, j).clone());
            }
        }
        out
    }

    pub fn bar_entries(&self) -> Self {
        Self { ell: self.ell, q: self.q.clone(), entries: self.entries.iter().map(|a| a.bar()).collect() }
    }

    /// `E^-1 bar(X)^t E`
    pub fn star(&self) -> Self {
        let e = Self::j_matrix(self.ell, self.q.clone());
        let e_inv = e.neg();
        e_inv.mul(&self.bar_entries().transpose()).and_then(|m| m.mul(&e)).expect("shapes agree")
    }

    pub fn is_skew(&self) -> bool {
        self.star().add(self).map(|s| s.is_zero()).unwrap_or(false)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|a| a.is_zero())
    }

    pub fn trace(&self) -> TorusElement {
        let mut t = TorusElement::zero(self.q.clone());
        for i in 0..self.size() {
            t = t.add(self.entry(i, i)).expect("same torus");
        }
        t
    }

    pub fn to_vector(&self) -> Vector {
        let n = self.size();
        let mut v = Vector::new();
        for i in 0..n {
            for j in 0..n {
                for (s, c) in self.entry(i, j).terms() {
                    v.add_term(mat(i, j, s, false), c.re.clone());
                    v.add_term(mat(i, j, s, true), c.im.clone());
                }
            }
        }
        v
    }

    pub fn from_vector(ell: usize, q: Arc<SignMatrix>, v: &Vector) -> Result<Self> {
        let mut x = Self::zero(ell, q.clone());
        for (k, c) in v.iter() {
            let BasisKey::Mat(m) = k else {
                return Err(Error::InvalidArgument(format!("{k} is not a matrix key")));
            };
            let (i, j) = (m.row as usize, m.col as usize);
            if i >= 2 * ell || j >= 2 * ell || m.radical != 1 {
                return Err(Error::InvalidArgument(format!("{k} does not fit a {}x{} torus matrix", 2 * ell, 2 * ell)));
            }
            let coeff = if m.imag {
                GaussianRational::new(Rational::zero(), c.clone())
            } else {
                GaussianRational::real(c.clone())
            };
            let a = TorusElement::monomial(q.clone(), &m.degree, coeff)?;
            let e = x.entry(i, j).add(&a)?;
            x.set(i, j, e);
        }
        Ok(x)
    }
}

pub fn star(x: &LieElement) -> LieElement {
    x.star()
}

pub fn mat_bracket(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    x.mul(y)?.sub(&y.mul(x)?)
}

/// `epsilon(tr(XY))`
pub fn trace_form(x: &LieElement, y: &LieElement) -> Result<Rational> {
    Ok(x.mul(y)?.trace().epsilon())
}

/// Sparse diagonal element `t^gamma (e_rr + lower e_{l+r,l+r})`, times `i` when `imag`.
fn diag_element(ell: usize, gamma: &[i64], r: usize, lower: i8, imag: bool) -> Vector {
    Vector::from_terms([
        (mat(r, r, gamma, imag), Rational::one()),
        (mat(ell + r, ell + r, gamma, imag), sign(lower)),
    ])
}

/// Nonzero roots of type `C_l` in epsilon coordinates.
pub fn type_c_roots(ell: usize) -> Vec<Vec<i64>> {
    build_finite_root_system(RootType::C, ell)
        .map(|s| s.nonzero_roots().cloned().collect())
        .unwrap_or_default()
}

/// Closed-form basis of the skew piece of nonzero weight `finite` and degree `sigma`.
fn skew_nonzero_basis(ell: usize, q: &SignMatrix, finite: &[i64], sigma: &[i64]) -> Option<Vec<Vector>> {
    let k = sign(q.kappa(sigma));
    let nz: Vec<(usize, i64)> = finite.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect();
    let pair = |a: BasisKey, b: BasisKey, re_sign: Rational| -> Vec<Vector> {
        let im = |x: &BasisKey| -> BasisKey {
            let BasisKey::Mat(m) = x else { unreachable!() };
            BasisKey::Mat(MatKey { imag: true, ..m.clone() })
        };
        vec![
            Vector::from_terms([(a.clone(), Rational::one()), (b.clone(), &re_sign * &k)]),
            Vector::from_terms([(im(&a), Rational::one()), (im(&b), -&re_sign * &k)]),
        ]
    };
    match nz.as_slice() {
        // eps_r - eps_s: real part e_rs - k e_{l+s,l+r}, imaginary part with +k
        [(a, 1), (b, -1)] | [(b, -1), (a, 1)] => {
            let (r, s) = (*a, *b);
            Some(pair(mat(r, s, sigma, false), mat(ell + s, ell + r, sigma, false), -Rational::one()))
        }
        [(r, 1), (s, 1)] => Some(pair(mat(*r, ell + s, sigma, false), mat(*s, ell + r, sigma, false), Rational::one())),
        [(r, -1), (s, -1)] => Some(pair(mat(ell + r, *s, sigma, false), mat(ell + s, *r, sigma, false), Rational::one())),
        [(r, 2)] => Some(vec![Vector::unit(mat(*r, ell + r, sigma, q.kappa(sigma) < 0))]),
        [(r, -2)] => Some(vec![Vector::unit(mat(ell + r, *r, sigma, q.kappa(sigma) < 0))]),
        _ => None,
    }
}

/// Parity class of a lattice point for the zero-weight piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZeroCase {
    /// `kappa = 1` and some split `gamma = sigma + tau` has `kappa_sigma kappa_tau = -1`.
    EvenWithOdd,
    EvenWithoutOdd,
    /// `kappa = -1` and some split has `kappa_sigma kappa_tau = 1`.
    OddWithEven,
    OddWithoutEven,
}

/// `kappa_sigma kappa_{gamma - sigma} = f_sigma^gamma kappa_gamma`, and
/// `sigma -> f_sigma^gamma` is a character, so both properties reduce to
/// whether that character is trivial on the unit vectors.
pub fn zero_case(q: &SignMatrix, gamma: &[i64]) -> ZeroCase {
    let nu = q.nu();
    let nontrivial = (0..nu).any(|i| {
        let mut e = vec![0; nu];
        e[i] = 1;
        q.f(&e, gamma) < 0
    });
    match (q.kappa(gamma) > 0, nontrivial) {
        (true, true) => ZeroCase::EvenWithOdd,
        (true, false) => ZeroCase::EvenWithoutOdd,
        (false, true) => ZeroCase::OddWithEven,
        (false, false) => ZeroCase::OddWithoutEven,
    }
}

/// Closed-form basis of the zero-weight piece of degree `gamma`, summed over pairs `r != s`.
pub fn zero_root_closed_form(ell: usize, q: &SignMatrix, gamma: &[i64]) -> Vec<Vector> {
    let mut span = Span::new();
    let case = zero_case(q, gamma);
    for r in 0..ell {
        for s in 0..ell {
            if r == s {
                continue;
            }
            let hd = diag_element(ell, gamma, r, -1, false);
            let ihd = diag_element(ell, gamma, r, -1, true);
            let hh = diag_element(ell, gamma, r, 1, false);
            let ihh = diag_element(ell, gamma, r, 1, true);
            let diff = |imag| diag_element(ell, gamma, r, 1, imag).sub(&diag_element(ell, gamma, s, 1, imag));
            let gens = match case {
                ZeroCase::EvenWithOdd => vec![hd, ihh],
                ZeroCase::EvenWithoutOdd => vec![hd, diff(true)],
                ZeroCase::OddWithEven => vec![hh, ihd],
                ZeroCase::OddWithoutEven => vec![diff(false), ihd],
            };
            for g in &gens {
                span.insert(g);
            }
        }
    }
    span.into_basis()
}

/// Basis of the zero-weight piece of `B` in degree `sigma`.
pub fn skew_zero_basis(ell: usize, q: &SignMatrix, sigma: &[i64]) -> Vec<Vector> {
    let k = sign(q.kappa(sigma));
    let mut out = Vec::new();
    for r in 0..ell {
        out.push(Vector::from_terms([(mat(r, r, sigma, false), Rational::one()), (mat(ell + r, ell + r, sigma, false), -&k)]));
        out.push(Vector::from_terms([(mat(r, r, sigma, true), Rational::one()), (mat(ell + r, ell + r, sigma, true), k.clone())]));
    }
    out
}

fn check_root(ell: usize, q: &SignMatrix, root: &Root) -> Result<()> {
    if root.finite.len() != ell || root.lattice.len() != q.nu() {
        return Err(Error::DimensionMismatch(format!(
            "root with {} finite and {} lattice coordinates for l = {ell}, nu = {}",
            root.finite.len(),
            root.lattice.len(),
            q.nu()
        )));
    }
    Ok(())
}

/// Closed-form basis of the graded piece of `B` at `root`; for zero weight
/// this is the four-case description of the derived algebra's piece.
pub fn skew_root_basis(ell: usize, q: &SignMatrix, root: &Root) -> Result<GradedPiece> {
    check_root(ell, q, root)?;
    let basis = if root.is_isotropic() {
        zero_root_closed_form(ell, q, &root.lattice)
    } else {
        skew_nonzero_basis(ell, q, &root.finite, &root.lattice)
            .ok_or_else(|| Error::NotARoot(format!("{:?} is not a root of C_{ell}", root.finite)))?
    };
    Ok(GradedPiece { root: root.clone(), basis })
}

/// Zero-weight piece of the derived algebra in degree `gamma`, spanned by
/// `[G_a^sigma, G_-a^{gamma - sigma}]` over nonzero `a` and
/// `|sigma|, |gamma - sigma| <= |gamma| + margin`.
pub fn zero_root_component(ell: usize, q: &SignMatrix, gamma: &[i64], margin: i64) -> Result<GradedPiece> {
    if gamma.len() != q.nu() {
        return Err(Error::DimensionMismatch(format!("degree of length {} for nu = {}", gamma.len(), q.nu())));
    }
    let engine = MatrixEngine::new(Arc::new(q.clone()));
    let basis = zero_span(ell, q, &engine, gamma, margin, false);
    Ok(GradedPiece { root: Root::new(vec![0; ell], gamma), basis })
}

fn zero_span(ell: usize, q: &SignMatrix, engine: &MatrixEngine, gamma: &[i64], margin: i64, with_zero: bool) -> Vec<Vector> {
    let radius = sup_norm(gamma) + margin;
    let roots = type_c_roots(ell);
    let mut span = Span::new();
    for sigma in lattice_box(q.nu(), radius) {
        let tau = lattice_sub(gamma, &sigma);
        if sup_norm(&tau) > radius {
            continue;
        }
        for a in &roots {
            let neg: Vec<i64> = a.iter().map(|x| -x).collect();
            let left = skew_nonzero_basis(ell, q, a, &sigma).expect("root");
            let right = skew_nonzero_basis(ell, q, &neg, &tau).expect("root");
            for x in &left {
                for y in &right {
                    span.insert(&engine.bracket(x, y));
                }
            }
        }
        if with_zero {
            let left = skew_zero_basis(ell, q, &sigma);
            let right = skew_zero_basis(ell, q, &tau);
            for x in &left {
                for y in &right {
                    span.insert(&engine.bracket(x, y));
                }
            }
        }
        if span.rank() == 2 * ell {
            break;
        }
    }
    span.into_basis()
}

/// Zero-weight piece of `[B, B]` in degree `gamma`, including the brackets
/// of zero-weight pieces with each other.
pub fn derived_zero_component(ell: usize, q: &SignMatrix, gamma: &[i64], margin: i64) -> Vec<Vector> {
    let engine = MatrixEngine::new(Arc::new(q.clone()));
    zero_span(ell, q, &engine, gamma, margin, true)
}

/// `A^{sigma,r,s}_{a,b} = a t^sigma (e_rs - k e_{l+s,l+r}) + i b t^sigma (e_rs + k e_{l+s,l+r})`
pub fn a_type_element(ell: usize, q: &SignMatrix, sigma: &[i64], r: usize, s: usize, a: &Rational, b: &Rational) -> Vector {
    let k = sign(q.kappa(sigma));
    Vector::from_terms([
        (mat(r, s, sigma, false), a.clone()),
        (mat(ell + s, ell + r, sigma, false), -a * &k),
        (mat(r, s, sigma, true), b.clone()),
        (mat(ell + s, ell + r, sigma, true), b * &k),
    ])
}

/// Closed form of `[A^{sigma,r,s}_{a,b}, A^{tau,s,r}_{c,d}]`:
/// `p ((ac - bd)(m_r - f m_s) + i (ad + bc)(n_r - f n_s)) t^{sigma+tau}` with
/// `m_r = e_rr - k e_{l+r,l+r}`, `n_r = e_rr + k e_{l+r,l+r}`, `k = kappa_{sigma+tau}`,
/// `f = f_sigma^tau` and `p` the structure constant of `t^sigma t^tau`,
/// which equals `g_tau^sigma` for the ordered monomials used here.
#[allow(clippy::too_many_arguments)]
pub fn a_type_bracket_closed_form(
    ell: usize,
    q: &SignMatrix,
    sigma: &[i64],
    tau: &[i64],
    r: usize,
    s: usize,
    (a, b): (&Rational, &Rational),
    (c, d): (&Rational, &Rational),
) -> Vector {
    let gamma = lattice_add(sigma, tau);
    let k = sign(q.kappa(&gamma));
    let f = sign(q.f(sigma, tau));
    let p = sign(q.c(sigma, tau));
    let re = &p * (a * c - b * d);
    let im = &p * (a * d + b * c);
    let mut v = Vector::new();
    // m_r - f m_s
    v.add_term(mat(r, r, &gamma, false), re.clone());
    v.add_term(mat(ell + r, ell + r, &gamma, false), -&re * &k);
    v.add_term(mat(s, s, &gamma, false), -&re * &f);
    v.add_term(mat(ell + s, ell + s, &gamma, false), &re * &f * &k);
    // i (n_r - f n_s)
    v.add_term(mat(r, r, &gamma, true), im.clone());
    v.add_term(mat(ell + r, ell + r, &gamma, true), &im * &k);
    v.add_term(mat(s, s, &gamma, true), -&im * &f);
    v.add_term(mat(ell + s, ell + s, &gamma, true), -&im * &f * &k);
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkewVariant {
    /// The derived algebra `G = [B, B]`.
    Derived,
    /// All of `B`.
    Full,
}

/// `B` or `G = [B, B]` over the quantum torus, graded by `C_l` weights and `Z^nu`.
pub struct QuantumTorusAlgebra {
    ell: usize,
    q: Arc<SignMatrix>,
    variant: SkewVariant,
    margin: i64,
    engine: MatrixEngine,
    weights: Vec<Vec<i64>>,
    zero_cache: Mutex<HashMap<LatticeVec, Vec<Vector>>>,
}

impl QuantumTorusAlgebra {
    pub fn new(ell: usize, q: SignMatrix, variant: SkewVariant) -> Result<Self> {
        if ell < 2 {
            return Err(Error::InvalidArgument("l must be at least 2".into()));
        }
        let q = Arc::new(q);
        let mut weights = type_c_roots(ell);
        weights.push(vec![0; ell]);
        weights.sort();
        Ok(Self {
            ell,
            engine: MatrixEngine::new(q.clone()),
            q,
            variant,
            margin: 3,
            weights,
            zero_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_margin(mut self, margin: i64) -> Self {
        self.margin = margin;
        self
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn sign_matrix(&self) -> &Arc<SignMatrix> {
        &self.q
    }

    pub fn variant(&self) -> SkewVariant {
        self.variant
    }

    pub fn engine(&self) -> &MatrixEngine {
        &self.engine
    }

    fn zero_piece(&self, sigma: &[i64]) -> Vec<Vector> {
        match self.variant {
            SkewVariant::Full => skew_zero_basis(self.ell, &self.q, sigma),
            SkewVariant::Derived => {
                let key = lattice(sigma);
                if let Some(v) = self.zero_cache.lock().unwrap().get(&key) {
                    return v.clone();
                }
                let v = derived_zero_component(self.ell, &self.q, sigma, self.margin);
                self.zero_cache.lock().unwrap().insert(key, v.clone());
                v
            }
        }
    }
}

impl GradedLieAlgebra for QuantumTorusAlgebra {
    fn label(&self) -> String {
        let v = match self.variant {
            SkewVariant::Derived => "G",
            SkewVariant::Full => "B",
        };
        format!("{v}(l={}, nu={}, q={:?})", self.ell, self.q.nu(), self.q.upper())
    }

    fn root_type(&self) -> (RootType, usize) {
        (RootType::C, self.ell)
    }

    fn weight_len(&self) -> usize {
        self.ell
    }

    fn nu(&self) -> usize {
        self.q.nu()
    }

    fn finite_weights(&self) -> Vec<Vec<i64>> {
        self.weights.clone()
    }

    fn graded_piece(&self, finite: &[i64], sigma: &[i64]) -> Vec<Vector> {
        if finite.len() != self.ell || sigma.len() != self.q.nu() {
            return Vec::new();
        }
        if finite.iter().all(|&x| x == 0) {
            return self.zero_piece(sigma);
        }
        skew_nonzero_basis(self.ell, &self.q, finite, sigma).unwrap_or_default()
    }

    fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        self.engine.bracket(x, y)
    }

    fn form(&self, x: &Vector, y: &Vector) -> Rational {
        self.engine.trace_form(x, y)
    }

    fn toral(&self) -> ToralBasis {
        let zero = vec![0; self.q.nu()];
        ToralBasis {
            finite: (0..self.ell).map(|r| diag_element(self.ell, &zero, r, -1, false)).collect(),
            ..Default::default()
        }
    }

    fn key_degree(&self, key: &BasisKey) -> LatticeVec {
        match key {
            BasisKey::Mat(m) => m.degree.clone(),
            _ => lattice(&vec![0; self.q.nu()]),
        }
    }

    fn margin(&self) -> i64 {
        self.margin
    }
}

/// Lattice degree negation helper shared with callers building opposite pieces.
pub fn opposite(root: &Root) -> Root {
    Root { finite: root.finite.iter().map(|x| -x).collect(), lattice: lattice_neg(&root.lattice) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::int;

    fn q2() -> Arc<SignMatrix> {
        Arc::new(SignMatrix::from_upper(2, &[-1]).unwrap())
    }

    #[test]
    fn star_of_unit() {
        let q = q2();
        let e11 = LieElement::elementary(2, q.clone(), 0, 0, TorusElement::one(q.clone())).unwrap();
        let expect = LieElement::elementary(2, q.clone(), 2, 2, TorusElement::one(q)).unwrap();
        assert_eq!(star(&e11), expect);
    }

    #[test]
    fn toral_action() {
        let q = q2();
        let h = LieElement::h_dot(2, q.clone(), 0);
        let e12 = LieElement::elementary(2, q.clone(), 0, 1, TorusElement::one(q)).unwrap();
        assert_eq!(mat_bracket(&h, &e12).unwrap(), e12);
    }

    #[test]
    fn short_root_basis() {
        let q = SignMatrix::trivial(2);
        let piece = skew_root_basis(2, &q, &Root::new(vec![1, -1], &[0, 0])).unwrap();
        let e12 = mat(0, 1, &[0, 0], false);
        let e43 = mat(3, 2, &[0, 0], false);
        let expect_re = Vector::from_terms([(e12, int(1)), (e43, int(-1))]);
        let expect_im = Vector::from_terms([(mat(0, 1, &[0, 0], true), int(1)), (mat(3, 2, &[0, 0], true), int(1))]);
        assert_eq!(piece.basis, vec![expect_re, expect_im]);
    }

    #[test]
    fn long_root_basis_odd_degree() {
        let q = SignMatrix::from_upper(2, &[-1]).unwrap();
        let piece = skew_root_basis(2, &q, &Root::new(vec![2, 0], &[1, 1])).unwrap();
        assert_eq!(piece.basis, vec![Vector::unit(mat(0, 2, &[1, 1], true))]);
    }

    #[test]
    fn non_root_rejected() {
        let q = SignMatrix::trivial(1);
        assert!(skew_root_basis(2, &q, &Root::new(vec![1, 0], &[0])).is_err());
        assert!(skew_root_basis(2, &q, &Root::new(vec![1, -1], &[0, 0])).is_err());
    }

    #[test]
    fn vector_round_trip() {
        let q = q2();
        let v = a_type_element(2, &q, &[1, 1], 0, 1, &int(2), &int(-3));
        let x = LieElement::from_vector(2, q.clone(), &v).unwrap();
        assert_eq!(x.to_vector(), v);
        assert!(x.is_skew());
    }

    #[test]
    fn zero_form_cases() {
        let q = SignMatrix::from_upper(2, &[-1]).unwrap();
        assert_eq!(zero_case(&q, &[0, 0]), ZeroCase::EvenWithoutOdd);
        assert_eq!(zero_case(&q, &[2, 0]), ZeroCase::EvenWithoutOdd);
        assert_eq!(zero_case(&q, &[1, 0]), ZeroCase::EvenWithOdd);
        assert_eq!(zero_case(&q, &[1, 1]), ZeroCase::OddWithEven);
        assert_eq!(zero_root_closed_form(2, &q, &[0, 0]).len(), 3);
        assert_eq!(zero_root_closed_form(2, &q, &[1, 0]).len(), 4);
    }

    #[test]
    fn sparse_and_dense_brackets_agree() {
        let q = q2();
        let engine = MatrixEngine::new(q.clone());
        let x = a_type_element(2, &q, &[1, 0], 0, 1, &int(1), &int(2));
        let y = a_type_element(2, &q, &[0, 1], 1, 0, &int(3), &int(-1));
        let dense = mat_bracket(
            &LieElement::from_vector(2, q.clone(), &x).unwrap(),
            &LieElement::from_vector(2, q.clone(), &y).unwrap(),
        )
        .unwrap();
        assert_eq!(dense.to_vector(), engine.bracket(&x, &y));
        let f = trace_form(
            &LieElement::from_vector(2, q.clone(), &x).unwrap(),
            &LieElement::from_vector(2, q.clone(), &y).unwrap(),
        )
        .unwrap();
        assert_eq!(f, engine.trace_form(&x, &y));
    }
}
