//! Quantum torus `C_q[t_1^±1, ..., t_nu^±1]` with a sign matrix `q`.
//!
//! Generators satisfy `t_i t_j = q_ij t_j t_i`. The monomial `t^sigma` is the
//! ordered word `t_1^{n_1} ... t_nu^{n_nu}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_arith::{GaussianRational, Rational};
use crate::linalg::{lattice, lattice_add, LatticeVec};

/// Symmetric `nu x nu` matrix of signs with unit diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    nu: usize,
    entries: Vec<i8>,
}

fn sign_pow(q: i8, n: i64) -> i8 {
    if q < 0 && n.rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

impl SignMatrix {
    /// Full matrix in row-major order.
    pub fn new(nu: usize, entries: Vec<i8>) -> Result<Self> {
        if entries.len() != nu * nu {
            return Err(Error::InvalidSignMatrix(format!(
                "expected {} entries, got {}",
                nu * nu,
                entries.len()
            )));
        }
        for i in 0..nu {
            if entries[i * nu + i] != 1 {
                return Err(Error::InvalidSignMatrix(format!("q[{i}][{i}] must be 1")));
            }
            for j in 0..nu {
                let x = entries[i * nu + j];
                if x != 1 && x != -1 {
                    return Err(Error::InvalidSignMatrix("q entries must be ±1".into()));
                }
                if x != entries[j * nu + i] {
                    return Err(Error::InvalidSignMatrix(format!("q[{i}][{j}] != q[{j}][{i}]")));
                }
            }
        }
        Ok(Self { nu, entries })
    }

    /// From the strict upper triangle in row-major order.
    pub fn from_upper(nu: usize, upper: &[i64]) -> Result<Self> {
        let need = nu * nu.saturating_sub(1) / 2;
        if upper.iter().any(|&x| x != 1 && x != -1) {
            return Err(Error::InvalidSignMatrix("q entries must be ±1".into()));
        }
        if upper.len() != need {
            return Err(Error::InvalidSignMatrix(format!(
                "expected {need} upper-triangle entries for nu = {nu}, got {}",
                upper.len()
            )));
        }
        let mut e = vec![1i8; nu * nu];
        let mut it = upper.iter();
        for i in 0..nu {
            for j in i + 1..nu {
                let x = *it.next().unwrap() as i8;
                e[i * nu + j] = x;
                e[j * nu + i] = x;
            }
        }
        Self::new(nu, e)
    }

    pub fn trivial(nu: usize) -> Self {
        Self { nu, entries: vec![1; nu * nu] }
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.nu + j]
    }

    pub fn upper(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for i in 0..self.nu {
            for j in i + 1..self.nu {
                out.push(self.get(i, j) as i64);
            }
        }
        out
    }

    fn check(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.nu {
            return Err(Error::DimensionMismatch(format!(
                "lattice vector of length {} for nu = {}",
                v.len(),
                self.nu
            )));
        }
        Ok(())
    }

    /// `kappa_sigma = prod_{i<j} q_ij^{n_i n_j}`
    pub fn kappa(&self, s: &[i64]) -> i8 {
        let mut k = 1;
        for i in 0..self.nu {
            for j in i + 1..self.nu {
                k *= sign_pow(self.get(i, j), s[i] * s[j]);
            }
        }
        k
    }

    /// `g_sigma^tau = prod_{i<=j} q_ij^{n_i m_j}`; diagonal factors are 1.
    pub fn g(&self, s: &[i64], t: &[i64]) -> i8 {
        let mut k = 1;
        for i in 0..self.nu {
            for j in i + 1..self.nu {
                k *= sign_pow(self.get(i, j), s[i] * t[j]);
            }
        }
        k
    }

    /// `f_sigma^tau = g_sigma^tau g_tau^sigma`
    pub fn f(&self, s: &[i64], t: &[i64]) -> i8 {
        self.g(s, t) * self.g(t, s)
    }

    /// `t^sigma t^tau = c t^{sigma+tau}`. Moving `t_j^{n_j}` of the left word
    /// past `t_i^{m_i}` of the right word, `i < j`, costs `q_ij^{n_j m_i}`.
    pub fn c(&self, s: &[i64], t: &[i64]) -> i8 {
        let mut k = 1;
        for i in 0..self.nu {
            for j in i + 1..self.nu {
                k *= sign_pow(self.get(i, j), s[j] * t[i]);
            }
        }
        k
    }
}

pub fn kappa(sigma: &[i64], q: &SignMatrix) -> Result<i8> {
    q.check(sigma)?;
    Ok(q.kappa(sigma))
}

/// `(g_sigma^tau, f_sigma^tau)`
pub fn cocycles(sigma: &[i64], tau: &[i64], q: &SignMatrix) -> Result<(i8, i8)> {
    q.check(sigma)?;
    q.check(tau)?;
    Ok((q.g(sigma, tau), q.f(sigma, tau)))
}

pub fn structure_constant(sigma: &[i64], tau: &[i64], q: &SignMatrix) -> Result<i8> {
    q.check(sigma)?;
    q.check(tau)?;
    Ok(q.c(sigma, tau))
}

/// Finite sum of monomials with Gaussian rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement {
    q: Arc<SignMatrix>,
    terms: BTreeMap<LatticeVec, GaussianRational>,
}

impl TorusElement {
    pub fn zero(q: Arc<SignMatrix>) -> Self {
        Self { q, terms: BTreeMap::new() }
    }

    pub fn monomial(q: Arc<SignMatrix>, sigma: &[i64], coeff: GaussianRational) -> Result<Self> {
        q.check(sigma)?;
        let mut e = Self::zero(q);
        e.add_term(lattice(sigma), coeff);
        Ok(e)
    }

    pub fn one(q: Arc<SignMatrix>) -> Self {
        let nu = q.nu();
        Self::monomial(q, &vec![0; nu], GaussianRational::from_ints(1, 0)).unwrap()
    }

    pub fn sign_matrix(&self) -> &Arc<SignMatrix> {
        &self.q
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVec, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, sigma: &[i64]) -> GaussianRational {
        self.terms.get(sigma).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, sigma: LatticeVec, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(sigma.clone()).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&sigma);
        }
    }

    fn same_torus(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.q, &o.q) || *self.q == *o.q {
            Ok(())
        } else {
            Err(Error::MismatchedTorus)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_torus(o)?;
        let mut out = self.clone();
        for (s, c) in &o.terms {
            out.add_term(s.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self { q: self.q.clone(), terms: self.terms.iter().map(|(s, c)| (s.clone(), -c.clone())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.q.clone());
        for (s, x) in &self.terms {
            out.add_term(s.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_torus(o)?;
        let mut out = Self::zero(self.q.clone());
        for (s, x) in &self.terms {
            for (t, y) in &o.terms {
                let c = self.q.c(s, t);
                out.add_term(lattice_add(s, t), (x * y).signed(c));
            }
        }
        Ok(out)
    }

    /// Conjugate-linear anti-automorphism fixing every `t_i`:
    /// `bar(a t^sigma) = conj(a) kappa_sigma t^sigma`.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(self.q.clone());
        for (s, x) in &self.terms {
            out.add_term(s.clone(), x.conj().signed(self.q.kappa(s)));
        }
        out
    }

    /// Real part of the coefficient of `t^0`.
    pub fn epsilon(&self) -> Rational {
        let zero = vec![0i64; self.q.nu()];
        self.terms.get(zero.as_slice()).map(|c| c.re.clone()).unwrap_or_else(Rational::zero)
    }
}

pub fn torus_mul(a: &TorusElement, b: &TorusElement) -> Result<TorusElement> {
    a.mul(b)
}

pub fn torus_bar(a: &TorusElement) -> TorusElement {
    a.bar()
}

/// `epsilon(a b)`
pub fn torus_form(a: &TorusElement, b: &TorusElement) -> Result<Rational> {
    Ok(a.mul(b)?.epsilon())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> SignMatrix {
        SignMatrix::from_upper(2, &[-1]).unwrap()
    }

    #[test]
    fn kappa_values() {
        let q = q2();
        assert_eq!(kappa(&[1, 1], &q).unwrap(), -1);
        assert_eq!(kappa(&[2, 1], &q).unwrap(), 1);
        assert_eq!(kappa(&[-1, 3], &q).unwrap(), -1);
        assert!(kappa(&[1], &q).is_err());
    }

    #[test]
    fn structure_constants() {
        let q = q2();
        assert_eq!(structure_constant(&[1, 0], &[0, 1], &q).unwrap(), 1);
        assert_eq!(structure_constant(&[0, 1], &[1, 0], &q).unwrap(), -1);
    }

    #[test]
    fn sign_matrix_validation() {
        assert!(SignMatrix::from_upper(2, &[5]).is_err());
        assert!(SignMatrix::from_upper(3, &[1, -1]).is_err());
        assert!(SignMatrix::new(2, vec![1, -1, 1, 1]).is_err());
        assert!(SignMatrix::new(2, vec![-1, 1, 1, 1]).is_err());
        let q = SignMatrix::from_upper(3, &[-1, 1, -1]).unwrap();
        assert_eq!(q.get(2, 1), -1);
        assert_eq!(q.upper(), vec![-1, 1, -1]);
    }

    #[test]
    fn bar_of_monomial() {
        let q = Arc::new(q2());
        let t = TorusElement::monomial(q, &[1, 1], GaussianRational::from_ints(2, 3)).unwrap();
        let b = t.bar();
        assert_eq!(b.coeff(&[1, 1]), GaussianRational::from_ints(-2, 3));
    }

    #[test]
    fn mismatched_tori() {
        let a = TorusElement::one(Arc::new(q2()));
        let b = TorusElement::one(Arc::new(SignMatrix::trivial(2)));
        assert!(matches!(torus_mul(&a, &b), Err(Error::MismatchedTorus)));
    }

    #[test]
    fn form_picks_constant_real_part() {
        let q = Arc::new(q2());
        let a = TorusElement::monomial(q.clone(), &[1, 1], GaussianRational::from_ints(1, 0)).unwrap();
        let b = TorusElement::monomial(q, &[-1, -1], GaussianRational::from_ints(1, 0)).unwrap();
        assert_eq!(torus_form(&a, &b).unwrap(), Rational::from_integer((-1).into()));
    }
}
