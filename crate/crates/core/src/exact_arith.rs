//! Exact scalars: rationals, Gaussian rationals and multiquadratic fields.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number.
pub type Rational = num_rational::BigRational;

/// Build `n/d` as a [`Rational`]. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Render as `p/q` with `q >= 1`, the format used by exports and reports.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Returns the rational as an `i64` if it is an integer that fits.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.numer().clone()).ok()
}

/// `a + bi` with `a, b` rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(int(re), int(im))
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    /// Multiply by a sign `±1`.
    pub fn signed(&self, s: i8) -> Self {
        if s < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

pub fn gq_mul(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    a * b
}

pub fn gq_conj(a: &GaussianRational) -> GaussianRational {
    a.conj()
}

/// Split `n > 0` as `g^2 * s` with `s` squarefree. Returns `(g, s)`.
pub fn squarefree_split(n: u64) -> (u64, u64) {
    let mut g = 1u64;
    let mut s = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            g *= p;
        }
        if e % 2 == 1 {
            s *= p;
        }
        p += 1;
    }
    (g, s * m)
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && squarefree_split(n).0 == 1
}

/// `sqrt(a) * sqrt(b) = g * sqrt(s)` for squarefree `a, b`.
pub fn radical_product(a: u64, b: u64) -> (u64, u64) {
    let g = a.gcd(&b);
    // a*b = g^2 * (a/g)(b/g), and (a/g)(b/g) is squarefree when a, b are
    (g, (a / g) * (b / g))
}

/// Element of `Q(sqrt(p_1), ..., sqrt(p_k))` in the basis of square roots of
/// squarefree integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SqrtFieldElement {
    coeffs: BTreeMap<u64, Rational>,
}

impl SqrtFieldElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_terms([(1, r)]).expect("1 is squarefree")
    }

    /// `sqrt(a)` for a squarefree `a`.
    pub fn sqrt(a: u64) -> Result<Self> {
        Self::from_terms([(a, Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, Rational)>) -> Result<Self> {
        let mut out = Self::zero();
        for (a, c) in terms {
            if !is_squarefree(a) {
                return Err(Error::InvalidArgument(format!("{a} is not squarefree")));
            }
            out.add_term(a, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, a: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(a).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&a);
        }
    }

    pub fn coeff(&self, a: u64) -> Rational {
        self.coeffs.get(&a).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &o.coeffs {
            out.add_term(*a, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(a, c)| (*a, -c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &o.coeffs {
                let (g, s) = radical_product(*a, *b);
                out.add_term(s, x * y * int(g as i64));
            }
        }
        out
    }

    /// Rational part of `self * o`; this is the form `f(sqrt a, sqrt b) = delta_ab a`.
    pub fn form(&self, o: &Self) -> Rational {
        self.coeffs
            .iter()
            .filter_map(|(a, x)| o.coeffs.get(a).map(|y| x * y * int(*a as i64)))
            .fold(Rational::zero(), |s, v| s + v)
    }

    /// Multiplicative inverse, by solving `self * y = 1` inside the field
    /// generated by the primes dividing the support.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut primes: Vec<u64> = Vec::new();
        for a in self.coeffs.keys() {
            let mut m = *a;
            let mut p = 2;
            while m > 1 {
                if m % p == 0 {
                    if !primes.contains(&p) {
                        primes.push(p);
                    }
                    m /= p;
                } else {
                    p += 1;
                }
            }
        }
        let basis = radical_basis(&primes);
        let n = basis.len();
        let mut m = crate::linalg::Matrix::zeros(n, n);
        for (j, b) in basis.iter().enumerate() {
            let prod = self.mul(&Self::sqrt(*b)?);
            for (i, a) in basis.iter().enumerate() {
                m.set(i, j, prod.coeff(*a));
            }
        }
        let mut rhs = vec![Rational::zero(); n];
        rhs[0] = Rational::one();
        let y = m.solve(&rhs).ok_or(Error::DivisionByZero)?;
        Self::from_terms(basis.into_iter().zip(y))
    }
}

impl fmt::Display for SqrtFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(a, c)| if *a == 1 { format!("{c}") } else { format!("{c}*sqrt({a})") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn sf_mul(a: &SqrtFieldElement, b: &SqrtFieldElement) -> SqrtFieldElement {
    a.mul(b)
}

/// Squarefree products of subsets of `primes`, sorted, starting with 1.
pub fn radical_basis(primes: &[u64]) -> Vec<u64> {
    let mut out = vec![1u64];
    for p in primes {
        let extra: Vec<u64> = out.iter().map(|a| a * p).collect();
        out.extend(extra);
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_product() {
        let a = GaussianRational::from_ints(1, 2);
        let b = GaussianRational::from_ints(3, -1);
        assert_eq!(gq_mul(&a, &b), GaussianRational::from_ints(5, 5));
        assert_eq!(gq_conj(&a), GaussianRational::from_ints(1, -2));
    }

    #[test]
    fn radicals_multiply() {
        let s2 = SqrtFieldElement::sqrt(2).unwrap();
        let s3 = SqrtFieldElement::sqrt(3).unwrap();
        assert_eq!(sf_mul(&s2, &s3), SqrtFieldElement::sqrt(6).unwrap());
        let s6 = SqrtFieldElement::sqrt(6).unwrap();
        let s10 = SqrtFieldElement::sqrt(10).unwrap();
        let expect = SqrtFieldElement::from_terms([(15, int(2))]).unwrap();
        assert_eq!(sf_mul(&s6, &s10), expect);
        assert_eq!(s2.mul(&s2), SqrtFieldElement::from_rational(int(2)));
    }

    #[test]
    fn non_squarefree_rejected() {
        assert!(SqrtFieldElement::sqrt(12).is_err());
    }

    #[test]
    fn split_and_basis() {
        assert_eq!(squarefree_split(72), (6, 2));
        assert_eq!(radical_basis(&[2, 3]), vec![1, 2, 3, 6]);
    }

    #[test]
    fn inverse_in_biquadratic_field() {
        let x = SqrtFieldElement::from_terms([(1, int(1)), (2, int(1)), (6, rat(1, 2))]).unwrap();
        let y = x.inverse().unwrap();
        assert_eq!(x.mul(&y), SqrtFieldElement::from_rational(int(1)));
    }

    #[test]
    fn rational_format_round_trip() {
        let r = rat(-6, 4);
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), r);
        assert_eq!(format_rational(&int(2)), "2/1");
        assert!(matches!(parse_rational("1/0"), Err(Error::DivisionByZero)));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(GaussianRational::zero().inverse().is_err());
        assert!(SqrtFieldElement::zero().inverse().is_err());
    }
}
