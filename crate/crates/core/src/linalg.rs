//! Sparse vectors over a symbolic basis and dense exact linear algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::exact_arith::{format_rational, Rational};

/// Point of the grading lattice `Z^nu`.
pub type LatticeVec = SmallVec<[i64; 4]>;

pub fn lattice(v: &[i64]) -> LatticeVec {
    LatticeVec::from_slice(v)
}

pub fn lattice_add(a: &[i64], b: &[i64]) -> LatticeVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn lattice_sub(a: &[i64], b: &[i64]) -> LatticeVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn lattice_neg(a: &[i64]) -> LatticeVec {
    a.iter().map(|x| -x).collect()
}

pub fn sup_norm(a: &[i64]) -> i64 {
    a.iter().map(|x| x.abs()).max().unwrap_or(0)
}

/// All points of `Z^nu` with sup-norm at most `w`, in lexicographic order.
pub fn lattice_box(nu: usize, w: i64) -> Vec<LatticeVec> {
    let mut out = vec![LatticeVec::new()];
    for _ in 0..nu {
        let mut next = Vec::with_capacity(out.len() * (2 * w as usize + 1));
        for p in &out {
            for x in -w..=w {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Scalar monomial attached to a matrix unit: `t^degree`, times `i` when
/// `imag`, times `sqrt(radical)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatKey {
    pub degree: LatticeVec,
    pub row: u16,
    pub col: u16,
    pub imag: bool,
    pub radical: u64,
}

impl MatKey {
    pub fn new(row: usize, col: usize, degree: &[i64], imag: bool) -> Self {
        Self { degree: lattice(degree), row: row as u16, col: col as u16, imag, radical: 1 }
    }
}

/// A basis vector of one of the algebras handled here.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisKey {
    Mat(MatKey),
    /// Central element `c_i` of an affinization.
    Central(u16),
    /// Degree derivation `d_i` of an affinization.
    Derivation(u16),
    /// Basis element of the complement in an extension.
    Complement(u16),
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKey::Mat(k) => {
                write!(f, "{}e[{},{}]", if k.imag { "i*" } else { "" }, k.row + 1, k.col + 1)?;
                if !k.degree.is_empty() {
                    let d: Vec<String> = k.degree.iter().map(|x| x.to_string()).collect();
                    write!(f, "t^({})", d.join(","))?;
                }
                if k.radical != 1 {
                    write!(f, "*sqrt({})", k.radical)?;
                }
                Ok(())
            }
            BasisKey::Central(i) => write!(f, "c{}", i + 1),
            BasisKey::Derivation(i) => write!(f, "d{}", i + 1),
            BasisKey::Complement(i) => write!(f, "x{}", i + 1),
        }
    }
}

/// Finite rational combination of basis keys.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct Vector(BTreeMap<BasisKey, Rational>);

impl Vector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(key: BasisKey) -> Self {
        Self::single(key, Rational::one())
    }

    pub fn single(key: BasisKey, c: Rational) -> Self {
        let mut v = Self::new();
        v.add_term(key, c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BasisKey, Rational)>) -> Self {
        let mut v = Self::new();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, key: BasisKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn get(&self, key: &BasisKey) -> Rational {
        self.0.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisKey, &Rational)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &BasisKey> {
        self.0.keys()
    }

    pub fn first(&self) -> Option<(&BasisKey, &Rational)> {
        self.0.iter().next()
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Rational, other: &Vector) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.0 {
            self.add_term(k.clone(), c * x);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Vector {
        if c.is_zero() {
            return Vector::new();
        }
        Vector(self.0.iter().map(|(k, x)| (k.clone(), x * c)).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|(k, x)| (k.clone(), -x)).collect())
    }

    pub fn add(&self, o: &Vector) -> Vector {
        let mut v = self.clone();
        v.axpy(&Rational::one(), o);
        v
    }

    pub fn sub(&self, o: &Vector) -> Vector {
        let mut v = self.clone();
        v.axpy(&-Rational::one(), o);
        v
    }

    /// Keep only the terms whose key satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&BasisKey) -> bool) -> Vector {
        Vector(self.0.iter().filter(|(k, _)| keep(k)).map(|(k, x)| (k.clone(), x.clone())).collect())
    }

    pub fn linear_combination(coeffs: &[Rational], vs: &[Vector]) -> Vector {
        let mut out = Vector::new();
        for (c, v) in coeffs.iter().zip(vs) {
            out.axpy(c, v);
        }
        out
    }

    /// `[["key", "p/q"], ...]` for reports.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.0
                .iter()
                .map(|(k, c)| serde_json::json!([k.to_string(), format_rational(c)]))
                .collect(),
        )
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(k, c)| format!("({c}){k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Dense row-major matrix over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = out.get(i, j) + a * o.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Rational::zero(), |s, (a, b)| s + a * b))
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = -r.get(i, f).clone();
                }
                x
            })
            .collect()
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &piv;
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn leading_principal_minors(&self) -> Vec<Rational> {
        (1..=self.rows.min(self.cols))
            .map(|k| {
                let mut s = Matrix::zeros(k, k);
                for i in 0..k {
                    for j in 0..k {
                        s.set(i, j, self.get(i, j).clone());
                    }
                }
                s.determinant()
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric() && self.leading_principal_minors().iter().all(|m| m.is_positive())
    }

    /// Exact test by symmetric elimination.
    pub fn is_positive_semidefinite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut alive: Vec<usize> = (0..n).collect();
        loop {
            if alive.is_empty() {
                return true;
            }
            if alive.iter().any(|&k| m.get(k, k).is_negative()) {
                return false;
            }
            let Some(pos) = alive.iter().position(|&k| m.get(k, k).is_positive()) else {
                return alive.iter().all(|&i| alive.iter().all(|&j| m.get(i, j).is_zero()));
            };
            let k = alive.remove(pos);
            let piv = m.get(k, k).clone();
            for &i in &alive {
                let f = m.get(i, k) / &piv;
                if f.is_zero() {
                    continue;
                }
                for &j in &alive {
                    let v = m.get(i, j) - &f * m.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
    }
}

/// Incrementally maintained echelon basis of a subspace spanned by sparse vectors.
#[derive(Clone, Debug, Default)]
pub struct Span {
    echelon: Vec<(BasisKey, Vector)>,
    originals: Vec<Vector>,
}

impl Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<'a>(vs: impl IntoIterator<Item = &'a Vector>) -> Self {
        let mut s = Self::new();
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut r = v.clone();
        for (p, row) in &self.echelon {
            let c = r.get(p);
            if !c.is_zero() {
                r.axpy(&-c, row);
            }
        }
        r
    }

    /// Adds `v` and reports whether it enlarged the span.
    pub fn insert(&mut self, v: &Vector) -> bool {
        let r = self.reduce(v);
        let Some((p, c)) = r.first() else {
            return false;
        };
        let p = p.clone();
        let row = r.scaled(&c.recip());
        self.echelon.push((p, row));
        self.originals.push(v.clone());
        true
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_span(&self, o: &Span) -> bool {
        o.originals.iter().all(|v| self.contains(v))
    }

    pub fn equals(&self, o: &Span) -> bool {
        self.rank() == o.rank() && self.contains_span(o)
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    /// The independent vectors that were inserted, in insertion order.
    pub fn basis(&self) -> &[Vector] {
        &self.originals
    }

    pub fn into_basis(self) -> Vec<Vector> {
        self.originals
    }
}

/// Index the keys of a family of vectors so they can be put in a dense matrix.
pub fn key_index<'a>(vs: impl IntoIterator<Item = &'a Vector>) -> HashMap<BasisKey, usize> {
    let mut idx = HashMap::new();
    for v in vs {
        for k in v.keys() {
            let n = idx.len();
            idx.entry(k.clone()).or_insert(n);
        }
    }
    idx
}

/// Matrix whose columns are the coordinate vectors of `vs`.
pub fn column_matrix(vs: &[Vector], idx: &HashMap<BasisKey, usize>) -> Matrix {
    let mut m = Matrix::zeros(idx.len(), vs.len());
    for (j, v) in vs.iter().enumerate() {
        for (k, c) in v.iter() {
            m.set(idx[k], j, c.clone());
        }
    }
    m
}

/// Coefficients `c` with `sum c_i gens_i = rhs`, if any.
pub fn solve_combination(gens: &[Vector], rhs: &Vector) -> Option<Vec<Rational>> {
    let idx = key_index(gens.iter().chain(std::iter::once(rhs)));
    let m = column_matrix(gens, &idx);
    let mut b = vec![Rational::zero(); idx.len()];
    for (k, c) in rhs.iter() {
        b[idx[k]] = c.clone();
    }
    m.solve(&b)
}

/// Basis of the linear relations among `vs`: all `c` with `sum c_i vs_i = 0`.
pub fn relations(vs: &[Vector]) -> Vec<Vec<Rational>> {
    let idx = key_index(vs.iter());
    column_matrix(vs, &idx).nullspace()
}

pub fn rank_of(vs: &[Vector]) -> usize {
    Span::from_vectors(vs.iter()).rank()
}

/// Row Hermite basis of the Z-module generated by integer vectors.
pub fn hermite_basis(vectors: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let Some(n) = vectors.first().map(|v| v.len()) else {
        return Vec::new();
    };
    let mut rows: Vec<Vec<BigInt>> =
        vectors.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut basis = Vec::new();
    for c in 0..n {
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let m = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            let pivot = rows[m].clone();
            for &i in &nz {
                if i == m {
                    continue;
                }
                let q = rows[i][c].div_floor(&pivot[c]);
                for j in 0..n {
                    let v = &rows[i][j] - &q * &pivot[j];
                    rows[i][j] = v;
                }
            }
        }
        if let Some(p) = (0..rows.len()).find(|&i| !rows[i][c].is_zero()) {
            let mut r = rows.remove(p);
            if r[c].is_negative() {
                r.iter_mut().for_each(|x| *x = -x.clone());
            }
            basis.push(r);
        }
    }
    basis
}

/// Rank of the free abelian group generated by integer vectors.
pub fn lattice_rank(vectors: &[Vec<i64>]) -> usize {
    hermite_basis(vectors).len()
}

pub fn rationals(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()
}
