//! Finite root systems, reflections and root strings.
//!
//! Classical types live in epsilon coordinates, exceptional ones in simple
//! root coordinates. Forms are scaled so that short roots have norm 1.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{int, rat, to_i64, Rational};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl RootType {
    pub const ALL: [RootType; 8] =
        [RootType::A, RootType::B, RootType::C, RootType::D, RootType::E, RootType::F, RootType::G, RootType::BC];

    pub fn rank_is_valid(self, rank: usize) -> bool {
        match self {
            RootType::A | RootType::BC => rank >= 1,
            RootType::B | RootType::C => rank >= 2,
            RootType::D => rank >= 4,
            RootType::E => (6..=8).contains(&rank),
            RootType::F => rank == 4,
            RootType::G => rank == 2,
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootType::A => "A",
            RootType::B => "B",
            RootType::C => "C",
            RootType::D => "D",
            RootType::E => "E",
            RootType::F => "F",
            RootType::G => "G",
            RootType::BC => "BC",
        };
        f.write_str(s)
    }
}

impl FromStr for RootType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(RootType::A),
            "B" => Ok(RootType::B),
            "C" => Ok(RootType::C),
            "D" => Ok(RootType::D),
            "E" => Ok(RootType::E),
            "F" => Ok(RootType::F),
            "G" => Ok(RootType::G),
            "BC" => Ok(RootType::BC),
            _ => Err(Error::InvalidArgument(format!("unknown root type {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coordinates {
    Epsilon,
    SimpleRoots,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LengthClass {
    Short,
    Long,
    ExtraLong,
}

pub type Weight = Vec<i64>;

/// `(a, b)` for the Gram matrix `gram`.
pub fn pairing(a: &[i64], b: &[i64], gram: &Matrix) -> Rational {
    let mut s = Rational::zero();
    for i in 0..a.len() {
        if a[i] == 0 {
            continue;
        }
        for j in 0..b.len() {
            if b[j] != 0 && !gram.get(i, j).is_zero() {
                s += gram.get(i, j) * int(a[i] * b[j]);
            }
        }
    }
    s
}

/// `2 (beta, alpha) / (alpha, alpha)`
pub fn cartan_integer(beta: &[i64], alpha: &[i64], gram: &Matrix) -> Result<Rational> {
    let aa = pairing(alpha, alpha, gram);
    if aa.is_zero() {
        return Err(Error::IsotropicRoot);
    }
    Ok(int(2) * pairing(beta, alpha, gram) / aa)
}

/// `w_alpha(beta) = beta - 2 (beta, alpha)/(alpha, alpha) alpha`
pub fn reflect(alpha: &[i64], beta: &[i64], gram: &Matrix) -> Result<Vec<Rational>> {
    let c = cartan_integer(beta, alpha, gram)?;
    Ok(beta.iter().zip(alpha).map(|(b, a)| int(*b) - &c * int(*a)).collect())
}

/// Reflection when the Cartan integer is integral.
pub fn reflect_integral(alpha: &[i64], beta: &[i64], gram: &Matrix) -> Result<Option<Weight>> {
    let c = cartan_integer(beta, alpha, gram)?;
    Ok(to_i64(&c).map(|c| beta.iter().zip(alpha).map(|(b, a)| b - c * a).collect()))
}

/// The `alpha`-string through `beta`: returns `(d, u)` with
/// `beta + n alpha` a root exactly for `-d <= n <= u`. Checks the string is
/// unbroken within `bound` and that `d - u = 2 (beta, alpha)/(alpha, alpha)`.
pub fn root_string(
    beta: &[i64],
    alpha: &[i64],
    is_root: impl Fn(&[i64]) -> bool,
    pair: impl Fn(&[i64], &[i64]) -> Rational,
    bound: i64,
) -> Result<(i64, i64)> {
    let aa = pair(alpha, alpha);
    if aa.is_zero() {
        return Err(Error::IsotropicRoot);
    }
    let at = |n: i64| -> Vec<i64> { beta.iter().zip(alpha).map(|(b, a)| b + n * a).collect() };
    if !is_root(beta) {
        return Err(Error::NotARoot(format!("{beta:?}")));
    }
    let hits: Vec<i64> = (-bound..=bound).filter(|&n| is_root(&at(n))).collect();
    let d = -*hits.first().unwrap();
    let u = *hits.last().unwrap();
    if hits.len() as i64 != d + u + 1 {
        return Err(Error::AxiomViolation(format!(
            "broken {alpha:?}-string through {beta:?}: present at {hits:?}"
        )));
    }
    let c = int(2) * pair(beta, alpha) / aa;
    if int(d - u) != c {
        return Err(Error::AxiomViolation(format!(
            "{alpha:?}-string through {beta:?} has d - u = {} but Cartan integer {c}",
            d - u
        )));
    }
    Ok((d, u))
}

#[derive(Clone, Debug)]
pub struct FiniteRootSystem {
    pub root_type: RootType,
    pub rank: usize,
    pub coordinates: Coordinates,
    pub gram: Matrix,
    roots: BTreeSet<Weight>,
    simple: Vec<Weight>,
}

fn unit(n: usize, i: usize, c: i64) -> Weight {
    let mut v = vec![0; n];
    v[i] = c;
    v
}

fn eps_diff(n: usize, i: usize, j: usize) -> Weight {
    let mut v = vec![0; n];
    v[i] += 1;
    v[j] -= 1;
    v
}

fn scalar_gram(n: usize, c: Rational) -> Matrix {
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        g.set(i, i, c.clone());
    }
    g
}

/// Gram matrix on simple roots for exceptional types, short roots of norm 1.
fn exceptional_gram(t: RootType, rank: usize) -> Matrix {
    let mut g = Matrix::zeros(rank, rank);
    let edges: Vec<(usize, usize)> = match t {
        RootType::E => {
            let mut e = vec![(0, 2), (1, 3), (2, 3), (3, 4)];
            for i in 4..rank - 1 {
                e.push((i, i + 1));
            }
            e
        }
        RootType::F => vec![(0, 1), (1, 2), (2, 3)],
        RootType::G => vec![(0, 1)],
        _ => unreachable!(),
    };
    let norms: Vec<Rational> = match t {
        RootType::E => vec![int(1); rank],
        RootType::F => vec![int(2), int(2), int(1), int(1)],
        RootType::G => vec![int(1), int(3)],
        _ => unreachable!(),
    };
    for i in 0..rank {
        g.set(i, i, norms[i].clone());
    }
    for (i, j) in edges {
        // (a_i, a_j) = -max(norm)/2 on the edges
        let v = -std::cmp::max(norms[i].clone(), norms[j].clone()) / int(2);
        g.set(i, j, v.clone());
        g.set(j, i, v);
    }
    g
}

/// Closure of `generators` under all reflections, with negatives and zero.
fn reflection_closure(generators: &[Weight], gram: &Matrix) -> Result<BTreeSet<Weight>> {
    let mut set: BTreeSet<Weight> = BTreeSet::new();
    let mut queue: VecDeque<Weight> = VecDeque::new();
    for g in generators {
        for v in [g.clone(), g.iter().map(|x| -x).collect()] {
            if set.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    while let Some(b) = queue.pop_front() {
        let current: Vec<Weight> = set.iter().cloned().collect();
        for a in &current {
            for (x, y) in [(a, &b), (&b, a)] {
                let r = reflect_integral(x, y, gram)?
                    .ok_or_else(|| Error::AxiomViolation(format!("non-integral Cartan integer for {y:?}, {x:?}")))?;
                if set.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        if set.len() > 10_000 {
            return Err(Error::AxiomViolation("reflection closure is not finite".into()));
        }
    }
    set.insert(vec![0; generators.first().map_or(0, |g| g.len())]);
    Ok(set)
}

pub fn build_finite_root_system(t: RootType, rank: usize) -> Result<FiniteRootSystem> {
    if !t.rank_is_valid(rank) {
        return Err(Error::InvalidArgument(format!("rank {rank} is not valid for type {t}")));
    }
    let l = rank;
    let (coordinates, gram, simple, extra) = match t {
        RootType::A => {
            let n = l + 1;
            let simple = (0..l).map(|i| eps_diff(n, i, i + 1)).collect();
            (Coordinates::Epsilon, scalar_gram(n, rat(1, 2)), simple, vec![])
        }
        RootType::B | RootType::C | RootType::D | RootType::BC => {
            let mut simple: Vec<Weight> = (0..l - 1).map(|i| eps_diff(l, i, i + 1)).collect();
            let mut extra = vec![];
            let g = match t {
                RootType::B => {
                    simple.push(unit(l, l - 1, 1));
                    scalar_gram(l, int(1))
                }
                RootType::C => {
                    simple.push(unit(l, l - 1, 2));
                    scalar_gram(l, rat(1, 2))
                }
                RootType::D => {
                    let mut v = vec![0; l];
                    v[l - 2] = 1;
                    v[l - 1] = 1;
                    simple.push(v);
                    scalar_gram(l, rat(1, 2))
                }
                _ => {
                    simple.push(unit(l, l - 1, 1));
                    extra.push(unit(l, l - 1, 2));
                    scalar_gram(l, int(1))
                }
            };
            (Coordinates::Epsilon, g, simple, extra)
        }
        RootType::E | RootType::F | RootType::G => {
            let simple = (0..l).map(|i| unit(l, i, 1)).collect();
            (Coordinates::SimpleRoots, exceptional_gram(t, l), simple, vec![])
        }
    };
    let gens: Vec<Weight> = simple.iter().chain(&extra).cloned().collect();
    let roots = reflection_closure(&gens, &gram)?;
    Ok(FiniteRootSystem { root_type: t, rank, coordinates, gram, roots, simple })
}

impl FiniteRootSystem {
    /// All roots including zero.
    pub fn roots(&self) -> &BTreeSet<Weight> {
        &self.roots
    }

    pub fn nonzero_roots(&self) -> impl Iterator<Item = &Weight> {
        self.roots.iter().filter(|r| r.iter().any(|&x| x != 0))
    }

    pub fn contains(&self, r: &[i64]) -> bool {
        self.roots.contains(r)
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple
    }

    pub fn norm(&self, r: &[i64]) -> Rational {
        pairing(r, r, &self.gram)
    }

    pub fn pairing(&self, a: &[i64], b: &[i64]) -> Rational {
        pairing(a, b, &self.gram)
    }

    pub fn reflect(&self, alpha: &[i64], beta: &[i64]) -> Result<Vec<Rational>> {
        reflect(alpha, beta, &self.gram)
    }

    pub fn root_string(&self, beta: &[i64], alpha: &[i64]) -> Result<(i64, i64)> {
        root_string(beta, alpha, |v| self.contains(v), |a, b| pairing(a, b, &self.gram), 8)
    }

    pub fn length_class(&self, r: &[i64]) -> Option<LengthClass> {
        length_class(r, &self.roots, &self.gram)
    }

    pub fn is_reduced(&self) -> bool {
        is_reduced(&self.roots)
    }

    /// Convention `c_ij = alpha_j(h_i) = 2 (alpha_j, alpha_i)/(alpha_i, alpha_i)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        cartan_of(&self.simple, &self.gram)
    }
}

pub fn cartan_matrix(t: RootType, rank: usize) -> Result<Vec<Vec<i64>>> {
    Ok(build_finite_root_system(t, rank)?.cartan_matrix())
}

fn cartan_of(simple: &[Weight], gram: &Matrix) -> Vec<Vec<i64>> {
    simple
        .iter()
        .map(|ai| {
            simple
                .iter()
                .map(|aj| to_i64(&cartan_integer(aj, ai, gram).expect("simple roots are anisotropic")).unwrap_or(i64::MIN))
                .collect()
        })
        .collect()
}

fn is_reduced(roots: &BTreeSet<Weight>) -> bool {
    roots.iter().filter(|r| r.iter().any(|&x| x != 0)).all(|r| {
        let d: Weight = r.iter().map(|x| 2 * x).collect();
        !roots.contains(&d)
    })
}

/// Short, long or extra-long (twice a root) relative to the nonzero roots in `roots`.
pub fn length_class(r: &[i64], roots: &BTreeSet<Weight>, gram: &Matrix) -> Option<LengthClass> {
    if r.iter().all(|&x| x == 0) || !roots.contains(r) {
        return None;
    }
    let min = roots
        .iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .map(|v| pairing(v, v, gram))
        .min()?;
    let half_is_root = r.iter().all(|x| x % 2 == 0) && roots.contains(&r.iter().map(|x| x / 2).collect::<Vec<_>>());
    if half_is_root {
        Some(LengthClass::ExtraLong)
    } else if pairing(r, r, gram) == min {
        Some(LengthClass::Short)
    } else {
        Some(LengthClass::Long)
    }
}

/// Checks that `roots` (with zero allowed) is a finite root system for the
/// form `gram`, and returns its type and rank when irreducible.
pub fn identify_type(roots: &BTreeSet<Weight>, gram: &Matrix) -> Result<(RootType, usize)> {
    let nonzero: Vec<&Weight> = roots.iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
    if nonzero.is_empty() {
        return Err(Error::AxiomViolation("no nonzero roots".into()));
    }
    for a in &nonzero {
        if pairing(a, a, gram) <= Rational::zero() {
            return Err(Error::AxiomViolation(format!("root {a:?} is not anisotropic")));
        }
        for b in &nonzero {
            let r = reflect_integral(a, b, gram)?
                .ok_or_else(|| Error::AxiomViolation(format!("Cartan integer of {b:?}, {a:?} is not integral")))?;
            if !roots.contains(&r) {
                return Err(Error::AxiomViolation(format!("reflection of {b:?} in {a:?} is missing")));
            }
        }
    }
    // generic functional, nonzero on every nonzero root
    let phi = |r: &Weight| -> i128 {
        let mut s = 0i128;
        let mut p = 1i128;
        for &x in r {
            s += x as i128 * p;
            p *= 31;
        }
        s
    };
    let positive: Vec<&Weight> = nonzero.iter().copied().filter(|r| phi(r) > 0).collect();
    let pos_set: BTreeSet<&Weight> = positive.iter().copied().collect();
    let simple: Vec<Weight> = positive
        .iter()
        .filter(|r| {
            !positive.iter().any(|a| {
                let d: Weight = r.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                pos_set.contains(&d)
            })
        })
        .map(|r| (*r).clone())
        .collect();
    let rank = simple.len();
    let cartan = cartan_of(&simple, gram);
    // connectivity of the Dynkin diagram
    let mut seen = vec![false; rank];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..rank {
            if !seen[j] && cartan[i][j] != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::AxiomViolation("root system is reducible".into()));
    }
    let reduced = is_reduced(roots);
    for t in RootType::ALL {
        if (t == RootType::BC) == reduced || !t.rank_is_valid(rank) {
            continue;
        }
        let model = build_finite_root_system(t, rank)?;
        if model.nonzero_roots().count() != nonzero.len() {
            continue;
        }
        if t == RootType::BC || cartan_equivalent(&cartan, &model.cartan_matrix()) {
            return Ok((t, rank));
        }
    }
    Err(Error::AxiomViolation(format!("unrecognised root system of rank {rank}")))
}

/// Equality of Cartan matrices up to simultaneous permutation.
fn cartan_equivalent(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    fn go(a: &[Vec<i64>], b: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = perm.len();
        if k == a.len() {
            return true;
        }
        for c in 0..a.len() {
            if used[c] {
                continue;
            }
            if a[k][k] != b[c][c] || (0..k).any(|i| a[k][i] != b[c][perm[i]] || a[i][k] != b[perm[i]][c]) {
                continue;
            }
            used[c] = true;
            perm.push(c);
            if go(a, b, perm, used) {
                return true;
            }
            perm.pop();
            used[c] = false;
        }
        false
    }
    go(a, b, &mut Vec::new(), &mut vec![false; n])
}

/// Whether `roots` is a root system isomorphic to the one of type `t` and `rank`.
pub fn is_isomorphic_to(roots: &BTreeSet<Weight>, gram: &Matrix, t: RootType, rank: usize) -> Result<bool> {
    let found = identify_type(roots, gram)?;
    if found == (t, rank) {
        return Ok(true);
    }
    let model = build_finite_root_system(t, rank)?;
    let same_count = model.nonzero_roots().count() == roots.iter().filter(|r| r.iter().any(|&x| x != 0)).count();
    let other = build_finite_root_system(found.0, found.1)?;
    Ok(same_count && found.1 == rank && cartan_equivalent(&model.cartan_matrix(), &other.cartan_matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let expect = [
            (RootType::A, 3, 12),
            (RootType::B, 3, 18),
            (RootType::C, 2, 8),
            (RootType::C, 3, 18),
            (RootType::D, 4, 24),
            (RootType::E, 6, 72),
            (RootType::E, 7, 126),
            (RootType::E, 8, 240),
            (RootType::F, 4, 48),
            (RootType::G, 2, 12),
            (RootType::BC, 2, 12),
        ];
        for (t, r, n) in expect {
            let s = build_finite_root_system(t, r).unwrap();
            assert_eq!(s.nonzero_roots().count(), n, "{t}{r}");
            assert_eq!(s.roots().len(), n + 1);
        }
    }

    #[test]
    fn c2_reflection_and_strings() {
        let c2 = build_finite_root_system(RootType::C, 2).unwrap();
        assert_eq!(c2.roots().len(), 9);
        let w = c2.reflect(&[1, -1], &[2, 0]).unwrap();
        assert_eq!(w, vec![int(0), int(2)]);
        assert_eq!(c2.root_string(&[1, -1], &[1, -1]).unwrap(), (2, 0));
        assert_eq!(c2.root_string(&[1, -1], &[0, 2]).unwrap(), (0, 1));
        assert!(matches!(c2.reflect(&[0, 0], &[1, -1]), Err(Error::IsotropicRoot)));
    }

    #[test]
    fn normalisation() {
        let c2 = build_finite_root_system(RootType::C, 2).unwrap();
        assert_eq!(c2.norm(&[1, -1]), int(1));
        assert_eq!(c2.norm(&[2, 0]), int(2));
        let g2 = build_finite_root_system(RootType::G, 2).unwrap();
        let norms: BTreeSet<Rational> = g2.nonzero_roots().map(|r| g2.norm(r)).collect();
        assert_eq!(norms, [int(1), int(3)].into_iter().collect());
    }

    #[test]
    fn cartan_conventions() {
        assert_eq!(cartan_matrix(RootType::C, 2).unwrap(), vec![vec![2, -2], vec![-1, 2]]);
        assert_eq!(cartan_matrix(RootType::B, 2).unwrap(), vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(cartan_matrix(RootType::G, 2).unwrap(), vec![vec![2, -3], vec![-1, 2]]);
    }

    #[test]
    fn length_classes() {
        let bc = build_finite_root_system(RootType::BC, 2).unwrap();
        assert!(!bc.is_reduced());
        assert_eq!(bc.length_class(&[1, 0]), Some(LengthClass::Short));
        assert_eq!(bc.length_class(&[1, 1]), Some(LengthClass::Long));
        assert_eq!(bc.length_class(&[2, 0]), Some(LengthClass::ExtraLong));
        let c2 = build_finite_root_system(RootType::C, 2).unwrap();
        assert_eq!(c2.length_class(&[2, 0]), Some(LengthClass::Long));
    }

    #[test]
    fn identifies_types() {
        for (t, r) in [
            (RootType::A, 2),
            (RootType::B, 3),
            (RootType::C, 3),
            (RootType::D, 4),
            (RootType::G, 2),
            (RootType::F, 4),
            (RootType::BC, 2),
            (RootType::E, 6),
        ] {
            let s = build_finite_root_system(t, r).unwrap();
            assert_eq!(identify_type(s.roots(), &s.gram).unwrap(), (t, r));
        }
    }

    #[test]
    fn invalid_ranks() {
        assert!(build_finite_root_system(RootType::E, 5).is_err());
        assert!(build_finite_root_system(RootType::G, 3).is_err());
        assert!(build_finite_root_system(RootType::C, 1).is_err());
    }

    #[test]
    fn reducible_rejected() {
        let gram = scalar_gram(2, int(1));
        let roots: BTreeSet<Weight> = [vec![0, 0], vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]].into_iter().collect();
        assert!(identify_type(&roots, &gram).is_err());
    }
}
