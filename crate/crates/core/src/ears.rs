//! Extended affine root system axioms, semilattices, and the support sets
//! `S`, `L`, `E` of a windowed root system.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::axioms::{AxiomResult, Verdict};
use crate::decomp::{Root, RootSystemWindow};
use crate::exact_arith::{int, Rational};
use crate::finroot::{is_isomorphic_to, length_class, root_string, LengthClass, RootType, Weight};
use crate::linalg::{lattice_rank, lattice_box, rank_of, rationals, sup_norm, BasisKey, LatticeVec, Matrix, Vector};

/// A finite set of roots with a form that only sees the finite coordinates;
/// the lattice coordinates span the radical.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub weight_len: usize,
    pub nu: usize,
    pub roots: BTreeSet<Root>,
    pub gram: Matrix,
    /// Sup-norm bound on lattice coordinates of the enumerated roots, if truncated.
    pub window: Option<i64>,
    /// Dimension of the space the roots are supposed to span.
    pub ambient_rank: usize,
    pub expected_type: Option<(RootType, usize)>,
}

impl RootSet {
    /// A finite set with no lattice part.
    pub fn finite(roots: impl IntoIterator<Item = Vec<i64>>, gram: Matrix) -> Self {
        let weight_len = gram.rows();
        Self {
            weight_len,
            nu: 0,
            roots: roots.into_iter().map(|r| Root::new(r, &[])).collect(),
            gram,
            window: None,
            ambient_rank: weight_len,
            expected_type: None,
        }
    }

    pub fn from_window(w: &RootSystemWindow) -> Self {
        Self {
            weight_len: w.weight_len,
            nu: w.nu,
            roots: w.roots().cloned().collect(),
            gram: w.weight_gram(),
            window: Some(w.window),
            ambient_rank: w.root_type.1 + w.nu,
            expected_type: Some(w.root_type),
        }
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.contains(r)
    }

    pub fn pairing(&self, a: &Root, b: &Root) -> Rational {
        crate::finroot::pairing(&a.finite, &b.finite, &self.gram)
    }

    pub fn norm(&self, r: &Root) -> Rational {
        self.pairing(r, r)
    }

    pub fn is_isotropic(&self, r: &Root) -> bool {
        self.norm(r).is_zero()
    }

    /// Whether a lattice degree is enumerated.
    pub fn in_window(&self, lat: &[i64]) -> bool {
        self.window.map_or(true, |w| sup_norm(lat) <= w)
    }

    pub fn non_isotropic(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| !self.is_isotropic(r))
    }

    pub fn isotropic(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| self.is_isotropic(r))
    }

    /// Nonzero finite parts of nonisotropic roots, plus zero.
    pub fn finite_image(&self) -> BTreeSet<Weight> {
        let mut out: BTreeSet<Weight> = self.non_isotropic().map(|r| r.finite.clone()).collect();
        out.insert(vec![0; self.weight_len]);
        out
    }

    fn zero(&self) -> Root {
        Root::new(vec![0; self.weight_len], &vec![0; self.nu])
    }
}

/// Members of a candidate semilattice inside the box of radius `window`.
#[derive(Clone, Debug)]
pub struct SemilatticeData {
    pub nu: usize,
    pub members: BTreeSet<LatticeVec>,
    pub window: i64,
}

impl SemilatticeData {
    pub fn new(nu: usize, members: impl IntoIterator<Item = Vec<i64>>, window: i64) -> Self {
        Self { nu, members: members.into_iter().map(|m| LatticeVec::from_vec(m)).collect(), window }
    }

    /// All lattice points of the box.
    pub fn full(nu: usize, window: i64) -> Self {
        Self { nu, members: lattice_box(nu, window).into_iter().collect(), window }
    }

    /// Union of the cosets `c + 2 Z^nu`, cut to the box.
    pub fn from_cosets(nu: usize, cosets: &[Vec<i64>], window: i64) -> Self {
        let members = lattice_box(nu, window)
            .into_iter()
            .filter(|p| cosets.iter().any(|c| p.iter().zip(c).all(|(a, b)| (a - b).rem_euclid(2) == 0)))
            .collect();
        Self { nu, members, window }
    }
}

/// `0 in S`, `S + 2S` inside `S` where visible, `S = -S`, and `S` spans.
pub fn check_semilattice(s: &SemilatticeData) -> Verdict {
    let zero = LatticeVec::from_vec(vec![0; s.nu]);
    if !s.members.contains(&zero) {
        return Verdict::fail("0 is not a member");
    }
    for a in s.members.iter().rev() {
        for b in s.members.iter().rev() {
            let c: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + 2 * y).collect();
            if sup_norm(&c) <= s.window && !s.members.contains(c.as_slice()) {
                return Verdict::fail(format!("{:?} + 2*{:?} = {c:?} is not a member", a.as_slice(), b.as_slice()));
            }
        }
    }
    for a in &s.members {
        let n: Vec<i64> = a.iter().map(|x| -x).collect();
        if !s.members.contains(n.as_slice()) {
            return Verdict::fail(format!("{:?} is a member but its negative is not", a.as_slice()));
        }
    }
    let vs: Vec<Vec<i64>> = s.members.iter().map(|m| m.to_vec()).collect();
    let rank = lattice_rank(&vs);
    if rank != s.nu {
        return Verdict::fail(format!("members span a lattice of rank {rank} < {}", s.nu));
    }
    Verdict::WindowVerified { window: s.window, truncated: "closure under s + 2t".into() }
}

/// `S`, `L`, `E` and the per-root sets `S_a = {d : a + d in R}`, over window degrees.
#[derive(Clone, Debug, Serialize)]
pub struct SupportSets {
    pub short: Vec<Vec<i64>>,
    pub long: Vec<Vec<i64>>,
    /// Absent when there are no extra-long roots.
    pub extra_long: Option<Vec<Vec<i64>>>,
    pub per_root: BTreeMap<String, Vec<Vec<i64>>>,
    pub isotropic: Vec<Vec<i64>>,
    pub partition: bool,
    pub containment: bool,
    pub span_identity: bool,
    pub window: i64,
}

fn to_vecs(s: &BTreeSet<LatticeVec>) -> Vec<Vec<i64>> {
    s.iter().map(|v| v.to_vec()).collect()
}

/// Lattice parts `d` with `a + d` a root for every finite root `a` of the given class.
pub fn support_sets(set: &RootSet) -> SupportSets {
    let image = set.finite_image();
    let degrees: Vec<LatticeVec> = match set.window {
        Some(w) => lattice_box(set.nu, w),
        None => {
            let mut d: BTreeSet<LatticeVec> = set.roots.iter().map(|r| r.lattice.clone()).collect();
            d.insert(LatticeVec::from_vec(vec![0; set.nu]));
            d.into_iter().collect()
        }
    };
    let per: BTreeMap<Weight, BTreeSet<LatticeVec>> = image
        .iter()
        .map(|a| {
            let s = degrees.iter().filter(|d| set.contains(&Root::new(a.clone(), d))).cloned().collect();
            (a.clone(), s)
        })
        .collect();
    let zero_w = vec![0; set.weight_len];
    let class_set = |class: LengthClass| -> Option<BTreeSet<LatticeVec>> {
        let members: Vec<&Weight> = image.iter().filter(|a| length_class(a, &image, &set.gram) == Some(class)).collect();
        if members.is_empty() {
            return None;
        }
        Some(degrees.iter().filter(|d| members.iter().all(|a| per[*a].contains(*d))).cloned().collect())
    };
    let short = class_set(LengthClass::Short).unwrap_or_default();
    let long = class_set(LengthClass::Long).unwrap_or_else(|| short.clone());
    let extra_long = class_set(LengthClass::ExtraLong);

    // every root is a + d for exactly one finite image a
    let partition = set.roots.iter().all(|r| {
        let a = if set.is_isotropic(r) { zero_w.clone() } else { r.finite.clone() };
        image.contains(&a) && per[&a].contains(&r.lattice)
    }) && set.roots.iter().filter(|r| set.is_isotropic(r)).all(|r| r.finite == zero_w);
    let r0 = &per[&zero_w];
    let containment = per.iter().filter(|(a, _)| **a != zero_w).all(|(_, s)| s.is_subset(r0));
    let r0_vecs = to_vecs(r0);
    let all_lat: Vec<Vec<i64>> = set.roots.iter().map(|r| r.lattice.to_vec()).collect();
    let span_identity = rank_of(&as_vectors(&r0_vecs)) == rank_of(&as_vectors(&all_lat));

    SupportSets {
        short: to_vecs(&short),
        long: to_vecs(&long),
        extra_long: extra_long.as_ref().map(to_vecs),
        per_root: per.iter().filter(|(a, _)| **a != zero_w).map(|(a, s)| (format!("{a:?}"), to_vecs(s))).collect(),
        isotropic: r0_vecs,
        partition,
        containment,
        span_identity,
        window: set.window.unwrap_or(0),
    }
}

fn as_vectors(vs: &[Vec<i64>]) -> Vec<Vector> {
    vs.iter()
        .map(|v| Vector::from_terms(rationals(v).into_iter().enumerate().map(|(i, c)| (BasisKey::Central(i as u16), c))))
        .collect()
}

/// Per-axiom verdicts for one root set.
#[derive(Clone, Debug, Serialize)]
pub struct EarsReport {
    pub results: Vec<AxiomResult>,
    pub window: Option<i64>,
    pub reduced: bool,
}

impl EarsReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.verdict.is_ok())
    }

    pub fn get(&self, axiom: &str) -> Option<&Verdict> {
        self.results.iter().find(|r| r.axiom == axiom).map(|r| &r.verdict)
    }
}

/// Root strings `beta + n alpha`, `n` in `-bound..=bound`, whose candidate
/// members (finite part in the finite image) all have lattice part inside the window.
pub fn interior_strings(set: &RootSet, bound: i64) -> Vec<(Root, Root, Result<(i64, i64), String>)> {
    let mut out = Vec::new();
    let image = set.finite_image();
    for alpha in set.non_isotropic() {
        for beta in &set.roots {
            let inside = (-bound..=bound).all(|n| {
                let fin: Vec<i64> = beta.finite.iter().zip(&alpha.finite).map(|(b, a)| b + n * a).collect();
                if !image.contains(&fin) {
                    return true;
                }
                let lat: Vec<i64> = beta.lattice.iter().zip(&alpha.lattice).map(|(b, a)| b + n * a).collect();
                set.in_window(&lat)
            });
            if !inside {
                continue;
            }
            let wl = set.weight_len;
            let is_root = |c: &[i64]| set.contains(&Root::from_coords(c, wl));
            let pair = |a: &[i64], b: &[i64]| set.pairing(&Root::from_coords(a, wl), &Root::from_coords(b, wl));
            let res = root_string(&beta.coords(), &alpha.coords(), is_root, pair, bound).map_err(|e| e.to_string());
            out.push((beta.clone(), alpha.clone(), res));
        }
    }
    out
}

fn components(nodes: &[Weight], gram: &Matrix) -> Vec<Vec<Weight>> {
    let mut seen = vec![false; nodes.len()];
    let mut comps = Vec::new();
    for s in 0..nodes.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut comp = Vec::new();
        while let Some(i) = stack.pop() {
            comp.push(nodes[i].clone());
            for j in 0..nodes.len() {
                if !seen[j] && !crate::finroot::pairing(&nodes[i], &nodes[j], gram).is_zero() {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

/// Checks R1 through R6, plus the finite image and the lattice rank of `R^0`.
pub fn check_ears_axioms(set: &RootSet) -> EarsReport {
    let mut results = Vec::new();
    let window_verdict = |what: &str| match set.window {
        Some(w) => Verdict::WindowVerified { window: w, truncated: what.into() },
        None => Verdict::Pass,
    };

    let r1 = set.roots.iter().find(|r| !set.contains(&r.neg()));
    results.push(AxiomResult::new(
        "R1",
        match r1 {
            Some(r) => Verdict::fail(format!("{r} is a root but {} is not", r.neg())),
            None => Verdict::Pass,
        },
    ));

    let coords: Vec<Vec<i64>> = set.roots.iter().map(|r| r.coords()).collect();
    let rank = rank_of(&as_vectors(&coords));
    results.push(AxiomResult::new(
        "R2",
        if rank == set.ambient_rank {
            Verdict::Pass
        } else {
            Verdict::fail(format!("roots span a space of dimension {rank}, expected {}", set.ambient_rank))
        },
    ));

    // integral coordinates in the basis of epsilons and lattice generators
    let int_rank = lattice_rank(&coords);
    results.push(AxiomResult::new(
        "R3",
        if int_rank == rank {
            Verdict::Pass
        } else {
            Verdict::fail(format!("integral span has rank {int_rank} but rational span {rank}"))
        },
    ));

    let strings = interior_strings(set, 5);
    let bad = strings.iter().find_map(|(b, a, r)| match r {
        Err(e) => Some(format!("beta = {b}, alpha = {a}: {e}")),
        Ok((d, u)) if d + u > 4 => Some(format!("beta = {b}, alpha = {a}: string length {}", d + u)),
        _ => None,
    });
    results.push(AxiomResult::new(
        "R4",
        match bad {
            Some(w) => Verdict::fail(w),
            None => window_verdict("pairs whose whole string lies in the window"),
        },
    ));

    let nodes: Vec<Weight> =
        set.finite_image().into_iter().filter(|a| a.iter().any(|&x| x != 0)).collect();
    let comps = components(&nodes, &set.gram);
    results.push(AxiomResult::new(
        "R5a",
        if comps.len() <= 1 {
            Verdict::Pass
        } else {
            Verdict::fail(format!(
                "{} orthogonal components, e.g. {:?} and {:?}",
                comps.len(),
                comps[0][0],
                comps[1][0]
            ))
        },
    ));

    let mut r5b = None;
    for d in set.isotropic() {
        if d.lattice.iter().all(|&x| x == 0) && d.finite.iter().all(|&x| x == 0) {
            continue;
        }
        let found = set.non_isotropic().any(|a| {
            let s = a.add(d);
            set.in_window(&s.lattice) && set.contains(&s)
        });
        if !found {
            r5b = Some(d.clone());
            break;
        }
    }
    results.push(AxiomResult::new(
        "R5b",
        match r5b {
            Some(d) => Verdict::fail(format!("no nonisotropic alpha with alpha + {d} a root")),
            None => Verdict::Pass,
        },
    ));

    let doubled = set.non_isotropic().find(|a| {
        let b = a.scaled(2);
        set.in_window(&b.lattice) && set.contains(&b)
    });
    let reduced = doubled.is_none();
    results.push(AxiomResult::new(
        "R6",
        match doubled {
            Some(a) => Verdict::fail(format!("{a} and {} are both roots", a.scaled(2))),
            None => Verdict::Pass,
        },
    ));

    if let Some((t, r)) = set.expected_type {
        let image = set.finite_image();
        let verdict = match is_isomorphic_to(&image, &set.gram, t, r) {
            Ok(true) => Verdict::Pass,
            Ok(false) => Verdict::fail(format!("finite image is not of type {t}{r}")),
            Err(e) => Verdict::fail(format!("finite image: {e}")),
        };
        results.push(AxiomResult::new("finite-image", verdict));
    }

    let iso: Vec<Vec<i64>> = set.isotropic().map(|r| r.lattice.to_vec()).collect();
    let lrank = lattice_rank(&iso);
    let radical_ok = set.isotropic().all(|r| r.finite.iter().all(|&x| x == 0));
    results.push(AxiomResult::new(
        "isotropic-lattice",
        if lrank == set.nu && radical_ok {
            Verdict::Pass
        } else if !radical_ok {
            Verdict::fail("an isotropic root has nonzero finite part")
        } else {
            Verdict::fail(format!("isotropic roots generate a lattice of rank {lrank}, expected {}", set.nu))
        },
    ));

    let zero = set.zero();
    if !set.contains(&zero) {
        results.push(AxiomResult::new("zero", Verdict::fail("0 is not in the root set")));
    }
    EarsReport { results, window: set.window, reduced }
}

/// Cartan integers `2 (beta, alpha) / (alpha, alpha)` over all interior strings.
pub fn max_cartan_integer(set: &RootSet) -> Rational {
    let mut m = Rational::zero();
    for a in set.non_isotropic() {
        for b in &set.roots {
            let c = (int(2) * set.pairing(b, a) / set.norm(a)).abs();
            if c > m {
                m = c;
            }
        }
    }
    m
}
