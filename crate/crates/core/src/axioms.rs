//! Axiom suites for windowed algebras: the toral-triple axioms T1-T6, the
//! graded axioms D1-D12, Serre relations, tameness, and identity checks.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{homogeneous_degree, invariance_defect, jacobiator, nilpotency_index, GradedLieAlgebra};
use crate::decomp::{core_and_center_window, sl2_triple, Root, RootSystemWindow};
use crate::ears::{check_ears_axioms, interior_strings, RootSet};
use crate::error::Result;
use crate::exact_arith::{int, Rational};
use crate::finroot::{build_finite_root_system, cartan_matrix, is_isomorphic_to, length_class, LengthClass};
use crate::linalg::{lattice_box, lattice_rank, relations, solve_combination, sup_norm, Matrix, Span, Vector};

/// Outcome of one axiom.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail { witness: String },
    /// Holds on the window; `truncated` names the quantifier that was cut off.
    WindowVerified { window: i64, truncated: String },
}

impl Verdict {
    pub fn fail(w: impl Into<String>) -> Self {
        Verdict::Fail { witness: w.into() }
    }

    pub fn is_ok(&self) -> bool {
        !matches!(self, Verdict::Fail { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail { .. } => "fail",
            Verdict::WindowVerified { .. } => "window-verified",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl AxiomResult {
    pub fn new(axiom: &str, verdict: Verdict) -> Self {
        Self { axiom: axiom.into(), verdict }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub suite: String,
    pub label: String,
    pub window: i64,
    pub results: Vec<AxiomResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nullity: Option<usize>,
}

impl AxiomReport {
    fn new(suite: &str, window: &RootSystemWindow) -> Self {
        Self { suite: suite.into(), label: window.label.clone(), window: window.window, results: Vec::new(), nullity: None }
    }

    fn push(&mut self, axiom: &str, v: Verdict) {
        self.results.push(AxiomResult::new(axiom, v));
    }

    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.verdict.is_ok())
    }

    pub fn get(&self, axiom: &str) -> Option<&Verdict> {
        self.results.iter().find(|r| r.axiom == axiom).map(|r| &r.verdict)
    }

    pub fn failures(&self) -> Vec<&AxiomResult> {
        self.results.iter().filter(|r| !r.verdict.is_ok()).collect()
    }
}

/// Triples beyond this count are sampled instead of enumerated.
pub const EXHAUSTIVE_TRIPLES: usize = 100_000;
const SAMPLED_TRIPLES: usize = 20_000;
const NILPOTENCY_STEPS: usize = 9;
const NILPOTENCY_ESCALATED: usize = 17;

fn random_combination(rng: &mut ChaCha8Rng, basis: &[Vector]) -> Vector {
    loop {
        let c: Vec<Rational> = basis.iter().map(|_| int(rng.gen_range(-3..=3))).collect();
        let v = Vector::linear_combination(&c, basis);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Basis elements and a couple of random combinations of one root space.
fn probes(rng: &mut ChaCha8Rng, basis: &[Vector]) -> Vec<Vector> {
    let mut out = basis.to_vec();
    if basis.len() > 1 {
        out.push(random_combination(rng, basis));
        out.push(random_combination(rng, basis));
    }
    out
}

fn opposite_gram(alg: &dyn GradedLieAlgebra, window: &RootSystemWindow, r: &Root) -> Matrix {
    let xs = window.basis(r);
    let ys = window.basis(&r.neg());
    let mut m = Matrix::zeros(xs.len(), ys.len());
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            m.set(i, j, alg.form(x, y));
        }
    }
    m
}

/// Nondegeneracy on opposite pieces, symmetry, vanishing on non-opposite
/// pieces of opposite degree, and invariance on triples with zero sum.
fn form_checks(alg: &dyn GradedLieAlgebra, window: &RootSystemWindow, seed: u64) -> Verdict {
    let roots: Vec<Root> = window.roots().cloned().collect();
    for r in &roots {
        let m = opposite_gram(alg, window, r);
        if m.rows() != m.cols() || m.determinant().is_zero() {
            return Verdict::fail(format!("Gram matrix between L{r} and L{} is singular ({}x{})", r.neg(), m.rows(), m.cols()));
        }
        for x in window.basis(r) {
            for y in window.basis(&r.neg()) {
                if alg.form(x, y) != alg.form(y, x) {
                    return Verdict::fail(format!("(x, y) != (y, x) for x = {x}, y = {y}"));
                }
            }
        }
    }
    let bad_pair = roots.par_iter().find_map_first(|a| {
        let target: Vec<i64> = a.lattice.iter().map(|x| -x).collect();
        for b in window.roots().filter(|b| b.lattice.as_slice() == target.as_slice() && **b != a.neg()) {
            for x in window.basis(a) {
                for y in window.basis(b) {
                    if !alg.form(x, y).is_zero() {
                        return Some(format!("(L{a}, L{b}) != 0: ({x}, {y}) = {}", alg.form(x, y)));
                    }
                }
            }
        }
        None
    });
    if let Some(w) = bad_pair {
        return Verdict::fail(w);
    }

    let mut pairs = Vec::new();
    let mut total = 0usize;
    for a in &roots {
        for b in &roots {
            let c = a.add(b).neg();
            if window.contains(&c) {
                total += window.dim(a) * window.dim(b) * window.dim(&c);
                pairs.push((a.clone(), b.clone(), c));
            }
        }
    }
    let check = |a: &Root, b: &Root, c: &Root, i: usize, j: usize, k: usize| -> Option<String> {
        let (x, y, z) = (&window.basis(a)[i], &window.basis(b)[j], &window.basis(c)[k]);
        let d = invariance_defect(alg, x, y, z);
        (!d.is_zero()).then(|| format!("([x, y], z) != (x, [y, z]) for x = {x}, y = {y}, z = {z}"))
    };
    if total <= EXHAUSTIVE_TRIPLES {
        let bad = pairs.par_iter().find_map_first(|(a, b, c)| {
            for i in 0..window.dim(a) {
                for j in 0..window.dim(b) {
                    for k in 0..window.dim(c) {
                        if let Some(w) = check(a, b, c, i, j, k) {
                            return Some(w);
                        }
                    }
                }
            }
            None
        });
        return match bad {
            Some(w) => Verdict::fail(w),
            None => Verdict::WindowVerified { window: window.window, truncated: format!("all {total} homogeneous triples in the window") },
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<(usize, usize, usize, usize)> = (0..SAMPLED_TRIPLES)
        .map(|_| {
            let p = rng.gen_range(0..pairs.len());
            let (a, b, c) = &pairs[p];
            (p, rng.gen_range(0..window.dim(a)), rng.gen_range(0..window.dim(b)), rng.gen_range(0..window.dim(c)))
        })
        .collect();
    let bad = draws.par_iter().find_map_first(|&(p, i, j, k)| {
        let (a, b, c) = &pairs[p];
        check(a, b, c, i, j, k)
    });
    match bad {
        Some(w) => Verdict::fail(w),
        None => Verdict::WindowVerified {
            window: window.window,
            truncated: format!("invariance sampled on {SAMPLED_TRIPLES} of {total} triples"),
        },
    }
}

fn toral_checks(alg: &dyn GradedLieAlgebra, window: &RootSystemWindow, elems: &[Vector]) -> Verdict {
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[..i] {
            if !alg.bracket(a, b).is_zero() {
                return Verdict::fail(format!("[{a}, {b}] != 0"));
            }
        }
    }
    let n = elems.len();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(i, j, alg.form(&elems[i], &elems[j]));
        }
    }
    if g.determinant().is_zero() && n > 0 {
        return Verdict::fail("form on the toral subalgebra is degenerate");
    }
    // diagonal action was established while decomposing
    Verdict::WindowVerified { window: window.window, truncated: "diagonal action on window pieces".into() }
}

/// Some `x` in `span(xs)` and `y` in `span(ys)` with `[x, y] = target`, trying
/// basis elements of `xs` and random combinations.
fn bracket_partner(
    alg: &dyn GradedLieAlgebra,
    rng: &mut ChaCha8Rng,
    xs: &[Vector],
    ys: &[Vector],
    target: &Vector,
) -> Option<(Vector, Vector)> {
    for x in probes(rng, xs) {
        let images: Vec<Vector> = ys.iter().map(|y| alg.bracket(&x, y)).collect();
        if let Some(c) = solve_combination(&images, target) {
            return Some((x, Vector::linear_combination(&c, ys)));
        }
    }
    None
}

fn t3(alg: &dyn GradedLieAlgebra, window: &RootSystemWindow, seed: u64) -> Verdict {
    let nonisotropic: Vec<Root> = window.non_isotropic().cloned().collect();
    let bad = nonisotropic.par_iter().find_map_first(|r| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ hash_root(r));
        for x in probes(&mut rng, window.basis(r)) {
            if sl2_triple(alg, window, &x, r).is_err() {
                return Some(format!("no y in L{} with [x, y] = t_alpha for x = {x} in L{r}", r.neg()));
            }
        }
        None
    });
    if let Some(w) = bad {
        return Verdict::fail(w);
    }
    for d in window.isotropic() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ hash_root(d));
        let t = window.t_alpha(d);
        if t.is_zero() {
            continue;
        }
        if bracket_partner(alg, &mut rng, window.basis(d), window.basis(&d.neg()), &t).is_none() {
            return Verdict::fail(format!("no x in L{d}, y in L{} with [x, y] = t_delta", d.neg()));
        }
    }
    Verdict::WindowVerified { window: window.window, truncated: "root spaces with lattice part in the window".into() }
}

fn hash_root(r: &Root) -> u64 {
    r.coords().iter().fold(1469598103934665603u64, |h, &c| (h ^ (c as u64)).wrapping_mul(1099511628211))
}

fn t4(alg: &dyn GradedLieAlgebra, window: &RootSystemWindow) -> Verdict {
    let gens: Vec<Vector> = window.pieces().flat_map(|p| p.basis.clone()).collect();
    let xs: Vec<(Root, Vector)> = window
        .non_isotropic()
        .filter(|r| sup_norm(&r.lattice) <= 1)
        .flat_map(|r| window.basis(r).iter().map(move |x| (r.clone(), x.clone())))
        .collect();
    let bad = xs.par_iter().find_map_first(|(r, x)| {
        for y in &gens {
            if nilpotency_index(alg, x, y, NILPOTENCY_STEPS).is_none()
                && nilpotency_index(alg, x, y, NILPOTENCY_ESCALATED).is_none()
            {
                return Some(format!("(ad x)^{NILPOTENCY_ESCALATED} y != 0 for x = {x} in L{r}, y = {y}"));
            }
        }
        None
    });
    match bad {
        Some(w) => Verdict::fail(w),
        None => Verdict::WindowVerified {
            window: window.window,
            truncated: format!("x in root spaces of lattice norm <= 1, y in window pieces, N = {NILPOTENCY_STEPS}"),
        },
    }
}

fn t5(window: &RootSystemWindow) -> (Verdict, Verdict) {
    let set = RootSet::from_window(window);
    let rep = check_ears_axioms(&set);
    let a = rep.get("R5a").cloned().unwrap_or(Verdict::Pass);
    let b = match rep.get("R5b").cloned().unwrap_or(Verdict::Pass) {
        Verdict::Pass => Verdict::WindowVerified { window: window.window, truncated: "isotropic roots in the window".into() },
        v => v,
    };
    (a, b)
}

pub fn nullity(window: &RootSystemWindow) -> usize {
    let iso: Vec<Vec<i64>> = window.isotropic().map(|r| r.lattice.to_vec()).collect();
    lattice_rank(&iso)
}

/// T1-T6 on a decomposed window.
pub fn check_t(alg: &dyn GradedLieAlgebra, window: &RootSystemWindow, seed: u64) -> AxiomReport {
    let mut rep = AxiomReport::new("T", window);
    rep.push("T1", form_checks(alg, window, seed));
    rep.push("T2", toral_checks(alg, window, &window.toral.all()));
    rep.push("T3", t3(alg, window, seed));
    rep.push("T4", t4(alg, window));
    let (a, b) = t5(window);
    rep.push("T5a", a);
    rep.push("T5b", b);
    let n = nullity(window);
    rep.nullity = Some(n);
    rep.push("T6", Verdict::Pass);
    rep
}

fn zero_root(window: &RootSystemWindow, sigma: &[i64]) -> Root {
    Root::new(vec![0; window.weight_len], sigma)
}

/// Span of `[G_a^tau, G_-a^(gamma - tau)]` over nonzero finite weights `a`
/// and `|tau| <= radius`, stopping once `full` is reached.
pub fn bracket_span_at_zero(alg: &dyn GradedLieAlgebra, gamma: &[i64], radius: i64, full: usize) -> Span {
    let weights: Vec<Vec<i64>> = alg.finite_weights().into_iter().filter(|w| w.iter().any(|&x| x != 0)).collect();
    let mut span = Span::new();
    for tau in lattice_box(alg.nu(), radius) {
        let rest: Vec<i64> = gamma.iter().zip(&tau).map(|(g, t)| g - t).collect();
        if sup_norm(&rest) > radius {
            continue;
        }
        for a in &weights {
            let left = alg.graded_piece(a, &tau);
            if left.is_empty() {
                continue;
            }
            let neg: Vec<i64> = a.iter().map(|x| -x).collect();
            let right = alg.graded_piece(&neg, &rest);
            for x in &left {
                for y in &right {
                    span.insert(&alg.bracket(x, y));
                    if span.rank() >= full {
                        return span;
                    }
                }
            }
        }
    }
    span
}

fn d_finite(alg: &dyn GradedLieAlgebra, window: &RootSystemWindow) -> (Verdict, Verdict) {
    let fin = &window.toral.finite;
    let n = fin.len();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(i, j, alg.form(&fin[i], &fin[j]));
        }
    }
    let d3 = if g.determinant().is_zero() { Verdict::fail("form on the finite toral part is degenerate") } else { Verdict::Pass };
    let wg = window.weight_gram();
    let image: BTreeSet<Vec<i64>> = window.roots().map(|r| r.finite.clone()).collect();
    let (t, rank) = window.root_type;
    // form on the span of the finite roots
    let model = build_finite_root_system(t, rank);
    let pd = match &model {
        Ok(m) => {
            let simple = m.simple_roots();
            let mut s = Matrix::zeros(simple.len(), simple.len());
            for i in 0..simple.len() {
                for j in 0..simple.len() {
                    s.set(i, j, crate::finroot::pairing(&simple[i], &simple[j], &wg));
                }
            }
            s.is_positive_definite()
        }
        Err(_) => false,
    };
    let d4 = if !pd {
        Verdict::fail(format!("induced form on the span of the finite roots is not positive definite: {:?}", wg))
    } else {
        match is_isomorphic_to(&image, &wg, t, rank) {
            Ok(true) => Verdict::Pass,
            Ok(false) => Verdict::fail(format!("finite roots are not of type {t}{rank}")),
            Err(e) => Verdict::fail(format!("finite roots: {e}")),
        }
    };
    (d3, d4)
}

/// D1-D12 on a decomposed window of a graded algebra without derivations.
pub fn check_d(alg: &dyn GradedLieAlgebra, window: &RootSystemWindow, seed: u64) -> AxiomReport {
    let mut rep = AxiomReport::new("D", window);
    let w = window.window;
    rep.push("D1", form_checks(alg, window, seed));
    rep.push("D2", toral_checks(alg, window, &window.toral.finite));
    let (d3, d4) = d_finite(alg, window);
    rep.push("D3", d3);
    rep.push("D4", d4);

    // D5: brackets of homogeneous elements are homogeneous of the summed degree
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let roots: Vec<Root> = window.roots().cloned().collect();
    let mut d5 = None;
    for _ in 0..2_000 {
        let a = roots.choose(&mut rng).unwrap();
        let b = roots.choose(&mut rng).unwrap();
        let x = window.basis(a).choose(&mut rng).unwrap();
        let y = window.basis(b).choose(&mut rng).unwrap();
        let z = alg.bracket(x, y);
        if z.is_zero() {
            continue;
        }
        let deg: Vec<i64> = a.lattice.iter().zip(&b.lattice).map(|(p, q)| p + q).collect();
        if homogeneous_degree(alg, &z).map(|d| d.to_vec()) != Some(deg.clone()) {
            d5 = Some(format!("[{x}, {y}] is not homogeneous of degree {deg:?}"));
            break;
        }
    }
    rep.push(
        "D5",
        match d5 {
            Some(x) => Verdict::fail(x),
            None => Verdict::WindowVerified { window: w, truncated: "2000 sampled homogeneous pairs".into() },
        },
    );

    let d6 = window.pieces().find_map(|p| {
        p.basis
            .iter()
            .find(|b| homogeneous_degree(alg, b).map(|d| d.to_vec()) != Some(p.root.lattice.to_vec()))
            .map(|b| format!("{b} in L{} is not homogeneous", p.root))
    });
    rep.push("D6", d6.map_or(Verdict::WindowVerified { window: w, truncated: "window pieces".into() }, Verdict::fail));

    let d7 = window.toral.finite.iter().find(|h| {
        homogeneous_degree(alg, h).map_or(true, |d| d.iter().any(|&x| x != 0))
            || window.toral.finite.iter().any(|k| !alg.bracket(k, h).is_zero())
    });
    rep.push("D7", d7.map_or(Verdict::Pass, |h| Verdict::fail(format!("{h} is not in G_0^0"))));

    // D8: G_0^gamma is spanned by brackets of opposite nonzero finite weights
    let gammas = lattice_box(window.nu, w);
    let margin = alg.margin();
    let d8 = gammas.par_iter().find_map_first(|g| {
        let r = zero_root(window, g);
        let piece = window.basis(&r);
        let span = bracket_span_at_zero(alg, g, w + margin, piece.len());
        let own = Span::from_vectors(piece.iter());
        (!(own.contains_span(&span) && span.rank() == own.rank())).then(|| {
            format!("G_0 at degree {g:?} has dimension {} but the brackets span {}", own.rank(), span.rank())
        })
    });
    rep.push("D8", d8.map_or(Verdict::WindowVerified { window: w, truncated: format!("bracket degrees within {}", w + margin) }, Verdict::fail));

    let support: Vec<Vec<i64>> = gammas
        .iter()
        .filter(|g| !alg.degree_basis(g).is_empty())
        .map(|g| g.to_vec())
        .collect();
    let rank = lattice_rank(&support);
    rep.push(
        "D9",
        if rank == window.nu {
            if window.nu == 0 { Verdict::Pass } else { Verdict::WindowVerified { window: w, truncated: "support in the window".into() } }
        } else {
            Verdict::fail(format!("support generates a lattice of rank {rank}"))
        },
    );

    // D10: (G^s, G^t) = 0 unless s + t = 0, all window pairs
    let by_degree: Vec<(Vec<i64>, Vec<Vector>)> =
        gammas.iter().map(|g| (g.to_vec(), window.roots().filter(|r| r.lattice == *g).flat_map(|r| window.basis(r).to_vec()).collect())).collect();
    let d10 = by_degree.par_iter().find_map_first(|(s, xs)| {
        for (t, ys) in &by_degree {
            if s.iter().zip(t).all(|(a, b)| a + b == 0) {
                continue;
            }
            for x in xs {
                for y in ys {
                    if !alg.form(x, y).is_zero() {
                        return Some(format!("({x}, {y}) != 0 with degrees {s:?}, {t:?}"));
                    }
                }
            }
        }
        None
    });
    rep.push("D10", d10.map_or(Verdict::WindowVerified { window: w, truncated: "all pairs of window degrees".into() }, Verdict::fail));

    let image: BTreeSet<Vec<i64>> = window.roots().map(|r| r.finite.clone()).collect();
    let wg = window.weight_gram();
    let zero_lat = vec![0; window.nu];
    let d11 = image
        .iter()
        .filter(|a| a.iter().any(|&x| x != 0) && length_class(a, &image, &wg) != Some(LengthClass::ExtraLong))
        .find(|a| !window.contains(&Root::new((*a).clone(), &zero_lat)));
    rep.push("D11", d11.map_or(Verdict::Pass, |a| Verdict::fail(format!("G^0 has no elements of weight {a:?}"))));

    // D12a
    let nonisotropic: Vec<Root> = window.non_isotropic().cloned().collect();
    let d12a = nonisotropic.par_iter().find_map_first(|r| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ hash_root(r));
        probes(&mut rng, window.basis(r))
            .into_iter()
            .find(|x| sl2_triple(alg, window, x, r).is_err())
            .map(|x| format!("no y in G{} with [x, y] = t for x = {x}", r.neg()))
    });
    rep.push("D12a", d12a.map_or(Verdict::WindowVerified { window: w, truncated: "window degrees".into() }, Verdict::fail));

    // D12b
    let d12b = gammas.par_iter().find_map_first(|g| {
        let r = zero_root(window, g);
        let xs = window.basis(&r);
        if xs.is_empty() {
            return None;
        }
        let ys = window.basis(&r.neg());
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ hash_root(&r));
        (isotropic_pair(alg, &mut rng, xs, ys).is_none()).then(|| format!("no x, y at degrees {g:?}, -{g:?} with [x, y] = 0, (x, y) = 1"))
    });
    rep.push("D12b", d12b.map_or(Verdict::WindowVerified { window: w, truncated: "window degrees".into() }, Verdict::fail));
    rep
}

/// `x` in `span(xs)`, `y` in `span(ys)` with `[x, y] = 0` and `(x, y) = 1`.
pub fn isotropic_pair(alg: &dyn GradedLieAlgebra, rng: &mut ChaCha8Rng, xs: &[Vector], ys: &[Vector]) -> Option<(Vector, Vector)> {
    for x in probes(rng, xs) {
        let images: Vec<Vector> = ys.iter().map(|y| alg.bracket(&x, y)).collect();
        let kernel: Vec<Vector> = if images.iter().all(|v| v.is_zero()) {
            ys.to_vec()
        } else {
            relations(&images).iter().map(|c| Vector::linear_combination(c, ys)).collect()
        };
        if let Some(y) = kernel.iter().find(|y| !alg.form(&x, y).is_zero()) {
            let s = alg.form(&x, y).recip();
            return Some((x, y.scaled(&s)));
        }
    }
    None
}

/// Chevalley generators at chosen preimages of the simple roots, the Cartan
/// matrix they produce, and the Serre relations.
#[derive(Clone, Debug, Serialize)]
pub struct SerreReport {
    pub cartan: Vec<Vec<i64>>,
    pub expected: Vec<Vec<i64>>,
    /// Every generator lies in lattice degree zero.
    pub degree_zero: bool,
    pub failures: Vec<String>,
}

impl SerreReport {
    pub fn relations_hold(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.relations_hold() && self.cartan == self.expected && self.degree_zero
    }

    pub fn verdict(&self) -> Verdict {
        if self.passed() {
            Verdict::Pass
        } else if let Some(f) = self.failures.first() {
            Verdict::fail(f.clone())
        } else if self.cartan != self.expected {
            Verdict::fail(format!("Cartan matrix {:?}, expected {:?}", self.cartan, self.expected))
        } else {
            Verdict::fail("generators are not all of lattice degree 0")
        }
    }
}

/// Serre check with generators taken from the lattice-zero root spaces.
pub fn serre_check(alg: &dyn GradedLieAlgebra, window: &RootSystemWindow) -> Result<SerreReport> {
    let (t, rank) = window.root_type;
    let simple = build_finite_root_system(t, rank)?.simple_roots().to_vec();
    let pre: Vec<Root> = simple.iter().map(|a| Root::new(a.clone(), &vec![0; window.nu])).collect();
    serre_check_at(alg, window, &pre)
}

/// Serre check with generators taken from the given root spaces.
pub fn serre_check_at(alg: &dyn GradedLieAlgebra, window: &RootSystemWindow, preimages: &[Root]) -> Result<SerreReport> {
    let (t, rank) = window.root_type;
    let expected = cartan_matrix(t, rank)?;
    let n = preimages.len();
    let mut e = Vec::new();
    let mut h = Vec::new();
    let mut f = Vec::new();
    for r in preimages {
        let x = window
            .basis(r)
            .first()
            .cloned()
            .ok_or_else(|| crate::Error::NotARoot(format!("{r}")))?;
        let tr = sl2_triple(alg, window, &x, r)?;
        e.push(tr.e);
        h.push(tr.h);
        f.push(tr.f);
    }
    let mut cartan = vec![vec![0i64; n]; n];
    let mut failures = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = alg.bracket(&h[i], &e[j]);
            let (k, c) = e[j].first().unwrap();
            let lambda = v.get(k) / c;
            if v != e[j].scaled(&lambda) || !lambda.is_integer() {
                failures.push(format!("e_{} is not an eigenvector of h_{} with integral eigenvalue", j + 1, i + 1));
                continue;
            }
            cartan[i][j] = crate::exact_arith::to_i64(&lambda).unwrap();
        }
    }
    for i in 0..n {
        for j in 0..n {
            let ef = alg.bracket(&e[i], &f[j]);
            let want = if i == j { h[i].clone() } else { Vector::new() };
            if ef != want {
                failures.push(format!("[e_{}, f_{}] = {}", i + 1, j + 1, ef));
            }
            if i == j {
                continue;
            }
            let k = (1 - cartan[i][j]).max(0) as usize;
            let plus = crate::algebra::ad_power(alg, &e[i], &e[j], k);
            if !plus.is_zero() {
                failures.push(format!("theta+_{},{} = {}", i + 1, j + 1, plus));
            }
            let minus = crate::algebra::ad_power(alg, &f[i], &f[j], k);
            if !minus.is_zero() {
                failures.push(format!("theta-_{},{} = {}", i + 1, j + 1, minus));
            }
        }
    }
    let zero = |v: &Vector| homogeneous_degree(alg, v).map_or(v.is_zero(), |d| d.iter().all(|&x| x == 0));
    let degree_zero = e.iter().chain(&f).chain(&h).all(zero);
    Ok(SerreReport { cartan, expected, degree_zero, failures })
}

/// Window core and centralizer, and whether the centralizer sits in the core.
#[derive(Clone, Debug, Serialize)]
pub struct TamenessReport {
    pub verdict: Verdict,
    /// Core perp equals the center of the core at every window root.
    pub perp_matches_center: bool,
    pub core_dims: Vec<(Root, usize)>,
    pub center_dims: Vec<(Root, usize)>,
}

impl TamenessReport {
    pub fn tame(&self) -> bool {
        self.verdict.is_ok()
    }
}

pub fn tameness_check(alg: &dyn GradedLieAlgebra, window: &RootSystemWindow) -> Result<TamenessReport> {
    let data = core_and_center_window(alg, window, alg.margin())?;
    let mut witness = None;
    let mut perp_matches_center = true;
    for r in window.roots() {
        let core = Span::from_vectors(data.core[r].iter());
        if let Some(z) = data.centralizer[r].iter().find(|z| !core.contains(z)) {
            witness.get_or_insert_with(|| format!("{z} in L{r} centralizes the core but is not in it"));
        }
        let perp = Span::from_vectors(data.core_perp[r].iter());
        let center = Span::from_vectors(data.center[r].iter());
        if !perp.equals(&center) {
            perp_matches_center = false;
        }
    }
    let verdict = match witness {
        Some(w) => Verdict::fail(w),
        None => Verdict::WindowVerified { window: window.window, truncated: "centralizer of window generators".into() },
    };
    let dims = |m: &std::collections::BTreeMap<Root, Vec<Vector>>| m.iter().map(|(r, v)| (r.clone(), v.len())).collect();
    Ok(TamenessReport { verdict, perp_matches_center, core_dims: dims(&data.core), center_dims: dims(&data.center) })
}

/// Jacobi identity on random homogeneous triples, rationality of the root
/// pairing, and the root string identities on interior pairs.
pub fn props_check(alg: &dyn GradedLieAlgebra, window: &RootSystemWindow, seed: u64, draws: usize) -> AxiomReport {
    let mut rep = AxiomReport::new("PROPS", window);
    let all: Vec<Vector> = window.pieces().flat_map(|p| p.basis.clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<[Vector; 3]> = (0..draws)
        .map(|_| [all.choose(&mut rng).unwrap().clone(), all.choose(&mut rng).unwrap().clone(), all.choose(&mut rng).unwrap().clone()])
        .collect();
    let bad = triples.par_iter().find_map_first(|[x, y, z]| {
        let j = jacobiator(alg, x, y, z);
        (!j.is_zero()).then(|| format!("Jacobi fails on {x}, {y}, {z}: {j}"))
    });
    rep.push("jacobi", bad.map_or(Verdict::WindowVerified { window: window.window, truncated: format!("{draws} random triples") }, Verdict::fail));

    let set = RootSet::from_window(window);
    let mut strings = Verdict::WindowVerified { window: window.window, truncated: "interior pairs".into() };
    for (b, a, res) in interior_strings(&set, 5) {
        let c = int(2) * window.pairing(&b, &a) / window.norm(&a);
        match res {
            Err(e) => {
                strings = Verdict::fail(format!("beta = {b}, alpha = {a}: {e}"));
                break;
            }
            Ok((d, u)) if int(d - u) != c || c.abs() > int(4) => {
                strings = Verdict::fail(format!("beta = {b}, alpha = {a}: d - u = {}, Cartan integer {c}", d - u));
                break;
            }
            _ => {}
        }
    }
    rep.push("root-strings", strings);

    rep
}
