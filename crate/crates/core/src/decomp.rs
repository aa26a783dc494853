//! Root-space decomposition of an algebra on a lattice window, sl2 partners,
//! reflection automorphisms, and the core and its center.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{exp_ad, GradedLieAlgebra, ToralBasis};
use crate::error::{Error, Result};
use crate::exact_arith::{format_rational, int, to_i64, Rational};
use crate::finroot::RootType;
use crate::linalg::{lattice, lattice_add, lattice_box, lattice_neg, relations, solve_combination, sup_norm, LatticeVec, Matrix, Span, Vector};

/// A root: finite weight in epsilon coordinates plus a lattice degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub finite: Vec<i64>,
    pub lattice: LatticeVec,
}

impl Root {
    pub fn new(finite: Vec<i64>, lattice_part: &[i64]) -> Self {
        Self { finite, lattice: lattice(lattice_part) }
    }

    /// Roots with zero finite part; the finite form is positive definite, so
    /// these are exactly the isotropic ones.
    pub fn is_isotropic(&self) -> bool {
        self.finite.iter().all(|&x| x == 0)
    }

    pub fn neg(&self) -> Root {
        Root { finite: self.finite.iter().map(|x| -x).collect(), lattice: lattice_neg(&self.lattice) }
    }

    pub fn add(&self, o: &Root) -> Root {
        Root {
            finite: self.finite.iter().zip(&o.finite).map(|(a, b)| a + b).collect(),
            lattice: lattice_add(&self.lattice, &o.lattice),
        }
    }

    pub fn scaled(&self, n: i64) -> Root {
        Root { finite: self.finite.iter().map(|x| n * x).collect(), lattice: self.lattice.iter().map(|x| n * x).collect() }
    }

    /// Finite coordinates followed by lattice coordinates.
    pub fn coords(&self) -> Vec<i64> {
        self.finite.iter().chain(self.lattice.iter()).copied().collect()
    }

    pub fn from_coords(c: &[i64], weight_len: usize) -> Root {
        Root::new(c[..weight_len].to_vec(), &c[weight_len..])
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "finite": self.finite, "lattice": self.lattice.to_vec() })
    }
}

impl serde::Serialize for Root {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.finite, self.lattice.as_slice())
    }
}

/// Basis of one root space.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedPiece {
    pub root: Root,
    pub basis: Vec<Vector>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Root spaces of every root whose lattice part has sup-norm at most `window`.
#[derive(Clone, Debug)]
pub struct RootSystemWindow {
    pub window: i64,
    pub nu: usize,
    pub weight_len: usize,
    pub root_type: (RootType, usize),
    pub label: String,
    pub toral: ToralBasis,
    toral_gram: Matrix,
    toral_gram_inv: Matrix,
    pieces: BTreeMap<Root, GradedPiece>,
}

impl RootSystemWindow {
    pub fn roots(&self) -> impl Iterator<Item = &Root> {
        self.pieces.keys()
    }

    pub fn pieces(&self) -> impl Iterator<Item = &GradedPiece> {
        self.pieces.values()
    }

    pub fn piece(&self, r: &Root) -> Option<&GradedPiece> {
        self.pieces.get(r)
    }

    pub fn basis(&self, r: &Root) -> &[Vector] {
        self.pieces.get(r).map(|p| p.basis.as_slice()).unwrap_or(&[])
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.pieces.contains_key(r)
    }

    pub fn dim(&self, r: &Root) -> usize {
        self.basis(r).len()
    }

    pub fn in_window(&self, lat: &[i64]) -> bool {
        sup_norm(lat) <= self.window
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn non_isotropic(&self) -> impl Iterator<Item = &Root> {
        self.roots().filter(|r| !r.is_isotropic())
    }

    pub fn isotropic(&self) -> impl Iterator<Item = &Root> {
        self.roots().filter(|r| r.is_isotropic())
    }

    pub fn toral_gram(&self) -> &Matrix {
        &self.toral_gram
    }

    /// The root as a functional on the toral basis.
    pub fn functional(&self, r: &Root) -> Vec<Rational> {
        let mut f: Vec<Rational> = r.finite.iter().map(|&x| int(x)).collect();
        f.extend(self.toral.central.iter().map(|_| Rational::zero()));
        if !self.toral.derivations.is_empty() {
            f.extend(r.lattice.iter().map(|&x| int(x)));
        }
        f
    }

    /// `(a, b) = (t_a, t_b)`
    pub fn pairing(&self, a: &Root, b: &Root) -> Rational {
        let fa = self.functional(a);
        let fb = self.functional(b);
        let y = self.toral_gram_inv.mul_vec(&fb);
        fa.iter().zip(&y).fold(Rational::zero(), |s, (x, y)| s + x * y)
    }

    pub fn norm(&self, r: &Root) -> Rational {
        self.pairing(r, r)
    }

    /// `(eps_r, eps_s)` on finite weights.
    pub fn weight_gram(&self) -> Matrix {
        let n = self.weight_len;
        let unit = |i: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            Root::new(v, &vec![0; self.nu])
        };
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, self.pairing(&unit(i), &unit(j)));
            }
        }
        g
    }

    /// The unique toral element `t_a` with `(t_a, h) = a(h)`.
    pub fn t_alpha(&self, r: &Root) -> Vector {
        let c = self.toral_gram_inv.mul_vec(&self.functional(r));
        Vector::linear_combination(&c, &self.toral.all())
    }

    /// Export record for one root.
    pub fn export_record(&self, r: &Root) -> serde_json::Value {
        serde_json::json!({
            "finite": r.finite,
            "lattice": r.lattice.to_vec(),
            "dim": self.dim(r),
            "norm": format_rational(&self.norm(r)),
            "isotropic": r.is_isotropic(),
        })
    }
}

fn eigenvalues(alg: &dyn GradedLieAlgebra, toral: &[Vector], b: &Vector) -> Result<Vec<Rational>> {
    let Some((k0, c0)) = b.first() else {
        return Err(Error::NonDiagonalAction("zero basis element".into()));
    };
    toral
        .iter()
        .map(|h| {
            let v = alg.bracket(h, b);
            let lambda = v.get(k0) / c0;
            if v != b.scaled(&lambda) {
                return Err(Error::NonDiagonalAction(format!("{b} is not an eigenvector of ad({h})")));
            }
            Ok(lambda)
        })
        .collect()
}

fn integral(x: &Rational, what: &str) -> Result<i64> {
    to_i64(x).ok_or_else(|| Error::NonDiagonalAction(format!("non-integral {what} eigenvalue {x}")))
}

/// Groups canonical basis elements by simultaneous eigenvalues of the toral
/// basis and lattice degree, for every degree of sup-norm at most `w`.
pub fn decompose_window(alg: &dyn GradedLieAlgebra, w: i64) -> Result<RootSystemWindow> {
    if w < 0 {
        return Err(Error::InvalidArgument("window must be non-negative".into()));
    }
    let toral = alg.toral();
    let all = toral.all();
    if toral.finite.len() != alg.weight_len() {
        return Err(Error::InvalidArgument("finite toral part does not match the weight length".into()));
    }
    for i in 0..all.len() {
        for j in 0..i {
            if !alg.bracket(&all[i], &all[j]).is_zero() {
                return Err(Error::NonDiagonalAction(format!("toral elements {i} and {j} do not commute")));
            }
        }
    }
    let n = all.len();
    let mut gram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gram.set(i, j, alg.form(&all[i], &all[j]));
        }
    }
    let inv = gram.inverse().ok_or(Error::DegenerateToralForm)?;
    let nf = toral.finite.len();
    let nc = toral.central.len();
    let per_degree: Vec<Result<Vec<(Root, Vector)>>> = lattice_box(alg.nu(), w)
        .par_iter()
        .map(|sigma| {
            let mut out = Vec::new();
            for b in alg.degree_basis(sigma) {
                let eig = eigenvalues(alg, &all, &b)?;
                let finite = eig[..nf].iter().map(|x| integral(x, "finite")).collect::<Result<Vec<_>>>()?;
                if eig[nf..nf + nc].iter().any(|x| !x.is_zero()) {
                    return Err(Error::NonDiagonalAction(format!("central element acts on {b}")));
                }
                if !toral.derivations.is_empty() {
                    let lat = eig[nf + nc..].iter().map(|x| integral(x, "degree")).collect::<Result<Vec<_>>>()?;
                    if lat.as_slice() != sigma.as_slice() {
                        return Err(Error::NonDiagonalAction(format!(
                            "degree derivations give {lat:?} on an element of degree {:?}",
                            sigma.as_slice()
                        )));
                    }
                }
                out.push((Root::new(finite, sigma), b));
            }
            Ok(out)
        })
        .collect();
    let mut grouped: BTreeMap<Root, Vec<Vector>> = BTreeMap::new();
    for r in per_degree {
        for (root, b) in r? {
            grouped.entry(root).or_default().push(b);
        }
    }
    let mut pieces = BTreeMap::new();
    for (root, basis) in grouped {
        if Span::from_vectors(basis.iter()).rank() != basis.len() {
            return Err(Error::InvalidArgument(format!("canonical basis of {root} is dependent")));
        }
        pieces.insert(root.clone(), GradedPiece { root, basis });
    }
    Ok(RootSystemWindow {
        window: w,
        nu: alg.nu(),
        weight_len: alg.weight_len(),
        root_type: alg.root_type(),
        label: alg.label(),
        toral,
        toral_gram: gram,
        toral_gram_inv: inv,
        pieces,
    })
}

pub fn rep_t_alpha(window: &RootSystemWindow, root: &Root) -> Vector {
    window.t_alpha(root)
}

/// Basis of `L_root`, from the window when it is there.
pub fn root_space(alg: &dyn GradedLieAlgebra, window: &RootSystemWindow, root: &Root) -> Vec<Vector> {
    match window.piece(root) {
        Some(p) => p.basis.clone(),
        None => alg.graded_piece(&root.finite, &root.lattice),
    }
}

/// Some `y` in `L_{-alpha}` with `[x, y] = t_alpha`.
pub fn sl2_search(alg: &dyn GradedLieAlgebra, window: &RootSystemWindow, x: &Vector, alpha: &Root) -> Result<Vector> {
    let opposite = root_space(alg, window, &alpha.neg());
    let images: Vec<Vector> = opposite.iter().map(|b| alg.bracket(x, b)).collect();
    let target = window.t_alpha(alpha);
    let c = solve_combination(&images, &target).ok_or_else(|| Error::NoPartner(format!("{x} in L{alpha}")))?;
    Ok(Vector::linear_combination(&c, &opposite))
}

/// `e`, `h = 2 t_alpha/(alpha, alpha)`, `f` with `[e, f] = h`, `[h, e] = 2e`, `[h, f] = -2f`.
#[derive(Clone, Debug)]
pub struct Sl2Triple {
    pub e: Vector,
    pub h: Vector,
    pub f: Vector,
}

pub fn sl2_triple(alg: &dyn GradedLieAlgebra, window: &RootSystemWindow, x: &Vector, alpha: &Root) -> Result<Sl2Triple> {
    let n = window.norm(alpha);
    if n.is_zero() {
        return Err(Error::IsotropicRoot);
    }
    let y = sl2_search(alg, window, x, alpha)?;
    let s = int(2) / n;
    Ok(Sl2Triple { e: x.clone(), h: window.t_alpha(alpha).scaled(&s), f: y.scaled(&s) })
}

/// `exp(ad t e) exp(ad -t^-1 f) exp(ad t e)` applied to `target`.
pub fn theta_automorphism(alg: &dyn GradedLieAlgebra, e: &Vector, f: &Vector, t: &Rational, target: &Vector) -> Result<Vector> {
    if t.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let te = e.scaled(t);
    let tf = f.scaled(&-t.recip());
    let limit = 17;
    let a = exp_ad(alg, &te, target, limit)?;
    let b = exp_ad(alg, &tf, &a, limit)?;
    exp_ad(alg, &te, &b, limit)
}

/// Subspace of `span(candidates)` annihilated by `ad g` for every `g`.
pub fn annihilator(alg: &dyn GradedLieAlgebra, candidates: &[Vector], gens: &[Vector]) -> Vec<Vector> {
    let mut cur: Vec<Vector> = candidates.to_vec();
    for g in gens {
        if cur.is_empty() {
            break;
        }
        let images: Vec<Vector> = cur.iter().map(|z| alg.bracket(z, g)).collect();
        if images.iter().all(|v| v.is_zero()) {
            continue;
        }
        cur = relations(&images).iter().map(|c| Vector::linear_combination(c, &cur)).collect();
    }
    cur
}

/// Subspace of `span(candidates)` orthogonal to every element of `others`.
pub fn orthogonal_in(alg: &dyn GradedLieAlgebra, candidates: &[Vector], others: &[Vector]) -> Vec<Vector> {
    if others.is_empty() {
        return candidates.to_vec();
    }
    let mut m = Matrix::zeros(others.len(), candidates.len());
    for (i, o) in others.iter().enumerate() {
        for (j, c) in candidates.iter().enumerate() {
            m.set(i, j, alg.form(o, c));
        }
    }
    m.nullspace().iter().map(|c| Vector::linear_combination(c, candidates)).collect()
}

/// Window restrictions of the core, its center, the centralizer of the core,
/// the orthogonal complement of the core, and the spaces `H_alpha`.
#[derive(Clone, Debug, Default)]
pub struct CoreData {
    pub core: BTreeMap<Root, Vec<Vector>>,
    /// Elements of the core commuting with every window generator.
    pub center: BTreeMap<Root, Vec<Vector>>,
    /// Elements of `L` commuting with every window generator.
    pub centralizer: BTreeMap<Root, Vec<Vector>>,
    pub core_perp: BTreeMap<Root, Vec<Vector>>,
    /// Span of `h_{x,y} = [x, y] - (x, y) t_alpha` over nonisotropic `alpha`.
    pub h_alpha_sum: Vec<Vector>,
    /// Elements of `L_0` orthogonal to the toral subalgebra.
    pub h_perp: Vec<Vector>,
}

impl CoreData {
    pub fn dim(map: &BTreeMap<Root, Vec<Vector>>, r: &Root) -> usize {
        map.get(r).map_or(0, |v| v.len())
    }
}

/// Core pieces from brackets of nonisotropic pieces with lattice parts of
/// sup-norm at most `window + margin`.
pub fn core_and_center_window(alg: &dyn GradedLieAlgebra, window: &RootSystemWindow, margin: i64) -> Result<CoreData> {
    let w = window.window;
    if w < 1 && window.nu > 0 {
        return Err(Error::InvalidArgument("core computations need a window of at least 1".into()));
    }
    let radius = w + margin;
    let nonzero_weights: Vec<Vec<i64>> = alg.finite_weights().into_iter().filter(|f| f.iter().any(|&x| x != 0)).collect();
    let roots: Vec<Root> = window.roots().cloned().collect();

    let core: BTreeMap<Root, Vec<Vector>> = roots
        .par_iter()
        .map(|r| {
            if !r.is_isotropic() {
                return (r.clone(), window.basis(r).to_vec());
            }
            let full = window.dim(r);
            let mut span = Span::new();
            'outer: for tau in lattice_box(window.nu, radius) {
                let rest: Vec<i64> = r.lattice.iter().zip(&tau).map(|(a, b)| a - b).collect();
                if sup_norm(&rest) > radius {
                    continue;
                }
                for a in &nonzero_weights {
                    let neg: Vec<i64> = a.iter().map(|x| -x).collect();
                    let left = alg.graded_piece(a, &tau);
                    if left.is_empty() {
                        continue;
                    }
                    let right = alg.graded_piece(&neg, &rest);
                    for x in &left {
                        for y in &right {
                            span.insert(&alg.bracket(x, y));
                            if span.rank() == full {
                                break 'outer;
                            }
                        }
                    }
                }
            }
            (r.clone(), span.into_basis())
        })
        .collect();

    let gens: Vec<Vector> = window.non_isotropic().flat_map(|r| window.basis(r).to_vec()).collect();
    let center: BTreeMap<Root, Vec<Vector>> =
        roots.par_iter().map(|r| (r.clone(), annihilator(alg, &core[r], &gens))).collect();
    let centralizer: BTreeMap<Root, Vec<Vector>> =
        roots.par_iter().map(|r| (r.clone(), annihilator(alg, window.basis(r), &gens))).collect();
    let core_perp: BTreeMap<Root, Vec<Vector>> = roots
        .par_iter()
        .map(|r| {
            let opp = core.get(&r.neg()).cloned().unwrap_or_default();
            (r.clone(), orthogonal_in(alg, window.basis(r), &opp))
        })
        .collect();

    let mut h_span = Span::new();
    for r in window.non_isotropic() {
        let t = window.t_alpha(r);
        for x in window.basis(r) {
            for y in window.basis(&r.neg()) {
                let h = alg.bracket(x, y).sub(&t.scaled(&alg.form(x, y)));
                h_span.insert(&h);
            }
        }
    }
    let zero = Root::new(vec![0; window.weight_len], &vec![0; window.nu]);
    let h_perp = orthogonal_in(alg, window.basis(&zero), &window.toral.all());
    Ok(CoreData { core, center, centralizer, core_perp, h_alpha_sum: h_span.into_basis(), h_perp })
}
