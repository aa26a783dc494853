//! Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ealie::algebra::{jacobiator, GradedLieAlgebra};
use ealie::axioms::{check_d, check_t, serre_check, tameness_check, Verdict};
use ealie::constructions::{affinize, build_extension_example};
use ealie::decomp::{
    core_and_center_window, decompose_window, sl2_search, sl2_triple, theta_automorphism, Root, RootSystemWindow,
};
use ealie::ears::{check_ears_axioms, interior_strings, support_sets, RootSet};
use ealie::exact_arith::{int, rat, GaussianRational, Rational};
use ealie::finroot::{cartan_matrix, reflect_integral, RootType};
use ealie::linalg::{lattice_box, BasisKey, Span, Vector};
use ealie::matlie::{
    a_type_bracket_closed_form, a_type_element, zero_case, zero_root_closed_form, zero_root_component, LieElement,
    QuantumTorusAlgebra, SkewVariant, ZeroCase,
};
use ealie::quantum_torus::{SignMatrix, TorusElement};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn q12() -> SignMatrix {
    SignMatrix::from_upper(2, &[-1]).unwrap()
}

fn derived(ell: usize, q: SignMatrix) -> Arc<QuantumTorusAlgebra> {
    Arc::new(QuantumTorusAlgebra::new(ell, q, SkewVariant::Derived).unwrap())
}

fn lat(rng: &mut ChaCha8Rng, nu: usize, w: i64) -> Vec<i64> {
    (0..nu).map(|_| rng.gen_range(-w..=w)).collect()
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn basis_elements(w: &RootSystemWindow) -> Vec<(Root, Vector)> {
    w.pieces().flat_map(|p| p.basis.iter().map(move |b| (p.root.clone(), b.clone()))).collect()
}

fn c1_multiplicities() -> Outcome {
    let l = affinize(derived(2, q12()));
    let w = decompose_window(&l, 2).unwrap();
    let mut checked = 0;
    for a in ealie::matlie::type_c_roots(2) {
        let short = a.iter().filter(|&&x| x != 0).count() == 2;
        for sigma in lattice_box(2, 2) {
            let r = Root::new(a.clone(), &sigma);
            let want = if short { 2 } else { 1 };
            if w.dim(&r) != want {
                return outcome(false, format!("dim L{r} = {}, expected {want}", w.dim(&r)));
            }
            checked += 1;
        }
    }
    outcome(checked == 200, format!("{checked} roots over 25 lattice points: short dim 2, long dim 1"))
}

fn c2_cocycles() -> Outcome {
    let q = q12();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..500 {
        let s = lat(&mut rng, 2, 6);
        let t = lat(&mut rng, 2, 6);
        let g = lat(&mut rng, 2, 6);
        let st: Vec<i64> = s.iter().zip(&t).map(|(a, b)| a + b).collect();
        let ok = q.kappa(&s) == q.g(&s, &s)
            && q.f(&s, &t) * q.kappa(&s) * q.kappa(&t) == q.kappa(&st)
            && q.g(&st, &g) == q.g(&s, &g) * q.g(&t, &g)
            && q.g(&g, &st) == q.g(&g, &s) * q.g(&g, &t);
        if !ok {
            return outcome(false, format!("identity fails at sigma={s:?}, tau={t:?}, gamma={g:?}"));
        }
    }
    outcome(true, "500 triples in [-6,6]^2, four identities exact")
}

fn random_lie(rng: &mut ChaCha8Rng, q: &Arc<SignMatrix>) -> LieElement {
    let mut x = LieElement::zero(2, q.clone());
    for _ in 0..3 {
        let i = rng.gen_range(0..4);
        let j = rng.gen_range(0..4);
        let c = GaussianRational::new(random_rational(rng), random_rational(rng));
        let m = TorusElement::monomial(q.clone(), &lat(rng, 2, 3), c).unwrap();
        x.set(i, j, x.entry(i, j).add(&m).unwrap());
    }
    x
}

fn c3_involution() -> Outcome {
    let q = Arc::new(q12());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let s = lat(&mut rng, 2, 6);
        let neg: Vec<i64> = s.iter().map(|x| -x).collect();
        let k = q.kappa(&s);
        let one = GaussianRational::from_ints(1, 0);
        let ts = TorusElement::monomial(q.clone(), &s, one.clone()).unwrap();
        let tn = TorusElement::monomial(q.clone(), &neg, one.clone()).unwrap();
        let prod = ts.mul(&tn).unwrap();
        let want = TorusElement::monomial(q.clone(), &[0, 0], GaussianRational::from_ints(k as i64, 0)).unwrap();
        if prod != want {
            return outcome(false, format!("t^s t^-s != kappa at {s:?}"));
        }
        if ts.bar() != ts.scale(&GaussianRational::from_ints(k as i64, 0)) {
            return outcome(false, format!("bar(t^s) != kappa t^s at {s:?}"));
        }
        let a = random_lie(&mut rng, &q);
        let b = random_lie(&mut rng, &q);
        if a.mul(&b).unwrap().star() != b.star().mul(&a.star()).unwrap() {
            return outcome(false, "(AB)* != B*A*");
        }
        if a.star().star() != a {
            return outcome(false, "(A*)* != A");
        }
    }
    outcome(true, "200 draws: t^s t^-s = kappa, bar t^s = kappa t^s, (AB)* = B*A*, (A*)* = A")
}

fn c4_bracket_closed_form() -> Outcome {
    let alg = derived(3, q12());
    let q = alg.sign_matrix().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut literal_agrees = 0;
    let mut f_plus = 0;
    let mut relation_ok = true;
    for _ in 0..50 {
        let s = lat(&mut rng, 2, 2);
        let t = lat(&mut rng, 2, 2);
        let r = rng.gen_range(0..3);
        let mut u = rng.gen_range(0..3);
        while u == r {
            u = rng.gen_range(0..3);
        }
        let (a, b, c, d) = (random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng));
        let x = a_type_element(3, &q, &s, r, u, &a, &b);
        let y = a_type_element(3, &q, &t, u, r, &c, &d);
        let direct = alg.bracket(&x, &y);
        let closed = a_type_bracket_closed_form(3, &q, &s, &t, r, u, (&a, &b), (&c, &d));
        if direct != closed {
            return outcome(false, format!("closed form fails at sigma={s:?}, tau={t:?}, r={r}, s={u}"));
        }
        // the displayed prefactor g_sigma^tau agrees exactly when f_sigma^tau = 1
        let literal = q.g(&s, &t) == q.c(&s, &t);
        literal_agrees += literal as usize;
        f_plus += (q.f(&s, &t) == 1) as usize;
        relation_ok &= literal == (q.f(&s, &t) == 1);
    }
    outcome(
        relation_ok,
        format!(
            "50 draws exact with prefactor c(sigma,tau) = g_tau^sigma; literal g_sigma^tau agrees in {literal_agrees}/50, \
             exactly the {f_plus} draws with f = +1"
        ),
    )
}

fn c5_serre() -> Outcome {
    let mut lines = Vec::new();
    for ell in [2, 3] {
        let g = derived(ell, q12());
        let w = decompose_window(g.as_ref(), 0).unwrap();
        let rep = serre_check(g.as_ref(), &w).unwrap();
        let standard = cartan_matrix(RootType::C, ell).unwrap();
        if !rep.relations_hold() || rep.cartan != standard || !rep.degree_zero {
            return outcome(false, format!("C{ell}: {:?}", rep));
        }
        lines.push(format!("C{ell} {:?}", rep.cartan));
    }
    outcome(true, format!("all relations vanish; Cartan matrices {}", lines.join(", ")))
}

fn c6_form() -> Outcome {
    let g = derived(2, q12());
    let w = decompose_window(g.as_ref(), 2).unwrap();
    let h = &w.toral.finite;
    for r in 0..2 {
        for s in 0..2 {
            let want = if r == s { int(2) } else { int(0) };
            if g.form(&h[r], &h[s]) != want {
                return outcome(false, format!("(h_{r}, h_{s}) != {want}"));
            }
            let er = Root::new(if r == 0 { vec![1, 0] } else { vec![0, 1] }, &[0, 0]);
            let es = Root::new(if s == 0 { vec![1, 0] } else { vec![0, 1] }, &[0, 0]);
            let want = if r == s { rat(1, 2) } else { int(0) };
            if g.form(&w.t_alpha(&er), &w.t_alpha(&es)) != want {
                return outcome(false, format!("(t_eps{r}, t_eps{s}) != {want}"));
            }
        }
    }
    let all = basis_elements(&w);
    let bad = all.par_iter().find_map_first(|(a, x)| {
        all.iter()
            .filter(|(b, _)| a.add(b) != Root::new(vec![0, 0], &[0, 0]))
            .find(|(_, y)| !g.form(x, y).is_zero())
            .map(|(b, _)| format!("(L{a}, L{b}) != 0"))
    });
    match bad {
        Some(w) => outcome(false, w),
        None => outcome(true, format!("(h_r,h_s) = 2 delta, (t_r,t_s) = delta/2; gradedness on all {}^2 window basis pairs", all.len())),
    }
}

fn c7_suites() -> Outcome {
    let mut notes = Vec::new();
    let q1 = SignMatrix::trivial(1);
    for (nu, q) in [(1usize, q1), (2, q12())] {
        let g = derived(2, q);
        let w = decompose_window(g.as_ref(), 2).unwrap();
        let rep = check_d(g.as_ref(), &w, 7);
        if !rep.passed() {
            return outcome(false, format!("D suite on nu={nu}: {:?}", rep.failures()));
        }
        notes.push(format!("D1-D12 nu={nu}"));
    }
    let l = affinize(derived(2, q12()));
    let w = decompose_window(&l, 2).unwrap();
    let rep = check_t(&l, &w, 7);
    if !rep.passed() {
        return outcome(false, format!("T suite: {:?}", rep.failures()));
    }
    let wv = |a: &str| matches!(rep.get(a), Some(Verdict::WindowVerified { window: 2, .. }));
    if !(wv("T3") && wv("T4")) {
        return outcome(false, "T3/T4 not reported as window-verified at w=2");
    }
    if rep.nullity != Some(2) {
        return outcome(false, format!("nullity {:?}", rep.nullity));
    }
    let tame = tameness_check(&l, &w).unwrap();
    if !tame.tame() {
        return outcome(false, format!("tameness: {:?}", tame.verdict));
    }
    notes.push("T1-T6 on affinization (T3/T4 window-verified, nullity 2)".into());
    notes.push("tame".into());
    outcome(true, notes.join("; "))
}

fn c8_ears() -> Outcome {
    let l = affinize(derived(2, q12()));
    let w = decompose_window(&l, 2).unwrap();
    let set = RootSet::from_window(&w);
    let rep = check_ears_axioms(&set);
    if !rep.passed() || !rep.reduced {
        return outcome(false, format!("{:?}", rep.results));
    }
    let s = support_sets(&set);
    let full: Vec<Vec<i64>> = lattice_box(2, 2).into_iter().map(|v| v.to_vec()).collect();
    let mut sorted = full.clone();
    sorted.sort();
    let ok = s.short == sorted && s.long == sorted && s.extra_long.is_none() && s.partition && s.containment && s.span_identity;
    outcome(ok, format!("R1-R6 pass, reduced; S = L = all {} window points; partition, containment and span identity hold", s.short.len()))
}

fn c9_root_strings() -> Outcome {
    let l = affinize(derived(2, q12()));
    let w = decompose_window(&l, 2).unwrap();
    let set = RootSet::from_window(&w);
    let strings = interior_strings(&set, 5);
    for (b, a, res) in &strings {
        let c = int(2) * w.pairing(b, a) / w.norm(a);
        match res {
            Ok((d, u)) if int(d - u) == c && c.abs() <= int(4) => {}
            other => return outcome(false, format!("beta={b}, alpha={a}: {other:?}, Cartan integer {c}")),
        }
    }
    outcome(!strings.is_empty(), format!("{} interior pairs: d - u = Cartan integer, |.| <= 4", strings.len()))
}

fn c10_theta() -> Outcome {
    let sp4 = ealie::constructions::ClassicalMatrixAlgebra::new(RootType::C, 2, &[]).unwrap();
    let w = decompose_window(&sp4, 0).unwrap();
    let gram = w.weight_gram();
    let mut count = 0;
    for a in w.non_isotropic() {
        let tr = sl2_triple(&sp4, &w, &w.basis(a)[0], a).unwrap();
        for b in w.roots() {
            let image: Vec<Vector> = w
                .basis(b)
                .iter()
                .map(|x| theta_automorphism(&sp4, &tr.e, &tr.f, &int(1), x).unwrap())
                .collect();
            let target = Root::new(reflect_integral(&a.finite, &b.finite, &gram).unwrap().unwrap(), &[]);
            let lhs = Span::from_vectors(image.iter());
            let rhs = Span::from_vectors(w.basis(&target).iter());
            if !lhs.equals(&rhs) {
                return outcome(false, format!("theta_{a}(1) L{b} != L{target}"));
            }
            count += 1;
        }
    }
    outcome(count == 72, format!("theta_a(1) L_b = L_(w_a b) for 8 alpha x 9 beta = {count} pairs"))
}

fn c11_core() -> Outcome {
    let g = derived(2, q12());
    let l = affinize(g.clone());
    let w = decompose_window(&l, 2).unwrap();
    let data = core_and_center_window(&l, &w, l.margin()).unwrap();
    let cs: Vec<Vector> = (0..2).map(|i| Vector::unit(BasisKey::Central(i))).collect();
    for r in w.roots() {
        let mut want: Vec<Vector> = g.graded_piece(&r.finite, &r.lattice);
        let at_zero = r.is_isotropic() && r.lattice.iter().all(|&x| x == 0);
        if at_zero {
            want.extend(cs.clone());
        }
        let core = Span::from_vectors(data.core[r].iter());
        if !core.equals(&Span::from_vectors(want.iter())) {
            return outcome(false, format!("core at {r} has dim {}, expected G + C of dim {}", core.rank(), want.len()));
        }
        let center = Span::from_vectors(data.center[r].iter());
        let want_center = if at_zero { Span::from_vectors(cs.iter()) } else { Span::new() };
        if !center.equals(&want_center) {
            return outcome(false, format!("center of the core at {r} has dim {}", center.rank()));
        }
        if !r.is_isotropic() && center.rank() > 0 {
            return outcome(false, format!("center meets nonisotropic L{r}"));
        }
    }
    outcome(true, "core = G + C and Z(core) = C at every window root; center inside isotropic root spaces")
}

fn c12_extension() -> Outcome {
    let alg = build_extension_example(RootType::C, 2, &[2, 3]).unwrap();
    let w = decompose_window(&alg, 0).unwrap();
    let rep = check_t(&alg, &w, 12);
    if !rep.passed() || rep.nullity != Some(0) {
        return outcome(false, format!("{:?} nullity {:?}", rep.failures(), rep.nullity));
    }
    let iso: Vec<&Root> = w.isotropic().collect();
    if iso.len() != 1 {
        return outcome(false, "isotropic roots other than 0");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for a in w.non_isotropic() {
        if w.dim(a) != 4 {
            return outcome(false, format!("dim L{a} = {}", w.dim(a)));
        }
        let basis = w.basis(a);
        let mut probes = basis.to_vec();
        for _ in 0..3 {
            let c: Vec<Rational> = basis.iter().map(|_| random_rational(&mut rng)).collect();
            let v = Vector::linear_combination(&c, basis);
            if !v.is_zero() {
                probes.push(v);
            }
        }
        for x in probes {
            match sl2_search(&alg, &w, &x, a) {
                Ok(y) if alg.bracket(&x, &y) == w.t_alpha(a) => {}
                _ => return outcome(false, format!("no partner for {x} in L{a}")),
            }
        }
    }
    outcome(true, "T1-T6 pass, nullity 0, R^0 = {0}, dim L_a = 4, [x, y] = t_a solvable for all probes")
}

fn c13_jacobi() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let b = Arc::new(QuantumTorusAlgebra::new(2, q12(), SkewVariant::Full).unwrap());
    let wb = decompose_window(b.as_ref(), 2).unwrap();
    let elems = basis_elements(&wb);
    for _ in 0..200 {
        let [x, y, z] = [0, 1, 2].map(|_| elems.choose(&mut rng).unwrap().1.clone());
        if !jacobiator(b.as_ref(), &x, &y, &z).is_zero() {
            return outcome(false, format!("Jacobi fails in B on {x}, {y}, {z}"));
        }
    }
    let l = affinize(derived(2, q12()));
    let wl = decompose_window(&l, 2).unwrap();
    let elems = basis_elements(&wl);
    let extra: Vec<Vector> = (0..2)
        .flat_map(|i| [Vector::unit(BasisKey::Central(i)), Vector::unit(BasisKey::Derivation(i))])
        .collect();
    let mut touching = 0;
    for n in 0..200 {
        let mut t = [0, 1, 2].map(|_| elems.choose(&mut rng).unwrap().1.clone());
        if n % 2 == 0 {
            t[n % 3] = extra.choose(&mut rng).unwrap().clone();
        }
        touching += t.iter().any(|v| v.keys().any(|k| matches!(k, BasisKey::Central(_) | BasisKey::Derivation(_)))) as usize;
        if !jacobiator(&l, &t[0], &t[1], &t[2]).is_zero() {
            return outcome(false, format!("Jacobi fails in the affinization on {:?}", t));
        }
    }
    outcome(true, format!("200 triples in B and 200 in the affinization ({touching} touching C or D): all zero"))
}

fn c14_zero_cases() -> Outcome {
    let q = q12();
    let mut by_case: BTreeMap<String, (usize, BTreeMap<usize, usize>)> = BTreeMap::new();
    for gamma in lattice_box(2, 2) {
        let spanned = zero_root_component(2, &q, &gamma, 3).unwrap();
        let closed = zero_root_closed_form(2, &q, &gamma);
        let a = Span::from_vectors(spanned.basis.iter());
        let b = Span::from_vectors(closed.iter());
        if !a.equals(&b) {
            return outcome(false, format!("gamma={:?}: spanned dim {} vs closed form {}", gamma.as_slice(), a.rank(), b.rank()));
        }
        let case = zero_case(&q, &gamma);
        let e = by_case.entry(format!("{case:?}")).or_default();
        e.0 += 1;
        *e.1.entry(a.rank()).or_default() += 1;
    }
    let even = by_case.keys().any(|k| k.starts_with("Even"));
    let odd = by_case.keys().any(|k| k.starts_with("Odd"));
    let _ = ZeroCase::EvenWithOdd;
    outcome(even && odd, format!("25 degrees agree with the case table; {:?}", by_case))
}

fn main() {
    let criteria: Vec<(usize, &str, Duration, fn() -> Outcome)> = vec![
        (1, "root multiplicities", Duration::from_secs(30), c1_multiplicities),
        (2, "cocycle identities", Duration::from_secs(1), c2_cocycles),
        (3, "involution identities", Duration::from_secs(5), c3_involution),
        (4, "A-type bracket closed form", Duration::from_secs(10), c4_bracket_closed_form),
        (5, "Serre relations", Duration::from_secs(20), c5_serre),
        (6, "form identities and gradedness", Duration::from_secs(60), c6_form),
        (7, "D, T and tameness suites", Duration::from_secs(120), c7_suites),
        (8, "EARS axioms and support sets", Duration::from_secs(60), c8_ears),
        (9, "root strings", Duration::from_secs(60), c9_root_strings),
        (10, "reflection automorphisms", Duration::from_secs(60), c10_theta),
        (11, "core and center", Duration::from_secs(60), c11_core),
        (12, "nullity-zero extension", Duration::from_secs(30), c12_extension),
        (13, "Jacobi identity", Duration::from_secs(60), c13_jacobi),
        (14, "zero-weight case table", Duration::from_secs(60), c14_zero_cases),
    ];
    let mut failed = 0;
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| outcome(false, "panicked"));
        let elapsed = start.elapsed();
        let ok = res.ok && elapsed <= limit;
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {n:>2} {}: {name} [{:.2?} / limit {:?}] {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed,
            limit,
            res.detail
        );
    }
    println!("acceptance: {} of 14 criteria passed", 14 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
