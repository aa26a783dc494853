use std::sync::Arc;

use num_traits::Zero;

use ealie::algebra::{jacobiator, GradedLieAlgebra, ToralBasis};
use ealie::axioms::{check_t, serre_check_at, Verdict};
use ealie::constructions::{
    affinize, build_extension_by_cocycle, ClassicalMatrixAlgebra, Derivation, ExtensionSpec,
};
use ealie::decomp::{decompose_window, Root};
use ealie::exact_arith::{int, Rational};
use ealie::finroot::RootType;
use ealie::linalg::{BasisKey, LatticeVec, Matrix, Vector};
use ealie::matlie::{QuantumTorusAlgebra, SkewVariant};
use ealie::quantum_torus::SignMatrix;
use ealie::Error;

fn torus(nu: usize, upper: &[i64]) -> Arc<dyn GradedLieAlgebra> {
    Arc::new(QuantumTorusAlgebra::new(2, SignMatrix::from_upper(nu, upper).unwrap(), SkewVariant::Derived).unwrap())
}

#[test]
fn affinization_of_nullity_zero_changes_nothing() {
    let sp4: Arc<dyn GradedLieAlgebra> = Arc::new(ClassicalMatrixAlgebra::new(RootType::C, 2, &[]).unwrap());
    let l = affinize(sp4.clone());
    let a = decompose_window(sp4.as_ref(), 0).unwrap();
    let b = decompose_window(&l, 0).unwrap();
    assert_eq!(a.len(), b.len());
    for r in a.roots() {
        assert_eq!(a.dim(r), b.dim(r));
    }
    assert_eq!(l.toral().len(), sp4.toral().len());
}

#[test]
fn affinization_zero_piece_and_t_delta() {
    let g = torus(2, &[-1]);
    let l = affinize(g.clone());
    let w = decompose_window(&l, 1).unwrap();
    let zero = Root::new(vec![0, 0], &[0, 0]);
    assert_eq!(w.dim(&zero), g.graded_piece(&[0, 0], &[0, 0]).len() + 4);
    for i in 0..2 {
        let mut delta = vec![0; 2];
        delta[i] = 1;
        let t = w.t_alpha(&Root::new(vec![0, 0], &delta));
        assert_eq!(t, Vector::unit(BasisKey::Central(i as u16)), "t_delta_{i}");
    }
}

#[test]
fn affinization_cocycle_term() {
    let g = torus(1, &[]);
    let l = affinize(g.clone());
    let x = g.graded_piece(&[1, 1], &[1])[0].clone();
    let y = g.graded_piece(&[-1, -1], &[-1]).iter().find(|y| !g.form(&x, y).is_zero()).unwrap().clone();
    let br = l.bracket(&x, &y);
    let c = br.get(&BasisKey::Central(0));
    assert_eq!(c, g.form(&x, &y));
    let d = Vector::unit(BasisKey::Derivation(0));
    assert_eq!(l.bracket(&d, &x), x);
    assert_eq!(l.bracket(&d, &y), y.neg());
    assert!(jacobiator(&l, &d, &x, &y).is_zero());
    assert_eq!(l.form(&d, &Vector::unit(BasisKey::Central(0))), int(1));
}

/// An algebra identical to its inner one except that the form vanishes.
struct ZeroForm(Arc<dyn GradedLieAlgebra>);

impl GradedLieAlgebra for ZeroForm {
    fn label(&self) -> String {
        format!("zero-form({})", self.0.label())
    }
    fn root_type(&self) -> (RootType, usize) {
        self.0.root_type()
    }
    fn weight_len(&self) -> usize {
        self.0.weight_len()
    }
    fn nu(&self) -> usize {
        self.0.nu()
    }
    fn finite_weights(&self) -> Vec<Vec<i64>> {
        self.0.finite_weights()
    }
    fn graded_piece(&self, finite: &[i64], sigma: &[i64]) -> Vec<Vector> {
        self.0.graded_piece(finite, sigma)
    }
    fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        self.0.bracket(x, y)
    }
    fn form(&self, _: &Vector, _: &Vector) -> Rational {
        int(0)
    }
    fn toral(&self) -> ToralBasis {
        self.0.toral()
    }
    fn key_degree(&self, key: &BasisKey) -> LatticeVec {
        self.0.key_degree(key)
    }
}

#[test]
fn vanishing_form_is_caught() {
    let alg = ZeroForm(Arc::new(ClassicalMatrixAlgebra::new(RootType::C, 2, &[]).unwrap()));
    match decompose_window(&alg, 0) {
        Err(Error::DegenerateToralForm) => {}
        Err(e) => panic!("unexpected error {e}"),
        Ok(w) => {
            let rep = check_t(&alg, &w, 0);
            assert!(matches!(rep.get("T1"), Some(Verdict::Fail { .. })));
        }
    }
}

#[test]
fn semidirect_product_with_degree_derivation() {
    let g = torus(1, &[]);
    let mut spec = ExtensionSpec::central(g.clone(), 1);
    spec.rho = vec![Derivation::Degree(0)];
    spec.form = Matrix::zeros(1, 1);
    spec.toral_part = vec![];
    let ext = build_extension_by_cocycle(spec, 1).unwrap();
    let x = g.graded_piece(&[1, -1], &[1])[0].clone();
    let d = Vector::unit(BasisKey::Complement(0));
    assert_eq!(ext.bracket(&d, &x), x);
    let y = g.graded_piece(&[-1, 1], &[-1])[0].clone();
    assert!(jacobiator(&ext, &d, &x, &y).is_zero());
}

#[test]
fn cocycle_violations_are_rejected() {
    let g = torus(1, &[]);
    let h = g.toral().finite[0].clone();
    // tau not antisymmetric
    let mut spec = ExtensionSpec::central(g.clone(), 2);
    spec.tau[0][1] = h.clone();
    assert!(matches!(build_extension_by_cocycle(spec, 1), Err(Error::CocycleViolation(_))));
    // antisymmetric but ad tau does not match the commutator of rho
    let mut spec = ExtensionSpec::central(g.clone(), 2);
    spec.tau[0][1] = h.clone();
    spec.tau[1][0] = h.neg();
    assert!(matches!(build_extension_by_cocycle(spec, 1), Err(Error::CocycleViolation(_))));
    // asymmetric form
    let mut spec = ExtensionSpec::central(g, 2);
    spec.form.set(0, 1, int(1));
    assert!(matches!(build_extension_by_cocycle(spec, 1), Err(Error::CocycleViolation(_))));
}

#[test]
fn classical_dimensions_and_jacobi() {
    for (t, ell, dim) in [(RootType::B, 2, 10), (RootType::C, 2, 10), (RootType::D, 4, 28), (RootType::C, 3, 21)] {
        let alg = ClassicalMatrixAlgebra::new(t, ell, &[]).unwrap();
        let w = decompose_window(&alg, 0).unwrap();
        let total: usize = w.pieces().map(|p| p.dim()).sum();
        assert_eq!(total, dim, "{t}{ell}");
        let basis: Vec<Vector> = w.pieces().flat_map(|p| p.basis.clone()).collect();
        for (i, x) in basis.iter().enumerate().step_by(3) {
            for y in basis.iter().skip(i).step_by(5) {
                for z in basis.iter().step_by(7) {
                    assert!(jacobiator(&alg, x, y, z).is_zero());
                }
            }
        }
    }
}

#[test]
fn serre_with_wrong_degree_preimage() {
    let g = torus(1, &[]);
    let w = decompose_window(g.as_ref(), 1).unwrap();
    let pre = [Root::new(vec![1, -1], &[1]), Root::new(vec![0, 2], &[0])];
    let rep = serre_check_at(g.as_ref(), &w, &pre).unwrap();
    assert!(!rep.degree_zero);
    assert!(!rep.passed());
    let pre = [Root::new(vec![1, -1], &[0]), Root::new(vec![0, 2], &[0])];
    assert!(serre_check_at(g.as_ref(), &w, &pre).unwrap().passed());
}
