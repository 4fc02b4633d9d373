use super::*;
use crate::exact::{ComplexRational, Polynomial};
use crate::polyfam::{bi_eigenvalue, bi_polynomials, DahaParameterSet, ParameterSet, RealParameterQuad};

type Op = DifferenceOperator;

fn c(s: &str) -> ComplexRational {
    ComplexRational::parse(s).unwrap()
}

fn generic() -> ParameterSet {
    ParameterSet::new(c("1/3+1/2i"), c("-2/7"), c("5/11-i"), c("1/5+2/3i"))
}

fn zero_daha() -> DahaParameterSet {
    DahaParameterSet::new(c("1/4"), c("1/4"), c("0"), c("0"))
}

#[test]
fn l_on_low_degrees() {
    let p = generic();
    let l = build_l(&p);
    assert_eq!(l.apply(&Polynomial::one()).unwrap(), Polynomial::constant(&p.sum() + &c("3/2")));
    let l0 = build_l(&ParameterSet::zero());
    assert_eq!(l0.apply(&Polynomial::x()).unwrap(), Polynomial::x().scale(&c("-5/2")));
}

#[test]
fn m_on_low_degrees() {
    let p = generic();
    assert_eq!(build_m(&p).apply(&Polynomial::one()).unwrap(), Polynomial::constant(&p.sum() + &c("3/2")));
    let m0 = build_m(&ParameterSet::zero());
    assert_eq!(m0.apply(&Polynomial::x()).unwrap(), Polynomial::x().scale(&c("-5/2")));
}

#[test]
fn eigen_equations() {
    for p in [ParameterSet::zero(), generic()] {
        assert!(verify_bi_eigen(16, &p).unwrap().pass);
        assert!(verify_q_eigen(12, &p).unwrap().pass);
    }
}

#[test]
fn l_and_m_do_not_raise_degree() {
    check_degree_nonincreasing(&build_l(&generic()), 12).unwrap();
    check_degree_nonincreasing(&build_m(&generic()), 12).unwrap();
}

#[test]
fn structure_constants_at_zero() {
    let sc = structure_constants(&ParameterSet::zero());
    assert_eq!(sc.omega(), [c("1/2"), c("0"), c("0")]);
    assert_eq!(sc.alpha(), [c("-1/2"), c("0"), c("0")]);
    assert_eq!(casimir_value(&ParameterSet::zero()), c("1/4"));
}

#[test]
fn conjugate_pairing_gives_real_alpha() {
    let p = RealParameterQuad::from_ratios([(1, 3), (-3, 4), (2, 5), (7, 2)]).to_parameter_set();
    let sc = structure_constants(&p);
    assert!(sc.alpha().iter().all(ComplexRational::is_real));
    assert!(!sc.omega2.is_real());
}

#[test]
fn compact_algebra() {
    assert!(verify_bi_algebra(&ParameterSet::zero(), 14).unwrap().pass);
    let report = verify_bi_algebra(&generic(), 10).unwrap();
    assert!(report.pass, "{report:?}");
}

#[test]
fn perturbed_omega_fails_on_every_monomial() {
    let p = generic();
    let mut omega = structure_constants(&p).omega();
    omega[0] = &omega[0] + &c("1");
    let l = build_l(&p);
    let report = verify_anticommutator_algebra(&l, &Op::x(), &omega, AlgebraForm::Compact, 6).unwrap();
    assert!(!report.pass);
    let rel = &report.relations[0];
    assert_eq!(rel.first_failure.as_ref().unwrap().monomial_degree, 0);
    let residual = Op::anticommutator(&Op::x(), &third_generator(&l, &Op::x(), &omega[2]));
    let rhs = &l + &Op::scalar(omega[0].clone());
    for k in 0..=6 {
        let r = &residual.apply(&Polynomial::monomial(k)).unwrap() - &rhs.apply(&Polynomial::monomial(k)).unwrap();
        assert!(!r.is_zero(), "degree {k}");
    }
}

#[test]
fn noncompact_algebra() {
    assert!(verify_nc_algebra(&ParameterSet::zero(), 12).unwrap().pass);
    let p = RealParameterQuad::from_ratios([(1, 2); 4]).to_parameter_set();
    assert!(verify_nc_algebra(&p, 10).unwrap().pass);
    assert!(verify_nc_algebra(&generic(), 8).unwrap().pass);
}

#[test]
fn noncompact_generators_fail_the_compact_form() {
    let p = RealParameterQuad::from_ratios([(1, 2); 4]).to_parameter_set();
    let alpha = structure_constants(&p).alpha();
    let rep = verify_anticommutator_algebra(&build_m(&p), &Op::x(), &alpha, AlgebraForm::Compact, 6).unwrap();
    assert!(!rep.pass);
    assert!(!rep.relations[0].pass);
}

#[test]
fn casimirs() {
    for p in [ParameterSet::zero(), generic()] {
        let q = verify_casimir(&p, 8, AlgebraForm::Compact).unwrap();
        let z = verify_casimir(&p, 8, AlgebraForm::NonCompact).unwrap();
        assert!(q.realized_ok && z.realized_ok, "{q:?} {z:?}");
        assert_eq!(q.expected, z.expected);
    }
}

#[test]
fn daha_generators() {
    let t = DahaParameterSet::new(c("1/3+i"), c("-2/9"), c("3/4"), c("1/8-i"));
    let g = build_daha_generators(&t);
    assert_eq!(g.t0.apply(&Polynomial::one()).unwrap(), Polynomial::constant(t.t0.clone()));
    assert_eq!(g.t1.apply(&Polynomial::one()).unwrap(), Polynomial::constant(t.t1.clone()));
    let report = verify_daha_relations(&t, 12).unwrap();
    assert!(report.pass, "{report:?}");
    assert!(verify_daha_relations(&zero_daha(), 12).unwrap().pass);
}

#[test]
fn wilson_eigen() {
    let report = verify_nonsym_wilson_eigen(10, &zero_daha()).unwrap();
    assert!(report.pass);
    assert_eq!(report.checks[0].eigenvalue, c("1/2"));
    let t = generic().to_daha();
    assert!(verify_nonsym_wilson_eigen(12, &t).unwrap().pass);
}

#[test]
fn perturbed_wilson_eigenvalue_fails() {
    let t = zero_daha();
    let g = build_daha_generators(&t);
    let family = crate::polyfam::nonsym_wilson_family(5, &t).unwrap();
    let mut eig: Vec<_> = (0..=5).map(|n| crate::polyfam::wilson_eigenvalue(n, &t)).collect();
    eig[3] = &eig[3] + &c("1/1000");
    let report = verify_eigenpairs("perturbed", &(&g.t0 + &g.t1), &family, &eig).unwrap();
    assert!(!report.pass);
    assert_eq!(report.checks.iter().filter(|c| !c.pass).map(|c| c.n).collect::<Vec<_>>(), vec![3]);
}

#[test]
fn forward_isomorphism() {
    let report = verify_iso_forward(&ParameterSet::zero(), 10).unwrap();
    assert!(report.pass, "{report:?}");
    let values = report.central_values.unwrap();
    assert_eq!(values.t0, c("1/16"));
    assert_eq!(report.casimir_value, Some(c("1/4")));
    assert_eq!(report.matches_param_map, Some(true));
    let report = verify_iso_forward(&generic(), 8).unwrap();
    assert!(report.pass, "{report:?}");
}

#[test]
fn forward_isomorphism_rejects_wrong_constants() {
    let p = generic();
    let mut sc = structure_constants(&p);
    let k1 = build_l(&p);
    let k3 = third_generator(&k1, &Op::x(), &sc.omega3);
    sc.omega2 = &sc.omega2 + &c("1");
    let report = iso_forward(&k1, &Op::x(), &k3, &sc, 4).unwrap();
    assert!(!report.pass && !report.algebra.pass);
}

#[test]
fn inverse_isomorphism() {
    let report = iso_inverse(&zero_daha(), 10).unwrap();
    assert!(report.pass, "{report:?}");
    assert_eq!(report.casimir_value, c("1/4"));
    let t = DahaParameterSet::new(c("1/3+i"), c("-2/9"), c("3/4"), c("1/8-i"));
    assert!(iso_inverse(&t, 8).unwrap().pass);
}

#[test]
fn wilson_to_bi_operator_transform() {
    assert!(verify_prop1_operator_transform(&ParameterSet::zero(), 10).unwrap().pass);
    let p = generic();
    assert!(verify_prop1_operator_transform(&p, 10).unwrap().pass);
    // on the family itself both sides give λ_n B_n
    let g = build_daha_generators(&p.to_daha());
    let conj = Op::sum(vec![g.t0.scaled(c("2")), g.t1.scaled(c("2")), Op::scalar(c("1/2"))]);
    for (n, b) in bi_polynomials(10, &p).unwrap().iter().enumerate() {
        let image = conj.apply(&b.affine_substitute(&c("-2"), &c("1/2"))).unwrap();
        let back = image.affine_substitute(&c("-1/2"), &c("1/4"));
        assert_eq!(back, b.scale(&bi_eigenvalue(n, &p)));
    }
}

/// L with `2x + 1` in the second denominator and a plus sign; not polynomial-preserving.
fn flipped_denominator_variant(p: &ParameterSet) -> Op {
    let lin = |v: &ComplexRational, s: &str| Polynomial::linear(&(&c("2") * v).scale(&c(s).re) + &c(s), c("1"));
    let up = reflection_difference_term(
        &lin(&p.c, "1") * &lin(&p.d, "1"),
        Polynomial::linear(c("1"), c("2")),
        Op::shift_plus(),
    )
    .unwrap();
    let down = reflection_difference_term(
        &lin(&p.a, "-1") * &lin(&p.b, "-1"),
        Polynomial::linear(c("1"), c("2")),
        Op::shift_minus(),
    )
    .unwrap();
    Op::sum(vec![up, down, Op::scalar(&p.sum() + &c("3/2"))])
}

#[test]
fn flipped_denominator_variant_is_not_l() {
    let p = ParameterSet::zero();
    // with 2x + 1 twice the combined term is no longer polynomial
    let err = verify_prop1_with(&flipped_denominator_variant(&p), &p, 6).unwrap_err();
    assert_eq!(err.kind(), "OperatorNotPolynomialPreserving");
}
