//! The concrete operators `L`, `M`, `T₀`, `T₁`, `U₀`, `U₁` and the identities they satisfy.

use rayon::prelude::*;
use serde::Serialize;

use super::verify::{
    check_equal, check_scalar, verify_eigenpairs, EigenReport, Failure, IdentityReport, RelationReport,
};
use super::DifferenceOperator;
use crate::error::{Error, Result};
use crate::exact::{ComplexRational, Polynomial};
use crate::polyfam::{
    bi_eigenvalue, bi_polynomials, nonsym_wilson_family, q_polynomials, wilson_eigenvalue, DahaParameterSet,
    ParameterSet,
};

type Op = DifferenceOperator;

fn cr(n: i64) -> ComplexRational {
    ComplexRational::from_int(n)
}

fn q(n: i64, d: i64) -> ComplexRational {
    ComplexRational::ratio(n, d)
}

fn lin(c0: ComplexRational, c1: ComplexRational) -> Polynomial {
    Polynomial::linear(c0, c1)
}

/// `(num/den) · (shift∘R − 𝟙)`; pass the identity as `shift` for `R − 𝟙`.
pub fn reflection_difference_term(num: Polynomial, den: Polynomial, shift: Op) -> Result<Op> {
    let coefficient = Op::mul_rational(num, den)?;
    let diff = &(&shift * &Op::reflection()) - &Op::identity();
    Ok(&coefficient * &diff)
}

/// The Bannai–Ito operator `L` in the variable `x`.
pub fn build_l(p: &ParameterSet) -> Op {
    let one = ComplexRational::one();
    let two = cr(2);
    let f = |v: &ComplexRational, sign: i64| lin(&(&two * v).scale(&sign.into()) + &cr(sign), one.clone());
    // (x + 2c + 1)(x + 2d + 1) / (2x + 1)
    let up = reflection_difference_term(&f(&p.c, 1) * &f(&p.d, 1), lin(cr(1), cr(2)), Op::shift_plus());
    // (x − 2a − 1)(x − 2b − 1) / (2x − 1)
    let down = reflection_difference_term(&f(&p.a, -1) * &f(&p.b, -1), lin(cr(-1), cr(2)), Op::shift_minus());
    let constant = &p.sum() + &q(3, 2);
    Op::sum(vec![up.expect("nonzero denominator"), -down.expect("nonzero denominator"), Op::scalar(constant)])
        .named("L")
}

/// The operator `M` with imaginary shifts, for which `Q_n` are eigenfunctions.
pub fn build_m(p: &ParameterSet) -> Op {
    let i = ComplexRational::i();
    let two = cr(2);
    let one = cr(1);
    // 2v + 1 ± i x
    let f = |v: &ComplexRational, sign: i64| lin(&(&two * v) + &one, i.scale(&sign.into()));
    let plus =
        reflection_difference_term(&f(&p.a, -1) * &f(&p.b, -1), lin(one.clone(), -(&two * &i)), Op::imag_shift_plus());
    let minus =
        reflection_difference_term(&f(&p.c, 1) * &f(&p.d, 1), lin(one.clone(), &two * &i), Op::imag_shift_minus());
    Op::sum(vec![
        plus.expect("nonzero denominator"),
        minus.expect("nonzero denominator"),
        Op::scalar(&p.sum() + &q(3, 2)),
    ])
    .named("M")
}

/// `T₀`, `T₁`, `U₀`, `U₁` acting on polynomials in `z`.
#[derive(Clone, Debug)]
pub struct DahaGenerators {
    pub t0: Op,
    pub t1: Op,
    pub u0: Op,
    pub u1: Op,
}

pub fn build_daha_generators(t: &DahaParameterSet) -> DahaGenerators {
    let h = q(1, 2);
    let minus_one = cr(-1);
    // (t0 ± u0 − z + 1/2) / (1 − 2z)
    let f0 = |u: &ComplexRational| lin(&(&t.t0 + u) + &h, minus_one.clone());
    let t0 = reflection_difference_term(&f0(&t.u0) * &f0(&-t.u0.clone()), lin(cr(1), cr(-2)), Op::shift_minus())
        .expect("nonzero denominator");
    let t0 = (&t0 + &Op::scalar(t.t0.clone())).named("T0");
    // (t1 ± u1 + z) / (2z)
    let f1 = |u: &ComplexRational| lin(&t.t1 + u, cr(1));
    let t1 = reflection_difference_term(&f1(&t.u1) * &f1(&-t.u1.clone()), lin(cr(0), cr(2)), Op::identity())
        .expect("nonzero denominator");
    let t1 = (&t1 + &Op::scalar(t.t1.clone())).named("T1");
    let z = Op::x();
    let u0 = Op::sum(vec![-&t0, z.clone(), Op::scalar(-h.clone())]).named("U0");
    let u1 = Op::sum(vec![-&t1, -&z]).named("U1");
    DahaGenerators { t0, t1, u0, u1 }
}

/// `ω₁, ω₂, ω₃` of the compact algebra and `α₁, α₂, α₃` of the non-compact one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureConstants {
    pub omega1: ComplexRational,
    pub omega2: ComplexRational,
    pub omega3: ComplexRational,
    pub alpha1: ComplexRational,
    pub alpha2: ComplexRational,
    pub alpha3: ComplexRational,
}

impl StructureConstants {
    pub fn omega(&self) -> [ComplexRational; 3] {
        [self.omega1.clone(), self.omega2.clone(), self.omega3.clone()]
    }

    pub fn alpha(&self) -> [ComplexRational; 3] {
        [self.alpha1.clone(), self.alpha2.clone(), self.alpha3.clone()]
    }
}

pub fn structure_constants(p: &ParameterSet) -> StructureConstants {
    let (a, b, c, d) = (&p.a, &p.b, &p.c, &p.d);
    let sq = |v: &ComplexRational| v * v;
    let ab = a * b;
    let cd = c * d;
    let lin_part = &(a + b) - &(c + d);
    let omega1 = &(&cr(4) * &(&ab + &cd)) + &(&p.sum() + &q(1, 2));
    let omega2 = &(&cr(2) * &(&(&sq(a) + &sq(b)) - &(&sq(c) + &sq(d)))) + &lin_part;
    let omega3 = &(&cr(4) * &(&ab - &cd)) + &lin_part;
    let minus_i = -ComplexRational::i();
    StructureConstants {
        alpha1: -omega1.clone(),
        alpha2: &minus_i * &omega2,
        alpha3: &minus_i * &omega3,
        omega1,
        omega2,
        omega3,
    }
}

/// `2(a² + b² + c² + d²) + a + b + c + d + 1/4`.
pub fn casimir_value(p: &ParameterSet) -> ComplexRational {
    let squares = [&p.a, &p.b, &p.c, &p.d].iter().fold(ComplexRational::zero(), |acc, v| &acc + &(*v * *v));
    &(&(&cr(2) * &squares) + &p.sum()) + &q(1, 4)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraForm {
    /// `{K₂,K₃} = K₁ + ω₁`, `{K₃,K₁} = K₂ + ω₂`.
    Compact,
    /// `{A₂,A₃} = −A₁ + α₁`, `{A₃,A₁} = A₂ + α₂`.
    NonCompact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub form: AlgebraForm,
    pub constants: [ComplexRational; 3],
    pub pass: bool,
    pub relations: Vec<RelationReport>,
}

/// The third generator `{g1, g2} − c₃`.
pub fn third_generator(g1: &Op, g2: &Op, c3: &ComplexRational) -> Op {
    (&Op::anticommutator(g1, g2) - &Op::scalar(c3.clone())).named("G3")
}

/// Defines the third generator from the first relation and checks the other two.
pub fn verify_anticommutator_algebra(
    g1: &Op,
    g2: &Op,
    constants: &[ComplexRational; 3],
    form: AlgebraForm,
    d: usize,
) -> Result<AlgebraReport> {
    let g3 = third_generator(g1, g2, &constants[2]);
    let (sign, name) = match form {
        AlgebraForm::Compact => (cr(1), "{G2,G3} = G1 + c1"),
        AlgebraForm::NonCompact => (cr(-1), "{G2,G3} = -G1 + c1"),
    };
    let rhs1 = &g1.scaled(sign) + &Op::scalar(constants[0].clone());
    let rel1 = check_equal(name, &Op::anticommutator(g2, &g3), &rhs1, d)?;
    let rhs2 = g2 + &Op::scalar(constants[1].clone());
    let rel2 = check_equal("{G3,G1} = G2 + c2", &Op::anticommutator(&g3, g1), &rhs2, d)?;
    let relations = vec![rel1, rel2];
    Ok(AlgebraReport { form, constants: constants.clone(), pass: relations.iter().all(|r| r.pass), relations })
}

/// `K₁ = L`, `K₂ = X` with the compact constants `ω`.
pub fn verify_bi_algebra(p: &ParameterSet, d: usize) -> Result<AlgebraReport> {
    verify_anticommutator_algebra(&build_l(p), &Op::x(), &structure_constants(p).omega(), AlgebraForm::Compact, d)
}

/// `A₁ = M`, `A₂ = X` with the non-compact constants `α`.
pub fn verify_nc_algebra(p: &ParameterSet, d: usize) -> Result<AlgebraReport> {
    verify_anticommutator_algebra(&build_m(p), &Op::x(), &structure_constants(p).alpha(), AlgebraForm::NonCompact, d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CasimirReport {
    pub form: AlgebraForm,
    pub expected: ComplexRational,
    pub realized_ok: bool,
    pub max_degree_checked: usize,
    pub first_failure: Option<Failure>,
}

/// `K₁² + K₂² + K₃²` (compact) or `A₁² − A₂² − A₃²` (non-compact) against [`casimir_value`].
pub fn verify_casimir(p: &ParameterSet, d: usize, form: AlgebraForm) -> Result<CasimirReport> {
    let sc = structure_constants(p);
    let x = Op::x();
    let casimir = match form {
        AlgebraForm::Compact => {
            let k1 = build_l(p);
            let k3 = third_generator(&k1, &x, &sc.omega3);
            Op::sum(vec![k1.squared(), x.squared(), k3.squared()])
        }
        AlgebraForm::NonCompact => {
            let a1 = build_m(p);
            let a3 = third_generator(&a1, &x, &sc.alpha3);
            Op::sum(vec![a1.squared(), -x.squared(), -a3.squared()])
        }
    };
    let expected = casimir_value(p);
    let rel = check_scalar("casimir", &casimir, &expected, d)?;
    Ok(CasimirReport { form, expected, realized_ok: rel.pass, max_degree_checked: d, first_failure: rel.first_failure })
}

/// `T_i² = t_i²`, `U_i² = u_i²` and `T₀ + T₁ + U₀ + U₁ = −1/2`.
pub fn verify_daha_relations(t: &DahaParameterSet, d: usize) -> Result<IdentityReport> {
    let g = build_daha_generators(t);
    let sq = |v: &ComplexRational| v * v;
    let sum = Op::sum(vec![g.t0.clone(), g.t1.clone(), g.u0.clone(), g.u1.clone()]);
    Ok(IdentityReport::new(vec![
        check_scalar("T0^2 = t0^2", &g.t0.squared(), &sq(&t.t0), d)?,
        check_scalar("T1^2 = t1^2", &g.t1.squared(), &sq(&t.t1), d)?,
        check_scalar("U0^2 = u0^2", &g.u0.squared(), &sq(&t.u0), d)?,
        check_scalar("U1^2 = u1^2", &g.u1.squared(), &sq(&t.u1), d)?,
        check_scalar("T0 + T1 + U0 + U1 = -1/2", &sum, &q(-1, 2), d)?,
    ]))
}

/// `L B_n = λ_n B_n` for `n ≤ n_max`.
pub fn verify_bi_eigen(n_max: usize, p: &ParameterSet) -> Result<EigenReport> {
    let family = bi_polynomials(n_max, p)?;
    let eig: Vec<_> = (0..=n_max).map(|n| bi_eigenvalue(n, p)).collect();
    verify_eigenpairs("L B_n = lambda_n B_n", &build_l(p), &family, &eig)
}

/// `M Q_n = λ_n Q_n` for `n ≤ n_max`.
pub fn verify_q_eigen(n_max: usize, p: &ParameterSet) -> Result<EigenReport> {
    let family = q_polynomials(n_max, p)?;
    let eig: Vec<_> = (0..=n_max).map(|n| bi_eigenvalue(n, p)).collect();
    verify_eigenpairs("M Q_n = lambda_n Q_n", &build_m(p), &family, &eig)
}

/// `(T₀ + T₁) p_n = γ_n p_n` for `n ≤ n_max`.
pub fn verify_nonsym_wilson_eigen(n_max: usize, t: &DahaParameterSet) -> Result<EigenReport> {
    let g = build_daha_generators(t);
    let family = nonsym_wilson_family(n_max, t)?;
    let eig: Vec<_> = (0..=n_max).map(|n| wilson_eigenvalue(n, t)).collect();
    verify_eigenpairs("(T0 + T1) p_n = gamma_n p_n", &(&g.t0 + &g.t1), &family, &eig)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralValues {
    pub t0: ComplexRational,
    pub t1: ComplexRational,
    pub u0: ComplexRational,
    pub u1: ComplexRational,
}

impl CentralValues {
    /// `t_i²`, `u_i²` of a DAHA parameter set.
    pub fn squares_of(t: &DahaParameterSet) -> Self {
        let sq = |v: &ComplexRational| v * v;
        CentralValues { t0: sq(&t.t0), t1: sq(&t.t1), u0: sq(&t.u0), u1: sq(&t.u1) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoForwardReport {
    pub casimir_value: Option<ComplexRational>,
    pub central_values: Option<CentralValues>,
    pub algebra: IdentityReport,
    pub relations: IdentityReport,
    /// Comparison of the central values with `t_i²`, `u_i²` under the parameter map, when requested.
    pub matches_param_map: Option<bool>,
    pub pass: bool,
}

/// Builds `T̃₀, T̃₁, Ũ₀, Ũ₁` from `K₁, K₂, K₃` and checks the DAHA relations with the
/// central values predicted from the realized Casimir `Q` and the constants `ω`.
pub fn iso_forward(k1: &Op, k2: &Op, k3: &Op, sc: &StructureConstants, d: usize) -> Result<IsoForwardReport> {
    let [w1, w2, w3] = sc.omega();
    let scalar = Op::scalar;
    let algebra = IdentityReport::new(vec![
        check_equal("{K1,K2} = K3 + w3", &Op::anticommutator(k1, k2), &(k3 + &scalar(w3.clone())), d)?,
        check_equal("{K2,K3} = K1 + w1", &Op::anticommutator(k2, k3), &(k1 + &scalar(w1.clone())), d)?,
        check_equal("{K3,K1} = K2 + w2", &Op::anticommutator(k3, k1), &(k2 + &scalar(w2.clone())), d)?,
    ]);
    let casimir = Op::sum(vec![k1.squared(), k2.squared(), k3.squared()]);
    let image = casimir.apply(&Polynomial::one())?;
    let q_value = match image.degree() {
        None => Some(ComplexRational::zero()),
        Some(0) => Some(image.coeff(0)),
        Some(_) => None,
    };
    let Some(qv) = q_value.clone().filter(|_| algebra.pass) else {
        return Ok(IsoForwardReport {
            casimir_value: q_value,
            central_values: None,
            relations: IdentityReport::new(vec![]),
            algebra,
            matches_param_map: None,
            pass: false,
        });
    };
    let casimir_rel = check_scalar("K1^2 + K2^2 + K3^2 = Q", &casimir, &qv, d)?;
    let base = &qv + &q(1, 4);
    let sixteenth = q(1, 16);
    let central = |s1: i64, s2: i64, s3: i64| {
        let v = &(&(&base + &w1.scale(&s1.into())) + &w2.scale(&s2.into())) + &w3.scale(&s3.into());
        &v * &sixteenth
    };
    let values =
        CentralValues { t0: central(1, -1, -1), t1: central(1, 1, 1), u0: central(-1, -1, 1), u1: central(-1, 1, -1) };
    // (±K1 ± K2 ± K3 − 1/2) / 4
    let combo = |s1: i64, s2: i64, s3: i64| {
        Op::sum(vec![k1.scaled(cr(s1)), k2.scaled(cr(s2)), k3.scaled(cr(s3)), scalar(q(-1, 2))]).scaled(q(1, 4))
    };
    let tt0 = combo(1, -1, -1);
    let tt1 = combo(1, 1, 1);
    let uu0 = combo(-1, -1, 1);
    let uu1 = combo(-1, 1, -1);
    let sum = Op::sum(vec![tt0.clone(), tt1.clone(), uu0.clone(), uu1.clone()]);
    let relations = IdentityReport::new(vec![
        casimir_rel,
        check_scalar("T~0^2 = (Q + w1 - w2 - w3 + 1/4)/16", &tt0.squared(), &values.t0, d)?,
        check_scalar("T~1^2 = (Q + w1 + w2 + w3 + 1/4)/16", &tt1.squared(), &values.t1, d)?,
        check_scalar("U~0^2 = (Q - w1 - w2 + w3 + 1/4)/16", &uu0.squared(), &values.u0, d)?,
        check_scalar("U~1^2 = (Q - w1 + w2 - w3 + 1/4)/16", &uu1.squared(), &values.u1, d)?,
        check_scalar("T~0 + T~1 + U~0 + U~1 = -1/2", &sum, &q(-1, 2), d)?,
    ]);
    let pass = algebra.pass && relations.pass;
    Ok(IsoForwardReport {
        casimir_value: Some(qv),
        central_values: Some(values),
        algebra,
        relations,
        matches_param_map: None,
        pass,
    })
}

/// [`iso_forward`] on the realization `K₁ = L`, `K₂ = X`, plus the comparison of the
/// central values with the squared DAHA parameters of the parameter map.
pub fn verify_iso_forward(p: &ParameterSet, d: usize) -> Result<IsoForwardReport> {
    let sc = structure_constants(p);
    let k1 = build_l(p);
    let k2 = Op::x();
    let k3 = third_generator(&k1, &k2, &sc.omega3);
    let mut report = iso_forward(&k1, &k2, &k3, &sc, d)?;
    if let Some(values) = &report.central_values {
        let ok = *values == CentralValues::squares_of(&p.to_daha());
        report.matches_param_map = Some(ok);
        report.pass &= ok;
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoInverseReport {
    pub constants: [ComplexRational; 3],
    pub casimir_value: ComplexRational,
    pub pass: bool,
    pub relations: Vec<RelationReport>,
}

/// `A₁ = 2T₀+2T₁+1/2`, `A₂ = −2T₀−2U₀−1/2`, `A₃ = 2T₁+2U₀+1/2` and their relations.
pub fn iso_inverse(t: &DahaParameterSet, d: usize) -> Result<IsoInverseReport> {
    let g = build_daha_generators(t);
    let two = cr(2);
    let half = q(1, 2);
    let a1 = Op::sum(vec![g.t0.scaled(two.clone()), g.t1.scaled(two.clone()), Op::scalar(half.clone())]);
    let a2 = Op::sum(vec![g.t0.scaled(cr(-2)), g.u0.scaled(cr(-2)), Op::scalar(-half.clone())]);
    let a3 = Op::sum(vec![g.t1.scaled(two.clone()), g.u0.scaled(two), Op::scalar(half)]);
    let s = CentralValues::squares_of(t);
    let four = cr(4);
    let combo = |s0: i64, su0: i64, su1: i64| {
        let v = &(&(&s.t1 + &s.t0.scale(&s0.into())) + &s.u0.scale(&su0.into())) + &s.u1.scale(&su1.into());
        &four * &v
    };
    let constants = [combo(-1, 1, -1), combo(1, -1, -1), combo(-1, -1, 1)];
    let sum_sq = &(&s.t0 + &s.t1) + &(&s.u0 + &s.u1);
    let casimir_value = &(&four * &sum_sq) - &q(1, 4);
    let sc = |c: &ComplexRational| Op::scalar(c.clone());
    let relations = vec![
        check_equal(
            "{A1,A2} = A3 + 4(t1^2 - t0^2 + u0^2 - u1^2)",
            &Op::anticommutator(&a1, &a2),
            &(&a3 + &sc(&constants[0])),
            d,
        )?,
        check_equal(
            "{A2,A3} = A1 + 4(t1^2 + t0^2 - u0^2 - u1^2)",
            &Op::anticommutator(&a2, &a3),
            &(&a1 + &sc(&constants[1])),
            d,
        )?,
        check_equal(
            "{A3,A1} = A2 + 4(t1^2 - t0^2 - u0^2 + u1^2)",
            &Op::anticommutator(&a3, &a1),
            &(&a2 + &sc(&constants[2])),
            d,
        )?,
        check_scalar(
            "A1^2 + A2^2 + A3^2 = 4(t0^2 + t1^2 + u0^2 + u1^2) - 1/4",
            &Op::sum(vec![a1.squared(), a2.squared(), a3.squared()]),
            &casimir_value,
            d,
        )?,
    ];
    Ok(IsoInverseReport { constants, casimir_value, pass: relations.iter().all(|r| r.pass), relations })
}

/// Checks that `2(T₀ + T₁) + 1/2` in `z`, transported by `z = −x/2 + 1/4`, acts as `l_op`.
pub fn verify_prop1_with(l_op: &Op, p: &ParameterSet, d: usize) -> Result<RelationReport> {
    let g = build_daha_generators(&p.to_daha());
    let conj = Op::sum(vec![g.t0.scaled(cr(2)), g.t1.scaled(cr(2)), Op::scalar(q(1, 2))]);
    let to_z = (cr(-2), q(1, 2));
    let to_x = (q(-1, 2), q(1, 4));
    let images = (0..=d)
        .into_par_iter()
        .map(|k| {
            let m = Polynomial::monomial(k);
            let lhs = l_op.apply(&m)?;
            let rhs = conj.apply(&m.affine_substitute(&to_z.0, &to_z.1))?.affine_substitute(&to_x.0, &to_x.1);
            Ok(&lhs - &rhs)
        })
        .collect::<Result<Vec<_>>>()?;
    let first_failure = images
        .into_iter()
        .enumerate()
        .find(|(_, r)| !r.is_zero())
        .map(|(k, r)| Failure { monomial_degree: k, residual_poly: r });
    Ok(RelationReport {
        relation: "L = 2(T0 + T1) + 1/2 under z = -x/2 + 1/4".into(),
        degree_checked: d,
        pass: first_failure.is_none(),
        first_failure,
    })
}

pub fn verify_prop1_operator_transform(p: &ParameterSet, d: usize) -> Result<RelationReport> {
    verify_prop1_with(&build_l(p), p, d)
}

/// Raises an error if a built operator ever increases the degree of a monomial.
pub fn check_degree_nonincreasing(op: &Op, d: usize) -> Result<()> {
    for k in 0..=d {
        let image = op.apply(&Polynomial::monomial(k))?;
        if image.degree().is_some_and(|deg| deg > k) {
            return Err(Error::IdentityViolation(format!("degree of image of x^{k} is {:?}", image.degree())));
        }
    }
    Ok(())
}
