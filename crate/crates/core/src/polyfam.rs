//! The Bannai–Ito family `B_n`, its modified form `Q_n`, and the
//! non-symmetric Wilson family `p_n`, built from exact recurrences.

use rug::Rational;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{format_rational, ComplexRational, Polynomial};

/// The four Bannai–Ito parameters `(a, b, c, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub struct ParameterSet {
    pub a: ComplexRational,
    pub b: ComplexRational,
    pub c: ComplexRational,
    pub d: ComplexRational,
}

/// The four parameters `(t0, t1, u0, u1)` of the degenerate DAHA realization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub struct DahaParameterSet {
    pub t0: ComplexRational,
    pub t1: ComplexRational,
    pub u0: ComplexRational,
    pub u1: ComplexRational,
}

/// Real quadruple `(α, β, γ, δ)` producing the conjugate pairing
/// `a = α+iβ, b = γ+iδ, c = α−iβ, d = γ−iδ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealParameterQuad {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
}

impl Serialize for RealParameterQuad {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Encoded {
            alpha: String,
            beta: String,
            gamma: String,
            delta: String,
        }
        Encoded {
            alpha: format_rational(&self.alpha),
            beta: format_rational(&self.beta),
            gamma: format_rational(&self.gamma),
            delta: format_rational(&self.delta),
        }
        .serialize(serializer)
    }
}

fn cr(n: i64) -> ComplexRational {
    ComplexRational::from_int(n)
}

fn half() -> ComplexRational {
    ComplexRational::ratio(1, 2)
}

fn quarter() -> ComplexRational {
    ComplexRational::ratio(1, 4)
}

impl ParameterSet {
    pub fn new(a: ComplexRational, b: ComplexRational, c: ComplexRational, d: ComplexRational) -> Self {
        ParameterSet { a, b, c, d }
    }

    pub fn from_ratios(v: [(i64, i64); 4]) -> Self {
        let [a, b, c, d] = v.map(|(n, m)| ComplexRational::ratio(n, m));
        ParameterSet { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::from_ratios([(0, 1); 4])
    }

    /// `a + b + c + d`.
    pub fn sum(&self) -> ComplexRational {
        &(&self.a + &self.b) + &(&self.c + &self.d)
    }

    pub fn swap_ab(&self) -> Self {
        ParameterSet::new(self.b.clone(), self.a.clone(), self.c.clone(), self.d.clone())
    }

    pub fn swap_cd(&self) -> Self {
        ParameterSet::new(self.a.clone(), self.b.clone(), self.d.clone(), self.c.clone())
    }

    /// `(c, d, a, b)`.
    pub fn swap_pairs(&self) -> Self {
        ParameterSet::new(self.c.clone(), self.d.clone(), self.a.clone(), self.b.clone())
    }

    /// Conjugate pairing: `conj(a)` and `conj(b)` are `c` and `d` in some order.
    pub fn is_conjugate_paired(&self) -> bool {
        let (ca, cb) = (self.a.conj(), self.b.conj());
        (ca == self.c && cb == self.d) || (ca == self.d && cb == self.c)
    }

    /// Fails unless `n + s + 1` and `n + s + 2` are nonzero for `0 ≤ n ≤ n_max`.
    pub fn check_nondegenerate(&self, n_max: usize) -> Result<()> {
        let s = self.sum();
        if !s.is_real() {
            return Ok(());
        }
        for n in 0..=n_max {
            for shift in [1, 2] {
                let v = &s + &cr(n as i64 + shift);
                if v.is_zero() {
                    return Err(Error::DegenerateParameters { n, detail: format!("n + a + b + c + d + {shift} = 0") });
                }
            }
        }
        Ok(())
    }

    pub fn to_daha(&self) -> DahaParameterSet {
        param_map_bi_to_daha(self)
    }
}

impl DahaParameterSet {
    pub fn new(t0: ComplexRational, t1: ComplexRational, u0: ComplexRational, u1: ComplexRational) -> Self {
        DahaParameterSet { t0, t1, u0, u1 }
    }

    pub fn to_bi(&self) -> ParameterSet {
        param_map_daha_to_bi(self)
    }
}

impl RealParameterQuad {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational, delta: Rational) -> Self {
        RealParameterQuad { alpha, beta, gamma, delta }
    }

    pub fn from_ratios(v: [(i64, i64); 4]) -> Self {
        let [alpha, beta, gamma, delta] = v.map(Rational::from);
        RealParameterQuad { alpha, beta, gamma, delta }
    }

    pub fn all_positive(&self) -> bool {
        [&self.alpha, &self.beta, &self.gamma, &self.delta].iter().all(|r| r.cmp0().is_gt())
    }

    /// The conjugate-paired Bannai–Ito parameters.
    pub fn to_parameter_set(&self) -> ParameterSet {
        let z = |re: &Rational, im: &Rational| ComplexRational::new(re.clone(), im.clone());
        let neg = |r: &Rational| Rational::from(-r);
        ParameterSet {
            a: z(&self.alpha, &self.beta),
            b: z(&self.gamma, &self.delta),
            c: z(&self.alpha, &neg(&self.beta)),
            d: z(&self.gamma, &neg(&self.delta)),
        }
    }
}

/// Recurrence data of the Bannai–Ito family and of its modified form.
///
/// `diag[n] = 2a + 1 − A_n − C_n`, `c_mod[n] = −i·diag[n]` and
/// `u_mod[n] = −A_{n−1}·C_n` (with `u_mod[0] = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceData {
    #[serde(rename = "A")]
    pub a: Vec<ComplexRational>,
    #[serde(rename = "C")]
    pub c: Vec<ComplexRational>,
    #[serde(skip)]
    pub diag: Vec<ComplexRational>,
    #[serde(rename = "c")]
    pub c_mod: Vec<ComplexRational>,
    #[serde(rename = "u")]
    pub u_mod: Vec<ComplexRational>,
}

fn divide(num: ComplexRational, den: &ComplexRational, n: usize, what: &str) -> Result<ComplexRational> {
    if den.is_zero() {
        return Err(Error::DegenerateParameters { n, detail: format!("vanishing denominator of {what}") });
    }
    &num / den
}

/// `A_n` and `C_n` for one index, branching on the parity of `n`.
fn bi_pair(n: usize, p: &ParameterSet) -> Result<(ComplexRational, ComplexRational)> {
    let nn = cr(n as i64);
    let two = cr(2);
    let s = p.sum();
    let two_a = &two * &p.a;
    let two_b = &two * &p.b;
    let two_c = &two * &p.c;
    let two_d = &two * &p.d;
    let den_a = &two * &(&(&nn + &s) + &two);
    let den_c = &two * &(&(&nn + &s) + &cr(1));
    let (num_a, num_c) = if n.is_multiple_of(2) {
        let f1 = &(&(&nn + &two_a) + &two_c) + &two;
        let f2 = &(&(&nn + &two_a) + &two_d) + &two;
        let g = &(&(&nn + &two_c) + &two_d) + &cr(1);
        (&f1 * &f2, -(&nn * &g))
    } else {
        let f1 = &(&(&nn + &two_a) + &two_b) + &two;
        let f2 = &(&nn + &(&two * &s)) + &cr(3);
        let g1 = &(&(&nn + &two_b) + &two_c) + &cr(1);
        let g2 = &(&(&nn + &two_b) + &two_d) + &cr(1);
        (&f1 * &f2, -(&g1 * &g2))
    };
    Ok((divide(num_a, &den_a, n, "A_n")?, divide(num_c, &den_c, n, "C_n")?))
}

/// Exact `A_n`, `C_n` and the derived diagonal / modified coefficients for `0 ≤ n ≤ n_max`.
pub fn bi_coefficients(n_max: usize, p: &ParameterSet) -> Result<RecurrenceData> {
    p.check_nondegenerate(n_max)?;
    let mut data = RecurrenceData {
        a: Vec::with_capacity(n_max + 1),
        c: Vec::with_capacity(n_max + 1),
        diag: Vec::with_capacity(n_max + 1),
        c_mod: Vec::with_capacity(n_max + 1),
        u_mod: Vec::with_capacity(n_max + 1),
    };
    let base = &(&cr(2) * &p.a) + &cr(1);
    let minus_i = -ComplexRational::i();
    for n in 0..=n_max {
        let (a_n, c_n) = bi_pair(n, p)?;
        let diag = &(&base - &a_n) - &c_n;
        let u = match n {
            0 => ComplexRational::zero(),
            _ => -(&data.a[n - 1] * &c_n),
        };
        data.c_mod.push(&minus_i * &diag);
        data.diag.push(diag);
        data.u_mod.push(u);
        data.a.push(a_n);
        data.c.push(c_n);
    }
    Ok(data)
}

/// Monic `B_0 … B_{n_max}` from the three-term recurrence.
pub fn bi_polynomials(n_max: usize, p: &ParameterSet) -> Result<Vec<Polynomial>> {
    let rec = bi_coefficients(n_max, p)?;
    Ok(polynomials_from_recurrence(n_max, &rec.diag, |n| {
        // B_{n+1} = (x − diag_n) B_n − A_{n−1} C_n B_{n−1}
        -rec.u_mod[n].clone()
    }))
}

/// Monic family from `P_{n+1} = (x − diag_n) P_n − off(n) P_{n−1}`.
fn polynomials_from_recurrence(
    n_max: usize,
    diag: &[ComplexRational],
    off: impl Fn(usize) -> ComplexRational,
) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(Polynomial::one());
    let mut prev = Polynomial::zero();
    for n in 0..n_max {
        let step = Polynomial::linear(-diag[n].clone(), ComplexRational::one());
        let next = &(&step * &out[n]) - &prev.scale(&off(n));
        prev = out[n].clone();
        out.push(next);
    }
    out
}

/// `λ_n = (−1)^n (n + a + b + c + d + 3/2)`.
pub fn bi_eigenvalue(n: usize, p: &ParameterSet) -> ComplexRational {
    let v = &(&p.sum() + &cr(n as i64)) + &ComplexRational::ratio(3, 2);
    if n.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// `Q_n(x) = (−i)^n B_n(i x)` for `0 ≤ n ≤ n_max`.
pub fn q_polynomials(n_max: usize, p: &ParameterSet) -> Result<Vec<Polynomial>> {
    let minus_i = -ComplexRational::i();
    let mut factor = ComplexRational::one();
    let i = ComplexRational::i();
    let zero = ComplexRational::zero();
    let bs = bi_polynomials(n_max, p)?;
    Ok(bs
        .iter()
        .map(|b| {
            let q = b.affine_substitute(&i, &zero).scale(&factor);
            factor *= &minus_i;
            q
        })
        .collect())
}

pub fn q_polynomial(n: usize, p: &ParameterSet) -> Result<Polynomial> {
    Ok(q_polynomials(n, p)?.pop().expect("family is never empty"))
}

/// Closed-form `c_n` and `u_n` for the conjugate-paired parameters, cross-checked
/// exactly against `−i(2a+1−A_n−C_n)` and `−A_{n−1}C_n`.
pub fn q_modified_coefficients(n_max: usize, q: &RealParameterQuad) -> Result<RecurrenceData> {
    let RealParameterQuad { alpha, beta, gamma, delta } = q;
    let ag = Rational::from(alpha + gamma);
    let mut c_mod = Vec::with_capacity(n_max + 1);
    let mut u_mod = Vec::with_capacity(n_max + 1);
    let bmd = Rational::from(beta - delta);
    let bpd = Rational::from(beta + delta);
    for n in 0..=n_max {
        let nn = Rational::from(n as u64);
        let d1 = (&nn + Rational::from(2 * &ag)) + 1u32;
        let d2 = Rational::from(&d1 + 1u32);
        if d1.cmp0().is_eq() || d2.cmp0().is_eq() {
            return Err(Error::DegenerateParameters {
                n,
                detail: "n + 2α + 2γ + 1 or n + 2α + 2γ + 2 vanishes".into(),
            });
        }
        let two_beta = Rational::from(2 * beta);
        let c_n = if n % 2 == 0 {
            let t1 = ((&nn + Rational::from(4 * alpha)) + 2u32) * &bmd / &d2;
            let t2 = Rational::from(&nn * &bpd) / &d1;
            two_beta - t1 - t2
        } else {
            let t1 = ((&nn + Rational::from(4 * &ag)) + 3u32) * &bpd / &d2;
            let t2 = ((&nn + Rational::from(4 * gamma)) + 1u32) * &bmd / &d1;
            two_beta - t1 - t2
        };
        let u_n = if n == 0 {
            Rational::new()
        } else {
            let norm = |shift: &Rational| Rational::from(&d1 * &d1) + Rational::from(shift * shift) * 4u32;
            let den = Rational::from(&d1 * &d1) * 4u32;
            let num = if n % 2 == 0 {
                (&nn * ((&nn + Rational::from(4 * &ag)) + 2u32)) * norm(&bpd)
            } else {
                ((&nn + Rational::from(4 * alpha)) + 1u32) * ((&nn + Rational::from(4 * gamma)) + 1u32) * norm(&bmd)
            };
            num / den
        };
        c_mod.push(ComplexRational::real(c_n));
        u_mod.push(ComplexRational::real(u_n));
    }
    let mut rec = bi_coefficients(n_max, &q.to_parameter_set())?;
    for n in 0..=n_max {
        if rec.c_mod[n] != c_mod[n] {
            return Err(Error::IdentityViolation(format!(
                "c_{n}: closed form {} differs from −i(2a+1−A_n−C_n) = {}",
                c_mod[n], rec.c_mod[n]
            )));
        }
        if rec.u_mod[n] != u_mod[n] {
            return Err(Error::IdentityViolation(format!(
                "u_{n}: closed form {} differs from −A_(n−1)C_n = {}",
                u_mod[n], rec.u_mod[n]
            )));
        }
    }
    rec.c_mod = c_mod;
    rec.u_mod = u_mod;
    Ok(rec)
}

/// `(a,b,c,d) ↦ ((c+d)/2 + 1/4, (a+b)/2 + 1/4, (c−d)/2, (a−b)/2)`.
pub fn param_map_bi_to_daha(p: &ParameterSet) -> DahaParameterSet {
    let h = half();
    DahaParameterSet {
        t0: &(&(&p.c + &p.d) * &h) + &quarter(),
        t1: &(&(&p.a + &p.b) * &h) + &quarter(),
        u0: &(&p.c - &p.d) * &h,
        u1: &(&p.a - &p.b) * &h,
    }
}

/// Inverse of [`param_map_bi_to_daha`].
pub fn param_map_daha_to_bi(t: &DahaParameterSet) -> ParameterSet {
    let q = quarter();
    ParameterSet {
        a: &(&t.t1 + &t.u1) - &q,
        b: &(&t.t1 - &t.u1) - &q,
        c: &(&t.t0 + &t.u0) - &q,
        d: &(&t.t0 - &t.u0) - &q,
    }
}

/// Monic `p_0 … p_{n_max}` with `p_n(z) = (−2)^{−n} B_n(1/2 − 2z)`.
pub fn nonsym_wilson_family(n_max: usize, t: &DahaParameterSet) -> Result<Vec<Polynomial>> {
    let bs = bi_polynomials(n_max, &t.to_bi())?;
    let s = cr(-2);
    let shift = half();
    let step = ComplexRational::ratio(-1, 2);
    let mut factor = ComplexRational::one();
    Ok(bs
        .iter()
        .map(|b| {
            let p = b.affine_substitute(&s, &shift).scale(&factor);
            factor *= &step;
            p
        })
        .collect())
}

pub fn nonsym_wilson(n: usize, t: &DahaParameterSet) -> Result<Polynomial> {
    Ok(nonsym_wilson_family(n, t)?.pop().expect("family is never empty"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientIdentityReport {
    pub identity: &'static str,
    pub n_max: usize,
    pub pass: bool,
    pub failures: Vec<usize>,
}

/// Coefficient-exact check of `(−2)^n p_n(−x/2 + 1/4) = B_n(x)` under the parameter map.
pub fn verify_prop1_coefficients(n_max: usize, p: &ParameterSet) -> Result<CoefficientIdentityReport> {
    let bs = bi_polynomials(n_max, p)?;
    let ps = nonsym_wilson_family(n_max, &p.to_daha())?;
    let (s, t) = (ComplexRational::ratio(-1, 2), quarter());
    let mut scale = ComplexRational::one();
    let mut failures = Vec::new();
    for n in 0..=n_max {
        if ps[n].affine_substitute(&s, &t).scale(&scale) != bs[n] {
            failures.push(n);
        }
        scale *= &cr(-2);
    }
    Ok(CoefficientIdentityReport {
        identity: "(-2)^n p_n(-x/2 + 1/4) = B_n(x)",
        n_max,
        pass: failures.is_empty(),
        failures,
    })
}

/// `γ_{2m} = t0 + t1 + m`, `γ_{2m−1} = −(t0 + t1 + m)`.
pub fn wilson_eigenvalue(n: usize, t: &DahaParameterSet) -> ComplexRational {
    let m = n.div_ceil(2) as i64;
    let v = &(&t.t0 + &t.t1) + &cr(m);
    if n.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// Both eigenvalue sequences for a parameter set; `gamma` uses the mapped DAHA parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenvalueTable {
    pub lambda: Vec<ComplexRational>,
    pub gamma: Vec<ComplexRational>,
}

pub fn eigenvalue_table(n_max: usize, p: &ParameterSet) -> EigenvalueTable {
    let t = p.to_daha();
    EigenvalueTable {
        lambda: (0..=n_max).map(|n| bi_eigenvalue(n, p)).collect(),
        gamma: (0..=n_max).map(|n| wilson_eigenvalue(n, &t)).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryCheck {
    pub identity: &'static str,
    pub n: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub n_max: usize,
    pub pass: bool,
    pub checks: Vec<SymmetryCheck>,
}

/// Checks `Q_n(x;a,b,c,d) = Q_n(x;b,a,c,d) = Q_n(x;a,b,d,c)` and
/// `Q_n(x;a,b,c,d) = (−1)^n Q_n(−x;c,d,a,b)` coefficient-wise.
pub fn q_symmetry_check(n_max: usize, p: &ParameterSet) -> Result<SymmetryReport> {
    let base = q_polynomials(n_max, p)?;
    let ab = q_polynomials(n_max, &p.swap_ab())?;
    let cd = q_polynomials(n_max, &p.swap_cd())?;
    let pairs = q_polynomials(n_max, &p.swap_pairs())?;
    let minus_one = cr(-1);
    let zero = ComplexRational::zero();
    let mut checks = Vec::with_capacity(3 * (n_max + 1));
    for n in 0..=n_max {
        checks.push(SymmetryCheck { identity: "swap(a,b)", n, pass: base[n] == ab[n] });
        checks.push(SymmetryCheck { identity: "swap(c,d)", n, pass: base[n] == cd[n] });
        let mut reflected = pairs[n].affine_substitute(&minus_one, &zero);
        if n % 2 == 1 {
            reflected = -reflected;
        }
        checks.push(SymmetryCheck { identity: "(a,b)<->(c,d), x->-x", n, pass: base[n] == reflected });
    }
    Ok(SymmetryReport { n_max, pass: checks.iter().all(|c| c.pass), checks })
}

/// JSON document for a constructed family.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyDocument<P: Serialize> {
    pub params: P,
    pub n_max: usize,
    pub polynomials: Vec<Polynomial>,
    pub lambda: Vec<ComplexRational>,
    pub recurrence: RecurrenceData,
}

pub fn bi_family_document(n_max: usize, p: &ParameterSet) -> Result<FamilyDocument<ParameterSet>> {
    Ok(FamilyDocument {
        params: p.clone(),
        n_max,
        polynomials: bi_polynomials(n_max, p)?,
        lambda: (0..=n_max).map(|n| bi_eigenvalue(n, p)).collect(),
        recurrence: bi_coefficients(n_max, p)?,
    })
}

pub fn q_family_document(n_max: usize, p: &ParameterSet) -> Result<FamilyDocument<ParameterSet>> {
    Ok(FamilyDocument {
        params: p.clone(),
        n_max,
        polynomials: q_polynomials(n_max, p)?,
        lambda: (0..=n_max).map(|n| bi_eigenvalue(n, p)).collect(),
        recurrence: bi_coefficients(n_max, p)?,
    })
}

/// Family document for `p_n`; `lambda` carries the `γ_n` eigenvalues here.
pub fn wilson_family_document(n_max: usize, t: &DahaParameterSet) -> Result<FamilyDocument<DahaParameterSet>> {
    Ok(FamilyDocument {
        params: t.clone(),
        n_max,
        polynomials: nonsym_wilson_family(n_max, t)?,
        lambda: (0..=n_max).map(|n| wilson_eigenvalue(n, t)).collect(),
        recurrence: bi_coefficients(n_max, &t.to_bi())?,
    })
}
