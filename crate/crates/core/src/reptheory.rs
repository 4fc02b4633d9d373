//! Finite truncations of the tridiagonal representation of the non-compact algebra.

use rayon::prelude::*;
use rug::{Float, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::ComplexRational;
use crate::operators::{casimir_value, structure_constants};
use crate::polyfam::{q_modified_coefficients, RealParameterQuad};
use crate::precision::{bits_for_digits, float_from_rational, Approx};

/// `A₁` (diagonal) and `A₂` (symmetric Jacobi matrix) on `e_0 … e_{N−1}`.
#[derive(Clone, Debug)]
pub struct TridiagonalRep {
    pub size: usize,
    pub diag_a1: Vec<Float>,
    pub diag_a2: Vec<Float>,
    /// `offdiag_a2[n] = √u_n` couples `e_{n−1}` and `e_n`; index 0 is unused and zero.
    pub offdiag_a2: Vec<Float>,
    pub precision_digits: u32,
    pub bits: u32,
    pub quad: RealParameterQuad,
    /// Exact `u_n` the offdiagonal was rounded from, same indexing.
    pub u_exact: Vec<Rational>,
}

fn real_part(z: &ComplexRational, what: &str, n: usize) -> Result<Rational> {
    if !z.is_real() {
        return Err(Error::IdentityViolation(format!("{what}_{n} = {z} is not real")));
    }
    Ok(z.re.clone())
}

pub fn build_rep(size: usize, q: &RealParameterQuad, precision_digits: u32) -> Result<TridiagonalRep> {
    if size < 4 {
        return Err(Error::InvalidParameters(format!("truncation size {size} < 4")));
    }
    if !q.all_positive() {
        return Err(Error::InvalidParameters("alpha, beta, gamma, delta must all be positive".into()));
    }
    let bits = bits_for_digits(precision_digits);
    let rec = q_modified_coefficients(size - 1, q)?;
    let shift = (2 * Rational::from(&q.alpha + &q.gamma)) + Rational::from((3, 2));
    let mut diag_a1 = Vec::with_capacity(size);
    let mut diag_a2 = Vec::with_capacity(size);
    let mut offdiag_a2 = Vec::with_capacity(size);
    let mut u_exact = Vec::with_capacity(size);
    for n in 0..size {
        let lam = Rational::from(&shift + n as u64);
        diag_a1.push(float_from_rational(&if n % 2 == 0 { lam } else { -lam }, bits));
        diag_a2.push(float_from_rational(&real_part(&rec.c_mod[n], "c", n)?, bits));
        let u = real_part(&rec.u_mod[n], "u", n)?;
        offdiag_a2.push(float_from_rational(&u, bits).sqrt());
        u_exact.push(u);
    }
    Ok(TridiagonalRep { size, diag_a1, diag_a2, offdiag_a2, precision_digits, bits, quad: q.clone(), u_exact })
}

/// Dense square matrix of floats, row-major.
#[derive(Clone, Debug)]
struct Mat {
    n: usize,
    bits: u32,
    data: Vec<Float>,
}

impl Mat {
    fn zeros(n: usize, bits: u32) -> Self {
        Mat { n, bits, data: vec![Float::new(bits); n * n] }
    }

    fn at(&self, i: usize, j: usize) -> &Float {
        &self.data[i * self.n + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut Float {
        &mut self.data[i * self.n + j]
    }

    fn neg(&self) -> Mat {
        Mat { n: self.n, bits: self.bits, data: self.data.iter().map(|v| Float::with_val(self.bits, -v)).collect() }
    }

    /// `Σ Pᵢ Qᵢ + Σ Lⱼ + s·I`, each entry a single correctly rounded dot product.
    fn fused(products: &[(&Mat, &Mat)], linear: &[&Mat], s: &Float) -> Mat {
        let (n, bits) = (products[0].0.n, products[0].0.bits);
        let one = Float::with_val(bits, 1);
        let zero = Float::new(bits);
        let rows: Vec<Vec<Float>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let prods = products.iter().flat_map(|(p, q)| (0..n).map(move |k| (p.at(i, k), q.at(k, j))));
                        let lin = linear.iter().map(|m| (m.at(i, j), &one));
                        let diag = std::iter::once((if i == j { s } else { &zero }, &one));
                        Float::with_val(bits, Float::dot(prods.chain(lin).chain(diag)))
                    })
                    .collect()
            })
            .collect();
        Mat { n, bits, data: rows.into_iter().flatten().collect() }
    }

    fn max_abs_block(&self, last: usize) -> Float {
        let mut best = Float::new(self.bits);
        for i in 0..=last {
            for j in 0..=last {
                let v = Float::with_val(self.bits, self.at(i, j).abs_ref());
                if v > best {
                    best = v;
                }
            }
        }
        best
    }

    fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }
}

impl TridiagonalRep {
    fn a1(&self) -> Mat {
        let mut m = Mat::zeros(self.size, self.bits);
        for (i, v) in self.diag_a1.iter().enumerate() {
            *m.at_mut(i, i) = v.clone();
        }
        m
    }

    fn a2(&self) -> Mat {
        let mut m = Mat::zeros(self.size, self.bits);
        for i in 0..self.size {
            *m.at_mut(i, i) = self.diag_a2[i].clone();
            if i > 0 {
                *m.at_mut(i, i - 1) = self.offdiag_a2[i].clone();
                *m.at_mut(i - 1, i) = self.offdiag_a2[i].clone();
            }
        }
        m
    }

    /// Acceptance tolerance: 1e-12 in double mode, otherwise `10^{5 − digits}`.
    pub fn tolerance(&self) -> Float {
        let exp = if self.bits <= 53 { -12 } else { 5 - self.precision_digits as i32 };
        use rug::ops::Pow;
        Float::with_val(self.bits, Float::with_val(self.bits, 10).pow(exp))
    }

    /// ε-check of `(√u_n)² = u_n` within 2 ulps at the working precision.
    pub fn squares_match_exact(&self) -> bool {
        (1..self.size).all(|n| {
            let exact = float_from_rational(&self.u_exact[n], self.bits);
            let sq = Float::with_val(self.bits, self.offdiag_a2[n].square_ref());
            let diff = Float::with_val(self.bits, &sq - &exact).abs();
            let ulp = match exact.get_exp() {
                Some(e) => Float::with_val(self.bits, Float::i_exp(1, e - self.bits as i32)),
                None => Float::new(self.bits),
            };
            diff <= ulp * 2u32
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residuals {
    pub rel2: Approx,
    pub rel3: Approx,
    pub casimir: Approx,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepReport {
    #[serde(rename = "N")]
    pub size: usize,
    pub precision_digits: u32,
    /// Last index of the certified block `0..=interior_block`.
    pub interior_block: usize,
    pub residuals: Residuals,
    pub tolerance: Approx,
    pub symmetric: bool,
    pub squares_match_exact: bool,
    pub pass: bool,
    #[serde(skip)]
    pub max_residual: f64,
}

/// Checks `{A₂,A₃} = −A₁ + α₁`, `{A₃,A₁} = A₂ + α₂` and `A₁² − A₂² − A₃² = Z`
/// with the non-compact constants of the representation's parameters.
pub fn verify_rep_relations(rep: &TridiagonalRep) -> Result<RepReport> {
    let p = rep.quad.to_parameter_set();
    let sc = structure_constants(&p);
    let real = |z: &ComplexRational, what: &str| real_part(z, what, 0);
    let alpha = [real(&sc.alpha1, "alpha1")?, real(&sc.alpha2, "alpha2")?, real(&sc.alpha3, "alpha3")?];
    let casimir = real(&casimir_value(&p), "casimir")?;
    verify_rep_relations_with(rep, &alpha, &casimir)
}

/// [`verify_rep_relations`] with caller-supplied `α₁, α₂, α₃` and Casimir scalar.
pub fn verify_rep_relations_with(rep: &TridiagonalRep, alpha: &[Rational; 3], casimir: &Rational) -> Result<RepReport> {
    if rep.size < 6 {
        return Err(Error::InvalidParameters(format!("relation check needs N >= 6, got {}", rep.size)));
    }
    let (n, bits) = (rep.size, rep.bits);
    let f = |r: &Rational| float_from_rational(r, bits);
    let a1 = rep.a1();
    let a2 = rep.a2();
    let neg = |r: &Rational| f(&Rational::from(-r));
    let a3 = Mat::fused(&[(&a1, &a2), (&a2, &a1)], &[], &neg(&alpha[2]));
    let r2 = Mat::fused(&[(&a2, &a3), (&a3, &a2)], &[&a1], &neg(&alpha[0]));
    let r3 = Mat::fused(&[(&a3, &a1), (&a1, &a3)], &[&a2.neg()], &neg(&alpha[1]));
    let rc = Mat::fused(&[(&a1, &a1), (&a2.neg(), &a2), (&a3.neg(), &a3)], &[], &neg(casimir));
    let last = n - 4;
    let (m2, m3, mc) = (r2.max_abs_block(last), r3.max_abs_block(last), rc.max_abs_block(last));
    let tol = rep.tolerance();
    let symmetric = a1.is_symmetric() && a2.is_symmetric();
    let squares = rep.squares_match_exact();
    let pass = m2 <= tol && m3 <= tol && mc <= tol && symmetric && squares;
    let max_residual = m2.to_f64().max(m3.to_f64()).max(mc.to_f64());
    let d = rep.precision_digits;
    Ok(RepReport {
        size: n,
        precision_digits: d,
        interior_block: last,
        residuals: Residuals { rel2: Approx::new(&m2, d), rel3: Approx::new(&m3, d), casimir: Approx::new(&mc, d) },
        tolerance: Approx::new(&tol, d),
        symmetric,
        squares_match_exact: squares,
        pass,
        max_residual,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityViolation {
    pub n: usize,
    pub u: ComplexRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub n_max: usize,
    /// Whether `α, β, γ, δ > 0` (the hypothesis that guarantees positivity).
    pub hypotheses_hold: bool,
    pub all_u_positive: bool,
    pub all_c_real: bool,
    pub first_violation: Option<PositivityViolation>,
}

/// Exact sign check of `u_n` for `1 ≤ n ≤ n_max` and realness of `c_n`.
pub fn positivity_scan(q: &RealParameterQuad, n_max: usize) -> Result<PositivityReport> {
    let rec = q_modified_coefficients(n_max, q)?;
    let first_violation = (1..=n_max)
        .find(|&n| !(rec.u_mod[n].is_real() && rec.u_mod[n].re.cmp0().is_gt()))
        .map(|n| PositivityViolation { n, u: rec.u_mod[n].clone() });
    Ok(PositivityReport {
        n_max,
        hypotheses_hold: q.all_positive(),
        all_u_positive: first_violation.is_none(),
        all_c_real: rec.c_mod.iter().all(ComplexRational::is_real),
        first_violation,
    })
}
