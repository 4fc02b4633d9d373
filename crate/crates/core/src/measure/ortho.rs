//! Weight function, normalization and the Gram matrix of `Q_n` on the real line.

use rayon::prelude::*;
use rug::float::Constant;
use rug::{Complex, Float, Rational};
use serde::{Serialize, Serializer};

use super::gamma::{complex_from_rational, log_abs_gamma, log_gamma};
use super::quadrature::{panel_bounds, GaussLegendre};
use crate::error::{Error, Result};
use crate::exact::ComplexRational;
use crate::polyfam::{bi_coefficients, q_polynomials, ParameterSet};
use crate::precision::{bits_for_digits, Approx};

/// Nodes per unit-length panel.
pub const NODES_PER_PANEL: usize = 50;
pub const DEFAULT_TRUNCATION: f64 = 40.0;
pub const MAX_DOUBLINGS: u32 = 12;

/// Conjugate pairing, and `a`, `b` with positive real and imaginary parts.
pub fn check_hypotheses(p: &ParameterSet) -> Result<()> {
    if !p.is_conjugate_paired() {
        return Err(Error::InvalidParameters("parameters are not conjugate paired".into()));
    }
    for (name, v) in [("a", &p.a), ("b", &p.b)] {
        if !(v.re.cmp0().is_gt() && v.im.cmp0().is_gt()) {
            return Err(Error::InvalidParameters(format!("{name} = {v} needs positive real and imaginary parts")));
        }
    }
    Ok(())
}

fn cx(v: &ComplexRational, shift: (i64, i64), bits: u32) -> Complex {
    complex_from_rational(&(&v.re + Rational::from(shift)), &v.im, bits)
}

/// `W(z) = |Γ(a+iz/2+1) Γ(b+iz/2+1) Γ(c+iz/2+1/2) Γ(d+iz/2+1/2) / Γ(1/2+iz)|²`.
#[derive(Clone, Debug)]
pub struct Weight {
    bits: u32,
    bases: [Complex; 4],
}

impl Weight {
    pub fn new(p: &ParameterSet, bits: u32) -> Result<Self> {
        check_hypotheses(p)?;
        Ok(Weight {
            bits,
            bases: [cx(&p.a, (1, 1), bits), cx(&p.b, (1, 1), bits), cx(&p.c, (1, 2), bits), cx(&p.d, (1, 2), bits)],
        })
    }

    pub fn eval(&self, z: &Float) -> Result<Float> {
        let bits = self.bits;
        let half_z = Float::with_val(bits, z / 2u32);
        let mut log_w = Float::new(bits);
        for base in &self.bases {
            let arg = Complex::with_val(bits, (base.real(), Float::with_val(bits, base.imag() + &half_z)));
            log_w += log_abs_gamma(&arg)?;
        }
        let den = Complex::with_val(bits, (Float::with_val(bits, 0.5), z));
        log_w -= log_abs_gamma(&den)?;
        Ok((log_w * 2u32).exp())
    }
}

pub fn weight_w(z: &Float, p: &ParameterSet) -> Result<Float> {
    Weight::new(p, z.prec())?.eval(z)
}

/// `h₀` as a complex number (its imaginary part cancels under the pairing).
pub fn h0_complex(p: &ParameterSet, bits: u32) -> Result<Complex> {
    let s = p.sum();
    let args = [
        (&p.a + &p.b, (3, 2)),
        (&p.a + &p.c, (1, 1)),
        (&p.b + &p.c, (1, 1)),
        (&p.a + &p.d, (1, 1)),
        (&p.b + &p.d, (1, 1)),
        (&p.c + &p.d, (3, 2)),
    ];
    let mut log = Complex::new(bits + 16);
    for (v, shift) in &args {
        log += log_gamma(&cx(v, *shift, bits + 16))?;
    }
    log -= log_gamma(&cx(&s, (2, 1), bits + 16))?;
    Ok(Complex::with_val(bits, log.exp()))
}

/// Real `h₀`; fails unless the imaginary part is at rounding level.
pub fn h0(p: &ParameterSet, bits: u32) -> Result<Float> {
    let v = h0_complex(p, bits)?;
    let (re, im) = v.into_real_imag();
    let limit = Float::with_val(bits, re.abs_ref()) * Float::with_val(bits, Float::i_exp(1, 12 - bits as i32));
    if Float::with_val(bits, im.abs_ref()) > limit {
        return Err(Error::IdentityViolation(format!("h0 has imaginary part {}", im.to_f64())));
    }
    Ok(re)
}

#[derive(Clone, Debug)]
pub struct OrthoConfig {
    pub n_max: usize,
    pub precision_digits: u32,
    /// Relative tolerance on the diagonal, ratio and off-diagonal checks.
    pub tol: f64,
    /// Explicit half-width `L`; otherwise the larger of the default and the tail bound.
    pub truncation: Option<f64>,
    /// Panel doublings allowed before giving up with `QuadratureNotConverged`.
    pub max_doublings: u32,
}

impl Default for OrthoConfig {
    fn default() -> Self {
        OrthoConfig { n_max: 6, precision_digits: 50, tol: 1e-8, truncation: None, max_doublings: MAX_DOUBLINGS }
    }
}

#[derive(Clone, Debug)]
pub struct OrthogonalityReport {
    pub n_max: usize,
    pub precision_digits: u32,
    pub gram: Vec<Vec<Float>>,
    pub expected_diag: Vec<Float>,
    pub h0: Float,
    /// `max_{n≠m} |G_nm| / G_00`.
    pub max_offdiag_rel: Float,
    pub max_diag_rel_err: Float,
    /// `max_n |G_nn / G_{n−1,n−1} − u_n| / u_n`.
    pub max_ratio_rel_err: Float,
    /// Normalized change of the Gram matrix between `L` and `L + 5`.
    pub l_stability: Float,
    /// Normalized change at the last panel doubling.
    pub last_doubling_change: Float,
    pub truncation_l: Float,
    pub panels: usize,
    pub doublings: u32,
    pub symmetric: bool,
    pub positive: bool,
    pub tol: f64,
    pub pass: bool,
}

impl Serialize for OrthogonalityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Encoded {
            n_max: usize,
            precision_digits: u32,
            gram: Vec<Vec<Approx>>,
            expected_diag: Vec<Approx>,
            h0: Approx,
            max_offdiag_rel: Approx,
            max_diag_rel_err: Approx,
            max_ratio_rel_err: Approx,
            l_stability: Approx,
            last_doubling_change: Approx,
            #[serde(rename = "truncation_L")]
            truncation_l: Approx,
            panels: usize,
            doublings: u32,
            symmetric: bool,
            positive: bool,
            tol: f64,
            pass: bool,
        }
        let d = self.precision_digits;
        let a = |v: &Float| Approx::new(v, d);
        Encoded {
            n_max: self.n_max,
            precision_digits: d,
            gram: self.gram.iter().map(|row| row.iter().map(a).collect()).collect(),
            expected_diag: self.expected_diag.iter().map(a).collect(),
            h0: a(&self.h0),
            max_offdiag_rel: a(&self.max_offdiag_rel),
            max_diag_rel_err: a(&self.max_diag_rel_err),
            max_ratio_rel_err: a(&self.max_ratio_rel_err),
            l_stability: a(&self.l_stability),
            last_doubling_change: a(&self.last_doubling_change),
            truncation_l: a(&self.truncation_l),
            panels: self.panels,
            doublings: self.doublings,
            symmetric: self.symmetric,
            positive: self.positive,
            tol: self.tol,
            pass: self.pass,
        }
        .serialize(serializer)
    }
}

/// Recurrence data of `Q_n` as floats, used to evaluate the family at a node.
struct Family {
    c: Vec<Float>,
    u: Vec<Float>,
}

impl Family {
    fn values(&self, z: &Float) -> Vec<Float> {
        let bits = z.prec();
        let n = self.c.len();
        let mut out = Vec::with_capacity(n);
        out.push(Float::with_val(bits, 1));
        let mut prev = Float::new(bits);
        for k in 0..n - 1 {
            let mut next = Float::with_val(bits, z - &self.c[k]) * &out[k];
            next -= Float::with_val(bits, &self.u[k] * &prev);
            prev = out[k].clone();
            out.push(next);
        }
        out
    }
}

/// `(1/4π) Σ w W(z) Q_n(z) Q_m(z)` over a composite rule on `[−l, l]`.
fn gram_at(
    l: &Float,
    panels: usize,
    rule: &GaussLegendre,
    weight: &Weight,
    family: &Family,
) -> Result<Vec<Vec<Float>>> {
    let bits = l.prec();
    let size = family.c.len();
    let partials = panel_bounds(l, panels)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut acc = vec![vec![Float::new(bits); size]; size];
            for (z, w) in rule.on_interval(&lo, &hi) {
                let scaled = w * weight.eval(&z)?;
                let q = family.values(&z);
                for n in 0..size {
                    let wn = Float::with_val(bits, &scaled * &q[n]);
                    for m in 0..size {
                        acc[n][m] += Float::with_val(bits, &wn * &q[m]);
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let four_pi = Float::with_val(bits, Constant::Pi) * 4u32;
    let mut total = vec![vec![Float::new(bits); size]; size];
    for part in partials {
        for (row, prow) in total.iter_mut().zip(part) {
            for (t, v) in row.iter_mut().zip(prow) {
                *t += v;
            }
        }
    }
    for row in total.iter_mut() {
        for v in row.iter_mut() {
            *v /= &four_pi;
        }
    }
    Ok(total)
}

/// `max |A_nm − B_nm| / √(A_nn A_mm)`.
fn normalized_change(a: &[Vec<Float>], b: &[Vec<Float>]) -> Float {
    let bits = a[0][0].prec();
    let mut worst = Float::new(bits);
    for n in 0..a.len() {
        for m in 0..a.len() {
            let scale = Float::with_val(bits, &a[n][n] * &a[m][m]).abs().sqrt();
            let d = Float::with_val(bits, &a[n][m] - &b[n][m]).abs() / scale;
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Smallest integer `L ≥ 1` with `(2π)³ (L/2)^{4α+4γ+2} e^{−πL} L^{2 n_max} ≤ tol·10⁻³·h₀`.
fn tail_truncation(p: &ParameterSet, n_max: usize, tol: f64, h0: f64) -> f64 {
    let power = 4.0 * (p.a.re.to_f64() + p.b.re.to_f64()) + 2.0;
    let target = (tol * 1e-3 * h0).ln();
    let log_bound = |l: f64| {
        3.0 * (2.0 * std::f64::consts::PI).ln() + power * (l / 2.0).ln() - std::f64::consts::PI * l
            + 2.0 * n_max as f64 * l.ln()
    };
    let mut l = 1.0;
    while log_bound(l) > target && l < 1e4 {
        l += 1.0;
    }
    l
}

/// Gram matrix of `Q_0 … Q_{n_max}` under `W`, with convergence and stability diagnostics.
pub fn orthogonality_gram(p: &ParameterSet, cfg: &OrthoConfig) -> Result<OrthogonalityReport> {
    check_hypotheses(p)?;
    let n_max = cfg.n_max;
    let rec = bi_coefficients(n_max, p)?;
    if !q_polynomials(n_max, p)?.iter().all(|q| q.is_real()) {
        return Err(Error::IdentityViolation("Q_n has non-real coefficients".into()));
    }
    let exact_real = |v: &ComplexRational, what: &str| -> Result<Rational> {
        if v.is_real() {
            Ok(v.re.clone())
        } else {
            Err(Error::IdentityViolation(format!("{what} = {v} is not real")))
        }
    };
    let bits = bits_for_digits(cfg.precision_digits);
    let c: Vec<Rational> = rec.c_mod.iter().map(|v| exact_real(v, "c_n")).collect::<Result<_>>()?;
    let u: Vec<Rational> = rec.u_mod.iter().map(|v| exact_real(v, "u_n")).collect::<Result<_>>()?;
    let family = Family {
        c: c.iter().map(|r| Float::with_val(bits, r)).collect(),
        u: u.iter().map(|r| Float::with_val(bits, r)).collect(),
    };
    let weight = Weight::new(p, bits)?;
    let h0v = h0(p, bits)?;
    let rule = GaussLegendre::new(NODES_PER_PANEL, bits);
    let l_f64 =
        cfg.truncation.unwrap_or_else(|| DEFAULT_TRUNCATION.max(tail_truncation(p, n_max, cfg.tol, h0v.to_f64())));
    let l = Float::with_val(bits, l_f64);
    let unit_panels = (2.0 * l_f64).ceil() as usize;

    let threshold = Float::with_val(bits, cfg.tol / 10.0);
    let mut panels = unit_panels;
    let mut gram = gram_at(&l, panels, &rule, &weight, &family)?;
    let mut doublings = 0;
    let last_change = loop {
        doublings += 1;
        panels *= 2;
        let next = gram_at(&l, panels, &rule, &weight, &family)?;
        let change = normalized_change(&next, &gram);
        gram = next;
        if change <= threshold {
            break change;
        }
        if doublings >= cfg.max_doublings {
            return Err(Error::QuadratureNotConverged { doublings, last_change: format!("{:.3e}", change.to_f64()) });
        }
    };

    let width = 2.0 * l_f64 / panels as f64;
    let l_wide = Float::with_val(bits, l_f64 + 5.0);
    let wide_panels = (2.0 * (l_f64 + 5.0) / width).ceil() as usize;
    let wide = gram_at(&l_wide, wide_panels, &rule, &weight, &family)?;
    let l_stability = normalized_change(&gram, &wide);

    let mut expected = Vec::with_capacity(n_max + 1);
    let mut running = h0v.clone();
    for n in 0..=n_max {
        if n > 0 {
            running *= &family.u[n];
        }
        expected.push(running.clone());
    }
    let zero = Float::new(bits);
    let rel = |a: &Float, b: &Float| Float::with_val(bits, a - b).abs() / Float::with_val(bits, b.abs_ref());
    let mut max_offdiag = zero.clone();
    let mut max_diag = zero.clone();
    let mut max_ratio = zero.clone();
    let mut symmetric = true;
    let rounding = Float::with_val(bits, Float::i_exp(1, 16 - bits as i32));
    for n in 0..=n_max {
        for m in 0..=n_max {
            if n != m {
                let v = Float::with_val(bits, gram[n][m].abs_ref()) / &gram[0][0];
                max_offdiag = max_offdiag.max(&v);
                let gap = Float::with_val(bits, &gram[n][m] - &gram[m][n]).abs();
                let scale = Float::with_val(bits, &gram[n][n] * &gram[m][m]).sqrt();
                symmetric &= gap <= scale * &rounding;
            }
        }
        max_diag = max_diag.max(&rel(&gram[n][n], &expected[n]));
        if n > 0 {
            let ratio = Float::with_val(bits, &gram[n][n] / &gram[n - 1][n - 1]);
            max_ratio = max_ratio.max(&rel(&ratio, &family.u[n]));
        }
    }
    let positive = (0..=n_max).all(|n| gram[n][n] > 0);
    let tol = Float::with_val(bits, cfg.tol);
    let pass =
        max_offdiag <= tol && max_diag <= tol && max_ratio <= tol && l_stability <= threshold && positive && symmetric;
    Ok(OrthogonalityReport {
        n_max,
        precision_digits: cfg.precision_digits,
        gram,
        expected_diag: expected,
        h0: h0v,
        max_offdiag_rel: max_offdiag,
        max_diag_rel_err: max_diag,
        max_ratio_rel_err: max_ratio,
        l_stability,
        last_doubling_change: last_change,
        truncation_l: l,
        panels,
        doublings,
        symmetric,
        positive,
        tol: cfg.tol,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfam::RealParameterQuad;

    const BITS: u32 = 175;

    fn halves() -> ParameterSet {
        RealParameterQuad::from_ratios([(1, 2); 4]).to_parameter_set()
    }

    fn parse(s: &str) -> Float {
        Float::with_val(BITS, Float::parse(s).unwrap())
    }

    fn rel_err(a: &Float, b: &Float) -> f64 {
        (Float::with_val(BITS, a - b) / b).abs().to_f64()
    }

    // mpmath at 60 digits
    const W_HALVES: &[(f64, &str)] = &[
        (0.0, "0.058119312316728734623190193363460121578465975316548"),
        (1.0, "0.42346086156159116857275129839278004057528343671761"),
        (-3.0, "0.12464448435607269341686862491082261796342598500939"),
        (2.5, "0.60514097627022087639649907077020939330533776468477"),
        (10.0, "1.0612086294877751053600076490985398122819393437186e-7"),
        (20.0, "1.4098869635023528132225982620617510401775636020005e-19"),
        (30.0, "3.5335818514353470199472308040930891712353961018683e-32"),
    ];

    #[test]
    fn weight_matches_oracle() {
        let w = Weight::new(&halves(), BITS).unwrap();
        for &(z, expected) in W_HALVES {
            let v = w.eval(&Float::with_val(BITS, z)).unwrap();
            assert!(rel_err(&v, &parse(expected)) < 1e-45, "z = {z}");
        }
        let p = RealParameterQuad::from_ratios([(1, 3), (3, 4), (2, 5), (1, 5)]).to_parameter_set();
        let v = weight_w(&Float::with_val(BITS, 1.5), &p).unwrap();
        assert!(rel_err(&v, &parse("0.61709947371676689746767996597390580962763387402926")) < 1e-45);
    }

    #[test]
    fn weight_is_positive_and_decays() {
        let w = Weight::new(&halves(), BITS).unwrap();
        for k in -40..=40 {
            assert!(w.eval(&Float::with_val(BITS, f64::from(k) / 2.0)).unwrap() > 0);
        }
        let two_pi_cubed = (2.0 * std::f64::consts::PI).powi(3);
        let mut last = f64::INFINITY;
        for z in [10.0, 20.0, 30.0] {
            let v = w.eval(&Float::with_val(BITS, z)).unwrap();
            let scaled = (v * Float::with_val(BITS, std::f64::consts::PI * z).exp()).to_f64()
                / ((z / 2.0).powi(6) * two_pi_cubed);
            assert!(scaled < last && scaled > 1.0);
            last = scaled;
        }
    }

    #[test]
    fn weight_is_invariant_under_the_other_pairing() {
        let p = RealParameterQuad::from_ratios([(1, 3), (3, 4), (2, 5), (1, 5)]).to_parameter_set();
        let swapped = p.swap_ab().swap_cd();
        for z in [-4.0, 0.3, 7.0] {
            let z = Float::with_val(BITS, z);
            assert!(rel_err(&weight_w(&z, &p).unwrap(), &weight_w(&z, &swapped).unwrap()) < 1e-48);
        }
    }

    #[test]
    fn h0_matches_oracle_and_is_real() {
        let v = h0(&halves(), BITS).unwrap();
        assert!(rel_err(&v, &parse("0.18349970667668950638152556263687135091595615591097")) < 1e-45);
        let p = RealParameterQuad::from_ratios([(1, 3), (3, 4), (2, 5), (1, 5)]).to_parameter_set();
        let z = h0_complex(&p, BITS).unwrap();
        assert!(rel_err(z.real(), &parse("0.13549449329716906484953406482709577071726676150597")) < 1e-45);
        assert!(z.imag().to_f64().abs() < 1e-48);
    }

    #[test]
    fn hypotheses_are_enforced() {
        let p = RealParameterQuad::from_ratios([(1, 2), (0, 1), (1, 2), (1, 2)]).to_parameter_set();
        assert!(matches!(weight_w(&Float::with_val(BITS, 0), &p), Err(Error::InvalidParameters(_))));
        let p = ParameterSet::new(
            ComplexRational::parse("1/2+1/2i").unwrap(),
            ComplexRational::parse("1/2+1/2i").unwrap(),
            ComplexRational::parse("1/2+1/2i").unwrap(),
            ComplexRational::parse("1/2-1/2i").unwrap(),
        );
        assert!(matches!(orthogonality_gram(&p, &OrthoConfig::default()), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn small_gram() {
        let cfg = OrthoConfig { n_max: 2, precision_digits: 30, ..OrthoConfig::default() };
        let report = orthogonality_gram(&halves(), &cfg).unwrap();
        assert!(report.pass, "{:?}", serde_json::to_string(&report).unwrap());
        // independent quadrature value of g11 (mpmath, 60 digits): 2.305925321725478743.../π
        let g11 = Float::with_val(BITS, parse("2.30592532172547874347274868291") / Float::with_val(BITS, Constant::Pi));
        let rel = (Float::with_val(BITS, &report.gram[1][1] - &g11) / &g11).abs().to_f64();
        assert!(rel < 1e-25, "{rel}");
        assert!(report.max_offdiag_rel < 1e-25);
        let u1 = Float::with_val(BITS, &report.gram[1][1] / &report.gram[0][0]).to_f64();
        assert!((u1 - 4.0).abs() < 1e-20);
    }
}
