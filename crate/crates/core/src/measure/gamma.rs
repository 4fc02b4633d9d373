//! Complex log-Gamma at arbitrary precision, Stirling series with upward recursion.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::float::Constant;
use rug::{Complex, Float, Integer, Rational};

use crate::error::{Error, Result};

/// Guard bits carried through the series and the recursion.
const GUARD: u32 = 24;

/// `B_0, B_1, …` with `B_1 = −1/2`, grown on demand.
fn bernoulli_upto(n: usize) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let mut cache = CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1)])).lock().expect("bernoulli cache");
    while cache.len() <= n {
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let m = cache.len() as u32;
        let mut acc = Rational::new();
        for (j, b) in cache.iter().enumerate() {
            acc += Rational::from(b * Integer::from(Integer::binomial_u(m + 1, j as u32)));
        }
        cache.push(-acc / Integer::from(m + 1));
    }
    cache[..=n].to_vec()
}

/// Stirling radius and coefficients `B_{2k} / (2k(2k−1))` for a working precision.
struct Series {
    radius: f64,
    coeffs: Vec<Float>,
    half_log_two_pi: Float,
}

fn series(bits: u32) -> Arc<Series> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Series>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().expect("series cache").get(&bits) {
        return s.clone();
    }
    // smallest term of the series is about e^{−2π|z|}
    let radius = 0.14 * f64::from(bits) + 4.0;
    let terms = (std::f64::consts::PI * radius).ceil() as usize + 2;
    let b = bernoulli_upto(2 * terms);
    let coeffs = (1..=terms)
        .map(|k| {
            let den = Integer::from(2 * k) * Integer::from(2 * k - 1);
            Float::with_val(bits, Rational::from(&b[2 * k] / den))
        })
        .collect();
    let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
    let s = Arc::new(Series { radius, coeffs, half_log_two_pi: two_pi.ln() / 2u32 });
    cache.lock().expect("series cache").insert(bits, s.clone());
    s
}

fn check_pole(z: &Complex) -> Result<()> {
    let (re, im) = z.clone().into_real_imag();
    if im.is_zero() && re.is_integer() && re <= 0 {
        return Err(Error::PoleError(format!("{}", re.to_f64())));
    }
    Ok(())
}

/// Number of unit steps taking `z` to the region `|z| ≥ R`, `re z ≥ 0`.
fn shift_count(z: &Complex, radius: f64) -> u32 {
    let x = z.real().to_f64();
    let y = z.imag().to_f64();
    let reach = if y.abs() < radius { (radius * radius - y * y).sqrt() - x } else { 0.0 };
    reach.max(-x).max(0.0).ceil() as u32
}

/// Stirling approximation of `ln Γ(w)` for `|w| ≥ R`, `re w ≥ 0`, at the precision of `w`.
fn stirling(w: &Complex, s: &Series) -> Complex {
    let bits = w.prec().0;
    let ln_w = Complex::with_val(bits, w.ln_ref());
    let mut acc = Complex::with_val(bits, w - Float::with_val(bits, 0.5));
    acc *= &ln_w;
    acc -= w;
    acc += &s.half_log_two_pi;
    let inv = Complex::with_val(bits, w.recip_ref());
    let inv2 = Complex::with_val(bits, inv.square_ref());
    let mut power = inv;
    let cutoff = Float::with_val(bits, Float::i_exp(1, -(bits as i32)));
    for c in &s.coeffs {
        let term = Complex::with_val(bits, &power * c);
        let small = Float::with_val(bits, term.abs_ref()) < cutoff;
        acc += term;
        if small {
            break;
        }
        power *= &inv2;
    }
    acc
}

/// Principal-branch `ln Γ(z)` at the precision of `z`.
///
/// The recursion `ln Γ(z) = ln Γ(z + m) − Σ_{j<m} ln(z + j)` with principal logarithms
/// lands on the branch that is continuous off the negative real axis, so no reflection
/// is needed for `re z < 1/2`.
pub fn log_gamma(z: &Complex) -> Result<Complex> {
    check_pole(z)?;
    let bits = z.prec().0;
    let wp = bits + GUARD;
    let s = series(wp);
    let m = shift_count(z, s.radius);
    let mut w = Complex::with_val(wp, z);
    let mut logs = Complex::new(wp);
    for _ in 0..m {
        logs += Complex::with_val(wp, w.ln_ref());
        w += 1u32;
    }
    let mut out = stirling(&w, &s);
    out -= logs;
    Ok(Complex::with_val(bits, out))
}

/// `ln |Γ(z)|`, using one logarithm of the product of the shift factors.
pub fn log_abs_gamma(z: &Complex) -> Result<Float> {
    check_pole(z)?;
    let bits = z.prec().0;
    let wp = bits + GUARD;
    let s = series(wp);
    let m = shift_count(z, s.radius);
    let mut w = Complex::with_val(wp, z);
    let mut product = Complex::with_val(wp, 1);
    for _ in 0..m {
        product *= &w;
        w += 1u32;
    }
    let abs_sq = Float::with_val(wp, product.norm_ref());
    let stir = stirling(&w, &s);
    let (re, _) = stir.into_real_imag();
    Ok(Float::with_val(bits, re - abs_sq.ln() / 2u32))
}

/// Complex from an exact complex rational at the given precision.
pub fn complex_from_rational(re: &Rational, im: &Rational, bits: u32) -> Complex {
    Complex::with_val(bits, (Float::with_val(bits, re), Float::with_val(bits, im)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const BITS: u32 = 175;

    fn cx(re: f64, im: f64) -> Complex {
        Complex::with_val(BITS, (re, im))
    }

    fn parse(s: &str) -> Float {
        Float::with_val(BITS, Float::parse(s).unwrap())
    }

    fn close(a: &Float, b: &Float, digits: i32) -> bool {
        let diff = Float::with_val(BITS, a - b).abs();
        let scale = Float::with_val(BITS, b.abs_ref()).max(&Float::with_val(BITS, 1));
        use rug::ops::Pow;
        diff <= scale * Float::with_val(BITS, Float::with_val(BITS, 10).pow(-digits))
    }

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli_upto(12);
        assert_eq!(b[1], Rational::from((-1, 2)));
        assert_eq!(b[2], Rational::from((1, 6)));
        assert_eq!(b[4], Rational::from((-1, 30)));
        assert_eq!(b[12], Rational::from((-691, 2730)));
        assert!(b[3].cmp0().is_eq() && b[11].cmp0().is_eq());
    }

    #[test]
    fn trivial_values() {
        assert!(log_gamma(&cx(1.0, 0.0)).unwrap().abs().real().to_f64() < 1e-50);
        let half = log_gamma(&cx(0.5, 0.0)).unwrap();
        let expected = Float::with_val(BITS, Constant::Pi).sqrt().ln();
        assert!(close(half.real(), &expected, 50));
        assert!(half.imag().is_zero() || half.imag().to_f64().abs() < 1e-50);
        // Γ(6) = 120
        let six = log_gamma(&cx(6.0, 0.0)).unwrap();
        assert!(close(six.real(), &Float::with_val(BITS, 120).ln(), 50));
    }

    /// Reference values from mpmath.loggamma at 60 digits.
    const ORACLE: &[(&str, &str, &str, &str)] = &[
        (
            "2",
            "3",
            "-2.092851753092733349564188625030375261693285296447435788",
            "2.302396543466867626153707617788581578292789221370983955",
        ),
        (
            "-2.5",
            "0.5",
            "-0.9350856212982774786825883849413803034468172044216396722",
            "-8.870962885247459198645824716484508629677997176761553252",
        ),
        (
            "0.3",
            "-7",
            "-10.46567444670291887401003499019120481369791344371127749",
            "-6.310309647040768173198800735945681757872393026483424766",
        ),
        (
            "-7.25",
            "-3",
            "-16.05383571426364752610846229879472128899165901393987643",
            "18.13068320340774399860916328973056121961800232171130687",
        ),
        (
            "12.5",
            "40",
            "-17.47130985551788196480294413442575434070905041050585599",
            "124.6317621560835397202200978753370036138542484670266753",
        ),
    ];

    #[test]
    fn matches_oracle_values() {
        for &(re, im, lre, lim) in ORACLE {
            let z = Complex::with_val(BITS, (parse(re), parse(im)));
            let v = log_gamma(&z).unwrap();
            assert!(close(v.real(), &parse(lre), 48), "re at {re}+{im}i: {}", v.real());
            assert!(close(v.imag(), &parse(lim), 48), "im at {re}+{im}i: {}", v.imag());
            let a = log_abs_gamma(&z).unwrap();
            assert!(close(&a, &parse(lre), 48));
        }
    }

    #[test]
    fn recurrence_and_reflection() {
        let z = cx(0.3, 1.7);
        let lhs = log_gamma(&Complex::with_val(BITS, &z + 1u32)).unwrap();
        let rhs = Complex::with_val(BITS, log_gamma(&z).unwrap() + Complex::with_val(BITS, z.ln_ref()));
        assert!(close(lhs.real(), rhs.real(), 50) && close(lhs.imag(), rhs.imag(), 50));
        // Γ(z)Γ(1−z) = π / sin(πz), compared through the exponential (branch free)
        let z = cx(-3.4, 0.8);
        let one_minus = Complex::with_val(BITS, 1 - z.clone());
        let sum = Complex::with_val(BITS, log_gamma(&z).unwrap() + log_gamma(&one_minus).unwrap());
        let lhs = sum.exp();
        let pi = Float::with_val(BITS, Constant::Pi);
        let rhs = Complex::with_val(BITS, Complex::with_val(BITS, &z * &pi).sin().recip()) * &pi;
        assert!(close(lhs.real(), rhs.real(), 48) && close(lhs.imag(), rhs.imag(), 48));
    }

    #[test]
    fn modulus_on_the_critical_line() {
        // |Γ(1/2 + iy)|² = π / cosh(πy)
        for y in [0.0, 0.75, 3.0, 21.5] {
            let v = log_abs_gamma(&cx(0.5, y)).unwrap();
            let pi = Float::with_val(BITS, Constant::Pi);
            let expected = (Float::with_val(BITS, &pi / Float::with_val(BITS, &pi * y).cosh())).ln() / 2u32;
            assert!(close(&v, &expected, 48), "y = {y}");
        }
    }

    #[test]
    fn poles() {
        for re in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(&cx(re, 0.0)), Err(Error::PoleError(_))));
            assert!(matches!(log_abs_gamma(&cx(re, 0.0)), Err(Error::PoleError(_))));
        }
        assert!(log_gamma(&cx(-1.0, 1e-30)).is_ok());
    }

    #[test]
    fn lower_precision_is_consistent() {
        let z = Complex::with_val(60, (2.0, 3.0));
        let v = log_gamma(&z).unwrap();
        assert!((v.real().to_f64() + 2.092851753092733).abs() < 1e-14);
    }
}
