//! Gauss–Legendre rules at arbitrary precision and composite rules built from them.

use rug::Float;

/// Nodes and weights of the `n`-point rule on `[−1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: &Float) -> (Float, Float) {
    let bits = x.prec();
    let mut p0 = Float::with_val(bits, 1);
    let mut p1 = x.clone();
    for k in 2..=n {
        let k = k as u32;
        // k P_k = (2k−1) x P_{k−1} − (k−1) P_{k−2}
        let mut next = Float::with_val(bits, x * &p1) * (2 * k - 1);
        next -= Float::with_val(bits, &p0 * (k - 1));
        next /= k;
        p0 = std::mem::replace(&mut p1, next);
    }
    // (1 − x²) P_n' = n (P_{n−1} − x P_n)
    let one_minus = Float::with_val(bits, 1 - Float::with_val(bits, x.square_ref()));
    let d = Float::with_val(bits, &p0 - Float::with_val(bits, x * &p1)) * n as u32 / one_minus;
    (p1, d)
}

impl GaussLegendre {
    pub fn new(n: usize, bits: u32) -> Self {
        assert!(n >= 2, "rule needs at least two nodes");
        let wp = bits + 16;
        let tol = Float::with_val(wp, Float::i_exp(1, -(bits as i32) - 4));
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n / 2 {
            let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut x = Float::with_val(wp, guess);
            for _ in 0..100 {
                let (p, dp) = legendre(n, &x);
                let step = Float::with_val(wp, &p / &dp);
                x -= &step;
                if step.abs() < tol {
                    break;
                }
            }
            let (_, dp) = legendre(n, &x);
            let one_minus = Float::with_val(wp, 1 - Float::with_val(wp, x.square_ref()));
            let w = Float::with_val(wp, 2 / (one_minus * Float::with_val(wp, dp.square_ref())));
            nodes.push(Float::with_val(bits, &x));
            weights.push(Float::with_val(bits, &w));
        }
        let mut all_nodes: Vec<Float> = nodes.iter().map(|x| Float::with_val(bits, -x)).collect();
        let mut all_weights = weights.clone();
        if n % 2 == 1 {
            let (_, dp) = legendre(n, &Float::new(wp));
            all_nodes.push(Float::new(bits));
            all_weights.push(Float::with_val(bits, 2 / Float::with_val(wp, dp.square_ref())));
        }
        all_nodes.extend(nodes.into_iter().rev());
        all_weights.extend(weights.into_iter().rev());
        GaussLegendre { nodes: all_nodes, weights: all_weights }
    }

    /// Nodes and weights mapped to `[lo, hi]`.
    pub fn on_interval(&self, lo: &Float, hi: &Float) -> Vec<(Float, Float)> {
        let bits = lo.prec();
        let half = Float::with_val(bits, hi - lo) / 2u32;
        let mid = Float::with_val(bits, hi + lo) / 2u32;
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| {
                (Float::with_val(bits, &mid + Float::with_val(bits, &half * x)), Float::with_val(bits, &half * w))
            })
            .collect()
    }
}

/// Panel endpoints of `[−l, l]` split into `panels` equal pieces.
pub fn panel_bounds(l: &Float, panels: usize) -> Vec<(Float, Float)> {
    let bits = l.prec();
    let width = Float::with_val(bits, l * 2u32) / panels as u32;
    (0..panels)
        .map(|k| {
            let lo = Float::with_val(bits, &width * k as u32) - l;
            let hi = Float::with_val(bits, &width * (k + 1) as u32) - l;
            (lo, hi)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_nodes_are_symmetric() {
        let rule = GaussLegendre::new(50, 175);
        let total = rule.weights.iter().fold(Float::new(175), |acc, w| acc + w);
        assert!((total - 2u32).abs() < 1e-50);
        for (a, b) in rule.nodes.iter().zip(rule.nodes.iter().rev()) {
            assert_eq!(Float::with_val(175, a + b), 0);
        }
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let rule = GaussLegendre::new(7, 120);
        for k in 0..14u32 {
            let v =
                rule.nodes.iter().zip(&rule.weights).fold(Float::new(120), |acc, (x, w)| {
                    acc + Float::with_val(120, w * rug::ops::Pow::pow(x.clone(), k))
                });
            let expected = if k % 2 == 0 { rug::Rational::from((2, k + 1)) } else { rug::Rational::new() };
            assert!((v - expected).abs() < 1e-30, "k = {k}");
        }
    }

    #[test]
    fn composite_rule_integrates_exponential() {
        let bits = 175;
        let rule = GaussLegendre::new(20, bits);
        let l = Float::with_val(bits, 3);
        let mut total = Float::new(bits);
        for (lo, hi) in panel_bounds(&l, 6) {
            for (x, w) in rule.on_interval(&lo, &hi) {
                total += w * x.exp();
            }
        }
        let exact = Float::with_val(bits, 3).exp() - Float::with_val(bits, -3).exp();
        assert!(Float::with_val(bits, total - exact).abs() < 1e-45);
    }
}
