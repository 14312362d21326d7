//! Truncated power series in `u = 1/s` used for the spectral tail expansion.

#[cfg(test)]
use num_complex::Complex64;

/// Ratio of two real polynomials in `u`, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Rational {
    num: Vec<f64>,
    den: Vec<f64>,
}

impl Rational {
    pub(crate) fn new(num: Vec<f64>, den: Vec<f64>) -> Self {
        debug_assert!(den.first().is_some_and(|&d| d != 0.0));
        Rational { num, den }
    }

    pub(crate) fn scaled(mut self, factor: f64) -> Self {
        self.num.iter_mut().for_each(|c| *c *= factor);
        self
    }

    #[cfg(test)]
    pub(crate) fn eval(&self, u: Complex64) -> Complex64 {
        horner(&self.num, u) / horner(&self.den, u)
    }

    /// Taylor coefficients `c_0 .. c_order` at `u = 0`.
    pub(crate) fn series(&self, order: usize) -> Vec<f64> {
        let mut out = vec![0.0; order + 1];
        for n in 0..=order {
            let mut acc = self.num.get(n).copied().unwrap_or(0.0);
            for k in 1..=n.min(self.den.len() - 1) {
                acc -= self.den[k] * out[n - k];
            }
            out[n] = acc / self.den[0];
        }
        out
    }
}

#[cfg(test)]
fn horner(coeffs: &[f64], u: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * u + c)
}

/// Product of two series truncated to the length of `a`.
pub(crate) fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    (0..n)
        .map(|i| (0..=i).map(|k| a[k] * b.get(i - k).copied().unwrap_or(0.0)).sum())
        .collect()
}

/// `exp(a) - 1` for a series with zero constant term.
pub(crate) fn expm1(a: &[f64]) -> Vec<f64> {
    debug_assert!(a.first().is_none_or(|&c| c == 0.0));
    let n = a.len();
    let mut e = vec![0.0; n];
    if n == 0 {
        return e;
    }
    e[0] = 1.0;
    for m in 1..n {
        let s: f64 = (1..=m).map(|k| k as f64 * a[k] * e[m - k]).sum();
        e[m] = s / m as f64;
    }
    e[0] = 0.0;
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn geometric_series() {
        // u / (1 + 2u) = u - 2u^2 + 4u^3 - ...
        let r = Rational::new(vec![0.0, 1.0], vec![1.0, 2.0]);
        assert_eq!(r.series(4), vec![0.0, 1.0, -2.0, 4.0, -8.0]);
    }

    #[test]
    fn expm1_of_linear_series() {
        // exp(-3u) - 1 = -3u + 9/2 u^2 - 9/2 u^3 + 27/8 u^4
        let e = expm1(&[0.0, -3.0, 0.0, 0.0, 0.0]);
        let expect = [0.0, -3.0, 4.5, -4.5, 27.0 / 8.0];
        for (a, b) in e.iter().zip(expect) {
            assert_relative_eq!(*a, b, max_relative = 1e-14);
        }
    }

    #[test]
    fn product_truncates() {
        assert_eq!(mul(&[1.0, 1.0, 0.0], &[1.0, -1.0, 0.0]), vec![1.0, 0.0, -1.0]);
    }
}
