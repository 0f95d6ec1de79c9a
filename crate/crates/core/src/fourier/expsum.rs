//! Finite exponential sums with rational frequencies.
//!
//! For a step set `E` with intervals `[a_j, b_j)` the function
//! `H(z) = sum_j (e^{-2 pi i a_j z} - e^{-2 pi i b_j z})` equals
//! `2 pi i z` times the indicator transform, is entire, and carries all the
//! nonzero zeros. This module evaluates `H` with running error bounds,
//! bounds its derivative on horizontal strips (for certified winding
//! counts), and decides *exactly* whether `H` vanishes at a rational point
//! by reducing the corresponding sum of roots of unity modulo a cyclotomic
//! polynomial.

use crate::scalar::Coord;
use crate::stepset::StepSet;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};
use std::f64::consts::TAU;

/// `sum_j c_j e^{-2 pi i f_j z}` with integer coefficients and exact
/// rational frequencies.
#[derive(Debug, Clone)]
pub struct ExponentialSum<T> {
    coeffs: Vec<i32>,
    freqs: Vec<T>,
    freqs_f64: Vec<f64>,
}

impl<T: Coord> ExponentialSum<T> {
    /// The sum `2 pi i z * transform(E)(z)`: coefficient `+1` at each left
    /// endpoint, `-1` at each right endpoint.
    pub fn from_step_set(set: &StepSet<T>) -> Self {
        let mut coeffs = Vec::with_capacity(2 * set.interval_count());
        let mut freqs = Vec::with_capacity(2 * set.interval_count());
        for (a, b) in set.intervals() {
            coeffs.push(1);
            freqs.push(a.clone());
            coeffs.push(-1);
            freqs.push(b.clone());
        }
        let freqs_f64 = freqs.iter().map(|f| f.to_f64()).collect();
        ExponentialSum {
            coeffs,
            freqs,
            freqs_f64,
        }
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut total = Complex64::ZERO;
        for (c, f) in self.coeffs.iter().zip(&self.freqs_f64) {
            // e^{-2 pi i f z} = e^{2 pi f y} * e^{-2 pi i f x}
            let modulus = (TAU * f * z.im).exp();
            let angle = -TAU * f * z.re;
            total += (*c as f64) * Complex64::from_polar(modulus, angle);
        }
        total
    }

    /// Evaluation plus a first-order rounding bound (sum of term moduli
    /// scaled by a generous epsilon multiple).
    pub fn eval_with_error(&self, z: Complex64) -> (Complex64, f64) {
        let value = self.eval(z);
        let mut scale = 0.0;
        for (c, f) in self.coeffs.iter().zip(&self.freqs_f64) {
            scale += (c.abs() as f64) * (TAU * f * z.im).exp();
        }
        let err = scale * f64::EPSILON * (self.coeffs.len() as f64 * 4.0 + 16.0);
        (value, err)
    }

    /// Upper bound for `|H'(z)|` on the strip `y_lo <= Im z <= y_hi`.
    pub fn derivative_bound(&self, y_lo: f64, y_hi: f64) -> f64 {
        let mut total = 0.0;
        for (c, f) in self.coeffs.iter().zip(&self.freqs_f64) {
            let y_worst = if *f >= 0.0 { y_hi } else { y_lo };
            total += (c.abs() as f64) * TAU * f.abs() * (TAU * f * y_worst).exp();
        }
        total
    }

    /// Exact test for `H(xi) = 0` at a rational point.
    ///
    /// Each term is a root of unity `zeta_q^{m_j}` with `q` the lcm of the
    /// exponent denominators; the sum vanishes iff the integer polynomial
    /// `sum c_j x^{m_j}` is divisible by the `q`-th cyclotomic polynomial.
    /// Returns `false` when the test cannot be run exactly (oversized `q`),
    /// so a `true` answer is always a certificate.
    pub fn is_exact_zero_at(&self, xi: &T) -> bool {
        if xi.is_zero() {
            // H(0) = sum of coefficients = 0 always; the transform itself
            // equals the measure there, so 0 is never reported as a zero.
            return false;
        }
        const MAX_ORDER: u64 = 1 << 14;
        let mut order: BigInt = BigInt::from(1);
        let mut exponents: Vec<Ratio<BigInt>> = Vec::with_capacity(self.freqs.len());
        for f in &self.freqs {
            // exponent of e^{2 pi i .}: -f * xi, reduced mod 1
            let e = -(f.to_big_ratio() * xi.to_big_ratio());
            let frac = e.clone() - e.floor();
            order = order.lcm(frac.denom());
            exponents.push(frac);
        }
        let q = match order.to_u64() {
            Some(q) if q <= MAX_ORDER => q,
            _ => return false,
        };
        let mut poly = vec![0i128; q as usize];
        for (c, frac) in self.coeffs.iter().zip(&exponents) {
            let m = (frac.numer() * BigInt::from(q) / frac.denom())
                .to_u64()
                .expect("reduced exponent fits");
            poly[(m % q) as usize] += *c as i128;
        }
        if poly.iter().all(|c| *c == 0) {
            return true;
        }
        let phi = match cyclotomic(q) {
            Some(p) => p,
            None => return false,
        };
        match poly_rem(&poly, &phi) {
            Some(rem) => rem.iter().all(|c| *c == 0),
            None => false,
        }
    }
}

/// Coefficients of the `n`-th cyclotomic polynomial, ascending degree.
/// Uses the Moebius product with exact binomial divisions; `None` on
/// (unexpected) overflow.
fn cyclotomic(n: u64) -> Option<Vec<i128>> {
    // squarefree divisors of n with their Moebius signs
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    let mut numer: Vec<(u64, i32)> = Vec::new(); // (exponent of x^k - 1, mu sign)
    let subsets = 1u32 << primes.len();
    for mask in 0..subsets {
        let mut d = 1u64;
        let mut bits = 0;
        for (i, prime) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                d *= prime;
                bits += 1;
            }
        }
        let mu = if bits % 2 == 0 { 1 } else { -1 };
        numer.push((n / d, mu));
    }
    // poly starts at 1; multiply by (x^k - 1) for mu = +1, divide for mu = -1
    let mut poly: Vec<i128> = vec![1];
    numer.sort_by_key(|(_, mu)| -mu); // multiplications first
    for (k, mu) in numer {
        if mu == 1 {
            poly = poly_mul_binomial(&poly, k as usize)?;
        } else {
            poly = poly_div_binomial(&poly, k as usize)?;
        }
    }
    Some(poly)
}

/// `poly * (x^k - 1)`.
fn poly_mul_binomial(poly: &[i128], k: usize) -> Option<Vec<i128>> {
    let mut out = vec![0i128; poly.len() + k];
    for (i, c) in poly.iter().enumerate() {
        out[i + k] = out[i + k].checked_add(*c)?;
        out[i] = out[i].checked_sub(*c)?;
    }
    Some(out)
}

/// Exact `poly / (x^k - 1)`; the division must leave no remainder.
fn poly_div_binomial(poly: &[i128], k: usize) -> Option<Vec<i128>> {
    if poly.len() <= k {
        return None;
    }
    let mut rem: Vec<i128> = poly.to_vec();
    let mut quot = vec![0i128; poly.len() - k];
    for i in (k..poly.len()).rev() {
        let c = rem[i];
        if c != 0 {
            quot[i - k] = quot[i - k].checked_add(c)?;
            rem[i] = 0;
            rem[i - k] = rem[i - k].checked_add(c)?;
        }
    }
    if rem.iter().any(|c| *c != 0) {
        return None;
    }
    while quot.len() > 1 && *quot.last().unwrap() == 0 {
        quot.pop();
    }
    Some(quot)
}

/// Remainder of `poly` modulo the monic `divisor`.
fn poly_rem(poly: &[i128], divisor: &[i128]) -> Option<Vec<i128>> {
    let d = divisor.len() - 1;
    debug_assert_eq!(divisor[d], 1, "divisor must be monic");
    let mut rem: Vec<i128> = poly.to_vec();
    while rem.len() > d {
        let lead = *rem.last().unwrap();
        let top = rem.len() - 1;
        if lead != 0 {
            for (i, c) in divisor.iter().enumerate().take(d) {
                let idx = top - d + i;
                rem[idx] = rem[idx].checked_sub(lead.checked_mul(*c)?)?;
            }
        }
        rem.pop();
    }
    Some(rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(n: i64, d: i64) -> Q {
        Q::from_frac(n, d)
    }

    fn set(raw: &[((i64, i64), (i64, i64))]) -> StepSet<Q> {
        StepSet::from_fracs(raw).unwrap()
    }

    #[test]
    fn cyclotomic_small_orders() {
        assert_eq!(cyclotomic(1).unwrap(), vec![-1, 1]);
        assert_eq!(cyclotomic(2).unwrap(), vec![1, 1]);
        assert_eq!(cyclotomic(3).unwrap(), vec![1, 1, 1]);
        assert_eq!(cyclotomic(4).unwrap(), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6).unwrap(), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12).unwrap(), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn unit_interval_integer_zeros_are_exact() {
        let h = ExponentialSum::from_step_set(&set(&[((0, 1), (1, 1))]));
        for k in [-3i64, -1, 1, 2, 5, 17] {
            assert!(h.is_exact_zero_at(&q(k, 1)), "k = {k}");
        }
        assert!(!h.is_exact_zero_at(&q(1, 2)));
        assert!(!h.is_exact_zero_at(&q(0, 1)));
    }

    #[test]
    fn footnote_set_vanishes_at_two_thirds_exactly() {
        let h = ExponentialSum::from_step_set(&set(&[((0, 1), (1, 2)), ((3, 4), (5, 4))]));
        assert!(h.is_exact_zero_at(&q(2, 3)));
        assert!(h.is_exact_zero_at(&q(-2, 3)));
        assert!(h.is_exact_zero_at(&q(2, 1)));
        assert!(!h.is_exact_zero_at(&q(1, 2)));
        assert!(!h.is_exact_zero_at(&q(1, 1)));
    }

    #[test]
    fn golden_set_zero_pattern() {
        let h = ExponentialSum::from_step_set(&set(&[((0, 1), (1, 2)), ((1, 1), (3, 2))]));
        // zeros at the even integers and at half-integers
        assert!(h.is_exact_zero_at(&q(2, 1)));
        assert!(h.is_exact_zero_at(&q(1, 2)));
        assert!(h.is_exact_zero_at(&q(-7, 2)));
        assert!(!h.is_exact_zero_at(&q(1, 1)));
        assert!(!h.is_exact_zero_at(&q(1, 3)));
    }

    #[test]
    fn eval_matches_closed_form_for_unit_interval() {
        let h = ExponentialSum::from_step_set(&set(&[((0, 1), (1, 1))]));
        let z = Complex64::new(0.3, -0.2);
        let direct = Complex64::ONE - (-Complex64::I * TAU * z).exp();
        let (v, err) = h.eval_with_error(z);
        assert!((v - direct).norm() <= err + 1e-13);
    }

    #[test]
    fn derivative_bound_dominates_difference_quotients() {
        let h = ExponentialSum::from_step_set(&set(&[((0, 1), (1, 2)), ((1, 1), (3, 2))]));
        let bound = h.derivative_bound(-0.5, 0.5);
        let z = Complex64::new(0.7, 0.3);
        let dz = Complex64::new(1e-6, 0.0);
        let quotient = (h.eval(z + dz) - h.eval(z)).norm() / dz.norm();
        assert!(quotient <= bound);
    }
}
