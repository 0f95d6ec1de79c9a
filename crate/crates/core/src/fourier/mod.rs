//! Closed-form evaluation of indicator Fourier transforms on the complex
//! plane, certified zero-free intervals and zero enclosures, the swap
//! factorization of integer tilings, and the Jensen-formula audit.

pub mod expsum;
pub mod growth;
pub mod jensen;
pub mod quad;
pub mod zeros;

use crate::analysis::Window;
use crate::scalar::Coord;
use crate::stepset::StepSet;
use crate::tiling::{covering_report, Classification, TranslationSet};
use num_complex::Complex64;
use std::f64::consts::TAU;
use thiserror::Error;

pub use expsum::ExponentialSum;
pub use zeros::{
    certify_zero_free, disc_zero_enclosures, locate_real_zeros, DiscZeros, LocatedZeros, Rect,
    ZeroCertificate, ZeroFreeCertificate, ZeroFreeOutcome, ZeroKind, ZeroSearchParams,
};

/// A transform evaluation together with an absolute error bound. Results
/// from exact symbolic short-circuits carry bound zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformValue {
    pub re: f64,
    pub im: f64,
    pub abs_err: f64,
}

impl TransformValue {
    pub fn exact_zero() -> Self {
        TransformValue {
            re: 0.0,
            im: 0.0,
            abs_err: 0.0,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// `phi(w) = (1 - e^{-w}) / w`, entire with `phi(0) = 1`; the series branch
/// below `|w| = 1/2` avoids cancellation.
fn phi(w: Complex64) -> (Complex64, f64) {
    if w.norm() <= 0.5 {
        let mut term = Complex64::ONE;
        let mut total = Complex64::ZERO;
        for k in 1..=16 {
            total += term;
            term *= -w / (k + 1) as f64;
        }
        // truncation: |w|^16 / 17! is far below epsilon at |w| <= 1/2
        (total, 4.0 * f64::EPSILON)
    } else {
        let v = (Complex64::ONE - (-w).exp()) / w;
        let cancel = 4.0 * f64::EPSILON * (1.0 + (-w).exp().norm()) / w.norm();
        (v, cancel)
    }
}

/// Evaluate the indicator transform `integral over E of e^{-2 pi i x z} dx`
/// at a complex point. Entire in `z`; the value at 0 is the measure.
///
/// Each interval contributes `(b-a) e^{-2 pi i a z} phi(2 pi i (b-a) z)`,
/// stable uniformly in `|z|`.
pub fn xhat_eval<T: Coord>(set: &StepSet<T>, z: Complex64) -> TransformValue {
    let mut total = Complex64::ZERO;
    let mut err = 0.0;
    for (a, b) in set.intervals() {
        let len = (b.clone() - a.clone()).to_f64();
        let a_f = a.to_f64();
        let w = Complex64::I * TAU * len * z;
        let (phi_w, phi_err) = phi(w);
        let front = Complex64::from_polar((TAU * a_f * z.im).exp(), -TAU * a_f * z.re);
        let term = len * front * phi_w;
        total += term;
        let front_norm = front.norm();
        err += len * front_norm * (phi_err + phi_w.norm() * 8.0 * f64::EPSILON)
            + term.norm() * 4.0 * f64::EPSILON;
    }
    TransformValue {
        re: total.re,
        im: total.im,
        abs_err: err + total.norm() * 4.0 * f64::EPSILON,
    }
}

/// Evaluate at a real rational frequency with the exact-zero short-circuit:
/// when the underlying root-of-unity sum vanishes identically the result is
/// an exact zero with error bound 0.
pub fn xhat_eval_rational<T: Coord>(set: &StepSet<T>, xi: &T) -> TransformValue {
    if xi.is_zero() {
        let m = set.measure().to_f64();
        return TransformValue {
            re: m,
            im: 0.0,
            abs_err: 0.0,
        };
    }
    let sum = ExponentialSum::from_step_set(set);
    if sum.is_exact_zero_at(xi) {
        return TransformValue::exact_zero();
    }
    xhat_eval(set, Complex64::new(xi.to_f64(), 0.0))
}

#[derive(Debug, Error)]
pub enum FourierError {
    #[error("set must have measure 1, found {measure}")]
    MeasureNotOne { measure: String },
    #[error("set does not tile by the integers: covering multiplicity ranges over [{min}, {max}]")]
    NotIntegerTiling { min: String, max: String },
    #[error("set is not supported in [0, 2): the unit swap decomposition does not apply")]
    SupportOutOfRange,
    #[error("swapped part reaches {sup} > 1/2, outside the width-3/2 regime")]
    SwapBeyondHalf { sup: String },
}

/// Swap decomposition of an integer tiling `E` contained in `[0, 3/2)`:
/// the part of `[0,1)` missing from `E` reappears translated by one, and
/// the transform factors as
/// `(e^{-2 pi i xi} - 1) (transform_F(xi) - 1/(2 pi i xi))`.
#[derive(Debug, Clone)]
pub struct SwapFactorization<T> {
    /// `F = [0,1) \ E`, the swapped part; empty exactly for `E = [0,1)`.
    pub swap: StepSet<T>,
    /// Max absolute mismatch of the two factorization sides over the
    /// sample frequencies.
    pub residual: f64,
    pub samples: usize,
}

/// Default frequency sample used to spot-check the factorization identity:
/// a fixed mix of small and large rationals plus an equidistributed sweep,
/// symmetric about zero, avoiding the origin.
pub fn factorization_sample_frequencies() -> Vec<f64> {
    let mut positives = vec![1.0 / 7.0, 3.0 / 5.0, 11.0 / 3.0];
    for k in 0..29 {
        positives.push(0.137 + 0.4721 * k as f64);
    }
    let mut all = Vec::with_capacity(64);
    for p in positives {
        all.push(p);
        all.push(-p);
    }
    all
}

/// Verify the swap structure and factorization identity for an integer
/// tiling of measure 1.
pub fn swap_factorization<T: Coord>(
    set: &StepSet<T>,
) -> Result<SwapFactorization<T>, FourierError> {
    let measure = set.measure();
    if !measure.is_one() {
        return Err(FourierError::MeasureNotOne {
            measure: measure.to_string(),
        });
    }
    let (inf, sup) = set.extremes().expect("measure-1 set is nonempty");
    let window = Window::from_ints(inf.floor_int() - 1, sup.ceil_int() + 1);
    let report = covering_report(set, &TranslationSet::integers(), &window)
        .expect("window spans a period");
    if report.classification != Classification::Tiling {
        return Err(FourierError::NotIntegerTiling {
            min: report.min_multiplicity.to_string(),
            max: report.max_multiplicity.to_string(),
        });
    }
    let unit = StepSet::interval(T::zero(), T::one());
    let swap = unit.subtract(set);
    // structural check: E must be ([0,1) \ F) u (F + 1) exactly
    let rebuilt = unit.subtract(&swap).union(&swap.translate(T::one()));
    if &rebuilt != set {
        return Err(FourierError::SupportOutOfRange);
    }
    if !swap.is_empty() {
        let (_, swap_sup) = swap.extremes().expect("nonempty");
        if swap_sup > T::from_frac(1, 2) {
            return Err(FourierError::SwapBeyondHalf {
                sup: swap_sup.to_string(),
            });
        }
    }

    let freqs = factorization_sample_frequencies();
    let mut residual = 0.0f64;
    for &xi in &freqs {
        let z = Complex64::new(xi, 0.0);
        let lhs = xhat_eval(set, z).to_complex();
        let w = Complex64::I * TAU * z;
        let root_factor = (-w).exp() - Complex64::ONE;
        let fhat = xhat_eval(&swap, z).to_complex();
        // (e^{-2 pi i xi} - 1)(F^(xi) - 1/(2 pi i xi))
        //   = root_factor * F^(xi) + phi(2 pi i xi)
        let rhs = root_factor * fhat + phi(w).0;
        residual = residual.max((lhs - rhs).norm());
    }
    Ok(SwapFactorization {
        swap,
        residual,
        samples: freqs.len(),
    })
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

    fn unit() -> StepSet<Q> {
        set(&[((0, 1), (1, 1))])
    }

    #[test]
    fn transform_at_zero_is_the_measure() {
        let v = xhat_eval_rational(&unit(), &q(0, 1));
        assert_eq!(v.re, 1.0);
        assert_eq!(v.abs_err, 0.0);
    }

    #[test]
    fn unit_interval_vanishes_at_nonzero_integers() {
        for k in [-5i64, -1, 1, 2, 9] {
            let v = xhat_eval_rational(&unit(), &q(k, 1));
            assert_eq!(v.abs(), 0.0, "k = {k}");
            assert_eq!(v.abs_err, 0.0);
        }
    }

    #[test]
    fn footnote_zero_at_two_thirds() {
        let e = set(&[((0, 1), (1, 2)), ((3, 4), (5, 4))]);
        let exact = xhat_eval_rational(&e, &q(2, 3));
        assert_eq!(exact.abs(), 0.0);
        assert_eq!(exact.abs_err, 0.0);
        // pure float path agrees to near machine precision
        let float = xhat_eval(&e, Complex64::new(2.0 / 3.0, 0.0));
        assert!(float.abs() < 1e-14, "{}", float.abs());
    }

    #[test]
    fn unit_interval_at_one_half_is_minus_two_i_over_pi() {
        let v = xhat_eval(&unit(), Complex64::new(0.5, 0.0));
        assert!((v.re - 0.0).abs() < 1e-15);
        assert!((v.im + 2.0 / std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn series_and_direct_branches_agree_at_the_switch() {
        // the phi branches switch at |w| = 1/2: values straddling the
        // threshold must agree to the evaluation accuracy
        for angle in [0.0, 0.7, 2.1, 3.9, 5.5] {
            let dir = Complex64::from_polar(1.0, angle);
            let below = phi(dir * (0.5 - 1e-12)).0;
            let above = phi(dir * (0.5 + 1e-12)).0;
            assert!(
                (below - above).norm() < 1e-12,
                "angle {angle}: below {below}, above {above}, diff {:e}",
                (below - above).norm()
            );
        }
        // continuity of the full evaluation across the per-interval switch
        // |z| = 1/(4 pi) for the unit interval
        let z0 = 0.5 / TAU;
        let eps = 1e-9;
        let below = xhat_eval(&unit(), Complex64::new(z0 - eps, 0.0)).to_complex();
        let above = xhat_eval(&unit(), Complex64::new(z0 + eps, 0.0)).to_complex();
        // |d/dz transform| <= 2 pi over the unit interval
        assert!((below - above).norm() <= TAU * 2.0 * eps + 1e-12);
    }

    #[test]
    fn conjugate_symmetry_on_the_real_line() {
        let e = set(&[((0, 1), (1, 8)), ((1, 4), (1, 1)), ((9, 8), (5, 4))]);
        for xi in [0.3, 1.7, 2.9] {
            let plus = xhat_eval(&e, Complex64::new(xi, 0.0)).to_complex();
            let minus = xhat_eval(&e, Complex64::new(-xi, 0.0)).to_complex();
            assert!((plus.conj() - minus).norm() < 1e-13);
        }
    }

    #[test]
    fn translation_leaves_transform_modulus_unchanged() {
        let e = set(&[((0, 1), (1, 8)), ((1, 4), (1, 1)), ((9, 8), (5, 4))]);
        let shifted = e.translate(q(7, 5));
        for xi in [0.21, 1.13, 3.7] {
            let a = xhat_eval(&e, Complex64::new(xi, 0.0)).abs();
            let b = xhat_eval(&shifted, Complex64::new(xi, 0.0)).abs();
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn swap_factorization_unit_interval_is_trivial() {
        let f = swap_factorization(&unit()).unwrap();
        assert!(f.swap.is_empty());
        assert!(f.residual < 1e-13, "{}", f.residual);
    }

    #[test]
    fn swap_factorization_three_piece_example() {
        let e = set(&[((0, 1), (1, 8)), ((1, 4), (1, 1)), ((9, 8), (5, 4))]);
        let f = swap_factorization(&e).unwrap();
        assert_eq!(f.swap, set(&[((1, 8), (1, 4))]));
        assert!(f.residual < 1e-12, "{}", f.residual);
    }

    #[test]
    fn swap_factorization_rejects_non_tiling_with_covering_evidence() {
        let golden = set(&[((0, 1), (1, 2)), ((1, 1), (3, 2))]);
        match swap_factorization(&golden) {
            Err(FourierError::NotIntegerTiling { min, max }) => {
                assert_eq!(min, "0");
                assert_eq!(max, "2");
            }
            other => panic!("expected tiling rejection, got {other:?}"),
        }
    }

    #[test]
    fn swap_factorization_rejects_far_swaps() {
        // E = [0,1/2) u [3/2,2) tiles by the integers but its swapped part
        // [1/2,1) sits beyond 1/2.
        let e = set(&[((0, 1), (1, 2)), ((3, 2), (2, 1))]);
        match swap_factorization(&e) {
            Err(FourierError::SwapBeyondHalf { .. }) => {}
            other => panic!("expected swap rejection, got {other:?}"),
        }
    }

    #[test]
    fn parseval_spot_check() {
        // integral of |transform|^2 over [-T, T] approaches the measure;
        // tail bounded by 2 J^2 / (pi^2 T).
        let e = set(&[((0, 1), (1, 2)), ((1, 1), (3, 2))]);
        let t_cut = 1000.0;
        let f = |xi: f64| xhat_eval(&e, Complex64::new(xi, 0.0)).abs().powi(2);
        let r = quad::adaptive_quadrature(&f, -t_cut, t_cut, 1e-7, 60_000);
        let j = e.interval_count() as f64;
        let tail = 2.0 * j * j / (std::f64::consts::PI.powi(2) * t_cut);
        let diff = (r.value - e.measure().to_f64()).abs();
        assert!(
            diff <= tail + r.error_estimate + 1e-6,
            "diff {diff}, tail {tail}, quad err {}",
            r.error_estimate
        );
    }
}
