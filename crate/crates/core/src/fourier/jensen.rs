//! Jensen-formula audit: the zero-count sum over a disc against the
//! boundary average of `log |transform|`.
//!
//! For a measure-1 set the transform is entire with value 1 at the origin,
//! so Jensen's identity reads
//! `sum over zeros a in the open disc of log(rho / |a|)
//!    = (1/2 pi) integral of log |transform(rho e^{i theta})|`.
//! Zeros are certified by the disc search; the boundary integral uses
//! adaptive panels with explicit `log |z - a|` subtraction near the circle,
//! each subtracted term restored through its exact circular average
//! `log max(rho, |a|)`.

use super::quad::adaptive_quadrature_panels;
use super::zeros::{disc_zero_enclosures, DiscSearchError, ZeroCertificate};
use super::xhat_eval;
use crate::scalar::Coord;
use crate::stepset::StepSet;
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JensenError {
    #[error("Jensen normalization needs measure 1, found {measure}")]
    MeasureNotOne { measure: String },
    #[error("radius must be positive and finite")]
    BadRadius,
    #[error("{0}")]
    Disc(DiscSearchError),
    #[error("boundary quadrature did not converge (error estimate {err:.3e})")]
    QuadratureStalled { err: f64 },
}

/// Audit of Jensen's identity at one radius.
#[derive(Debug, Clone)]
pub struct JensenReport<T> {
    pub rho: f64,
    /// Certified zeros strictly inside the open disc (multiplicities via
    /// winding counts).
    pub zeros: Vec<ZeroCertificate<T>>,
    /// Exact zeros on the circle itself; they contribute to neither side
    /// but their log-singularities are subtracted analytically.
    pub boundary_zeros: Vec<ZeroCertificate<T>>,
    /// Zero-count side: `sum winding * log(rho / |a|)`.
    pub lhs: f64,
    pub lhs_err: f64,
    /// Boundary average of `log |transform|`.
    pub rhs: f64,
    pub rhs_err: f64,
    /// `3 rho`, valid whenever the set sits inside `[0, 3/2]`.
    pub exponential_type_bound: Option<f64>,
}

impl<T> JensenReport<T> {
    /// |lhs - rhs| against the combined error budgets.
    pub fn sides_agree(&self, extra_tol: f64) -> bool {
        (self.lhs - self.rhs).abs() <= self.lhs_err + self.rhs_err + extra_tol
    }
}

/// Run the audit for a measure-1 set at radius `rho`.
pub fn jensen_audit<T: Coord>(set: &StepSet<T>, rho: f64) -> Result<JensenReport<T>, JensenError> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(JensenError::BadRadius);
    }
    let measure = set.measure();
    if !measure.is_one() {
        return Err(JensenError::MeasureNotOne {
            measure: measure.to_string(),
        });
    }
    let disc = disc_zero_enclosures(set, rho, 1e-9).map_err(JensenError::Disc)?;

    let mut lhs = 0.0;
    let mut lhs_err = 0.0;
    for cert in &disc.inside {
        let (abs_lo, abs_hi) = cert.abs_bounds();
        let mult = cert.winding as f64;
        if let Some(exact) = &cert.exact {
            lhs += mult * (rho / exact.to_f64().abs()).ln();
            lhs_err += mult * 4.0 * f64::EPSILON;
        } else {
            let mid = 0.5 * (abs_lo + abs_hi);
            lhs += mult * (rho / mid).ln();
            lhs_err += mult * (abs_hi - abs_lo) / abs_lo.max(1e-300);
        }
    }

    // Subtract log|z - c| for zeros at or near the circle so the quadrature
    // integrand stays panel-smooth; each term is restored by its exact
    // circular average log max(rho, |c|).
    let mut subtract: Vec<(Complex64, f64, f64)> = Vec::new(); // (center, multiplicity, addback)
    for cert in &disc.on_circle {
        let c = cert
            .exact
            .as_ref()
            .map(|x| Complex64::new(x.to_f64(), 0.0))
            .unwrap_or_else(|| cert.center());
        subtract.push((c, cert.winding as f64, rho.max(c.norm()).ln()));
    }
    let near_band = 0.05 * rho.max(1.0);
    for cert in &disc.inside {
        let (_, abs_hi) = cert.abs_bounds();
        if rho - abs_hi < near_band {
            let c = cert
                .exact
                .as_ref()
                .map(|x| Complex64::new(x.to_f64(), 0.0))
                .unwrap_or_else(|| cert.center());
            subtract.push((c, cert.winding as f64, rho.max(c.norm()).ln()));
        }
    }

    let integrand = |theta: f64| -> f64 {
        let z = Complex64::from_polar(rho, theta);
        let v = xhat_eval(set, z).abs().max(1e-300);
        let mut g = v.ln();
        for (c, mult, _) in &subtract {
            g -= mult * (z - c).norm().max(1e-300).ln();
        }
        g
    };

    // Panels split at the angles of all subtracted and inside zeros (both
    // the zero and its reflection angle matter on the circle).
    let mut edges: Vec<f64> = vec![0.0, TAU];
    let mut push_angle = |theta: f64| {
        let t = theta.rem_euclid(TAU);
        edges.push(t);
        edges.push((t + PI).rem_euclid(TAU));
    };
    for (c, _, _) in &subtract {
        push_angle(c.arg());
    }
    for cert in &disc.inside {
        push_angle(cert.center().arg());
    }
    edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
    edges.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    if *edges.last().unwrap() < TAU {
        edges.push(TAU);
    }

    let quad = adaptive_quadrature_panels(&integrand, &edges, 1e-9, 60_000);
    if !quad.converged && quad.error_estimate > 1e-6 {
        return Err(JensenError::QuadratureStalled {
            err: quad.error_estimate,
        });
    }
    let addback: f64 = subtract.iter().map(|(_, mult, a)| mult * a).sum();
    let rhs = quad.value / TAU + addback;
    // subtraction centers are within 1e-9 of the true zeros; the residual
    // singular mismatch integrates to O(width * |log width|)
    let rhs_err = quad.error_estimate / TAU + 1e-8 * subtract.len() as f64;

    let bound = {
        let (inf, sup) = set.extremes().expect("nonempty");
        let admissible = !inf.is_negative() && sup <= T::from_frac(3, 2);
        admissible.then_some(3.0 * rho)
    };

    Ok(JensenReport {
        rho,
        zeros: disc.inside,
        boundary_zeros: disc.on_circle,
        lhs,
        lhs_err,
        rhs,
        rhs_err,
        exponential_type_bound: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn set(raw: &[((i64, i64), (i64, i64))]) -> StepSet<Q> {
        StepSet::from_fracs(raw).unwrap()
    }

    fn unit() -> StepSet<Q> {
        set(&[((0, 1), (1, 1))])
    }

    fn golden() -> StepSet<Q> {
        set(&[((0, 1), (1, 2)), ((1, 1), (3, 2))])
    }

    #[test]
    fn empty_disc_realizes_the_mean_value_property() {
        let report = jensen_audit(&unit(), 0.5).unwrap();
        assert!(report.zeros.is_empty());
        assert_eq!(report.lhs, 0.0);
        assert!(report.rhs.abs() < 1e-7, "rhs {}", report.rhs);
    }

    #[test]
    fn unit_interval_at_two_and_a_half() {
        let report = jensen_audit(&unit(), 2.5).unwrap();
        // zeros +-1, +-2: lhs = 2 (ln 2.5 + ln 1.25)
        let expect = 2.0 * ((2.5f64).ln() + (1.25f64).ln());
        assert!((report.lhs - expect).abs() < 1e-9);
        assert!(
            (report.lhs - report.rhs).abs() < 1e-6,
            "lhs {} rhs {}",
            report.lhs,
            report.rhs
        );
        assert!(report.sides_agree(1e-6));
    }

    #[test]
    fn golden_set_respects_exponential_type_bound_with_circle_zero() {
        // at rho = 2 the zeros +-2 sit exactly on the circle
        let report = jensen_audit(&golden(), 2.0).unwrap();
        assert_eq!(report.boundary_zeros.len(), 2);
        let bound = report.exponential_type_bound.unwrap();
        assert_eq!(bound, 6.0);
        assert!(report.rhs <= bound + 1e-6, "rhs {}", report.rhs);
        assert!(report.sides_agree(1e-6));
    }

    #[test]
    fn measure_must_be_one() {
        let half = set(&[((0, 1), (1, 2))]);
        assert!(matches!(
            jensen_audit(&half, 1.0),
            Err(JensenError::MeasureNotOne { .. })
        ));
    }
}
