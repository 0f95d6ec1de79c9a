//! Zero-count growth versus the boundary-integral ceiling.
//!
//! If the transform of an admissible measure-1 set had a zero in every unit
//! interval `(n-1, n)` (together with the nonzero integers and the mirror
//! zeros), the Jensen left-hand side at radius `N` would be at least
//! `4 (N ln N - ln N!)`, while the boundary integral is capped by `3 N`.
//! The lower bound wins from `N = 8` on, so the hypothetical zero pattern
//! is impossible for large `N`.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GrowthError {
    #[error("need exactly {expected} zero moduli, got {got}")]
    WrongModuliCount { expected: usize, got: usize },
    #[error("zero modulus b_{index} = {value} is not inside ({lo}, {hi})")]
    ModulusOutOfRange {
        index: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },
}

/// One growth comparison at level `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthCheck {
    pub n: u32,
    /// Zero-count lower bound for the Jensen sum.
    pub lower: f64,
    /// Boundary-integral ceiling `3 n`.
    pub upper: f64,
    pub violated: bool,
}

/// Compare the doubled zero-count sum against `3 N`.
///
/// With `moduli` omitted the bound uses the worst case `b_n = n`, giving
/// `4 (N ln N - ln N!)` with the log-factorial summed term by term. With
/// moduli supplied, each `b_n` must lie in `(n-1, n)` and the lower bound
/// is `2 sum (ln(N/n) + ln(N/b_n))`.
pub fn growth_contradiction(n: u32, moduli: Option<&[f64]>) -> Result<GrowthCheck, GrowthError> {
    assert!(n >= 1, "n must be positive");
    let nf = n as f64;
    let lower = match moduli {
        None => {
            let mut log_factorial = 0.0;
            for k in 1..=n {
                log_factorial += (k as f64).ln();
            }
            4.0 * (nf * nf.ln() - log_factorial)
        }
        Some(bs) => {
            if bs.len() != n as usize {
                return Err(GrowthError::WrongModuliCount {
                    expected: n as usize,
                    got: bs.len(),
                });
            }
            let mut total = 0.0;
            for (i, b) in bs.iter().enumerate() {
                let k = (i + 1) as f64;
                if !(*b > k - 1.0 && *b < k) {
                    return Err(GrowthError::ModulusOutOfRange {
                        index: i + 1,
                        value: *b,
                        lo: k - 1.0,
                        hi: k,
                    });
                }
                total += (nf / k).ln() + (nf / b).ln();
            }
            2.0 * total
        }
    };
    let upper = 3.0 * nf;
    Ok(GrowthCheck {
        n,
        lower,
        upper,
        violated: lower > upper,
    })
}

/// Smallest `n <= max_n` at which the default lower bound exceeds `3 n`.
pub fn smallest_violating_level(max_n: u32) -> Option<u32> {
    (1..=max_n).find(|&n| {
        growth_contradiction(n, None)
            .map(|c| c.violated)
            .unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_is_trivially_fine() {
        let c = growth_contradiction(1, None).unwrap();
        assert_eq!(c.lower, 0.0);
        assert_eq!(c.upper, 3.0);
        assert!(!c.violated);
    }

    #[test]
    fn level_seven_is_below_the_ceiling() {
        let c = growth_contradiction(7, None).unwrap();
        assert!((c.lower - 20.385).abs() < 0.005, "{}", c.lower);
        assert!(!c.violated);
    }

    #[test]
    fn level_eight_breaks_the_ceiling() {
        let c = growth_contradiction(8, None).unwrap();
        assert!((c.lower - 24.124).abs() < 0.005, "{}", c.lower);
        assert!(c.violated);
    }

    #[test]
    fn smallest_violation_is_eight() {
        // independent scan: compute the sums directly
        for n in 1..=20u32 {
            let mut log_fact = 0.0;
            for k in 1..=n {
                log_fact += (k as f64).ln();
            }
            let direct = 4.0 * ((n as f64) * (n as f64).ln() - log_fact);
            let c = growth_contradiction(n, None).unwrap();
            assert!((c.lower - direct).abs() < 1e-12);
            assert_eq!(c.violated, direct > 3.0 * n as f64, "n = {n}");
        }
        assert_eq!(smallest_violating_level(100), Some(8));
    }

    #[test]
    fn lower_bound_is_monotone_and_eventually_dominates() {
        let mut prev = -1.0;
        for n in 1..=100 {
            let c = growth_contradiction(n, None).unwrap();
            assert!(c.lower >= prev - 1e-12);
            prev = c.lower;
            if n >= 8 {
                assert!(c.violated, "n = {n}");
            }
        }
    }

    #[test]
    fn synthetic_half_integer_moduli_violate_at_eight() {
        let moduli: Vec<f64> = (1..=8).map(|n| n as f64 - 0.5).collect();
        let c = growth_contradiction(8, Some(&moduli)).unwrap();
        // direct evaluation of the doubled log sums
        let mut expect = 0.0;
        for n in 1..=8 {
            expect += (8.0 / n as f64).ln() + (8.0 / (n as f64 - 0.5)).ln();
        }
        expect *= 2.0;
        assert!((c.lower - expect).abs() < 1e-12);
        assert!(c.violated);
    }

    #[test]
    fn out_of_range_moduli_are_rejected() {
        let err = growth_contradiction(2, Some(&[0.5, 2.0])).unwrap_err();
        assert!(matches!(err, GrowthError::ModulusOutOfRange { index: 2, .. }));
    }
}
