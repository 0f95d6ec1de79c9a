//! Tiling and packing classification against translation sets, weak-tiling
//! verification, shift-overlap minima, and the reconstruction of the unique
//! weak-tiling comb for near-interval sets.
//!
//! Everything here is exact: coverings are rational step functions and a
//! verdict is a statement about the given window with no tolerances.

use crate::analysis::{covering_function, DiracComb, StepFn, Window};
use crate::scalar::Coord;
use crate::stepset::{StepSet, StepSetError};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TilingError {
    #[error("window of width {window} is smaller than one period {period}")]
    WindowTooSmall { window: String, period: String },
    #[error(
        "set width {width} is not below 3/2; the 3/2 bound is sharp (width-3/2 sets \
         can tile and admit spectra without any lattice structure)"
    )]
    WidthHypothesis { width: String },
    #[error("set must have measure 1, found {measure}")]
    MeasureNotOne { measure: String },
    #[error("delta must satisfy 0 < delta < 1, found {delta}")]
    BadDelta { delta: String },
    #[error(transparent)]
    Step(#[from] StepSetError),
}

/// Discrete translation set `representatives + period * Z`, or a finite set
/// when `period` is absent. Representatives are reduced modulo the period,
/// sorted, and must be distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationSet<T> {
    representatives: Vec<T>,
    period: Option<T>,
}

impl<T: Coord> TranslationSet<T> {
    pub fn lattice(representatives: Vec<T>, period: T) -> Self {
        assert!(period.is_positive(), "period must be positive");
        let mut reps: Vec<T> = representatives
            .into_iter()
            .map(|r| {
                let k = (r.clone() / period.clone()).floor_int();
                r - period.clone() * T::from_int(k)
            })
            .collect();
        reps.sort();
        reps.dedup();
        TranslationSet {
            representatives: reps,
            period: Some(period),
        }
    }

    pub fn finite(mut points: Vec<T>) -> Self {
        points.sort();
        points.dedup();
        TranslationSet {
            representatives: points,
            period: None,
        }
    }

    pub fn integers() -> Self {
        Self::lattice(vec![T::zero()], T::one())
    }

    pub fn representatives(&self) -> &[T] {
        &self.representatives
    }

    pub fn period(&self) -> Option<&T> {
        self.period.as_ref()
    }

    pub fn contains_zero(&self) -> bool {
        self.enumerate_in(&-T::one(), &T::one())
            .iter()
            .any(|x| x.is_zero())
    }

    /// All elements in `[lo, hi]`, sorted.
    pub fn enumerate_in(&self, lo: &T, hi: &T) -> Vec<T> {
        let mut out = Vec::new();
        match &self.period {
            None => {
                for r in &self.representatives {
                    if lo <= r && r <= hi {
                        out.push(r.clone());
                    }
                }
            }
            Some(p) => {
                for r in &self.representatives {
                    let k_lo = ((lo.clone() - r.clone()) / p.clone()).ceil_int();
                    let k_hi = ((hi.clone() - r.clone()) / p.clone()).floor_int();
                    for k in k_lo..=k_hi {
                        out.push(r.clone() + p.clone() * T::from_int(k));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Smallest gap between consecutive elements (None for singletons with
    /// no period).
    pub fn min_gap(&self) -> Option<T> {
        match &self.period {
            Some(p) => {
                let lo = -p.clone();
                let hi = p.clone() + p.clone();
                let pts = self.enumerate_in(&lo, &hi);
                pts.windows(2).map(|w| w[1].clone() - w[0].clone()).min()
            }
            None => {
                let pts = &self.representatives;
                pts.windows(2).map(|w| w[1].clone() - w[0].clone()).min()
            }
        }
    }

    /// Unit-weight Dirac comb supported on this translation set.
    pub fn to_comb(&self) -> DiracComb<T> {
        match &self.period {
            Some(p) => DiracComb::lattice(self.representatives.clone(), p.clone()),
            None => DiracComb::finite(
                self.representatives
                    .iter()
                    .map(|r| (r.clone(), T::one()))
                    .collect(),
            ),
        }
    }
}

impl<T: Coord> fmt::Display for TranslationSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, r) in self.representatives.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")?;
        if let Some(p) = &self.period {
            write!(f, " + {p} Z")?;
        }
        Ok(())
    }
}

/// Windowed tiling/packing classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Tiling,
    PackingNotTiling,
    Neither,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Tiling => write!(f, "tiling"),
            Classification::PackingNotTiling => write!(f, "packing-not-tiling"),
            Classification::Neither => write!(f, "neither"),
        }
    }
}

/// Exact covering sweep over a window.
#[derive(Debug, Clone)]
pub struct CoveringReport<T> {
    pub covering: StepFn<T>,
    pub min_multiplicity: T,
    pub max_multiplicity: T,
    pub classification: Classification,
    pub window: Window<T>,
}

/// Classify `set + Lambda` on `window`.
///
/// The covering is computed with every translate that can reach the window
/// (the atom enumeration is expanded by the support span internally), so the
/// classification is exact on the whole given window. For a periodic
/// translation set a window of at least one period is required, which makes
/// the windowed verdict globally conclusive.
pub fn covering_report<T: Coord>(
    set: &StepSet<T>,
    lambda: &TranslationSet<T>,
    window: &Window<T>,
) -> Result<CoveringReport<T>, TilingError> {
    if let Some(p) = lambda.period() {
        if &window.width() < p {
            return Err(TilingError::WindowTooSmall {
                window: window.width().to_string(),
                period: p.to_string(),
            });
        }
    }
    let covering = covering_function(set, &lambda.to_comb(), window).canonical();
    let min = covering.min_value().unwrap_or_else(T::zero);
    let max = covering.max_value().unwrap_or_else(T::zero);
    let one = T::one();
    let classification = if min == one && max == one {
        Classification::Tiling
    } else if max <= one {
        Classification::PackingNotTiling
    } else {
        Classification::Neither
    };
    Ok(CoveringReport {
        covering,
        min_multiplicity: min,
        max_multiplicity: max,
        classification,
        window: window.clone(),
    })
}

/// Outcome of a weak-tiling comparison: either the covering equals the
/// complement indicator a.e. on the window, or the exact residual.
#[derive(Debug, Clone)]
pub enum WeakTiling<T> {
    Pass,
    Fail { residual: StepFn<T> },
}

impl<T> WeakTiling<T> {
    pub fn passed(&self) -> bool {
        matches!(self, WeakTiling::Pass)
    }
}

/// Compare `indicator_E * mu` with `indicator of the complement of E` on
/// `window`, exactly.
pub fn weak_tiling_check<T: Coord>(
    set: &StepSet<T>,
    mu: &DiracComb<T>,
    window: &Window<T>,
) -> WeakTiling<T> {
    let covering = covering_function(set, mu, window);
    let target = StepFn::constant_on(window, T::one()).sub(&StepFn::indicator_on(set, window));
    let residual = covering.sub(&target).canonical();
    if residual.is_zero() {
        WeakTiling::Pass
    } else {
        WeakTiling::Fail { residual }
    }
}

/// Exact minimum of the autocorrelation over `[0, 1 - delta]` for a
/// measure-1 set of width strictly below 3/2. The minimum of a piecewise
/// linear function is attained at a breakpoint or an endpoint, so the
/// result is an exact rational, strictly positive whenever the width
/// hypothesis holds.
pub fn min_overlap<T: Coord>(set: &StepSet<T>, delta: &T) -> Result<T, TilingError> {
    let measure = set.measure();
    if !measure.is_one() {
        return Err(TilingError::MeasureNotOne {
            measure: measure.to_string(),
        });
    }
    if !(delta.is_positive() && delta < &T::one()) {
        return Err(TilingError::BadDelta {
            delta: delta.to_string(),
        });
    }
    let width = set.width();
    let three_halves = T::from_frac(3, 2);
    if width >= three_halves {
        return Err(TilingError::WidthHypothesis {
            width: width.to_string(),
        });
    }
    let k = crate::analysis::autocorrelation(set);
    Ok(k.min_on(&T::zero(), &(T::one() - delta.clone())))
}

/// Trace of the weak-tiling reconstruction for an admissible set: the
/// normalized extremes, the complement supremum `t`, a positivity witness
/// for the autocorrelation, the candidate punctured-integer comb, and the
/// exact residual of its weak-tiling identity.
#[derive(Debug, Clone)]
pub struct ReconstructionTrace<T> {
    /// Supremum of the normalized set (infimum translated to 0).
    pub r: T,
    /// Essential supremum of `[0, r-1]` minus the set; `r - 1` when that
    /// region is null.
    pub t: T,
    /// Gap `r - 1 - t` (zero in the degenerate case).
    pub gap: T,
    /// Whether `[0, r-1)` is covered by the set up to a null set.
    pub complement_in_prefix_null: bool,
    /// Exact minimum of the autocorrelation over `[0, 99/100]`.
    pub overlap_witness: T,
    /// Exact value of the prefix cross-correlation at zero, which must
    /// equal `gap`; `None` in the degenerate case.
    pub prefix_correlation_at_zero: Option<T>,
    /// The candidate comb (integers with the origin removed).
    pub comb: DiracComb<T>,
    /// Weak-tiling comparison of the candidate comb on the window.
    pub weak_tiling: WeakTiling<T>,
    /// Shift applied to move the infimum to zero.
    pub normalization_shift: T,
    pub window: Window<T>,
}

impl<T: Coord> ReconstructionTrace<T> {
    pub fn passed(&self) -> bool {
        self.weak_tiling.passed()
    }

    /// Largest absolute deviation of the covering from the complement
    /// indicator (zero iff the trace passes).
    pub fn residual_max(&self) -> T {
        match &self.weak_tiling {
            WeakTiling::Pass => T::zero(),
            WeakTiling::Fail { residual } => residual.max_abs(),
        }
    }
}

/// Reconstruct and verify the unique candidate weak-tiling comb for a
/// measure-1 set of width below 3/2.
///
/// The set is translated so its infimum is 0 (recorded in the trace). The
/// residual is exactly zero precisely when the set tiles by the integers;
/// otherwise the failing residual witnesses that no comb supported on the
/// punctured integers can weakly tile the complement.
pub fn reconstruct_weak_tiling<T: Coord>(
    set: &StepSet<T>,
    window: &Window<T>,
) -> Result<ReconstructionTrace<T>, TilingError> {
    let measure = set.measure();
    if !measure.is_one() {
        return Err(TilingError::MeasureNotOne {
            measure: measure.to_string(),
        });
    }
    let (inf, _) = set.extremes()?;
    let shift = -inf;
    let normalized = set.translate(shift.clone());
    let (zero, r) = normalized.extremes()?;
    debug_assert!(zero.is_zero());
    let width = r.clone();
    if width >= T::from_frac(3, 2) {
        return Err(TilingError::WidthHypothesis {
            width: width.to_string(),
        });
    }

    // t = esssup([0, r-1] n complement); the canonical half-open
    // representative of that region is [0, r-1) \ E.
    let r_minus_1 = r.clone() - T::one();
    let prefix_gap = if r_minus_1.is_positive() {
        StepSet::interval(T::zero(), r_minus_1.clone()).subtract(&normalized)
    } else {
        StepSet::empty()
    };
    let (t, complement_null) = match prefix_gap.extremes() {
        Ok((_, sup)) => (sup, false),
        Err(_) => (r_minus_1.clone(), true),
    };
    let gap = r_minus_1.clone() - t.clone();

    // In the nondegenerate case the correlation with the gap window must
    // open at exactly the gap length: m(E n (t, r-1)) = r - 1 - t.
    let prefix_correlation_at_zero = if gap.is_positive() {
        let probe = StepSet::interval(T::one() - r.clone(), -t.clone());
        let g = crate::analysis::cross_correlation(&normalized, &probe);
        Some(g.eval(&T::zero()))
    } else {
        None
    };

    let overlap_witness = min_overlap(&normalized, &T::from_frac(1, 100))?;
    let comb = DiracComb::integers_without_origin();
    let weak_tiling = weak_tiling_check(&normalized, &comb, window);

    Ok(ReconstructionTrace {
        r,
        t,
        gap,
        complement_in_prefix_null: complement_null,
        overlap_witness,
        prefix_correlation_at_zero,
        comb,
        weak_tiling,
        normalization_shift: shift,
        window: window.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use num_traits::Signed;

    fn q(n: i64, d: i64) -> Q {
        Q::from_frac(n, d)
    }

    fn set(raw: &[((i64, i64), (i64, i64))]) -> StepSet<Q> {
        StepSet::from_fracs(raw).unwrap()
    }

    fn golden() -> StepSet<Q> {
        set(&[((0, 1), (1, 2)), ((1, 1), (3, 2))])
    }

    fn golden_lattice() -> TranslationSet<Q> {
        TranslationSet::lattice(vec![q(0, 1), q(1, 2)], q(2, 1))
    }

    fn three_piece() -> StepSet<Q> {
        set(&[((0, 1), (1, 8)), ((1, 4), (1, 1)), ((9, 8), (5, 4))])
    }

    #[test]
    fn unit_interval_tiles_integers() {
        let report = covering_report(
            &set(&[((0, 1), (1, 1))]),
            &TranslationSet::integers(),
            &Window::from_ints(-2, 2),
        )
        .unwrap();
        assert_eq!(report.classification, Classification::Tiling);
    }

    #[test]
    fn golden_set_tiles_its_coset_lattice() {
        let report =
            covering_report(&golden(), &golden_lattice(), &Window::from_ints(-2, 2)).unwrap();
        assert_eq!(report.classification, Classification::Tiling);
        assert_eq!(report.min_multiplicity, q(1, 1));
        assert_eq!(report.max_multiplicity, q(1, 1));
    }

    #[test]
    fn unit_interval_packs_but_does_not_tile_even_integers() {
        let report = covering_report(
            &set(&[((0, 1), (1, 1))]),
            &TranslationSet::lattice(vec![q(0, 1)], q(2, 1)),
            &Window::from_ints(-4, 4),
        )
        .unwrap();
        assert_eq!(report.classification, Classification::PackingNotTiling);
    }

    #[test]
    fn golden_set_is_neither_for_integers() {
        let report = covering_report(
            &golden(),
            &TranslationSet::integers(),
            &Window::from_ints(-2, 2),
        )
        .unwrap();
        assert_eq!(report.classification, Classification::Neither);
        assert_eq!(report.min_multiplicity, q(0, 1));
        assert_eq!(report.max_multiplicity, q(2, 1));
    }

    #[test]
    fn covering_window_must_cover_a_period() {
        let err = covering_report(
            &golden(),
            &golden_lattice(),
            &Window::new(q(0, 1), q(1, 1)),
        )
        .unwrap_err();
        assert!(matches!(err, TilingError::WindowTooSmall { .. }));
    }

    #[test]
    fn classification_is_translation_invariant() {
        let shift = q(7, 3);
        let report = covering_report(
            &golden().translate(shift.clone()),
            &TranslationSet::lattice(vec![shift.clone(), shift + q(1, 2)], q(2, 1)),
            &Window::from_ints(-2, 4),
        )
        .unwrap();
        assert_eq!(report.classification, Classification::Tiling);
    }

    #[test]
    fn punctured_integers_weakly_tile_unit_interval_complement() {
        let outcome = weak_tiling_check(
            &set(&[((0, 1), (1, 1))]),
            &DiracComb::integers_without_origin(),
            &Window::from_ints(-3, 3),
        );
        assert!(outcome.passed());
    }

    #[test]
    fn golden_lattice_without_origin_weakly_tiles_golden_complement() {
        let comb = golden_lattice().to_comb().without(vec![q(0, 1)]);
        let outcome = weak_tiling_check(&golden(), &comb, &Window::from_ints(-4, 4));
        assert!(outcome.passed());
    }

    #[test]
    fn single_misplaced_atom_fails_with_residual_evidence() {
        let e = set(&[((0, 1), (1, 1))]);
        let comb = DiracComb::finite(vec![(q(1, 2), q(1, 1))]);
        match weak_tiling_check(&e, &comb, &Window::from_ints(0, 2)) {
            WeakTiling::Pass => panic!("must fail"),
            WeakTiling::Fail { residual } => {
                // excess +1 on [1/2,1) (covered but inside E), deficit -1 on [3/2,2)
                assert_eq!(residual.eval(&q(3, 4)), q(1, 1));
                assert_eq!(residual.eval(&q(7, 4)), q(-1, 1));
            }
        }
    }

    #[test]
    fn min_overlap_tent() {
        let v = min_overlap(&set(&[((0, 1), (1, 1))]), &q(1, 100)).unwrap();
        assert_eq!(v, q(1, 100));
    }

    #[test]
    fn min_overlap_three_piece_is_positive() {
        let v = min_overlap(&three_piece(), &q(1, 100)).unwrap();
        assert!(v.is_positive());
    }

    #[test]
    fn min_overlap_rejects_full_width_sets() {
        let err = min_overlap(&golden(), &q(1, 100)).unwrap_err();
        assert!(matches!(err, TilingError::WidthHypothesis { .. }));
        assert!(err.to_string().contains("3/2"));
    }

    #[test]
    fn reconstruction_unit_interval() {
        let trace =
            reconstruct_weak_tiling(&set(&[((0, 1), (1, 1))]), &Window::from_ints(-3, 3)).unwrap();
        assert_eq!(trace.r, q(1, 1));
        assert_eq!(trace.t, q(0, 1));
        assert!(trace.passed());
        assert_eq!(trace.residual_max(), q(0, 1));
    }

    #[test]
    fn reconstruction_three_piece() {
        let trace = reconstruct_weak_tiling(&three_piece(), &Window::from_ints(-3, 3)).unwrap();
        assert_eq!(trace.r, q(5, 4));
        assert_eq!(trace.t, q(1, 4));
        assert_eq!(trace.gap, q(0, 1));
        assert!(trace.passed());
    }

    #[test]
    fn reconstruction_rejects_golden_width() {
        let err = reconstruct_weak_tiling(&golden(), &Window::from_ints(-3, 3)).unwrap_err();
        assert!(matches!(err, TilingError::WidthHypothesis { .. }));
    }

    #[test]
    fn reconstruction_nondegenerate_gap_records_prefix_correlation() {
        // E = [0,1/16) u [1/8,1) u [9/8, 19/16): measure 1, r = 19/16,
        // prefix [0, 3/16) misses [1/16, 1/8), so t = 1/8 < r - 1.
        let e = set(&[((0, 1), (1, 16)), ((1, 8), (1, 1)), ((9, 8), (19, 16))]);
        assert_eq!(e.measure(), q(1, 1));
        let trace = reconstruct_weak_tiling(&e, &Window::from_ints(-3, 3)).unwrap();
        assert_eq!(trace.r, q(19, 16));
        assert_eq!(trace.t, q(1, 8));
        assert_eq!(trace.gap, q(1, 16));
        assert_eq!(trace.prefix_correlation_at_zero, Some(q(1, 16)));
        // not an integer tiling, so the candidate comb must fail
        assert!(!trace.passed());
        assert!(trace.residual_max().is_positive());
    }

    #[test]
    fn translation_set_enumeration_and_gap() {
        let l = golden_lattice();
        let pts = l.enumerate_in(&q(-2, 1), &q(2, 1));
        assert_eq!(
            pts,
            vec![q(-2, 1), q(-3, 2), q(0, 1), q(1, 2), q(2, 1)]
        );
        assert_eq!(l.min_gap(), Some(q(1, 2)));
        assert!(l.contains_zero());
    }
}
