//! Canonical finite unions of half-open rational intervals.
//!
//! A [`StepSet`] is stored as a sorted list of pairwise separated intervals
//! `[a, b)`. Every constructor canonicalizes (sorts, merges overlapping and
//! touching pieces), so almost-everywhere set identities become literal
//! equality of representations. All arithmetic is exact.

use crate::scalar::Coord;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StepSetError {
    /// Input interval `index` has `a >= b`.
    #[error("interval {index} is empty or reversed: [{a}, {b})")]
    EmptyInterval { index: usize, a: String, b: String },
    /// The operation needs a nonempty set.
    #[error("operation requires a nonempty set")]
    EmptySet,
}

/// Finite union of disjoint, separated, sorted half-open intervals `[a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepSet<T> {
    intervals: Vec<(T, T)>,
}

impl<T: Coord> StepSet<T> {
    /// Canonicalize a raw list of half-open intervals: sort, merge
    /// overlapping and adjacent pieces. Rejects any pair with `a >= b`.
    pub fn new(raw: Vec<(T, T)>) -> Result<Self, StepSetError> {
        for (index, (a, b)) in raw.iter().enumerate() {
            if a >= b {
                return Err(StepSetError::EmptyInterval {
                    index,
                    a: a.to_string(),
                    b: b.to_string(),
                });
            }
        }
        let mut sorted = raw;
        sorted.sort_by(|x, y| x.0.cmp(&y.0));
        let mut intervals: Vec<(T, T)> = Vec::with_capacity(sorted.len());
        for (a, b) in sorted {
            match intervals.last_mut() {
                Some(last) if a <= last.1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => intervals.push((a, b)),
            }
        }
        Ok(StepSet { intervals })
    }

    /// The empty set.
    pub fn empty() -> Self {
        StepSet { intervals: vec![] }
    }

    /// Single interval `[a, b)`; panics on `a >= b` (use `new` for fallible
    /// construction).
    pub fn interval(a: T, b: T) -> Self {
        Self::new(vec![(a, b)]).expect("interval requires a < b")
    }

    /// Convenience constructor from `(numer, denom)` pairs.
    pub fn from_fracs(raw: &[((i64, i64), (i64, i64))]) -> Result<Self, StepSetError> {
        Self::new(
            raw.iter()
                .map(|((an, ad), (bn, bd))| (T::from_frac(*an, *ad), T::from_frac(*bn, *bd)))
                .collect(),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[(T, T)] {
        &self.intervals
    }

    pub fn interval_count(&self) -> usize {
        self.intervals.len()
    }

    /// Exact Lebesgue measure.
    pub fn measure(&self) -> T {
        self.intervals
            .iter()
            .fold(T::zero(), |acc, (a, b)| acc + (b.clone() - a.clone()))
    }

    /// `(inf, sup)` of a nonempty set; by canonicality these coincide with
    /// the essential infimum and supremum.
    pub fn extremes(&self) -> Result<(T, T), StepSetError> {
        match (self.intervals.first(), self.intervals.last()) {
            (Some(first), Some(last)) => Ok((first.0.clone(), last.1.clone())),
            _ => Err(StepSetError::EmptySet),
        }
    }

    /// `sup - inf` for nonempty sets, zero for the empty set.
    pub fn width(&self) -> T {
        match self.extremes() {
            Ok((lo, hi)) => hi - lo,
            Err(_) => T::zero(),
        }
    }

    /// Membership under the half-open convention.
    pub fn contains(&self, x: &T) -> bool {
        // Binary search on the left endpoints.
        let idx = self.intervals.partition_point(|(a, _)| a <= x);
        if idx == 0 {
            return false;
        }
        let (a, b) = &self.intervals[idx - 1];
        a <= x && x < b
    }

    /// Exact image `{sign * x + shift : x in set}`. A reflected interval
    /// `(shift - b, shift - a]` is re-canonicalized to `[shift - b, shift - a)`,
    /// which only moves a null set.
    pub fn affine_image(&self, sign: Sign, shift: T) -> Self {
        let mapped: Vec<(T, T)> = match sign {
            Sign::Plus => self
                .intervals
                .iter()
                .map(|(a, b)| (a.clone() + shift.clone(), b.clone() + shift.clone()))
                .collect(),
            Sign::Minus => self
                .intervals
                .iter()
                .rev()
                .map(|(a, b)| (shift.clone() - b.clone(), shift.clone() - a.clone()))
                .collect(),
        };
        StepSet { intervals: mapped }
    }

    pub fn translate(&self, shift: T) -> Self {
        self.affine_image(Sign::Plus, shift)
    }

    pub fn reflect(&self) -> Self {
        self.affine_image(Sign::Minus, T::zero())
    }

    /// Exact set union.
    pub fn union(&self, other: &Self) -> Self {
        let mut raw = self.intervals.clone();
        raw.extend(other.intervals.iter().cloned());
        Self::new(raw).expect("canonical inputs")
    }

    /// Exact set intersection.
    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let mut i = 0;
        let mut j = 0;
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a1, b1) = &self.intervals[i];
            let (a2, b2) = &other.intervals[j];
            let lo = T::max_of(a1.clone(), a2.clone());
            let hi = T::min_of(b1.clone(), b2.clone());
            if lo < hi {
                out.push((lo, hi));
            }
            if b1 <= b2 {
                i += 1;
            } else {
                j += 1;
            }
        }
        StepSet { intervals: out }
    }

    /// Exact set difference `self \ other`.
    pub fn subtract(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for (a, b) in &self.intervals {
            let mut cursor = a.clone();
            for (c, d) in &other.intervals {
                if d <= &cursor {
                    continue;
                }
                if c >= b {
                    break;
                }
                if c > &cursor {
                    out.push((cursor.clone(), T::min_of(c.clone(), b.clone())));
                }
                cursor = T::max_of(cursor, d.clone());
                if &cursor >= b {
                    break;
                }
            }
            if &cursor < b {
                out.push((cursor, b.clone()));
            }
        }
        StepSet { intervals: out }
    }

    pub fn boolean_combine(&self, other: &Self, mode: SetOp) -> Self {
        match mode {
            SetOp::Union => self.union(other),
            SetOp::Intersect => self.intersect(other),
            SetOp::Subtract => self.subtract(other),
        }
    }

    /// Closure of `{x - y : x, y in set}` as closed intervals.
    pub fn difference_set(&self) -> Result<DiffSet<T>, StepSetError> {
        if self.is_empty() {
            return Err(StepSetError::EmptySet);
        }
        let mut pieces = Vec::with_capacity(self.intervals.len() * self.intervals.len());
        for (a1, b1) in &self.intervals {
            for (a2, b2) in &self.intervals {
                pieces.push((a1.clone() - b2.clone(), b1.clone() - a2.clone()));
            }
        }
        Ok(DiffSet::from_closed(pieces))
    }
}

impl<T: Coord> fmt::Display for StepSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, (a, b)) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "[{a},{b})")?;
        }
        Ok(())
    }
}

/// Orientation of an affine map `x -> sign*x + shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersect,
    Subtract,
}

/// Finite union of closed rational intervals `[c, d]`, as produced by
/// [`StepSet::difference_set`]. Touching closed pieces merge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiffSet<T> {
    intervals: Vec<(T, T)>,
    origin_included: bool,
}

impl<T: Coord> DiffSet<T> {
    /// Canonicalize a list of closed intervals (degenerate `[c, c]` allowed).
    pub fn from_closed(raw: Vec<(T, T)>) -> Self {
        let mut sorted: Vec<(T, T)> = raw.into_iter().filter(|(c, d)| c <= d).collect();
        sorted.sort_by(|x, y| x.0.cmp(&y.0));
        let mut intervals: Vec<(T, T)> = Vec::with_capacity(sorted.len());
        for (c, d) in sorted {
            match intervals.last_mut() {
                // Closed intervals merge even when they only touch.
                Some(last) if c <= last.1 => {
                    if d > last.1 {
                        last.1 = d;
                    }
                }
                _ => intervals.push((c, d)),
            }
        }
        let origin = {
            let zero = T::zero();
            intervals.iter().any(|(c, d)| c <= &zero && &zero <= d)
        };
        DiffSet {
            intervals,
            origin_included: origin,
        }
    }

    pub fn intervals(&self) -> &[(T, T)] {
        &self.intervals
    }

    pub fn origin_included(&self) -> bool {
        self.origin_included
    }

    pub fn contains(&self, x: &T) -> bool {
        self.intervals.iter().any(|(c, d)| c <= x && x <= d)
    }

    /// True when `[c,d]` is present iff `[-d,-c]` is present.
    pub fn is_symmetric(&self) -> bool {
        let reflected: Vec<(T, T)> = self
            .intervals
            .iter()
            .rev()
            .map(|(c, d)| (-d.clone(), -c.clone()))
            .collect();
        reflected == self.intervals
    }
}

impl<T: Coord> fmt::Display for DiffSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, (c, d)) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "[{c},{d}]")?;
        }
        Ok(())
    }
}
