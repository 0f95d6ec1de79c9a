//! Exact piecewise calculus: correlations of step sets (piecewise linear),
//! piecewise-constant covering functions, and convolution with Dirac combs.

use crate::scalar::Coord;
use crate::stepset::StepSet;
use std::fmt::Write as _;

/// A bounded rational window `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Coord> Window<T> {
    pub fn new(lo: T, hi: T) -> Self {
        assert!(lo < hi, "window requires lo < hi");
        Window { lo, hi }
    }

    pub fn from_ints(lo: i64, hi: i64) -> Self {
        Self::new(T::from_int(lo), T::from_int(hi))
    }

    pub fn width(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    /// Window enlarged by `margin` on both sides.
    pub fn expand(&self, margin: T) -> Self {
        Window {
            lo: self.lo.clone() - margin.clone(),
            hi: self.hi.clone() + margin,
        }
    }
}

/// Continuous piecewise-linear function with compact support.
///
/// Stores breakpoints and the value at each breakpoint; linear in between,
/// identically zero outside `[first, last]`. Storing values rather than
/// slopes makes continuity intrinsic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContPL<T> {
    breakpoints: Vec<T>,
    values: Vec<T>,
}

impl<T: Coord> ContPL<T> {
    pub fn zero() -> Self {
        ContPL {
            breakpoints: vec![],
            values: vec![],
        }
    }

    /// Build from `(breakpoint, value)` pairs, sorted by breakpoint.
    /// Collinear interior points are kept; call [`Self::canonical`] to drop
    /// them before comparing representations.
    pub fn from_points(points: Vec<(T, T)>) -> Self {
        let mut pts = points;
        pts.sort_by(|x, y| x.0.cmp(&y.0));
        pts.dedup_by(|a, b| a.0 == b.0);
        let (breakpoints, values) = pts.into_iter().unzip();
        ContPL {
            breakpoints,
            values,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &T) -> T {
        let n = self.breakpoints.len();
        if n == 0 || x < &self.breakpoints[0] || x > &self.breakpoints[n - 1] {
            return T::zero();
        }
        let idx = self.breakpoints.partition_point(|b| b <= x);
        if idx == 0 {
            return self.values[0].clone();
        }
        if idx == n {
            return self.values[n - 1].clone();
        }
        let (x0, x1) = (&self.breakpoints[idx - 1], &self.breakpoints[idx]);
        let (y0, y1) = (&self.values[idx - 1], &self.values[idx]);
        if x == x0 {
            return y0.clone();
        }
        // y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        y0.clone()
            + (y1.clone() - y0.clone()) * (x.clone() - x0.clone())
                / (x1.clone() - x0.clone())
    }

    /// Pointwise sum; exact.
    pub fn add(&self, other: &Self) -> Self {
        let mut grid: Vec<T> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .cloned()
            .collect();
        grid.sort();
        grid.dedup();
        let values = grid
            .iter()
            .map(|x| self.eval(x) + other.eval(x))
            .collect();
        ContPL {
            breakpoints: grid,
            values,
        }
    }

    pub fn scale(&self, factor: &T) -> Self {
        ContPL {
            breakpoints: self.breakpoints.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.clone() * factor.clone())
                .collect(),
        }
    }

    pub fn shift(&self, dx: &T) -> Self {
        ContPL {
            breakpoints: self
                .breakpoints
                .iter()
                .map(|b| b.clone() + dx.clone())
                .collect(),
            values: self.values.clone(),
        }
    }

    /// The function `x -> c - f(x)` represented on `window` (and zero
    /// outside it).
    pub fn sub_from_constant_on(&self, c: &T, window: &Window<T>) -> Self {
        let restricted = self.restrict(window);
        ContPL {
            breakpoints: restricted.breakpoints,
            values: restricted
                .values
                .into_iter()
                .map(|v| c.clone() - v)
                .collect(),
        }
    }

    /// Restriction to `[window.lo, window.hi]`: breakpoints clipped, edge
    /// values evaluated. The result is zero outside the window.
    pub fn restrict(&self, window: &Window<T>) -> Self {
        let mut grid: Vec<T> = vec![window.lo.clone(), window.hi.clone()];
        for b in &self.breakpoints {
            if b > &window.lo && b < &window.hi {
                grid.push(b.clone());
            }
        }
        grid.sort();
        grid.dedup();
        let values = grid.iter().map(|x| self.eval(x)).collect();
        ContPL {
            breakpoints: grid,
            values,
        }
    }

    /// Canonical form: interior breakpoints that lie on the line through
    /// their neighbours are removed, as are redundant zero tails.
    pub fn canonical(&self) -> Self {
        if self.breakpoints.is_empty() {
            return self.clone();
        }
        let mut pts: Vec<(T, T)> = self
            .breakpoints
            .iter()
            .cloned()
            .zip(self.values.iter().cloned())
            .collect();
        // Trim leading/trailing zero runs down to a single zero anchor.
        while pts.len() >= 2 && pts[0].1.is_zero() && pts[1].1.is_zero() {
            pts.remove(0);
        }
        while pts.len() >= 2
            && pts[pts.len() - 1].1.is_zero()
            && pts[pts.len() - 2].1.is_zero()
        {
            pts.pop();
        }
        if pts.len() == 1 && pts[0].1.is_zero() {
            return Self::zero();
        }
        let mut out: Vec<(T, T)> = Vec::with_capacity(pts.len());
        for pt in pts {
            if out.len() >= 2 {
                let (x0, y0) = out[out.len() - 2].clone();
                let (x1, y1) = out[out.len() - 1].clone();
                // collinear check: (y1-y0)*(x2-x0) == (y2-y0)*(x1-x0)
                let lhs = (y1.clone() - y0.clone()) * (pt.0.clone() - x0.clone());
                let rhs = (pt.1.clone() - y0.clone()) * (x1.clone() - x0.clone());
                if lhs == rhs {
                    out.pop();
                }
            }
            out.push(pt);
        }
        let (breakpoints, values) = out.into_iter().unzip();
        ContPL {
            breakpoints,
            values,
        }
    }

    /// Exact minimum over `[lo, hi]`; linear pieces attain extrema at
    /// breakpoints or the interval ends.
    pub fn min_on(&self, lo: &T, hi: &T) -> T {
        let mut best = self.eval(lo);
        let v = self.eval(hi);
        if v < best {
            best = v;
        }
        for b in &self.breakpoints {
            if b > lo && b < hi {
                let v = self.eval(b);
                if v < best {
                    best = v;
                }
            }
        }
        best
    }

    /// Exact maximum of `|f|` over its support.
    pub fn max_abs(&self) -> T {
        self.values
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(T::zero)
    }

    /// CSV rows `breakpoint,value` (header included).
    pub fn to_csv(&self) -> String {
        let mut s = String::from("breakpoint,value\n");
        for (b, v) in self.breakpoints.iter().zip(&self.values) {
            let _ = writeln!(s, "{b},{v}");
        }
        s
    }
}

/// Piecewise-constant function on `[breaks[0], breaks[n])`, value
/// `piece_values[i]` on `[breaks[i], breaks[i+1])`, and `outside` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFn<T> {
    breaks: Vec<T>,
    piece_values: Vec<T>,
    outside: T,
}

impl<T: Coord> StepFn<T> {
    pub fn constant_on(window: &Window<T>, value: T) -> Self {
        StepFn {
            breaks: vec![window.lo.clone(), window.hi.clone()],
            piece_values: vec![value],
            outside: T::zero(),
        }
    }

    /// Indicator of a step set restricted to `window`.
    pub fn indicator_on(set: &StepSet<T>, window: &Window<T>) -> Self {
        let weighted = set
            .intervals()
            .iter()
            .map(|(a, b)| (a.clone(), b.clone(), T::one()))
            .collect();
        Self::from_weighted_intervals(weighted, window)
    }

    /// Sum of weighted indicators restricted to `window`.
    pub fn from_weighted_intervals(pieces: Vec<(T, T, T)>, window: &Window<T>) -> Self {
        let mut breaks: Vec<T> = vec![window.lo.clone(), window.hi.clone()];
        for (a, b, _) in &pieces {
            if a > &window.lo && a < &window.hi {
                breaks.push(a.clone());
            }
            if b > &window.lo && b < &window.hi {
                breaks.push(b.clone());
            }
        }
        breaks.sort();
        breaks.dedup();
        let mut piece_values = Vec::with_capacity(breaks.len() - 1);
        for w in breaks.windows(2) {
            let x = &w[0];
            let mut total = T::zero();
            for (a, b, weight) in &pieces {
                if a <= x && x < b {
                    total = total + weight.clone();
                }
            }
            piece_values.push(total);
        }
        StepFn {
            breaks,
            piece_values,
            outside: T::zero(),
        }
    }

    pub fn breaks(&self) -> &[T] {
        &self.breaks
    }

    pub fn piece_values(&self) -> &[T] {
        &self.piece_values
    }

    pub fn support_window(&self) -> Option<Window<T>> {
        if self.breaks.len() < 2 {
            None
        } else {
            Some(Window::new(
                self.breaks[0].clone(),
                self.breaks[self.breaks.len() - 1].clone(),
            ))
        }
    }

    pub fn eval(&self, x: &T) -> T {
        let n = self.breaks.len();
        if n < 2 || x < &self.breaks[0] || x >= &self.breaks[n - 1] {
            return self.outside.clone();
        }
        let idx = self.breaks.partition_point(|b| b <= x);
        self.piece_values[idx - 1].clone()
    }

    /// Pointwise difference on the union grid of both functions'
    /// breakpoints (both must describe the same window).
    pub fn sub(&self, other: &Self) -> Self {
        let mut grid: Vec<T> = self
            .breaks
            .iter()
            .chain(other.breaks.iter())
            .cloned()
            .collect();
        grid.sort();
        grid.dedup();
        let mut piece_values = Vec::with_capacity(grid.len().saturating_sub(1));
        for w in grid.windows(2) {
            piece_values.push(self.eval(&w[0]) - other.eval(&w[0]));
        }
        StepFn {
            breaks: grid,
            piece_values,
            outside: T::zero(),
        }
    }

    /// True when every (nondegenerate) piece has value zero.
    pub fn is_zero(&self) -> bool {
        self.piece_values.iter().all(|v| v.is_zero())
    }

    pub fn min_value(&self) -> Option<T> {
        self.piece_values.iter().min().cloned()
    }

    pub fn max_value(&self) -> Option<T> {
        self.piece_values.iter().max().cloned()
    }

    pub fn max_abs(&self) -> T {
        self.piece_values
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(T::zero)
    }

    /// Exact integral over the function's own window.
    pub fn integral(&self) -> T {
        let mut total = T::zero();
        for (w, v) in self.breaks.windows(2).zip(&self.piece_values) {
            total = total + v.clone() * (w[1].clone() - w[0].clone());
        }
        total
    }

    /// Merge equal-valued adjacent pieces.
    pub fn canonical(&self) -> Self {
        if self.breaks.len() < 2 {
            return self.clone();
        }
        let mut breaks = vec![self.breaks[0].clone()];
        let mut piece_values: Vec<T> = Vec::new();
        for (w, v) in self.breaks.windows(2).zip(&self.piece_values) {
            match piece_values.last() {
                Some(last) if last == v => {}
                _ => {
                    if !breaks.is_empty() && breaks.last() != Some(&w[0]) {
                        breaks.push(w[0].clone());
                    }
                    piece_values.push(v.clone());
                }
            }
        }
        breaks.push(self.breaks[self.breaks.len() - 1].clone());
        StepFn {
            breaks,
            piece_values,
            outside: self.outside.clone(),
        }
    }

    /// The sub-window pieces where the value differs from `target`,
    /// returned as a step set (useful for residual reporting).
    pub fn where_not_equal(&self, target: &T) -> StepSet<T> {
        let mut raw = Vec::new();
        for (w, v) in self.breaks.windows(2).zip(&self.piece_values) {
            if v != target {
                raw.push((w[0].clone(), w[1].clone()));
            }
        }
        StepSet::new(raw).expect("pieces are nonempty")
    }

    /// CSV rows `piece_start,piece_end,value` (header included).
    pub fn to_csv(&self) -> String {
        let mut s = String::from("piece_start,piece_end,value\n");
        for (w, v) in self.breaks.windows(2).zip(&self.piece_values) {
            let _ = writeln!(s, "{},{},{}", w[0], w[1], v);
        }
        s
    }
}

/// Positive atomic measure: a finite list of weighted atoms plus an
/// optional periodic family, with point exclusions for punctured combs
/// such as the integers without the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiracComb<T> {
    finite: Vec<(T, T)>,
    periodic: Option<PeriodicPart<T>>,
    excluded: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicPart<T> {
    pub representatives: Vec<T>,
    pub period: T,
    pub weight: T,
}

impl<T: Coord> DiracComb<T> {
    /// Finite comb from `(location, weight)` atoms; weights must be positive.
    pub fn finite(atoms: Vec<(T, T)>) -> Self {
        assert!(
            atoms.iter().all(|(_, w)| w.is_positive()),
            "comb weights must be positive"
        );
        DiracComb {
            finite: atoms,
            periodic: None,
            excluded: vec![],
        }
    }

    /// Unit-weight comb on `representatives + period * Z`.
    pub fn lattice(representatives: Vec<T>, period: T) -> Self {
        Self::weighted_lattice(representatives, period, T::one())
    }

    pub fn weighted_lattice(representatives: Vec<T>, period: T, weight: T) -> Self {
        assert!(period.is_positive(), "period must be positive");
        assert!(weight.is_positive(), "weight must be positive");
        DiracComb {
            finite: vec![],
            periodic: Some(PeriodicPart {
                representatives,
                period,
                weight,
            }),
            excluded: vec![],
        }
    }

    /// The integer comb `sum over k of delta_k`.
    pub fn integers() -> Self {
        Self::lattice(vec![T::zero()], T::one())
    }

    /// The nonzero-integer comb `sum over k != 0 of delta_k`.
    pub fn integers_without_origin() -> Self {
        Self::integers().without(vec![T::zero()])
    }

    /// Remove the atoms at the given locations (set-minus, not negative
    /// mass; weights stay positive).
    pub fn without(mut self, points: Vec<T>) -> Self {
        self.finite.retain(|(loc, _)| !points.contains(loc));
        for p in points {
            if !self.excluded.contains(&p) {
                self.excluded.push(p);
            }
        }
        self
    }

    pub fn periodic_part(&self) -> Option<&PeriodicPart<T>> {
        self.periodic.as_ref()
    }

    pub fn finite_part(&self) -> &[(T, T)] {
        &self.finite
    }

    pub fn excluded(&self) -> &[T] {
        &self.excluded
    }

    /// All atoms with locations in `[lo, hi]`, sorted, duplicates merged.
    /// Local finiteness makes this list finite for every bounded window.
    pub fn atoms_in(&self, lo: &T, hi: &T) -> Vec<(T, T)> {
        let mut atoms: Vec<(T, T)> = self
            .finite
            .iter()
            .filter(|(loc, _)| lo <= loc && loc <= hi)
            .cloned()
            .collect();
        if let Some(part) = &self.periodic {
            for rep in &part.representatives {
                let k_lo = ((lo.clone() - rep.clone()) / part.period.clone()).ceil_int();
                let k_hi = ((hi.clone() - rep.clone()) / part.period.clone()).floor_int();
                for k in k_lo..=k_hi {
                    let loc = rep.clone() + part.period.clone() * T::from_int(k);
                    atoms.push((loc, part.weight.clone()));
                }
            }
        }
        atoms.retain(|(loc, _)| !self.excluded.contains(loc));
        atoms.sort_by(|x, y| x.0.cmp(&y.0));
        let mut merged: Vec<(T, T)> = Vec::with_capacity(atoms.len());
        for (loc, w) in atoms {
            match merged.last_mut() {
                Some(last) if last.0 == loc => last.1 = last.1.clone() + w,
                _ => merged.push((loc, w)),
            }
        }
        merged
    }
}

/// Exact autocorrelation `t -> m(E intersect (E + t))`.
///
/// Even, equals `m(E)` at zero, supported in `[-(sup-inf), sup-inf]`.
pub fn autocorrelation<T: Coord>(set: &StepSet<T>) -> ContPL<T> {
    cross_correlation(set, &set.reflect())
}

/// Exact cross-correlation `x -> m(E intersect (-I + x))`, the convolution
/// of the two indicators. Reduces to [`autocorrelation`] at `I = -E`.
/// Empty inputs give the zero function.
pub fn cross_correlation<T: Coord>(set: &StepSet<T>, other: &StepSet<T>) -> ContPL<T> {
    // Overlap of [a,b) with x - [c,d) = (x-d, x-c] is a trapezoid in x:
    // zero at a+c and b+d, flat at min(b-a, d-c) between the middle knots.
    let mut total = ContPL::zero();
    for (a, b) in set.intervals() {
        for (c, d) in other.intervals() {
            let rise = a.clone() + c.clone();
            let fall = b.clone() + d.clone();
            let m1 = T::min_of(a.clone() + d.clone(), b.clone() + c.clone());
            let m2 = T::max_of(a.clone() + d.clone(), b.clone() + c.clone());
            let height = T::min_of(b.clone() - a.clone(), d.clone() - c.clone());
            let trapezoid = if m1 == m2 {
                ContPL::from_points(vec![
                    (rise, T::zero()),
                    (m1, height),
                    (fall, T::zero()),
                ])
            } else {
                ContPL::from_points(vec![
                    (rise, T::zero()),
                    (m1, height.clone()),
                    (m2, height),
                    (fall, T::zero()),
                ])
            };
            total = total.add(&trapezoid);
        }
    }
    total.canonical()
}

/// Exact `(mu * f)(x) = sum of w * f(x - loc)` restricted to `window`.
/// Only atoms within `window` expanded by the support span of `f`
/// contribute; the comb's local finiteness keeps the sum finite.
pub fn comb_convolve_contpl<T: Coord>(
    f: &ContPL<T>,
    mu: &DiracComb<T>,
    window: &Window<T>,
) -> ContPL<T> {
    let breaks = f.breakpoints();
    if breaks.is_empty() {
        return ContPL::zero();
    }
    let (supp_lo, supp_hi) = (breaks[0].clone(), breaks[breaks.len() - 1].clone());
    let atom_lo = window.lo.clone() - supp_hi;
    let atom_hi = window.hi.clone() - supp_lo;
    let mut total = ContPL::zero();
    for (loc, w) in mu.atoms_in(&atom_lo, &atom_hi) {
        total = total.add(&f.shift(&loc).scale(&w));
    }
    total.restrict(window)
}

/// Exact covering function `x -> sum of w * indicator_E(x - loc)` on
/// `window`.
pub fn covering_function<T: Coord>(
    set: &StepSet<T>,
    mu: &DiracComb<T>,
    window: &Window<T>,
) -> StepFn<T> {
    if set.is_empty() {
        return StepFn::constant_on(window, T::zero());
    }
    let (inf, sup) = set.extremes().expect("nonempty");
    let atom_lo = window.lo.clone() - sup;
    let atom_hi = window.hi.clone() - inf;
    let mut weighted = Vec::new();
    for (loc, w) in mu.atoms_in(&atom_lo, &atom_hi) {
        for (a, b) in set.intervals() {
            weighted.push((a.clone() + loc.clone(), b.clone() + loc.clone(), w.clone()));
        }
    }
    StepFn::from_weighted_intervals(weighted, window)
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

    fn three_piece() -> StepSet<Q> {
        set(&[((0, 1), (1, 8)), ((1, 4), (1, 1)), ((9, 8), (5, 4))])
    }

    #[test]
    fn unit_interval_autocorrelation_is_tent() {
        let k = autocorrelation(&set(&[((0, 1), (1, 1))]));
        let expected = ContPL::from_points(vec![
            (q(-1, 1), q(0, 1)),
            (q(0, 1), q(1, 1)),
            (q(1, 1), q(0, 1)),
        ]);
        assert_eq!(k, expected);
    }

    #[test]
    fn golden_autocorrelation_values() {
        let k = autocorrelation(&golden());
        assert_eq!(k.eval(&q(0, 1)), q(1, 1));
        assert_eq!(k.eval(&q(1, 2)), q(0, 1));
        assert_eq!(k.eval(&q(1, 1)), q(1, 2));
    }

    #[test]
    fn three_piece_autocorrelation_positive_below_one() {
        let k = autocorrelation(&three_piece());
        let min = k.min_on(&q(0, 1), &q(99, 100));
        assert!(min.is_positive(), "min {min}");
    }

    #[test]
    fn autocorrelation_is_even_and_compactly_supported() {
        let e = three_piece();
        let k = autocorrelation(&e);
        for t in [q(1, 3), q(5, 8), q(9, 8)] {
            assert_eq!(k.eval(&t), k.eval(&(-t.clone())));
        }
        let w = e.width();
        assert_eq!(k.eval(&w), q(0, 1));
        assert_eq!(k.eval(&(w + q(1, 100))), q(0, 1));
        assert_eq!(k.eval(&q(0, 1)), e.measure());
    }

    #[test]
    fn cross_correlation_matches_autocorrelation_at_reflected_argument() {
        let e = set(&[((0, 1), (1, 1))]);
        let k = cross_correlation(&e, &e.reflect());
        assert_eq!(k.eval(&q(1, 2)), q(1, 2));
        assert_eq!(k.eval(&q(0, 1)), q(1, 1));
    }

    #[test]
    fn cross_correlation_trapezoid_example() {
        // E = [0,1), I = [0,1/2): m(E n (x - I)) rises to 1/2 on [1/2,1],
        // falls to zero at 3/2.
        let e = set(&[((0, 1), (1, 1))]);
        let i = set(&[((0, 1), (1, 2))]);
        let g = cross_correlation(&e, &i);
        assert_eq!(g.eval(&q(0, 1)), q(0, 1));
        assert_eq!(g.eval(&q(1, 2)), q(1, 2));
        assert_eq!(g.eval(&q(3, 4)), q(1, 2));
        assert_eq!(g.eval(&q(1, 1)), q(1, 2));
        assert_eq!(g.eval(&q(3, 2)), q(0, 1));
        assert_eq!(g.eval(&q(5, 4)), q(1, 4));
    }

    #[test]
    fn cross_correlation_grid_oracle() {
        // Brute-force Riemann midpoint sum at step 1/1000.
        let e = golden();
        let i = set(&[((0, 1), (1, 2))]);
        let g = cross_correlation(&e, &i);
        let n = 1000i64;
        for t in [q(1, 3), q(3, 4), q(5, 4)] {
            // m(E n (t - I)) with midpoint sampling over [-1, 3].
            let mut count = 0i64;
            for j in -1000..3000 {
                let y = q(2 * j + 1, 2 * n);
                let inside_shift = {
                    let d = t.clone() - y.clone();
                    i.contains(&d)
                };
                if e.contains(&y) && inside_shift {
                    count += 1;
                }
            }
            let oracle = count as f64 / n as f64;
            let exact = g.eval(&t).to_f64();
            assert!(
                (oracle - exact).abs() <= 4.0 / n as f64,
                "t={t}: oracle {oracle} vs exact {exact}"
            );
        }
    }

    #[test]
    fn comb_identity_and_scaling() {
        let tent = autocorrelation(&set(&[((0, 1), (1, 1))]));
        let window = Window::from_ints(-2, 2);
        let id = comb_convolve_contpl(
            &tent,
            &DiracComb::finite(vec![(q(0, 1), q(1, 1))]),
            &window,
        );
        assert_eq!(id.canonical(), tent.restrict(&window).canonical());

        let scaled = comb_convolve_contpl(
            &tent,
            &DiracComb::finite(vec![(q(1, 1), q(2, 1))]),
            &window,
        );
        let expected = tent.shift(&q(1, 1)).scale(&q(2, 1)).restrict(&window);
        assert_eq!(scaled.canonical(), expected.canonical());
    }

    #[test]
    fn punctured_integer_comb_convolution_complements_the_tent() {
        // (mu * K)(x) = 1 - K(x) exactly on [-2, 2] for the unit interval.
        let tent = autocorrelation(&set(&[((0, 1), (1, 1))]));
        let window = Window::from_ints(-2, 2);
        let lhs = comb_convolve_contpl(&tent, &DiracComb::integers_without_origin(), &window);
        let rhs = tent.sub_from_constant_on(&q(1, 1), &window);
        assert_eq!(lhs.canonical(), rhs.canonical());
    }

    #[test]
    fn covering_function_unit_interval_tiles() {
        let window = Window::from_ints(-3, 3);
        let cover = covering_function(&set(&[((0, 1), (1, 1))]), &DiracComb::integers(), &window);
        assert_eq!(cover.min_value().unwrap(), q(1, 1));
        assert_eq!(cover.max_value().unwrap(), q(1, 1));
    }

    #[test]
    fn covering_function_golden_example() {
        let window = Window::from_ints(-4, 4);
        let comb = DiracComb::lattice(vec![q(0, 1), q(1, 2)], q(2, 1));
        let cover = covering_function(&golden(), &comb, &window);
        assert!(cover.canonical().piece_values().iter().all(|v| *v == q(1, 1)));
    }

    #[test]
    fn covering_function_golden_against_integers_misses() {
        let window = Window::from_ints(0, 2);
        let cover = covering_function(&golden(), &DiracComb::integers(), &window);
        assert_eq!(cover.eval(&q(1, 4)), q(2, 1));
        assert_eq!(cover.eval(&q(3, 4)), q(0, 1));
    }

    #[test]
    fn covering_integral_over_period_counts_atoms() {
        let window = Window::from_ints(0, 2);
        let comb = DiracComb::lattice(vec![q(0, 1), q(1, 2)], q(2, 1));
        let cover = covering_function(&golden(), &comb, &window);
        // one period, two atoms per period, measure 1
        assert_eq!(cover.integral(), q(2, 1));
    }

    #[test]
    fn atoms_in_merges_duplicates_and_respects_exclusions() {
        let comb = DiracComb::lattice(vec![q(0, 1)], q(1, 1)).without(vec![q(0, 1)]);
        let atoms = comb.atoms_in(&q(-2, 1), &q(2, 1));
        let locs: Vec<Q> = atoms.iter().map(|(l, _)| l.clone()).collect();
        assert_eq!(locs, vec![q(-2, 1), q(-1, 1), q(1, 1), q(2, 1)]);
    }

    #[test]
    fn stepfn_subtraction_and_residual_support() {
        let window = Window::from_ints(0, 2);
        let a = StepFn::indicator_on(&set(&[((0, 1), (1, 1))]), &window);
        let b = StepFn::constant_on(&window, q(1, 1));
        let diff = a.sub(&b);
        assert!(!diff.is_zero());
        let bad = diff.where_not_equal(&q(0, 1));
        assert_eq!(bad.intervals(), &[(q(1, 1), q(2, 1))][..]);
    }
}
