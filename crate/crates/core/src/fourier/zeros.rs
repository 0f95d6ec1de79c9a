//! Certified zero location for indicator transforms.
//!
//! All zero counting goes through boundary winding numbers of the
//! exponential sum `H(z) = 2 pi i z * transform(z)`. Along each rectangle
//! edge the argument is tracked over sample pairs whose spacing satisfies
//! `L * delta <= 0.3 * min |H|` with `L` a derivative bound on the strip;
//! the image of such a segment stays inside a disc excluding the origin, so
//! the principal-value sum is the exact argument change and the total must
//! land within 0.25 of an integer or the rectangle is rejected and
//! subdivided with jittered cuts. Failures degrade to explicit
//! inconclusive outcomes, never to a false certificate.

use super::expsum::ExponentialSum;
use crate::scalar::{f64_to_exact_ratio, Coord};
use crate::stepset::StepSet;
use num_complex::Complex64;
use num_traits::Signed;
use std::f64::consts::TAU;
use std::fmt;

/// Solution of `u e^u = 1/2`; within `|z| <= u0 / (2 pi X)` the transform
/// stays within half its value at zero, hence cannot vanish.
const ORIGIN_MARGIN_U: f64 = 0.351733711249196;

const SPLIT_FRACTIONS: [f64; 8] = [0.5, 0.53, 0.461, 0.547, 0.439, 0.563, 0.421, 0.581];
const SHRINK_FRACTIONS: [f64; 8] = [0.5, 0.43, 0.57, 0.37, 0.63, 0.31, 0.69, 0.25];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn centered_strip(x0: f64, x1: f64, half_height: f64) -> Self {
        Rect {
            x0,
            x1,
            y0: -half_height,
            y1: half_height,
        }
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))
    }

    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.x0, self.y0),
            Complex64::new(self.x1, self.y0),
            Complex64::new(self.x1, self.y1),
            Complex64::new(self.x0, self.y1),
        ]
    }

    pub fn contains_origin(&self) -> bool {
        self.x0 < 0.0 && 0.0 < self.x1 && self.y0 < 0.0 && 0.0 < self.y1
    }

    pub fn straddles_real_axis(&self) -> bool {
        self.y0 < 0.0 && 0.0 < self.y1
    }

    /// Minimum of |z| over the rectangle.
    pub fn min_abs(&self) -> f64 {
        let nx = 0.0f64.clamp(self.x0, self.x1);
        let ny = 0.0f64.clamp(self.y0, self.y1);
        nx.hypot(ny)
    }

    /// Maximum of |z| over the rectangle (attained at a corner).
    pub fn max_abs(&self) -> f64 {
        self.corners()
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    fn split_x(&self, frac: f64) -> (Rect, Rect) {
        let xm = self.x0 + frac * self.width();
        (
            Rect { x1: xm, ..*self },
            Rect { x0: xm, ..*self },
        )
    }

    fn split_y(&self, frac: f64) -> (Rect, Rect) {
        let ym = self.y0 + frac * self.height();
        (
            Rect { y1: ym, ..*self },
            Rect { y0: ym, ..*self },
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub enum WindingError {
    /// |H| could not be bounded away from zero on a boundary segment.
    BoundaryNearZero { at: Complex64 },
    /// Refinement budget exhausted.
    TooManyEvaluations,
    /// Accumulated turn count did not land near an integer.
    NotNearInteger { turns: f64 },
}

/// Certified boundary winding number of the exponential sum over `rect`.
pub fn winding<T: Coord>(sum: &ExponentialSum<T>, rect: &Rect) -> Result<i64, WindingError> {
    let corners = rect.corners();
    let mut total = 0.0;
    let mut budget: usize = 400_000;
    for i in 0..4 {
        total += edge_arg_change(sum, corners[i], corners[(i + 1) % 4], &mut budget)?;
    }
    let turns = total / TAU;
    let n = turns.round();
    if (turns - n).abs() > 0.25 {
        return Err(WindingError::NotNearInteger { turns });
    }
    Ok(n as i64)
}

fn edge_arg_change<T: Coord>(
    sum: &ExponentialSum<T>,
    za: Complex64,
    zb: Complex64,
    budget: &mut usize,
) -> Result<f64, WindingError> {
    let fa = sum.eval_with_error(za);
    let fb = sum.eval_with_error(zb);
    let mut total = 0.0;
    // (start, f(start), end, f(end)); entries processed left to right for a
    // deterministic floating-point accumulation order.
    let mut stack = vec![(za, fa, zb, fb)];
    while let Some((pa, (va, ea), pb, (vb, eb))) = stack.pop() {
        if *budget == 0 {
            return Err(WindingError::TooManyEvaluations);
        }
        *budget -= 1;
        let delta = (pb - pa).norm();
        // Lipschitz bound local to this segment's own height range: the
        // strip-wide bound would be hopeless on tall rectangles where the
        // term moduli vary over many orders of magnitude.
        let lip = sum.derivative_bound(pa.im.min(pb.im), pa.im.max(pb.im));
        let margin = (va.norm() - ea).min(vb.norm() - eb);
        if margin > 0.0 && lip * delta <= 0.3 * margin {
            total += (vb / va).arg();
            continue;
        }
        let scale = 1.0 + pa.norm().max(pb.norm());
        if delta < 1e-13 * scale {
            return Err(WindingError::BoundaryNearZero {
                at: 0.5 * (pa + pb),
            });
        }
        let pm = 0.5 * (pa + pb);
        let fm = sum.eval_with_error(pm);
        stack.push((pm, fm, pb, (vb, eb)));
        stack.push((pa, (va, ea), pm, fm));
    }
    Ok(total)
}

/// Kind of certified zero enclosure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroKind {
    /// Enclosure straddles the real axis (half-height at most the
    /// requested tolerance).
    Real,
    /// Enclosure lies strictly off the real axis; its mirror image under
    /// `z -> -conj(z)` is also a zero.
    ComplexPair,
}

/// An isolated zero with a certified rational enclosure: the boundary
/// winding count over the enclosure is `winding >= 1` (counting
/// multiplicity). When `exact` is set, the zero's location was verified by
/// exact root-of-unity arithmetic.
#[derive(Debug, Clone)]
pub struct ZeroCertificate<T> {
    pub re_lo: T,
    pub re_hi: T,
    pub im_lo: T,
    pub im_hi: T,
    pub winding: i64,
    pub kind: ZeroKind,
    pub exact: Option<T>,
}

impl<T: Coord> ZeroCertificate<T> {
    fn from_rect(sum: &ExponentialSum<T>, rect: &Rect, winding: i64) -> Self {
        let kind = if rect.straddles_real_axis() {
            ZeroKind::Real
        } else {
            ZeroKind::ComplexPair
        };
        let exact = if kind == ZeroKind::Real {
            identify_exact_real(sum, rect)
        } else {
            None
        };
        let conv = |x: f64| -> T {
            crate::scalar::big_ratio(&f64_to_exact_ratio(x).expect("finite bound"))
                .expect("rational conversion")
        };
        ZeroCertificate {
            re_lo: conv(rect.x0),
            re_hi: conv(rect.x1),
            im_lo: conv(rect.y0),
            im_hi: conv(rect.y1),
            winding,
            kind,
            exact,
        }
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.re_lo.to_f64() + self.re_hi.to_f64()),
            0.5 * (self.im_lo.to_f64() + self.im_hi.to_f64()),
        )
    }

    pub fn re_width(&self) -> f64 {
        self.re_hi.to_f64() - self.re_lo.to_f64()
    }

    /// Lower and upper bounds for |z| over the enclosure.
    pub fn abs_bounds(&self) -> (f64, f64) {
        let rect = self.rect_f64();
        (rect.min_abs(), rect.max_abs())
    }

    pub fn rect_f64(&self) -> Rect {
        Rect {
            x0: self.re_lo.to_f64(),
            x1: self.re_hi.to_f64(),
            y0: self.im_lo.to_f64(),
            y1: self.im_hi.to_f64(),
        }
    }

    /// True when the rational point lies inside the real span of the
    /// enclosure.
    pub fn real_span_contains(&self, x: &T) -> bool {
        &self.re_lo <= x && x <= &self.re_hi
    }
}

impl<T: Coord> fmt::Display for ZeroCertificate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.exact, self.kind) {
            (Some(x), _) => write!(f, "zero at {x} (exact, winding {})", self.winding),
            (None, ZeroKind::Real) => write!(
                f,
                "zero in [{}, {}] x [{}, {}] (winding {})",
                self.re_lo, self.re_hi, self.im_lo, self.im_hi, self.winding
            ),
            (None, ZeroKind::ComplexPair) => write!(
                f,
                "complex zero pair, one in [{}, {}] x [{}, {}] (winding {})",
                self.re_lo, self.re_hi, self.im_lo, self.im_hi, self.winding
            ),
        }
    }
}

/// Search small-denominator rationals inside the real span for an exact
/// zero of the sum.
fn identify_exact_real<T: Coord>(sum: &ExponentialSum<T>, rect: &Rect) -> Option<T> {
    let mid = 0.5 * (rect.x0 + rect.x1);
    for denom in 1..=64i64 {
        let numer = (mid * denom as f64).round();
        if !numer.is_finite() || numer.abs() > 9e15 {
            continue;
        }
        let cand = T::from_frac(numer as i64, denom);
        let c = cand.to_f64();
        if c > rect.x0 && c < rect.x1 && sum.is_exact_zero_at(&cand) {
            return Some(cand);
        }
    }
    None
}

/// Tuning knobs for zero searches.
#[derive(Debug, Clone, Copy)]
pub struct ZeroSearchParams {
    /// Horizontal extent of first-pass boxes.
    pub box_width: f64,
    /// Half-height of the strip scanned around the real axis.
    pub strip_half_height: f64,
    /// Target enclosure size.
    pub tol: f64,
    /// Layout retry attempts when a zero sits on a box boundary.
    pub retries: u32,
}

impl Default for ZeroSearchParams {
    fn default() -> Self {
        ZeroSearchParams {
            box_width: 0.21,
            strip_half_height: 0.05,
            tol: 1e-9,
            retries: 8,
        }
    }
}

/// Outcome of a zero-free certification over a closed real interval.
#[derive(Debug, Clone)]
pub enum ZeroFreeOutcome<T> {
    ZeroFree(ZeroFreeCertificate),
    /// Leftmost certified zero met during the left-to-right scan.
    ZeroFound(ZeroCertificate<T>),
    /// The closed interval endpoint is itself an exact zero (relevant for
    /// closed difference-set pieces; interior zero-freeness is unaffected).
    EndpointZero { at: T },
    /// A candidate zero too close to the interval boundary (or a refinement
    /// budget ran out); never silently converted into a certificate.
    Inconclusive { near: f64, detail: String },
}

impl<T> ZeroFreeOutcome<T> {
    pub fn is_zero_free(&self) -> bool {
        matches!(self, ZeroFreeOutcome::ZeroFree(_))
    }
}

/// Evidence for a zero-free interval: every strip box had boundary winding
/// zero, the origin (when inside) was covered by the perturbation bound,
/// and `min_abs_on_segment` is a certified positive lower bound for the
/// transform modulus along the real segment.
#[derive(Debug, Clone)]
pub struct ZeroFreeCertificate {
    pub lo: f64,
    pub hi: f64,
    pub boxes: usize,
    pub strip_half_height: f64,
    pub min_abs_on_segment: f64,
}

/// Radius around the origin on which the transform provably has no zeros:
/// `|transform(z) - measure| <= measure * u e^u` with `u = 2 pi X |z|`.
pub fn origin_zero_free_radius<T: Coord>(set: &StepSet<T>) -> f64 {
    let (inf, sup) = set.extremes().expect("nonempty set");
    let x = inf.to_f64().abs().max(sup.to_f64().abs());
    ORIGIN_MARGIN_U / (TAU * x)
}

/// Certify that the transform of `set` has no zeros on the closed interval
/// `[lo, hi]`, or report the leftmost zero found.
pub fn certify_zero_free<T: Coord>(
    set: &StepSet<T>,
    lo: &T,
    hi: &T,
    params: &ZeroSearchParams,
) -> ZeroFreeOutcome<T> {
    assert!(lo < hi, "interval requires lo < hi");
    let sum = ExponentialSum::from_step_set(set);
    if sum.is_exact_zero_at(lo) {
        return ZeroFreeOutcome::EndpointZero { at: lo.clone() };
    }
    let hi_is_zero = sum.is_exact_zero_at(hi);

    let lo_f = lo.to_f64();
    let hi_f = hi.to_f64();
    let rho0 = origin_zero_free_radius(set);
    let protected = 0.7 * rho0;

    // Real sub-segments that still need winding coverage after the origin
    // disc is taken out.
    let mut pieces: Vec<(f64, f64)> = Vec::new();
    if lo_f < -protected {
        pieces.push((lo_f, hi_f.min(-protected)));
    }
    if hi_f > protected {
        pieces.push((lo_f.max(protected), hi_f));
    }

    let origin_bound = transform_min_abs_near_origin(set, lo_f, hi_f, rho0);

    for attempt in 0..params.retries {
        let h = params.strip_half_height * 0.9f64.powi(attempt as i32);
        let offset = ((attempt as f64) * 0.618_033_988_749_895).fract() * params.box_width;
        let mut failed_at: Option<Complex64> = None;
        let mut found: Option<ZeroCertificate<T>> = None;
        let mut boxes_this_attempt = 0usize;

        'pieces: for &(plo, phi) in &pieces {
            let mut edges = vec![plo];
            let mut x = plo + params.box_width - offset.min(params.box_width * 0.5);
            while x < phi - 1e-12 {
                edges.push(x);
                x += params.box_width;
            }
            edges.push(phi);
            for w in edges.windows(2) {
                let rect = Rect::centered_strip(w[0], w[1], h);
                match winding(&sum, &rect) {
                    Ok(0) => {
                        boxes_this_attempt += 1;
                    }
                    Ok(_) => {
                        match isolate_leftmost_in_rect(&sum, rect, params) {
                            Ok(cert) => {
                                found = Some(cert);
                                break 'pieces;
                            }
                            Err(at) => {
                                failed_at = Some(at);
                                break 'pieces;
                            }
                        }
                    }
                    Err(e) => {
                        failed_at = Some(winding_error_location(&e, &rect));
                        break 'pieces;
                    }
                }
            }
        }

        if let Some(cert) = found {
            // A zero certified left of an exact endpoint zero still wins.
            return ZeroFreeOutcome::ZeroFound(cert);
        }
        if failed_at.is_none() {
            if hi_is_zero {
                return ZeroFreeOutcome::EndpointZero { at: hi.clone() };
            }
            let seg_bound = real_segment_lower_bound(&sum, set, &pieces);
            return ZeroFreeOutcome::ZeroFree(ZeroFreeCertificate {
                lo: lo_f,
                hi: hi_f,
                boxes: boxes_this_attempt,
                strip_half_height: h,
                min_abs_on_segment: origin_bound.min(seg_bound).max(0.0),
            });
        }
        if attempt + 1 == params.retries {
            let at = failed_at.unwrap();
            if hi_is_zero && (at.re - hi_f).abs() < params.box_width {
                return ZeroFreeOutcome::EndpointZero { at: hi.clone() };
            }
            return ZeroFreeOutcome::Inconclusive {
                near: at.re,
                detail: format!(
                    "could not certify a boundary near {:.12}+{:.2e}i after {} layouts",
                    at.re, at.im, params.retries
                ),
            };
        }
    }
    unreachable!("retry loop always returns")
}

fn winding_error_location(e: &WindingError, rect: &Rect) -> Complex64 {
    match e {
        WindingError::BoundaryNearZero { at } => *at,
        _ => rect.center(),
    }
}

/// Positive lower bound for |transform| on the part of `[lo, hi]` inside
/// the origin-protected disc; 0.0 when the interval avoids the origin.
fn transform_min_abs_near_origin<T: Coord>(set: &StepSet<T>, lo: f64, hi: f64, rho0: f64) -> f64 {
    if lo > 0.7 * rho0 || hi < -0.7 * rho0 {
        return f64::INFINITY;
    }
    // measure * (1 - u e^u) at u = 0.7 * ORIGIN_MARGIN_U, comfortably > 0
    let u = 0.7 * ORIGIN_MARGIN_U;
    set.measure().to_f64() * (1.0 - u * u.exp())
}

/// Certified lower bound for |transform| along the given real segments
/// (all away from the origin), from sampled values with derivative-bound
/// slack: on any sub-segment, `min |f| >= min(|f(a)|, |f(b)|) - L (b-a)/2`.
/// Returns 0.0 if the refinement budget runs out first.
fn real_segment_lower_bound<T: Coord>(
    sum: &ExponentialSum<T>,
    set: &StepSet<T>,
    pieces: &[(f64, f64)],
) -> f64 {
    // |d/dxi transform(xi)| <= 2 pi integral over E of |x| dx <= 2 pi X m(E)
    let (inf, sup) = set.extremes().expect("nonempty");
    let x_max = inf.to_f64().abs().max(sup.to_f64().abs());
    let lip = TAU * x_max * set.measure().to_f64();
    let eval = |t: f64| -> f64 { sum.eval(Complex64::new(t, 0.0)).norm() / (TAU * t.abs()) };
    let mut bound = f64::INFINITY;
    let mut budget = 200_000u32;
    for &(lo, hi) in pieces {
        let mut stack = vec![(lo, eval(lo), hi, eval(hi), 0u32)];
        while let Some((a, va, b, vb, depth)) = stack.pop() {
            if budget == 0 {
                return 0.0;
            }
            budget -= 1;
            let local = va.min(vb) - lip * (b - a) * 0.5;
            if local > 0.0 {
                bound = bound.min(local);
            } else if depth >= 26 {
                return 0.0;
            } else {
                let mid = 0.5 * (a + b);
                let vm = eval(mid);
                stack.push((mid, vm, b, vb, depth + 1));
                stack.push((a, va, mid, vm, depth + 1));
            }
        }
    }
    // infinite iff there were no pieces (interval fully inside the origin
    // disc); the caller minimizes with the origin bound
    bound
}

/// Refine a rectangle with winding >= 1 down to the leftmost enclosure of
/// size `tol`. Keeps everything (complex zeros included); errors carry the
/// failure location.
fn isolate_leftmost_in_rect<T: Coord>(
    sum: &ExponentialSum<T>,
    rect: Rect,
    params: &ZeroSearchParams,
) -> Result<ZeroCertificate<T>, Complex64> {
    let n = winding(sum, &rect).map_err(|e| winding_error_location(&e, &rect))?;
    let mut queue: Vec<(Rect, i64)> = if n >= 1 { vec![(rect, n)] } else { vec![] };
    // Process in leftmost order; the first tol-sized enclosure is leftmost
    // because splits preserve horizontal ordering.
    while !queue.is_empty() {
        queue.sort_by(|a, b| b.0.x0.partial_cmp(&a.0.x0).unwrap());
        let (r, n) = queue.pop().unwrap();
        if n == 0 {
            continue;
        }
        if r.width() <= params.tol && r.height() <= params.tol {
            return Ok(ZeroCertificate::from_rect(sum, &r, n));
        }
        let axis_x = r.width() >= r.height();
        let children = split_certified(sum, &r, axis_x)?;
        for (cr, cn) in children {
            if cn >= 1 {
                queue.push((cr, cn));
            }
        }
    }
    Err(rect.center())
}

/// Split a rectangle with jittered cut positions until both children's
/// windings certify; errors return the stuck location.
fn split_certified<T: Coord>(
    sum: &ExponentialSum<T>,
    rect: &Rect,
    axis_x: bool,
) -> Result<Vec<(Rect, i64)>, Complex64> {
    for frac in SPLIT_FRACTIONS {
        let (ra, rb) = if axis_x {
            rect.split_x(frac)
        } else {
            rect.split_y(frac)
        };
        if let (Ok(na), Ok(nb)) = (winding(sum, &ra), winding(sum, &rb)) {
            return Ok(vec![(ra, na), (rb, nb)]);
        }
    }
    Err(rect.center())
}

/// Result of a real-zero scan over an interval.
#[derive(Debug, Clone)]
pub struct LocatedZeros<T> {
    /// Certified enclosures sorted by real part.
    pub zeros: Vec<ZeroCertificate<T>>,
    /// Sub-intervals where certification failed (zero within numerical
    /// tolerance of a scan boundary, or budget exhausted).
    pub inconclusive: Vec<(f64, f64)>,
    /// Exact zeros found at the closed interval endpoints.
    pub endpoint_zeros: Vec<T>,
}

impl<T> LocatedZeros<T> {
    pub fn fully_certified(&self) -> bool {
        self.inconclusive.is_empty()
    }
}

/// Locate every real zero of the transform inside the closed interval
/// `[lo, hi]`, each enclosed to width and height at most `tol`.
///
/// Complex zeros near the axis are discarded once a height shrink shows the
/// thin axis strip has winding zero; real zeros can never be lost this way
/// because shrinks always keep the axis interior.
pub fn locate_real_zeros<T: Coord>(
    set: &StepSet<T>,
    lo: &T,
    hi: &T,
    tol: f64,
    params: &ZeroSearchParams,
) -> LocatedZeros<T> {
    assert!(lo < hi, "interval requires lo < hi");
    let sum = ExponentialSum::from_step_set(set);
    let mut endpoint_zeros = Vec::new();
    for endpoint in [lo, hi] {
        if sum.is_exact_zero_at(endpoint) {
            endpoint_zeros.push(endpoint.clone());
        }
    }
    let lo_f = lo.to_f64();
    let hi_f = hi.to_f64();
    let rho0 = origin_zero_free_radius(set);
    let protected = 0.7 * rho0;
    let mut pieces: Vec<(f64, f64)> = Vec::new();
    if lo_f < -protected {
        pieces.push((lo_f, hi_f.min(-protected)));
    }
    if hi_f > protected {
        pieces.push((lo_f.max(protected), hi_f));
    }

    let mut zeros: Vec<ZeroCertificate<T>> = Vec::new();
    let mut inconclusive: Vec<(f64, f64)> = Vec::new();

    for &(mut plo, mut phi) in &pieces {
        // Shave endpoint-exact zeros off the scan so boundary windings can
        // certify; the shaved slivers are re-covered by the exact
        // endpoint information itself.
        if endpoint_zeros.iter().any(|z| (z.to_f64() - plo).abs() < tol) {
            plo += tol;
        }
        if endpoint_zeros.iter().any(|z| (z.to_f64() - phi).abs() < tol) {
            phi -= tol;
        }
        if phi <= plo {
            continue;
        }
        scan_piece(
            &sum,
            plo,
            phi,
            tol,
            params,
            &mut zeros,
            &mut inconclusive,
        );
    }
    zeros.sort_by(|a, b| a.re_lo.cmp(&b.re_lo));
    LocatedZeros {
        zeros,
        inconclusive,
        endpoint_zeros,
    }
}

fn scan_piece<T: Coord>(
    sum: &ExponentialSum<T>,
    plo: f64,
    phi: f64,
    tol: f64,
    params: &ZeroSearchParams,
    zeros: &mut Vec<ZeroCertificate<T>>,
    inconclusive: &mut Vec<(f64, f64)>,
) {
    'attempts: for attempt in 0..params.retries {
        let shave = tol * (attempt as f64);
        let h = params.strip_half_height * 0.9f64.powi(attempt as i32);
        let (a, b) = (plo + shave, phi - shave);
        if b <= a {
            inconclusive.push((plo, phi));
            return;
        }
        let offset = ((attempt as f64) * 0.618_033_988_749_895).fract() * params.box_width;
        let mut edges = vec![a];
        let mut x = a + params.box_width - offset.min(params.box_width * 0.5);
        while x < b - 1e-12 {
            edges.push(x);
            x += params.box_width;
        }
        edges.push(b);

        let mut attempt_zeros: Vec<ZeroCertificate<T>> = Vec::new();
        for w in edges.windows(2) {
            let rect = Rect::centered_strip(w[0], w[1], h);
            match refine_real_axis(sum, rect, tol) {
                Ok(mut found) => attempt_zeros.append(&mut found),
                Err(_) => continue 'attempts,
            }
        }
        if shave > 0.0 {
            inconclusive.push((plo, a));
            inconclusive.push((b, phi));
        }
        zeros.append(&mut attempt_zeros);
        return;
    }
    inconclusive.push((plo, phi));
}

/// Refinement for real-axis scans: split in `x`, shrink in `y` (dropping
/// off-axis mass), emit tol-sized straddling enclosures.
fn refine_real_axis<T: Coord>(
    sum: &ExponentialSum<T>,
    rect: Rect,
    tol: f64,
) -> Result<Vec<ZeroCertificate<T>>, Complex64> {
    let n = winding(sum, &rect).map_err(|e| winding_error_location(&e, &rect))?;
    let mut out = Vec::new();
    let mut queue = vec![(rect, n)];
    while let Some((r, n)) = queue.pop() {
        if n == 0 {
            continue;
        }
        if r.width() <= tol && r.height() <= tol {
            out.push(ZeroCertificate::from_rect(sum, &r, n));
            continue;
        }
        if r.width() > tol {
            let children = split_certified(sum, &r, true)?;
            queue.extend(children);
        } else {
            // Symmetric height shrink keeps the axis interior.
            let mut shrunk = false;
            for frac in SHRINK_FRACTIONS {
                let half = 0.5 * r.height() * frac;
                let r2 = Rect {
                    y0: -half,
                    y1: half,
                    ..r
                };
                if let Ok(n2) = winding(sum, &r2) {
                    queue.push((r2, n2));
                    shrunk = true;
                    break;
                }
            }
            if !shrunk {
                return Err(r.center());
            }
        }
    }
    out.sort_by(|a: &ZeroCertificate<T>, b| a.re_lo.cmp(&b.re_lo));
    Ok(out)
}

/// Zeros of the transform relative to the circle `|z| = rho`.
#[derive(Debug, Clone)]
pub struct DiscZeros<T> {
    /// Certified enclosures strictly inside the open disc.
    pub inside: Vec<ZeroCertificate<T>>,
    /// Exact zeros exactly on the circle.
    pub on_circle: Vec<ZeroCertificate<T>>,
    pub boxes_processed: usize,
}

#[derive(Debug, Clone)]
pub enum DiscSearchError {
    /// A certified enclosure straddles the circle and could not be
    /// identified exactly; pick a different radius.
    TooCloseToCircle { zero_near: f64, rho: f64 },
    Inconclusive { near: (f64, f64), detail: String },
}

impl fmt::Display for DiscSearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiscSearchError::TooCloseToCircle { zero_near, rho } => write!(
                f,
                "a zero near modulus {zero_near:.9} is too close to the circle radius {rho}; \
                 choose a different radius"
            ),
            DiscSearchError::Inconclusive { near, detail } => {
                write!(f, "inconclusive near ({}, {}): {detail}", near.0, near.1)
            }
        }
    }
}

/// Enclose every zero of the transform in the closed disc `|z| <= rho`,
/// classifying each as strictly inside or exactly on the circle.
///
/// The search covers the disc with a certified quadtree of winding boxes;
/// the artificial origin zero of `H = 2 pi i z * transform` is discharged
/// by the perturbation bound around zero.
pub fn disc_zero_enclosures<T: Coord>(
    set: &StepSet<T>,
    rho: f64,
    tol: f64,
) -> Result<DiscZeros<T>, DiscSearchError> {
    assert!(rho > 0.0 && rho.is_finite());
    let sum = ExponentialSum::from_step_set(set);
    let rho0 = origin_zero_free_radius(set);
    let pad = 0.318_309_886_183_790_7;
    let r = rho + pad;
    let root = Rect {
        x0: -r,
        x1: r,
        y0: -r,
        y1: r,
    };
    let n0 = winding(&sum, &root).map_err(|e| DiscSearchError::Inconclusive {
        near: complex_pair(winding_error_location(&e, &root)),
        detail: "outer boundary winding failed".into(),
    })?;
    let mut queue = vec![(root, n0)];
    let mut final_rects: Vec<(Rect, i64)> = Vec::new();
    let mut boxes = 0usize;
    while let Some((rect, n)) = queue.pop() {
        boxes += 1;
        if n == 0 {
            continue;
        }
        if rect.min_abs() > rho + tol {
            // Entirely outside the closed disc: its zeros are irrelevant.
            continue;
        }
        if rect.contains_origin() && n == 1 && rect.max_abs() < rho0 {
            // The artificial origin zero of H; the transform itself is
            // bounded away from zero on this box.
            continue;
        }
        if rect.width() <= tol && rect.height() <= tol && !rect.contains_origin() {
            final_rects.push((rect, n));
            continue;
        }
        let axis_x = rect.width() >= rect.height();
        match split_certified(&sum, &rect, axis_x) {
            Ok(children) => queue.extend(children),
            Err(at) => {
                return Err(DiscSearchError::Inconclusive {
                    near: complex_pair(at),
                    detail: "jittered splits kept failing".into(),
                })
            }
        }
    }

    let rho_exact = f64_to_exact_ratio(rho).expect("finite rho");
    let mut inside = Vec::new();
    let mut on_circle = Vec::new();
    for (rect, n) in final_rects {
        let cert = ZeroCertificate::from_rect(&sum, &rect, n);
        let (lo_abs, hi_abs) = cert.abs_bounds();
        if let Some(exact) = &cert.exact {
            let abs_exact = exact.to_big_ratio().abs();
            if abs_exact == rho_exact {
                on_circle.push(cert);
                continue;
            }
            if abs_exact < rho_exact {
                inside.push(cert);
            }
            continue;
        }
        if hi_abs < rho - 1e-12 {
            inside.push(cert);
        } else if lo_abs > rho + 1e-12 {
            // outside the open disc, drop
        } else {
            return Err(DiscSearchError::TooCloseToCircle {
                zero_near: 0.5 * (lo_abs + hi_abs),
                rho,
            });
        }
    }
    inside.sort_by(|a, b| a.re_lo.cmp(&b.re_lo));
    on_circle.sort_by(|a, b| a.re_lo.cmp(&b.re_lo));
    Ok(DiscZeros {
        inside,
        on_circle,
        boxes_processed: boxes,
    })
}

fn complex_pair(z: Complex64) -> (f64, f64) {
    (z.re, z.im)
}
