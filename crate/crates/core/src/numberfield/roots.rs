//! Root isolation for squarefree integer polynomials.
//!
//! Real roots are isolated by Sturm-count bisection into pairwise disjoint
//! rational intervals whose endpoints are provably not roots. Conjugate
//! complex pairs are isolated into axis-aligned boxes in the upper half
//! plane; the per-box root count is computed exactly from the winding number
//! of the polynomial along the box boundary, which in turn is a sum of
//! quadrant transitions read off from exact sign sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::poly::{self, QPoly};

/// An interval containing exactly one real root, with the sign of the
/// polynomial at the lower endpoint (0 only for exact point intervals).
#[derive(Clone, Debug)]
pub(crate) struct RootSlot {
    pub interval: Interval,
    pub sign_lo: i32,
}

impl RootSlot {
    pub fn is_point(&self) -> bool {
        self.interval.lo() == self.interval.hi()
    }
}

/// A box in the upper half plane containing exactly one root of each
/// isolated conjugate pair.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexBox {
    pub re: Interval,
    pub im: Interval,
}

fn q(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Cauchy-style bound: every complex root satisfies |z| < bound.
pub(crate) fn root_bound(f: &[BigRational]) -> BigRational {
    let lc = f.last().expect("nonzero polynomial").clone();
    let mut m = BigRational::zero();
    for c in &f[..f.len() - 1] {
        let r = (c / &lc).abs();
        if r > m {
            m = r;
        }
    }
    m + q(2)
}

/// Isolates all real roots of a squarefree polynomial into disjoint slots,
/// sorted ascending. Degree-one input yields an exact point slot; for higher
/// degrees the endpoints of every slot are non-roots (the caller guarantees
/// the polynomial has no rational roots, e.g. because it is irreducible).
pub(crate) fn isolate_real_roots(f: &QPoly) -> Vec<RootSlot> {
    let d = poly::degree(f).expect("nonzero polynomial");
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        let root = -&f[0] / &f[1];
        return vec![RootSlot { interval: Interval::point(root), sign_lo: 0 }];
    }
    let chain = poly::sturm_chain(f);
    let bound = root_bound(f);
    let mut queue = vec![(-bound.clone(), bound.clone())];
    let mut found: Vec<(BigRational, BigRational)> = Vec::new();
    while let Some((a, b)) = queue.pop() {
        match poly::count_roots(&chain, &a, &b) {
            0 => {}
            1 => found.push((a, b)),
            _ => {
                let m = (&a + &b) / q(2);
                debug_assert!(!poly::eval(f, &m).is_zero(), "rational root hit in bisection");
                queue.push((a, m.clone()));
                queue.push((m, b));
            }
        }
    }
    found.sort();
    let mut slots: Vec<RootSlot> = found
        .into_iter()
        .map(|(a, b)| {
            let sign_lo = poly::rat_sign(&poly::eval(f, &a));
            debug_assert!(sign_lo != 0);
            RootSlot { interval: Interval::new(a, b), sign_lo }
        })
        .collect();
    // Half-open bisection cells can share endpoints; shrink until the closed
    // intervals are pairwise disjoint.
    let mut i = 0;
    while i + 1 < slots.len() {
        if slots[i].interval.hi() >= slots[i + 1].interval.lo() {
            slots[i] = bisect(f, &slots[i]);
        } else {
            i += 1;
        }
    }
    slots
}

/// One bisection refinement step, keeping the unique enclosed root.
pub(crate) fn bisect(f: &QPoly, slot: &RootSlot) -> RootSlot {
    debug_assert!(!slot.is_point());
    let m = slot.interval.midpoint();
    let sm = poly::rat_sign(&poly::eval(f, &m));
    debug_assert!(sm != 0, "rational root hit while refining");
    if sm == slot.sign_lo {
        RootSlot {
            interval: Interval::new(m, slot.interval.hi().clone()),
            sign_lo: sm,
        }
    } else {
        RootSlot {
            interval: Interval::new(slot.interval.lo().clone(), m),
            sign_lo: slot.sign_lo,
        }
    }
}

// ---------------------------------------------------------------------------
// Complex pair isolation.

struct OnPath;

/// Exact number of roots of `f` strictly inside the rectangle
/// `[x0,x1] x [y0,y1]`, or `Err(OnPath)` when a root or an axis-crossing
/// corner spoils the boundary walk and the rectangle must be nudged.
fn count_in_rect(
    f: &QPoly,
    x0: &BigRational,
    x1: &BigRational,
    y0: &BigRational,
    y1: &BigRational,
) -> Result<usize, OnPath> {
    let corners = [
        (x0.clone(), y0.clone()),
        (x1.clone(), y0.clone()),
        (x1.clone(), y1.clone()),
        (x0.clone(), y1.clone()),
    ];
    for (cx, cy) in &corners {
        let (re, im) = eval_complex(f, cx, cy);
        if re.is_zero() || im.is_zero() {
            return Err(OnPath);
        }
    }

    let mut quadrants: Vec<u8> = Vec::new();
    for e in 0..4 {
        let a = &corners[e];
        let b = &corners[(e + 1) % 4];
        let (p, q_) = compose_along_segment(f, a, b);
        if p.is_empty() || q_.is_empty() {
            return Err(OnPath);
        }
        // A common zero of Re and Im on the edge is a root on the path.
        let g = poly::gcd_monic(&p, &q_);
        if poly::degree(&g) != Some(0) && has_root_in_unit(&g) {
            return Err(OnPath);
        }
        // Sample points that separate all axis crossings along the edge:
        // two consecutive samples bracket at most one root of Re*Im, so the
        // quadrant can only advance by one step between them.
        let samples = crossing_samples(&poly::mul(&p, &q_))?;
        for t in samples {
            let sp = poly::rat_sign(&poly::eval(&p, &t));
            let sq = poly::rat_sign(&poly::eval(&q_, &t));
            if sp == 0 || sq == 0 {
                return Err(OnPath);
            }
            quadrants.push(quadrant(sp, sq));
        }
    }

    let mut turns: i64 = 0;
    let m = quadrants.len();
    for k in 0..m {
        let d = (4 + i64::from(quadrants[(k + 1) % m]) - i64::from(quadrants[k])) % 4;
        match d {
            0 => {}
            1 => turns += 1,
            3 => turns -= 1,
            _ => return Err(OnPath),
        }
    }
    if turns < 0 || turns % 4 != 0 {
        return Err(OnPath);
    }
    Ok((turns / 4) as usize)
}

fn quadrant(sp: i32, sq: i32) -> u8 {
    match (sp > 0, sq > 0) {
        (true, true) => 0,
        (false, true) => 1,
        (false, false) => 2,
        (true, false) => 3,
    }
}

/// f evaluated at the rational complex point x + iy.
fn eval_complex(f: &QPoly, x: &BigRational, y: &BigRational) -> (BigRational, BigRational) {
    let mut re = BigRational::zero();
    let mut im = BigRational::zero();
    for c in f.iter().rev() {
        let nre = &re * x - &im * y + c;
        let nim = &re * y + &im * x;
        re = nre;
        im = nim;
    }
    (re, im)
}

/// Real and imaginary parts of f(a + t(b - a)) as polynomials in t.
fn compose_along_segment(
    f: &QPoly,
    a: &(BigRational, BigRational),
    b: &(BigRational, BigRational),
) -> (QPoly, QPoly) {
    let zx = vec![a.0.clone(), &b.0 - &a.0];
    let zy = vec![a.1.clone(), &b.1 - &a.1];
    let mut re: QPoly = Vec::new();
    let mut im: QPoly = Vec::new();
    for c in f.iter().rev() {
        let nre = poly::add(&poly::sub(&poly::mul(&re, &zx), &poly::mul(&im, &zy)), &[c.clone()]);
        let nim = poly::add(&poly::mul(&re, &zy), &poly::mul(&im, &zx));
        re = nre;
        im = nim;
    }
    (poly::trim(re), poly::trim(im))
}

fn has_root_in_unit(p: &QPoly) -> bool {
    let sf = poly::squarefree_part(p);
    if poly::degree(&sf).map_or(true, |d| d == 0) {
        return false;
    }
    if poly::eval(&sf, &BigRational::zero()).is_zero()
        || poly::eval(&sf, &BigRational::one()).is_zero()
    {
        return true;
    }
    let chain = poly::sturm_chain(&sf);
    poly::count_roots(&chain, &BigRational::zero(), &BigRational::one()) > 0
}

/// Returns sorted non-root sample points for [0, 1] such that any two
/// consecutive samples bracket at most one root of `s`. The endpoints 0 and 1
/// must not be roots (guaranteed by the corner checks).
fn crossing_samples(s: &QPoly) -> Result<Vec<BigRational>, OnPath> {
    let sf = poly::squarefree_part(s);
    let mut samples = vec![BigRational::zero(), BigRational::one()];
    if poly::degree(&sf).map_or(false, |d| d > 0) {
        if poly::eval(&sf, &samples[0]).is_zero() || poly::eval(&sf, &samples[1]).is_zero() {
            return Err(OnPath);
        }
        let chain = poly::sturm_chain(&sf);
        let mut queue = vec![(BigRational::zero(), BigRational::one())];
        while let Some((a, b)) = queue.pop() {
            if poly::count_roots(&chain, &a, &b) <= 1 {
                continue;
            }
            // Split at a non-root point; sweep fractions near 1/2 when the
            // midpoint happens to be a root.
            let w = &b - &a;
            let mut cut = None;
            for k in 0..32u32 {
                let frac = BigRational::new(BigInt::from(16 + k), BigInt::from(32 + 2 * k + 1));
                let c = &a + &w * &frac;
                if !poly::eval(&sf, &c).is_zero() {
                    cut = Some(c);
                    break;
                }
            }
            let c = cut.ok_or(OnPath)?;
            samples.push(c.clone());
            queue.push((a, c.clone()));
            queue.push((c, b));
        }
    }
    samples.sort();
    samples.dedup();
    Ok(samples)
}

/// Counts roots in a rectangle, nudging the rectangle through a fixed
/// schedule whenever the boundary walk hits a root or an axis corner.
/// The floor `y0` is only ever nudged upward so the rectangle stays in the
/// open upper half plane. Returns the count with the rectangle actually used.
#[allow(clippy::type_complexity)]
fn robust_count(
    f: &QPoly,
    x0: BigRational,
    x1: BigRational,
    y0: BigRational,
    y1: BigRational,
) -> (usize, (BigRational, BigRational, BigRational, BigRational)) {
    let wx = &x1 - &x0;
    let wy = &y1 - &y0;
    for attempt in 0..64i64 {
        let d = q(attempt) / q(64 * (attempt + 1) + 7);
        let (ax0, ax1, ay0, ay1) = (
            &x0 - &wx * &d,
            &x1 + &wx * &d * q(65) / q(64),
            &y0 + &wy * &d,
            &y1 + &wy * &d * q(63) / q(64),
        );
        if let Ok(c) = count_in_rect(f, &ax0, &ax1, &ay0, &ay1) {
            return (c, (ax0, ax1, ay0, ay1));
        }
    }
    panic!("complex root counting failed to find a clean rectangle");
}

/// Isolates the `s` upper-half-plane representatives of the conjugate pairs
/// of a squarefree polynomial into disjoint boxes.
pub(crate) fn isolate_complex_boxes(f: &QPoly, s: usize) -> Vec<ComplexBox> {
    if s == 0 {
        return Vec::new();
    }
    let bound = root_bound(f);
    if s == 1 {
        return vec![ComplexBox {
            re: Interval::new(-bound.clone(), bound.clone()),
            im: Interval::new(BigRational::zero(), bound),
        }];
    }
    // Lower the floor of the strip until all s pairs are above it.
    let mut floor = BigRational::one();
    let strip;
    loop {
        let (count, rect) = robust_count(f, -bound.clone(), bound.clone(), floor.clone(), &bound + q(1));
        if count == s {
            strip = rect;
            break;
        }
        assert!(count < s, "found more pairs than the signature allows");
        floor /= q(2);
        assert!(floor > BigRational::new(BigInt::one(), BigInt::from(1u64 << 40)), "imaginary parts too small to isolate");
    }

    let mut queue = vec![(strip.clone(), s)];
    let mut boxes = Vec::new();
    while let Some(((x0, x1, y0, y1), count)) = queue.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            boxes.push(ComplexBox {
                re: Interval::new(x0, x1),
                im: Interval::new(y0, y1),
            });
            continue;
        }
        let wx = &x1 - &x0;
        let wy = &y1 - &y0;
        let mut done = false;
        for attempt in 0..32u32 {
            // Split fractions sweep around 1/2 to dodge roots on the cut.
            let frac = BigRational::new(BigInt::from(8 + attempt), BigInt::from(16 + 2 * attempt + 1));
            let (la, lb) = if wx >= wy {
                let cut = &x0 + &wx * &frac;
                (
                    (x0.clone(), cut.clone(), y0.clone(), y1.clone()),
                    (cut, x1.clone(), y0.clone(), y1.clone()),
                )
            } else {
                let cut = &y0 + &wy * &frac;
                (
                    (x0.clone(), x1.clone(), y0.clone(), cut.clone()),
                    (x0.clone(), x1.clone(), cut, y1.clone()),
                )
            };
            let ca = count_in_rect(f, &la.0, &la.1, &la.2, &la.3);
            let cb = count_in_rect(f, &lb.0, &lb.1, &lb.2, &lb.3);
            if let (Ok(ca), Ok(cb)) = (ca, cb) {
                if ca + cb == count {
                    queue.push((la, ca));
                    queue.push((lb, cb));
                    done = true;
                    break;
                }
            }
        }
        assert!(done, "failed to split a complex isolation box");
    }
    boxes.sort_by(|a, b| (a.re.lo(), a.im.lo()).cmp(&(b.re.lo(), b.im.lo())));
    assert_eq!(boxes.len(), s);
    boxes
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn qp(coeffs: &[i64]) -> QPoly {
        poly::trim(coeffs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn isolates_sqrt2_roots() {
        let f = qp(&[-2, 0, 1]);
        let slots = isolate_real_roots(&f);
        assert_eq!(slots.len(), 2);
        // negative root first
        assert!(slots[0].interval.hi() < slots[1].interval.lo());
        assert!(slots[0].interval.contains(&BigRational::new(BigInt::from(-141), BigInt::from(100))) ||
                slots[0].interval.hi().to_f64().unwrap() < 0.0);
    }

    #[test]
    fn refinement_keeps_the_root() {
        let f = qp(&[-2, 0, 1]);
        let mut slot = isolate_real_roots(&f).remove(1);
        for _ in 0..30 {
            let next = bisect(&f, &slot);
            assert!(slot.interval.contains_interval(&next.interval));
            slot = next;
        }
        let two = q(2);
        assert!(slot.interval.lo() * slot.interval.lo() <= two);
        assert!(slot.interval.hi() * slot.interval.hi() >= two);
    }

    #[test]
    fn cubic_has_one_complex_pair_box() {
        let f = qp(&[-2, 0, 0, 1]);
        let boxes = isolate_complex_boxes(&f, 1);
        assert_eq!(boxes.len(), 1);
        // upper root of x^3 - 2 is about -0.63 + 1.09i
        assert!(boxes[0].re.contains(&BigRational::new(BigInt::from(-63), BigInt::from(100))));
        assert!(boxes[0].im.contains(&BigRational::new(BigInt::from(109), BigInt::from(100))));
    }

    #[test]
    fn quartic_with_two_pairs() {
        // x^4 + 1: roots (+-1 +- i)/sqrt(2)
        let f = qp(&[1, 0, 0, 0, 1]);
        let boxes = isolate_complex_boxes(&f, 2);
        assert_eq!(boxes.len(), 2);
        let r = BigRational::new(BigInt::from(7071), BigInt::from(10000));
        let hits: usize = boxes
            .iter()
            .filter(|b| (b.re.contains(&r) || b.re.contains(&-r.clone())) && b.im.contains(&r))
            .count();
        assert_eq!(hits, 2);
    }

    #[test]
    fn quartic_with_purely_imaginary_pairs() {
        // x^4 + 3x^2 + 1: roots +- i*phi, +- i/phi
        let f = qp(&[1, 0, 3, 0, 1]);
        let boxes = isolate_complex_boxes(&f, 2);
        assert_eq!(boxes.len(), 2);
        let phi = BigRational::new(BigInt::from(16180), BigInt::from(10000));
        let inv = BigRational::new(BigInt::from(6180), BigInt::from(10000));
        assert!(boxes.iter().any(|b| b.im.contains(&phi)));
        assert!(boxes.iter().any(|b| b.im.contains(&inv)));
    }
}
