//! Exact planar primitives.
use core::ops::{Add, Mul, Sub};

use crate::rat::{sign, Q};
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pt {
    pub x: Q,
    pub y: Q,
}

impl Pt {
    pub fn new(x: Q, y: Q) -> Self {
        Pt { x, y }
    }
}

impl Add for Pt {
    type Output = Pt;
    fn add(self, o: Pt) -> Pt {
        Pt::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Pt {
    type Output = Pt;
    fn sub(self, o: Pt) -> Pt {
        Pt::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<Q> for Pt {
    type Output = Pt;
    fn mul(self, s: Q) -> Pt {
        Pt::new(self.x * s, self.y * s)
    }
}

pub fn cross(a: Pt, b: Pt) -> Q {
    a.x * b.y - a.y * b.x
}

pub fn dot(a: Pt, b: Pt) -> Q {
    a.x * b.x + a.y * b.y
}

/// Primitive direction of a segment, `(sgn dx, sgn dy)`. `None` unless the
/// segment is nondegenerate and its angle is a multiple of π/4.
pub fn dir8(a: Pt, b: Pt) -> Option<(i8, i8)> {
    let d = b - a;
    if d.x.is_zero() && d.y.is_zero() {
        return None;
    }
    if !(d.x.is_zero() || d.y.is_zero() || d.x.abs() == d.y.abs()) {
        return None;
    }
    Some((sign(&d.x), sign(&d.y)))
}

/// Angle index `k` with angle `kπ/4`.
pub fn octant(d: (i8, i8)) -> i32 {
    match d {
        (1, 0) => 0,
        (1, 1) => 1,
        (0, 1) => 2,
        (-1, 1) => 3,
        (-1, 0) => 4,
        (-1, -1) => 5,
        (0, -1) => 6,
        (1, -1) => 7,
        _ => unreachable!("not a primitive direction"),
    }
}

/// Signed turn from `a` to `b` in units of π/4, in `-3..=3`; `None` on reversal.
pub fn turn(a: (i8, i8), b: (i8, i8)) -> Option<i32> {
    let t = (octant(b) - octant(a)).rem_euclid(8);
    let t = if t > 4 { t - 8 } else { t };
    if t == 4 {
        None
    } else {
        Some(t)
    }
}

pub fn vec_of(d: (i8, i8)) -> Pt {
    Pt::new(Q::from_integer(d.0 as i128), Q::from_integer(d.1 as i128))
}

/// Parameter `t ∈ (0,1)` of `p` on the open segment `ab`, if it lies there.
pub fn interior_param(a: Pt, b: Pt, p: Pt) -> Option<Q> {
    let r = b - a;
    let w = p - a;
    if !cross(r, w).is_zero() {
        return None;
    }
    let t = dot(w, r) / dot(r, r);
    if t > Q::zero() && t < Q::from_integer(1) {
        Some(t)
    } else {
        None
    }
}

pub enum Meet {
    None,
    /// Parameters on both segments.
    Point(Q, Q),
    Overlap,
}

/// Closed-segment intersection.
pub fn meet(a: Pt, b: Pt, c: Pt, d: Pt) -> Meet {
    let (lo1x, hi1x) = minmax(a.x, b.x);
    let (lo2x, hi2x) = minmax(c.x, d.x);
    let (lo1y, hi1y) = minmax(a.y, b.y);
    let (lo2y, hi2y) = minmax(c.y, d.y);
    if hi1x < lo2x || hi2x < lo1x || hi1y < lo2y || hi2y < lo1y {
        return Meet::None;
    }
    let r = b - a;
    let s = d - c;
    let den = cross(r, s);
    let w = c - a;
    if den.is_zero() {
        if !cross(w, r).is_zero() {
            return Meet::None;
        }
        let rr = dot(r, r);
        let t0 = dot(w, r) / rr;
        let t1 = dot(d - a, r) / rr;
        let (lo, hi) = minmax(t0, t1);
        let zero = Q::zero();
        let one = Q::from_integer(1);
        if hi < zero || lo > one {
            Meet::None
        } else if hi == zero || lo == one {
            let t = if hi == zero { zero } else { one };
            let p = a + r * t;
            let u = dot(p - c, s) / dot(s, s);
            Meet::Point(t, u)
        } else {
            Meet::Overlap
        }
    } else {
        let t = cross(w, s) / den;
        let u = cross(w, r) / den;
        let zero = Q::zero();
        let one = Q::from_integer(1);
        if t < zero || t > one || u < zero || u > one {
            Meet::None
        } else {
            Meet::Point(t, u)
        }
    }
}

fn minmax(a: Q, b: Q) -> (Q, Q) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Twice the signed area of a closed polygon.
pub fn area2(poly: &[Pt]) -> Q {
    let n = poly.len();
    let mut s = Q::zero();
    for i in 0..n {
        s += cross(poly[i], poly[(i + 1) % n]);
    }
    s
}

/// Winding number of a closed polygon about `p`; `None` if `p` lies on it.
pub fn winding(poly: &[Pt], p: Pt) -> Option<i64> {
    let n = poly.len();
    let mut w = 0i64;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if a == b {
            continue;
        }
        if on_segment(a, b, p) {
            return None;
        }
        if a.y <= p.y {
            if b.y > p.y && cross(b - a, p - a) > Q::zero() {
                w += 1;
            }
        } else if b.y <= p.y && cross(b - a, p - a) < Q::zero() {
            w -= 1;
        }
    }
    Some(w)
}

pub fn on_segment(a: Pt, b: Pt, p: Pt) -> bool {
    if !cross(b - a, p - a).is_zero() {
        return false;
    }
    let (lx, hx) = minmax(a.x, b.x);
    let (ly, hy) = minmax(a.y, b.y);
    p.x >= lx && p.x <= hx && p.y >= ly && p.y <= hy
}

/// Squared Euclidean distance from `p` to the closed segment `ab`.
pub fn dist2_to_segment(a: Pt, b: Pt, p: Pt) -> Q {
    let r = b - a;
    let rr = dot(r, r);
    let mut t = dot(p - a, r) / rr;
    if t < Q::zero() {
        t = Q::zero();
    }
    if t > Q::from_integer(1) {
        t = Q::from_integer(1);
    }
    let f = a + r * t;
    dot(p - f, p - f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn p(x: i128, y: i128) -> Pt {
        Pt::new(q(x), q(y))
    }

    #[test]
    fn square_winding_and_area() {
        let sq = [p(0, 0), p(2, 0), p(2, 2), p(0, 2)];
        assert_eq!(area2(&sq), q(8));
        assert_eq!(winding(&sq, p(1, 1)), Some(1));
        assert_eq!(winding(&sq, p(3, 1)), Some(0));
        assert_eq!(winding(&sq, p(2, 1)), None);
        let rev: alloc::vec::Vec<Pt> = sq.iter().rev().copied().collect();
        assert_eq!(winding(&rev, p(1, 1)), Some(-1));
    }

    #[test]
    fn turns() {
        assert_eq!(turn((1, 0), (0, 1)), Some(2));
        assert_eq!(turn((1, 0), (1, -1)), Some(-1));
        assert_eq!(turn((1, 0), (-1, 0)), None);
    }
}
