//! Greedy left-to-right realization of a front as exact polylines.
//!
//! Strand `p` (0-based from the top) runs at height `y = -pG`. Before each
//! event a horizontal run makes every adjacent z-gap at least [`MARGIN`].
//! A crossing swaps two neighbours along diagonals of width `G`; a right
//! cusp becomes a counterclockwise loop whose horizontal length is the z-gap
//! divided by `G`, which closes the z-function exactly.
use alloc::vec;
use alloc::vec::Vec;

use super::front::{EventKind, FrontCode};
use super::geom::Pt;
use crate::error::internal_err;
use crate::rat::{q, qr, Q};
use crate::Result;

pub const G: i128 = 2;
pub const MARGIN: i128 = 4 * G * G;

#[derive(Clone, Copy, Debug)]
pub(crate) struct P3 {
    pub x: Q,
    pub y: Q,
    pub z: Q,
}

pub(crate) struct Arc {
    pub pts: Vec<P3>,
    pub left: usize,
    pub right: usize,
}

pub(crate) struct RawChord {
    pub point: Pt,
    pub event: usize,
    pub cusp: bool,
}

pub(crate) struct Sweep {
    pub arcs: Vec<Arc>,
    /// `(upper, lower)` arcs of each left cusp in event order.
    pub lefts: Vec<(usize, usize)>,
    /// `(upper, lower)` arcs of each right cusp in event order.
    pub rights: Vec<(usize, usize)>,
    pub chords: Vec<RawChord>,
    x: Q,
    active: Vec<usize>,
    /// Right edge of the last cusp loop when nothing was pushed past it.
    wall: Option<Q>,
}

fn level(p: usize) -> Q {
    q(-(p as i128) * G)
}

impl Sweep {
    pub fn run(front: &FrontCode) -> Result<Sweep> {
        let mut s = Sweep {
            arcs: Vec::new(),
            lefts: Vec::new(),
            rights: Vec::new(),
            chords: Vec::new(),
            x: q(0),
            active: Vec::new(),
            wall: None,
        };
        for (i, e) in front.events.iter().enumerate() {
            s.spread();
            let p = e.pos - 1;
            match e.kind {
                EventKind::Crossing => s.crossing(i, p),
                EventKind::RightCusp => s.right_cusp(i, p)?,
                EventKind::LeftCusp => s.left_cusp(p),
            }
        }
        if !s.active.is_empty() {
            return Err(internal_err!("sweep ended with open strands"));
        }
        Ok(s)
    }

    fn last(&self, a: usize) -> P3 {
        *self.arcs[a].pts.last().expect("arc has a start point")
    }

    fn push_to(&mut self, a: usize, x: Q, y: Q) {
        let l = self.last(a);
        let z = l.z + (x - l.x) * (l.y + y) / q(2);
        self.arcs[a].pts.push(P3 { x, y, z });
    }

    fn advance(&mut self, dx: Q, target: impl Fn(usize) -> Q) {
        let x = self.x + dx;
        for pos in 0..self.active.len() {
            let a = self.active[pos];
            self.push_to(a, x, target(pos));
        }
        self.x = x;
    }

    /// Horizontal run until adjacent z-gaps reach the margin.
    fn spread(&mut self) {
        let mut need = q(0);
        for pos in 0..self.active.len().saturating_sub(1) {
            let gap = self.last(self.active[pos]).z - self.last(self.active[pos + 1]).z;
            let r = (q(MARGIN) - gap) / q(G);
            if r > need {
                need = r;
            }
        }
        if need > q(0) {
            self.advance(need, level);
        }
    }

    fn crossing(&mut self, event: usize, p: usize) {
        let x0 = self.x;
        self.advance(q(G), |pos| {
            if pos == p {
                level(p + 1)
            } else if pos == p + 1 {
                level(p)
            } else {
                level(pos)
            }
        });
        self.active.swap(p, p + 1);
        self.chords.push(RawChord {
            point: Pt::new(x0 + qr(G, 2), level(p) - qr(G, 2)),
            event,
            cusp: false,
        });
    }

    fn right_cusp(&mut self, event: usize, p: usize) -> Result<()> {
        let (u, l) = (self.active[p], self.active[p + 1]);
        let x0 = self.x;
        let (yu, yl) = (level(p), level(p + 1));
        let gap = self.last(u).z - self.last(l).z;
        let len = gap / q(G);
        let g = q(G);
        for (x, y) in [
            (x0 + g, yl),
            (x0 + g + len, yl),
            (x0 + g + len, yu),
            (x0 + g, yu),
            (x0, yl),
        ] {
            self.push_to(u, x, y);
        }
        if self.last(u).z != self.last(l).z {
            return Err(internal_err!("right cusp loop at event {} does not close", event + 1));
        }
        let xe = x0 + g + len;
        for pos in 0..self.active.len() {
            let a = self.active[pos];
            if a != u && a != l {
                self.push_to(a, xe, level(pos));
            }
        }
        self.x = xe;
        self.active.drain(p..=p + 1);
        self.rights.push((u, l));
        self.arcs[u].right = self.rights.len() - 1;
        self.arcs[l].right = self.rights.len() - 1;
        self.chords.push(RawChord {
            point: Pt::new(x0 + qr(G, 2), yu - qr(G, 2)),
            event,
            cusp: true,
        });
        if self.active.len() > p {
            self.advance(q(2 * G), level);
        } else {
            self.wall = Some(xe);
        }
        Ok(())
    }

    fn left_cusp(&mut self, p: usize) {
        if self.active.len() > p {
            self.advance(q(2 * G), |pos| if pos >= p { level(pos + 2) } else { level(pos) });
        } else if self.wall == Some(self.x) {
            self.advance(q(2 * G), level);
        }
        let half = qr(G, 2);
        let yv = level(p) - half;
        let off_u = half * (yv + level(p)) / q(2);
        let off_l = half * (yv + level(p + 1)) / q(2);
        let up = (p > 0).then(|| self.last(self.active[p - 1])).map(|l| l.z + half * l.y);
        let down = self.active.get(p).map(|&a| self.last(a)).map(|l| l.z + half * l.y);
        let mid = match (up, down) {
            (Some(a), Some(b)) => (a + b) / q(2),
            (Some(a), None) => a - q(2 * MARGIN),
            (None, Some(b)) => b + q(2 * MARGIN),
            (None, None) => q(0),
        };
        let zv = mid - (off_u + off_l) / q(2);
        let start = P3 { x: self.x, y: yv, z: zv };
        let li = self.lefts.len();
        let a = self.arcs.len();
        self.arcs.push(Arc { pts: vec![start], left: li, right: usize::MAX });
        self.arcs.push(Arc { pts: vec![start], left: li, right: usize::MAX });
        self.lefts.push((a, a + 1));
        self.active.insert(p, a + 1);
        self.active.insert(p, a);
        self.advance(half, level);
    }
}
