//! Fronts, their Lagrangian resolution as exact polylines, and diagram-level
//! geometry: chords, signs, classical invariants, faces.
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::internal_err;
use crate::rat::{q, Q};
use crate::Result;

mod faces;
mod front;
pub mod geom;
mod realize;

pub use faces::{Corner, Face, Quadrant};
pub use front::{parse_event, parse_events, parse_front, Event, EventKind, FrontCode, Orientation};
pub use geom::Pt;
pub use realize::G;

use geom::{dir8, interior_param, meet, turn, Meet};
use realize::{Sweep, P3};

/// One oriented component of the resolved link.
#[derive(Clone, Debug)]
pub struct Component {
    pub id: usize,
    pub coefficient: i8,
    /// Closed polyline, first vertex not repeated.
    pub pts: Vec<Pt>,
    /// z at each vertex.
    pub z: Vec<Q>,
    /// Primitive direction of segment `i` (from vertex `i` to `i+1`).
    pub dirs: Vec<(i8, i8)>,
    /// Arc position of each vertex under the L∞ segment length.
    pub cum: Vec<Q>,
    pub length: Q,
    pub tb: i64,
    pub rot: i64,
}

impl Component {
    pub fn n(&self) -> usize {
        self.pts.len()
    }
    pub fn seg(&self, i: usize) -> (Pt, Pt) {
        (self.pts[i], self.pts[(i + 1) % self.n()])
    }
    pub fn seg_len(&self, i: usize) -> Q {
        let (a, b) = self.seg(i);
        let d = b - a;
        let (ax, ay) = (abs(d.x), abs(d.y));
        if ax > ay {
            ax
        } else {
            ay
        }
    }
    /// z at a point of segment `i`, by the line integral of `y dx`.
    pub fn z_on(&self, i: usize, p: Pt) -> Q {
        let a = self.pts[i];
        self.z[i] + (p.x - a.x) * (a.y + p.y) / q(2)
    }
    /// Vertices strictly passed when moving from `(s1,t1)` to `(s2,t2)`.
    pub fn vertices_between(&self, s1: usize, t1: Q, s2: usize, t2: Q, forward: bool) -> Vec<usize> {
        let n = self.n();
        let mut out = Vec::new();
        if forward {
            if s1 == s2 && t2 > t1 {
                return out;
            }
            let mut v = (s1 + 1) % n;
            loop {
                out.push(v);
                if v == s2 {
                    break;
                }
                v = (v + 1) % n;
            }
        } else {
            if s1 == s2 && t2 < t1 {
                return out;
            }
            let mut v = s1;
            loop {
                out.push(v);
                if v == (s2 + 1) % n {
                    break;
                }
                v = (v + n - 1) % n;
            }
        }
        out
    }
    /// Forward arc distance from position `a` to position `b`, in `[0, length)`.
    pub fn forward_distance(&self, a: Q, b: Q) -> Q {
        let d = b - a;
        if d < Q::zero() {
            d + self.length
        } else {
            d
        }
    }
}

fn abs(x: Q) -> Q {
    if x < Q::zero() {
        -x
    } else {
        x
    }
}

/// Where a chord meets the link.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Endpoint {
    pub comp: usize,
    pub seg: usize,
    pub t: Q,
    /// Arc position along the component.
    pub pos: Q,
    pub z: Q,
    pub dir: (i8, i8),
}

#[derive(Clone, Debug)]
pub struct ChordRecord {
    /// 1-based label.
    pub id: usize,
    pub point: Pt,
    pub sign: i8,
    pub tail: Endpoint,
    pub tip: Endpoint,
    pub action: Q,
    /// Index of the front event producing this chord.
    pub event: usize,
    pub from_right_cusp: bool,
}

#[derive(Clone, Debug)]
pub struct ResolvedDiagram {
    pub front: FrontCode,
    pub components: Vec<Component>,
    /// Indexed by `id - 1`.
    pub chords: Vec<ChordRecord>,
    pub faces: Vec<Face>,
    /// Off-diagonal: linking numbers; diagonal: tb.
    pub linking: Vec<Vec<i64>>,
}

impl ResolvedDiagram {
    pub fn coefficient(&self, comp: usize) -> i8 {
        self.components[comp].coefficient
    }
    pub fn n_chords(&self) -> usize {
        self.chords.len()
    }
    /// Coefficient of the tip component of chord index `j`.
    pub fn c_plus(&self, j: usize) -> i8 {
        self.coefficient(self.chords[j].tip.comp)
    }
    pub fn c_minus(&self, j: usize) -> i8 {
        self.coefficient(self.chords[j].tail.comp)
    }
    /// Chord indices `j` with `(j, k)` composable.
    pub fn composable(&self, j: usize, k: usize) -> bool {
        self.chords[j].tip.comp == self.chords[k].tail.comp
    }
    /// Components with coefficient ±1.
    pub fn surgered(&self) -> Vec<usize> {
        (0..self.components.len()).filter(|&c| self.coefficient(c) != 0).collect()
    }
    /// Chord endpoints on component `c` as `(pos, chord index, is_tip)`.
    pub fn endpoints_on(&self, c: usize) -> Vec<(Q, usize, bool)> {
        let mut v = Vec::new();
        for (j, ch) in self.chords.iter().enumerate() {
            if ch.tail.comp == c {
                v.push((ch.tail.pos, j, false));
            }
            if ch.tip.comp == c {
                v.push((ch.tip.pos, j, true));
            }
        }
        v.sort();
        v
    }
    /// Face basepoints in face order.
    pub fn point_basis(&self) -> Vec<Pt> {
        point_basis(self)
    }
}

/// Validated front to exact resolution.
pub fn resolve(front: &FrontCode) -> Result<ResolvedDiagram> {
    let sweep = Sweep::run(front)?;
    let components = build_components(front, &sweep)?;
    let chords = build_chords(front, &sweep, &components)?;
    check_generic(&components, &chords)?;
    let mut components = components;
    let nc = components.len();
    let mut linking = vec![vec![0i64; nc]; nc];
    for ch in &chords {
        let (a, b) = (ch.tail.comp, ch.tip.comp);
        if a == b {
            components[a].tb += ch.sign as i64;
        } else {
            linking[a][b] += ch.sign as i64;
            linking[b][a] += ch.sign as i64;
        }
    }
    for (i, row) in linking.iter_mut().enumerate() {
        for v in row.iter_mut() {
            if *v % 2 != 0 {
                return Err(internal_err!("odd inter-component crossing count"));
            }
            *v /= 2;
        }
        row[i] = components[i].tb;
    }
    let mut d = ResolvedDiagram { front: front.clone(), components, chords, faces: Vec::new(), linking };
    d.faces = faces::compute_faces(&d)?;
    Ok(d)
}

/// Per-component `(tb, rot)` and the linking matrix (tb on the diagonal).
pub fn classical_invariants(d: &ResolvedDiagram) -> (Vec<i64>, Vec<i64>, Vec<Vec<i64>>) {
    (
        d.components.iter().map(|c| c.tb).collect(),
        d.components.iter().map(|c| c.rot).collect(),
        d.linking.clone(),
    )
}

/// Chord id to action.
pub fn chord_actions(d: &ResolvedDiagram) -> BTreeMap<usize, Q> {
    d.chords.iter().map(|c| (c.id, c.action)).collect()
}

pub fn faces(d: &ResolvedDiagram) -> &[Face] {
    &d.faces
}

pub fn point_basis(d: &ResolvedDiagram) -> Vec<Pt> {
    d.faces.iter().map(|f| f.basepoint).collect()
}

fn build_components(front: &FrontCode, s: &Sweep) -> Result<Vec<Component>> {
    let ncomp = front.n_components();
    let mut first_left = vec![usize::MAX; ncomp];
    for (li, &c) in front.left_components().iter().enumerate() {
        if first_left[c] == usize::MAX {
            first_left[c] = li;
        }
    }
    let mut out = Vec::new();
    for (c, &li0) in first_left.iter().enumerate() {
        let mut raw: Vec<P3> = Vec::new();
        let mut arc = s.lefts[li0].0;
        let mut forward = true;
        let mut guard = 0usize;
        loop {
            guard += 1;
            if guard > 4 * s.arcs.len() + 4 {
                return Err(internal_err!("component {c} traversal does not close"));
            }
            let pts = &s.arcs[arc].pts;
            let seq: Vec<P3> = if forward { pts.clone() } else { pts.iter().rev().copied().collect() };
            for p in seq {
                if raw.last().is_some_and(|l| l.x == p.x && l.y == p.y) {
                    continue;
                }
                raw.push(p);
            }
            if forward {
                let (u, l) = s.rights[s.arcs[arc].right];
                arc = if arc == u { l } else { u };
                forward = false;
            } else {
                let li = s.arcs[arc].left;
                let (up, lo) = s.lefts[li];
                let next = if arc == up { lo } else { up };
                if li == li0 && next == up {
                    break;
                }
                arc = next;
                forward = true;
            }
        }
        if raw.len() > 1 {
            let (f, l) = (raw[0], raw[raw.len() - 1]);
            if f.x == l.x && f.y == l.y {
                raw.pop();
            }
        }
        // merge collinear runs
        loop {
            let n = raw.len();
            let mut drop = None;
            for i in 0..n {
                let a = raw[(i + n - 1) % n];
                let b = raw[i];
                let cpt = raw[(i + 1) % n];
                let d1 = dir8(Pt::new(a.x, a.y), Pt::new(b.x, b.y));
                let d2 = dir8(Pt::new(b.x, b.y), Pt::new(cpt.x, cpt.y));
                if d1.is_some() && d1 == d2 {
                    drop = Some(i);
                    break;
                }
            }
            match drop {
                Some(i) => {
                    raw.remove(i);
                }
                None => break,
            }
        }
        if front.orientation(c) == Orientation::Minus {
            raw[1..].reverse();
        }
        let pts: Vec<Pt> = raw.iter().map(|p| Pt::new(p.x, p.y)).collect();
        let z: Vec<Q> = raw.iter().map(|p| p.z).collect();
        let n = pts.len();
        let mut dirs = Vec::with_capacity(n);
        for i in 0..n {
            let d = dir8(pts[i], pts[(i + 1) % n])
                .ok_or_else(|| internal_err!("component {c}: segment {i} is not at a multiple of pi/4"))?;
            dirs.push(d);
        }
        let mut comp = Component {
            id: c,
            coefficient: front.coefficient(c),
            pts,
            z,
            dirs,
            cum: Vec::new(),
            length: q(0),
            tb: 0,
            rot: 0,
        };
        let mut acc = q(0);
        for i in 0..n {
            comp.cum.push(acc);
            let (a, b) = comp.seg(i);
            let expect = comp.z[i] + (b.x - a.x) * (a.y + b.y) / q(2);
            if expect != comp.z[(i + 1) % n] {
                return Err(internal_err!("component {c}: closure of the z-integral fails at segment {i}"));
            }
            acc += comp.seg_len(i);
        }
        comp.length = acc;
        let mut total = 0i32;
        for i in 0..n {
            total += turn(comp.dirs[(i + n - 1) % n], comp.dirs[i])
                .ok_or_else(|| internal_err!("component {c}: polyline reverses at vertex {i}"))?;
        }
        if total % 8 != 0 {
            return Err(internal_err!("component {c}: tangent winding {total}/8 is not integral"));
        }
        comp.rot = (total / 8) as i64;
        out.push(comp);
    }
    Ok(out)
}

fn build_chords(front: &FrontCode, s: &Sweep, comps: &[Component]) -> Result<Vec<ChordRecord>> {
    let mut out = Vec::new();
    for (k, raw) in s.chords.iter().enumerate() {
        let mut hits = Vec::new();
        for c in comps {
            for i in 0..c.n() {
                let (a, b) = c.seg(i);
                if let Some(t) = interior_param(a, b, raw.point) {
                    hits.push(Endpoint {
                        comp: c.id,
                        seg: i,
                        t,
                        pos: c.cum[i] + t * c.seg_len(i),
                        z: c.z_on(i, raw.point),
                        dir: c.dirs[i],
                    });
                }
            }
        }
        if hits.len() != 2 {
            return Err(internal_err!("chord at event {} meets the link {} times", raw.event + 1, hits.len()));
        }
        let (mut tail, mut tip) = (hits[0], hits[1]);
        if tail.z > tip.z {
            core::mem::swap(&mut tail, &mut tip);
        }
        let action = tip.z - tail.z;
        if action <= q(0) {
            return Err(internal_err!("chord at event {} has non-positive action", raw.event + 1));
        }
        let over_ok = matches!(tip.dir, (1, -1) | (-1, 1));
        let under_ok = matches!(tail.dir, (1, 1) | (-1, -1));
        if !over_ok || !under_ok {
            return Err(internal_err!("chord at event {} is not in good position", raw.event + 1));
        }
        let cr = geom::cross(geom::vec_of(tip.dir), geom::vec_of(tail.dir));
        let sign = if cr > q(0) { 1 } else { -1 };
        let id = front.labels.as_ref().map_or(k + 1, |l| l[k]);
        out.push(ChordRecord { id, point: raw.point, sign, tail, tip, action, event: raw.event, from_right_cusp: raw.cusp });
    }
    out.sort_by_key(|c| c.id);
    Ok(out)
}

/// Every intersection of segments is a recorded chord, hit exactly once and
/// transversally at interior points.
fn check_generic(comps: &[Component], chords: &[ChordRecord]) -> Result<()> {
    let mut segs = Vec::new();
    for c in comps {
        for i in 0..c.n() {
            segs.push((c.id, i, c.seg(i)));
        }
    }
    let mut found: BTreeMap<Pt, usize> = BTreeMap::new();
    for x in 0..segs.len() {
        for y in x + 1..segs.len() {
            let (c1, i1, (a, b)) = segs[x];
            let (c2, i2, (cc, dd)) = segs[y];
            let n = comps[c1].n();
            let adjacent = c1 == c2 && ((i1 + 1) % n == i2 || (i2 + 1) % n == i1);
            match meet(a, b, cc, dd) {
                Meet::None => {}
                Meet::Overlap => return Err(internal_err!("overlapping segments")),
                Meet::Point(t, u) => {
                    let one = q(1);
                    let interior = t > q(0) && t < one && u > q(0) && u < one;
                    if adjacent && !interior && n > 2 {
                        continue;
                    }
                    if !interior {
                        return Err(internal_err!("segments touch at a vertex"));
                    }
                    *found.entry(a + (b - a) * t).or_insert(0) += 1;
                }
            }
        }
    }
    if found.len() != chords.len() {
        return Err(internal_err!("{} double points but {} chords", found.len(), chords.len()));
    }
    for ch in chords {
        match found.get(&ch.point) {
            Some(1) => {}
            Some(_) => return Err(internal_err!("triple point at chord {}", ch.id)),
            None => return Err(internal_err!("chord {} is not a double point", ch.id)),
        }
    }
    Ok(())
}

