//! Bounded faces of the planar arrangement.
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::geom::{area2, octant, vec_of, winding, Pt};
use super::ResolvedDiagram;
use crate::error::internal_err;
use crate::rat::{q, Q};
use crate::Result;

/// Side of a crossing a corner occupies. Strands are diagonal at chords, so
/// the four quadrants face the axis directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quadrant {
    N,
    E,
    S,
    W,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corner {
    /// Chord index (label minus one).
    pub chord: usize,
    pub quadrant: Quadrant,
    /// The counterclockwise boundary jumps up in z here.
    pub positive: bool,
}

#[derive(Clone, Debug)]
pub struct Face {
    /// 1-based, ordered by basepoint (lowest, then leftmost).
    pub id: usize,
    /// In counterclockwise order along the outer boundary, then along holes.
    pub corners: Vec<Corner>,
    pub area: Q,
    pub basepoint: Pt,
    /// Outer boundary (counterclockwise) followed by holes (clockwise).
    pub boundary: Vec<Vec<Pt>>,
}

impl Face {
    pub fn all_positive(&self) -> bool {
        !self.corners.is_empty() && self.corners.iter().all(|c| c.positive)
    }
}

struct Half {
    from: usize,
    to: usize,
    dir: (i8, i8),
    comp: usize,
    seg: usize,
}

pub(super) fn compute_faces(d: &ResolvedDiagram) -> Result<Vec<Face>> {
    let mut nodes: BTreeMap<Pt, usize> = BTreeMap::new();
    let mut pos: Vec<Pt> = Vec::new();
    let mut node = |p: Pt, pos: &mut Vec<Pt>| -> usize {
        *nodes.entry(p).or_insert_with(|| {
            pos.push(p);
            pos.len() - 1
        })
    };
    let mut chord_at: BTreeMap<Pt, usize> = BTreeMap::new();
    for (j, ch) in d.chords.iter().enumerate() {
        chord_at.insert(ch.point, j);
    }
    let mut halves: Vec<Half> = Vec::new();
    for c in &d.components {
        for i in 0..c.n() {
            let (a, b) = c.seg(i);
            let mut cuts: Vec<(Q, Pt)> = Vec::new();
            for ch in &d.chords {
                for e in [ch.tail, ch.tip] {
                    if e.comp == c.id && e.seg == i {
                        cuts.push((e.t, ch.point));
                    }
                }
            }
            cuts.sort();
            let mut chain = vec![a];
            chain.extend(cuts.into_iter().map(|(_, p)| p));
            chain.push(b);
            for w in chain.windows(2) {
                let u = node(w[0], &mut pos);
                let v = node(w[1], &mut pos);
                let dir = c.dirs[i];
                halves.push(Half { from: u, to: v, dir, comp: c.id, seg: i });
                halves.push(Half { from: v, to: u, dir: (-dir.0, -dir.1), comp: c.id, seg: i });
            }
        }
    }
    let nn = pos.len();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); nn];
    for (h, he) in halves.iter().enumerate() {
        out_edges[he.from].push(h);
    }
    for l in out_edges.iter_mut() {
        l.sort_by_key(|&h| octant(halves[h].dir));
        for w in l.windows(2) {
            if halves[w[0]].dir == halves[w[1]].dir {
                return Err(internal_err!("two edges leave a vertex in the same direction"));
            }
        }
    }
    let next = |h: usize| -> usize {
        let v = halves[h].to;
        let twin = h ^ 1;
        let l = &out_edges[v];
        let k = l.iter().position(|&e| e == twin).expect("twin leaves its origin");
        l[(k + l.len() - 1) % l.len()]
    };

    // graph components, for hole assignment
    let mut root: Vec<usize> = (0..nn).collect();
    fn find(r: &mut [usize], mut a: usize) -> usize {
        while r[a] != a {
            r[a] = r[r[a]];
            a = r[a];
        }
        a
    }
    for he in &halves {
        let (a, b) = (find(&mut root, he.from), find(&mut root, he.to));
        root[a] = b;
    }

    let mut seen = vec![false; halves.len()];
    struct Cycle {
        hs: Vec<usize>,
        poly: Vec<Pt>,
        a2: Q,
        group: usize,
    }
    let mut cycles: Vec<Cycle> = Vec::new();
    for h0 in 0..halves.len() {
        if seen[h0] {
            continue;
        }
        let mut hs = Vec::new();
        let mut h = h0;
        while !seen[h] {
            seen[h] = true;
            hs.push(h);
            h = next(h);
        }
        if h != h0 {
            return Err(internal_err!("face walk does not close"));
        }
        let poly: Vec<Pt> = hs.iter().map(|&h| pos[halves[h].from]).collect();
        let a2 = area2(&poly);
        if a2.is_zero() {
            return Err(internal_err!("degenerate face boundary"));
        }
        let group = find(&mut root, halves[hs[0]].from);
        cycles.push(Cycle { hs, poly, a2, group });
    }

    let outer: Vec<usize> = (0..cycles.len()).filter(|&i| cycles[i].a2 > q(0)).collect();
    let mut holes: Vec<Vec<usize>> = vec![Vec::new(); cycles.len()];
    let mut unbounded_area2 = q(0);
    for (i, cy) in cycles.iter().enumerate() {
        if cy.a2 > q(0) {
            continue;
        }
        let probe = cy.poly[0];
        let mut best: Option<usize> = None;
        for &o in &outer {
            if cycles[o].group == cy.group {
                continue;
            }
            if winding(&cycles[o].poly, probe).unwrap_or(0) != 0
                && best.is_none_or(|b| cycles[o].a2 < cycles[b].a2)
            {
                best = Some(o);
            }
        }
        match best {
            Some(o) => holes[o].push(i),
            None => unbounded_area2 -= cy.a2,
        }
    }

    let mut faces = Vec::new();
    let mut total = q(0);
    for &o in &outer {
        let mut boundary = vec![cycles[o].poly.clone()];
        let mut a2 = cycles[o].a2;
        let mut corners = Vec::new();
        let mut walks = vec![o];
        walks.extend(holes[o].iter().copied());
        for &ci in &walks {
            if ci != o {
                a2 += cycles[ci].a2;
                boundary.push(cycles[ci].poly.clone());
            }
            let hs = &cycles[ci].hs;
            for k in 0..hs.len() {
                let hin = &halves[hs[k]];
                let hout = &halves[hs[(k + 1) % hs.len()]];
                let Some(&j) = chord_at.get(&pos[hin.to]) else { continue };
                let ch = &d.chords[j];
                let on = |h: &Half, e: &super::Endpoint| h.comp == e.comp && h.seg == e.seg;
                let positive = on(hin, &ch.tail) && on(hout, &ch.tip);
                let negative = on(hin, &ch.tip) && on(hout, &ch.tail);
                if !positive && !negative {
                    return Err(internal_err!("face corner at chord {} does not switch strands", ch.id));
                }
                let b = vec_of((-hin.dir.0, -hin.dir.1)) + vec_of(hout.dir);
                let quadrant = if b.x.is_zero() {
                    if b.y > q(0) { Quadrant::N } else { Quadrant::S }
                } else if b.x > q(0) {
                    Quadrant::E
                } else {
                    Quadrant::W
                };
                corners.push(Corner { chord: j, quadrant, positive });
            }
        }
        let area = a2 / q(2);
        let stokes: Q = corners
            .iter()
            .map(|c| if c.positive { d.chords[c.chord].action } else { -d.chords[c.chord].action })
            .sum();
        if area <= q(0) || stokes != area {
            return Err(internal_err!("face area {area} disagrees with corner actions {stokes}"));
        }
        total += area;
        let basepoint = interior_point(&boundary)?;
        faces.push(Face { id: 0, corners, area, basepoint, boundary });
    }
    if total * q(2) != unbounded_area2 {
        return Err(internal_err!("face areas do not add up to the enclosed area"));
    }
    faces.sort_by(|a, b| (a.basepoint.x, a.basepoint.y).cmp(&(b.basepoint.x, b.basepoint.y)));
    for (k, f) in faces.iter_mut().enumerate() {
        f.id = k + 1;
    }
    Ok(faces)
}

/// Midpoint of the leftmost inside interval on the lowest scanline halfway
/// between vertex heights.
fn interior_point(boundary: &[Vec<Pt>]) -> Result<Pt> {
    let mut ys: Vec<Q> = boundary.iter().flatten().map(|p| p.y).collect();
    ys.sort();
    ys.dedup();
    for w in ys.windows(2) {
        let y0 = (w[0] + w[1]) / q(2);
        let mut xs: Vec<Q> = Vec::new();
        for poly in boundary {
            let n = poly.len();
            for i in 0..n {
                let (a, b) = (poly[i], poly[(i + 1) % n]);
                let (lo, hi) = if a.y < b.y { (a.y, b.y) } else { (b.y, a.y) };
                if lo < y0 && y0 < hi {
                    xs.push(a.x + (b.x - a.x) * (y0 - a.y) / (b.y - a.y));
                }
            }
        }
        xs.sort();
        if xs.len() >= 2 {
            let p = Pt::new((xs[0] + xs[1]) / q(2), y0);
            return Ok(p);
        }
    }
    Err(internal_err!("face without interior scanline"))
}
