//! Orbits and Λ⁰-chords as words of composable chords; push-out curves.
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::diagram_core::geom::{cross, dist2_to_segment, meet, vec_of, winding, Meet, Pt};
use crate::diagram_core::ResolvedDiagram;
use crate::error::{input_err, internal_err};
use crate::indices::capping_path;
use crate::rat::{q, qr, Q};
use crate::{Error, Result};

/// Chord indices (label minus one), in order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<usize>);

/// A cyclically composable word in its lexicographically least rotation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord(Vec<usize>);

impl CyclicWord {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    /// `k`-fold cover.
    pub fn power(&self, k: usize) -> CyclicWord {
        CyclicWord(self.0.repeat(k))
    }
    /// Word action `Σ A_j`.
    pub fn action(&self, d: &ResolvedDiagram) -> Q {
        self.0.iter().map(|&j| d.chords[j].action).sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_letters(f, &self.0)?;
        f.write_str(")")
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, w: &[usize]) -> fmt::Result {
    for &j in w {
        write!(f, "r{}", j + 1)?;
    }
    Ok(())
}

/// Parses `r1r2r4` (or `(r1 r2)`, `r1,r2`) into chord indices.
pub fn parse_word(s: &str) -> Result<Word> {
    let mut out = Vec::new();
    let cleaned: String = s.chars().filter(|c| !matches!(c, '(' | ')' | ',' | ' ')).collect();
    for part in cleaned.split(['r', 'R']).skip(1) {
        let j: usize = part.parse().map_err(|_| Error::Syntax(format!("bad chord in word '{s}'")))?;
        if j == 0 {
            return Err(Error::Syntax(format!("chord labels start at 1 in '{s}'")));
        }
        out.push(j - 1);
    }
    if out.is_empty() || !cleaned.starts_with(['r', 'R']) {
        return Err(Error::Syntax(format!("'{s}' is not a word of chords r<i>")));
    }
    Ok(Word(out))
}

/// Least rotation; the earliest index wins ties.
pub fn least_rotation(w: &[usize]) -> Vec<usize> {
    let n = w.len();
    let mut best = 0;
    for r in 1..n {
        if (0..n).map(|i| w[(r + i) % n]).lt((0..n).map(|i| w[(best + i) % n])) {
            best = r;
        }
    }
    (0..n).map(|i| w[(best + i) % n]).collect()
}

pub fn canonical_cyclic(d: &ResolvedDiagram, w: &Word) -> Result<CyclicWord> {
    let c = cyclic_as_given(d, w)?;
    Ok(CyclicWord(least_rotation(&c.0)))
}

/// Checks composability around the cycle but keeps the given rotation, so
/// an orbit string written against it still lines up.
pub fn cyclic_as_given(d: &ResolvedDiagram, w: &Word) -> Result<CyclicWord> {
    let n = w.0.len();
    if n == 0 {
        return Err(input_err!("empty word"));
    }
    for &j in &w.0 {
        if j >= d.n_chords() {
            return Err(input_err!("no chord r{}", j + 1));
        }
    }
    for k in 0..n {
        let (a, b) = (w.0[k], w.0[(k + 1) % n]);
        if !d.composable(a, b) {
            return Err(input_err!("r{} and r{} are not composable", a + 1, b + 1));
        }
    }
    Ok(CyclicWord(w.0.clone()))
}

/// Enumeration limits; at least one must be set.
#[derive(Clone, Debug, Default)]
pub struct Bound {
    pub max_len: Option<usize>,
    /// Inclusive bound on the word action.
    pub max_action: Option<Q>,
}

impl Bound {
    pub fn len(n: usize) -> Bound {
        Bound { max_len: Some(n), max_action: None }
    }
    fn check(&self) -> Result<()> {
        if self.max_len.is_none() && self.max_action.is_none() {
            return Err(input_err!("enumeration needs a length or action bound"));
        }
        Ok(())
    }
    fn admits(&self, len: usize, action: Q) -> bool {
        self.max_len.is_none_or(|m| len <= m) && self.max_action.is_none_or(|a| action <= a)
    }
}

/// Every cyclic word on chords of Λ± within the bound, canonical and
/// deduplicated, covers included. Ordered by length, then letters.
pub fn enumerate_orbit_words(d: &ResolvedDiagram, bound: &Bound) -> Result<Vec<CyclicWord>> {
    bound.check()?;
    if d.surgered().is_empty() {
        return Err(input_err!("no component has a nonzero surgery coefficient"));
    }
    let ok: Vec<bool> = (0..d.n_chords()).map(|j| d.c_minus(j) != 0 && d.c_plus(j) != 0).collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for first in 0..d.n_chords() {
        if ok[first] {
            stack.push(first);
            grow(d, bound, &ok, first, d.chords[first].action, &mut stack, &mut out);
            stack.pop();
        }
    }
    out.sort_by(|a: &CyclicWord, b| (a.len(), &a.0).cmp(&(b.len(), &b.0)));
    Ok(out)
}

fn grow(
    d: &ResolvedDiagram,
    bound: &Bound,
    ok: &[bool],
    first: usize,
    action: Q,
    stack: &mut Vec<usize>,
    out: &mut Vec<CyclicWord>,
) {
    if !bound.admits(stack.len(), action) {
        return;
    }
    let last = *stack.last().expect("nonempty");
    if d.composable(last, first) && least_rotation(stack) == *stack {
        out.push(CyclicWord(stack.clone()));
    }
    for j in first..d.n_chords() {
        if ok[j] && d.composable(last, j) {
            stack.push(j);
            grow(d, bound, ok, first, action + d.chords[j].action, stack, out);
            stack.pop();
        }
    }
}

/// Words starting and ending on the components `lambda0`, with every
/// intermediate endpoint on Λ±.
pub fn enumerate_chord_words(d: &ResolvedDiagram, lambda0: &[usize], bound: &Bound) -> Result<Vec<Word>> {
    bound.check()?;
    if lambda0.is_empty() {
        return Err(input_err!("empty Λ⁰ selection"));
    }
    for &c in lambda0 {
        if c >= d.components.len() {
            return Err(input_err!("no component {c}"));
        }
        if d.coefficient(c) != 0 {
            return Err(input_err!("component {c} has nonzero coefficient"));
        }
    }
    let in0 = |c: usize| lambda0.contains(&c);
    let pm = |c: usize| d.coefficient(c) != 0;
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn go(
        d: &ResolvedDiagram,
        bound: &Bound,
        in0: &dyn Fn(usize) -> bool,
        pm: &dyn Fn(usize) -> bool,
        action: Q,
        stack: &mut Vec<usize>,
        out: &mut Vec<Word>,
    ) {
        for j in 0..d.n_chords() {
            let ch = &d.chords[j];
            let starts = match stack.last() {
                None => in0(ch.tail.comp),
                Some(&p) => d.composable(p, j) && pm(ch.tail.comp),
            };
            let a = action + ch.action;
            if !starts || !bound.admits(stack.len() + 1, a) {
                continue;
            }
            stack.push(j);
            if in0(ch.tip.comp) {
                out.push(Word(stack.clone()));
            } else if pm(ch.tip.comp) {
                go(d, bound, in0, pm, a, stack, out);
            }
            stack.pop();
        }
    }
    go(d, bound, &in0, &pm, q(0), &mut stack, &mut out);
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    Ok(out)
}

/// `w = vᵏ` with `v` primitive and `k` maximal.
pub fn primitive_decomposition(w: &CyclicWord) -> (CyclicWord, usize) {
    let n = w.0.len();
    for p in 1..=n {
        if n % p == 0 && (0..n).all(|i| w.0[i] == w.0[i % p]) {
            return (CyclicWord(least_rotation(&w.0[..p])), n / p);
        }
    }
    unreachable!("p = n always works")
}

/// Capping path followed after a chord: along the orientation or against it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Eta,
    EtaBar,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Eta => "eta",
            Side::EtaBar => "etabar",
        })
    }
}

/// One side choice per composable pair `(j_k, j_{k+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitString(pub Vec<Side>);

impl OrbitString {
    pub fn eta(n: usize) -> Self {
        OrbitString(vec![Side::Eta; n])
    }
    /// All `2ⁿ` choices.
    pub fn all(n: usize) -> Vec<OrbitString> {
        (0..1usize << n)
            .map(|m| OrbitString((0..n).map(|k| if m >> k & 1 == 1 { Side::EtaBar } else { Side::Eta }).collect()))
            .collect()
    }
}

/// Planar shadow of a push-out, with its linking and winding data.
#[derive(Clone, Debug)]
pub struct PushOutCurve {
    pub pts: Vec<Pt>,
    /// Offset from the link used to build it.
    pub offset: Q,
    /// `lk(γ', Λ_i)` for every component.
    pub lk: Vec<i64>,
    /// Winding number about each face basepoint, in face order.
    pub winding: Vec<i64>,
}

enum Piece {
    /// Short connector at chord `j` (over the tail strand, under the tip strand).
    Connector(usize),
    /// Track parallel to segment `seg` of `comp`, displaced by `off`.
    Track { comp: usize, seg: usize, off: Pt },
}

pub fn push_out(d: &ResolvedDiagram, w: &CyclicWord, s: &OrbitString) -> Result<PushOutCurve> {
    push_out_letters(d, w.letters(), &s.0)
}

/// Push-out of a cyclically composable letter sequence.
pub fn push_out_letters(d: &ResolvedDiagram, letters: &[usize], sides: &[Side]) -> Result<PushOutCurve> {
    if sides.len() != letters.len() {
        return Err(input_err!("orbit string has {} sides for a word of length {}", sides.len(), letters.len()));
    }
    let w = Word(letters.to_vec());
    let mut clear2: Option<Q> = None;
    for f in &d.faces {
        for c in &d.components {
            for i in 0..c.n() {
                let (a, b) = c.seg(i);
                let e = dist2_to_segment(a, b, f.basepoint);
                if clear2.is_none_or(|m| e < m) {
                    clear2 = Some(e);
                }
            }
        }
    }
    let mut delta = qr(crate::diagram_core::G, 16);
    if let Some(c2) = clear2 {
        while q(64) * delta * delta > c2 {
            delta /= q(2);
        }
    }
    for _ in 0..24 {
        match build_push_out(d, letters, sides, delta)? {
            Some(c) => return Ok(c),
            None => delta /= q(2),
        }
    }
    Err(internal_err!("push-out of {w} stays degenerate at every offset tried"))
}

/// `Ok(None)` asks for a smaller offset.
fn build_push_out(d: &ResolvedDiagram, letters: &[usize], sides: &[Side], delta: Q) -> Result<Option<PushOutCurve>> {
    let n = letters.len();
    let tau = delta / q(2);
    // tracks[k]: points and pieces from B_k to A_{k+1}, plus the last travel direction
    struct Track {
        pts: Vec<Pt>,
        pieces: Vec<Piece>,
        last_dir: Pt,
        side: Q,
    }
    let mut tracks = Vec::with_capacity(n);
    for k in 0..n {
        let (j, jn) = (letters[k], letters[(k + 1) % n]);
        let path = capping_path(d, j, jn, sides[k])?;
        let comp = &d.components[path.comp];
        let side = if comp.coefficient == 0 { q(1) } else { q(comp.coefficient as i128) };
        let off = |dv: Pt| Pt::new(-dv.y, dv.x) * (side * delta);
        let mut segs: Vec<usize> = vec![path.from.seg];
        let mut dirs: Vec<Pt> = Vec::new();
        let m = comp.n();
        for &v in &path.vertices {
            segs.push(if path.forward { v } else { (v + m - 1) % m });
        }
        for &sg in &segs {
            let dv = vec_of(comp.dirs[sg]);
            dirs.push(if path.forward { dv } else { dv * q(-1) });
        }
        let start = d.chords[j].point;
        let end = d.chords[jn].point;
        let mut pts = vec![start + off(dirs[0]) + dirs[0] * tau];
        for (i, &v) in path.vertices.iter().enumerate() {
            let p = comp.pts[v];
            let (d1, d2) = (dirs[i], dirs[i + 1]);
            if d1 == d2 {
                pts.push(p + off(d1));
            } else {
                let r = off(d2) - off(d1);
                let b = d2 * q(-1);
                let sol = cross(r, b) / cross(d1, b);
                pts.push(p + off(d1) + d1 * sol);
            }
        }
        let dl = *dirs.last().expect("path has a segment");
        pts.push(end + off(dl) - dl * tau);
        let pieces = segs
            .iter()
            .zip(&dirs)
            .map(|(&sg, &dv)| Piece::Track { comp: path.comp, seg: sg, off: off(dv) })
            .collect();
        tracks.push(Track { pts, pieces, last_dir: dl, side });
    }
    let mut pts: Vec<Pt> = Vec::new();
    let mut pieces: Vec<Piece> = Vec::new();
    for k in 0..n {
        let prev = &tracks[(k + n - 1) % n];
        let j = letters[k];
        let du = prev.last_dir;
        let xprime = d.chords[j].point + Pt::new(-du.y, du.x) * (prev.side * delta / q(2)) - du * (delta / q(3));
        // X' -> B_k is a connector, then the track pieces in order
        pts.push(xprime);
        pieces.push(Piece::Connector(j));
        let t = &tracks[k];
        for (i, p) in t.pts.iter().enumerate() {
            pts.push(*p);
            if i + 1 < t.pts.len() {
                pieces.push(match &t.pieces[i] {
                    Piece::Track { comp, seg, off } => Piece::Track { comp: *comp, seg: *seg, off: *off },
                    Piece::Connector(c) => Piece::Connector(*c),
                });
            }
        }
        // A_{k+1} -> X'_{k+1}
        pieces.push(Piece::Connector(letters[(k + 1) % n]));
    }
    let np = pts.len();
    debug_assert_eq!(pieces.len(), np);
    let mut twice = vec![0i64; d.components.len()];
    for i in 0..np {
        let (p0, p1) = (pts[i], pts[(i + 1) % np]);
        if p0 == p1 {
            continue;
        }
        for c in &d.components {
            for sg in 0..c.n() {
                let (a, b) = c.seg(sg);
                let (t, _) = match meet(p0, p1, a, b) {
                    Meet::None => continue,
                    Meet::Overlap => return Ok(None),
                    Meet::Point(t, u) => {
                        if t.is_zero() || t == q(1) || u.is_zero() || u == q(1) {
                            return Ok(None);
                        }
                        (t, u)
                    }
                };
                let x = p0 + (p1 - p0) * t;
                let above = match &pieces[i] {
                    Piece::Connector(j) => {
                        let ch = &d.chords[*j];
                        if (c.id, sg) == (ch.tail.comp, ch.tail.seg) {
                            true
                        } else if (c.id, sg) == (ch.tip.comp, ch.tip.seg) {
                            false
                        } else {
                            return Ok(None);
                        }
                    }
                    Piece::Track { comp, seg, off } => {
                        if (*comp, *seg) == (c.id, sg) {
                            return Err(internal_err!("push-out track crosses the strand it follows"));
                        }
                        let zt = d.components[*comp].z_on(*seg, x - *off);
                        let zo = c.z_on(sg, x);
                        if zt == zo {
                            return Ok(None);
                        }
                        zt > zo
                    }
                };
                let dc = p1 - p0;
                let dl = vec_of(c.dirs[sg]);
                let cr = if above { cross(dc, dl) } else { cross(dl, dc) };
                twice[c.id] += if cr > q(0) { 1 } else { -1 };
            }
        }
    }
    let mut lk = Vec::new();
    for t in twice {
        if t % 2 != 0 {
            return Err(internal_err!("odd crossing count between a push-out and a component"));
        }
        lk.push(t / 2);
    }
    let mut wind = Vec::new();
    for f in &d.faces {
        match winding(&pts, f.basepoint) {
            Some(v) => wind.push(v),
            None => return Ok(None),
        }
    }
    Ok(Some(PushOutCurve { pts, offset: delta, lk, winding: wind }))
}
