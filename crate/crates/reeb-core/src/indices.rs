//! Rotation angles of capping paths, Conley-Zehnder and Maslov indices,
//! index formulas and the first Chern class.
use alloc::vec::Vec;

use crate::diagram_core::geom::turn;
use crate::diagram_core::{Endpoint, ResolvedDiagram};
use crate::error::input_err;
use crate::error::internal_err;
use crate::homology::{reduce, H1Presentation, OrbitClass};
use crate::reeb_words::{CyclicWord, Side, Word};
use crate::rat::Q;
use crate::Result;

/// Arc of a component from the tip of one chord to the tail of the next.
#[derive(Clone, Debug)]
pub struct CappingPath {
    pub comp: usize,
    pub from: Endpoint,
    pub to: Endpoint,
    /// Along the orientation (η) or against it (η̄).
    pub forward: bool,
    /// Polyline vertices passed, in travel order.
    pub vertices: Vec<usize>,
    /// L∞ length.
    pub length: Q,
}

pub fn capping_path(d: &ResolvedDiagram, j1: usize, j2: usize, side: Side) -> Result<CappingPath> {
    if j1 >= d.n_chords() || j2 >= d.n_chords() {
        return Err(input_err!("no such chord"));
    }
    if !d.composable(j1, j2) {
        return Err(input_err!("r{} and r{} are not composable", j1 + 1, j2 + 1));
    }
    let from = d.chords[j1].tip;
    let to = d.chords[j2].tail;
    let comp = &d.components[from.comp];
    let forward = side == Side::Eta;
    let vertices = comp.vertices_between(from.seg, from.t, to.seg, to.t, forward);
    let length = if forward {
        comp.forward_distance(from.pos, to.pos)
    } else {
        comp.forward_distance(to.pos, from.pos)
    };
    Ok(CappingPath { comp: from.comp, from, to, forward, vertices, length })
}

/// θ = t·π/2 with `t` odd; `rot = ⌊t/2⌋`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CappingAngle {
    pub pair: (usize, usize),
    pub side: Side,
    pub t: i64,
    pub rot: i64,
}

/// Turning of the oriented tangent along the forward arc, in units of π/4.
fn forward_turning(d: &ResolvedDiagram, from: &Endpoint, to: &Endpoint) -> i64 {
    let c = &d.components[from.comp];
    let n = c.n();
    c.vertices_between(from.seg, from.t, to.seg, to.t, true)
        .iter()
        .map(|&v| turn(c.dirs[(v + n - 1) % n], c.dirs[v]).expect("checked at resolution") as i64)
        .sum()
}

pub fn capping_angle(d: &ResolvedDiagram, j1: usize, j2: usize, side: Side) -> Result<CappingAngle> {
    let p = capping_path(d, j1, j2, side)?;
    let eighths = match side {
        Side::Eta => forward_turning(d, &p.from, &p.to),
        Side::EtaBar => -forward_turning(d, &p.to, &p.from),
    };
    if eighths.rem_euclid(4) != 2 {
        return Err(internal_err!("capping angle r{}->r{} is {eighths}·π/4, not an odd multiple of π/2", j1 + 1, j2 + 1));
    }
    let t = eighths / 2;
    Ok(CappingAngle { pair: (j1, j2), side, t, rot: t.div_euclid(2) })
}

/// `rot_{j,k}` for side η, `None` where not composable.
pub fn rotation_table(d: &ResolvedDiagram) -> Result<Vec<Vec<Option<i64>>>> {
    let n = d.n_chords();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            row.push(if d.composable(j, k) { Some(capping_angle(d, j, k, Side::Eta)?.rot) } else { None });
        }
        out.push(row);
    }
    Ok(out)
}

fn delta1(c: i8) -> i64 {
    (c == 1) as i64
}

/// `Σ (rot_{j_k,j_{k+1}} + δ_{1,c⁺_{j_k}})` with η capping data.
pub fn cz_integral(d: &ResolvedDiagram, w: &CyclicWord) -> Result<i64> {
    let l = w.letters();
    let n = l.len();
    let mut s = 0;
    for k in 0..n {
        let (a, b) = (l[k], l[(k + 1) % n]);
        if d.c_plus(a) == 0 {
            return Err(input_err!("r{} ends on a component with coefficient 0", a + 1));
        }
        s += capping_angle(d, a, b, Side::Eta)?.rot + delta1(d.c_plus(a));
    }
    Ok(s)
}

/// `m(κ) = Σ_{l<n} (rot_{k_l,k_{l+1}} + δ_{1,c⁺_{k_l}})` for a Λ⁰-chord word.
pub fn m_xy(d: &ResolvedDiagram, w: &Word) -> Result<i64> {
    let mut s = 0;
    for p in w.0.windows(2) {
        s += capping_angle(d, p[0], p[1], Side::Eta)?.rot + delta1(d.c_plus(p[0]));
    }
    Ok(s)
}

/// One piece `κ_k ∗ ζ_k` of a broken closed string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcsPiece {
    pub word: Word,
    /// Asymptotic indicator, ±1.
    pub a: i8,
    /// θ(ζ_k) in half-π units.
    pub theta: i64,
    /// Component carrying the arc ζ_k, if it should be checked against the word.
    pub arc_comp: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrokenClosedString(pub Vec<BcsPiece>);

impl BrokenClosedString {
    /// Consecutive pieces must meet on a common component.
    fn check(&self, d: &ResolvedDiagram) -> Result<()> {
        let n = self.0.len();
        if n == 0 {
            return Err(input_err!("empty broken closed string"));
        }
        for p in &self.0 {
            if !matches!(p.a, 1 | -1) {
                return Err(input_err!("asymptotic indicator must be ±1"));
            }
            if p.word.0.iter().any(|&j| j >= d.n_chords()) {
                return Err(input_err!("no such chord"));
            }
        }
        for k in 0..n {
            let (p, nx) = (&self.0[k], &self.0[(k + 1) % n]);
            let (Some(&last), Some(&first)) = (p.word.0.last(), nx.word.0.first()) else { continue };
            let end = if p.a == 1 { d.chords[last].tip.comp } else { d.chords[p.word.0[0]].tail.comp };
            let start = if nx.a == 1 { d.chords[first].tail.comp } else { d.chords[*nx.word.0.last().unwrap()].tip.comp };
            if end != start || p.arc_comp.is_some_and(|c| c != end) {
                return Err(input_err!("broken closed string does not close up at piece {}", k + 1));
            }
        }
        Ok(())
    }
}

/// `Σ (θ(ζ_k)/π − ½ + a_k m(κ_k))`.
pub fn maslov_bcs(d: &ResolvedDiagram, b: &BrokenClosedString) -> Result<i64> {
    b.check(d)?;
    // work in halves
    let mut twice = 0i64;
    for p in &b.0 {
        let m = if p.word.0.is_empty() { 0 } else { m_xy(d, &p.word)? };
        twice += p.theta - 1 + 2 * p.a as i64 * m;
    }
    if twice % 2 != 0 {
        return Err(input_err!("Maslov sum {twice}/2 is not an integer"));
    }
    Ok(twice / 2)
}

/// `2 Σ c_i rot(Λ_i) (U·T_i)` over surgered components.
fn chern_term(d: &ResolvedDiagram, pushoff: &[i64]) -> Result<i64> {
    if pushoff.len() != d.components.len() {
        return Err(input_err!("need one push-off intersection number per component"));
    }
    Ok(2 * d
        .components
        .iter()
        .zip(pushoff)
        .map(|(c, &n)| c.coefficient as i64 * c.rot * n)
        .sum::<i64>())
}

fn cz_sum(d: &ResolvedDiagram, ws: &[CyclicWord]) -> Result<i64> {
    ws.iter().map(|w| cz_integral(d, w)).sum()
}

/// `CZ(γ⁺) − CZ(γ⁻) − χ(Σ') − 2Σ c_i rot_i (U·T_i)`.
pub fn index_closed(
    d: &ResolvedDiagram,
    plus: &[CyclicWord],
    minus: &[CyclicWord],
    chi: i64,
    pushoff: &[i64],
) -> Result<i64> {
    Ok(cz_sum(d, plus)? - cz_sum(d, minus)? - chi - chern_term(d, pushoff)?)
}

/// `Maslov + m − 1 − 2Σ c_i rot_i (U·T_i)`.
pub fn index_disk(d: &ResolvedDiagram, b: &BrokenClosedString, m: i64, pushoff: &[i64]) -> Result<i64> {
    Ok(maslov_bcs(d, b)? + m - 1 - chern_term(d, pushoff)?)
}

/// Curves with interior and boundary punctures; `chi` is χ of the compact
/// domain before removing punctures.
#[allow(clippy::too_many_arguments)]
pub fn index_general(
    d: &ResolvedDiagram,
    plus: &[CyclicWord],
    minus: &[CyclicWord],
    strings: &[BrokenClosedString],
    chi: i64,
    interior_punctures: i64,
    boundary_punctures: i64,
    pushoff: &[i64],
) -> Result<i64> {
    let mut s = cz_sum(d, plus)? - cz_sum(d, minus)?;
    for b in strings {
        s += maslov_bcs(d, b)?;
    }
    Ok(s - chi + interior_punctures + boundary_punctures - chern_term(d, pushoff)?)
}

/// PD(c₁) = Σ rot(Λ_i) μ_i over the surgered components.
pub fn c1_class(d: &ResolvedDiagram, h: &H1Presentation) -> OrbitClass {
    let v: Vec<i64> = h.generators.iter().map(|&c| d.components[c].rot).collect();
    reduce(h, v)
}

/// CZ after changing the framing by `n` meridian twists, for a `k`-fold cover.
pub fn meridian_twist(cz: i64, n: i64, k: i64) -> i64 {
    cz - 2 * n * k
}

/// The degree `CZ − 1` is ℤ-valued when c₁ vanishes and the class is zero
/// or H₁ is finite.
pub fn grading_is_integral(c1: &OrbitClass, class: &OrbitClass, h: &H1Presentation) -> bool {
    c1.is_zero() && (class.is_zero() || h.is_finite())
}
