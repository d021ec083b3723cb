//! Linearized return maps, hyperbolicity, orbit embeddings and actions.
//!
//! Each pass through chord `r_{j_k}` followed by the handle over its tip
//! component is the affine map
//! `u ↦ s_k·[[0, −1], [1, −c u]]·u + s_k·(0, ½ − d_k)`, `s_k = (−1)^{rot}`,
//! where `u = 1/ε` and `d_k` is the normalized length of the capping arc.
use alloc::vec::Vec;

use crate::diagram_core::ResolvedDiagram;
use crate::error::{input_err, internal_err};
use crate::indices::capping_angle;
use crate::poly::{Poly, PolyMat};
use crate::rat::{q, qr, Q};
use crate::reeb_words::{primitive_decomposition, CyclicWord, Side};
use crate::Result;
use num_traits::Signed;

/// `σ·matrix` is the return map; entries are polynomials in `u = 1/ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnMapPoly {
    pub sign: i8,
    pub matrix: PolyMat,
}

impl ReturnMapPoly {
    pub fn trace(&self) -> Poly {
        self.matrix.trace().scale(self.sign as i128)
    }
    pub fn det(&self) -> Poly {
        self.matrix.det()
    }
    pub fn eval(&self, u: &Q) -> [[Q; 2]; 2] {
        let m = self.matrix.eval(u);
        let s = q(self.sign as i128);
        [[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hyperbolic {
    Positive,
    Negative,
}

struct Step {
    rot: i64,
    c: i8,
    d: Q,
}

fn steps(d: &ResolvedDiagram, w: &CyclicWord) -> Result<Vec<Step>> {
    let l = w.letters();
    let n = l.len();
    if n == 0 {
        return Err(input_err!("empty word"));
    }
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let (a, b) = (l[k], l[(k + 1) % n]);
        let c = d.c_plus(a);
        if c == 0 || d.c_minus(a) == 0 {
            return Err(input_err!("r{} touches a component with coefficient 0", a + 1));
        }
        let rot = capping_angle(d, a, b, Side::Eta)?.rot;
        let path = crate::indices::capping_path(d, a, b, Side::Eta)?;
        let len = d.components[path.comp].length;
        out.push(Step { rot, c, d: path.length / len });
    }
    Ok(out)
}

pub fn return_map(d: &ResolvedDiagram, w: &CyclicWord) -> Result<ReturnMapPoly> {
    let mut m = PolyMat::identity();
    let mut rot = 0;
    for s in steps(d, w)? {
        rot += s.rot;
        let step = PolyMat([
            [Poly::zero(), Poly::constant(-1)],
            [Poly::constant(1), Poly::linear(-(s.c as i128))],
        ]);
        m = step.mul(&m);
    }
    Ok(ReturnMapPoly { sign: if rot.rem_euclid(2) == 0 { 1 } else { -1 }, matrix: m })
}

/// `Σ (rot + δ_{1,c⁺}) mod 2`.
pub fn cz_mod2(d: &ResolvedDiagram, w: &CyclicWord) -> Result<u8> {
    let s: i64 = steps(d, w)?.iter().map(|s| s.rot + (s.c == 1) as i64).sum();
    Ok(s.rem_euclid(2) as u8)
}

/// Type from the sign of the top trace coefficient, and a threshold below
/// which `|tr| > 2`.
pub fn hyperbolic_type(d: &ResolvedDiagram, w: &CyclicWord) -> Result<(Hyperbolic, Q)> {
    let r = return_map(d, w)?;
    let tr = r.trace();
    let n = w.len();
    if tr.degree() != Some(n) || tr.leading().abs() != 1 {
        return Err(internal_err!("trace of the return map of {w} has leading term {}u^{:?}", tr.leading(), tr.degree()));
    }
    let ty = if tr.leading() > 0 { Hyperbolic::Positive } else { Hyperbolic::Negative };
    let parity = cz_mod2(d, w)?;
    if (parity == 0) != (ty == Hyperbolic::Positive) {
        return Err(internal_err!("hyperbolic type of {w} disagrees with its mod 2 index"));
    }
    let rest: i128 = (0..n).map(|k| tr.coeff(k).abs()).sum();
    let eps = core::cmp::min(qr(1, 2), qr(1, 2 + rest));
    Ok((ty, eps))
}

/// Even cover of a negative hyperbolic orbit.
pub fn is_bad(d: &ResolvedDiagram, w: &CyclicWord) -> Result<bool> {
    let (p, k) = primitive_decomposition(w);
    if k % 2 == 1 {
        return Ok(false);
    }
    Ok(hyperbolic_type(d, &p)?.0 == Hyperbolic::Negative)
}

/// Exit points `(P_k, Q_k)` of an orbit, one per letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingSolution {
    pub epsilon: Q,
    pub points: Vec<(Q, Q)>,
    pub action: Q,
}

/// Handle action correction in the linear zone of the twist.
pub fn h_eps(eps: Q, p: Q) -> Q {
    -eps / q(8) + p * p / (q(2) * eps)
}

type Affine = ([[Q; 2]; 2], [Q; 2]);

fn step_maps(d: &ResolvedDiagram, w: &CyclicWord, eps: Q) -> Result<Vec<Affine>> {
    let u = q(1) / eps;
    Ok(steps(d, w)?
        .into_iter()
        .map(|s| {
            let sg = if s.rot.rem_euclid(2) == 0 { q(1) } else { q(-1) };
            let c = q(s.c as i128);
            ([[q(0), -sg], [sg, -sg * c * u]], [q(0), sg * (qr(1, 2) - s.d)])
        })
        .collect())
}

fn apply(m: &Affine, v: (Q, Q)) -> (Q, Q) {
    let (a, b) = m;
    (a[0][0] * v.0 + a[0][1] * v.1 + b[0], a[1][0] * v.0 + a[1][1] * v.1 + b[1])
}

/// Fixed point of the composed affine map. Rejects points outside the
/// linear twist zone `|P| ≤ ε/2`.
pub fn embed_orbit(d: &ResolvedDiagram, w: &CyclicWord, eps: Q) -> Result<EmbeddingSolution> {
    if eps <= q(0) || eps >= q(1) {
        return Err(input_err!("ε must lie in (0, 1)"));
    }
    let maps = step_maps(d, w, eps)?;
    // compose: A u + b
    let mut a = [[q(1), q(0)], [q(0), q(1)]];
    let mut b = [q(0), q(0)];
    for (m, c) in &maps {
        let na = [
            [m[0][0] * a[0][0] + m[0][1] * a[1][0], m[0][0] * a[0][1] + m[0][1] * a[1][1]],
            [m[1][0] * a[0][0] + m[1][1] * a[1][0], m[1][0] * a[0][1] + m[1][1] * a[1][1]],
        ];
        let nb = [m[0][0] * b[0] + m[0][1] * b[1] + c[0], m[1][0] * b[0] + m[1][1] * b[1] + c[1]];
        a = na;
        b = nb;
    }
    let (i00, i01, i10, i11) = (q(1) - a[0][0], -a[0][1], -a[1][0], q(1) - a[1][1]);
    let det = i00 * i11 - i01 * i10;
    if det == q(0) {
        return Err(internal_err!("I − Ret is singular for {w} at ε = {}", crate::rat::fmt_q(&eps)));
    }
    let p1 = (i11 * b[0] - i01 * b[1]) / det;
    let q1 = (i00 * b[1] - i10 * b[0]) / det;
    let mut points = Vec::with_capacity(maps.len());
    let mut v = (p1, q1);
    for m in &maps {
        points.push(v);
        v = apply(m, v);
    }
    if v != (p1, q1) {
        return Err(internal_err!("embedding of {w} is not a fixed point"));
    }
    let lim = eps / q(2);
    if let Some((p, _)) = points.iter().find(|(p, _)| p.abs() > lim) {
        return Err(input_err!(
            "ε = {} too large for {w}: exit point P = {} leaves the linear twist zone",
            crate::rat::fmt_q(&eps),
            crate::rat::fmt_q(p)
        ));
    }
    let action = action_of(d, w, eps, &points);
    Ok(EmbeddingSolution { epsilon: eps, points, action })
}

fn action_of(d: &ResolvedDiagram, w: &CyclicWord, eps: Q, pts: &[(Q, Q)]) -> Q {
    let l = w.letters();
    let n = l.len();
    let mut t = q(0);
    for k in 0..n {
        let (p, qq) = pts[k];
        t += d.chords[l[k]].action - q(2) * eps - p * qq;
        // handle over the tip of r_{j_k}, exited at P_{k+1}
        let pn = pts[(k + 1) % n].0;
        t += q(2) * eps + q(d.c_plus(l[k]) as i128) * h_eps(eps, pn);
    }
    t
}

pub fn orbit_action(d: &ResolvedDiagram, w: &CyclicWord, eps: Q) -> Result<Q> {
    Ok(embed_orbit(d, w, eps)?.action)
}

/// Per-letter affine maps `(A_k, b_k)` at a given ε.
pub fn affine_steps(d: &ResolvedDiagram, w: &CyclicWord, eps: Q) -> Result<Vec<([[Q; 2]; 2], [Q; 2])>> {
    step_maps(d, w, eps)
}
