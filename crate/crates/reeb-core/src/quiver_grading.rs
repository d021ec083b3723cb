//! The Λ-quiver, cyclic equivalence, exposed curves, intersection gradings
//! over the face basepoints, and faces that bound rigid planes.
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram_core::geom::winding;
use crate::diagram_core::ResolvedDiagram;
use crate::error::{input_err, internal_err};
use crate::homology::{h1_presentation, solve_integral, H1Presentation};
use crate::rat::{q, Q};
use crate::reeb_words::{canonical_cyclic, least_rotation, push_out, CyclicWord, OrbitString, Word};
use crate::Result;

/// One vertex per component, one edge per chord from tail to tip component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: usize,
    /// `(from, to)` indexed by chord.
    pub edges: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn loops_at(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&j| self.edges[j] == (v, v)).collect()
    }
    /// Adjacency counts restricted to a vertex subset.
    pub fn adjacency(&self, keep: &[usize]) -> Vec<Vec<u64>> {
        let mut a = vec![vec![0u64; keep.len()]; keep.len()];
        for &(f, t) in &self.edges {
            if let (Some(i), Some(k)) = (keep.iter().position(|&x| x == f), keep.iter().position(|&x| x == t)) {
                a[i][k] += 1;
            }
        }
        a
    }
    /// Rank of `H₁` of the quiver with all vertices identified.
    pub fn collapsed_rank(&self) -> usize {
        self.edges.len()
    }
}

pub fn build_quiver(d: &ResolvedDiagram) -> Result<Quiver> {
    if d.n_chords() == 0 {
        return Err(input_err!("diagram has no chords"));
    }
    Ok(Quiver {
        vertices: d.components.len(),
        edges: d.chords.iter().map(|c| (c.tail.comp, c.tip.comp)).collect(),
    })
}

/// Positive words are conjugate iff they are rotations of one another.
pub fn cyclic_equivalence(x: &Word, y: &Word) -> Result<bool> {
    if x.0.is_empty() || y.0.is_empty() {
        return Err(input_err!("cyclic equivalence needs nonempty positive words"));
    }
    Ok(x.0.len() == y.0.len() && least_rotation(&x.0) == least_rotation(&y.0))
}

fn chord_counts(n: usize, ws: &[CyclicWord]) -> Vec<i64> {
    let mut v = vec![0i64; n];
    for w in ws {
        for &j in w.letters() {
            v[j] += 1;
        }
    }
    v
}

/// A curve from `plus` to `minus` must be exposed.
pub fn exposed_required(n_chords: usize, plus: &[CyclicWord], minus: &[CyclicWord]) -> bool {
    (minus.is_empty() && !plus.is_empty()) || chord_counts(n_chords, plus) != chord_counts(n_chords, minus)
}

/// `I_k` over the bounded faces.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IGradingVector(pub Vec<i64>);

impl IGradingVector {
    pub fn zero(k: usize) -> Self {
        IGradingVector(vec![0; k])
    }
    pub fn add(&self, o: &IGradingVector) -> IGradingVector {
        IGradingVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
    pub fn sub(&self, o: &IGradingVector) -> IGradingVector {
        IGradingVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

/// Winding of each component about each basepoint, `[comp][face]`.
pub fn component_windings(d: &ResolvedDiagram) -> Result<Vec<Vec<i64>>> {
    d.components
        .iter()
        .map(|c| {
            d.faces
                .iter()
                .map(|f| winding(&c.pts, f.basepoint).ok_or_else(|| internal_err!("basepoint of R{} lies on the link", f.id)))
                .collect()
        })
        .collect()
}

/// Intersection grading of a collection of orbits (each with an orbit
/// string). The collection must be null-homologous and H₁ finite.
pub fn i_grading(d: &ResolvedDiagram, gamma: &[(CyclicWord, OrbitString)]) -> Result<IGradingVector> {
    let h = h1_presentation(d);
    i_grading_with(d, &h, gamma)
}

pub fn i_grading_with(d: &ResolvedDiagram, h: &H1Presentation, gamma: &[(CyclicWord, OrbitString)]) -> Result<IGradingVector> {
    if !h.is_finite() {
        return Err(input_err!("I-grading needs finite H₁"));
    }
    let k = d.faces.len();
    let mut wind = vec![0i64; k];
    let mut lk = vec![0i64; d.components.len()];
    for (w, s) in gamma {
        let p = push_out(d, w, s)?;
        for i in 0..k {
            wind[i] += p.winding[i];
        }
        for i in 0..lk.len() {
            lk[i] += p.lk[i];
        }
    }
    let b: Vec<i64> = h.generators.iter().map(|&c| -lk[c]).collect();
    let n = solve_integral(h, &b).ok_or_else(|| input_err!("collection is not null-homologous"))?;
    let cw = component_windings(d)?;
    for (slot, &c) in h.generators.iter().enumerate() {
        for i in 0..k {
            wind[i] += n[slot] * cw[c][i];
        }
    }
    Ok(IGradingVector(wind))
}

/// `ΔI` has a negative entry.
pub fn delta_i_obstruction(plus: &IGradingVector, minus: &IGradingVector) -> bool {
    plus.sub(minus).0.iter().any(|&x| x < 0)
}

/// `Σ E_k · max(ΔI_k, 0)`.
pub fn energy_lower_bound(delta: &IGradingVector, areas: &[Q]) -> Q {
    delta.0.iter().zip(areas).map(|(&x, a)| *a * q(x.max(0) as i128)).sum()
}

/// Face with only positive corners and the orbit its boundary follows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BubblingFace {
    pub face: usize,
    pub word: CyclicWord,
}

pub fn bubbling_faces(d: &ResolvedDiagram) -> Result<Vec<BubblingFace>> {
    let mut out = Vec::new();
    for f in &d.faces {
        if f.corners.is_empty() || !f.all_positive() {
            continue;
        }
        let letters: Vec<usize> = f.corners.iter().map(|c| c.chord).collect();
        if letters.iter().any(|&j| d.c_plus(j) != 1 || d.c_minus(j) != 1) {
            continue;
        }
        let w = canonical_cyclic(d, &Word(letters.clone())).or_else(|_| {
            let mut r = letters.clone();
            r.reverse();
            canonical_cyclic(d, &Word(r))
        })?;
        out.push(BubblingFace { face: f.id, word: w });
    }
    Ok(out)
}
