//! First homology of the surgered manifold and classes of orbits in it.
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram_core::ResolvedDiagram;
use crate::error::{input_err, internal_err};
use crate::reeb_words::{CyclicWord, PushOutCurve, Side};
use crate::Result;

/// Smith normal form `U·M·V = D` with `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub diag: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

/// Smith normal form of a square integer matrix. Diagonal entries are
/// nonnegative and each divides the next (zeros last).
pub fn smith_normal_form(m: &[Vec<i64>]) -> Snf {
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let mut u = identity(n);
    let mut v = identity(n);
    fn swap_rows(x: &mut [Vec<i64>], i: usize, j: usize) {
        x.swap(i, j);
    }
    fn swap_cols(x: &mut [Vec<i64>], i: usize, j: usize) {
        for r in x.iter_mut() {
            r.swap(i, j);
        }
    }
    // row_i -= q row_j
    fn row_op(x: &mut [Vec<i64>], i: usize, j: usize, q: i64) {
        for c in 0..x[0].len() {
            x[i][c] -= q * x[j][c];
        }
    }
    fn col_op(x: &mut [Vec<i64>], i: usize, j: usize, q: i64) {
        for r in x.iter_mut() {
            r[i] -= q * r[j];
        }
    }
    for t in 0..n {
        loop {
            // pivot: smallest nonzero |entry| in the lower-right block
            let mut piv = None;
            for i in t..n {
                for j in t..n {
                    if a[i][j] != 0 && piv.is_none_or(|(pi, pj): (usize, usize)| a[i][j].abs() < a[pi][pj].abs()) {
                        piv = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = piv else { break };
            swap_rows(&mut a, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t].div_euclid(a[t][t]);
                row_op(&mut a, i, t, q);
                row_op(&mut u, i, t, q);
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j].div_euclid(a[t][t]);
                col_op(&mut a, j, t, q);
                col_op(&mut v, j, t, q);
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility: fold a non-multiple row into row t
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| a[i][j] % a[t][t] != 0));
            match bad {
                Some(i) => {
                    row_op(&mut a, t, i, -1);
                    row_op(&mut u, t, i, -1);
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for c in 0..n {
                a[t][c] = -a[t][c];
                u[t][c] = -u[t][c];
            }
        }
    }
    Snf { diag: (0..n).map(|i| a[i][i]).collect(), u, v }
}

/// Relations `M_ii = tb_i + c_i`, `M_ij = lk` among surgered components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Presentation {
    /// Components carrying the meridian generators μ_i.
    pub generators: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
    pub snf: Snf,
}

impl H1Presentation {
    pub fn is_finite(&self) -> bool {
        self.snf.diag.iter().all(|&d| d != 0)
    }
    /// Orders of the nontrivial cyclic summands, 0 for ℤ.
    pub fn summands(&self) -> Vec<i64> {
        self.snf.diag.iter().copied().filter(|&d| d != 1).collect()
    }
    pub fn free_rank(&self) -> usize {
        self.snf.diag.iter().filter(|&&d| d == 0).count()
    }
    /// Index of component `c` among the generators.
    pub fn slot(&self, c: usize) -> Option<usize> {
        self.generators.iter().position(|&g| g == c)
    }
}

pub fn h1_presentation(d: &ResolvedDiagram) -> H1Presentation {
    let generators = d.surgered();
    let matrix: Vec<Vec<i64>> = generators
        .iter()
        .map(|&i| {
            generators
                .iter()
                .map(|&j| if i == j { d.components[i].tb + d.coefficient(i) as i64 } else { d.linking[i][j] })
                .collect()
        })
        .collect();
    let snf = smith_normal_form(&matrix);
    H1Presentation { generators, matrix, snf }
}

/// Integer vector over the meridians and its image in coker(M).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitClass {
    pub vector: Vec<i64>,
    /// SNF coordinates, reduced modulo the invariant factors.
    pub reduced: Vec<i64>,
}

impl OrbitClass {
    pub fn is_zero(&self) -> bool {
        self.reduced.iter().all(|&x| x == 0)
    }
}

pub fn reduce(h: &H1Presentation, vector: Vec<i64>) -> OrbitClass {
    let n = vector.len();
    let reduced = (0..n)
        .map(|i| {
            let y: i64 = (0..n).map(|k| h.snf.u[i][k] * vector[k]).sum();
            match h.snf.diag[i] {
                0 => y,
                dd => y.rem_euclid(dd),
            }
        })
        .collect();
    OrbitClass { vector, reduced }
}

/// `cross_j` per chord (`None` when an endpoint is on Λ⁰) and
/// `cross_{j,k}` per composable pair along η, as vectors over the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingMonomials {
    pub chord: Vec<Option<Vec<i64>>>,
    pub pair: Vec<Vec<Option<Vec<i64>>>>,
}

pub fn crossing_monomials(d: &ResolvedDiagram, h: &H1Presentation) -> CrossingMonomials {
    let m = h.generators.len();
    let n = d.n_chords();
    let chord = (0..n)
        .map(|j| {
            let ch = &d.chords[j];
            let (cm, cp) = (d.c_minus(j), d.c_plus(j));
            if cm == 0 || cp == 0 {
                return None;
            }
            let mut v = vec![0i64; m];
            let s = ch.sign as i64;
            v[h.slot(ch.tail.comp)?] += (cm as i64 + s) / 2;
            v[h.slot(ch.tip.comp)?] += (cp as i64 + s) / 2;
            Some(v)
        })
        .collect();
    let pair = (0..n)
        .map(|j| (0..n).map(|k| d.composable(j, k).then(|| pair_monomial(d, h, j, k))).collect())
        .collect();
    CrossingMonomials { chord, pair }
}

/// Signed chord-endpoint passes strictly inside η_{j,k}.
fn pair_monomial(d: &ResolvedDiagram, h: &H1Presentation, j: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0i64; h.generators.len()];
    let from = d.chords[j].tip;
    let to = d.chords[k].tail;
    let comp = &d.components[from.comp];
    let span = comp.forward_distance(from.pos, to.pos);
    for (pos, jj, is_tip) in d.endpoints_on(from.comp) {
        let dist = comp.forward_distance(from.pos, pos);
        if dist == crate::rat::q(0) || dist >= span {
            continue;
        }
        let ch = &d.chords[jj];
        let target = if is_tip { ch.tail.comp } else { ch.tip.comp };
        if let Some(s) = h.slot(target) {
            v[s] += ch.sign as i64;
        }
    }
    v
}

/// `½ Σ (cross_{j_k} + cross_{j_k,j_{k+1}})`, reduced.
pub fn orbit_class_monomial(d: &ResolvedDiagram, h: &H1Presentation, w: &CyclicWord) -> Result<OrbitClass> {
    let cm = crossing_monomials(d, h);
    let l = w.letters();
    let n = l.len();
    let mut twice = vec![0i64; h.generators.len()];
    for k in 0..n {
        let (a, b) = (l[k], l[(k + 1) % n]);
        let cj = cm.chord[a].as_ref().ok_or_else(|| input_err!("r{} touches a coefficient-0 component", a + 1))?;
        let cp = cm.pair[a][b].as_ref().ok_or_else(|| input_err!("r{} and r{} are not composable", a + 1, b + 1))?;
        for i in 0..twice.len() {
            twice[i] += cj[i] + cp[i];
        }
    }
    if twice.iter().any(|x| x % 2 != 0) {
        return Err(internal_err!("half-sum of crossing monomials for {w} is not integral"));
    }
    Ok(reduce(h, twice.into_iter().map(|x| x / 2).collect()))
}

/// `Σ lk(γ', Λ_i) μ_i`, reduced.
pub fn orbit_class_pushout(h: &H1Presentation, p: &PushOutCurve) -> OrbitClass {
    reduce(h, h.generators.iter().map(|&c| p.lk[c]).collect())
}

/// Integer `n` with `M n = b`, if any.
pub fn solve_integral(h: &H1Presentation, b: &[i64]) -> Option<Vec<i64>> {
    let m = b.len();
    let mut y = vec![0i64; m];
    for i in 0..m {
        let ub: i64 = (0..m).map(|k| h.snf.u[i][k] * b[k]).sum();
        match h.snf.diag[i] {
            0 if ub != 0 => return None,
            0 => {}
            dd if ub % dd != 0 => return None,
            dd => y[i] = ub / dd,
        }
    }
    Some((0..m).map(|i| (0..m).map(|k| h.snf.v[i][k] * y[k]).sum()).collect())
}

/// Relative class of a Λ⁰-chord word whose ends lie on one Λ⁰ component:
/// the word is closed up along that component (η) and pushed out.
pub fn chord_word_class(
    d: &ResolvedDiagram,
    h: &H1Presentation,
    w: &crate::reeb_words::Word,
) -> Result<OrbitClass> {
    let l = &w.0;
    let (first, last) = (l[0], l[l.len() - 1]);
    if d.chords[last].tip.comp != d.chords[first].tail.comp {
        return Err(input_err!("chord word ends on a different Λ⁰ component than it starts"));
    }
    let p = crate::reeb_words::push_out_letters(d, l, &vec![Side::Eta; l.len()])?;
    Ok(orbit_class_pushout(h, &p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: Vec<Vec<i64>>) {
        let s = smith_normal_form(&m);
        let n = m.len();
        let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
        };
        let d = mul(&mul(&s.u, &m), &s.v);
        for i in 0..n {
            for j in 0..n {
                assert_eq!(d[i][j], if i == j { s.diag[i] } else { 0 });
            }
        }
    }

    #[test]
    fn snf_small() {
        check(vec![vec![2, 4], vec![6, 8]]);
        check(vec![vec![0, 0], vec![0, 3]]);
        check(vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&[vec![2, 0], vec![0, 3]]).diag, vec![1, 6]);
    }
}
