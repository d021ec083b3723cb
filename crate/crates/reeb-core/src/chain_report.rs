//! Graded generator tables and filtered differential candidates.
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram_core::ResolvedDiagram;
use crate::dynamics::{hyperbolic_type, is_bad, Hyperbolic};
use crate::error::input_err;
use crate::homology::{h1_presentation, orbit_class_monomial, reduce, solve_integral, H1Presentation, OrbitClass};
use crate::indices::{c1_class, cz_integral, grading_is_integral};
use crate::quiver_grading::{bubbling_faces, component_windings, delta_i_obstruction, IGradingVector};
use crate::rat::{q, Q};
use crate::reeb_words::{enumerate_orbit_words, push_out, Bound, CyclicWord, OrbitString};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRecord {
    pub word: CyclicWord,
    pub good: bool,
    pub cz: i64,
    /// `CZ − 1`.
    pub degree: i64,
    pub class: OrbitClass,
    /// Only for null-homologous orbits when H₁ is finite.
    pub i_grading: Option<IGradingVector>,
    pub action: Q,
    pub hyperbolic: Hyperbolic,
    pub threshold: Q,
    /// `CZ − 1` is a genuine ℤ-grading for this orbit.
    pub integral_degree: bool,
}

/// Winding and linking data of the η push-out of one word.
#[derive(Clone, Debug)]
struct PushData {
    wind: Vec<i64>,
    lk: Vec<i64>,
}

fn push_data(d: &ResolvedDiagram, w: &CyclicWord) -> Result<PushData> {
    let p = push_out(d, w, &OrbitString::eta(w.len()))?;
    Ok(PushData { wind: p.winding, lk: p.lk })
}

/// `I` of a collection from summed push-out data; `None` if not null-homologous.
fn grading_from(d: &ResolvedDiagram, h: &H1Presentation, cw: &[Vec<i64>], parts: &[&PushData]) -> Option<IGradingVector> {
    let k = d.faces.len();
    let mut wind = vec![0i64; k];
    let mut lk = vec![0i64; d.components.len()];
    for p in parts {
        for i in 0..k {
            wind[i] += p.wind[i];
        }
        for i in 0..lk.len() {
            lk[i] += p.lk[i];
        }
    }
    let b: Vec<i64> = h.generators.iter().map(|&c| -lk[c]).collect();
    let n = solve_integral(h, &b)?;
    for (slot, &c) in h.generators.iter().enumerate() {
        for i in 0..k {
            wind[i] += n[slot] * cw[c][i];
        }
    }
    Some(IGradingVector(wind))
}

struct Ctx {
    h: H1Presentation,
    c1: OrbitClass,
    cw: Vec<Vec<i64>>,
}

fn ctx(d: &ResolvedDiagram) -> Result<Ctx> {
    let h = h1_presentation(d);
    let c1 = c1_class(d, &h);
    let cw = component_windings(d)?;
    Ok(Ctx { h, c1, cw })
}

fn record(d: &ResolvedDiagram, c: &Ctx, w: &CyclicWord, with_i: bool) -> Result<(GeneratorRecord, Option<PushData>)> {
    let cz = cz_integral(d, w)?;
    let class = orbit_class_monomial(d, &c.h, w)?;
    let (hyperbolic, threshold) = hyperbolic_type(d, w)?;
    let wants_i = with_i && c.h.is_finite() && class.is_zero();
    let pd = if wants_i { Some(push_data(d, w)?) } else { None };
    let i_grading = pd.as_ref().and_then(|p| grading_from(d, &c.h, &c.cw, &[p]));
    let r = GeneratorRecord {
        word: w.clone(),
        good: !is_bad(d, w)?,
        cz,
        degree: cz - 1,
        integral_degree: grading_is_integral(&c.c1, &class, &c.h),
        class,
        i_grading,
        action: w.action(d),
        hyperbolic,
        threshold,
    };
    Ok((r, pd))
}

/// Every orbit within the bound, good and bad, in enumeration order.
pub fn generators(d: &ResolvedDiagram, bound: &Bound) -> Result<Vec<GeneratorRecord>> {
    let c = ctx(d)?;
    enumerate_orbit_words(d, bound)?.iter().map(|w| Ok(record(d, &c, w, true)?.0)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bubbling {
    pub face: usize,
    /// Algebraic count of the plane family, up to an undetermined sign.
    pub count_abs: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    /// Empty for the constant term 1.
    pub monomial: Vec<CyclicWord>,
    pub degree: i64,
    pub action: Q,
    pub delta_i: Option<IGradingVector>,
    pub bubbling: Vec<Bubbling>,
    /// Two or more faces bound the same orbit, so their signs may cancel.
    pub ambiguous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FilterCounts {
    pub enumerated: usize,
    pub after_degree_class_action: usize,
    pub removed_by_delta_i: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateReport {
    pub source: GeneratorRecord,
    pub epsilon: Q,
    pub survivors: Vec<Candidate>,
    pub filters: FilterCounts,
    pub warnings: Vec<String>,
}

/// Upper limit on monomials visited by one search.
pub const SEARCH_LIMIT: usize = 2_000_000;

struct Search<'a> {
    d: &'a ResolvedDiagram,
    c: &'a Ctx,
    pool: Vec<GeneratorRecord>,
    push: Vec<Option<PushData>>,
    src: &'a GeneratorRecord,
    src_push: Option<PushData>,
    eps: Q,
    target: i64,
    mod2: bool,
    /// All pool degrees are ≥ 0, so partial degrees only grow.
    monotone: bool,
    use_i: bool,
    lmax: usize,
    filters: FilterCounts,
    survivors: Vec<Candidate>,
}

impl Search<'_> {
    fn slack(&self, wl: usize) -> Q {
        self.src.action + q(3) * self.eps * q((self.src.word.len() + wl) as i128)
    }

    fn push_of(&mut self, i: usize) -> Result<&PushData> {
        if self.push[i].is_none() {
            self.push[i] = Some(push_data(self.d, &self.pool[i].word)?);
        }
        Ok(self.push[i].as_ref().expect("filled above"))
    }

    fn visit(&mut self, chosen: &[usize], deg: i64, wl: usize, action: Q) -> Result<()> {
        self.filters.enumerated += 1;
        if self.filters.enumerated > SEARCH_LIMIT {
            return Err(input_err!("candidate search exceeds {SEARCH_LIMIT} monomials; lower ε or the source action"));
        }
        let deg_ok = if self.mod2 { (deg - self.target).rem_euclid(2) == 0 } else { deg == self.target };
        if !deg_ok || action >= self.slack(wl) {
            return Ok(());
        }
        let mut v = vec![0i64; self.c.h.generators.len()];
        for &i in chosen {
            for (a, b) in v.iter_mut().zip(&self.pool[i].class.vector) {
                *a += b;
            }
        }
        if reduce(&self.c.h, v).reduced != self.src.class.reduced {
            return Ok(());
        }
        self.filters.after_degree_class_action += 1;
        let mut delta_i = None;
        if self.use_i {
            for &i in chosen {
                self.push_of(i)?;
            }
            let parts: Vec<&PushData> = chosen.iter().map(|&i| self.push[i].as_ref().expect("filled")).collect();
            let sp = self.src_push.as_ref().expect("computed for class-zero sources");
            let ip = grading_from(self.d, &self.c.h, &self.c.cw, &[sp]);
            let im = grading_from(self.d, &self.c.h, &self.c.cw, &parts);
            if let (Some(ip), Some(im)) = (ip, im) {
                if delta_i_obstruction(&ip, &im) {
                    self.filters.removed_by_delta_i += 1;
                    return Ok(());
                }
                delta_i = Some(ip.sub(&im));
            }
        }
        self.survivors.push(Candidate {
            monomial: chosen.iter().map(|&i| self.pool[i].word.clone()).collect(),
            degree: deg,
            action,
            delta_i,
            bubbling: Vec::new(),
            ambiguous: false,
        });
        Ok(())
    }

    /// Multisets in nondecreasing pool order; odd-degree factors at most once.
    fn run(&mut self, start: usize, chosen: &mut Vec<usize>, deg: i64, wl: usize, action: Q) -> Result<()> {
        self.visit(chosen, deg, wl, action)?;
        for i in start..self.pool.len() {
            let (len, a, dg) = (self.pool[i].word.len(), self.pool[i].action, self.pool[i].degree);
            let (nwl, na, nd) = (wl + len, action + a, deg + dg);
            if nwl > self.lmax || na >= self.slack(nwl) {
                continue;
            }
            if self.monotone && !self.mod2 && nd > self.target {
                continue;
            }
            chosen.push(i);
            let next = if dg.rem_euclid(2) == 1 { i + 1 } else { i };
            self.run(next, chosen, nd, nwl, na)?;
            chosen.pop();
        }
        Ok(())
    }
}

/// Monomials `γ⁻` that may appear in `∂(g)` after the degree, homology,
/// action and intersection-grading filters.
pub fn differential_candidates(d: &ResolvedDiagram, g: &CyclicWord, eps: Q) -> Result<CandidateReport> {
    let c = ctx(d)?;
    let (src, src_push) = record(d, &c, g, true)?;
    if !src.good {
        return Err(input_err!("{g} is a bad orbit and not a generator"));
    }
    let min_a = d.chords.iter().map(|ch| ch.action).min().ok_or_else(|| input_err!("no chords"))?;
    if eps <= q(0) || q(3) * eps >= min_a {
        return Err(input_err!("ε must be positive and below a third of the shortest chord action"));
    }
    let wl_g = q(g.len() as i128);
    // minA·L ≤ A(γ⁻) < A(g) + 3ε(wl(g) + L)
    let lmax_q = (src.action + q(3) * eps * wl_g) / (min_a - q(3) * eps);
    let lmax = crate::rat::floor(&lmax_q).max(0) as usize;
    let mut warnings = Vec::new();
    let mod2 = !src.integral_degree;
    if mod2 {
        warnings.push(String::from("degree is not ℤ-valued here; filtering by degree mod 2"));
    }
    let words = if lmax == 0 {
        Vec::new()
    } else {
        enumerate_orbit_words(d, &Bound { max_len: Some(lmax), max_action: Some(src.action + q(3) * eps * (wl_g + q(lmax as i128))) })?
    };
    let mut pool = Vec::new();
    for w in &words {
        let r = record(d, &c, w, false)?.0;
        if r.good {
            pool.push(r);
        }
    }
    let target = src.degree - 1;
    let monotone = pool.iter().all(|r| r.degree >= 0);
    if monotone && !mod2 {
        pool.retain(|r| r.degree <= target);
    }
    let use_i = c.h.is_finite() && src.class.is_zero();
    let n = pool.len();
    let mut s = Search {
        d,
        c: &c,
        pool,
        push: vec![None; n],
        src: &src,
        src_push,
        eps,
        target,
        mod2,
        monotone,
        use_i,
        lmax,
        filters: FilterCounts::default(),
        survivors: Vec::new(),
    };
    s.run(0, &mut Vec::new(), 0, 0, q(0))?;
    let (mut survivors, filters) = (s.survivors, s.filters);
    let faces = bubbling_faces(d)?;
    for sv in survivors.iter_mut().filter(|s| s.monomial.is_empty()) {
        sv.bubbling = faces
            .iter()
            .filter(|b| &b.word == g)
            .map(|b| Bubbling { face: b.face, count_abs: 1 })
            .collect();
        sv.ambiguous = sv.bubbling.len() >= 2;
    }
    Ok(CandidateReport { source: src, epsilon: eps, survivors, filters, warnings })
}
