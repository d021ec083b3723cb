//! One table builder per subcommand.
use reeb_core::chain_report::{differential_candidates, generators};
use reeb_core::diagram_core::{FrontCode, Orientation, ResolvedDiagram};
use reeb_core::dynamics::{cz_mod2, hyperbolic_type, orbit_action, Hyperbolic};
use reeb_core::homology::{chord_word_class, crossing_monomials, h1_presentation, OrbitClass};
use reeb_core::indices::{c1_class, capping_angle, cz_integral, m_xy};
use reeb_core::quiver_grading::{bubbling_faces, build_quiver, i_grading_with};
use reeb_core::rat::fmt_q;
use reeb_core::reeb_words::{canonical_cyclic, cyclic_as_given, enumerate_chord_words, parse_word, Bound, CyclicWord, OrbitString, Side};
use reeb_core::{Error, Q};
use serde_json::{json, Value};

use crate::output::Table;
use crate::CliError;

fn rq(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

fn word(w: &CyclicWord) -> Value {
    Value::String(w.to_string())
}

fn class_cells(c: &OrbitClass) -> [Value; 2] {
    [json!(c.vector), json!(c.reduced)]
}

fn hyp(h: Hyperbolic) -> Value {
    json!(match h {
        Hyperbolic::Positive => "positive",
        Hyperbolic::Negative => "negative",
    })
}

/// Input errors become `None`; internal ones propagate.
fn soft<T>(r: reeb_core::Result<T>) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_internal() => Err(e.into()),
        Err(_) => Ok(None),
    }
}

fn orbit(d: &ResolvedDiagram, s: &str) -> Result<CyclicWord, CliError> {
    Ok(canonical_cyclic(d, &parse_word(s)?)?)
}

pub fn parse(front: &FrontCode) -> Vec<Table> {
    let mut t = Table::new("front", &["normalized", "events", "components", "chords"]);
    t.push(vec![json!(front.to_string()), json!(front.events.len()), json!(front.n_components()), json!(front.n_chords())]);
    let mut c = Table::new("components", &["component", "orientation", "coefficient"]);
    for i in 0..front.n_components() {
        let o = if front.orientation(i) == Orientation::Plus { "+" } else { "-" };
        c.push(vec![json!(i), json!(o), json!(front.coefficient(i))]);
    }
    vec![t, c]
}

pub fn invariants(d: &ResolvedDiagram) -> Vec<Table> {
    let mut comps = Table::new("components", &["component", "coefficient", "tb", "rot", "linking"]);
    for (i, c) in d.components.iter().enumerate() {
        comps.push(vec![json!(i), json!(c.coefficient), json!(c.tb), json!(c.rot), json!(d.linking[i])]);
    }
    let mut chords = Table::new(
        "chords",
        &["chord", "sign", "action", "tail_component", "tip_component", "from_right_cusp", "x", "y"],
    );
    for ch in &d.chords {
        chords.push(vec![
            json!(format!("r{}", ch.id)),
            json!(ch.sign),
            rq(&ch.action),
            json!(ch.tail.comp),
            json!(ch.tip.comp),
            json!(ch.from_right_cusp),
            rq(&ch.point.x),
            rq(&ch.point.y),
        ]);
    }
    let mut faces = Table::new("faces", &["face", "area", "basepoint_x", "basepoint_y", "corners", "all_positive"]);
    for f in &d.faces {
        let corners: Vec<String> = f
            .corners
            .iter()
            .map(|c| format!("r{}{:?}{}", c.chord + 1, c.quadrant, if c.positive { '+' } else { '-' }))
            .collect();
        faces.push(vec![
            json!(f.id),
            rq(&f.area),
            rq(&f.basepoint.x),
            rq(&f.basepoint.y),
            json!(corners),
            json!(f.all_positive()),
        ]);
    }
    vec![comps, chords, faces]
}

pub fn orbits(d: &ResolvedDiagram, bound: &Bound, eps: Option<Q>) -> Result<Vec<Table>, CliError> {
    let mut t = Table::new(
        "orbits",
        &[
            "word", "length", "good", "cz", "degree", "integral_degree", "class", "class_reduced", "i_grading",
            "action", "hyperbolic", "threshold", "epsilon", "embedded_action",
        ],
    );
    for r in generators(d, bound)? {
        let emb = match eps {
            Some(e) => soft(orbit_action(d, &r.word, e))?.map(|a| rq(&a)).unwrap_or(Value::Null),
            None => Value::Null,
        };
        let [cv, cr] = class_cells(&r.class);
        t.push(vec![
            word(&r.word),
            json!(r.word.len()),
            json!(r.good),
            json!(r.cz),
            json!(r.degree),
            json!(r.integral_degree),
            cv,
            cr,
            r.i_grading.map(|g| json!(g.0)).unwrap_or(Value::Null),
            rq(&r.action),
            hyp(r.hyperbolic),
            rq(&r.threshold),
            eps.map(|e| rq(&e)).unwrap_or(Value::Null),
            emb,
        ]);
    }
    Ok(vec![t])
}

pub fn chords(d: &ResolvedDiagram, lambda0: Option<Vec<usize>>, bound: &Bound) -> Result<Vec<Table>, CliError> {
    let lambda0 =
        lambda0.unwrap_or_else(|| (0..d.components.len()).filter(|&c| d.coefficient(c) == 0).collect());
    let h = h1_presentation(d);
    let mut t = Table::new("chord_words", &["word", "length", "action", "start", "end", "m", "class", "class_reduced"]);
    for w in enumerate_chord_words(d, &lambda0, bound)? {
        let (first, last) = (w.0[0], w.0[w.0.len() - 1]);
        let m = soft(m_xy(d, &w))?;
        let [cv, cr] = match soft(chord_word_class(d, &h, &w))? {
            Some(c) => class_cells(&c),
            None => [Value::Null, Value::Null],
        };
        let action: Q = w.0.iter().map(|&j| d.chords[j].action).sum();
        t.push(vec![
            json!(w.to_string()),
            json!(w.0.len()),
            rq(&action),
            json!(d.chords[first].tail.comp),
            json!(d.chords[last].tip.comp),
            json!(m),
            cv,
            cr,
        ]);
    }
    Ok(vec![t])
}

pub fn cz(d: &ResolvedDiagram, words: &[String]) -> Result<Vec<Table>, CliError> {
    let mut rot = Table::new("rotation", &["from", "to", "side", "t", "rot"]);
    for j in 0..d.n_chords() {
        for k in 0..d.n_chords() {
            if !d.composable(j, k) {
                continue;
            }
            for side in [Side::Eta, Side::EtaBar] {
                let a = capping_angle(d, j, k, side)?;
                rot.push(vec![
                    json!(format!("r{}", j + 1)),
                    json!(format!("r{}", k + 1)),
                    json!(side.to_string()),
                    json!(a.t),
                    json!(a.rot),
                ]);
            }
        }
    }
    let mut out = vec![rot];
    if !words.is_empty() {
        let mut t = Table::new("cz", &["word", "cz", "cz_mod2", "hyperbolic", "threshold"]);
        for s in words {
            let w = orbit(d, s)?;
            let (h, th) = hyperbolic_type(d, &w)?;
            t.push(vec![word(&w), json!(cz_integral(d, &w)?), json!(cz_mod2(d, &w)?), hyp(h), rq(&th)]);
        }
        out.push(t);
    }
    Ok(out)
}

pub fn homology(d: &ResolvedDiagram) -> Vec<Table> {
    let h = h1_presentation(d);
    let c1 = c1_class(d, &h);
    let mut p = Table::new(
        "presentation",
        &["generators", "matrix", "diagonal", "summands", "free_rank", "finite", "c1", "c1_reduced"],
    );
    let [cv, cr] = class_cells(&c1);
    p.push(vec![
        json!(h.generators),
        json!(h.matrix),
        json!(h.snf.diag),
        json!(h.summands()),
        json!(h.free_rank()),
        json!(h.is_finite()),
        cv,
        cr,
    ]);
    let m = crossing_monomials(d, &h);
    let mut chord = Table::new("chord_monomials", &["chord", "monomial"]);
    for (j, v) in m.chord.iter().enumerate() {
        chord.push(vec![json!(format!("r{}", j + 1)), json!(v)]);
    }
    let mut pair = Table::new("pair_monomials", &["from", "to", "monomial"]);
    for (j, row) in m.pair.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            if let Some(v) = v {
                pair.push(vec![json!(format!("r{}", j + 1)), json!(format!("r{}", k + 1)), json!(v)]);
            }
        }
    }
    vec![p, chord, pair]
}

pub fn quiver(d: &ResolvedDiagram) -> Result<Vec<Table>, CliError> {
    let qv = build_quiver(d)?;
    let mut v = Table::new("vertices", &["vertex", "coefficient", "loops"]);
    for i in 0..qv.vertices {
        let loops: Vec<String> = qv.loops_at(i).iter().map(|j| format!("r{}", j + 1)).collect();
        v.push(vec![json!(i), json!(d.coefficient(i)), json!(loops)]);
    }
    let mut e = Table::new("edges", &["chord", "from", "to"]);
    for (j, (f, t)) in qv.edges.iter().enumerate() {
        e.push(vec![json!(format!("r{}", j + 1)), json!(f), json!(t)]);
    }
    let mut s = Table::new("summary", &["vertices", "edges", "collapsed_rank"]);
    s.push(vec![json!(qv.vertices), json!(qv.edges.len()), json!(qv.collapsed_rank())]);
    Ok(vec![v, e, s])
}

/// `r1r2` or `r1r2:eta,etabar`; several orbits joined by `+`.
fn collection(d: &ResolvedDiagram, s: &str) -> Result<Vec<(CyclicWord, OrbitString)>, CliError> {
    let mut out = Vec::new();
    for part in s.split('+') {
        let (w, sides) = match part.split_once(':') {
            Some((w, sd)) => (w, Some(sd)),
            None => (part, None),
        };
        let letters = parse_word(w)?;
        let n = letters.0.len();
        let os = match sides {
            None => OrbitString::eta(n),
            Some(sd) => {
                let v = sd
                    .split(',')
                    .map(|x| match x.trim() {
                        "eta" => Ok(Side::Eta),
                        "etabar" => Ok(Side::EtaBar),
                        o => Err(Error::Syntax(format!("side must be eta or etabar, got '{o}'"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if v.len() != n {
                    return Err(Error::Input(format!("{n} letters but {} sides in '{part}'", v.len())).into());
                }
                OrbitString(v)
            }
        };
        out.push((cyclic_as_given(d, &letters)?, os));
    }
    Ok(out)
}

pub fn grading(d: &ResolvedDiagram, args: &[String], bound: &Bound) -> Result<Vec<Table>, CliError> {
    let h = h1_presentation(d);
    let mut faces = Table::new("faces", &["face", "area", "all_positive"]);
    for f in &d.faces {
        faces.push(vec![json!(f.id), rq(&f.area), json!(f.all_positive())]);
    }
    let mut bub = Table::new("bubbling", &["face", "word"]);
    for b in bubbling_faces(d)? {
        bub.push(vec![json!(b.face), word(&b.word)]);
    }
    let mut g = Table::new("gradings", &["collection", "i"]);
    if args.is_empty() {
        for r in generators(d, bound)? {
            if let Some(i) = r.i_grading {
                g.push(vec![word(&r.word), json!(i.0)]);
            }
        }
    } else {
        for a in args {
            let col = collection(d, a)?;
            let i = i_grading_with(d, &h, &col)?;
            let name: Vec<String> = col.iter().map(|(w, _)| w.to_string()).collect();
            g.push(vec![json!(name.join("+")), json!(i.0)]);
        }
    }
    Ok(vec![faces, bub, g])
}

pub fn chain(d: &ResolvedDiagram, w: &str, eps: Q) -> Result<Vec<Table>, CliError> {
    let g = orbit(d, w)?;
    let rep = differential_candidates(d, &g, eps)?;
    let mut src = Table::new("source", &["word", "cz", "degree", "integral_degree", "action", "epsilon"]);
    let s = &rep.source;
    src.push(vec![word(&s.word), json!(s.cz), json!(s.degree), json!(s.integral_degree), rq(&s.action), rq(&rep.epsilon)]);
    let mut c = Table::new("candidates", &["monomial", "degree", "action", "delta_i", "bubbling", "ambiguous"]);
    for sv in &rep.survivors {
        let mono = if sv.monomial.is_empty() {
            "1".to_string()
        } else {
            sv.monomial.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("")
        };
        let bub: Vec<Value> = sv.bubbling.iter().map(|b| json!({"face": b.face, "count_abs": b.count_abs})).collect();
        c.push(vec![
            json!(mono),
            json!(sv.degree),
            rq(&sv.action),
            sv.delta_i.as_ref().map(|x| json!(x.0)).unwrap_or(Value::Null),
            json!(bub),
            json!(sv.ambiguous),
        ]);
    }
    let mut f = Table::new("filters", &["enumerated", "after_degree_class_action", "removed_by_delta_i"]);
    f.push(vec![
        json!(rep.filters.enumerated),
        json!(rep.filters.after_degree_class_action),
        json!(rep.filters.removed_by_delta_i),
    ]);
    let mut wn = Table::new("warnings", &["message"]);
    for m in &rep.warnings {
        wn.push(vec![json!(m)]);
    }
    Ok(vec![src, c, f, wn])
}
