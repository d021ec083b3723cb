//! One line per acceptance criterion. Expected tables are constants; the
//! property rows use oracles written here.
mod common;

use std::collections::BTreeSet;

use common::{diagram, trefoil, w, HOPF, STABILIZED, UNKNOT};
use reeb_core::chain_report::{differential_candidates, generators};
use reeb_core::diagram_core::ResolvedDiagram;
use reeb_core::dynamics::{affine_steps, cz_mod2, embed_orbit, orbit_action, return_map};
use reeb_core::homology::{
    crossing_monomials, h1_presentation, orbit_class_monomial, orbit_class_pushout, smith_normal_form,
};
use reeb_core::indices::{capping_angle, capping_path, cz_integral};
use reeb_core::quiver_grading::{bubbling_faces, build_quiver, i_grading_with};
use reeb_core::rat::{q, qr};
use reeb_core::reeb_words::{enumerate_orbit_words, push_out, Bound, CyclicWord, OrbitString, Side};
use reeb_core::Q;

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

const ROT: [[i64; 5]; 5] = [[0, 0, 0, 0, 1], [0, 0, 0, 0, 1], [0, 0, 0, 0, 1], [1, 1, 1, 1, 2], [0, 0, 0, 0, 1]];

fn c1() -> Check {
    let d = trefoil(1);
    for j in 0..5 {
        for k in 0..5 {
            let r = capping_angle(&d, j, k, Side::Eta).map_err(|e| e.to_string())?.rot;
            ensure(r == ROT[j][k], || format!("rot_{{{},{}}} = {r}, expected {}", j + 1, k + 1, ROT[j][k]))?;
        }
    }
    Ok(())
}

fn c2() -> Check {
    // sign, cross_j (c = 1), cross_j (c = -1), cross_{j,1..5}
    const T: [(i8, i64, i64, [i64; 5]); 5] = [
        (1, 2, 0, [0, 0, 2, 3, 1]),
        (1, 2, 0, [0, 0, 0, 1, 1]),
        (1, 2, 0, [-2, 0, 0, 1, -1]),
        (-1, 0, -2, [1, 1, 3, 4, 2]),
        (-1, 0, -2, [-1, 1, 1, 2, 0]),
    ];
    let (dp, dm) = (trefoil(1), trefoil(-1));
    let mp = crossing_monomials(&dp, &h1_presentation(&dp));
    let mm = crossing_monomials(&dm, &h1_presentation(&dm));
    for (j, (sg, cp, cm, pair)) in T.iter().enumerate() {
        ensure(dp.chords[j].sign == *sg, || format!("sign of r{}", j + 1))?;
        ensure(mp.chord[j] == Some(vec![*cp]), || format!("cross_{} at c=1: {:?}", j + 1, mp.chord[j]))?;
        ensure(mm.chord[j] == Some(vec![*cm]), || format!("cross_{} at c=-1: {:?}", j + 1, mm.chord[j]))?;
        for k in 0..5 {
            for m in [&mp, &mm] {
                ensure(m.pair[j][k] == Some(vec![pair[k]]), || {
                    format!("cross_{{{},{}}} = {:?}, expected {}", j + 1, k + 1, m.pair[j][k], pair[k])
                })?;
            }
        }
    }
    Ok(())
}

fn c3() -> Check {
    // word, μ (c = 1, mod 2), CZ (c = 1), μ (c = -1), CZ (c = -1)
    const T: [(&str, i64, i64, i64, i64); 15] = [
        ("r1", 1, 1, 0, 0),
        ("r2", 1, 1, 0, 0),
        ("r3", 1, 1, 0, 0),
        ("r4", 0, 2, 1, 1),
        ("r5", 0, 2, -1, 1),
        ("r1r2", 0, 2, 0, 0),
        ("r1r3", 0, 2, 0, 0),
        ("r1r4", 1, 3, 1, 1),
        ("r1r5", 1, 3, -1, 1),
        ("r2r3", 0, 2, 0, 0),
        ("r2r4", 0, 3, 0, 1),
        ("r2r5", 0, 3, 0, 1),
        ("r3r4", 1, 3, 1, 1),
        ("r3r5", 1, 3, -1, 1),
        ("r4r5", 0, 4, 0, 2),
    ];
    let (dp, dm) = (trefoil(1), trefoil(-1));
    let gp = generators(&dp, &Bound::len(2)).map_err(|e| e.to_string())?;
    let gm = generators(&dm, &Bound::len(2)).map_err(|e| e.to_string())?;
    let primitive = |g: &&reeb_core::chain_report::GeneratorRecord| {
        let l = g.word.letters();
        !(l.len() == 2 && l[0] == l[1])
    };
    let (gp, gm): (Vec<_>, Vec<_>) = (gp.iter().filter(primitive).collect(), gm.iter().filter(primitive).collect());
    ensure(gp.len() == 15 && gm.len() == 15, || format!("{} and {} primitive orbits", gp.len(), gm.len()))?;
    for (s, mu_p, cz_p, mu_m, cz_m) in T {
        let wp = w(&dp, s);
        let rp = gp.iter().find(|g| g.word == wp).ok_or(format!("({s}) missing at c=1"))?;
        let rm = gm.iter().find(|g| g.word == wp).ok_or(format!("({s}) missing at c=-1"))?;
        ensure(rp.class.vector[0].rem_euclid(2) == mu_p, || format!("({s}) class at c=1: {:?}", rp.class.vector))?;
        ensure(rp.cz == cz_p, || format!("({s}) CZ at c=1: {}", rp.cz))?;
        ensure(rm.class.vector == vec![mu_m], || format!("({s}) class at c=-1: {:?}", rm.class.vector))?;
        ensure(rm.cz == cz_m, || format!("({s}) CZ at c=-1: {}", rm.cz))?;
    }
    Ok(())
}

fn c4() -> Check {
    const T: [(&[&str], [i64; 6]); 7] = [
        (&["r4"], [0, 0, 0, 0, 1, 0]),
        (&["r1", "r1"], [-1, -1, -2, -1, 1, 1]),
        (&["r2", "r2"], [1, 2, 2, 1, -1, -1]),
        (&["r3", "r3"], [-1, -2, -1, -1, 1, 1]),
        (&["r1", "r2"], [0, 1, 0, 0, 0, 0]),
        (&["r1", "r3"], [-1, -1, -1, -1, 1, 1]),
        (&["r2", "r3"], [0, 0, 1, 0, 0, 0]),
    ];
    let d = trefoil(1);
    let h = h1_presentation(&d);
    let mut bad = Vec::new();
    for (ws, expect) in T {
        let words: Vec<CyclicWord> = ws.iter().map(|s| w(&d, s)).collect();
        let mut seen = BTreeSet::new();
        for s0 in OrbitString::all(1) {
            for s1 in OrbitString::all(1) {
                let strings = [s0.clone(), s1.clone()];
                let col: Vec<_> = words.iter().cloned().zip(strings.iter().cloned()).collect();
                seen.insert(i_grading_with(&d, &h, &col).map_err(|e| e.to_string())?.0);
            }
        }
        ensure(seen.len() == 1, || format!("{ws:?}: I depends on the orbit strings: {seen:?}"))?;
        let got = seen.into_iter().next().unwrap();
        if got != expect {
            bad.push(format!("{} got {got:?}, table {expect:?}", ws.join("·")));
        }
    }
    ensure(bad.is_empty(), || {
        format!(
            "{}; these rows contradict the table's own relations I(r_i²) = 2I(r_i r2) − I(r2²)",
            bad.join("; ")
        )
    })
}

fn c5() -> Check {
    let d = trefoil(1);
    let rep = differential_candidates(&d, &w(&d, "r4"), qr(1, 100)).map_err(|e| e.to_string())?;
    ensure(rep.survivors.len() == 1, || format!("{} survivors", rep.survivors.len()))?;
    let s = &rep.survivors[0];
    ensure(s.monomial.is_empty(), || "survivor is not the constant 1".into())?;
    ensure(s.bubbling.len() == 1 && s.bubbling[0].face == 5 && s.bubbling[0].count_abs == 1, || {
        format!("bubbling {:?}", s.bubbling)
    })?;
    ensure(!s.ambiguous, || "ambiguous".into())
}

fn c6() -> Check {
    for (c, summands, factor) in [(-1i8, vec![2i64], 1i64), (1, vec![0], 2)] {
        let d = diagram(UNKNOT, c);
        ensure(d.n_chords() == 1, || "unknot should have one chord".into())?;
        let h = h1_presentation(&d);
        ensure(h.summands() == summands, || format!("H1 at c={c}: {:?}", h.summands()))?;
        let r = w(&d, "r1");
        for k in 1..=5usize {
            let rk = r.power(k);
            let cz = cz_integral(&d, &rk).map_err(|e| e.to_string())?;
            ensure(cz == factor * k as i64, || format!("CZ((r^{k})) = {cz} at c={c}"))?;
        }
        let gens = generators(&d, &Bound::len(5)).map_err(|e| e.to_string())?;
        for g in gens {
            let k = g.word.len();
            let expect_bad = c == -1 && k % 2 == 0;
            ensure(g.good != expect_bad, || format!("(r^{k}) good = {} at c={c}", g.good))?;
        }
    }
    Ok(())
}

fn c7() -> Check {
    let d = diagram(STABILIZED, 1);
    ensure(d.n_chords() == 2, || format!("{} chords", d.n_chords()))?;
    let c = &d.components[0];
    ensure(c.tb == -2 && c.rot == 1, || format!("tb {}, rot {}", c.tb, c.rot))?;
    let r1 = w(&d, "r1");
    let cz = cz_integral(&d, &r1).map_err(|e| e.to_string())?;
    let cl = orbit_class_monomial(&d, &h1_presentation(&d), &r1).map_err(|e| e.to_string())?;
    ensure(cz == 2 && cl.is_zero(), || format!("CZ {cz}, class {:?}", cl.reduced))?;
    // the teardrop with the single corner r1
    let faces = bubbling_faces(&d).map_err(|e| e.to_string())?;
    let hit = faces.iter().find(|b| b.word == r1).ok_or("no bubbling face bounds (r1)")?;
    let f = &d.faces[hit.face - 1];
    ensure(f.corners.len() == 1 && f.area == d.chords[0].action, || format!("face {} is not the r1 teardrop", f.id))
}

fn c8() -> Check {
    let d = diagram(HOPF, 0);
    let qv = build_quiver(&d).map_err(|e| e.to_string())?;
    ensure(qv.vertices == 2 && qv.edges.len() == 4, || format!("{} vertices, {} edges", qv.vertices, qv.edges.len()))?;
    ensure(qv.loops_at(0) == vec![0] && qv.loops_at(1) == vec![3], || {
        format!("loops {:?} and {:?}", qv.loops_at(0), qv.loops_at(1))
    })
}

fn words(d: &ResolvedDiagram, n: usize) -> Vec<CyclicWord> {
    enumerate_orbit_words(d, &Bound::len(n)).unwrap()
}

fn both() -> [ResolvedDiagram; 2] {
    [trefoil(1), trefoil(-1)]
}

fn c9a() -> Check {
    for d in both() {
        for x in words(&d, 4) {
            let full = cz_integral(&d, &x).map_err(|e| e.to_string())?;
            let m2 = cz_mod2(&d, &x).map_err(|e| e.to_string())?;
            ensure(full.rem_euclid(2) as u8 == m2, || format!("{x}: CZ {full}, mod 2 {m2}"))?;
        }
    }
    Ok(())
}

fn c9b() -> Check {
    for d in both() {
        for x in words(&d, 4) {
            let r = return_map(&d, &x).map_err(|e| e.to_string())?;
            ensure(r.det().coeffs() == [1], || format!("{x}: det = {:?}", r.det().coeffs()))?;
        }
    }
    Ok(())
}

fn c9c() -> Check {
    for d in both() {
        for x in words(&d, 4) {
            let l = x.letters();
            let n = l.len();
            let rot: i64 = (0..n).map(|k| ROT[l[k]][l[(k + 1) % n]]).sum();
            let plus = l.iter().filter(|&&j| d.c_plus(j) == 1).count() as i64;
            let expect = if (rot + plus) % 2 == 0 { 1 } else { -1 };
            let tr = return_map(&d, &x).map_err(|e| e.to_string())?.trace();
            ensure(tr.degree() == Some(n) && tr.leading() == expect, || {
                format!("{x}: leading {}u^{:?}, expected {expect}u^{n}", tr.leading(), tr.degree())
            })?;
        }
    }
    Ok(())
}

fn c9d() -> Check {
    let eps = qr(1, 100);
    for d in both() {
        for x in words(&d, 4) {
            let a = orbit_action(&d, &x, eps).map_err(|e| format!("{x}: {e}"))?;
            let gap = a - x.action(&d);
            let gap = if gap < q(0) { -gap } else { gap };
            ensure(gap < q(3) * eps * q(x.len() as i128), || format!("{x}: |Δaction| = {gap}"))?;
        }
    }
    Ok(())
}

fn c9e() -> Check {
    for d in both() {
        let h = h1_presentation(&d);
        for x in words(&d, 3) {
            let m = orbit_class_monomial(&d, &h, &x).map_err(|e| e.to_string())?;
            for s in OrbitString::all(x.len()) {
                let p = push_out(&d, &x, &s).map_err(|e| e.to_string())?;
                let c = orbit_class_pushout(&h, &p);
                ensure(c.reduced == m.reduced, || format!("{x} {s:?}: {:?} vs {:?}", c.reduced, m.reduced))?;
            }
        }
    }
    Ok(())
}

type V = (Q, Q);

/// The per-letter twist-then-reflect step, rebuilt from capping data.
fn oracle_steps(d: &ResolvedDiagram, x: &CyclicWord, eps: Q) -> Vec<([[Q; 2]; 2], [Q; 2])> {
    let l = x.letters();
    let n = l.len();
    (0..n)
        .map(|k| {
            let (a, b) = (l[k], l[(k + 1) % n]);
            let rot = capping_angle(d, a, b, Side::Eta).unwrap().rot;
            let path = capping_path(d, a, b, Side::Eta).unwrap();
            let frac = path.length / d.components[path.comp].length;
            let s = if rot % 2 == 0 { q(1) } else { q(-1) };
            let c = q(d.c_plus(a) as i128);
            ([[q(0), -s], [s, -s * c / eps]], [q(0), s * (qr(1, 2) - frac)])
        })
        .collect()
}

fn step(m: &([[Q; 2]; 2], [Q; 2]), v: V) -> V {
    (m.0[0][0] * v.0 + m.0[0][1] * v.1 + m.1[0], m.0[1][0] * v.0 + m.0[1][1] * v.1 + m.1[1])
}

/// Run the round trip on the three basis points to recover `F(v) = Av + b`,
/// then solve `(I − A)v = b` by elimination.
fn oracle_fixed_points(maps: &[([[Q; 2]; 2], [Q; 2])]) -> Vec<V> {
    let run = |v: V| maps.iter().fold(v, |v, m| step(m, v));
    let b = run((q(0), q(0)));
    let e1 = run((q(1), q(0)));
    let e2 = run((q(0), q(1)));
    let a = [[e1.0 - b.0, e2.0 - b.0], [e1.1 - b.1, e2.1 - b.1]];
    let mut m = [[q(1) - a[0][0], -a[0][1], b.0], [-a[1][0], q(1) - a[1][1], b.1]];
    if m[0][0] == q(0) {
        m.swap(0, 1);
    }
    if m[0][0] == q(0) {
        return Vec::new();
    }
    let f = m[1][0] / m[0][0];
    for k in 0..3 {
        m[1][k] = m[1][k] - f * m[0][k];
    }
    if m[1][1] == q(0) {
        // a line of fixed points, or none
        return Vec::new();
    }
    let y = m[1][2] / m[1][1];
    let x = (m[0][2] - m[0][1] * y) / m[0][0];
    let v = (x, y);
    assert_eq!(run(v), v);
    vec![v]
}

fn c9f() -> Check {
    let eps = qr(1, 100);
    for d in both() {
        for x in words(&d, 3) {
            let maps = oracle_steps(&d, &x, eps);
            ensure(maps == affine_steps(&d, &x, eps).map_err(|e| e.to_string())?, || format!("{x}: step maps differ"))?;
            let fps = oracle_fixed_points(&maps);
            ensure(fps.len() == 1, || format!("{x}: {} fixed points", fps.len()))?;
            let sol = embed_orbit(&d, &x, eps).map_err(|e| format!("{x}: {e}"))?;
            let mut v = fps[0];
            for (k, m) in maps.iter().enumerate() {
                ensure(sol.points[k] == v, || format!("{x}: exit point {k} differs"))?;
                v = step(m, v);
            }
        }
    }
    Ok(())
}

/// Invariant factors of `ℤ²/⟨columns⟩` by counting.
fn cokernel_oracle(m: [[i64; 2]; 2]) -> Vec<i64> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let in_lattice = |z: (i64, i64)| -> bool {
        if det != 0 {
            let y0 = m[1][1] * z.0 - m[0][1] * z.1;
            let y1 = -m[1][0] * z.0 + m[0][0] * z.1;
            return y0 % det == 0 && y1 % det == 0;
        }
        // rank ≤ 1: brute search for a preimage
        (-60..=60).any(|a| (-60..=60).any(|b| m[0][0] * a + m[0][1] * b == z.0 && m[1][0] * a + m[1][1] * b == z.1))
    };
    if det != 0 {
        let n = det.abs();
        let mut images = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                images.insert(((m[0][0] * a + m[0][1] * b).rem_euclid(n), (m[1][0] * a + m[1][1] * b).rem_euclid(n)));
            }
        }
        let order = n * n / images.len() as i64;
        let exponent = (1..=n).find(|&e| in_lattice((e, 0)) && in_lattice((0, e))).unwrap();
        return vec![order / exponent, exponent];
    }
    if m.iter().flatten().all(|&x| x == 0) {
        return vec![0, 0];
    }
    let mut torsion = 1;
    for x in -5..=5i64 {
        for y in -5..=5i64 {
            if in_lattice((x, y)) {
                continue;
            }
            if let Some(k) = (2..=10).find(|&k| in_lattice((k * x, k * y))) {
                torsion = torsion.max(k);
            }
        }
    }
    vec![torsion, 0]
}

fn c9g() -> Check {
    let mul = |a: &[Vec<i64>], b: &[Vec<i64>]| -> Vec<Vec<i64>> {
        (0..2).map(|i| (0..2).map(|j| (0..2).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    };
    let r = -5..=5i64;
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for dd in r.clone() {
                    let m = vec![vec![a, b], vec![c, dd]];
                    let s = smith_normal_form(&m);
                    let diag = vec![vec![s.diag[0], 0], vec![0, s.diag[1]]];
                    ensure(mul(&mul(&s.u, &m), &s.v) == diag, || format!("{m:?}: U·M·V ≠ D"))?;
                    for x in [&s.u, &s.v] {
                        let det = x[0][0] * x[1][1] - x[0][1] * x[1][0];
                        ensure(det.abs() == 1, || format!("{m:?}: transform not unimodular"))?;
                    }
                    let want = cokernel_oracle([[a, b], [c, dd]]);
                    ensure(s.diag == want, || format!("{m:?}: diag {:?}, oracle {want:?}", s.diag))?;
                }
            }
        }
    }
    Ok(())
}

fn c9h() -> Check {
    let d = trefoil(1);
    for j in 0..5 {
        for k in 0..5 {
            if !d.composable(j, k) {
                continue;
            }
            let e = capping_angle(&d, j, k, Side::Eta).map_err(|e| e.to_string())?;
            let b = capping_angle(&d, j, k, Side::EtaBar).map_err(|e| e.to_string())?;
            let rot = d.components[d.chords[j].tip.comp].rot;
            ensure(e.t - b.t == 4 * rot, || format!("r{}→r{}: t_η = {}, t_η̄ = {}", j + 1, k + 1, e.t, b.t))?;
        }
    }
    Ok(())
}

/// Criteria that are red for a documented reason and do not fail the run.
const KNOWN_RED: &[&str] = &["4"];

fn main() {
    let checks: [(&str, &str, fn() -> Check); 16] = [
        ("1", "trefoil rotation table", c1),
        ("2", "trefoil crossing monomials", c2),
        ("3", "trefoil orbit classes and CZ", c3),
        ("4", "trefoil I table", c4),
        ("5", "trefoil differential of (r4)", c5),
        ("6", "unknot suite", c6),
        ("7", "stabilized unknot", c7),
        ("8", "Hopf quiver", c8),
        ("9a", "CZ mod 2", c9a),
        ("9b", "det of return map", c9b),
        ("9c", "leading trace sign", c9c),
        ("9d", "orbit action close to word action", c9d),
        ("9e", "push-out class equals monomial class", c9e),
        ("9f", "affine fixed point oracle", c9f),
        ("9g", "Smith form vs cokernel", c9g),
        ("9h", "angle sum identity", c9h),
    ];
    let mut unexpected = Vec::new();
    for (id, name, f) in checks {
        match f() {
            Ok(()) => println!("criterion {id:>3}: PASS  {name}"),
            Err(e) => {
                let known = KNOWN_RED.contains(&id);
                println!("criterion {id:>3}: FAIL  {name}: {e}{}", if known { " (known)" } else { "" });
                if !known {
                    unexpected.push(id);
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
