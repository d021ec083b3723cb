#![allow(dead_code)]
use reeb_core::diagram_core::{parse_front, resolve, ResolvedDiagram};
use reeb_core::reeb_words::{canonical_cyclic, parse_word, CyclicWord};

pub const TREFOIL: &str = "L1,L3,X2,X2,X2,R1,R1 / orientations {0:-}";
pub const UNKNOT: &str = "L1,R1";
pub const STABILIZED: &str = "L1,L2,R1,R1";
pub const HOPF: &str = "L1,L3,X2,X2,R1,R1 / labels [2,3,1,4]";

pub fn diagram(text: &str, c: i8) -> ResolvedDiagram {
    let f = parse_front(text).unwrap().with_uniform_surgery(c).unwrap();
    resolve(&f).unwrap()
}

pub fn trefoil(c: i8) -> ResolvedDiagram {
    diagram(TREFOIL, c)
}

pub fn w(d: &ResolvedDiagram, s: &str) -> CyclicWord {
    canonical_cyclic(d, &parse_word(s).unwrap()).unwrap()
}
