//! Front event sequences and their text grammar.
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::input_err;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventKind {
    LeftCusp,
    RightCusp,
    Crossing,
}

/// One event of the left-to-right sweep; `pos` is 1-based from the top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Event {
    pub kind: EventKind,
    pub pos: usize,
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            EventKind::LeftCusp => 'L',
            EventKind::RightCusp => 'R',
            EventKind::Crossing => 'X',
        };
        write!(f, "{c}{}", self.pos)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Plus,
    Minus,
}

/// Validated front with its component decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontCode {
    pub events: Vec<Event>,
    /// Explicit orientations; missing components use the first-traversal direction.
    pub orientations: BTreeMap<usize, Orientation>,
    /// Explicit coefficients; missing components have coefficient 0.
    pub surgery: BTreeMap<usize, i8>,
    /// Chord labels in event order (1-based), if not the identity.
    pub labels: Option<Vec<usize>>,
    n_components: usize,
    /// Component of the strands created by each left cusp, in event order.
    left_components: Vec<usize>,
}

impl FrontCode {
    pub fn new(
        events: Vec<Event>,
        orientations: BTreeMap<usize, Orientation>,
        surgery: BTreeMap<usize, i8>,
        labels: Option<Vec<usize>>,
    ) -> Result<Self> {
        if events.is_empty() {
            return Err(input_err!("no events"));
        }
        // union-find over arcs; arcs are created in pairs by left cusps
        let mut parent: Vec<usize> = Vec::new();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        let mut active: Vec<usize> = Vec::new();
        let mut left_arcs = Vec::new();
        for (i, e) in events.iter().enumerate() {
            let n = active.len();
            match e.kind {
                EventKind::LeftCusp => {
                    if e.pos == 0 || e.pos > n + 1 {
                        return Err(input_err!(
                            "event {} ({e}): left cusp position out of range 1..={}",
                            i + 1,
                            n + 1
                        ));
                    }
                    let a = parent.len();
                    parent.push(a);
                    parent.push(a);
                    active.insert(e.pos - 1, a + 1);
                    active.insert(e.pos - 1, a);
                    left_arcs.push(a);
                }
                EventKind::RightCusp | EventKind::Crossing => {
                    if e.pos == 0 || e.pos + 1 > n {
                        return Err(input_err!(
                            "event {} ({e}): needs strands {} and {} but only {n} exist",
                            i + 1,
                            e.pos,
                            e.pos + 1
                        ));
                    }
                    let (a, b) = (active[e.pos - 1], active[e.pos]);
                    if e.kind == EventKind::Crossing {
                        active.swap(e.pos - 1, e.pos);
                    } else {
                        let ra = find(&mut parent, a);
                        let rb = find(&mut parent, b);
                        parent[ra] = rb;
                        active.drain(e.pos - 1..=e.pos);
                    }
                }
            }
        }
        if !active.is_empty() {
            return Err(input_err!("{} open strands at the end of the events", active.len()));
        }
        let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
        let mut left_components = Vec::new();
        for a in left_arcs {
            let r = find(&mut parent, a);
            let next = ids.len();
            let c = *ids.entry(r).or_insert(next);
            left_components.push(c);
        }
        let n_components = ids.len();
        for &c in orientations.keys() {
            if c >= n_components {
                return Err(input_err!("orientation given for unknown component {c}"));
            }
        }
        for (&c, &v) in &surgery {
            if c >= n_components {
                return Err(input_err!("surgery coefficient for unknown component {c}"));
            }
            if !(-1..=1).contains(&v) {
                return Err(input_err!("surgery coefficient {v} not in {{+1,-1,0}}"));
            }
        }
        let n_chords = events.iter().filter(|e| e.kind != EventKind::LeftCusp).count();
        if let Some(l) = &labels {
            let mut seen = vec![false; n_chords + 1];
            if l.len() != n_chords {
                return Err(input_err!("{} labels given for {n_chords} chords", l.len()));
            }
            for &x in l {
                if x == 0 || x > n_chords || seen[x] {
                    return Err(input_err!("labels must be a permutation of 1..={n_chords}"));
                }
                seen[x] = true;
            }
        }
        Ok(FrontCode { events, orientations, surgery, labels, n_components, left_components })
    }

    pub fn n_components(&self) -> usize {
        self.n_components
    }

    pub fn coefficient(&self, comp: usize) -> i8 {
        self.surgery.get(&comp).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> Vec<i8> {
        (0..self.n_components).map(|c| self.coefficient(c)).collect()
    }

    pub fn orientation(&self, comp: usize) -> Orientation {
        self.orientations.get(&comp).copied().unwrap_or(Orientation::Plus)
    }

    pub fn count(&self, kind: EventKind) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }

    pub fn n_chords(&self) -> usize {
        self.count(EventKind::RightCusp) + self.count(EventKind::Crossing)
    }

    /// Component id of each left cusp, in event order.
    pub fn left_components(&self) -> &[usize] {
        &self.left_components
    }

    /// Same front with different coefficients.
    pub fn with_surgery(&self, surgery: BTreeMap<usize, i8>) -> Result<Self> {
        FrontCode::new(self.events.clone(), self.orientations.clone(), surgery, self.labels.clone())
    }

    /// Same front with every component given coefficient `c`.
    pub fn with_uniform_surgery(&self, c: i8) -> Result<Self> {
        self.with_surgery((0..self.n_components).map(|i| (i, c)).collect())
    }
}

impl fmt::Display for FrontCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.events.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        if !self.orientations.is_empty() {
            f.write_str(" / orientations {")?;
            for (i, (c, o)) in self.orientations.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}:{}", if *o == Orientation::Plus { '+' } else { '-' })?;
            }
            f.write_str("}")?;
        }
        if !self.surgery.is_empty() {
            f.write_str(" / surgery {")?;
            for (i, (c, v)) in self.surgery.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                match v {
                    1 => write!(f, "{c}:+1")?,
                    _ => write!(f, "{c}:{v}")?,
                }
            }
            f.write_str("}")?;
        }
        if let Some(l) = &self.labels {
            f.write_str(" / labels [")?;
            for (i, x) in l.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// Parses `L1,L3,X2,X2,X2,R1,R1 / orientations {0:+} / surgery {0:+1} / labels [..]`.
///
/// Sections may be separated by `/`, `;` or newlines. `labels` renames the
/// chords, which are otherwise numbered in event order.
pub fn parse_front(text: &str) -> Result<FrontCode> {
    let mut events: Option<Vec<Event>> = None;
    let mut orientations = BTreeMap::new();
    let mut surgery = BTreeMap::new();
    let mut labels = None;
    for raw in text.split(['/', ';', '\n']) {
        let sec = raw.trim();
        if sec.is_empty() || sec.starts_with('#') {
            continue;
        }
        let (head, rest) = split_keyword(sec);
        match head {
            "orientations" => {
                for (k, v) in parse_map(rest)? {
                    let o = match v.as_str() {
                        "+" | "+1" => Orientation::Plus,
                        "-" | "-1" => Orientation::Minus,
                        _ => return Err(syntax(format_args!("orientation '{v}' is not + or -"))),
                    };
                    orientations.insert(k, o);
                }
            }
            "surgery" => {
                for (k, v) in parse_map(rest)? {
                    let c: i8 = match v.as_str() {
                        "+1" | "1" | "+" => 1,
                        "-1" | "-" => -1,
                        "0" => 0,
                        _ => return Err(syntax(format_args!("surgery coefficient '{v}' is not +1, -1 or 0"))),
                    };
                    surgery.insert(k, c);
                }
            }
            "labels" => labels = Some(parse_list(rest)?),
            "events" => set_events(&mut events, rest)?,
            _ => set_events(&mut events, sec)?,
        }
    }
    let events = events.ok_or_else(|| syntax(format_args!("no event list")))?;
    FrontCode::new(events, orientations, surgery, labels)
}

fn syntax(a: fmt::Arguments<'_>) -> Error {
    Error::Syntax(a.to_string())
}

fn split_keyword(sec: &str) -> (&str, &str) {
    for kw in ["orientations", "surgery", "labels", "events"] {
        if let Some(rest) = sec.strip_prefix(kw) {
            let rest = rest.trim_start();
            let rest = rest.strip_prefix(':').or_else(|| rest.strip_prefix('=')).unwrap_or(rest);
            return (kw, rest.trim());
        }
    }
    ("", sec)
}

fn set_events(slot: &mut Option<Vec<Event>>, s: &str) -> Result<()> {
    if slot.is_some() {
        return Err(syntax(format_args!("more than one event list")));
    }
    *slot = Some(parse_events(s)?);
    Ok(())
}

pub fn parse_events(s: &str) -> Result<Vec<Event>> {
    let s = s.trim();
    let s = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(s);
    let mut out = Vec::new();
    for tok in s.split(',') {
        let tok = tok.trim().trim_matches('"');
        out.push(parse_event(tok)?);
    }
    Ok(out)
}

pub fn parse_event(tok: &str) -> Result<Event> {
    let mut chars = tok.chars();
    let kind = match chars.next() {
        Some('L' | 'l') => EventKind::LeftCusp,
        Some('R' | 'r') => EventKind::RightCusp,
        Some('X' | 'x') => EventKind::Crossing,
        Some(c) => return Err(syntax(format_args!("unknown event '{c}' in '{tok}'"))),
        None => return Err(syntax(format_args!("empty event token"))),
    };
    let digits = chars.as_str().trim();
    let pos: usize = digits
        .parse()
        .map_err(|_| syntax(format_args!("bad strand position in '{tok}'")))?;
    Ok(Event { kind, pos })
}

fn braced<'a>(s: &'a str, open: char, close: char) -> Result<&'a str> {
    s.trim()
        .strip_prefix(open)
        .and_then(|t| t.strip_suffix(close))
        .ok_or_else(|| syntax(format_args!("expected {open}...{close}, found '{s}'")))
}

fn parse_map(s: &str) -> Result<Vec<(usize, String)>> {
    let inner = braced(s, '{', '}')?;
    let mut out = Vec::new();
    for item in inner.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (k, v) = item
            .split_once(':')
            .ok_or_else(|| syntax(format_args!("expected key:value, found '{item}'")))?;
        let k: usize = k
            .trim()
            .parse()
            .map_err(|_| syntax(format_args!("bad component id '{}'", k.trim())))?;
        out.push((k, v.trim().into()));
    }
    Ok(out)
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    let inner = braced(s, '[', ']')?;
    inner
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| syntax(format_args!("bad label '{}'", t.trim()))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal() {
        let f = parse_front("L1,R1 / surgery {0:-1}").unwrap();
        assert_eq!(f.n_components(), 1);
        assert_eq!(f.coefficient(0), -1);
        assert_eq!(f.count(EventKind::LeftCusp), 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_front("L1,R2"), Err(Error::Input(_))));
        assert!(matches!(parse_front("L1"), Err(Error::Input(_))));
        assert!(matches!(parse_front("L1,Q1"), Err(Error::Syntax(_))));
        assert!(matches!(parse_front("L1,R1 / surgery {1:+1}"), Err(Error::Input(_))));
        assert!(matches!(parse_front("L1,R1 / surgery {0:+2}"), Err(Error::Syntax(_))));
    }

    #[test]
    fn display_roundtrip() {
        let s = "L1,L3,X2,X2,R1,R1 / surgery {0:+1,1:0} / labels [2,3,1,4]";
        let f = parse_front(s).unwrap();
        assert_eq!(parse_front(&f.to_string()).unwrap(), f);
    }
}
