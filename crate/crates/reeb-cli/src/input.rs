//! Diagram sources: the text grammar or an equivalent JSON object.
use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use reeb_core::diagram_core::{parse_event, parse_front, Event, EventKind, FrontCode, Orientation};
use serde::Deserialize;

use crate::CliError;

#[derive(Deserialize)]
#[serde(untagged)]
enum EventsField {
    Text(String),
    List(Vec<EventItem>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EventItem {
    Token(String),
    Object { kind: String, position: usize },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Coefficient {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonFront {
    events: EventsField,
    #[serde(default)]
    orientations: BTreeMap<String, String>,
    #[serde(default)]
    surgery: BTreeMap<String, Coefficient>,
    #[serde(default)]
    labels: Option<Vec<usize>>,
}

fn bad(m: impl Into<String>) -> CliError {
    CliError::Core(reeb_core::Error::Input(m.into()))
}

fn comp_id(k: &str) -> Result<usize, CliError> {
    k.trim().parse().map_err(|_| bad(format!("component id '{k}' is not a number")))
}

fn event_of(item: EventItem) -> Result<Event, CliError> {
    match item {
        EventItem::Token(t) => Ok(parse_event(&t)?),
        EventItem::Object { kind, position } => {
            let kind = match kind.as_str() {
                "L" | "LeftCusp" | "left_cusp" => EventKind::LeftCusp,
                "R" | "RightCusp" | "right_cusp" => EventKind::RightCusp,
                "X" | "Crossing" | "crossing" => EventKind::Crossing,
                other => return Err(bad(format!("unknown event kind '{other}'"))),
            };
            Ok(Event { kind, pos: position })
        }
    }
}

pub fn front_from_json(text: &str) -> Result<FrontCode, CliError> {
    let j: JsonFront = serde_json::from_str(text)?;
    let events = match j.events {
        EventsField::Text(s) => reeb_core::diagram_core::parse_events(&s)?,
        EventsField::List(v) => v.into_iter().map(event_of).collect::<Result<_, _>>()?,
    };
    let mut orientations = BTreeMap::new();
    for (k, v) in j.orientations {
        let o = match v.trim() {
            "+" => Orientation::Plus,
            "-" => Orientation::Minus,
            other => return Err(bad(format!("orientation must be + or -, got '{other}'"))),
        };
        orientations.insert(comp_id(&k)?, o);
    }
    let mut surgery = BTreeMap::new();
    for (k, v) in j.surgery {
        let c = match v {
            Coefficient::Int(i) => i,
            Coefficient::Text(s) => s.trim().trim_start_matches('+').parse().map_err(|_| bad(format!("bad coefficient '{s}'")))?,
        };
        let c = i8::try_from(c).map_err(|_| bad(format!("coefficient {c} out of range")))?;
        surgery.insert(comp_id(&k)?, c);
    }
    Ok(FrontCode::new(events, orientations, surgery, j.labels)?)
}

pub fn front_from_str(text: &str) -> Result<FrontCode, CliError> {
    if text.trim_start().starts_with('{') {
        front_from_json(text)
    } else {
        Ok(parse_front(text)?)
    }
}

/// Reads `path`, or standard input when absent or `-`.
pub fn read_front(path: Option<&Path>) -> Result<FrontCode, CliError> {
    let text = match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p).map_err(|e| CliError::Io(p.display().to_string(), e))?,
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io("stdin".into(), e))?;
            s
        }
    };
    front_from_str(&text)
}
