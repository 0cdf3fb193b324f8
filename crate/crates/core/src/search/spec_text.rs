//! Text form of search specs.
//!
//! A spec is a list of `key: value` entries separated by newlines or `;`.
//! `=` may replace `:`, and `#` starts a comment.
//!
//! ```text
//! # empty circuits and pairs
//! k: 6                      # 3..=9
//! mode: circuit             # circuit | pair | pair 4+3
//! constraints: distinct     # distinct, single, no-shared-edge, min-faces N
//! ```
//!
//! ```text
//! # witnesses
//! c: 2
//! pair-sum: 7
//! doubly-intersecting: yes
//! dual: simple, two-cut     # simple, one-cut, two-cut
//! max-vertices: 8
//! max-edges: 20             # optional
//! stop-at-first: yes
//! ```

use thiserror::Error;

use super::empty::{EmptyCircuitSpec, Mode, SideConstraint};
use super::witness::{DualDemand, WitnessSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("entry {0:?} is not of the form key: value")]
    Syntax(String),
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error("key {0:?} given twice")]
    Duplicate(String),
    #[error("missing key {0:?}")]
    Missing(&'static str),
    #[error("bad value {value:?} for {key}")]
    BadValue { key: String, value: String },
}

fn entries(text: &str) -> Result<Vec<(String, String)>, SpecError> {
    let mut out: Vec<(String, String)> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for item in line.split(';') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let cut = item
                .find([':', '='])
                .ok_or_else(|| SpecError::Syntax(item.to_string()))?;
            let key = item[..cut].trim().to_ascii_lowercase();
            let value = item[cut + 1..].trim().to_string();
            if out.iter().any(|(k, _)| *k == key) {
                return Err(SpecError::Duplicate(key));
            }
            out.push((key, value));
        }
    }
    Ok(out)
}

fn bad(key: &str, value: &str) -> SpecError {
    SpecError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
    }
}

fn number(key: &str, value: &str) -> Result<usize, SpecError> {
    value.parse().map_err(|_| bad(key, value))
}

fn flag(key: &str, value: &str) -> Result<bool, SpecError> {
    match value.to_ascii_lowercase().as_str() {
        "yes" | "true" | "1" => Ok(true),
        "no" | "false" | "0" => Ok(false),
        _ => Err(bad(key, value)),
    }
}

fn list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

pub fn parse_empty_spec(text: &str) -> Result<EmptyCircuitSpec, SpecError> {
    let mut k = None;
    let mut mode = Mode::Circuit;
    let mut constraints = Vec::new();
    for (key, value) in entries(text)? {
        match key.as_str() {
            "k" => {
                let v = number(&key, &value)?;
                if !(3..=9).contains(&v) {
                    return Err(bad(&key, &value));
                }
                k = Some(v);
            }
            "mode" => {
                let words: Vec<&str> = value.split_whitespace().collect();
                mode = match words.as_slice() {
                    ["circuit"] => Mode::Circuit,
                    ["pair"] => Mode::Pair(None),
                    ["pair", split] => {
                        let (a, b) = split.split_once('+').ok_or_else(|| bad(&key, &value))?;
                        Mode::Pair(Some((number(&key, a)?, number(&key, b)?)))
                    }
                    _ => return Err(bad(&key, &value)),
                };
            }
            "constraints" => {
                for c in list(&value) {
                    let words: Vec<&str> = c.split_whitespace().collect();
                    constraints.push(match words.as_slice() {
                        ["distinct"] => SideConstraint::DistinctNeighborFaces,
                        ["single"] => SideConstraint::SingleNeighborFace,
                        ["no-shared-edge"] => SideConstraint::FaceNotSharingEdge,
                        ["min-faces", m] => SideConstraint::MinFaceCount(number(&key, m)?),
                        _ => return Err(bad(&key, c)),
                    });
                }
            }
            _ => return Err(SpecError::UnknownKey(key)),
        }
    }
    let k = k.ok_or(SpecError::Missing("k"))?;
    if let Mode::Pair(Some((a, b))) = mode {
        if a + b != k || a < 3 || b < 3 {
            return Err(bad("mode", &format!("pair {a}+{b}")));
        }
    }
    Ok(EmptyCircuitSpec {
        k,
        mode,
        constraints,
    })
}

pub fn empty_spec_text(spec: &EmptyCircuitSpec) -> String {
    let mode = match spec.mode {
        Mode::Circuit => "circuit".to_string(),
        Mode::Pair(None) => "pair".to_string(),
        Mode::Pair(Some((a, b))) => format!("pair {a}+{b}"),
    };
    let cs: Vec<String> = spec
        .constraints
        .iter()
        .map(|c| match c {
            SideConstraint::DistinctNeighborFaces => "distinct".to_string(),
            SideConstraint::SingleNeighborFace => "single".to_string(),
            SideConstraint::FaceNotSharingEdge => "no-shared-edge".to_string(),
            SideConstraint::MinFaceCount(m) => format!("min-faces {m}"),
        })
        .collect();
    format!(
        "k: {}\nmode: {mode}\nconstraints: {}\n",
        spec.k,
        cs.join(", ")
    )
}

pub fn parse_witness_spec(text: &str) -> Result<WitnessSpec, SpecError> {
    let mut c = None;
    let mut sum = None;
    let mut spec = WitnessSpec::two_cut(0, 0, 8);
    for (key, value) in entries(text)? {
        match key.as_str() {
            "c" => c = Some(number(&key, &value)?),
            "pair-sum" => sum = Some(number(&key, &value)?),
            "doubly-intersecting" => spec.doubly_intersecting = flag(&key, &value)?,
            "dual" => {
                spec.dual = list(&value)
                    .map(|d| match d {
                        "simple" => Ok(DualDemand::Simple),
                        "one-cut" => Ok(DualDemand::HasOneCut),
                        "two-cut" => Ok(DualDemand::HasTwoCut),
                        _ => Err(bad(&key, d)),
                    })
                    .collect::<Result<_, _>>()?;
            }
            "max-vertices" => {
                let v = number(&key, &value)?;
                if !(3..=12).contains(&v) {
                    return Err(bad(&key, &value));
                }
                spec.max_vertices = v;
            }
            "max-edges" => spec.max_edges = Some(number(&key, &value)?),
            "stop-at-first" => spec.stop_at_first = flag(&key, &value)?,
            _ => return Err(SpecError::UnknownKey(key)),
        }
    }
    spec.c = c.ok_or(SpecError::Missing("c"))?;
    spec.pair_sum = sum.ok_or(SpecError::Missing("pair-sum"))?;
    if spec.pair_sum < 6 {
        return Err(bad("pair-sum", &spec.pair_sum.to_string()));
    }
    Ok(spec)
}

pub fn witness_spec_text(spec: &WitnessSpec) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" };
    let dual: Vec<&str> = spec
        .dual
        .iter()
        .map(|d| match d {
            DualDemand::Simple => "simple",
            DualDemand::HasOneCut => "one-cut",
            DualDemand::HasTwoCut => "two-cut",
        })
        .collect();
    let mut out = format!(
        "c: {}\npair-sum: {}\ndoubly-intersecting: {}\ndual: {}\nmax-vertices: {}\n",
        spec.c,
        spec.pair_sum,
        yn(spec.doubly_intersecting),
        dual.join(", "),
        spec.max_vertices
    );
    if let Some(m) = spec.max_edges {
        out.push_str(&format!("max-edges: {m}\n"));
    }
    out.push_str(&format!("stop-at-first: {}\n", yn(spec.stop_at_first)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_empty_spec() {
        let s = parse_empty_spec("k=6; mode=pair 3+3; constraints=distinct, min-faces 4").unwrap();
        assert_eq!(s.k, 6);
        assert_eq!(s.mode, Mode::Pair(Some((3, 3))));
        assert_eq!(
            s.constraints,
            vec![
                SideConstraint::DistinctNeighborFaces,
                SideConstraint::MinFaceCount(4)
            ]
        );
        assert_eq!(parse_empty_spec(&empty_spec_text(&s)).unwrap(), s);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(parse_empty_spec("k: 10").is_err());
        assert!(parse_empty_spec("k: 7; mode: pair 3+3").is_err());
        assert!(parse_empty_spec("mode: circuit").is_err());
        assert!(parse_empty_spec("k: 5; colour: red").is_err());
    }

    #[test]
    fn witness_round_trip() {
        let s = parse_witness_spec("c: 4\npair-sum: 10\nmax-vertices: 8\nmax-edges: 20").unwrap();
        assert_eq!(s.dual, vec![DualDemand::Simple, DualDemand::HasTwoCut]);
        assert!(s.doubly_intersecting && s.stop_at_first);
        assert_eq!(parse_witness_spec(&witness_spec_text(&s)).unwrap(), s);
    }
}
