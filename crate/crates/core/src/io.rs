//! JSON documents for permutations, tilings, certificates and solver output.
//!
//! ```text
//! Permutation  {"n": 3, "map": [2, 3, 1]}
//! Tiling       {"n": 2, "rects": [{"r1": 1, "r2": 1, "c1": 2, "c2": 2}, ...]}
//! Certificate  {"n": 2, "perm": [1, 2], "cells": [{"row": 1, "col": 2}, ...],
//!               "size": 2, "valid": true, "target": 1}
//! SolveResult  {"min_count": 12, "optimal": true, "nodes": 77, "witness": <Tiling>}
//! ```
//!
//! Parsing enforces each type's own invariants (bijection, non-empty ranges,
//! declared sizes) but never runs the verifiers: an overlapping tiling parses
//! fine.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fooling::{Certificate, MarkedSet};
use crate::grid::{Cell, Permutation, Rect, Tiling};
use crate::solver::{GlobalResult, SolveResult};

/// Types with a JSON document form.
pub trait Document: Sized {
    const KIND: &'static str;

    fn to_json(&self) -> String;

    fn from_json(text: &str) -> Result<Self>;
}

fn parse_error(kind: &'static str, err: serde_json::Error) -> Error {
    Error::Parse {
        kind,
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    }
}

fn parse<D: DeserializeOwned>(kind: &'static str, text: &str) -> Result<D> {
    serde_json::from_str(text).map_err(|e| parse_error(kind, e))
}

/// Second-stage failures (e.g. not a bijection) carry no position of their
/// own; they are attributed to the named field.
fn semantic(kind: &'static str, field: &str, err: Error) -> Error {
    Error::Parse {
        kind,
        line: 0,
        column: 0,
        message: format!("field `{field}`: {err}"),
    }
}

fn render<S: Serialize>(doc: &S) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PermutationDoc {
    n: usize,
    map: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RectDoc {
    r1: u32,
    r2: u32,
    c1: u32,
    c2: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TilingDoc {
    n: usize,
    rects: Vec<RectDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    n: usize,
    perm: Vec<u32>,
    cells: Vec<Cell>,
    size: usize,
    valid: bool,
    target: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolveDoc {
    min_count: usize,
    optimal: bool,
    nodes: u64,
    witness: TilingDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GlobalDoc {
    n: usize,
    min_count: usize,
    optimal: bool,
    nodes: u64,
    best_perm: Vec<u32>,
    witness: TilingDoc,
}

fn perm_from(kind: &'static str, field: &str, n: usize, map: Vec<u32>) -> Result<Permutation> {
    if map.len() != n {
        return Err(semantic(
            kind,
            field,
            Error::SizeMismatch {
                expected: n,
                found: map.len(),
            },
        ));
    }
    Permutation::new(map).map_err(|e| semantic(kind, field, e))
}

fn tiling_doc(t: &Tiling) -> TilingDoc {
    TilingDoc {
        n: t.n,
        rects: t
            .rects
            .iter()
            .map(|r| RectDoc {
                r1: r.r1,
                r2: r.r2,
                c1: r.c1,
                c2: r.c2,
            })
            .collect(),
    }
}

fn tiling_from(kind: &'static str, doc: TilingDoc) -> Result<Tiling> {
    let rects = doc
        .rects
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            Rect::try_new(r.r1, r.r2, r.c1, r.c2)
                .map_err(|e| semantic(kind, &format!("rects[{i}]"), e))
        })
        .collect::<Result<_>>()?;
    Ok(Tiling::new(doc.n, rects))
}

impl Document for Permutation {
    const KIND: &'static str = "permutation";

    fn to_json(&self) -> String {
        render(&PermutationDoc {
            n: self.n(),
            map: self.as_slice().to_vec(),
        })
    }

    fn from_json(text: &str) -> Result<Self> {
        let doc: PermutationDoc = parse(Self::KIND, text)?;
        perm_from(Self::KIND, "map", doc.n, doc.map)
    }
}

impl Document for Tiling {
    const KIND: &'static str = "tiling";

    fn to_json(&self) -> String {
        render(&tiling_doc(self))
    }

    fn from_json(text: &str) -> Result<Self> {
        tiling_from(Self::KIND, parse(Self::KIND, text)?)
    }
}

impl Document for Certificate {
    const KIND: &'static str = "certificate";

    fn to_json(&self) -> String {
        render(&CertificateDoc {
            n: self.perm.n(),
            perm: self.perm.as_slice().to_vec(),
            cells: self.cells.cells().to_vec(),
            size: self.size,
            valid: self.valid,
            target: self.target,
        })
    }

    /// The `valid` flag is kept as written; re-verify untrusted certificates
    /// with [`crate::fooling::verify_fooling_set`].
    fn from_json(text: &str) -> Result<Self> {
        let doc: CertificateDoc = parse(Self::KIND, text)?;
        let perm = perm_from(Self::KIND, "perm", doc.n, doc.perm)?;
        let cells =
            MarkedSet::new(&perm, doc.cells).map_err(|e| semantic(Self::KIND, "cells", e))?;
        if cells.len() != doc.size {
            return Err(semantic(
                Self::KIND,
                "size",
                Error::InvalidArgument(format!(
                    "declared {} but {} cells listed",
                    doc.size,
                    cells.len()
                )),
            ));
        }
        Ok(Certificate {
            perm,
            cells,
            size: doc.size,
            valid: doc.valid,
            target: doc.target,
        })
    }
}

impl Document for SolveResult {
    const KIND: &'static str = "solve result";

    fn to_json(&self) -> String {
        render(&SolveDoc {
            min_count: self.min_count,
            optimal: self.optimal,
            nodes: self.nodes,
            witness: tiling_doc(&self.witness),
        })
    }

    /// `elapsed` is not part of the document and reads back as zero.
    fn from_json(text: &str) -> Result<Self> {
        let doc: SolveDoc = parse(Self::KIND, text)?;
        Ok(SolveResult {
            min_count: doc.min_count,
            optimal: doc.optimal,
            nodes: doc.nodes,
            witness: tiling_from(Self::KIND, doc.witness)?,
            elapsed: Default::default(),
        })
    }
}

impl Document for GlobalResult {
    const KIND: &'static str = "global result";

    fn to_json(&self) -> String {
        render(&GlobalDoc {
            n: self.n,
            min_count: self.min_count,
            optimal: self.optimal,
            nodes: self.nodes,
            best_perm: self.best_perm.as_slice().to_vec(),
            witness: tiling_doc(&self.witness),
        })
    }

    /// `searched` and `elapsed` are not part of the document.
    fn from_json(text: &str) -> Result<Self> {
        let doc: GlobalDoc = parse(Self::KIND, text)?;
        Ok(GlobalResult {
            n: doc.n,
            min_count: doc.min_count,
            optimal: doc.optimal,
            best_perm: perm_from(Self::KIND, "best_perm", doc.n, doc.best_perm)?,
            witness: tiling_from(Self::KIND, doc.witness)?,
            nodes: doc.nodes,
            searched: 0,
            elapsed: Default::default(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_round_trip() {
        let p = Permutation::new(vec![2, 3, 1]).unwrap();
        let text = p.to_json();
        assert_eq!(Permutation::from_json(&text).unwrap(), p);
        let compact: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(compact, serde_json::json!({"n": 3, "map": [2, 3, 1]}));
    }

    #[test]
    fn bijection_enforced() {
        let err = Permutation::from_json(r#"{"n": 3, "map": [1, 1, 3]}"#).unwrap_err();
        assert!(err.to_string().contains("not a bijection"), "{err}");
        let err = Permutation::from_json(r#"{"n": 4, "map": [1, 2, 3]}"#).unwrap_err();
        assert!(err.to_string().contains("map"), "{err}");
    }

    #[test]
    fn malformed_text_reports_position() {
        let err = Permutation::from_json("{\n  \"n\": 3,\n  \"map\": [1, 2,, 3]\n}").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(Tiling::from_json(r#"{"n": 2, "rects": [{"r1": 1, "r2": 1, "c1": 1}]}"#).is_err());
        assert!(Permutation::from_json(r#"{"n": 1, "map": [1], "extra": 0}"#).is_err());
    }

    #[test]
    fn overlapping_tiling_parses() {
        let text =
            r#"{"n": 3, "rects": [{"r1":1,"r2":2,"c1":1,"c2":2},{"r1":2,"r2":3,"c1":2,"c2":3}]}"#;
        let t = Tiling::from_json(text).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(Tiling::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn inverted_rect_rejected() {
        let err =
            Tiling::from_json(r#"{"n": 3, "rects": [{"r1":2,"r2":1,"c1":1,"c2":1}]}"#).unwrap_err();
        assert!(err.to_string().contains("rects[0]"), "{err}");
    }

    #[test]
    fn certificate_round_trip_and_checks() {
        let cert = crate::fooling::certify(&crate::construct::residue_permutation(2));
        let text = cert.to_json();
        assert_eq!(Certificate::from_json(&text).unwrap(), cert);

        let lying = text.replacen("\"size\": 5", "\"size\": 6", 1);
        assert!(Certificate::from_json(&lying).is_err());
        let on_hole =
            r#"{"n":2,"perm":[1,2],"cells":[{"row":1,"col":1}],"size":1,"valid":true,"target":1}"#;
        assert!(Certificate::from_json(on_hole)
            .unwrap_err()
            .to_string()
            .contains("hole"));
    }

    #[test]
    fn solve_result_schema() {
        let perm = Permutation::identity(2);
        let res = crate::solver::min_partition(&perm, &Default::default()).unwrap();
        let value: serde_json::Value = serde_json::from_str(&res.to_json()).unwrap();
        let keys: Vec<_> = value.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, vec!["min_count", "nodes", "optimal", "witness"]);
        let back = SolveResult::from_json(&res.to_json()).unwrap();
        assert_eq!(back.witness, res.witness);
    }
}
