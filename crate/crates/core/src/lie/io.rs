//! JSON form of a Lie algebra:
//!
//! ```json
//! {"dim": 3, "basis": ["e1", "e2", "e3"],
//!  "brackets": [{"x": "e1", "y": "e2", "value": [["e3", "1"]]}]}
//! ```
//!
//! Coefficients are strings in the [`GaussianRational`] syntax (integers are
//! also accepted). Omitted brackets are zero. Each pair must be listed with
//! `x` before `y` in basis order, at most once.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{LieAlgebra, LieError};
use crate::gauss::GaussianRational as Q;

#[derive(Debug, Serialize, Deserialize)]
struct LieFile {
    dim: usize,
    basis: Vec<String>,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct BracketEntry {
    x: String,
    y: String,
    value: Vec<(String, Coeff)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Coeff {
    Text(String),
    Int(i64),
}

fn input(msg: impl Into<String>) -> LieError {
    LieError::Input(msg.into())
}

pub fn parse_lie_json(text: &str) -> Result<LieAlgebra, LieError> {
    let file: LieFile = serde_json::from_str(text).map_err(|e| input(format!("malformed JSON: {e}")))?;
    if file.dim != file.basis.len() {
        return Err(input(format!("dim is {} but {} basis names given", file.dim, file.basis.len())));
    }
    let mut seen = BTreeSet::new();
    for name in &file.basis {
        if !seen.insert(name.as_str()) {
            return Err(input(format!("duplicate basis name `{name}`")));
        }
    }
    let index = |name: &str| {
        file.basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| input(format!("unknown basis element `{name}`")))
    };
    let mut pairs = BTreeSet::new();
    let mut entries = Vec::new();
    for b in &file.brackets {
        let (i, j) = (index(&b.x)?, index(&b.y)?);
        if i >= j {
            return Err(input(format!("bracket [{}, {}] must list the earlier basis element first", b.x, b.y)));
        }
        if !pairs.insert((i, j)) {
            return Err(input(format!("bracket [{}, {}] given twice", b.x, b.y)));
        }
        for (name, c) in &b.value {
            let k = index(name)?;
            let c: Q = match c {
                Coeff::Text(s) => s.parse().map_err(|e| input(format!("{e}")))?,
                Coeff::Int(n) => Q::from_int(*n),
            };
            entries.push(((i, j, k), c));
        }
    }
    LieAlgebra::new(file.basis, entries)
}

pub fn load_lie_file(path: &Path) -> Result<LieAlgebra, LieError> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_lie_json(&text)
}

pub fn to_json(g: &LieAlgebra) -> String {
    let names = g.basis_names();
    let mut brackets: Vec<BracketEntry> = Vec::new();
    for (&(i, j, k), c) in g.structure_constants() {
        let term = (names[k].clone(), Coeff::Text(c.to_string()));
        match brackets.last_mut() {
            Some(last) if last.x == names[i] && last.y == names[j] => last.value.push(term),
            _ => brackets.push(BracketEntry { x: names[i].clone(), y: names[j].clone(), value: vec![term] }),
        }
    }
    let file = LieFile { dim: g.dim(), basis: names.to_vec(), brackets };
    serde_json::to_string_pretty(&file).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    #[test]
    fn reads_heisenberg() {
        let text = r#"{"dim": 3, "basis": ["e1","e2","e3"],
            "brackets": [{"x": "e1", "y": "e2", "value": [["e3", "1"]]}]}"#;
        assert_eq!(parse_lie_json(text).unwrap(), heisenberg());
    }

    #[test]
    fn roundtrips_corpus() {
        for g in [heisenberg(), solvable2(), filiform4(), upper_triangular3(), abelian(2)] {
            assert_eq!(parse_lie_json(&to_json(&g)).unwrap(), g);
        }
    }

    #[test]
    fn gaussian_coefficients() {
        let text = r#"{"dim": 2, "basis": ["a","b"],
            "brackets": [{"x": "a", "y": "b", "value": [["b", "1/2+3*i"], ["a", 2]]}]}"#;
        let g = parse_lie_json(text).unwrap();
        assert_eq!(g.basis_bracket(0, 1)[1], "1/2+3*i".parse().unwrap());
        assert_eq!(g.basis_bracket(1, 0)[0], Q::from_int(-2));
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            r#"{"dim": 2, "basis": ["a"]}"#,
            r#"{"dim": 2, "basis": ["a", "a"]}"#,
            r#"{"dim": 2, "basis": ["a","b"], "brackets": [{"x": "b", "y": "a", "value": []}]}"#,
            r#"{"dim": 2, "basis": ["a","b"], "brackets": [{"x": "a", "y": "c", "value": []}]}"#,
            r#"{"dim": 2, "basis": ["a","b"], "brackets": [{"x": "a", "y": "b", "value": [["a", "1/0"]]}]}"#,
            r#"{"dim": 2, "basis": ["a","b"], "brackets": [{"x": "a", "y": "b", "value": []}, {"x": "a", "y": "b", "value": []}]}"#,
            "not json",
        ];
        for text in cases {
            assert!(matches!(parse_lie_json(text), Err(LieError::Input(_))), "{text}");
        }
    }
}
