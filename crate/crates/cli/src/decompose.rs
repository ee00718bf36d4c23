//! The `decompose` pipeline and its report.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};
use smashprod_core::hopf::{
    commutator_check, iterated_smash, lie_chain_actions, make_primitive_series_hopf, verify_hopf_axioms, verify_smash,
};
use smashprod_core::lie::io::parse_lie_json;
use smashprod_core::lie::{parse_factorization, semidirect_chain, DecompositionChain, FactorKind, LieAlgebra};
use smashprod_core::linalg::Subspace;
use smashprod_core::weights::{chain_weight, decompose_check, SamplerConfig, Weight};

use crate::error::CliError;

pub const SCHEMA: &str = "smashprod-decompose/1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    E,
    N,
    Ideal(Vec<String>),
}

impl std::str::FromStr for Selector {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "E" | "e" => Ok(Selector::E),
            "N" | "n" => Ok(Selector::N),
            _ => match s.strip_prefix("ideal:") {
                Some(rest) => Ok(Selector::Ideal(
                    rest.split(',').map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect(),
                )),
                None => Err(CliError::Input(format!("--nprime must be E, N or ideal:<names>, got `{s}`"))),
            },
        }
    }
}

impl std::fmt::Display for Selector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Selector::E => f.write_str("E"),
            Selector::N => f.write_str("N"),
            Selector::Ideal(names) => write!(f, "ideal:{}", names.join(",")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorRow {
    pub name: String,
    pub kind: String,
    pub label: String,
    pub weight: String,
    pub vector: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckLine {
    pub name: String,
    /// `pass`, `fail` or `skipped`.
    pub status: String,
    pub detail: String,
}

impl CheckLine {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        CheckLine { name: name.into(), status: if passed { "pass" } else { "fail" }.into(), detail }
    }

    fn skipped(name: &str, detail: &str) -> Self {
        CheckLine { name: name.into(), status: "skipped".into(), detail: detail.into() }
    }

    pub fn failed(&self) -> bool {
        self.status == "fail"
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub schema: String,
    pub input_digest: String,
    pub basis: Vec<String>,
    pub nilradical: Vec<String>,
    pub exponential_radical: Vec<String>,
    pub e_equals_n: bool,
    pub nprime_selector: String,
    pub nprime: Vec<String>,
    pub p: usize,
    pub m: usize,
    pub w_exponents: Vec<u32>,
    pub tail_dim: usize,
    pub truncation: usize,
    pub factors: Vec<FactorRow>,
    pub factorization: String,
    pub checks: Vec<CheckLine>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(CheckLine::failed)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.factors.iter().map(|f| f.label.as_str()).collect()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let span = |v: &[String]| format!("span{{{}}}", v.join(", "));
        let _ = writeln!(out, "schema {}", self.schema);
        let _ = writeln!(out, "input sha256:{}", self.input_digest);
        let _ = writeln!(out, "basis {}", self.basis.join(" "));
        let _ = writeln!(out, "nilradical N = {}", span(&self.nilradical));
        let _ = writeln!(out, "exponential radical E = {}", span(&self.exponential_radical));
        let _ = writeln!(out, "E = N: {}", if self.e_equals_n { "yes" } else { "no" });
        let _ = writeln!(out, "nprime {} = {}", self.nprime_selector, span(&self.nprime));
        let _ = writeln!(out, "p = {}, m = {}, w = [{}], tail = {}", self.p, self.m, join(&self.w_exponents), self.tail_dim);
        for (i, f) in self.factors.iter().enumerate() {
            let _ = writeln!(out, "factor {} {} {} {} weight={}", i + 1, f.name, f.kind, f.label, f.weight);
        }
        let _ = writeln!(out, "factors {}", self.labels().join(", "));
        let _ = writeln!(out, "factorization {}", self.factorization);
        for c in &self.checks {
            let _ = writeln!(out, "check {} {} {}", c.name, c.status, c.detail);
        }
        let _ = writeln!(out, "status {}", if self.passed() { "pass" } else { "fail" });
        out
    }

    pub fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let _ = w.write_record(["index", "name", "kind", "label", "weight"]);
        for (i, f) in self.factors.iter().enumerate() {
            let _ = w.write_record([&(i + 1).to_string(), &f.name, &f.kind, &f.label, &f.weight]);
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
    }
}

fn join(ws: &[u32]) -> String {
    ws.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")
}

fn names(g: &LieAlgebra, s: &Subspace) -> Vec<String> {
    s.basis().iter().map(|v| g.fmt_element(v)).collect()
}

/// Weights of the factors with the exp-blocks in weight order, matching the
/// coordinate order of [`chain_weight`].
pub fn factor_weights(chain: &DecompositionChain) -> Vec<Weight> {
    let of = |k: FactorKind| chain.factors.iter().filter(move |f| f.kind == k).map(|f| f.weight.clone());
    of(FactorKind::DeltaBlock)
        .chain(of(FactorKind::ExpBlock).collect::<Vec<_>>().into_iter().rev())
        .chain(of(FactorKind::ReductiveTail))
        .collect()
}

/// Smash-product checks for a chain: the iterated smash with its Hopf axioms
/// and generator commutators.
pub fn smash_checks(g: &LieAlgebra, chain: &DecompositionChain, d: usize) -> Result<Vec<CheckLine>, CliError> {
    if chain.tail_dim > 0 {
        return Ok(vec![CheckLine::skipped("hopf", "reductive tail is symbolic")]);
    }
    let vs = chain.vectors();
    if vs.len() < 2 {
        let checks = vs
            .first()
            .map(|_| {
                let r = verify_hopf_axioms(&make_primitive_series_hopf(&chain.factors[0].name, d));
                CheckLine::new("hopf", r.passed(), hopf_detail(&r))
            })
            .unwrap_or_else(|| CheckLine::skipped("hopf", "empty chain"));
        return Ok(vec![checks]);
    }
    let s = iterated_smash(chain, d, &lie_chain_actions(g, chain)?)?;
    let r = verify_smash(&s);
    let mut out = vec![CheckLine::new("hopf", r.passed(), hopf_detail(&r))];
    out.push(if d < 2 {
        CheckLine::skipped("commutators", "truncation below 2")
    } else {
        match commutator_check(&s, g, chain) {
            Ok(n) => CheckLine::new("commutators", true, format!("{n} generator pairs")),
            Err(e) => CheckLine::new("commutators", false, e.to_string()),
        }
    });
    Ok(out)
}

fn hopf_detail(r: &smashprod_core::hopf::HopfReport) -> String {
    match r.first_failure() {
        None => format!("D={} dim={} {} axioms", r.truncation, r.dim, r.checks.len()),
        Some(c) => format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()),
    }
}

pub fn decompose_text(text: &str, selector: &Selector, tail_dim: usize, d: usize, seed: u64) -> Result<DecompositionReport, CliError> {
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    let g = parse_lie_json(text)?;
    g.validate()?;
    let full = g.full();
    let n = g.nilpotent_radical(&full)?;
    let e = g.exponential_radical(&full)?;
    let nprime = match selector {
        Selector::E => e.clone(),
        Selector::N => n.clone(),
        Selector::Ideal(list) => g.span_of_names(&list.iter().map(String::as_str).collect::<Vec<_>>())?,
    };
    let chain = semidirect_chain(&g, &nprime, tail_dim)?;

    let factorization = chain.factorization();
    let mut checks = Vec::new();
    let roundtrip = parse_factorization(&factorization).map(|l| l == chain.labels()).unwrap_or(false);
    checks.push(CheckLine::new("factorization-roundtrip", roundtrip, factorization.clone()));
    checks.extend(smash_checks(&g, &chain, d)?);
    let parts = factor_weights(&chain);
    let verdict = decompose_check(&chain_weight(&chain), &parts, &SamplerConfig::with_seed(seed))?;
    checks.push(CheckLine::new(
        "chain-weight",
        verdict.is_equivalent(),
        format!("{} vs tensor of factor weights: {}", chain_weight(&chain), verdict.label()),
    ));

    let factors = chain
        .factors
        .iter()
        .map(|f| FactorRow {
            name: f.name.clone(),
            kind: f.kind.as_str().into(),
            label: f.label.to_string(),
            weight: f.weight.to_string(),
            vector: f.vector.as_ref().map(|v| g.fmt_element(v)),
        })
        .collect();
    Ok(DecompositionReport {
        schema: SCHEMA.into(),
        input_digest: digest,
        basis: g.basis_names().to_vec(),
        nilradical: names(&g, &n),
        exponential_radical: names(&g, &e),
        e_equals_n: e == n,
        nprime_selector: selector.to_string(),
        nprime: names(&g, &nprime),
        p: chain.p,
        m: chain.m,
        w_exponents: chain.w_exponents.clone(),
        tail_dim,
        truncation: d,
        factors,
        factorization,
        checks,
    })
}

pub fn decompose(path: &Path, selector: &Selector, tail_dim: usize, d: usize, seed: u64) -> Result<DecompositionReport, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    decompose_text(&text, selector, tail_dim, d, seed)
}
