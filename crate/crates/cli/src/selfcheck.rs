//! `selfcheck`: the invariant suites of every module in one run.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::json;
use smashprod_core::cayley::{
    delta_smash_check, distortion_fit, heisenberg_as_semidirect, matrix_action_setup, weighted_l1_submult_check,
    CayleyGroup, DistortionClass, GroupKind, WordWeightTable,
};
use smashprod_core::gauss::GaussianRational as Q;
use smashprod_core::hopf::{make_primitive_series_hopf, verify_hopf_axioms};
use smashprod_core::lie::io::load_lie_file;
use smashprod_core::lie::{examples, semidirect_chain, LieAlgebra, Nilpotency};
use smashprod_core::weights::{majorizes, WordWeight, norm_submultiplicativity_check, product_bound_check, ratio, SamplerConfig, Verdict, Weight};

use crate::args::Format;
use crate::commands::{build_model, model_report, Outcome};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Line {
    pub module: &'static str,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

struct Suite {
    lines: Vec<Line>,
    module: &'static str,
}

impl Suite {
    fn push(&mut self, check: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.lines.push(Line { module: self.module, check: check.into(), passed, detail: detail.into() });
    }
}

pub fn corpus() -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("abelian1", examples::abelian(1)),
        ("abelian2", examples::abelian(2)),
        ("abelian3", examples::abelian(3)),
        ("abelian4", examples::abelian(4)),
        ("heisenberg", examples::heisenberg()),
        ("solv2", examples::solvable2()),
        ("filiform4", examples::filiform4()),
        ("upper_tri3", examples::upper_triangular3()),
    ]
}

/// Radical invariants of a solvable algebra; `Err` carries the witness.
pub fn radical_invariants(g: &LieAlgebra) -> Result<String, String> {
    let jac = g.jacobi_check();
    if !jac.holds {
        let (i, j, k) = jac.violations[0];
        let n = g.basis_names();
        return Err(format!("Jacobi fails on ({}, {}, {})", n[i], n[j], n[k]));
    }
    for (c, term) in g.lower_central_series().iter().enumerate() {
        g.check_ideal(term).map_err(|e| format!("g_{}: {e}", c + 1))?;
    }
    let full = g.full();
    let n = g.nilpotent_radical(&full).map_err(|e| e.to_string())?;
    let e = g.exponential_radical(&full).map_err(|e| e.to_string())?;
    if !n.contains_subspace(&e) {
        return Err("E is not contained in N".into());
    }
    let nilpotent = g.nilpotency_degree() != Nilpotency::NotNilpotent;
    if e.is_zero() != nilpotent {
        return Err(format!("E = 0 is {} but nilpotent is {nilpotent}", e.is_zero()));
    }
    Ok(format!("dim N = {}, dim E = {}", n.dim(), e.dim()))
}

fn lie_suite(s: &mut Suite, extra: &[PathBuf]) -> Result<(), CliError> {
    for (name, g) in corpus() {
        let r = radical_invariants(&g);
        s.push(format!("radicals/{name}"), r.is_ok(), r.unwrap_or_else(|e| e));
    }
    let broken = examples::broken_sl2().jacobi_check();
    s.push("jacobi-negative-control", !broken.holds, format!("{} violating triple(s)", broken.violations.len()));
    let cases: [(&str, LieAlgebra, bool, &str); 3] = [
        ("heisenberg/N", examples::heisenberg(), false, "((C[[e3]] # O(C)) # O(C))"),
        ("heisenberg/E", examples::heisenberg(), true, "((A_1 # O(C)) # O(C))"),
        ("solv2/E", examples::solvable2(), true, "(C[[e2]] # O(C))"),
    ];
    for (name, g, use_e, expected) in cases {
        let full = g.full();
        let nprime = if use_e { g.exponential_radical(&full)? } else { g.nilpotent_radical(&full)? };
        let got = semidirect_chain(&g, &nprime, 0)?.factorization();
        s.push(format!("chain/{name}"), got == expected, got);
    }
    for path in extra {
        let g = load_lie_file(path)?;
        let r = radical_invariants(&g);
        s.push(format!("file/{}", path.display()), r.is_ok(), r.unwrap_or_else(|e| e));
    }
    Ok(())
}

fn hopf_suite(s: &mut Suite, d: usize) -> Result<(), CliError> {
    for target in ["series", "euler", "cyclic", "trivial"] {
        let r = model_report(&build_model(target, d)?);
        let detail = r.first_failure().map_or_else(|| format!("{} checks", r.checks.len()), |c| format!("{c:?}"));
        s.push(format!("axioms/{target}"), r.passed(), detail);
    }
    let heis = std::env::temp_dir().join(format!("smashprod-selfcheck-{}.json", std::process::id()));
    std::fs::write(&heis, smashprod_core::lie::io::to_json(&examples::heisenberg()))
        .map_err(|e| CliError::Input(e.to_string()))?;
    let r = build_model(&format!("lie:{}", heis.display()), d).map(|m| model_report(&m));
    let _ = std::fs::remove_file(&heis);
    let r = r?;
    let detail = r.first_failure().map_or_else(|| format!("{} checks", r.checks.len()), |c| format!("{c:?}"));
    s.push("axioms/heisenberg-iterated", r.passed(), detail);
    let mut corrupt = make_primitive_series_hopf("x", d);
    corrupt.perturb_comult(d.min(2), 1.min(d), 0, Q::from_int(1));
    let caught = !verify_hopf_axioms(&corrupt).passed();
    s.push("coproduct-negative-control", caught, "perturbed coproduct is rejected");
    Ok(())
}

fn weights_suite(s: &mut Suite, seed: u64) -> Result<(), CliError> {
    let cfg = SamplerConfig::with_seed(seed);
    let parse = |w: &str| w.parse::<Weight>().map_err(CliError::from);
    let r = majorizes(&parse("poly")?, &parse("exppow(1)")?, &cfg)?;
    let ok = matches!(r.verdict, Verdict::Holds { gamma, .. } if gamma <= 1.05);
    s.push("poly<=exppow(1)", ok, r.verdict.label());
    let v = smashprod_core::weights::equivalent(&parse("poly")?, &parse("pow(poly, 0.5)")?, &cfg)?;
    s.push("poly~sqrt(poly)", v.is_equivalent(), v.label());
    let w = "expabs(1, 1)";
    let parts = parse(&format!("tensor(restrict({w}, 0), restrict({w}, 1))"))?;
    let r = majorizes(&parts, &parse(w)?, &cfg)?;
    let detail = match &r.verdict {
        Verdict::Violated { witness, .. } => format!("witness {witness}"),
        other => other.label().to_string(),
    };
    s.push("non-decomposable", r.verdict.violated(), detail);
    for (rn, sn) in [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)] {
        let rep = norm_submultiplicativity_check(8, &ratio(rn, 1), sn, 100, seed);
        s.push(format!("norm-submult/r={rn},s={sn}"), rep.passed(), format!("{} violations", rep.violations.len()));
    }
    let b = product_bound_check(1000, 6, seed);
    s.push("product-bound", b.violations.is_empty(), format!("{} tuples", b.checked));
    Ok(())
}

fn cayley_suite(s: &mut Suite, seed: u64) -> Result<(), CliError> {
    for (name, setup) in [("heis3z", heisenberg_as_semidirect()), ("Z x|-1 Z", matrix_action_setup(vec![vec![-1]])?)] {
        let r = delta_smash_check(&setup, 200, seed)?;
        s.push(format!("delta-smash/{name}"), r.passed(), r.failure.unwrap_or_else(|| format!("{} quadruples", r.quadruples)));
    }
    let fit = |kind: &str, radius: u32, h: &[i64]| -> Result<_, CliError> {
        let t = WordWeightTable::bfs(CayleyGroup::new(kind.parse::<GroupKind>()?), radius);
        Ok(distortion_fit(&t, &h.iter().copied().collect())?)
    };
    let heis = fit("heis3z", 20, &[0, 0, 1])?;
    s.push("distortion/heis3z-center", (1.7..=2.3).contains(&heis.alpha), format!("alpha = {:.4}", heis.alpha));
    let zk = fit("zk:3", 20, &[1, 0, 0])?;
    s.push("distortion/zk", (0.9..=1.1).contains(&zk.alpha), format!("alpha = {:.4}", zk.alpha));
    let bs = fit("bs12", 20, &[1, 0, 0])?;
    s.push("distortion/bs12-a", bs.class == DistortionClass::Exponential, format!("{:?}", bs.class));
    let grp = CayleyGroup::new(GroupKind::Heis3Z);
    let table = WordWeightTable::bfs(grp.clone(), 8);
    let w = Weight::Word(WordWeight(std::sync::Arc::new(table)));
    let r = weighted_l1_submult_check(&grp, &w, 200, 4, seed)?;
    s.push("l1-submult/heis3z-word", r.holds(), format!("{} pairs", r.pairs));
    Ok(())
}

pub fn selfcheck(d: usize, seed: u64, extra: &[PathBuf], format: Format) -> Result<Outcome, CliError> {
    if d == 0 {
        return Err(CliError::Input("truncation degree must be at least 1".into()));
    }
    let mut lines = Vec::new();
    let mut run = |module: &'static str, f: &dyn Fn(&mut Suite) -> Result<(), CliError>| -> Result<(), CliError> {
        let mut s = Suite { lines: Vec::new(), module };
        f(&mut s)?;
        lines.extend(s.lines);
        Ok(())
    };
    run("lie_core", &|s| lie_suite(s, extra))?;
    run("hopf_core", &|s| hopf_suite(s, d))?;
    run("weights", &|s| weights_suite(s, seed))?;
    run("cayley", &|s| cayley_suite(s, seed))?;
    let passed = lines.iter().all(|l| l.passed);
    let warning = (d < 2).then_some("reduced coverage: commutator checks need truncation degree 2 or more");
    let body = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({
                "truncation": d, "seed": seed, "warning": warning, "lines": lines, "passed": passed,
            }))
            .expect("serializable");
            s.push('\n');
            s
        }
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "selfcheck D={d} seed={seed}");
            if let Some(w) = warning {
                let _ = writeln!(s, "warning {w}");
            }
            for l in &lines {
                let _ = writeln!(s, "{:<10} {:<32} {} {}", l.module, l.check, if l.passed { "pass" } else { "FAIL" }, l.detail);
            }
            let _ = writeln!(s, "status {}", if passed { "pass" } else { "fail" });
            s
        }
    };
    Ok(Outcome { body, passed })
}
