//! The remaining subcommands: Hopf verification and tables, weight
//! comparison, word weights and series norms.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde_json::json;
use smashprod_core::cayley::{distortion_fit, CayleyGroup, DistortionClass, GroupKind, WordWeightTable};
use smashprod_core::gauss::GaussianRational as Q;
use smashprod_core::hopf::{
    automorphism_to_action, commutator_check, derivation_to_action, iterated_smash, lie_chain_actions,
    make_cyclic_group_hopf, make_primitive_series_hopf, smash_product, tensor_product, verify_hopf_axioms, verify_smash,
    Derivation, HopfReport, ModuleAlgebraAction, SmashAlgebra, SparseVec, TruncatedHopf,
};
use smashprod_core::lie::io::load_lie_file;
use smashprod_core::lie::semidirect_chain;
use smashprod_core::weights::{
    equivalent, norm_submultiplicativity_check, product_bound_check, ratio, series_norm, series_norm_exact, EquivalenceVerdict,
    MajorizationReport, SamplerConfig, SeriesNorm, Verdict, Weight,
};

use crate::args::{Expect, Format, Table};
use crate::decompose::Selector;
use crate::error::CliError;

/// Rendered output and whether every verification in it passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            3
        }
    }
}

fn to_json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_string(rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).expect("in-memory writer");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

/// A truncated model named on the command line.
pub enum Model {
    Plain(TruncatedHopf),
    /// A smash product and any extra named checks, `(name, passed, detail)`.
    Smash(Box<SmashAlgebra>, Vec<(String, bool, String)>),
}

impl Model {
    pub fn algebra(&self) -> &TruncatedHopf {
        match self {
            Model::Plain(h) => h,
            Model::Smash(s, _) => s.algebra(),
        }
    }
}

fn q(n: i64) -> Q {
    Q::from_int(n)
}

fn derivation_smash(d: usize, image: SparseVec) -> Result<SmashAlgebra, CliError> {
    let (a, h) = (make_primitive_series_hopf("x", d), make_primitive_series_hopf("y", d));
    let action = derivation_to_action(&h, &a, &Derivation { images: vec![image] })?;
    Ok(smash_product(action)?)
}

/// `series`, `euler` (`y` acting as `x d/dx`), `weyl` (`d/dx`), `cyclic`
/// (`Z/2` acting by `x -> -x`), `trivial`, or `lie:<file>[:E|N]`.
pub fn build_model(target: &str, d: usize) -> Result<Model, CliError> {
    if d == 0 {
        return Err(CliError::Input("truncation degree must be at least 1".into()));
    }
    let model = match target {
        "series" => Model::Plain(make_primitive_series_hopf("x", d)),
        "euler" => Model::Smash(Box::new(derivation_smash(d, SparseVec::from([(1, q(1))]))?), vec![]),
        "weyl" => Model::Smash(Box::new(derivation_smash(d, SparseVec::from([(0, q(1))]))?), vec![]),
        "cyclic" => {
            let a = make_primitive_series_hopf("x", d);
            let g = make_cyclic_group_hopf("g", 2, d);
            let action = automorphism_to_action(&g, &a, &[SparseVec::from([(1, q(-1))])])?;
            Model::Smash(Box::new(smash_product(action)?), vec![])
        }
        "trivial" => {
            let (a, h) = (make_primitive_series_hopf("x", d), make_primitive_series_hopf("y", d));
            let s = smash_product(ModuleAlgebraAction::trivial(h.clone(), a.clone())?)?;
            let diff = s.algebra().table_difference(&tensor_product(&a, &h)?);
            let extra = vec![(
                "tensor-degeneration".to_string(),
                diff.is_none(),
                diff.unwrap_or_else(|| "tables equal".into()),
            )];
            Model::Smash(Box::new(s), extra)
        }
        _ => {
            let Some(rest) = target.strip_prefix("lie:") else {
                return Err(CliError::Input(format!(
                    "unknown target `{target}`; expected series, euler, weyl, cyclic, trivial or lie:<file>[:E|N]"
                )));
            };
            let (path, selector) = match rest.rsplit_once(':') {
                Some((p, sel @ ("E" | "N"))) => (p, sel.parse::<Selector>()?),
                _ => (rest, Selector::N),
            };
            let g = load_lie_file(&PathBuf::from(path))?;
            g.validate()?;
            let full = g.full();
            let nprime = match selector {
                Selector::E => g.exponential_radical(&full)?,
                _ => g.nilpotent_radical(&full)?,
            };
            let chain = semidirect_chain(&g, &nprime, 0)?;
            let s = iterated_smash(&chain, d, &lie_chain_actions(&g, &chain)?)?;
            let extra = if d >= 2 {
                let r = commutator_check(&s, &g, &chain);
                let detail = match &r {
                    Ok(n) => format!("{n} generator pairs"),
                    Err(e) => e.to_string(),
                };
                vec![("commutators".to_string(), r.is_ok(), detail)]
            } else {
                vec![]
            };
            Model::Smash(Box::new(s), extra)
        }
    };
    Ok(model)
}

pub fn model_report(model: &Model) -> HopfReport {
    match model {
        Model::Plain(h) => verify_hopf_axioms(h),
        Model::Smash(s, extra) => {
            let mut r = verify_smash(s);
            for (name, passed, detail) in extra {
                r.checks.push(smashprod_core::hopf::AxiomCheck {
                    name: name.clone(),
                    passed: *passed,
                    checked: 1,
                    witness: (!passed).then(|| detail.clone()),
                });
            }
            r
        }
    }
}

pub fn hopf_verify(target: &str, d: usize, format: Format) -> Result<Outcome, CliError> {
    let report = model_report(&build_model(target, d)?);
    let body = match format {
        Format::Json => to_json(&serde_json::to_value(&report).expect("serializable")),
        Format::Csv => csv_string(
            std::iter::once(vec!["check".into(), "status".into(), "checked".into(), "witness".into()]).chain(
                report.checks.iter().map(|c| {
                    vec![
                        c.name.clone(),
                        if c.passed { "pass" } else { "fail" }.into(),
                        c.checked.to_string(),
                        c.witness.clone().unwrap_or_default(),
                    ]
                }),
            ),
        ),
        Format::Text => format!("{report}status {}\n", if report.passed() { "pass" } else { "fail" }),
    };
    Ok(Outcome { body, passed: report.passed() })
}

/// Multiplication rows are basis pairs with one column per output basis
/// element; coproduct and antipode rows list nonzero entries.
pub fn smash_table(target: &str, d: usize, table: Table) -> Result<Outcome, CliError> {
    let model = build_model(target, d)?;
    let x = model.algebra();
    let names: Vec<String> = (0..x.dim()).map(|i| x.fmt_basis(i)).collect();
    let mut rows: Vec<Vec<String>> = Vec::new();
    match table {
        Table::Mult => {
            rows.push(["left".to_string(), "right".to_string()].into_iter().chain(names.iter().cloned()).collect());
            for i in 0..x.dim() {
                for j in 0..x.dim() {
                    let v = x.mult_entry(i, j);
                    let coeffs = (0..x.dim()).map(|k| v.get(&k).map_or_else(|| "0".to_string(), Q::to_string));
                    rows.push([names[i].clone(), names[j].clone()].into_iter().chain(coeffs).collect());
                }
            }
        }
        Table::Comult => {
            rows.push(vec!["element".into(), "left".into(), "right".into(), "coefficient".into()]);
            for i in 0..x.dim() {
                for (&(l, r), c) in x.comult_entry(i) {
                    rows.push(vec![names[i].clone(), names[l].clone(), names[r].clone(), c.to_string()]);
                }
            }
        }
        Table::Antipode => {
            rows.push(vec!["element".into(), "image".into(), "coefficient".into()]);
            for i in 0..x.dim() {
                for (&k, c) in x.antipode_entry(i) {
                    rows.push(vec![names[i].clone(), names[k].clone(), c.to_string()]);
                }
            }
        }
    }
    Ok(Outcome { body: csv_string(rows), passed: true })
}

fn verdict_json(r: &MajorizationReport) -> serde_json::Value {
    match &r.verdict {
        Verdict::Holds { c, gamma } => json!({"verdict": "holds", "c": c, "gamma": gamma}),
        Verdict::Violated { witness, log_lhs, log_bound } => {
            json!({"verdict": "violated", "witness": witness.to_string(), "log_lhs": log_lhs, "log_bound": log_bound})
        }
        Verdict::Inconclusive { reason } => json!({"verdict": "inconclusive", "reason": reason}),
    }
}

fn verdict_text(r: &MajorizationReport) -> String {
    match &r.verdict {
        Verdict::Holds { c, gamma } => format!("holds with C = {c:.6}, gamma = {gamma:.6}"),
        Verdict::Violated { witness, log_lhs, log_bound } => {
            format!("violated at {witness}: ln lhs = {log_lhs:.6} > ln bound = {log_bound:.6}")
        }
        Verdict::Inconclusive { reason } => format!("inconclusive: {reason}"),
    }
}

pub fn weight_check(
    w1: &str,
    w2: &str,
    cfg: &SamplerConfig,
    expect: Option<Expect>,
    format: Format,
) -> Result<Outcome, CliError> {
    let (a, b): (Weight, Weight) = (w1.parse()?, w2.parse()?);
    let v: EquivalenceVerdict = equivalent(&a, &b, cfg)?;
    let passed = match expect {
        None => true,
        Some(Expect::Holds) => v.forward.verdict.holds(),
        Some(Expect::Violated) => v.forward.verdict.violated(),
        Some(Expect::Equivalent) => v.is_equivalent(),
        Some(Expect::NotEquivalent) => v.label() == "not equivalent",
    };
    let radii = cfg.radii.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
    let body = match format {
        Format::Json => to_json(&json!({
            "w1": a.to_string(), "w2": b.to_string(), "seed": cfg.seed, "radii": cfg.radii, "count": cfg.count,
            "forward": verdict_json(&v.forward), "backward": verdict_json(&v.backward), "relation": v.label(),
        })),
        Format::Csv => csv_string([
            vec!["direction".into(), "verdict".into(), "detail".into()],
            vec!["w1<=w2".into(), v.forward.verdict.label().into(), verdict_text(&v.forward)],
            vec!["w2<=w1".into(), v.backward.verdict.label().into(), verdict_text(&v.backward)],
            vec!["relation".into(), v.label().into(), String::new()],
        ]),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "w1 = {a}\nw2 = {b}\nshells {radii}, {} samples each, seed {}", cfg.count, cfg.seed);
            let _ = writeln!(s, "w1 <= C w2^gamma: {}", verdict_text(&v.forward));
            let _ = writeln!(s, "w2 <= C w1^gamma: {}", verdict_text(&v.backward));
            let _ = writeln!(s, "relation {}", v.label());
            s
        }
    };
    Ok(Outcome { body, passed })
}

pub fn word_weight(group: &str, radius: u32, elements: &[String], subgroup: Option<&str>, format: Format) -> Result<Outcome, CliError> {
    let kind: GroupKind = group.parse()?;
    let table = WordWeightTable::bfs(CayleyGroup::new(kind), radius);
    let grp = table.group();
    let parsed = elements.iter().map(|e| grp.parse_element(e)).collect::<Result<Vec<_>, _>>()?;
    let lengths: Vec<(String, Option<u32>)> = parsed.iter().map(|g| (grp.format_element(g), table.length(g))).collect();
    let fit = match subgroup {
        Some(h) => Some(distortion_fit(&table, &grp.parse_element(h)?)?),
        None => None,
    };
    let class = |f: &smashprod_core::cayley::DistortionFit| match f.class {
        DistortionClass::Polynomial { alpha } => format!("polynomial (alpha = {alpha:.4})"),
        DistortionClass::Exponential => "exponential".to_string(),
    };
    let body = match format {
        Format::Json => to_json(&json!({
            "group": grp.name(), "radius": radius, "ball": table.len(), "spheres": table.sphere_sizes(),
            "lengths": lengths.iter().map(|(g, l)| json!({"element": g, "length": l})).collect::<Vec<_>>(),
            "distortion": fit.as_ref().map(|f| json!({
                "alpha": f.alpha, "power_rss": f.power_rss, "log_rss": f.log_rss,
                "class": match f.class { DistortionClass::Exponential => "exponential", _ => "polynomial" },
                "points": f.points,
            })),
        })),
        Format::Csv => match &fit {
            Some(f) => csv_string(
                std::iter::once(vec!["m".to_string(), "length".to_string()])
                    .chain(f.points.iter().map(|(m, l)| vec![m.to_string(), l.to_string()])),
            ),
            None => csv_string(
                std::iter::once(vec!["radius".to_string(), "sphere".to_string()])
                    .chain(table.sphere_sizes().iter().enumerate().map(|(r, n)| vec![r.to_string(), n.to_string()])),
            ),
        },
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "group {} radius {} ball {}", grp.name(), radius, table.len());
            let spheres: Vec<String> = table.sphere_sizes().iter().map(usize::to_string).collect();
            let _ = writeln!(s, "spheres {}", spheres.join(" "));
            for (g, l) in &lengths {
                match l {
                    Some(n) => {
                        let _ = writeln!(s, "length {g} = {n}, weight 2^{n}");
                    }
                    None => {
                        let _ = writeln!(s, "length {g} > {radius}");
                    }
                }
            }
            if let Some(f) = &fit {
                let _ = writeln!(
                    s,
                    "distortion {} powers, alpha = {:.4}, power rss = {:.4}, log rss = {:.4}, class {}",
                    f.points.len(),
                    f.alpha,
                    f.power_rss,
                    f.log_rss,
                    class(f)
                );
            }
            s
        }
    };
    Ok(Outcome { body, passed: true })
}

pub struct NormArgs<'a> {
    pub r: &'a str,
    pub s: u32,
    pub degree: usize,
    pub random: usize,
    pub product_bound: Option<usize>,
    pub max_p: usize,
    pub series: Option<&'a str>,
    pub seed: u64,
}

pub fn norm(args: &NormArgs<'_>, format: Format) -> Result<Outcome, CliError> {
    let r: Q = args.r.parse().map_err(|e| CliError::Input(format!("--r: {e}")))?;
    if !r.is_real() {
        return Err(CliError::Input("--r must be real".into()));
    }
    let norm = SeriesNorm::new(r.re.clone(), ratio(i64::from(args.s), 1))
        .ok_or_else(|| CliError::Precondition("the norm needs r > 0".into()))?;
    let sub = norm_submultiplicativity_check(args.degree, &norm.r, args.s, args.random, args.seed);
    let bound = args.product_bound.map(|n| product_bound_check(n, args.max_p, args.seed));
    let coeffs = args
        .series
        .map(|s| s.split(',').map(|c| c.trim().parse::<Q>().map_err(|e| CliError::Input(e.to_string()))).collect())
        .transpose()?;
    let value = coeffs.as_ref().map(|c: &Vec<Q>| (series_norm(c, &norm), series_norm_exact(c, &norm).map(|v| v.to_string())));
    let passed = sub.passed() && bound.as_ref().is_none_or(|b| b.violations.is_empty());
    let body = match format {
        Format::Json => to_json(&json!({
            "r": norm.r.to_string(), "s": args.s,
            "submultiplicativity": {"monomial_pairs": sub.monomial_pairs, "random_pairs": sub.random_pairs, "violations": sub.violations.len()},
            "product_bound": bound.as_ref().map(|b| json!({"checked": b.checked, "violations": b.violations.len()})),
            "series_norm": value.as_ref().map(|(f, e)| json!({"float": f, "exact": e})),
        })),
        _ => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "submultiplicativity r = {}, s = {}: {} monomial pairs, {} random pairs, {} violations",
                norm.r, args.s, sub.monomial_pairs, sub.random_pairs, sub.violations.len()
            );
            if let Some(b) = &bound {
                let _ = writeln!(s, "product bound: {} tuples, {} violations", b.checked, b.violations.len());
            }
            if let Some((f, e)) = &value {
                let _ = writeln!(s, "norm {f:.12}{}", e.as_ref().map(|e| format!(" = {e}")).unwrap_or_default());
            }
            let _ = writeln!(s, "status {}", if passed { "pass" } else { "fail" });
            s
        }
    };
    Ok(Outcome { body, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets() {
        for t in ["series", "euler", "cyclic", "trivial"] {
            let o = hopf_verify(t, 3, Format::Text).unwrap();
            assert!(o.passed, "{t}: {}", o.body);
        }
        let weyl = hopf_verify("weyl", 3, Format::Text).unwrap();
        assert!(!weyl.passed);
        assert!(weyl.body.contains("bialgebra        FAIL"));
        assert_eq!(build_model("nope", 3).err().unwrap().exit_code(), 1);
    }

    #[test]
    fn mult_table_shape() {
        let o = smash_table("series", 2, Table::Mult).unwrap();
        let lines: Vec<&str> = o.body.lines().collect();
        assert_eq!(lines[0], "left,right,1,x,x^2");
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[5], "x,x,0,0,1");
    }

    #[test]
    fn weight_expectations() {
        let cfg = SamplerConfig::default();
        assert!(weight_check("poly", "exppow(1)", &cfg, Some(Expect::Holds), Format::Text).unwrap().passed);
        assert!(!weight_check("exppow(1)", "poly", &cfg, Some(Expect::Holds), Format::Text).unwrap().passed);
        assert_eq!(weight_check("poly", "nope", &cfg, None, Format::Text).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn norm_command() {
        let args = NormArgs { r: "2", s: 1, degree: 4, random: 5, product_bound: Some(10), max_p: 3, series: Some("1,2"), seed: 0 };
        let o = norm(&args, Format::Text).unwrap();
        assert!(o.passed);
        assert!(o.body.contains("norm 5.000000000000 = 5"));
    }
}
