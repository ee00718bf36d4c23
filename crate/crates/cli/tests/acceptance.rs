//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed; exits non-zero if any fails.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;
use smashprod_core::cayley::{
    delta_smash_check, distortion_fit, heisenberg_as_semidirect, matrix_action_setup, CayleyGroup, DistortionClass,
    GroupKind, WordWeightTable,
};
use smashprod_core::gauss::GaussianRational as Q;
use smashprod_core::hopf::{
    commutator_check, derivation_to_action, iterated_smash, lie_chain_actions, make_primitive_series_hopf,
    smash_multiply, smash_product, tensor_product, verify_hopf_axioms, verify_smash, Derivation, Generator,
    ModuleAlgebraAction, SmashAlgebra, SparseVec, TruncatedHopf,
};
use smashprod_core::lie::io::load_lie_file;
use smashprod_core::lie::{examples, semidirect_chain, LieAlgebra};
use smashprod_core::linalg::{coordinates, rank, Vector};
use smashprod_core::weights::{
    equivalent, majorizes, norm_submultiplicativity_check, product_bound_check, ratio, Point, SamplerConfig, Verdict,
    Weight,
};

type Outcome = Result<String, String>;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_cli(args: &[&str]) -> Result<(String, Duration), String> {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_smashprod")).args(args).output().map_err(|e| e.to_string())?;
    let took = t.elapsed();
    ensure(out.status.success(), || format!("{args:?} exited with {:?}", out.status.code()))?;
    Ok((String::from_utf8_lossy(&out.stdout).into_owned(), took))
}

fn line<'a>(body: &'a str, prefix: &str) -> Option<&'a str> {
    body.lines().find_map(|l| l.strip_prefix(prefix))
}

fn criterion_1() -> Outcome {
    let cases = [
        ("heisenberg.json", "N", "C[[e3]], O(C), O(C)", None),
        ("heisenberg.json", "E", "A_1, O(C), O(C)", None),
        ("solv2.json", "E", "C[[e2]], O(C)", Some("yes")),
    ];
    let mut slowest = Duration::ZERO;
    for (file, sel, factors, e_is_n) in cases {
        let path = data(file);
        let (body, took) = run_cli(&["decompose", path.to_str().unwrap(), "--nprime", sel])?;
        slowest = slowest.max(took);
        let got = line(&body, "factors ").unwrap_or("<missing>");
        ensure(got == factors, || format!("{file} --nprime {sel}: factors {got}, expected {factors}"))?;
        if let Some(want) = e_is_n {
            let got = line(&body, "E = N: ").unwrap_or("<missing>");
            ensure(got == want, || format!("{file}: E = N reported {got}"))?;
        }
        ensure(line(&body, "status ") == Some("pass"), || format!("{file} --nprime {sel}: status not pass"))?;
        ensure(took < Duration::from_secs(1), || format!("{file} --nprime {sel}: {took:?} >= 1 s"))?;
    }
    Ok(format!("3 decompositions match, slowest {:.0} ms", slowest.as_secs_f64() * 1e3))
}

fn ad_matrices(g: &LieAlgebra) -> Vec<Vec<Vector>> {
    (0..g.dim()).map(|i| (0..g.dim()).map(|j| g.basis_bracket(i, j).clone()).collect()).collect()
}

/// Nilpotency by brute force: every product of `dim` adjoint operators on
/// every basis vector must vanish.
fn nilpotent_by_words(g: &LieAlgebra) -> bool {
    let n = g.dim();
    let ad = ad_matrices(g);
    let apply = |i: usize, v: &Vector| -> Vector {
        let mut out = vec![Q::zero(); n];
        for (j, c) in v.iter().enumerate() {
            if !c.is_zero() {
                for (k, x) in ad[i][j].iter().enumerate() {
                    out[k] = out[k].clone() + c.clone() * x.clone();
                }
            }
        }
        out
    };
    let mut layer: Vec<Vector> = (0..n).map(|k| g.basis_vector(k)).collect();
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &layer {
            for i in 0..n {
                let w = apply(i, v);
                if w.iter().any(|c| !c.is_zero()) {
                    next.push(w);
                }
            }
        }
        // Keep a spanning set only.
        let mut kept: Vec<Vector> = Vec::new();
        for w in next {
            let mut trial = kept.clone();
            trial.push(w.clone());
            if rank(&trial, n) > kept.len() {
                kept.push(w);
            }
        }
        layer = kept;
    }
    layer.is_empty()
}

fn is_ideal_by_brackets(g: &LieAlgebra, basis: &[Vector]) -> bool {
    let n = g.dim();
    let r = rank(basis, n);
    (0..n).all(|i| {
        basis.iter().all(|v| {
            let mut rows = basis.to_vec();
            rows.push(g.bracket(&g.basis_vector(i), v).expect("dimensions agree"));
            rank(&rows, n) == r
        })
    })
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let corpus: Vec<(&str, LieAlgebra)> = vec![
        ("abelian1", examples::abelian(1)),
        ("abelian2", examples::abelian(2)),
        ("abelian3", examples::abelian(3)),
        ("abelian4", examples::abelian(4)),
        ("heisenberg", examples::heisenberg()),
        ("solv2", examples::solvable2()),
        ("filiform4", examples::filiform4()),
        ("upper_tri3", examples::upper_triangular3()),
    ];
    for (name, g) in &corpus {
        let full = g.full();
        let n = g.nilpotent_radical(&full).map_err(|e| format!("{name}: {e}"))?;
        let e = g.exponential_radical(&full).map_err(|e| format!("{name}: {e}"))?;
        ensure(n.contains_subspace(&e), || format!("{name}: E not inside N"))?;
        let nil = nilpotent_by_words(g);
        ensure(e.is_zero() == nil, || format!("{name}: E = 0 is {} but nilpotent is {nil}", e.is_zero()))?;
        for (c, term) in g.lower_central_series().iter().enumerate() {
            ensure(is_ideal_by_brackets(g, term.basis()), || format!("{name}: g_{} is not an ideal", c + 1))?;
        }
        ensure(is_ideal_by_brackets(g, n.basis()) && is_ideal_by_brackets(g, e.basis()), || {
            format!("{name}: a radical is not an ideal")
        })?;
    }
    let took = t.elapsed();
    ensure(took < Duration::from_secs(1), || format!("{took:?} >= 1 s"))?;
    Ok(format!("{} algebras, {:.0} ms", corpus.len(), took.as_secs_f64() * 1e3))
}

fn q(n: i64) -> Q {
    Q::from_int(n)
}

fn report_ok(label: &str, r: &smashprod_core::hopf::HopfReport) -> Result<usize, String> {
    match r.first_failure() {
        None => Ok(r.checks.len()),
        Some(c) => Err(format!("{label}: {} fails: {}", c.name, c.witness.clone().unwrap_or_default())),
    }
}

fn pair_vec(s: &SmashAlgebra, a: &[u32], h: &[u32]) -> SparseVec {
    let ia = s.a().index_of(a).expect("basis monomial");
    let ih = s.h().index_of(h).expect("basis monomial");
    SparseVec::from([(s.pair_to_index(ia, ih).expect("within truncation"), q(1))])
}

/// Brackets straight from the data file, without the library parser.
fn raw_brackets(path: &Path) -> (Vec<String>, BTreeMap<(usize, usize), Vec<Q>>) {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let names: Vec<String> = v["basis"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect();
    let idx = |s: &Value| names.iter().position(|n| n == s.as_str().unwrap()).unwrap();
    let mut out = BTreeMap::new();
    for b in v["brackets"].as_array().unwrap() {
        let (x, y) = (idx(&b["x"]), idx(&b["y"]));
        let mut val = vec![q(0); names.len()];
        for term in b["value"].as_array().unwrap() {
            let c: i64 = term[1].as_str().unwrap().parse().unwrap();
            val[idx(&term[0])] = q(c);
        }
        out.insert((y, x), val.iter().map(|c| -c.clone()).collect());
        out.insert((x, y), val);
    }
    (names, out)
}

fn raw_bracket(table: &BTreeMap<(usize, usize), Vec<Q>>, n: usize, u: &[Q], v: &[Q]) -> Vec<Q> {
    let mut out = vec![q(0); n];
    for (i, a) in u.iter().enumerate() {
        for (j, b) in v.iter().enumerate() {
            if let Some(val) = table.get(&(i, j)) {
                for k in 0..n {
                    out[k] = out[k].clone() + a.clone() * b.clone() * val[k].clone();
                }
            }
        }
    }
    out
}

fn criterion_3() -> Outcome {
    const D: usize = 4;
    let t = Instant::now();
    let series = make_primitive_series_hopf("x", D);
    let mut checks = report_ok("C[[x]]", &verify_hopf_axioms(&series))?;

    let (a, h) = (make_primitive_series_hopf("x", D), make_primitive_series_hopf("y", D));
    let euler = derivation_to_action(&h, &a, &Derivation { images: vec![SparseVec::from([(1, q(1))])] })
        .map_err(|e| e.to_string())?;
    let euler = smash_product(euler).map_err(|e| e.to_string())?;
    checks += report_ok("euler smash", &verify_smash(&euler))?;
    // (1 # y)(x # 1) = x # y + x # 1 when y acts as x d/dx.
    let lhs = smash_multiply(&euler, &pair_vec(&euler, &[0], &[1]), &pair_vec(&euler, &[1], &[0]));
    let mut rhs = pair_vec(&euler, &[1], &[1]);
    rhs.extend(pair_vec(&euler, &[1], &[0]));
    ensure(lhs == rhs, || "euler smash: (1#y)(x#1) != x#y + x#1".into())?;

    let a2 = TruncatedHopf::commutative(vec![Generator::primitive("x1"), Generator::primitive("x2")], D);
    let nil = Derivation::linear(&a2, &[vec![q(0), q(1)], vec![q(0), q(0)]]).map_err(|e| e.to_string())?;
    let nil = smash_product(derivation_to_action(&h, &a2, &nil).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    checks += report_ok("C[x1,x2] smash", &verify_smash(&nil))?;

    let path = data("heisenberg.json");
    let g = load_lie_file(&path).map_err(|e| e.to_string())?;
    let chain = semidirect_chain(&g, &g.nilpotent_radical(&g.full()).map_err(|e| e.to_string())?, 0)
        .map_err(|e| e.to_string())?;
    let actions = lie_chain_actions(&g, &chain).map_err(|e| e.to_string())?;
    let heis = iterated_smash(&chain, D, &actions).map_err(|e| e.to_string())?;
    checks += report_ok("heisenberg iterated smash", &verify_smash(&heis))?;
    let pairs = commutator_check(&heis, &g, &chain).map_err(|e| e.to_string())?;
    let (names, table) = raw_brackets(&path);
    let alg = heis.algebra();
    let vs = chain.vectors();
    let gens: Vec<SparseVec> =
        (0..vs.len()).map(|k| alg.basis_vec(alg.generator_index(k).expect("degree 1"))).collect();
    for j in 0..vs.len() {
        for i in 0..j {
            let mut comm = smash_multiply(&heis, &gens[j], &gens[i]);
            for (k, c) in smash_multiply(&heis, &gens[i], &gens[j]) {
                let e = comm.entry(k).or_insert_with(|| q(0));
                *e = e.clone() - c;
            }
            comm.retain(|_, c| !c.is_zero());
            let want = raw_bracket(&table, names.len(), &vs[j], &vs[i]);
            let coords = coordinates(&vs, &want).ok_or("chain vectors do not span")?;
            let mut expect = SparseVec::new();
            for (k, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    expect.insert(alg.generator_index(k).unwrap(), c);
                }
            }
            ensure(comm == expect, || format!("commutator of generators {j},{i} differs from the input bracket"))?;
        }
    }

    let triv = smash_product(ModuleAlgebraAction::trivial(h.clone(), a.clone()).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let tensor = tensor_product(&a, &h).map_err(|e| e.to_string())?;
    if let Some(diff) = triv.algebra().table_difference(&tensor) {
        return Err(format!("trivial action differs from the tensor product: {diff}"));
    }
    checks += report_ok("tensor product", &verify_hopf_axioms(&tensor))?;
    let took = t.elapsed();
    ensure(took < Duration::from_secs(10), || format!("{took:?} >= 10 s"))?;
    Ok(format!("{checks} axiom checks, {pairs} commutator pairs, {:.2} s", took.as_secs_f64()))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn criterion_4() -> Outcome {
    let seed = 7;
    let mut pairs = 0;
    for r in [1, 2] {
        for s in [0, 1, 2] {
            let rep = norm_submultiplicativity_check(8, &ratio(r, 1), s, 100, seed);
            ensure(rep.passed(), || format!("r={r}, s={s}: {} violations", rep.violations.len()))?;
            ensure(rep.random_pairs == 100, || format!("r={r}, s={s}: {} random pairs", rep.random_pairs))?;
            pairs += rep.monomial_pairs + rep.random_pairs;
        }
    }
    // Monomials in closed form: (k+m)!^s <= 2^{s(k+m)} (k! m!)^s.
    for k in 0..=8u32 {
        for m in 0..=8u32 {
            let binom = factorial(k + m) / (factorial(k) * factorial(m));
            ensure(binom <= BigInt::from(2).pow(k + m), || format!("binomial bound fails at ({k}, {m})"))?;
        }
    }
    let b = product_bound_check(10_000, 6, seed);
    ensure(b.violations.is_empty(), || format!("product bound: {} violations", b.violations.len()))?;
    let s: Vec<BigRational> = [3, 0, 5].iter().map(|&n| ratio(n, 2)).collect();
    let (sum, prod) = s.iter().fold((BigRational::one(), BigRational::one()), |(a, p), x| {
        (a + x, p * (BigRational::one() + x))
    });
    ensure(sum <= prod && prod <= num_traits::pow(sum.clone(), 3), || "product bound hand case fails".into())?;
    Ok(format!("{pairs} norm pairs, {} product tuples, zero violations", b.checked))
}

fn on_antidiagonal(p: &Point) -> bool {
    match p {
        Point::Complex(z) if z.len() == 2 => {
            let scale = z[0].norm().max(z[1].norm());
            scale > 0.0 && (z[0] + z[1]).norm() <= 1e-6 * scale
        }
        _ => false,
    }
}

fn criterion_5() -> Outcome {
    let w = |s: &str| s.parse::<Weight>().map_err(|e| e.to_string());
    let mut gammas = Vec::new();
    for seed in [0, 1, 2] {
        let cfg = SamplerConfig::with_seed(seed);
        let r = majorizes(&w("poly")?, &w("exppow(1)")?, &cfg).map_err(|e| e.to_string())?;
        match r.verdict {
            Verdict::Holds { gamma, .. } if gamma <= 1.05 => gammas.push(gamma),
            v => return Err(format!("seed {seed}: poly <= exppow(1) gave {v:?}")),
        }
        let v = equivalent(&w("poly")?, &w("pow(poly, 0.5)")?, &cfg).map_err(|e| e.to_string())?;
        ensure(v.is_equivalent(), || format!("seed {seed}: sqrt pair reported {}", v.label()))?;
        let joint = "expabs(1, 1)";
        let split = w(&format!("tensor(restrict({joint}, 0), restrict({joint}, 1))"))?;
        let r = majorizes(&split, &w(joint)?, &cfg).map_err(|e| e.to_string())?;
        match &r.verdict {
            Verdict::Violated { witness, .. } if on_antidiagonal(witness) => {}
            v => return Err(format!("seed {seed}: e^|u+v| case gave {v:?}")),
        }
    }
    let worst = gammas.iter().copied().fold(f64::MIN, f64::max);
    Ok(format!("3 seeds agree, max gamma {worst:.4}"))
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let fit = |kind: &str, h: &[i64]| -> Result<_, String> {
        let table = WordWeightTable::bfs(CayleyGroup::new(kind.parse::<GroupKind>().map_err(|e| e.to_string())?), 20);
        distortion_fit(&table, &h.iter().copied().collect()).map_err(|e| e.to_string())
    };
    let heis = fit("heis3z", &[0, 0, 1])?;
    ensure((1.7..=2.3).contains(&heis.alpha), || format!("heis3z center alpha = {:.4}", heis.alpha))?;
    let heis_table = WordWeightTable::bfs(CayleyGroup::new(GroupKind::Heis3Z), 20);
    for n in 1..=5i64 {
        // z^{n^2} = [x^n, y^n] has length at most 4n.
        let len = heis_table.length(&[0, 0, n * n].into_iter().collect());
        ensure(len.is_some_and(|l| l <= 4 * n as u32), || format!("len(z^{}) = {len:?} > {}", n * n, 4 * n))?;
    }
    let mut zk = Vec::new();
    for k in 1..=3usize {
        for i in 0..k {
            let mut h = vec![0; k];
            h[i] = 1;
            let f = fit(&format!("zk:{k}"), &h)?;
            ensure((0.9..=1.1).contains(&f.alpha), || format!("Z^{k} generator {i}: alpha = {:.4}", f.alpha))?;
            zk.push(f.alpha);
        }
    }
    let bs = fit("bs12", &[1, 0, 0])?;
    ensure(bs.class == DistortionClass::Exponential, || format!("bs12 <a> classified {:?}", bs.class))?;
    let took = t.elapsed();
    ensure(took < Duration::from_secs(60), || format!("{took:?} >= 60 s"))?;
    Ok(format!("heis alpha {:.4}, {} Z^k fits in [0.9, 1.1], bs12 exponential, {:.1} s", heis.alpha, zk.len(), took.as_secs_f64()))
}

fn criterion_7() -> Outcome {
    let setups = [
        ("heis3Z", heisenberg_as_semidirect()),
        ("Z x|-1 Z", matrix_action_setup(vec![vec![-1]]).map_err(|e| e.to_string())?),
    ];
    for (name, setup) in &setups {
        let r = delta_smash_check(setup, 200, 11).map_err(|e| e.to_string())?;
        ensure(r.quadruples == 200, || format!("{name}: {} quadruples", r.quadruples))?;
        if let Some(f) = r.failure {
            return Err(format!("{name}: {f}"));
        }
    }
    Ok("200 quadruples on each of heis3Z and Z x|-1 Z".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("decomposition examples", criterion_1),
        ("radical suite", criterion_2),
        ("hopf and smash suite", criterion_3),
        ("norm suite", criterion_4),
        ("weight suite", criterion_5),
        ("distortion suite", criterion_6),
        ("group algebra smash", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (status, detail) = match f() {
            Ok(d) => ("pass", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {} {:<24} {status}  {detail}", i + 1, name);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
