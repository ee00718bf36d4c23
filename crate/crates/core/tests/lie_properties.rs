use proptest::prelude::*;
use smashprod_core::gauss::GaussianRational as Q;
use smashprod_core::lie::{examples, is_f_basis, semidirect_chain, FactorKind, LieAlgebra, Nilpotency};
use smashprod_core::linalg::{Subspace, Vector};

fn corpus() -> Vec<(&'static str, LieAlgebra)> {
    let mut out: Vec<(&str, LieAlgebra)> = vec![
        ("heisenberg", examples::heisenberg()),
        ("solvable2", examples::solvable2()),
        ("filiform4", examples::filiform4()),
        ("upper_triangular3", examples::upper_triangular3()),
    ];
    for (k, name) in [(1, "abelian1"), (2, "abelian2"), (3, "abelian3"), (4, "abelian4")] {
        out.push((name, examples::abelian(k)));
    }
    out
}

/// `L * U` with unit-diagonal triangular factors, so determinant 1.
fn unimodular(n: usize, lower: &[i64], upper: &[i64]) -> Vec<Vector> {
    let l = |i: usize, j: usize| if i == j { 1 } else if j < i { lower[i * n + j] } else { 0 };
    let u = |i: usize, j: usize| if i == j { 1 } else if j > i { upper[i * n + j] } else { 0 };
    (0..n).map(|i| (0..n).map(|j| Q::from_int((0..n).map(|k| l(i, k) * u(k, j)).sum())).collect()).collect()
}

fn dims(series: &[Subspace]) -> Vec<usize> {
    series.iter().map(Subspace::dim).collect()
}

fn check_structure(g: &LieAlgebra) {
    assert!(g.jacobi_check().holds);
    for term in g.lower_central_series() {
        g.check_ideal(&term).unwrap();
    }
    let full = g.full();
    let n = g.nilpotent_radical(&full).unwrap();
    let e = g.exponential_radical(&full).unwrap();
    g.check_ideal(&n).unwrap();
    g.check_ideal(&e).unwrap();
    assert!(n.contains_subspace(&e));
    assert_eq!(e.is_zero(), g.nilpotency_degree() != Nilpotency::NotNilpotent);
    let fb = g.f_basis_of(&n).unwrap();
    assert!(is_f_basis(g.dim(), &g.lower_central_series_of(&n), &fb));
}

#[test]
fn corpus_structure() {
    for (name, g) in corpus() {
        eprintln!("{name}");
        check_structure(&g);
    }
}

#[test]
fn chains_are_ideal_towers() {
    for (_, g) in corpus() {
        let full = g.full();
        for nprime in [g.nilpotent_radical(&full).unwrap(), g.exponential_radical(&full).unwrap()] {
            let chain = semidirect_chain(&g, &nprime, 0).unwrap();
            let vs = chain.vectors();
            assert_eq!(vs.len(), g.dim());
            assert_eq!(Subspace::span(g.dim(), vs.clone()).dim(), g.dim());
            for i in 0..vs.len() {
                let prefix = Subspace::span(g.dim(), vs[..i].iter().cloned());
                let next = Subspace::span(g.dim(), vs[..=i].iter().cloned());
                g.check_stable_under(&next, &prefix).unwrap();
            }
            let deltas = chain.factors.iter().filter(|f| f.kind == FactorKind::DeltaBlock).count();
            assert_eq!(deltas, nprime.dim());
            assert_eq!(chain.p, nprime.dim());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn invariants_survive_basis_change(
        idx in 0usize..8,
        lower in prop::collection::vec(-2i64..=2, 36),
        upper in prop::collection::vec(-2i64..=2, 36),
    ) {
        let (_, g) = corpus().swap_remove(idx);
        let n = g.dim();
        let p = unimodular(n, &lower[..n * n], &upper[..n * n]);
        let names = (1..=n).map(|i| format!("f{i}")).collect();
        let h = g.change_basis(&p, names).unwrap();
        check_structure(&h);
        prop_assert_eq!(dims(&h.lower_central_series()), dims(&g.lower_central_series()));
        prop_assert_eq!(h.nilpotency_degree(), g.nilpotency_degree());
        let (gf, hf) = (g.full(), h.full());
        prop_assert_eq!(h.exponential_radical(&hf).unwrap().dim(), g.exponential_radical(&gf).unwrap().dim());
        let chain_g = semidirect_chain(&g, &g.nilpotent_radical(&gf).unwrap(), 0).unwrap();
        let chain_h = semidirect_chain(&h, &h.nilpotent_radical(&hf).unwrap(), 0).unwrap();
        prop_assert_eq!(chain_h.w_exponents, chain_g.w_exponents);
        prop_assert_eq!(chain_h.m, chain_g.m);
    }

    #[test]
    fn bracket_is_bilinear_and_alternating(
        idx in 0usize..8,
        xs in prop::collection::vec(-3i64..=3, 6),
        ys in prop::collection::vec(-3i64..=3, 6),
        c in -3i64..=3,
    ) {
        let (_, g) = corpus().swap_remove(idx);
        let n = g.dim();
        let x: Vector = xs[..n].iter().map(|&v| Q::from_int(v)).collect();
        let y: Vector = ys[..n].iter().map(|&v| Q::from_int(v)).collect();
        let xy = g.bracket(&x, &y).unwrap();
        let yx = g.bracket(&y, &x).unwrap();
        prop_assert!(xy.iter().zip(&yx).all(|(a, b)| (a + b) == Q::from_int(0)));
        let cx: Vector = x.iter().map(|v| v * &Q::from_int(c)).collect();
        let cxy = g.bracket(&cx, &y).unwrap();
        prop_assert!(cxy.iter().zip(&xy).all(|(a, b)| a == &(b * &Q::from_int(c))));
        prop_assert!(g.bracket(&x, &x).unwrap().iter().all(|v| v == &Q::from_int(0)));
    }
}
