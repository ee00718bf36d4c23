//! Delta-level group-algebra checks: the smash product `C[N] # C[U]` against
//! the group algebra of `N x| U`, and weighted `l1` submultiplicativity.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::smallvec;

use super::{CayleyError, CayleyGroup, GroupElement, GroupKind, Matrix};
use crate::weights::{Point, Weight, WeightError};

type Action = Box<dyn Fn(&GroupElement, &GroupElement) -> GroupElement + Send + Sync>;
type Embedding = Box<dyn Fn(&GroupElement) -> GroupElement + Send + Sync>;

/// `U` acting on `N` by automorphisms `alpha_u`, with embeddings of both
/// into an ambient group in which `u y u^-1 = alpha_u(y)`.
pub struct DeltaSmashSetup {
    pub name: String,
    pub acted: CayleyGroup,
    pub acting: CayleyGroup,
    pub action: Action,
    pub ambient: CayleyGroup,
    pub embed_acted: Embedding,
    pub embed_acting: Embedding,
}

/// `Z^k` acted on by `Z` through `n -> M^n`, inside `Z^k x|_M Z`.
pub fn matrix_action_setup(m: Matrix) -> Result<DeltaSmashSetup, CayleyError> {
    let k = m.len();
    let ambient = CayleyGroup::new(GroupKind::semidirect(m.clone())?);
    let GroupKind::Semidirect { m_inv, .. } = ambient.kind().clone() else { unreachable!() };
    Ok(DeltaSmashSetup {
        name: ambient.name(),
        acted: CayleyGroup::new(GroupKind::Zk(k)),
        acting: CayleyGroup::new(GroupKind::Zk(1)),
        action: Box::new(move |u, y| CayleyGroup::matrix_power_apply(&m, &m_inv, u[0], y).into_iter().collect()),
        ambient,
        embed_acted: Box::new(move |x| x.iter().copied().chain([0]).collect()),
        embed_acting: Box::new(move |u| std::iter::repeat_n(0, k).chain([u[0]]).collect()),
    })
}

/// The discrete Heisenberg group as `Z^2 x| Z`: `a` acts on `(b, c)` by
/// `(b, c + ab)`, and `(b, c), a` embed as `(0, b, c)` and `(a, 0, 0)`.
pub fn heisenberg_as_semidirect() -> DeltaSmashSetup {
    DeltaSmashSetup {
        name: "heis3z as Z^2 x| Z".into(),
        acted: CayleyGroup::new(GroupKind::Zk(2)),
        acting: CayleyGroup::new(GroupKind::Zk(1)),
        action: Box::new(|u, y| smallvec![y[0], y[1] + u[0] * y[0]]),
        ambient: CayleyGroup::new(GroupKind::Heis3Z),
        embed_acted: Box::new(|x| smallvec![0, x[0], x[1]]),
        embed_acting: Box::new(|u| smallvec![u[0], 0, 0]),
    }
}

type Pair = (GroupElement, GroupElement);
type SmashElement = BTreeMap<Pair, i64>;
type GroupAlgebraElement = BTreeMap<GroupElement, i64>;

fn add_term<K: Ord>(map: &mut BTreeMap<K, i64>, key: K, c: i64) {
    let slot = map.entry(key).or_insert(0);
    *slot += c;
}

fn prune<K: Ord + Clone>(map: BTreeMap<K, i64>) -> BTreeMap<K, i64> {
    map.into_iter().filter(|(_, c)| *c != 0).collect()
}

impl DeltaSmashSetup {
    /// `(d_x # d_u)(d_y # d_v) = sum d_x (u_(1) . d_y) # u_(2) d_v` with
    /// `Delta d_u = d_u (x) d_u` and `d_u . d_y = d_{alpha_u(y)}`.
    fn smash_multiply(&self, a: &SmashElement, b: &SmashElement) -> SmashElement {
        let mut out = BTreeMap::new();
        for ((x, u), c1) in a {
            let (u1, u2) = (u, u);
            for ((y, v), c2) in b {
                let acted = (self.action)(u1, y);
                let key = (self.acted.multiply(x, &acted), self.acting.multiply(u2, v));
                add_term(&mut out, key, c1 * c2);
            }
        }
        prune(out)
    }

    /// `psi(d_x # d_u) = d_{x u}` in the ambient group algebra.
    fn psi(&self, a: &SmashElement) -> GroupAlgebraElement {
        let mut out = BTreeMap::new();
        for ((x, u), c) in a {
            add_term(&mut out, self.ambient.multiply(&(self.embed_acted)(x), &(self.embed_acting)(u)), *c);
        }
        prune(out)
    }

    fn ambient_multiply(&self, a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = BTreeMap::new();
        for (g, c1) in a {
            for (h, c2) in b {
                add_term(&mut out, self.ambient.multiply(g, h), c1 * c2);
            }
        }
        prune(out)
    }

    fn check_automorphism(&self, u: &GroupElement, v: &GroupElement, y1: &GroupElement, y2: &GroupElement) -> Result<(), CayleyError> {
        let (n, a) = (&self.acted, &self.action);
        let fmt = |g: &CayleyGroup, x: &GroupElement| g.format_element(x);
        if a(u, &n.multiply(y1, y2)) != n.multiply(&a(u, y1), &a(u, y2)) {
            return Err(CayleyError::NotAutomorphism(format!(
                "alpha_{} is not multiplicative on {}, {}",
                fmt(&self.acting, u),
                fmt(n, y1),
                fmt(n, y2)
            )));
        }
        if a(&self.acting.inverse(u), &a(u, y1)) != *y1 {
            return Err(CayleyError::NotAutomorphism(format!("alpha_{} is not invertible", fmt(&self.acting, u))));
        }
        if a(&self.acting.multiply(u, v), y1) != a(u, &a(v, y1)) {
            return Err(CayleyError::NotAutomorphism(format!(
                "alpha_{}{} differs from the composite",
                fmt(&self.acting, u),
                fmt(&self.acting, v)
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaSmashReport {
    pub quadruples: usize,
    pub combinations: usize,
    /// First quadruple `(x, u, y, v)` on which the two sides differ.
    pub failure: Option<String>,
}

impl DeltaSmashReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn random_coords(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> GroupElement {
    (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()
}

/// Compares `psi((d_x # d_u)(d_y # d_v))` with `d_{psi(x,u) psi(y,v)}` on
/// `samples` random quadruples with coordinates in `[-5, 5]`, then
/// `psi(ab) = psi(a) psi(b)` on random finitely supported `a, b`.
pub fn delta_smash_check(setup: &DeltaSmashSetup, samples: usize, seed: u64) -> Result<DeltaSmashReport, CayleyError> {
    const BOUND: i64 = 5;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dn = setup.acted.identity().len();
    let du = setup.acting.identity().len();
    let mut report = DeltaSmashReport { quadruples: 0, combinations: 0, failure: None };
    for _ in 0..samples {
        let (x, u) = (random_coords(&mut rng, dn, BOUND), random_coords(&mut rng, du, BOUND));
        let (y, v) = (random_coords(&mut rng, dn, BOUND), random_coords(&mut rng, du, BOUND));
        setup.check_automorphism(&u, &v, &x, &y)?;
        let a = SmashElement::from([((x.clone(), u.clone()), 1)]);
        let b = SmashElement::from([((y.clone(), v.clone()), 1)]);
        let lhs = setup.psi(&setup.smash_multiply(&a, &b));
        let rhs = setup.ambient_multiply(&setup.psi(&a), &setup.psi(&b));
        report.quadruples += 1;
        if lhs != rhs && report.failure.is_none() {
            report.failure = Some(format!("x={x:?} u={u:?} y={y:?} v={v:?}"));
        }
    }
    let random_element = |rng: &mut ChaCha8Rng| -> SmashElement {
        let mut e = SmashElement::new();
        for _ in 0..rng.gen_range(1..=4) {
            let key = (random_coords(rng, dn, BOUND), random_coords(rng, du, BOUND));
            add_term(&mut e, key, rng.gen_range(-3..=3));
        }
        prune(e)
    };
    for _ in 0..samples / 10 {
        let (a, b) = (random_element(&mut rng), random_element(&mut rng));
        let lhs = setup.psi(&setup.smash_multiply(&a, &b));
        let rhs = setup.ambient_multiply(&setup.psi(&a), &setup.psi(&b));
        report.combinations += 1;
        if lhs != rhs && report.failure.is_none() {
            report.failure = Some(format!("combination a={a:?} b={b:?}"));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct L1Report {
    pub pairs: usize,
    pub convolutions: usize,
    /// `(g, h)` with `w(gh) > w(g) w(h)`.
    pub witness: Option<(String, String)>,
}

impl L1Report {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks `w(gh) <= w(g) w(h)` on random pairs of words of length at most
/// `max_len`, then `||a * b|| <= ||a|| ||b||` for the weighted `l1` norm on
/// random finitely supported `a, b`. Word weights compare integer lengths;
/// other weights compare logarithms with relative tolerance `1e-9`.
pub fn weighted_l1_submult_check(
    group: &CayleyGroup,
    w: &Weight,
    samples: usize,
    max_len: usize,
    seed: u64,
) -> Result<L1Report, WeightError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let word = |rng: &mut ChaCha8Rng| {
        let gens = group.generators();
        (0..rng.gen_range(0..=max_len)).fold(group.identity(), |acc, _| group.multiply(&acc, &gens[rng.gen_range(0..gens.len())]))
    };
    let log_w = |g: &GroupElement| w.log_eval(&Point::Group(g.clone()));
    let tol = |x: f64| 1e-9 * (1.0 + x.abs());
    let mut report = L1Report { pairs: 0, convolutions: 0, witness: None };
    for _ in 0..samples {
        let (g, h) = (word(&mut rng), word(&mut rng));
        let gh = group.multiply(&g, &h);
        let violated = match w {
            Weight::Word(t) => {
                let len = |x: &GroupElement| t.0.length(x).ok_or_else(|| WeightError::BeyondRadius(group.format_element(x)));
                len(&gh)? > len(&g)? + len(&h)?
            }
            _ => {
                let rhs = log_w(&g)? + log_w(&h)?;
                log_w(&gh)? > rhs + tol(rhs)
            }
        };
        report.pairs += 1;
        if violated && report.witness.is_none() {
            report.witness = Some((group.format_element(&g), group.format_element(&h)));
        }
    }
    let norm = |a: &BTreeMap<GroupElement, i64>| -> Result<f64, WeightError> {
        a.iter().map(|(g, c)| Ok(c.unsigned_abs() as f64 * log_w(g)?.exp())).sum()
    };
    for _ in 0..samples / 10 {
        let mut a = BTreeMap::new();
        let mut b = BTreeMap::new();
        for _ in 0..rng.gen_range(1..=4) {
            add_term(&mut a, word(&mut rng), rng.gen_range(-3..=3));
            add_term(&mut b, word(&mut rng), rng.gen_range(-3..=3));
        }
        let (a, b) = (prune(a), prune(b));
        let mut ab = BTreeMap::new();
        for (g, c1) in &a {
            for (h, c2) in &b {
                add_term(&mut ab, group.multiply(g, h), c1 * c2);
            }
        }
        let (lhs, rhs) = (norm(&prune(ab))?, norm(&a)? * norm(&b)?);
        report.convolutions += 1;
        if lhs > rhs + tol(rhs) && report.witness.is_none() {
            let show = |m: &BTreeMap<GroupElement, i64>| {
                m.iter().map(|(g, c)| format!("{c}*{}", group.format_element(g))).collect::<Vec<_>>().join(" + ")
            };
            report.witness = Some((show(&a), show(&b)));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::super::WordWeightTable;
    use super::*;
    use crate::weights::WordWeight;

    #[test]
    fn heisenberg_semidirect_passes() {
        let rep = delta_smash_check(&heisenberg_as_semidirect(), 200, 1).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.quadruples, 200);
    }

    #[test]
    fn sign_action_passes() {
        let setup = matrix_action_setup(vec![vec![-1]]).unwrap();
        assert!(delta_smash_check(&setup, 200, 2).unwrap().passed());
    }

    #[test]
    fn trivial_action_is_the_direct_product() {
        let setup = matrix_action_setup(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let a = SmashElement::from([((smallvec![1, 2], smallvec![3]), 1)]);
        let b = SmashElement::from([((smallvec![-4, 0], smallvec![1]), 1)]);
        let ab = setup.smash_multiply(&a, &b);
        assert_eq!(ab, SmashElement::from([((smallvec![-3, 2], smallvec![4]), 1)]));
        assert!(delta_smash_check(&setup, 50, 3).unwrap().passed());
    }

    #[test]
    fn wrong_embedding_is_caught() {
        let mut setup = heisenberg_as_semidirect();
        setup.action = Box::new(|u, y| smallvec![y[0], y[1] - u[0] * y[0]]);
        let rep = delta_smash_check(&setup, 50, 4).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let mut setup = heisenberg_as_semidirect();
        setup.action = Box::new(|u, y| smallvec![y[0] + u[0], y[1]]);
        assert!(matches!(delta_smash_check(&setup, 10, 5), Err(CayleyError::NotAutomorphism(_))));
    }

    #[test]
    fn l1_submultiplicativity() {
        let heis = CayleyGroup::new(GroupKind::Heis3Z);
        let table = Arc::new(WordWeightTable::bfs(heis.clone(), 12));
        let word = Weight::Word(WordWeight(table));
        assert!(weighted_l1_submult_check(&heis, &word, 300, 6, 1).unwrap().holds());

        let z2 = CayleyGroup::new(GroupKind::Zk(2));
        let one: Weight = "const(2)".parse().unwrap();
        assert!(weighted_l1_submult_check(&z2, &one, 200, 6, 2).unwrap().holds());
        let exp_l1: Weight = "tensor(exppow(1), exppow(1))".parse().unwrap();
        assert!(weighted_l1_submult_check(&z2, &exp_l1, 200, 6, 3).unwrap().holds());
        let squares: Weight = "expsq(2)".parse().unwrap();
        let rep = weighted_l1_submult_check(&z2, &squares, 200, 6, 4).unwrap();
        assert!(!rep.holds());
    }
}
