//! Exact truncated models of Hopf algebras generated by primitive and
//! group-like elements, module-algebra actions, and smash products.
//!
//! Truncation: every algebra carries a degree bound `D`. Primitive
//! generators have degree 1, group-like generators degree 0. Products and
//! coproducts are computed as in the graded completion and terms of degree
//! above `D` are discarded. Degree-raising operations are not modelled, so
//! a computation whose inputs have total degree at most `D` never loses a
//! term; all axioms are checked on exactly those inputs.

mod action;
mod smash;
mod verify;

pub use action::{automorphism_to_action, derivation_to_action, verify_module_algebra, Derivation, ModuleAlgebraAction};
pub use smash::{
    commutator_check, iterated_smash, lie_chain_actions, smash_antipode, smash_multiply, smash_product, tau,
    tensor_product, SmashAlgebra,
};
pub use verify::{verify_hopf_axioms, verify_smash, AxiomCheck, HopfReport};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use smallvec::SmallVec;
use thiserror::Error;

use crate::gauss::GaussianRational as Q;

pub type SparseVec = BTreeMap<usize, Q>;
pub type SparseTensor = BTreeMap<(usize, usize), Q>;
/// Exponents of the generators, in generator order.
pub type Monomial = SmallVec<[u32; 4]>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HopfError {
    #[error("not a derivation: {0}")]
    NotADerivation(String),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("module-algebra axiom fails: {0}")]
    NotModuleAlgebra(String),
    #[error("acting Hopf algebra is not cocommutative")]
    NotCocommutative,
    #[error("truncation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("generator commutator differs from the bracket: {0}")]
    Commutator(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// `Delta x = x (x) 1 + 1 (x) x`, degree 1.
    Primitive,
    /// `Delta g = g (x) g`, `g^order = 1`, degree 0.
    GroupLike { order: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
}

impl Generator {
    pub fn primitive(name: &str) -> Generator {
        Generator { name: name.into(), kind: GeneratorKind::Primitive }
    }

    pub fn group_like(name: &str, order: u32) -> Generator {
        Generator { name: name.into(), kind: GeneratorKind::GroupLike { order } }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HopfKind {
    PrimitiveSeries,
    GroupLike { order: u32 },
    /// Commutative algebra on several generators.
    Commutative,
    Tensor,
    Smash,
}

pub(crate) fn add_to<K: Ord>(map: &mut BTreeMap<K, Q>, key: K, c: Q) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// A Hopf algebra truncated at degree `D`, given by structure tables on the
/// monomial basis. Each basis element is the ordered product of its word
/// (each generator repeated by its exponent, in generator order).
#[derive(Clone, PartialEq)]
pub struct TruncatedHopf {
    pub(crate) name: String,
    pub(crate) kind: HopfKind,
    pub(crate) generators: Vec<Generator>,
    pub(crate) degree: usize,
    pub(crate) basis: Vec<Monomial>,
    pub(crate) index: HashMap<Monomial, usize>,
    pub(crate) degrees: Vec<usize>,
    pub(crate) mult: Vec<Vec<SparseVec>>,
    pub(crate) comult: Vec<SparseTensor>,
    pub(crate) counit: Vec<Q>,
    pub(crate) antipode: Vec<SparseVec>,
}

pub(crate) fn monomial_degree(generators: &[Generator], m: &[u32]) -> usize {
    generators
        .iter()
        .zip(m)
        .filter(|(g, _)| g.kind == GeneratorKind::Primitive)
        .map(|(_, &e)| e as usize)
        .sum()
}

/// All monomials of degree at most `d`, sorted by degree then exponents.
pub(crate) fn enumerate_basis(generators: &[Generator], d: usize) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = vec![Monomial::new()];
    for g in generators {
        let bound = match g.kind {
            GeneratorKind::Primitive => d as u32,
            GeneratorKind::GroupLike { order } => order - 1,
        };
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..=bound).map(move |e| {
                    let mut m = m.clone();
                    m.push(e);
                    m
                })
            })
            .filter(|m| monomial_degree(&generators[..m.len()], m) <= d)
            .collect();
    }
    out.sort_by_key(|m| (monomial_degree(generators, m), m.clone()));
    out
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

impl TruncatedHopf {
    /// Empty tables over the standard basis; callers fill them in.
    pub(crate) fn skeleton(name: String, kind: HopfKind, generators: Vec<Generator>, degree: usize, basis: Vec<Monomial>) -> Self {
        let n = basis.len();
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let degrees = basis.iter().map(|m| monomial_degree(&generators, m)).collect();
        TruncatedHopf {
            name,
            kind,
            generators,
            degree,
            basis,
            index,
            degrees,
            mult: vec![vec![SparseVec::new(); n]; n],
            comult: vec![SparseTensor::new(); n],
            counit: vec![Q::zero(); n],
            antipode: vec![SparseVec::new(); n],
        }
    }

    /// The commutative Hopf algebra on the given generators, truncated at
    /// `d`.
    pub fn commutative(generators: Vec<Generator>, d: usize) -> TruncatedHopf {
        let basis = enumerate_basis(&generators, d);
        let kind = match generators.as_slice() {
            [Generator { kind: GeneratorKind::Primitive, .. }] => HopfKind::PrimitiveSeries,
            [Generator { kind: GeneratorKind::GroupLike { order }, .. }] => HopfKind::GroupLike { order: *order },
            _ => HopfKind::Commutative,
        };
        let name = generators.iter().map(|g| g.name.as_str()).collect::<Vec<_>>().join(",");
        let mut h = TruncatedHopf::skeleton(format!("C[{name}]"), kind, generators, d, basis);
        let n = h.basis.len();
        for i in 0..n {
            for j in 0..n {
                let m: Monomial = h
                    .generators
                    .iter()
                    .zip(h.basis[i].iter().zip(&h.basis[j]))
                    .map(|(g, (a, b))| match g.kind {
                        GeneratorKind::Primitive => a + b,
                        GeneratorKind::GroupLike { order } => (a + b) % order,
                    })
                    .collect();
                if let Some(&k) = h.index.get(&m) {
                    h.mult[i][j].insert(k, Q::one());
                }
            }
            // coproduct: product over generators of Delta(g^e)
            let mut terms: Vec<(Monomial, Monomial, i64)> = vec![(Monomial::new(), Monomial::new(), 1)];
            for (g, &e) in h.generators.iter().zip(&h.basis[i]) {
                terms = terms
                    .into_iter()
                    .flat_map(|(l, r, c)| {
                        let split: Vec<(u32, u32, i64)> = match g.kind {
                            GeneratorKind::Primitive => (0..=e).map(|k| (k, e - k, binomial(e, k))).collect(),
                            GeneratorKind::GroupLike { .. } => vec![(e, e, 1)],
                        };
                        split.into_iter().map(move |(a, b, k)| {
                            let (mut l, mut r) = (l.clone(), r.clone());
                            l.push(a);
                            r.push(b);
                            (l, r, c * k)
                        })
                    })
                    .collect();
            }
            for (l, r, c) in terms {
                add_to(&mut h.comult[i], (h.index[&l], h.index[&r]), Q::from_int(c));
            }
            let primitive_free = h.generators.iter().zip(&h.basis[i]).all(|(g, &e)| g.kind != GeneratorKind::Primitive || e == 0);
            h.counit[i] = if primitive_free { Q::one() } else { Q::zero() };
            let mut sign = 1;
            let s: Monomial = h
                .generators
                .iter()
                .zip(&h.basis[i])
                .map(|(g, &e)| match g.kind {
                    GeneratorKind::Primitive => {
                        if e % 2 == 1 {
                            sign = -sign;
                        }
                        e
                    }
                    GeneratorKind::GroupLike { order } => (order - e) % order,
                })
                .collect();
            h.antipode[i].insert(h.index[&s], Q::from_int(sign));
        }
        h
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &HopfKind {
        &self.kind
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn truncation(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn unit(&self) -> usize {
        0
    }

    /// Basis index of the `k`-th generator, or `None` when `D = 0` cuts it.
    pub fn generator_index(&self, k: usize) -> Option<usize> {
        let mut m: Monomial = SmallVec::from_elem(0, self.generators.len());
        m[k] = 1;
        self.index_of(&m)
    }

    pub fn mult_entry(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i][j]
    }

    pub fn comult_entry(&self, i: usize) -> &SparseTensor {
        &self.comult[i]
    }

    pub fn counit_entry(&self, i: usize) -> &Q {
        &self.counit[i]
    }

    pub fn antipode_entry(&self, i: usize) -> &SparseVec {
        &self.antipode[i]
    }

    /// Generator indices of the word of basis element `i`.
    pub fn word(&self, i: usize) -> Vec<usize> {
        self.basis[i].iter().enumerate().flat_map(|(g, &e)| std::iter::repeat_n(g, e as usize)).collect()
    }

    pub fn basis_vec(&self, i: usize) -> SparseVec {
        SparseVec::from([(i, Q::one())])
    }

    pub fn mul(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in u {
            for (&j, b) in v {
                let ab = a * b;
                for (&k, c) in &self.mult[i][j] {
                    add_to(&mut out, k, &ab * c);
                }
            }
        }
        out
    }

    pub fn comul(&self, u: &SparseVec) -> SparseTensor {
        let mut out = SparseTensor::new();
        for (&i, a) in u {
            for (&k, c) in &self.comult[i] {
                add_to(&mut out, k, a * c);
            }
        }
        out
    }

    pub fn counit_of(&self, u: &SparseVec) -> Q {
        u.iter().fold(Q::zero(), |acc, (&i, a)| acc + a * &self.counit[i])
    }

    pub fn antipode_of(&self, u: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in u {
            for (&k, c) in &self.antipode[i] {
                add_to(&mut out, k, a * c);
            }
        }
        out
    }

    /// Componentwise product in `X (x) X`.
    pub fn tensor_mul(&self, u: &SparseTensor, v: &SparseTensor) -> SparseTensor {
        let mut out = SparseTensor::new();
        for (&(a1, a2), x) in u {
            for (&(b1, b2), y) in v {
                let xy = x * y;
                for (&l, c1) in &self.mult[a1][b1] {
                    for (&r, c2) in &self.mult[a2][b2] {
                        add_to(&mut out, (l, r), &xy * &(c1 * c2));
                    }
                }
            }
        }
        out
    }

    pub fn is_cocommutative(&self) -> bool {
        self.comult.iter().all(|t| t.iter().all(|(&(l, r), c)| t.get(&(r, l)) == Some(c)))
    }

    pub fn fmt_basis(&self, i: usize) -> String {
        let parts: Vec<String> = self
            .generators
            .iter()
            .zip(&self.basis[i])
            .filter(|(_, &e)| e > 0)
            .map(|(g, &e)| if e == 1 { g.name.clone() } else { format!("{}^{e}", g.name) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn fmt_vec(&self, u: &SparseVec) -> String {
        if u.is_empty() {
            return "0".into();
        }
        u.iter()
            .map(|(&i, c)| if c.is_one() { self.fmt_basis(i) } else { format!("({c})*{}", self.fmt_basis(i)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn fmt_tensor(&self, t: &SparseTensor) -> String {
        if t.is_empty() {
            return "0".into();
        }
        t.iter()
            .map(|(&(l, r), c)| format!("({c})*{}|{}", self.fmt_basis(l), self.fmt_basis(r)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Adds `c * (i (x) j)` to `Delta(b_u)`. Only useful for building
    /// negative controls.
    pub fn perturb_comult(&mut self, u: usize, i: usize, j: usize, c: Q) {
        add_to(&mut self.comult[u], (i, j), c);
    }

    /// First difference between the structure tables, if any.
    pub fn table_difference(&self, other: &TruncatedHopf) -> Option<String> {
        if self.generators != other.generators || self.degree != other.degree || self.basis != other.basis {
            return Some("generators, degree or basis differ".into());
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if self.mult[i][j] != other.mult[i][j] {
                    return Some(format!("product {} * {}", self.fmt_basis(i), self.fmt_basis(j)));
                }
            }
            if self.comult[i] != other.comult[i] {
                return Some(format!("coproduct of {}", self.fmt_basis(i)));
            }
            if self.counit[i] != other.counit[i] {
                return Some(format!("counit of {}", self.fmt_basis(i)));
            }
            if self.antipode[i] != other.antipode[i] {
                return Some(format!("antipode of {}", self.fmt_basis(i)));
            }
        }
        None
    }
}

impl fmt::Debug for TruncatedHopf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedHopf({}, D={}, dim={})", self.name, self.degree, self.dim())
    }
}

/// `C[[x]]` truncated at degree `d`.
pub fn make_primitive_series_hopf(name: &str, d: usize) -> TruncatedHopf {
    TruncatedHopf::commutative(vec![Generator::primitive(name)], d)
}

/// The group algebra of `Z/order`.
pub fn make_cyclic_group_hopf(name: &str, order: u32, d: usize) -> TruncatedHopf {
    TruncatedHopf::commutative(vec![Generator::group_like(name, order.max(1))], d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn primitive_series_tables() {
        let h = make_primitive_series_hopf("x", 3);
        assert_eq!(h.dim(), 4);
        let x2 = h.index_of(&[2]).unwrap();
        let expected = SparseTensor::from([((0, 2), q(1)), ((1, 1), q(2)), ((2, 0), q(1))]);
        assert_eq!(h.comult_entry(x2), &expected);
        for n in 0..=3usize {
            assert_eq!(h.counit_entry(n), &q(i64::from(n == 0)));
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(h.antipode_entry(n), &SparseVec::from([(n, q(sign))]));
        }
        assert!(h.mult_entry(2, 2).is_empty());
        assert_eq!(h.mult_entry(1, 2), &SparseVec::from([(3, q(1))]));
        assert_eq!(h.fmt_basis(x2), "x^2");
    }

    #[test]
    fn cyclic_group_tables() {
        let g = make_cyclic_group_hopf("g", 3, 4);
        assert_eq!(g.dim(), 3);
        assert_eq!(g.mult_entry(2, 2), &SparseVec::from([(1, q(1))]));
        assert_eq!(g.antipode_entry(1), &SparseVec::from([(2, q(1))]));
        assert_eq!(g.comult_entry(2), &SparseTensor::from([((2, 2), q(1))]));
        assert!(g.is_cocommutative());
    }

    #[test]
    fn basis_order_and_words() {
        let h = TruncatedHopf::commutative(vec![Generator::primitive("x"), Generator::primitive("y")], 2);
        let names: Vec<String> = (0..h.dim()).map(|i| h.fmt_basis(i)).collect();
        assert_eq!(names, ["1", "y", "x", "y^2", "x*y", "x^2"]);
        assert_eq!(h.word(4), vec![0, 1]);
        assert_eq!(h.generator_index(1), Some(1));
    }
}
