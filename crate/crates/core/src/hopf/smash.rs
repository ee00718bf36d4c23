//! Smash products `A # H`, tensor products, and iterated smash products
//! along a Lie decomposition chain.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::action::{derivation_to_action, Derivation, ModuleAlgebraAction};
use super::{add_to, enumerate_basis, make_primitive_series_hopf, HopfError, HopfKind, Monomial, SparseTensor, SparseVec, TruncatedHopf};
use crate::gauss::GaussianRational as Q;
use crate::lie::{DecompositionChain, FactorKind, LieAlgebra};
use crate::linalg::{coordinates, Vector};

/// `A # H` on the basis of pairs `(a, h)` with `deg a + deg h <= D`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmashAlgebra {
    pub(crate) algebra: TruncatedHopf,
    pub(crate) action: ModuleAlgebraAction,
    pub(crate) pairs: Vec<(usize, usize)>,
    pub(crate) pair_index: HashMap<(usize, usize), usize>,
}

impl SmashAlgebra {
    /// The smash product as a truncated Hopf algebra on the concatenated
    /// generators of `A` and `H`.
    pub fn algebra(&self) -> &TruncatedHopf {
        &self.algebra
    }

    pub fn action(&self) -> &ModuleAlgebraAction {
        &self.action
    }

    pub fn a(&self) -> &TruncatedHopf {
        &self.action.a
    }

    pub fn h(&self) -> &TruncatedHopf {
        &self.action.h
    }

    /// `(a, h)` basis indices of smash basis element `k`.
    pub fn pair(&self, k: usize) -> (usize, usize) {
        self.pairs[k]
    }

    pub fn pair_to_index(&self, a: usize, h: usize) -> Option<usize> {
        self.pair_index.get(&(a, h)).copied()
    }

    /// Reads an `A (x) H` tensor as a smash element, dropping pairs above
    /// the truncation degree.
    pub fn from_tensor(&self, t: &SparseTensor) -> SparseVec {
        let mut out = SparseVec::new();
        for (&(a, h), c) in t {
            if let Some(k) = self.pair_to_index(a, h) {
                add_to(&mut out, k, c.clone());
            }
        }
        out
    }

    /// `i(a) = a (x) 1`.
    pub fn embed_a(&self, a: &SparseVec) -> SparseVec {
        let unit = self.h().unit();
        self.from_tensor(&a.iter().map(|(&i, c)| ((i, unit), c.clone())).collect())
    }

    /// `j(h) = 1 (x) h`.
    pub fn embed_h(&self, h: &SparseVec) -> SparseVec {
        let unit = self.a().unit();
        self.from_tensor(&h.iter().map(|(&i, c)| ((unit, i), c.clone())).collect())
    }
}

/// `tau(h (x) a) = sum (h1 . a) (x) h2`, as an `A (x) H` tensor.
pub fn tau(action: &ModuleAlgebraAction, h: &SparseVec, a: &SparseVec) -> SparseTensor {
    let mut out = SparseTensor::new();
    for (&(h1, h2), c) in &action.h.comul(h) {
        for (k, x) in action.act(&SparseVec::from([(h1, Q::one())]), a) {
            add_to(&mut out, (k, h2), c * &x);
        }
    }
    out
}

/// `(a (x) h)(b (x) g) = sum a (h1 . b) (x) h2 g` on basis pairs.
fn multiply_pairs(action: &ModuleAlgebraAction, (a, h): (usize, usize), (b, g): (usize, usize)) -> SparseTensor {
    let (alg_a, alg_h) = (&action.a, &action.h);
    let mut out = SparseTensor::new();
    for (&(ta, th), c) in &tau(action, &alg_h.basis_vec(h), &alg_a.basis_vec(b)) {
        for (&l, x) in &alg_a.mult[a][ta] {
            for (&r, y) in &alg_h.mult[th][g] {
                add_to(&mut out, (l, r), c * &(x * y));
            }
        }
    }
    out
}

/// Multiplies smash elements straight from the action, without the stored
/// table.
pub fn smash_multiply(s: &SmashAlgebra, u: &SparseVec, v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (&i, x) in u {
        for (&j, y) in v {
            let xy = x * y;
            for (k, c) in s.from_tensor(&multiply_pairs(&s.action, s.pairs[i], s.pairs[j])) {
                add_to(&mut out, k, &xy * &c);
            }
        }
    }
    out
}

/// `S(a (x) h) = sum ((S h)1 . S_A a) (x) (S h)2`.
fn antipode_pair(action: &ModuleAlgebraAction, a: usize, h: usize) -> SparseTensor {
    let s_a = action.a.antipode_of(&action.a.basis_vec(a));
    let s_h = action.h.antipode_of(&action.h.basis_vec(h));
    tau(action, &s_h, &s_a)
}

/// The antipode of `A # H` computed from the formula; requires `H`
/// cocommutative.
pub fn smash_antipode(s: &SmashAlgebra, u: &SparseVec) -> Result<SparseVec, HopfError> {
    if !s.h().is_cocommutative() {
        return Err(HopfError::NotCocommutative);
    }
    let mut out = SparseVec::new();
    for (&k, x) in u {
        let (a, h) = s.pairs[k];
        for (i, c) in s.from_tensor(&antipode_pair(&s.action, a, h)) {
            add_to(&mut out, i, x * &c);
        }
    }
    Ok(out)
}

/// Pair basis of `A (x) H` truncated at the common degree, ordered as the
/// monomial basis on the concatenated generators.
fn pair_basis(a: &TruncatedHopf, h: &TruncatedHopf, name: String, kind: HopfKind) -> (TruncatedHopf, Vec<(usize, usize)>) {
    let generators: Vec<_> = a.generators.iter().chain(&h.generators).cloned().collect();
    let basis = enumerate_basis(&generators, a.degree);
    let na = a.generators.len();
    let pairs = basis
        .iter()
        .map(|m| {
            let (ma, mh): (Monomial, Monomial) = (m[..na].into(), m[na..].into());
            (a.index[&ma], h.index[&mh])
        })
        .collect();
    (TruncatedHopf::skeleton(name, kind, generators, a.degree, basis), pairs)
}

/// Fills coproduct and counit with the tensor-of-coalgebras structure.
fn tensor_coalgebra(t: &mut TruncatedHopf, a: &TruncatedHopf, h: &TruncatedHopf, pairs: &[(usize, usize)], index: &HashMap<(usize, usize), usize>) {
    for (k, &(x, y)) in pairs.iter().enumerate() {
        for (&(x1, x2), c1) in &a.comult[x] {
            for (&(y1, y2), c2) in &h.comult[y] {
                if let (Some(&l), Some(&r)) = (index.get(&(x1, y1)), index.get(&(x2, y2))) {
                    add_to(&mut t.comult[k], (l, r), c1 * c2);
                }
            }
        }
        t.counit[k] = &a.counit[x] * &h.counit[y];
    }
}

fn index_pairs(pairs: &[(usize, usize)]) -> HashMap<(usize, usize), usize> {
    pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect()
}

fn tensor_to_vec(t: &SparseTensor, index: &HashMap<(usize, usize), usize>) -> SparseVec {
    let mut out = SparseVec::new();
    for (p, c) in t {
        if let Some(&k) = index.get(p) {
            add_to(&mut out, k, c.clone());
        }
    }
    out
}

/// Builds `A # H` from a module-algebra action.
pub fn smash_product(action: ModuleAlgebraAction) -> Result<SmashAlgebra, HopfError> {
    let (a, h) = (&action.a, &action.h);
    if a.degree != h.degree {
        return Err(HopfError::DegreeMismatch(a.degree, h.degree));
    }
    if !h.is_cocommutative() {
        return Err(HopfError::NotCocommutative);
    }
    let (mut t, pairs) = pair_basis(a, h, format!("({} # {})", a.name, h.name), HopfKind::Smash);
    let index = index_pairs(&pairs);
    for (i, &p) in pairs.iter().enumerate() {
        for (j, &q) in pairs.iter().enumerate() {
            t.mult[i][j] = tensor_to_vec(&multiply_pairs(&action, p, q), &index);
        }
        t.antipode[i] = tensor_to_vec(&antipode_pair(&action, p.0, p.1), &index);
    }
    tensor_coalgebra(&mut t, a, h, &pairs, &index);
    Ok(SmashAlgebra { algebra: t, action, pairs, pair_index: index })
}

/// `A (x) B` with componentwise product and antipode `S_A (x) S_B`.
pub fn tensor_product(a: &TruncatedHopf, b: &TruncatedHopf) -> Result<TruncatedHopf, HopfError> {
    if a.degree != b.degree {
        return Err(HopfError::DegreeMismatch(a.degree, b.degree));
    }
    let (mut t, pairs) = pair_basis(a, b, format!("({} (x) {})", a.name, b.name), HopfKind::Tensor);
    let index = index_pairs(&pairs);
    for (i, &(x, y)) in pairs.iter().enumerate() {
        for (j, &(u, v)) in pairs.iter().enumerate() {
            let mut prod = SparseTensor::new();
            for (&l, c1) in &a.mult[x][u] {
                for (&r, c2) in &b.mult[y][v] {
                    add_to(&mut prod, (l, r), c1 * c2);
                }
            }
            t.mult[i][j] = tensor_to_vec(&prod, &index);
        }
        let mut s = SparseTensor::new();
        for (&l, c1) in &a.antipode[x] {
            for (&r, c2) in &b.antipode[y] {
                add_to(&mut s, (l, r), c1 * c2);
            }
        }
        t.antipode[i] = tensor_to_vec(&s, &index);
    }
    tensor_coalgebra(&mut t, a, b, &pairs, &index);
    Ok(t)
}

fn factor_names(chain: &DecompositionChain) -> Vec<String> {
    chain.factors.iter().filter(|f| f.vector.is_some()).map(|f| f.name.clone()).collect()
}

/// Derivation matrices of the adjoint action along the chain: entry `i - 1`
/// has row `k` equal to the coordinates of `[v_i, v_k]` in `v_0 .. v_{i-1}`.
pub fn lie_chain_actions(g: &LieAlgebra, chain: &DecompositionChain) -> Result<Vec<Vec<Vector>>, HopfError> {
    let vs = chain.vectors();
    (1..vs.len())
        .map(|i| {
            (0..i)
                .map(|k| {
                    let br = g.bracket(&vs[i], &vs[k]).map_err(|e| HopfError::Unsupported(e.to_string()))?;
                    coordinates(&vs[..i], &br).ok_or_else(|| {
                        HopfError::Unsupported(format!("[v{i}, v{k}] leaves the span of the preceding factors"))
                    })
                })
                .collect()
        })
        .collect()
}

/// `((C[[x_1]] # C[[x_2]]) # ...) # C[[x_n]]`, with `x_{i+1}` acting on the
/// previously built algebra by the derivation `actions[i]`.
pub fn iterated_smash(chain: &DecompositionChain, d: usize, actions: &[Vec<Vector>]) -> Result<SmashAlgebra, HopfError> {
    if chain.factors.iter().any(|f| f.kind == FactorKind::ReductiveTail) {
        return Err(HopfError::Unsupported("the reductive tail has no truncated model".into()));
    }
    let names = factor_names(chain);
    if names.len() < 2 {
        return Err(HopfError::Unsupported("an iterated smash needs at least two factors".into()));
    }
    if actions.len() != names.len() - 1 {
        return Err(HopfError::Unsupported(format!("expected {} derivation matrices, got {}", names.len() - 1, actions.len())));
    }
    let mut a = make_primitive_series_hopf(&names[0], d);
    let mut last = None;
    for (name, m) in names[1..].iter().zip(actions) {
        let h = make_primitive_series_hopf(name, d);
        let der = Derivation::linear(&a, m)?;
        let s = smash_product(derivation_to_action(&h, &a, &der)?)?;
        a = s.algebra.clone();
        last = Some(s);
    }
    Ok(last.expect("at least one step"))
}

/// Checks `x_j x_i - x_i x_j = [v_j, v_i]` for every pair of generators of an
/// iterated smash built from `chain`. Returns the number of pairs checked.
pub fn commutator_check(s: &SmashAlgebra, g: &LieAlgebra, chain: &DecompositionChain) -> Result<usize, HopfError> {
    let alg = &s.algebra;
    let vs = chain.vectors();
    if alg.generators.len() != vs.len() {
        return Err(HopfError::Unsupported("generator count differs from chain length".into()));
    }
    if alg.degree < 2 {
        return Err(HopfError::Unsupported("commutators need truncation degree at least 2".into()));
    }
    let x: Vec<SparseVec> = (0..vs.len()).map(|k| alg.basis_vec(alg.generator_index(k).expect("degree >= 1"))).collect();
    let mut checked = 0;
    for j in 0..vs.len() {
        for i in 0..j {
            let mut lhs = smash_multiply(s, &x[j], &x[i]);
            for (k, c) in smash_multiply(s, &x[i], &x[j]) {
                add_to(&mut lhs, k, -c);
            }
            let br = g.bracket(&vs[j], &vs[i]).map_err(|e| HopfError::Unsupported(e.to_string()))?;
            let coords = coordinates(&vs, &br).expect("chain vectors form a basis");
            let mut rhs = SparseVec::new();
            for (k, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    add_to(&mut rhs, alg.generator_index(k).expect("degree >= 1"), c);
                }
            }
            if lhs != rhs {
                return Err(HopfError::Commutator(format!(
                    "[{}, {}]: smash gives {}, bracket gives {}",
                    alg.generators[j].name,
                    alg.generators[i].name,
                    alg.fmt_vec(&lhs),
                    alg.fmt_vec(&rhs)
                )));
            }
            checked += 1;
        }
    }
    Ok(checked)
}
