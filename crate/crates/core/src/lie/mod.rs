//! Finite-dimensional Lie algebras over `Q(i)` given by structure
//! constants, and the exact structure theory the decomposition pipeline
//! needs: central series, radicals, quotients and adapted bases.

mod chain;
pub mod examples;
pub mod io;

pub use chain::{
    parse_factorization, semidirect_chain, ChainFactor, DecompositionChain, FactorKind,
    FactorLabel,
};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::gauss::GaussianRational as Q;
use crate::linalg::{self, fmt_vector, Subspace, Vector};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("vector of length {found} given where dimension {expected} is required")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bracket [{i}, {j}] must be given with i < j")]
    BadPair { i: usize, j: usize },
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("subspace is not an ideal: [{basis}, {member}] = {bracket} leaves it")]
    NotAnIdeal { basis: String, member: String, bracket: String },
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("containment {0} is violated")]
    Containment(&'static str),
    #[error("invalid Lie algebra: Jacobi identity fails on {0:?}")]
    Jacobi(Vec<(String, String, String)>),
    #[error("input error: {0}")]
    Input(String),
}

/// Result of [`LieAlgebra::jacobi_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    pub holds: bool,
    /// Basis triples `i < j < k` on which the Jacobi sum is nonzero.
    pub violations: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nilpotency {
    /// Smallest `c` with `g_{c+1} = 0`.
    Degree(usize),
    NotNilpotent,
}

/// A basis adapted to the lower central series: `weights[k]` is the deepest
/// series term containing `vectors[k]`, and the weights are nondecreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct FBasis {
    pub vectors: Vec<Vector>,
    pub weights: Vec<u32>,
}

/// A quotient `g / I` realised on the standard complement of `I`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    pub ideal: Subspace,
    /// Indices of the basis vectors of `g` that survive as the quotient basis.
    pub complement: Vec<usize>,
}

impl Quotient {
    /// Coordinates of the class of `v` in the quotient basis.
    pub fn project(&self, v: &[Q]) -> Vector {
        let r = self.ideal.reduce(v);
        self.complement.iter().map(|&k| r[k].clone()).collect()
    }

    /// The standard preimage of a quotient vector.
    pub fn lift(&self, u: &[Q]) -> Vector {
        let mut out = linalg::zero_vector(self.ideal.ambient_dim());
        for (&k, x) in self.complement.iter().zip(u) {
            out[k] = x.clone();
        }
        out
    }
}

/// A Lie algebra with basis `e_0..e_{n-1}` and brackets
/// `[e_i, e_j] = sum_k c_{ij}^k e_k`, stored for `i < j`.
#[derive(Clone, PartialEq)]
pub struct LieAlgebra {
    names: Vec<String>,
    structure: BTreeMap<(usize, usize, usize), Q>,
    // dense cache: table[i][j] = [e_i, e_j]
    table: Vec<Vec<Vector>>,
}

impl LieAlgebra {
    /// Builds an algebra from sparse structure constants `(i, j, k) -> c`
    /// with `i < j`. Repeated keys are summed; zero entries are dropped.
    pub fn new(
        names: Vec<String>,
        constants: impl IntoIterator<Item = ((usize, usize, usize), Q)>,
    ) -> Result<Self, LieError> {
        let n = names.len();
        let mut structure: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
        for ((i, j, k), c) in constants {
            if i >= j {
                return Err(LieError::BadPair { i, j });
            }
            for idx in [j, k] {
                if idx >= n {
                    return Err(LieError::IndexOutOfRange(idx));
                }
            }
            *structure.entry((i, j, k)).or_insert_with(Q::zero) += c;
        }
        structure.retain(|_, c| !c.is_zero());
        let mut table = vec![vec![linalg::zero_vector(n); n]; n];
        for (&(i, j, k), c) in &structure {
            table[i][j][k] = c.clone();
            table[j][i][k] = -c;
        }
        Ok(LieAlgebra { names, structure, table })
    }

    /// Convenience constructor from `[e_i, e_j] = sum c e_k` triples with
    /// integer coefficients.
    pub fn from_int_brackets(names: &[&str], brackets: &[(usize, usize, &[(usize, i64)])]) -> Self {
        let entries = brackets.iter().flat_map(|&(i, j, value)| {
            value.iter().map(move |&(k, c)| ((i, j, k), Q::from_int(c)))
        });
        LieAlgebra::new(names.iter().map(|s| s.to_string()).collect(), entries)
            .expect("well-formed bracket table")
    }

    pub fn abelian(names: Vec<String>) -> Self {
        LieAlgebra::new(names, std::iter::empty()).expect("no brackets")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn structure_constants(&self) -> &BTreeMap<(usize, usize, usize), Q> {
        &self.structure
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn basis_vector(&self, k: usize) -> Vector {
        linalg::unit_vector(self.dim(), k)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Result<Vector, LieError> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(LieError::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked(&self, x: &[Q], y: &[Q]) -> Vector {
        let n = self.dim();
        let mut out = linalg::zero_vector(n);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                if i == j {
                    continue;
                }
                let c = xi * yj;
                linalg::add_scaled(&mut out, &c, &self.table[i][j]);
            }
        }
        out
    }

    /// Human-readable form of a coordinate vector, e.g. `e1 - 1/2*e3`.
    pub fn fmt_element(&self, v: &[Q]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                if *c == Q::from_int(1) {
                    self.names[k].clone()
                } else {
                    format!("({c})*{}", self.names[k])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Checks `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0` on
    /// every basis triple `i < j < k`. Triples with a repeated index hold by
    /// antisymmetry alone.
    pub fn jacobi_check(&self) -> JacobiReport {
        let n = self.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let mut sum = self.bracket_unchecked(&ei, &self.table[j][k]);
                    let t2 = self.bracket_unchecked(&ej, &self.table[k][i]);
                    let t3 = self.bracket_unchecked(&ek, &self.table[i][j]);
                    linalg::add_scaled(&mut sum, &Q::from_int(1), &t2);
                    linalg::add_scaled(&mut sum, &Q::from_int(1), &t3);
                    if !linalg::is_zero_vector(&sum) {
                        violations.push((i, j, k));
                    }
                }
            }
        }
        JacobiReport { holds: violations.is_empty(), violations }
    }

    /// `Err(LieError::Jacobi)` naming the violating triples, if any.
    pub fn validate(&self) -> Result<(), LieError> {
        let report = self.jacobi_check();
        if report.holds {
            return Ok(());
        }
        let named = report
            .violations
            .iter()
            .map(|&(i, j, k)| (self.names[i].clone(), self.names[j].clone(), self.names[k].clone()))
            .collect();
        Err(LieError::Jacobi(named))
    }

    /// `span{[a, b] : a in A, b in B}`.
    pub fn bracket_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vectors = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                let z = self.bracket_unchecked(x, y);
                if !linalg::is_zero_vector(&z) {
                    vectors.push(z);
                }
            }
        }
        Subspace::span(self.dim(), vectors)
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim())
    }

    /// `span` of the named basis vectors.
    pub fn span_of_names(&self, names: &[&str]) -> Result<Subspace, LieError> {
        let mut vectors = Vec::new();
        for name in names {
            let k = self
                .index_of(name)
                .ok_or_else(|| LieError::Input(format!("unknown basis element `{name}`")))?;
            vectors.push(self.basis_vector(k));
        }
        Ok(Subspace::span(self.dim(), vectors))
    }

    /// `Ok` iff `[e_k, s] in S` for every basis vector `e_k` and every basis
    /// vector `s` of `S`; otherwise reports the first failing pair.
    pub fn check_ideal(&self, s: &Subspace) -> Result<(), LieError> {
        self.check_stable_under(&self.full(), s)
    }

    /// `Ok` iff `[a, s] in S` for all `a` in `A`, `s` in `S`.
    pub fn check_stable_under(&self, a: &Subspace, s: &Subspace) -> Result<(), LieError> {
        for x in a.basis() {
            for y in s.basis() {
                let z = self.bracket_unchecked(x, y);
                if !s.contains(&z) {
                    return Err(LieError::NotAnIdeal {
                        basis: self.fmt_element(x),
                        member: self.fmt_element(y),
                        bracket: self.fmt_element(&z),
                    });
                }
            }
        }
        Ok(())
    }

    /// Lower central series of the subalgebra `S`: `S_1 = S`,
    /// `S_{k+1} = [S, S_k]`, up to and including the first repeated term.
    /// The last entry is the stable term.
    pub fn lower_central_series_of(&self, s: &Subspace) -> Vec<Subspace> {
        let mut terms = vec![s.clone()];
        loop {
            let last = terms.last().expect("nonempty");
            let next = self.bracket_space(s, last);
            if &next == last {
                return terms;
            }
            terms.push(next);
        }
    }

    /// `g_1 = g`, `g_{k+1} = [g, g_k]`, until stabilisation. Returns all
    /// distinct terms; the last one is the stable term.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        self.lower_central_series_of(&self.full())
    }

    pub fn nilpotency_degree(&self) -> Nilpotency {
        nilpotency_of_series(&self.lower_central_series())
    }

    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut terms = vec![self.full()];
        loop {
            let last = terms.last().expect("nonempty");
            let next = self.bracket_space(last, last);
            if &next == last {
                return terms;
            }
            terms.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(Subspace::is_zero)
    }

    fn check_radical(&self, solvable_part: &Subspace) -> Result<(), LieError> {
        self.check_ideal(solvable_part)?;
        // derived series of the ideal itself
        let mut term = solvable_part.clone();
        loop {
            let next = self.bracket_space(&term, &term);
            if next == term {
                break;
            }
            term = next;
        }
        if term.is_zero() {
            Ok(())
        } else {
            Err(LieError::NotSolvable)
        }
    }

    /// `[g, rad g]` for the caller-supplied solvable radical.
    pub fn nilpotent_radical(&self, solvable_part: &Subspace) -> Result<Subspace, LieError> {
        self.check_radical(solvable_part)?;
        Ok(self.bracket_space(&self.full(), solvable_part))
    }

    /// Stable term of `r_1 = [g, rad g]`, `r_{k+1} = [g, r_k]`.
    pub fn exponential_radical(&self, solvable_part: &Subspace) -> Result<Subspace, LieError> {
        self.check_radical(solvable_part)?;
        let full = self.full();
        let mut term = self.bracket_space(&full, solvable_part);
        loop {
            let next = self.bracket_space(&full, &term);
            if next == term {
                return Ok(term);
            }
            term = next;
        }
    }

    /// The quotient algebra `g / ideal` with induced structure constants.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient, LieError> {
        if ideal.ambient_dim() != self.dim() {
            return Err(LieError::DimensionMismatch { expected: self.dim(), found: ideal.ambient_dim() });
        }
        self.check_ideal(ideal)?;
        let complement = ideal.complement_indices();
        let names = complement.iter().map(|&k| self.names[k].clone()).collect();
        let mut q = Quotient { algebra: LieAlgebra::abelian(Vec::new()), ideal: ideal.clone(), complement };
        let mut entries = Vec::new();
        for (a, &i) in q.complement.iter().enumerate() {
            for (b, &j) in q.complement.iter().enumerate().skip(a + 1) {
                for (k, c) in q.project(&self.table[i][j]).into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push(((a, b, k), c));
                    }
                }
            }
        }
        q.algebra = LieAlgebra::new(names, entries)?;
        Ok(q)
    }

    /// An F-basis of the nilpotent subalgebra `S`, in ambient coordinates.
    ///
    /// Built top-down: the deepest nonzero series term first, each shallower
    /// term completed by the first rows of its echelon form that are not yet
    /// in the span. Vectors are returned in nondecreasing weight order.
    pub fn f_basis_of(&self, s: &Subspace) -> Result<FBasis, LieError> {
        let series = self.lower_central_series_of(s);
        if !series.last().is_some_and(Subspace::is_zero) {
            return Err(LieError::NotNilpotent);
        }
        let depth = series.len() - 1; // series[depth] = 0
        let mut chosen: Vec<(u32, Vector)> = Vec::new();
        let mut span = Subspace::zero(self.dim());
        for j in (0..depth).rev() {
            let mut level = Vec::new();
            for row in series[j].basis() {
                if !span.contains(row) {
                    span = span.sum(&Subspace::span(self.dim(), [row.clone()]));
                    level.push((j as u32 + 1, row.clone()));
                }
            }
            chosen.splice(0..0, level);
        }
        let (weights, vectors) = chosen.into_iter().unzip();
        Ok(FBasis { vectors, weights })
    }

    /// An F-basis of the whole algebra; see [`LieAlgebra::f_basis_of`].
    pub fn f_basis(&self) -> Result<FBasis, LieError> {
        self.f_basis_of(&self.full())
    }

    /// The same algebra in the basis `f_i = sum_j p[i][j] e_j`.
    pub fn change_basis(&self, p: &[Vector], names: Vec<String>) -> Result<LieAlgebra, LieError> {
        let n = self.dim();
        if p.len() != n || names.len() != n {
            return Err(LieError::DimensionMismatch { expected: n, found: p.len() });
        }
        let inv = linalg::invert(p).ok_or_else(|| LieError::Input("basis change is singular".into()))?;
        let mut entries = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let z = self.bracket_unchecked(&p[a], &p[b]);
                // coordinates of z in the new basis: z = sum_k w_k f_k, w = z * inv
                for k in 0..n {
                    let mut w = Q::zero();
                    for (zi, row) in z.iter().zip(&inv) {
                        if !zi.is_zero() {
                            w += &(zi * &row[k]);
                        }
                    }
                    if !w.is_zero() {
                        entries.push(((a, b, k), w));
                    }
                }
            }
        }
        LieAlgebra::new(names, entries)
    }
}

pub fn nilpotency_of_series(series: &[Subspace]) -> Nilpotency {
    match series.iter().position(Subspace::is_zero) {
        Some(c) => Nilpotency::Degree(c),
        None => Nilpotency::NotNilpotent,
    }
}

/// Checks that `vectors` form an F-basis: for every `j`,
/// `series[j-1] == span{x_k : w_k >= j}` and the weights are nondecreasing.
pub fn is_f_basis(dim: usize, series: &[Subspace], basis: &FBasis) -> bool {
    if basis.weights.windows(2).any(|w| w[0] > w[1]) {
        return false;
    }
    series.iter().enumerate().all(|(j, term)| {
        let level = j as u32 + 1;
        let span = Subspace::span(
            dim,
            basis.vectors.iter().zip(&basis.weights).filter(|(_, &w)| w >= level).map(|(v, _)| v.clone()),
        );
        &span == term
    })
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}", self.names.join(","))?;
        for (&(i, j), _) in self.structure.iter().map(|((i, j, _), c)| ((*i, *j), c)).collect::<BTreeMap<_, _>>().iter() {
            write!(f, "; [{},{}]={}", self.names[i], self.names[j], fmt_vector(&self.table[i][j]))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    fn span(g: &LieAlgebra, names: &[&str]) -> Subspace {
        g.span_of_names(names).unwrap()
    }

    #[test]
    fn brackets_of_the_closing_examples() {
        let h = heisenberg();
        assert_eq!(h.bracket(&h.basis_vector(0), &h.basis_vector(1)).unwrap(), h.basis_vector(2));
        let s = solvable2();
        assert_eq!(s.bracket(&s.basis_vector(0), &s.basis_vector(1)).unwrap(), s.basis_vector(1));
        let x = vec![Q::from_int(3), Q::from_frac(1, 2), Q::from_int(-2)];
        assert!(linalg::is_zero_vector(&h.bracket(&x, &x).unwrap()));
        assert_eq!(
            h.bracket(&x, &[Q::from_int(1)]),
            Err(LieError::DimensionMismatch { expected: 3, found: 1 })
        );
    }

    #[test]
    fn jacobi_on_corpus_and_broken_sl2() {
        for g in [heisenberg(), solvable2(), abelian(2), filiform4(), upper_triangular3(), sl2()] {
            assert!(g.jacobi_check().holds, "{g:?}");
        }
        let report = broken_sl2().jacobi_check();
        assert!(!report.holds);
        assert_eq!(report.violations, vec![(0, 1, 2)]);
    }

    #[test]
    fn cyclic_bracket_family_always_satisfies_jacobi() {
        // [e1,e2]=a e3, [e1,e3]=b e2, [e2,e3]=c e1: every Jacobi term is
        // [e_k, multiple of e_k], so no sign choice breaks the identity.
        for (a, b, c) in [(1, 1, 1), (1, -1, 1), (-1, 1, 1), (1, 1, -1)] {
            let g = LieAlgebra::from_int_brackets(
                &["e1", "e2", "e3"],
                &[(0, 1, &[(2, a)]), (0, 2, &[(1, b)]), (1, 2, &[(0, c)])],
            );
            assert!(g.jacobi_check().holds);
        }
    }

    #[test]
    fn lower_central_series_examples() {
        let h = heisenberg();
        assert_eq!(h.lower_central_series(), vec![h.full(), span(&h, &["e3"]), Subspace::zero(3)]);
        let a = abelian(2);
        assert_eq!(a.lower_central_series(), vec![a.full(), Subspace::zero(2)]);
        let s = solvable2();
        assert_eq!(s.lower_central_series(), vec![s.full(), span(&s, &["e2"])]);
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(heisenberg().nilpotency_degree(), Nilpotency::Degree(2));
        for k in 1..=4 {
            assert_eq!(abelian(k).nilpotency_degree(), Nilpotency::Degree(1));
        }
        assert_eq!(solvable2().nilpotency_degree(), Nilpotency::NotNilpotent);
        assert_eq!(filiform4().nilpotency_degree(), Nilpotency::Degree(3));
        assert_eq!(abelian(0).nilpotency_degree(), Nilpotency::Degree(0));
    }

    #[test]
    fn radicals_of_the_closing_examples() {
        let s = solvable2();
        assert_eq!(s.nilpotent_radical(&s.full()).unwrap(), span(&s, &["e2"]));
        assert_eq!(s.exponential_radical(&s.full()).unwrap(), span(&s, &["e2"]));
        let h = heisenberg();
        assert_eq!(h.nilpotent_radical(&h.full()).unwrap(), span(&h, &["e3"]));
        assert!(h.exponential_radical(&h.full()).unwrap().is_zero());
        let a = abelian(3);
        assert!(a.nilpotent_radical(&a.full()).unwrap().is_zero());
        assert!(a.exponential_radical(&a.full()).unwrap().is_zero());
    }

    #[test]
    fn radical_rejects_non_ideal() {
        let h = heisenberg();
        let err = h.nilpotent_radical(&span(&h, &["e1"])).unwrap_err();
        assert!(matches!(err, LieError::NotAnIdeal { .. }), "{err}");
        let sl = sl2();
        assert_eq!(sl.exponential_radical(&sl.full()), Err(LieError::NotSolvable));
    }

    #[test]
    fn quotients() {
        let h = heisenberg();
        let q = h.quotient(&span(&h, &["e3"])).unwrap();
        assert_eq!(q.algebra, abelian_named(&["e1", "e2"]));
        let same = h.quotient(&Subspace::zero(3)).unwrap();
        assert_eq!(same.algebra, h);
        let zero = h.quotient(&h.full()).unwrap();
        assert_eq!(zero.algebra.dim(), 0);
        let err = h.quotient(&span(&h, &["e2"])).unwrap_err();
        assert!(matches!(err, LieError::NotAnIdeal { .. }));
    }

    #[test]
    fn f_basis_examples() {
        let h = heisenberg();
        let fb = h.f_basis().unwrap();
        assert_eq!(fb.weights, vec![1, 1, 2]);
        assert_eq!(fb.vectors[2], h.basis_vector(2));
        assert!(is_f_basis(3, &h.lower_central_series(), &fb));
        assert_eq!(abelian(2).f_basis().unwrap().weights, vec![1, 1]);
        let q = h.quotient(&h.nilpotent_radical(&h.full()).unwrap()).unwrap();
        assert_eq!(q.algebra.f_basis().unwrap().weights, vec![1, 1]);
        let f = filiform4();
        let fb = f.f_basis().unwrap();
        assert_eq!(fb.weights, vec![1, 1, 2, 3]);
        assert!(is_f_basis(4, &f.lower_central_series(), &fb));
        assert_eq!(solvable2().f_basis(), Err(LieError::NotNilpotent));
    }

    #[test]
    fn change_basis_preserves_invariants() {
        let f = filiform4();
        let p: Vec<Vector> = [[1, 0, 0, 0], [1, 1, 0, 0], [0, 2, 1, 0], [1, 0, -1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| Q::from_int(x)).collect())
            .collect();
        let g = f.change_basis(&p, (1..=4).map(|k| format!("f{k}")).collect()).unwrap();
        assert!(g.jacobi_check().holds);
        let dims = |a: &LieAlgebra| a.lower_central_series().iter().map(Subspace::dim).collect::<Vec<_>>();
        assert_eq!(dims(&g), dims(&f));
    }
}
