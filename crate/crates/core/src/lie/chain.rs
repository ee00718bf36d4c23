//! The iterated semidirect chain of a solvable algebra relative to an ideal
//! `n'` squeezed between the exponential and nilpotent radicals, and its
//! rendering as a left-nested smash factorization.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{nilpotency_of_series, LieAlgebra, LieError, Nilpotency};
use crate::linalg::{Subspace, Vector};
use crate::weights::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    DeltaBlock,
    ExpBlock,
    ReductiveTail,
}

impl FactorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FactorKind::DeltaBlock => "delta-block",
            FactorKind::ExpBlock => "exp-block",
            FactorKind::ReductiveTail => "reductive-tail",
        }
    }
}

/// Symbolic name of the algebra attached to a factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorLabel {
    /// `C[[x]]`.
    FormalSeries(String),
    /// `A_s` for `s > 0`.
    Series(BigRational),
    /// `O(C)`, the case `s = 0`.
    Entire,
    /// `AhatL`.
    Tail,
}

impl FactorLabel {
    /// `A_{w-1}`, shown as `O(C)` when `w = 1`.
    pub fn for_exponent(w: u32) -> FactorLabel {
        if w <= 1 {
            FactorLabel::Entire
        } else {
            FactorLabel::Series(BigRational::from_integer(BigInt::from(w - 1)))
        }
    }
}

impl fmt::Display for FactorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorLabel::FormalSeries(x) => write!(f, "C[[{x}]]"),
            FactorLabel::Series(s) => write!(f, "A_{s}"),
            FactorLabel::Entire => write!(f, "O(C)"),
            FactorLabel::Tail => write!(f, "AhatL"),
        }
    }
}

impl FromStr for FactorLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "O(C)" {
            return Ok(FactorLabel::Entire);
        }
        if s == "AhatL" {
            return Ok(FactorLabel::Tail);
        }
        if let Some(x) = s.strip_prefix("C[[").and_then(|r| r.strip_suffix("]]")) {
            if x.is_empty() || x.contains(['[', ']', '(', ')', ' ']) {
                return Err(format!("bad variable in `{s}`"));
            }
            return Ok(FactorLabel::FormalSeries(x.to_string()));
        }
        if let Some(rest) = s.strip_prefix("A_") {
            let r: BigRational = rest.parse().map_err(|_| format!("bad index in `{s}`"))?;
            return match r {
                r if r.is_zero() => Ok(FactorLabel::Entire),
                r if r > BigRational::zero() => Ok(FactorLabel::Series(r)),
                _ => Err(format!("negative index in `{s}`")),
            };
        }
        Err(format!("unknown factor `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainFactor {
    pub name: String,
    pub kind: FactorKind,
    pub weight: Weight,
    pub label: FactorLabel,
    /// Spanning vector in the input algebra; `None` for the tail.
    pub vector: Option<Vector>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionChain {
    pub factors: Vec<ChainFactor>,
    /// `dim n'`: the number of delta-blocks.
    pub p: usize,
    /// Nilpotency degree of `g / n'` (0 when the quotient is zero).
    pub m: usize,
    /// F-basis weights of `g / n'`, nondecreasing.
    pub w_exponents: Vec<u32>,
    pub tail_dim: usize,
}

impl DecompositionChain {
    pub fn labels(&self) -> Vec<FactorLabel> {
        self.factors.iter().map(|f| f.label.clone()).collect()
    }

    /// Spanning vectors of the one-dimensional factors, in chain order.
    pub fn vectors(&self) -> Vec<Vector> {
        self.factors.iter().filter_map(|f| f.vector.clone()).collect()
    }

    /// Left-nested rendering, e.g. `((C[[e3]] # O(C)) # O(C))`.
    pub fn factorization(&self) -> String {
        render_factorization(&self.labels())
    }
}

pub fn render_factorization(labels: &[FactorLabel]) -> String {
    let mut it = labels.iter();
    let Some(first) = it.next() else {
        return "C".into();
    };
    it.fold(first.to_string(), |acc, l| format!("({acc} # {l})"))
}

/// Inverse of [`DecompositionChain::factorization`].
pub fn parse_factorization(s: &str) -> Result<Vec<FactorLabel>, String> {
    fn expr(s: &str) -> Result<Vec<FactorLabel>, String> {
        let Some(inner) = s.strip_prefix('(') else {
            return Ok(vec![s.parse()?]);
        };
        let inner = inner.strip_suffix(')').ok_or_else(|| format!("unbalanced `{s}`"))?;
        let (left, right) = inner.rsplit_once(" # ").ok_or_else(|| format!("missing ` # ` in `{s}`"))?;
        let mut labels = expr(left)?;
        labels.push(right.parse()?);
        Ok(labels)
    }
    if s == "C" {
        return Ok(Vec::new());
    }
    expr(s)
}

fn factor_name(g: &LieAlgebra, v: &Vector, position: usize) -> String {
    let mut support = v.iter().enumerate().filter(|(_, c)| !c.is_zero());
    match (support.next(), support.next()) {
        (Some((k, c)), None) if c.is_one() => g.basis_names()[k].clone(),
        _ => format!("f{}", position + 1),
    }
}

/// Builds the chain of one-dimensional factors of the solvable algebra `g`
/// relative to `nprime`, followed by a reductive tail when `tail_dim > 0`.
///
/// Delta-blocks span `nprime`, deepest central-series layer first; the
/// exp-blocks are lifts of an F-basis of `g / nprime`, highest weight
/// first. Every prefix is checked to be an ideal of the next prefix.
pub fn semidirect_chain(g: &LieAlgebra, nprime: &Subspace, tail_dim: usize) -> Result<DecompositionChain, LieError> {
    if nprime.ambient_dim() != g.dim() {
        return Err(LieError::DimensionMismatch { expected: g.dim(), found: nprime.ambient_dim() });
    }
    let full = g.full();
    let e = g.exponential_radical(&full)?;
    let n = g.nilpotent_radical(&full)?;
    g.check_ideal(nprime)?;
    if !nprime.contains_subspace(&e) {
        return Err(LieError::Containment("E in N'"));
    }
    if !n.contains_subspace(nprime) {
        return Err(LieError::Containment("N' in N"));
    }

    let mut vectors: Vec<(Vector, FactorKind, u32)> = Vec::new();
    let delta = g.f_basis_of(nprime)?;
    for v in delta.vectors.into_iter().rev() {
        vectors.push((v, FactorKind::DeltaBlock, 0));
    }
    let q = g.quotient(nprime)?;
    let fq = q.algebra.f_basis()?;
    for (u, &w) in fq.vectors.iter().zip(&fq.weights).rev() {
        vectors.push((q.lift(u), FactorKind::ExpBlock, w));
    }

    let mut prefix = Subspace::zero(g.dim());
    for (v, _, _) in &vectors {
        let next = prefix.sum(&Subspace::span(g.dim(), [v.clone()]));
        g.check_stable_under(&next, &prefix)?;
        prefix = next;
    }

    let mut factors: Vec<ChainFactor> = vectors
        .into_iter()
        .enumerate()
        .map(|(i, (v, kind, w))| {
            let name = factor_name(g, &v, i);
            let (weight, label) = match kind {
                FactorKind::DeltaBlock => (Weight::poly(), FactorLabel::FormalSeries(name.clone())),
                _ => (Weight::exp_power(w), FactorLabel::for_exponent(w)),
            };
            ChainFactor { name, kind, weight, label, vector: Some(v) }
        })
        .collect();
    if tail_dim > 0 {
        factors.push(ChainFactor {
            name: "L".into(),
            kind: FactorKind::ReductiveTail,
            weight: Weight::Const { arity: tail_dim },
            label: FactorLabel::Tail,
            vector: None,
        });
    }
    let m = match nilpotency_of_series(&q.algebra.lower_central_series()) {
        Nilpotency::Degree(c) => c,
        Nilpotency::NotNilpotent => unreachable!("f_basis succeeded, so the quotient is nilpotent"),
    };
    Ok(DecompositionChain { factors, p: nprime.dim(), m, w_exponents: fq.weights, tail_dim })
}
