//! Weight descriptors, their log-domain evaluation, sampled majorization
//! and the series norms on one-variable power series.

mod majorize;
mod norm;
mod parse;

pub use majorize::{
    decompose_check, equivalent, majorizes, majorizes_on_shells, sample_shells, EquivalenceVerdict,
    MajorizationReport, SampleRecord, SamplerConfig, Verdict,
};
pub use norm::{
    norm_submultiplicativity_check, product_bound_check, series_norm, series_norm_exact,
    ratio, NormCheckReport, ProductBoundReport, SeriesNorm,
};
pub use parse::ParseWeightError;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::cayley::{GroupElement, WordWeightTable};
use crate::lie::DecompositionChain;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightError {
    #[error("domain mismatch: weight expects {expected}, got {found}")]
    Domain { expected: String, found: String },
    #[error("element {0} lies beyond the word-weight radius")]
    BeyondRadius(String),
    #[error("invalid weight: {0}")]
    Invalid(String),
}

/// A point of the domain of a weight.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Complex(Vec<Complex64>),
    Group(GroupElement),
}

impl Point {
    pub fn real(xs: &[f64]) -> Point {
        Point::Complex(xs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    fn describe(&self) -> String {
        match self {
            Point::Complex(z) => format!("a point of C^{}", z.len()),
            Point::Group(g) => format!("group element {g:?}"),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Complex(z) => {
                let parts: Vec<String> = z
                    .iter()
                    .map(|c| if c.im == 0.0 { format!("{}", c.re) } else { format!("{}{:+}i", c.re, c.im) })
                    .collect();
                write!(f, "({})", parts.join(";"))
            }
            Point::Group(g) => {
                let parts: Vec<String> = g.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join(";"))
            }
        }
    }
}

/// Word weight `2^len` over a finished BFS table.
#[derive(Clone)]
pub struct WordWeight(pub Arc<WordWeightTable>);

impl fmt::Debug for WordWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WordWeight({}, R={})", self.0.group().name(), self.0.radius())
    }
}

impl PartialEq for WordWeight {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Weight {
    /// `1 + sum |z_i|`.
    Poly { arity: usize },
    /// `exp(|z|^(1/w))`.
    ExpPower { w: u32 },
    /// `exp(max_k |s_k|^(1/w_k))`.
    MaxPower { ws: Vec<u32> },
    /// Identically 1.
    Const { arity: usize },
    /// `exp(|sum c_k z_k|)`.
    ExpAbsLinear { coeffs: Vec<f64> },
    /// `exp(sum |z_i|^2)`; not submultiplicative.
    ExpSquares { arity: usize },
    Word(WordWeight),
    /// Pointwise product on a common domain.
    Product(Vec<Weight>),
    /// `prod_i w_i(z_i)` on the product of the factor domains.
    Tensor(Vec<Weight>),
    Power(Box<Weight>, f64),
    /// The inner weight evaluated at the point with coordinates placed at
    /// `positions` and zero elsewhere.
    Restrict { inner: Box<Weight>, positions: Vec<usize> },
    /// `1 + ln w`.
    OnePlusLog(Box<Weight>),
}

/// Domain of a weight: `C^k`, or the elements of a word-weight group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    Complex(usize),
    Group(String),
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Complex(k) => write!(f, "C^{k}"),
            Domain::Group(name) => write!(f, "elements of {name}"),
        }
    }
}

fn invalid(msg: impl Into<String>) -> WeightError {
    WeightError::Invalid(msg.into())
}

impl Weight {
    pub fn poly() -> Weight {
        Weight::Poly { arity: 1 }
    }

    pub fn exp_power(w: u32) -> Weight {
        Weight::ExpPower { w }
    }

    pub fn domain(&self) -> Domain {
        use Weight::*;
        match self {
            Poly { arity } | Const { arity } | ExpSquares { arity } => Domain::Complex(*arity),
            ExpPower { .. } => Domain::Complex(1),
            MaxPower { ws } => Domain::Complex(ws.len()),
            ExpAbsLinear { coeffs } => Domain::Complex(coeffs.len()),
            Word(t) => Domain::Group(t.0.group().name()),
            Product(parts) => parts.first().map_or(Domain::Complex(0), Weight::domain),
            Tensor(parts) => Domain::Complex(parts.iter().map(|p| p.arity().unwrap_or(0)).sum()),
            Power(inner, _) | OnePlusLog(inner) => inner.domain(),
            Restrict { positions, .. } => Domain::Complex(positions.len()),
        }
    }

    /// `Some(k)` for weights on `C^k`.
    pub fn arity(&self) -> Option<usize> {
        match self.domain() {
            Domain::Complex(k) => Some(k),
            Domain::Group(_) => None,
        }
    }

    /// Structural checks: exponents at least 1, matching product domains,
    /// in-range restrictions, positive finite powers.
    pub fn validate(&self) -> Result<(), WeightError> {
        use Weight::*;
        match self {
            ExpPower { w } if *w == 0 => Err(invalid("exppow needs w >= 1")),
            MaxPower { ws } if ws.contains(&0) => Err(invalid("maxpow needs every w >= 1")),
            ExpAbsLinear { coeffs } if coeffs.iter().any(|c| !c.is_finite()) => {
                Err(invalid("expabs coefficients must be finite"))
            }
            Product(parts) => {
                let Some(first) = parts.first() else {
                    return Err(invalid("empty product"));
                };
                for p in parts {
                    p.validate()?;
                    if p.domain() != first.domain() {
                        return Err(invalid(format!("product mixes {} and {}", first.domain(), p.domain())));
                    }
                }
                Ok(())
            }
            Tensor(parts) => {
                for p in parts {
                    p.validate()?;
                    if p.arity().is_none() {
                        return Err(invalid("tensor factors must live on C^k"));
                    }
                }
                Ok(())
            }
            Power(inner, g) => {
                if !(g.is_finite() && *g > 0.0) {
                    return Err(invalid("pow needs a positive finite exponent"));
                }
                inner.validate()
            }
            OnePlusLog(inner) => inner.validate(),
            Restrict { inner, positions } => {
                inner.validate()?;
                let k = inner.arity().ok_or_else(|| invalid("restriction needs a weight on C^k"))?;
                let mut seen = vec![false; k];
                for &p in positions {
                    if p >= k || std::mem::replace(&mut seen[p], true) {
                        return Err(invalid(format!("bad restriction position {p} for arity {k}")));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `ln w(point)`. Group elements with integer coordinates are read as
    /// points of `C^k` by weights on `C^k`.
    pub fn log_eval(&self, point: &Point) -> Result<f64, WeightError> {
        match (self, point) {
            (Weight::Word(t), Point::Group(g)) => t
                .0
                .length(g)
                .map(|n| n as f64 * std::f64::consts::LN_2)
                .ok_or_else(|| WeightError::BeyondRadius(format!("{g:?}"))),
            (Weight::Word(_), _) => Err(self.mismatch(point)),
            (Weight::Product(parts), _) => parts.iter().map(|p| p.log_eval(point)).sum(),
            (Weight::Power(inner, g), _) => Ok(g * inner.log_eval(point)?),
            (Weight::OnePlusLog(inner), _) => Ok(inner.log_eval(point)?.ln_1p()),
            (_, Point::Complex(z)) => self.log_eval_complex(z, point),
            (_, Point::Group(g)) => {
                let z: Vec<Complex64> = g.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect();
                self.log_eval_complex(&z, point)
            }
        }
    }

    fn mismatch(&self, point: &Point) -> WeightError {
        WeightError::Domain { expected: self.domain().to_string(), found: point.describe() }
    }

    fn log_eval_complex(&self, z: &[Complex64], point: &Point) -> Result<f64, WeightError> {
        use Weight::*;
        if self.arity() != Some(z.len()) {
            return Err(self.mismatch(point));
        }
        Ok(match self {
            Poly { .. } => z.iter().map(|c| c.norm()).sum::<f64>().ln_1p(),
            ExpPower { w } => z[0].norm().powf(1.0 / *w as f64),
            MaxPower { ws } => {
                z.iter().zip(ws).map(|(c, &w)| c.norm().powf(1.0 / w as f64)).fold(0.0, f64::max)
            }
            Const { .. } => 0.0,
            ExpAbsLinear { coeffs } => z.iter().zip(coeffs).map(|(c, &a)| c * a).sum::<Complex64>().norm(),
            ExpSquares { .. } => z.iter().map(|c| c.norm_sqr()).sum(),
            Tensor(parts) => {
                let mut total = 0.0;
                let mut rest = z;
                for p in parts {
                    let (head, tail) = rest.split_at(p.arity().expect("validated"));
                    total += p.log_eval(&Point::Complex(head.to_vec()))?;
                    rest = tail;
                }
                total
            }
            Restrict { inner, positions } => {
                let mut full = vec![Complex64::new(0.0, 0.0); inner.arity().expect("validated")];
                for (&p, &c) in positions.iter().zip(z) {
                    full[p] = c;
                }
                inner.log_eval(&Point::Complex(full))?
            }
            Word(_) | Product(_) | Power(..) | OnePlusLog(_) => unreachable!("handled in log_eval"),
        })
    }

    pub fn eval(&self, point: &Point) -> Result<f64, WeightError> {
        self.log_eval(point).map(f64::exp)
    }

    /// Factors of a tensor weight; any other weight is its own single factor.
    pub fn tensor_parts(&self) -> Vec<Weight> {
        match self {
            Weight::Tensor(parts) => parts.clone(),
            other => vec![other.clone()],
        }
    }
}

/// `(1 + sum |s_i|) * exp(max_k |t_k|^(1/w_k)) * 1` on the chain's
/// coordinates: delta-block coordinates, then exp-block coordinates in
/// weight order, then the tail.
pub fn chain_weight(chain: &DecompositionChain) -> Weight {
    let mut parts = Vec::new();
    if chain.p > 0 {
        parts.push(Weight::Poly { arity: chain.p });
    }
    if !chain.w_exponents.is_empty() {
        parts.push(Weight::MaxPower { ws: chain.w_exponents.clone() });
    }
    if chain.tail_dim > 0 {
        parts.push(Weight::Const { arity: chain.tail_dim });
    }
    match parts.len() {
        0 => Weight::Const { arity: 0 },
        1 => parts.pop().expect("one part"),
        _ => Weight::Tensor(parts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{examples, semidirect_chain};

    fn at(w: &Weight, xs: &[f64]) -> f64 {
        w.eval(&Point::real(xs)).unwrap()
    }

    #[test]
    fn leaf_values() {
        assert_eq!(at(&Weight::poly(), &[0.0]), 1.0);
        assert!((at(&Weight::exp_power(2), &[4.0]) - 2f64.exp()).abs() < 1e-12);
        let mu = Weight::MaxPower { ws: vec![1, 1, 2] };
        assert!((at(&mu, &[1.0, 1.0, 4.0]) - 2f64.exp()).abs() < 1e-12);
        let z = Point::Complex(vec![Complex64::new(3.0, 4.0)]);
        assert!((Weight::poly().eval(&z).unwrap() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn combinators() {
        let t = Weight::Tensor(vec![Weight::poly(), Weight::exp_power(1)]);
        assert!((at(&t, &[1.0, 2.0]) - 2.0 * 2f64.exp()).abs() < 1e-12);
        let r = Weight::Restrict { inner: Box::new(t.clone()), positions: vec![1] };
        assert!((at(&r, &[2.0]) - 2f64.exp()).abs() < 1e-12);
        let s = Weight::Power(Box::new(Weight::poly()), 0.5);
        assert!((at(&s, &[3.0]) - 2.0).abs() < 1e-12);
        let l = Weight::OnePlusLog(Box::new(Weight::exp_power(1)));
        assert!((at(&l, &[5.0]) - 6.0).abs() < 1e-12);
        let p = Weight::Product(vec![Weight::poly(), Weight::poly()]);
        assert!((at(&p, &[2.0]) - 9.0).abs() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(Weight::poly().eval(&Point::real(&[1.0, 2.0])), Err(WeightError::Domain { .. })));
        assert!(Weight::ExpPower { w: 0 }.validate().is_err());
        let bad = Weight::Restrict { inner: Box::new(Weight::poly()), positions: vec![1] };
        assert!(bad.validate().is_err());
        let mixed = Weight::Product(vec![Weight::poly(), Weight::Poly { arity: 2 }]);
        assert!(mixed.validate().is_err());
    }

    #[test]
    fn chain_weights_of_the_examples() {
        let h = examples::heisenberg();
        let n = h.nilpotent_radical(&h.full()).unwrap();
        let w = chain_weight(&semidirect_chain(&h, &n, 0).unwrap());
        assert_eq!(w, Weight::Tensor(vec![Weight::Poly { arity: 1 }, Weight::MaxPower { ws: vec![1, 1] }]));
        assert!((at(&w, &[2.0, 1.0, 3.0]) - 3.0 * 3f64.exp()).abs() < 1e-9);

        let zero = crate::linalg::Subspace::zero(3);
        let w = chain_weight(&semidirect_chain(&h, &zero, 0).unwrap());
        assert_eq!(w, Weight::MaxPower { ws: vec![1, 1, 2] });
        assert!((at(&w, &[1.0, 0.5, 9.0]) - 3f64.exp()).abs() < 1e-9);

        let a = examples::abelian(1);
        let w = chain_weight(&semidirect_chain(&a, &crate::linalg::Subspace::zero(1), 0).unwrap());
        assert!((at(&w, &[-2.5]) - 2.5f64.exp()).abs() < 1e-12);
    }
}
