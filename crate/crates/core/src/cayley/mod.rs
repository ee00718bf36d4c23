//! Finitely generated group models with canonical normal forms, and exact
//! word lengths by breadth-first search.

mod distortion;
mod smash;

pub use distortion::{distortion_fit, DistortionClass, DistortionFit};
pub use smash::{
    delta_smash_check, heisenberg_as_semidirect, matrix_action_setup, weighted_l1_submult_check, DeltaSmashReport,
    DeltaSmashSetup, L1Report,
};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use smallvec::{smallvec, SmallVec};
use thiserror::Error;

/// Normal-form coordinates of a group element; the layout depends on the
/// group kind.
pub type GroupElement = SmallVec<[i64; 4]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("cannot parse group `{0}`")]
    UnknownGroup(String),
    #[error("cannot parse element `{input}` of {group}: {reason}")]
    BadElement { group: String, input: String, reason: String },
    #[error("matrix must be square, integral and of determinant +-1")]
    BadMatrix,
    #[error("only {points} contiguous powers lie within the radius; at least 8 are needed")]
    InsufficientData { points: usize },
    #[error("coordinate overflow")]
    Overflow,
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
}

pub type Matrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    /// `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
    Heis3Z,
    /// `Z[1/2] x| Z` as `(m, e, k)` meaning `(m/2^e, k)`, reduced so that `m`
    /// is odd or `e = 0`; `(x,k)(y,l) = (x + 2^k y, k+l)`.
    BS12,
    Zk(usize),
    /// `Z^k x|_M Z`: `(v,n)(w,m) = (v + M^n w, n+m)`.
    Semidirect { m: Matrix, m_inv: Matrix },
}

/// Integer inverse of a unimodular matrix via the adjugate.
fn unimodular_inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    fn det(m: &Matrix) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Matrix = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum()
    }
    let d = det(m);
    if d != 1 && d != -1 {
        return None;
    }
    let cof = |i: usize, j: usize| {
        let minor: Matrix = m
            .iter()
            .enumerate()
            .filter(|&(r, _)| r != i)
            .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
            .collect();
        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
        sign * det(&minor)
    };
    Some((0..n).map(|i| (0..n).map(|j| cof(j, i) * d).collect()).collect())
}

impl GroupKind {
    pub fn semidirect(m: Matrix) -> Result<GroupKind, CayleyError> {
        let m_inv = unimodular_inverse(&m).ok_or(CayleyError::BadMatrix)?;
        Ok(GroupKind::Semidirect { m, m_inv })
    }
}

/// Parses `heis3z`, `bs12`, `zk:K` and `semidirect:a,b;c,d` (rows of `M`).
impl FromStr for GroupKind {
    type Err = CayleyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CayleyError::UnknownGroup(s.to_string());
        match s.trim() {
            "heis3z" => Ok(GroupKind::Heis3Z),
            "bs12" => Ok(GroupKind::BS12),
            other => {
                if let Some(k) = other.strip_prefix("zk:") {
                    return k.parse().map(GroupKind::Zk).map_err(|_| bad());
                }
                let rows = other.strip_prefix("semidirect:").ok_or_else(bad)?;
                let m: Matrix = rows
                    .split(';')
                    .map(|r| r.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| bad())?;
                GroupKind::semidirect(m)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGroup {
    kind: GroupKind,
    generators: Vec<GroupElement>,
}

impl CayleyGroup {
    /// The group with its standard symmetric generating set.
    pub fn new(kind: GroupKind) -> CayleyGroup {
        let mut base: Vec<GroupElement> = match &kind {
            GroupKind::Heis3Z => vec![smallvec![1, 0, 0], smallvec![0, 1, 0]],
            GroupKind::BS12 => vec![smallvec![1, 0, 0], smallvec![0, 0, 1]],
            GroupKind::Zk(k) => (0..*k).map(|i| unit(*k, i)).collect(),
            GroupKind::Semidirect { m, .. } => (0..=m.len()).map(|i| unit(m.len() + 1, i)).collect(),
        };
        let mut g = CayleyGroup { kind, generators: Vec::new() };
        let inverses: Vec<GroupElement> = base.iter().map(|x| g.inverse(x)).collect();
        base.extend(inverses);
        g.generators = base;
        g
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn name(&self) -> String {
        match &self.kind {
            GroupKind::Heis3Z => "heis3z".into(),
            GroupKind::BS12 => "bs12".into(),
            GroupKind::Zk(k) => format!("zk:{k}"),
            GroupKind::Semidirect { m, .. } => {
                let rows: Vec<String> =
                    m.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")).collect();
                format!("semidirect:{}", rows.join(";"))
            }
        }
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn identity(&self) -> GroupElement {
        smallvec![0; self.coords()]
    }

    fn coords(&self) -> usize {
        match &self.kind {
            GroupKind::Heis3Z | GroupKind::BS12 => 3,
            GroupKind::Zk(k) => *k,
            GroupKind::Semidirect { m, .. } => m.len() + 1,
        }
    }

    /// `m^n` applied to `v`, for either sign of `n`.
    fn matrix_power_apply(m: &Matrix, m_inv: &Matrix, n: i64, v: &[i64]) -> Vec<i64> {
        let base = if n >= 0 { m } else { m_inv };
        let mut out = v.to_vec();
        for _ in 0..n.unsigned_abs() {
            out = base.iter().map(|row| row.iter().zip(&out).map(|(a, b)| a * b).sum()).collect();
        }
        out
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        match &self.kind {
            GroupKind::Heis3Z => smallvec![x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1]],
            GroupKind::BS12 => {
                // x.0/2^x.1 + 2^k y.0/2^y.1 over the common denominator
                let k = x[2];
                let (ym, ye) = (y[0] as i128, y[1] - k);
                let (xm, xe) = (x[0] as i128, x[1]);
                let (ym, ye) = if ye < 0 { (ym << (-ye), 0) } else { (ym, ye) };
                let e = xe.max(ye);
                let m = (xm << (e - xe)) + (ym << (e - ye));
                let (m, e) = reduce_dyadic(m, e);
                smallvec![i64::try_from(m).expect("bs12 coordinate overflow"), e, k + y[2]]
            }
            GroupKind::Zk(_) => x.iter().zip(y).map(|(a, b)| a + b).collect(),
            GroupKind::Semidirect { m, m_inv } => {
                let k = m.len();
                let n = x[k];
                let w = Self::matrix_power_apply(m, m_inv, n, &y[..k]);
                let mut out: GroupElement = x[..k].iter().zip(&w).map(|(a, b)| a + b).collect();
                out.push(n + y[k]);
                out
            }
        }
    }

    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        match &self.kind {
            GroupKind::Heis3Z => smallvec![-x[0], -x[1], x[0] * x[1] - x[2]],
            GroupKind::BS12 => {
                // (x,k)^-1 = (-2^-k x, -k)
                let k = x[2];
                let (m, e) = if k > 0 {
                    reduce_dyadic(-(x[0] as i128), x[1] + k)
                } else {
                    reduce_dyadic(-((x[0] as i128) << (-k)), x[1])
                };
                smallvec![i64::try_from(m).expect("bs12 coordinate overflow"), e, -k]
            }
            GroupKind::Zk(_) => x.iter().map(|a| -a).collect(),
            GroupKind::Semidirect { m, m_inv } => {
                let k = m.len();
                let n = x[k];
                let v: Vec<i64> = x[..k].iter().map(|a| -a).collect();
                let mut out: GroupElement = Self::matrix_power_apply(m, m_inv, -n, &v).into_iter().collect();
                out.push(-n);
                out
            }
        }
    }

    pub fn power(&self, x: &GroupElement, n: u64) -> GroupElement {
        let mut out = self.identity();
        for _ in 0..n {
            out = self.multiply(&out, x);
        }
        out
    }

    pub fn commutator(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let xy = self.multiply(x, y);
        let xiyi = self.multiply(&self.inverse(x), &self.inverse(y));
        self.multiply(&xy, &xiyi)
    }

    /// Parses `(a,b,...)`. For `bs12` the first coordinate is a dyadic
    /// rational `p` or `p/2^e`, the second the `t`-exponent.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement, CayleyError> {
        let bad = |reason: &str| CayleyError::BadElement { group: self.name(), input: s.into(), reason: reason.into() };
        let body = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(|| bad("expected (..)"))?;
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        if let GroupKind::BS12 = self.kind {
            let [x, k] = parts.as_slice() else {
                return Err(bad("expected (x,k)"));
            };
            let k: i64 = k.parse().map_err(|_| bad("bad t-exponent"))?;
            let (num, den) = x.split_once('/').unwrap_or((x, "1"));
            let num: i64 = num.trim().parse().map_err(|_| bad("bad numerator"))?;
            let den: i64 = den.trim().parse().map_err(|_| bad("bad denominator"))?;
            if den <= 0 || den & (den - 1) != 0 {
                return Err(bad("denominator must be a power of two"));
            }
            let (m, e) = reduce_dyadic(num as i128, den.trailing_zeros() as i64);
            return Ok(smallvec![m as i64, e, k]);
        }
        if parts.len() != self.coords() {
            return Err(bad(&format!("expected {} coordinates", self.coords())));
        }
        parts.iter().map(|p| p.parse::<i64>().map_err(|_| bad("bad integer"))).collect()
    }

    pub fn format_element(&self, x: &GroupElement) -> String {
        if let GroupKind::BS12 = self.kind {
            return if x[1] == 0 { format!("({},{})", x[0], x[2]) } else { format!("({}/{},{})", x[0], 1i64 << x[1], x[2]) };
        }
        let parts: Vec<String> = x.iter().map(ToString::to_string).collect();
        format!("({})", parts.join(","))
    }
}

fn unit(k: usize, i: usize) -> GroupElement {
    let mut v: GroupElement = smallvec![0; k];
    v[i] = 1;
    v
}

fn reduce_dyadic(mut m: i128, mut e: i64) -> (i128, i64) {
    if m == 0 {
        return (0, 0);
    }
    while e > 0 && m % 2 == 0 {
        m /= 2;
        e -= 1;
    }
    (m, e)
}

/// Exact word lengths of every element of the ball of radius `R`.
pub struct WordWeightTable {
    group: CayleyGroup,
    radius: u32,
    lengths: HashMap<GroupElement, u32>,
    sphere_sizes: Vec<usize>,
}

impl WordWeightTable {
    pub fn bfs(group: CayleyGroup, radius: u32) -> WordWeightTable {
        let mut lengths = HashMap::new();
        let id = group.identity();
        lengths.insert(id.clone(), 0);
        let mut frontier = vec![id];
        let mut sphere_sizes = vec![1];
        for n in 1..=radius {
            let mut next = Vec::new();
            for x in &frontier {
                for s in group.generators() {
                    let y = group.multiply(x, s);
                    if let std::collections::hash_map::Entry::Vacant(slot) = lengths.entry(y) {
                        next.push(slot.key().clone());
                        slot.insert(n);
                    }
                }
            }
            sphere_sizes.push(next.len());
            frontier = next;
        }
        WordWeightTable { group, radius, lengths, sphere_sizes }
    }

    pub fn group(&self) -> &CayleyGroup {
        &self.group
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// Word length, or `None` beyond the radius.
    pub fn length(&self, g: &GroupElement) -> Option<u32> {
        self.lengths.get(g).copied()
    }

    /// `2^len`, or `None` beyond the radius.
    pub fn word_weight(&self, g: &GroupElement) -> Option<u128> {
        self.length(g).map(|n| 1u128 << n)
    }

    /// Number of elements at each distance `0..=R`.
    pub fn sphere_sizes(&self) -> &[usize] {
        &self.sphere_sizes
    }

    /// All entries sorted by normal form.
    pub fn entries(&self) -> Vec<(GroupElement, u32)> {
        let mut v: Vec<_> = self.lengths.iter().map(|(g, &n)| (g.clone(), n)).collect();
        v.sort();
        v
    }

    /// `(m, len(h^m))` for `m = 1, 2, ...` while `h^m` lies within the radius.
    pub fn power_lengths(&self, h: &GroupElement) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut x = h.clone();
        for m in 1.. {
            let Some(n) = self.length(&x) else { break };
            out.push((m, n));
            x = self.group.multiply(&x, h);
        }
        out
    }
}

impl fmt::Debug for WordWeightTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WordWeightTable({}, R={}, {} elements)", self.group.name(), self.radius, self.len())
    }
}
