//! Dense exact linear algebra over `Q(i)`: reduced row-echelon form,
//! canonical subspaces, and small solves.

use std::fmt;

use num_traits::{One, Zero};

use crate::gauss::GaussianRational as Q;

pub type Vector = Vec<Q>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Q::zero(); n]
}

pub fn unit_vector(n: usize, k: usize) -> Vector {
    let mut v = zero_vector(n);
    v[k] = Q::one();
    v
}

pub fn is_zero_vector(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_scaled(acc: &mut [Q], c: &Q, v: &[Q]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

pub fn scale(c: &Q, v: &[Q]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Formats a coordinate vector as `[a, b, c]` with exact entries.
pub fn fmt_vector(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Reduced row-echelon form of `rows`. Zero rows are dropped; the pivot
/// column of each returned row is reported alongside.
pub fn rref(mut rows: Vec<Vector>, ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        rows[r] = scale(&inv, &rows[r]);
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[col].is_zero() {
                let c = -row[col].clone();
                add_scaled(row, &c, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &[Vector], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).0.len()
}

/// A linear subspace of `Q(i)^ambient`, stored in reduced row-echelon form
/// so that equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vector>) -> Self {
        let rows: Vec<Vector> = vectors.into_iter().collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let (rows, pivots) = rref(rows, ambient);
        Subspace { ambient, rows, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|k| unit_vector(ambient, k)))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its echelon reduction by this subspace. Zero iff `v` lies in
    /// the subspace; otherwise a canonical representative of `v` modulo it.
    pub fn reduce(&self, v: &[Q]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let c = -out[p].clone();
                add_scaled(&mut out, &c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }

    /// Indices of the standard basis vectors that complement this subspace
    /// (the non-pivot columns).
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|k| !self.pivots.contains(k)).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.rows.iter().map(|r| fmt_vector(r)).collect()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{:?}", self.to_strings())
    }
}

/// Coordinates of `v` in the (linearly independent) family `basis`, or
/// `None` if `v` is not in its span.
pub fn coordinates(basis: &[Vector], v: &[Q]) -> Option<Vector> {
    let n = v.len();
    let k = basis.len();
    // columns are basis vectors; augment with v
    let rows: Vec<Vector> = (0..n)
        .map(|i| basis.iter().map(|b| b[i].clone()).chain([v[i].clone()]).collect())
        .collect();
    let (red, pivots) = rref(rows, k + 1);
    if pivots.contains(&k) || pivots.len() < k {
        return None;
    }
    let mut out = zero_vector(k);
    for (row, &p) in red.iter().zip(&pivots) {
        out[p] = row[k].clone();
    }
    Some(out)
}

/// Inverse of a square matrix given by rows.
pub fn invert(m: &[Vector]) -> Option<Vec<Vector>> {
    let n = m.len();
    let rows: Vec<Vector> = m
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().cloned().chain(unit_vector(n, i)).collect())
        .collect();
    let (red, pivots) = rref(rows, 2 * n);
    if red.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Q::from_int(x)).collect()
    }

    #[test]
    fn echelon_form_is_canonical() {
        let a = Subspace::span(3, [v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, [v(&[1, 2, 1]), v(&[1, 0, -1]), v(&[2, 2, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(&[2, 3, 1])));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn complement_and_reduce() {
        let s = Subspace::span(3, [v(&[0, 0, 2])]);
        assert_eq!(s.complement_indices(), vec![0, 1]);
        assert_eq!(s.reduce(&v(&[1, 2, 5])), v(&[1, 2, 0]));
    }

    #[test]
    fn solve_and_invert() {
        let basis = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        assert_eq!(coordinates(&basis, &v(&[2, 3, 5])), Some(v(&[2, 3])));
        assert_eq!(coordinates(&basis, &v(&[1, 1, 1])), None);
        let m = vec![v(&[2, 1]), v(&[1, 1])];
        assert_eq!(invert(&m), Some(vec![v(&[1, -1]), v(&[-1, 2])]));
        assert_eq!(invert(&[v(&[1, 2]), v(&[2, 4])]), None);
    }
}
