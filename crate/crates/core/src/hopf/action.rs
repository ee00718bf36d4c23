//! Module-algebra actions built from derivations (primitive acting
//! generator) and from finite-order automorphisms (group-like acting
//! generator).

use super::{add_to, GeneratorKind, HopfError, HopfKind, SparseVec, TruncatedHopf};
use crate::gauss::GaussianRational as Q;

/// A derivation of `A`, given by the images of its generators.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    pub images: Vec<SparseVec>,
}

impl Derivation {
    pub fn zero(a: &TruncatedHopf) -> Derivation {
        Derivation { images: vec![SparseVec::new(); a.generators().len()] }
    }

    /// `D(x_k) = sum_j matrix[k][j] x_j`.
    pub fn linear(a: &TruncatedHopf, matrix: &[Vec<Q>]) -> Result<Derivation, HopfError> {
        let n = a.generators().len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(HopfError::Unsupported(format!("derivation matrix must be {n}x{n}")));
        }
        let mut images = Vec::with_capacity(n);
        for row in matrix {
            let mut img = SparseVec::new();
            for (j, c) in row.iter().enumerate() {
                let g = a.generator_index(j).ok_or_else(|| HopfError::Unsupported("truncation removes generators".into()))?;
                add_to(&mut img, g, c.clone());
            }
            images.push(img);
        }
        Ok(Derivation { images })
    }
}

/// An action of `H` on `A`: `table[h][a]` is `b_h . b_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleAlgebraAction {
    pub h: TruncatedHopf,
    pub a: TruncatedHopf,
    pub(crate) table: Vec<Vec<SparseVec>>,
}

impl ModuleAlgebraAction {
    /// `b_h . b_a`.
    pub fn act_basis(&self, h: usize, a: usize) -> &SparseVec {
        &self.table[h][a]
    }

    pub fn act(&self, h: &SparseVec, a: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, x) in h {
            for (&j, y) in a {
                let xy = x * y;
                for (&k, c) in &self.table[i][j] {
                    add_to(&mut out, k, &xy * c);
                }
            }
        }
        out
    }

    /// `h . a = eps(h) a`.
    pub fn trivial(h: TruncatedHopf, a: TruncatedHopf) -> Result<ModuleAlgebraAction, HopfError> {
        check_degrees(&h, &a)?;
        let table = (0..h.dim())
            .map(|i| (0..a.dim()).map(|j| scale(&a.basis_vec(j), &h.counit[i])).collect())
            .collect();
        Ok(ModuleAlgebraAction { h, a, table })
    }
}

fn scale(v: &SparseVec, c: &Q) -> SparseVec {
    let mut out = SparseVec::new();
    for (&k, x) in v {
        add_to(&mut out, k, x * c);
    }
    out
}

fn add_vec(acc: &mut SparseVec, v: &SparseVec) {
    for (&k, x) in v {
        add_to(acc, k, x.clone());
    }
}

fn check_degrees(h: &TruncatedHopf, a: &TruncatedHopf) -> Result<(), HopfError> {
    if h.degree != a.degree {
        return Err(HopfError::DegreeMismatch(h.degree, a.degree));
    }
    Ok(())
}

/// Every generator image must have degree at most that of the generator.
fn check_not_raising(a: &TruncatedHopf, images: &[SparseVec]) -> Result<(), HopfError> {
    for (g, img) in a.generators().iter().zip(images) {
        let bound = usize::from(g.kind == GeneratorKind::Primitive);
        if let Some(&k) = img.keys().find(|&&k| a.basis_degree(k) > bound) {
            return Err(HopfError::Unsupported(format!(
                "image of {} contains {}, which raises degree",
                g.name,
                a.fmt_basis(k)
            )));
        }
    }
    Ok(())
}

/// Extends generator images to the basis as a derivation, by the Leibniz
/// rule along each basis word.
fn derivation_on_basis(a: &TruncatedHopf, images: &[SparseVec]) -> Vec<SparseVec> {
    (0..a.dim())
        .map(|i| {
            let word = a.word(i);
            let gens: Vec<SparseVec> = word.iter().map(|&g| a.basis_vec(a.generator_index(g).expect("generator in basis"))).collect();
            let mut total = SparseVec::new();
            for p in 0..word.len() {
                let mut term = a.basis_vec(a.unit());
                for (q, g) in gens.iter().enumerate() {
                    term = a.mul(&term, if q == p { &images[word[p]] } else { g });
                }
                add_vec(&mut total, &term);
            }
            total
        })
        .collect()
}

/// Extends generator images to the basis multiplicatively.
fn homomorphism_on_basis(a: &TruncatedHopf, images: &[SparseVec]) -> Vec<SparseVec> {
    (0..a.dim())
        .map(|i| a.word(i).iter().fold(a.basis_vec(a.unit()), |acc, &g| a.mul(&acc, &images[g])))
        .collect()
}

fn apply(table: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (&i, x) in v {
        for (&k, c) in &table[i] {
            add_to(&mut out, k, x * c);
        }
    }
    out
}

/// Pairs `(u, v)` of basis indices with `deg u + deg v <= D`.
fn reachable_pairs(a: &TruncatedHopf) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..a.dim()).flat_map(move |u| {
        (0..a.dim()).filter(move |&v| a.basis_degree(u) + a.basis_degree(v) <= a.degree).map(move |v| (u, v))
    })
}

/// The action of `C[[y]]` on `A` with `y^n` acting as `D^n`. Checks the
/// Leibniz rule on all reachable pairs and then the module-algebra axioms.
pub fn derivation_to_action(h: &TruncatedHopf, a: &TruncatedHopf, d: &Derivation) -> Result<ModuleAlgebraAction, HopfError> {
    if h.kind != HopfKind::PrimitiveSeries {
        return Err(HopfError::Unsupported("derivation actions need a one-generator primitive series algebra".into()));
    }
    check_degrees(h, a)?;
    if d.images.len() != a.generators().len() {
        return Err(HopfError::Unsupported("one image per generator is required".into()));
    }
    check_not_raising(a, &d.images)?;
    let on_basis = derivation_on_basis(a, &d.images);
    for (u, v) in reachable_pairs(a) {
        let lhs = apply(&on_basis, &a.mult[u][v]);
        let mut rhs = a.mul(&on_basis[u], &a.basis_vec(v));
        add_vec(&mut rhs, &a.mul(&a.basis_vec(u), &on_basis[v]));
        if lhs != rhs {
            return Err(HopfError::NotADerivation(format!(
                "D({} * {}) = {} but D(u)v + uD(v) = {}",
                a.fmt_basis(u),
                a.fmt_basis(v),
                a.fmt_vec(&lhs),
                a.fmt_vec(&rhs)
            )));
        }
    }
    // h basis is 1, y, y^2, ... in order
    let mut table = Vec::with_capacity(h.dim());
    let mut power: Vec<SparseVec> = (0..a.dim()).map(|i| a.basis_vec(i)).collect();
    for _ in 0..h.dim() {
        let next = power.iter().map(|v| apply(&on_basis, v)).collect();
        table.push(std::mem::replace(&mut power, next));
    }
    let action = ModuleAlgebraAction { h: h.clone(), a: a.clone(), table };
    verify_module_algebra(&action)?;
    Ok(action)
}

/// The action of the cyclic group algebra `C[Z/N]` on `A` with `g^k`
/// acting as `phi^k`, where `phi` is given on generators. Checks that
/// `phi` is multiplicative on reachable pairs and that `phi^N = id`.
pub fn automorphism_to_action(h: &TruncatedHopf, a: &TruncatedHopf, images: &[SparseVec]) -> Result<ModuleAlgebraAction, HopfError> {
    let HopfKind::GroupLike { order } = h.kind else {
        return Err(HopfError::Unsupported("automorphism actions need a cyclic group algebra".into()));
    };
    check_degrees(h, a)?;
    if images.len() != a.generators().len() {
        return Err(HopfError::Unsupported("one image per generator is required".into()));
    }
    check_not_raising(a, images)?;
    let phi = homomorphism_on_basis(a, images);
    for (u, v) in reachable_pairs(a) {
        let lhs = apply(&phi, &a.mult[u][v]);
        let rhs = a.mul(&phi[u], &phi[v]);
        if lhs != rhs {
            return Err(HopfError::NotAnAutomorphism(format!("not multiplicative on {} * {}", a.fmt_basis(u), a.fmt_basis(v))));
        }
    }
    let mut table = Vec::with_capacity(order as usize);
    let mut power: Vec<SparseVec> = (0..a.dim()).map(|i| a.basis_vec(i)).collect();
    for _ in 0..order {
        let next = power.iter().map(|v| apply(&phi, v)).collect();
        table.push(std::mem::replace(&mut power, next));
    }
    if let Some(i) = (0..a.dim()).find(|&i| power[i] != a.basis_vec(i)) {
        return Err(HopfError::NotAnAutomorphism(format!("phi^{order} moves {}", a.fmt_basis(i))));
    }
    let action = ModuleAlgebraAction { h: h.clone(), a: a.clone(), table };
    verify_module_algebra(&action)?;
    Ok(action)
}

/// Module and module-algebra axioms on all inputs of total degree at most
/// `D`: `1.a = a`, `(hg).a = h.(g.a)`, `h.(ab) = sum (h1.a)(h2.b)`,
/// `h.1 = eps(h) 1`. Returns the number of identities checked.
pub fn verify_module_algebra(action: &ModuleAlgebraAction) -> Result<usize, HopfError> {
    let (h, a) = (&action.h, &action.a);
    let d = a.degree;
    let fail = |msg: String| Err(HopfError::NotModuleAlgebra(msg));
    let mut checked = 0;
    for i in 0..a.dim() {
        checked += 1;
        if action.table[h.unit()][i] != a.basis_vec(i) {
            return fail(format!("1 . {} != {}", a.fmt_basis(i), a.fmt_basis(i)));
        }
    }
    for x in 0..h.dim() {
        checked += 1;
        let expected = scale(&a.basis_vec(a.unit()), &h.counit[x]);
        if action.table[x][a.unit()] != expected {
            return fail(format!("{} . 1 != eps * 1", h.fmt_basis(x)));
        }
        for y in 0..h.dim() {
            for i in 0..a.dim() {
                if h.basis_degree(x) + h.basis_degree(y) + a.basis_degree(i) > d {
                    continue;
                }
                checked += 1;
                let lhs = action.act(&h.mult[x][y], &a.basis_vec(i));
                let rhs = action.act(&h.basis_vec(x), &action.table[y][i]);
                if lhs != rhs {
                    return fail(format!("({} {}) . {}", h.fmt_basis(x), h.fmt_basis(y), a.fmt_basis(i)));
                }
            }
        }
        for (u, v) in reachable_pairs(a) {
            if h.basis_degree(x) + a.basis_degree(u) + a.basis_degree(v) > d {
                continue;
            }
            checked += 1;
            let lhs = action.act(&h.basis_vec(x), &a.mult[u][v]);
            let mut rhs = SparseVec::new();
            for (&(x1, x2), c) in &h.comult[x] {
                let term = a.mul(&action.table[x1][u], &action.table[x2][v]);
                add_vec(&mut rhs, &scale(&term, c));
            }
            if lhs != rhs {
                return fail(format!("{} . ({} * {})", h.fmt_basis(x), a.fmt_basis(u), a.fmt_basis(v)));
            }
        }
    }
    Ok(checked)
}
