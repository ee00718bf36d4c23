//! Exhaustive axiom checks on the reachable set: all basis inputs whose
//! total degree is at most the truncation degree.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::action::verify_module_algebra;
use super::smash::{smash_multiply, SmashAlgebra};
use super::{add_to, SparseVec, TruncatedHopf};
use crate::gauss::GaussianRational as Q;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    /// Number of identities compared.
    pub checked: usize,
    /// First failing input.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HopfReport {
    pub subject: String,
    pub truncation: usize,
    pub dim: usize,
    pub cocommutative: bool,
    pub checks: Vec<AxiomCheck>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for HopfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (D={}, dim={}, cocommutative={})", self.subject, self.truncation, self.dim, self.cocommutative)?;
        for c in &self.checks {
            write!(f, "  {:<16} {} ({} checked)", c.name, if c.passed { "pass" } else { "FAIL" }, c.checked)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Accumulates one named check, stopping at the first witness.
struct Check {
    name: &'static str,
    checked: usize,
    witness: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Check {
        Check { name, checked: 0, witness: None }
    }

    fn done(&self) -> bool {
        self.witness.is_some()
    }

    fn expect<T: PartialEq>(&mut self, lhs: T, rhs: T, witness: impl FnOnce() -> String) {
        if self.done() {
            return;
        }
        self.checked += 1;
        if lhs != rhs {
            self.witness = Some(witness());
        }
    }

    fn finish(self) -> AxiomCheck {
        AxiomCheck { name: self.name.into(), passed: self.witness.is_none(), checked: self.checked, witness: self.witness }
    }
}

type Triple = BTreeMap<(usize, usize, usize), Q>;

fn mul_vec_left(x: &TruncatedHopf, u: &SparseVec, j: usize) -> SparseVec {
    x.mul(u, &x.basis_vec(j))
}

/// `mu (S (x) 1) Delta u` when `left`, else `mu (1 (x) S) Delta u`.
fn antipode_convolution(x: &TruncatedHopf, u: usize, left: bool) -> SparseVec {
    let mut out = SparseVec::new();
    for (&(l, r), c) in &x.comult[u] {
        let (a, b) = if left { (x.antipode[l].clone(), x.basis_vec(r)) } else { (x.basis_vec(l), x.antipode[r].clone()) };
        for (k, v) in x.mul(&a, &b) {
            add_to(&mut out, k, c * &v);
        }
    }
    out
}

/// Unit, associativity, coassociativity, counit, bialgebra compatibility and
/// both antipode convolution identities.
pub fn verify_hopf_axioms(x: &TruncatedHopf) -> HopfReport {
    let n = x.dim();
    let d = x.degree;
    let deg = |i: usize| x.basis_degree(i);
    let one = x.basis_vec(x.unit());

    let mut unit = Check::new("unit");
    for i in 0..n {
        let e = x.basis_vec(i);
        unit.expect(x.mul(&one, &e), e.clone(), || format!("1 * {}", x.fmt_basis(i)));
        unit.expect(x.mul(&e, &one), e, || format!("{} * 1", x.fmt_basis(i)));
    }

    let mut assoc = Check::new("associativity");
    'outer: for i in 0..n {
        for j in 0..n {
            if deg(i) + deg(j) > d {
                continue;
            }
            for k in 0..n {
                if deg(i) + deg(j) + deg(k) > d {
                    continue;
                }
                let lhs = mul_vec_left(x, &x.mult[i][j], k);
                let rhs = x.mul(&x.basis_vec(i), &x.mult[j][k]);
                assoc.expect(lhs, rhs, || format!("({} * {}) * {}", x.fmt_basis(i), x.fmt_basis(j), x.fmt_basis(k)));
                if assoc.done() {
                    break 'outer;
                }
            }
        }
    }

    let mut coassoc = Check::new("coassociativity");
    let mut counit = Check::new("counit");
    for u in 0..n {
        let mut left = Triple::new();
        let mut right = Triple::new();
        let mut eps_l = SparseVec::new();
        let mut eps_r = SparseVec::new();
        for (&(a, b), c) in &x.comult[u] {
            for (&(a1, a2), c2) in &x.comult[a] {
                add_to(&mut left, (a1, a2, b), c * c2);
            }
            for (&(b1, b2), c2) in &x.comult[b] {
                add_to(&mut right, (a, b1, b2), c * c2);
            }
            add_to(&mut eps_l, b, c * &x.counit[a]);
            add_to(&mut eps_r, a, c * &x.counit[b]);
        }
        coassoc.expect(left, right, || format!("Delta({})", x.fmt_basis(u)));
        counit.expect(eps_l, x.basis_vec(u), || format!("(eps (x) 1) Delta({})", x.fmt_basis(u)));
        counit.expect(eps_r, x.basis_vec(u), || format!("(1 (x) eps) Delta({})", x.fmt_basis(u)));
    }

    let mut bialg = Check::new("bialgebra");
    for i in 0..n {
        for j in 0..n {
            if deg(i) + deg(j) > d {
                continue;
            }
            let prod = &x.mult[i][j];
            bialg.expect(x.comul(prod), x.tensor_mul(&x.comult[i], &x.comult[j]), || {
                format!("Delta({} * {})", x.fmt_basis(i), x.fmt_basis(j))
            });
            bialg.expect(x.counit_of(prod), &x.counit[i] * &x.counit[j], || {
                format!("eps({} * {})", x.fmt_basis(i), x.fmt_basis(j))
            });
        }
    }

    let mut anti = Check::new("antipode");
    for u in 0..n {
        let target: SparseVec = if x.counit[u] == Q::from_int(0) {
            SparseVec::new()
        } else {
            SparseVec::from([(x.unit(), x.counit[u].clone())])
        };
        anti.expect(antipode_convolution(x, u, true), target.clone(), || format!("mu (S (x) 1) Delta({})", x.fmt_basis(u)));
        anti.expect(antipode_convolution(x, u, false), target, || format!("mu (1 (x) S) Delta({})", x.fmt_basis(u)));
    }

    HopfReport {
        subject: x.name.clone(),
        truncation: d,
        dim: n,
        cocommutative: x.is_cocommutative(),
        checks: [unit, assoc, coassoc, counit, bialg, anti].into_iter().map(Check::finish).collect(),
    }
}

/// The Hopf axioms of `A # H` plus the module-algebra axioms of the action,
/// multiplicativity of `i` and `j`, and the intertwining identity
/// `i(h . a) = sum j(h1) i(a) j(S h2)`.
pub fn verify_smash(s: &SmashAlgebra) -> HopfReport {
    let mut report = verify_hopf_axioms(s.algebra());
    let (a, h) = (s.a(), s.h());
    let d = a.degree;

    report.checks.push(match verify_module_algebra(s.action()) {
        Ok(checked) => AxiomCheck { name: "module-algebra".into(), passed: true, checked, witness: None },
        Err(e) => AxiomCheck { name: "module-algebra".into(), passed: false, checked: 0, witness: Some(e.to_string()) },
    });

    let mut embed = Check::new("embeddings");
    for u in 0..a.dim() {
        for v in 0..a.dim() {
            if a.basis_degree(u) + a.basis_degree(v) <= d {
                let lhs = s.embed_a(&a.mult[u][v]);
                let rhs = smash_multiply(s, &s.embed_a(&a.basis_vec(u)), &s.embed_a(&a.basis_vec(v)));
                embed.expect(lhs, rhs, || format!("i({} * {})", a.fmt_basis(u), a.fmt_basis(v)));
            }
        }
    }
    for u in 0..h.dim() {
        for v in 0..h.dim() {
            if h.basis_degree(u) + h.basis_degree(v) <= d {
                let lhs = s.embed_h(&h.mult[u][v]);
                let rhs = smash_multiply(s, &s.embed_h(&h.basis_vec(u)), &s.embed_h(&h.basis_vec(v)));
                embed.expect(lhs, rhs, || format!("j({} * {})", h.fmt_basis(u), h.fmt_basis(v)));
            }
        }
    }

    let mut inter = Check::new("intertwining");
    for x in 0..h.dim() {
        for y in 0..a.dim() {
            if h.basis_degree(x) + a.basis_degree(y) > d {
                continue;
            }
            let lhs = s.embed_a(s.action().act_basis(x, y));
            let ia = s.embed_a(&a.basis_vec(y));
            let mut rhs = SparseVec::new();
            for (&(h1, h2), c) in &h.comult[x] {
                let left = smash_multiply(s, &s.embed_h(&h.basis_vec(h1)), &ia);
                let term = smash_multiply(s, &left, &s.embed_h(&h.antipode_of(&h.basis_vec(h2))));
                for (k, v) in term {
                    add_to(&mut rhs, k, c * &v);
                }
            }
            inter.expect(lhs, rhs, || format!("{} . {}", h.fmt_basis(x), a.fmt_basis(y)));
        }
    }

    let mut table = Check::new("smash-formula");
    let alg = s.algebra();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let direct = smash_multiply(s, &alg.basis_vec(i), &alg.basis_vec(j));
            table.expect(&alg.mult[i][j], &direct, || format!("{} * {}", alg.fmt_basis(i), alg.fmt_basis(j)));
        }
    }

    report.checks.extend([embed, inter, table].into_iter().map(Check::finish));
    report
}
