//! The small algebras used throughout the tests, the CLI corpus and the
//! benches.

use super::LieAlgebra;

/// `[e1, e2] = e3`.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::from_int_brackets(&["e1", "e2", "e3"], &[(0, 1, &[(2, 1)])])
}

/// `[e1, e2] = e2`.
pub fn solvable2() -> LieAlgebra {
    LieAlgebra::from_int_brackets(&["e1", "e2"], &[(0, 1, &[(1, 1)])])
}

/// `C^k` with basis `e1..ek`.
pub fn abelian(k: usize) -> LieAlgebra {
    LieAlgebra::abelian((1..=k).map(|i| format!("e{i}")).collect())
}

pub fn abelian_named(names: &[&str]) -> LieAlgebra {
    LieAlgebra::abelian(names.iter().map(|s| s.to_string()).collect())
}

/// `[e1, e2] = e3`, `[e1, e3] = e4`.
pub fn filiform4() -> LieAlgebra {
    LieAlgebra::from_int_brackets(
        &["e1", "e2", "e3", "e4"],
        &[(0, 1, &[(2, 1)]), (0, 2, &[(3, 1)])],
    )
}

/// Upper-triangular 3x3 matrices, basis `E11, E22, E33, E12, E13, E23`.
pub fn upper_triangular3() -> LieAlgebra {
    let units = [(1, 1), (2, 2), (3, 3), (1, 2), (1, 3), (2, 3)];
    let names: Vec<String> = units.iter().map(|(a, b)| format!("E{a}{b}")).collect();
    let index = |a: usize, b: usize| units.iter().position(|&u| u == (a, b));
    let mut entries = Vec::new();
    for (x, &(i, j)) in units.iter().enumerate() {
        for (y, &(k, l)) in units.iter().enumerate().skip(x + 1) {
            // [E_ij, E_kl] = d_jk E_il - d_li E_kj
            if j == k {
                entries.push(((x, y, index(i, l).expect("upper triangular")), 1.into()));
            }
            if l == i {
                entries.push(((x, y, index(k, j).expect("upper triangular")), (-1).into()));
            }
        }
    }
    LieAlgebra::new(names, entries).expect("well-formed")
}

/// `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = h`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_int_brackets(
        &["h", "e", "f"],
        &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])],
    )
}

/// `sl2` with the sign of `[h, f]` flipped; the Jacobi sum on `(h, e, f)`
/// is `-4h`.
pub fn broken_sl2() -> LieAlgebra {
    LieAlgebra::from_int_brackets(
        &["h", "e", "f"],
        &[(0, 1, &[(1, 2)]), (0, 2, &[(2, 2)]), (1, 2, &[(0, 1)])],
    )
}
