//! Fixtures shared by the benchmarks.

use smashprod_core::hopf::{iterated_smash, lie_chain_actions, SmashAlgebra};
use smashprod_core::lie::{examples, semidirect_chain, DecompositionChain, LieAlgebra};

/// The Heisenberg algebra with its chain over the nilradical.
pub fn heisenberg_chain() -> (LieAlgebra, DecompositionChain) {
    let g = examples::heisenberg();
    let n = g.nilpotent_radical(&g.full()).expect("solvable");
    let chain = semidirect_chain(&g, &n, 0).expect("valid nilradical");
    (g, chain)
}

pub fn heisenberg_smash(d: usize) -> SmashAlgebra {
    let (g, chain) = heisenberg_chain();
    let actions = lie_chain_actions(&g, &chain).expect("chain is a tower of ideals");
    iterated_smash(&chain, d, &actions).expect("no tail")
}
