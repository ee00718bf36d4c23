use proptest::prelude::*;
use smashprod_core::cayley::{delta_smash_check, matrix_action_setup, CayleyGroup, GroupKind, WordWeightTable};

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn word_length_is_a_symmetric_metric(i in 0usize..2000, j in 0usize..2000, kind_idx in 0usize..3) {
        let kind: GroupKind = ["heis3z", "bs12", "zk:2"][kind_idx].parse().unwrap();
        let table = WordWeightTable::bfs(CayleyGroup::new(kind), 6);
        let entries = table.entries();
        let (g, gl) = &entries[i % entries.len()];
        let (h, hl) = &entries[j % entries.len()];
        let grp = table.group();
        prop_assert_eq!(table.length(&grp.inverse(g)), Some(*gl));
        if let Some(l) = table.length(&grp.multiply(g, h)) {
            prop_assert!(l <= gl + hl);
        } else {
            prop_assert!(gl + hl > table.radius());
        }
    }

    #[test]
    fn unimodular_actions_give_smash_isomorphisms(a in -2i64..=2, b in -2i64..=2, flip in any::<bool>(), seed in any::<u64>()) {
        // [[1, a], [0, 1]] * [[1, 0], [b, 1]], optionally composed with a sign
        let s = if flip { -1 } else { 1 };
        let m = vec![vec![s * (1 + a * b), s * a], vec![b, 1]];
        let setup = matrix_action_setup(m).unwrap();
        prop_assert!(delta_smash_check(&setup, 40, seed).unwrap().passed());
    }
}
