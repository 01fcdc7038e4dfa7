//! Exhaustive cross-module invariants at desk scale.

use num_bigint::BigUint;
use ordtree::{
    catalan, decompose, enumerate_trees, half_vertices, phi, phi_inv, phi_map, phi_map_inv, psi,
    psi_inv, recompose, MarkedTree, Tree,
};

#[test]
fn enumeration_invariants_to_n_12() {
    for n in 0..=12u32 {
        let mut count = 0u64;
        let mut previous: Option<String> = None;
        let mut leaves = 0u64;
        let mut first_children = 0u64;
        let mut vertices = 0u64;
        for tree in enumerate_trees(n) {
            count += 1;
            let word = tree.serialize();
            assert_eq!(word.len(), 2 * n as usize);
            assert_eq!(Tree::parse(&word).unwrap(), tree, "round trip at n={n}");
            if let Some(prev) = &previous {
                assert!(prev < &word, "lexicographic order at n={n}: {prev} !< {word}");
            }
            previous = Some(word);

            let stats = tree.all_stats();
            assert_eq!(stats.len(), n as usize + 1, "vertex count at n={n}");
            let outdegree_sum: u32 = stats.iter().map(|st| st.outdegree).sum();
            assert_eq!(outdegree_sum, n, "outdegrees sum to the edge count");
            for (v, st) in stats.iter().enumerate() {
                assert_eq!(st.degree - st.outdegree, u32::from(v > 0));
            }
            vertices += stats.len() as u64;
            leaves += stats.iter().filter(|st| st.is_leaf).count() as u64;
            first_children += stats.iter().filter(|st| st.is_first_child).count() as u64;
        }
        assert_eq!(BigUint::from(count), catalan(n), "tree count at n={n}");
        if n >= 1 {
            // Half of all vertices are leaves; half are first-children.
            let half = half_vertices(n);
            assert_eq!(BigUint::from(leaves), half, "leaves at n={n}");
            assert_eq!(BigUint::from(first_children), half, "first-children at n={n}");
            assert_eq!(BigUint::from(vertices), &half * 2u32);
        }
    }
}

#[test]
fn codecs_round_trip_to_n_12() {
    for n in 0..=12u32 {
        for tree in enumerate_trees(n) {
            let edge_path = phi(&tree);
            assert_eq!(edge_path.len(), 2 * n as usize);
            assert_eq!(phi_inv(&edge_path), tree);
            let outdeg_path = psi(&tree);
            assert_eq!(outdeg_path.len(), 2 * n as usize);
            assert_eq!(psi_inv(&outdeg_path), tree);
        }
    }
}

#[test]
fn codecs_are_bijections_onto_dyck_words_to_n_10() {
    for n in 0..=10u32 {
        // Balanced parenthesis words of length 2n are exactly the Dyck
        // words of length 2n. ('(' < ')' but 'U' > 'D', so re-sort after
        // mapping.)
        let mut all_words: Vec<String> = enumerate_trees(n)
            .map(|t| t.serialize().replace('(', "U").replace(')', "D"))
            .collect();
        all_words.sort_unstable();
        let mut phi_image: Vec<String> =
            enumerate_trees(n).map(|t| phi(&t).to_string()).collect();
        phi_image.sort_unstable();
        assert_eq!(phi_image, all_words, "phi image at n={n}");
        let mut psi_image: Vec<String> =
            enumerate_trees(n).map(|t| psi(&t).to_string()).collect();
        psi_image.sort_unstable();
        assert_eq!(psi_image, all_words, "psi image at n={n}");
    }
}

#[test]
fn decompose_recompose_identity_to_n_10() {
    for n in 0..=10u32 {
        for tree in enumerate_trees(n) {
            let vertex_count = tree.vertex_count();
            for v in 0..vertex_count {
                let marked = MarkedTree::new(tree.clone(), v).unwrap();
                let parts = decompose(&marked);
                assert_eq!(recompose(&parts).unwrap(), marked, "n={n} {marked}");
            }
        }
    }
}

#[test]
fn bijection_suite_to_n_10() {
    let report = ordtree::verify_bijections(10);
    assert!(report.passed(), "{}", report.render_text());
}

#[test]
fn phi_map_round_trip_to_n_8() {
    for n in 1..=8u32 {
        for tree in enumerate_trees(n) {
            let stats = tree.all_stats();
            for (v, st) in stats.iter().enumerate() {
                let marked = MarkedTree::new(tree.clone(), v).unwrap();
                for k in 0..=st.outdegree {
                    for l in 0..=st.level {
                        let q = phi_map(&marked, k, l).unwrap();
                        assert_eq!(
                            phi_map_inv(&q, n, k, l).unwrap(),
                            marked,
                            "n={n} k={k} l={l} {marked}"
                        );
                    }
                }
            }
        }
    }
}
