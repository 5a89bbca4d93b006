//! Property-based checks of the algebraic identities behind the toolkit.

use proptest::prelude::*;

use lapspec::{canonical_form, integer_spectrum, Graph};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>(), any::<u64>()).prop_map(|(n, lo, hi)| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(k, _)| {
                let bit = if k < 64 { lo >> k } else { hi >> (k - 64) };
                bit & 1 == 1
            })
            .map(|(_, &p)| p)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn join_is_complement_of_union_of_complements(
        a in arb_graph(6),
        b in arb_graph(6),
    ) {
        let lhs = Graph::join(&a, &b).unwrap();
        let rhs = Graph::disjoint_union(&a.complement(), &b.complement())
            .unwrap()
            .complement();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(9)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn union_and_join_commute_up_to_isomorphism(
        a in arb_graph(5),
        b in arb_graph(5),
    ) {
        prop_assert_eq!(
            canonical_form(&Graph::disjoint_union(&a, &b).unwrap()),
            canonical_form(&Graph::disjoint_union(&b, &a).unwrap())
        );
        prop_assert_eq!(
            canonical_form(&Graph::join(&a, &b).unwrap()),
            canonical_form(&Graph::join(&b, &a).unwrap())
        );
    }

    #[test]
    fn canonical_form_is_relabeling_invariant(
        g in arb_graph(9),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let base = canonical_form(&g);
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..g.order()).collect();
        for _ in 0..5 {
            perm.shuffle(&mut rng);
            prop_assert_eq!(canonical_form(&g.relabel(&perm)), base.clone());
        }
    }

    #[test]
    fn relabeling_preserves_spectrum(g in arb_graph(7), perm in arb_perm(7)) {
        prop_assume!(perm.len() >= g.order());
        let perm: Vec<usize> = {
            // restrict the sampled permutation to the graph's order
            let mut p: Vec<usize> = perm.iter().copied().filter(|&v| v < g.order()).collect();
            p.truncate(g.order());
            p
        };
        prop_assert_eq!(integer_spectrum(&g.relabel(&perm)), integer_spectrum(&g));
    }

    #[test]
    fn graph6_round_trips(g in arb_graph(9)) {
        prop_assert_eq!(Graph::from_graph6(&g.to_graph6()).unwrap(), g);
    }

    #[test]
    fn spectrum_sum_is_twice_edge_count(g in arb_graph(8)) {
        if let Some(s) = integer_spectrum(&g) {
            prop_assert_eq!(s.sum(), 2 * g.edge_count());
        }
    }

    #[test]
    fn cartesian_product_edge_count(a in arb_graph(5), b in arb_graph(5)) {
        let p = Graph::cartesian_product(&a, &b).unwrap();
        prop_assert_eq!(p.order(), a.order() * b.order());
        prop_assert_eq!(
            p.edge_count(),
            a.edge_count() * b.order() + b.edge_count() * a.order()
        );
        prop_assert_eq!(p.is_connected(), a.is_connected() && b.is_connected());
    }
}
