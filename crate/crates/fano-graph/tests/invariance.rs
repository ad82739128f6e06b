//! Property tests: canonical certificates and automorphism orders are
//! invariant under vertex relabeling, and relabeled graphs are detected
//! as isomorphic.

use fano_graph::FanoGraph;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_graph(n: usize, seed: u64) -> FanoGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mult = vec![vec![0u8; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let m = *[0u8, 0, 1, 1, 2].choose(&mut rng).unwrap();
            mult[i][j] = m;
            mult[j][i] = m;
        }
    }
    FanoGraph::from_multiplicities(mult).unwrap()
}

fn random_perm(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rng);
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificate_invariant_under_relabeling(
        n in 1usize..12,
        gseed in any::<u64>(),
        pseed in any::<u64>(),
    ) {
        let g = random_graph(n, gseed);
        let h = g.permuted(&random_perm(n, pseed));
        prop_assert_eq!(
            g.canonical_form().certificate,
            h.canonical_form().certificate
        );
        prop_assert!(g.is_isomorphic(&h));
        prop_assert_eq!(g.aut_order(), h.aut_order());
    }

    #[test]
    fn canonical_labeling_reproduces_certificate(
        n in 1usize..12,
        gseed in any::<u64>(),
    ) {
        // Relabeling a graph by its own canonical labeling yields a graph
        // whose identity labeling realizes the certificate.
        let g = random_graph(n, gseed);
        let form = g.canonical_form();
        let canon = g.permuted(&form.labeling);
        let again = canon.canonical_form();
        prop_assert_eq!(form.certificate, again.certificate);
    }

    #[test]
    fn automorphism_generators_preserve_edges(
        n in 2usize..10,
        gseed in any::<u64>(),
    ) {
        let g = random_graph(n, gseed);
        for aut in &g.canonical_form().generators {
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(g.mult(aut[i], aut[j]), g.mult(i, j));
                }
            }
        }
    }
}
