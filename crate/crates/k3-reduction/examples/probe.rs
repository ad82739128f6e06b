use k3_reduction::{check_discriminant_relations, random_polarized_hyperbolic, reduce};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for d in 1..=4 {
        for i in 0..60 {
            let t0 = Instant::now();
            let ns = random_polarized_hyperbolic(d, &mut rng);
            let t1 = Instant::now();
            let red = reduce(&ns).unwrap();
            let t2 = Instant::now();
            let report = check_discriminant_relations(&ns, &red.s).unwrap();
            let t3 = Instant::now();
            let g = ns.lattice().gram();
            let maxg = (0..g.rows()).flat_map(|a| (0..g.cols()).map(move |b| (a, b)))
                .map(|(a, b)| g[(a, b)].magnitude().clone()).max().unwrap();
            eprintln!(
                "d={d} i={i} rank={} maxg={} gen={:?} reduce={:?} rel={:?} pass={}",
                ns.lattice().rank(), maxg,
                t1 - t0, t2 - t1, t3 - t2, report.all_pass()
            );
        }
    }
}
