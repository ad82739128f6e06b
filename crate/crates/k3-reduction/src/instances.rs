//! Randomized generation of small polarized lattices for property testing:
//! hyperbolic NS ∋ h with at least one conic, and positive definite S ∋ ħ
//! with at least one Fano vector, both obscured by a random unimodular
//! change of basis.

use crate::polarized::{PolarizedDefinite, PolarizedHyperbolic};
use lattice_core::mat::{qmat_inverse, signature};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

fn random_unimodular(n: usize, rng: &mut impl Rng) -> Vec<Vec<i64>> {
    let mut t: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..(2 * n + rng.gen_range(0..=n)) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        if rng.gen_bool(0.2) {
            t.swap(i, j);
        } else {
            let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
            for k in 0..n {
                t[i][k] += c * t[j][k];
            }
        }
    }
    t
}

fn transform(gram: &[Vec<i64>], coords: &[i64], rng: &mut impl Rng) -> (Vec<Vec<i64>>, Vec<i64>) {
    let n = gram.len();
    let t = random_unimodular(n, rng);
    let mut g2 = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0i64;
            for a in 0..n {
                for b in 0..n {
                    acc += t[i][a] * gram[a][b] * t[j][b];
                }
            }
            g2[i][j] = acc;
        }
    }
    // New coordinates y of the old-coordinate vector x solve x = y T.
    let tq: Vec<Vec<BigRational>> = t
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from(BigInt::from(x))).collect())
        .collect();
    let t_inv = qmat_inverse(&tq).expect("unimodular");
    let y: Vec<i64> = (0..n)
        .map(|j| {
            let mut acc = BigRational::from(BigInt::from(0));
            for (i, &xi) in coords.iter().enumerate() {
                acc += BigRational::from(BigInt::from(xi)) * &t_inv[i][j];
            }
            i64::try_from(acc.to_integer()).unwrap()
        })
        .collect();
    (g2, y)
}

fn is_hyperbolic(gram: &[Vec<i64>]) -> bool {
    let q: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from(BigInt::from(x))).collect())
        .collect();
    let (pos, neg) = signature(&q);
    pos == 1 && pos + neg == gram.len()
}

/// A random hyperbolic 2d-polarized lattice with at least one conic, rank
/// 2 to 4, in a randomized basis.
pub fn random_polarized_hyperbolic(d: i64, rng: &mut impl Rng) -> PolarizedHyperbolic {
    loop {
        // Core basis {h, c}: h² = 2d, c² = −2, c·h = 2 (a built-in conic).
        let extra = rng.gen_range(0..=2usize);
        let n = 2 + extra;
        let mut gram = vec![vec![0i64; n]; n];
        gram[0][0] = 2 * d;
        gram[0][1] = 2;
        gram[1][0] = 2;
        gram[1][1] = -2;
        for i in 2..n {
            for j in 0..i {
                let p = rng.gen_range(-2..=2i64);
                gram[i][j] = p;
                gram[j][i] = p;
            }
            gram[i][i] = -2 * rng.gen_range(1..=3i64);
        }
        if !is_hyperbolic(&gram) {
            continue;
        }
        let mut h = vec![0i64; n];
        h[0] = 1;
        let (g2, h2) = transform(&gram, &h, rng);
        if let Ok(lat) = lattice_core::IntegerLattice::from_i64(&g2) {
            if let Ok(ns) = PolarizedHyperbolic::new(lat, h2) {
                return ns;
            }
        }
    }
}

/// A random positive definite 2d(d−1)-polarized lattice with at least one
/// Fano vector, built from a fixed seed block plus random small definite
/// summands, in a randomized basis.
pub fn random_polarized_definite(d: i64, rng: &mut impl Rng) -> PolarizedDefinite {
    // Seed blocks carry a Fano vector l as the first basis vector.
    let (seed, hbar_seed): (Vec<Vec<i64>>, Vec<i64>) = match d {
        1 => (vec![vec![4]], vec![0]),
        2 => (vec![vec![4, -2], vec![-2, 4]], vec![1, 1]),
        3 => (vec![vec![4, 0], vec![0, 8]], vec![1, 1]),
        4 => (vec![vec![4, 2], vec![2, 16]], vec![1, 1]),
        _ => panic!("instance generator supports d in 1..=4"),
    };
    let summands: [&[&[i64]]; 4] =
        [&[&[2]], &[&[4]], &[&[6]], &[&[2, 1], &[1, 2]]];
    let mut gram: Vec<Vec<i64>> = seed;
    for _ in 0..rng.gen_range(0..=2usize) {
        let block = summands[rng.gen_range(0..summands.len())];
        let off = gram.len();
        let n = off + block.len();
        for row in &mut gram {
            row.resize(n, 0);
        }
        for brow in block.iter() {
            let mut row = vec![0i64; n];
            row[off..n].copy_from_slice(brow);
            gram.push(row);
        }
    }
    let mut hbar = hbar_seed;
    hbar.resize(gram.len(), 0);
    let (g2, h2) = transform(&gram, &hbar, rng);
    let lat = lattice_core::IntegerLattice::from_i64(&g2).expect("definite seed gram");
    PolarizedDefinite::new(lat, h2, d).expect("seed satisfies the polarization invariants")
}
