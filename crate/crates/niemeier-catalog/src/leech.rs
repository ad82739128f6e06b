//! The Leech lattice, built from the binary Golay code in the standard
//! eighth-integral frame: integer coordinate vectors `x` with inner
//! product `x·y/8`, congruent to `m·(1,…,1) mod 2` with mod-4 defect set
//! a Golay word and coordinate sum `4m mod 8`.

use crate::golay::GolayCode;
use crate::niemeier::NiemeierLattice;
use crate::CatalogError;
use lattice_core::{QMat, QVec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Integer frame coordinates of the standard generators: doubled Golay
/// generator words, the scaled `D24` vectors, and the odd vector
/// `(−3, 1²³)`.
pub fn leech_frame_generators() -> Vec<Vec<i64>> {
    let code = GolayCode::build();
    let mut gens: Vec<Vec<i64>> = Vec::new();
    // Doubled codewords; the twelve lexicographically smallest nonzero
    // words of a generating set are recovered from the code itself via
    // greedy span extraction.
    let mut span: Vec<u32> = vec![0];
    for &w in code.words() {
        if span.contains(&w) {
            continue;
        }
        let before = span.clone();
        for s in before {
            span.push(s ^ w);
        }
        gens.push((0..24).map(|i| if w >> i & 1 == 1 { 2 } else { 0 }).collect());
        if span.len() == code.len() {
            break;
        }
    }
    let mut v = vec![0i64; 24];
    v[0] = 4;
    v[1] = 4;
    gens.push(v);
    for i in 1..24 {
        let mut v = vec![0i64; 24];
        v[0] = 4;
        v[i] = -4;
        gens.push(v);
    }
    gens.push(std::iter::once(-3).chain(std::iter::repeat(1).take(23)).collect());
    gens
}

pub fn build_leech() -> Result<NiemeierLattice, CatalogError> {
    let dim = 24usize;
    let eighth = BigRational::new(BigInt::from(1), BigInt::from(8));
    let mut ambient_gram: QMat = vec![vec![BigRational::zero(); dim]; dim];
    for (i, row) in ambient_gram.iter_mut().enumerate() {
        row[i] = eighth.clone();
    }
    let generators: Vec<QVec> = leech_frame_generators()
        .into_iter()
        .map(|g| g.into_iter().map(|x| BigRational::from(BigInt::from(x))).collect())
        .collect();
    let lat = NiemeierLattice::from_frame("Leech", Vec::new(), Vec::new(), ambient_gram, &generators)?;
    lat.validate()?;
    if !lat.roots()?.is_empty() {
        return Err(CatalogError::BadLattice {
            name: "Leech".to_string(),
            reason: "the Leech lattice must be root-free".to_string(),
        });
    }
    Ok(lat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn leech_is_even_unimodular_and_root_free() {
        let lat = build_leech().unwrap();
        assert_eq!(lat.lattice().rank(), 24);
        assert_eq!(lat.lattice().det(), &BigInt::one());
        assert!(lat.lattice().is_positive_definite());
        assert!(lat.roots().unwrap().is_empty());
        assert!(lat.components().is_empty());
    }

    #[test]
    fn frame_membership_conditions_hold_on_the_basis() {
        let code = GolayCode::build();
        let lat = build_leech().unwrap();
        for row in lat.basis() {
            let x: Vec<i64> = row
                .iter()
                .map(|c| {
                    assert!(c.is_integer());
                    i64::try_from(c.to_integer()).unwrap()
                })
                .collect();
            let m = x[0].rem_euclid(2);
            assert!(x.iter().all(|&c| c.rem_euclid(2) == m));
            let defect: u32 = (0..24)
                .filter(|&i| x[i].rem_euclid(4) == (m + 2).rem_euclid(4))
                .map(|i| 1u32 << i)
                .sum();
            assert!(code.contains(defect), "defect set must be a Golay word");
            let sum: i64 = x.iter().sum();
            assert_eq!(sum.rem_euclid(8), (4 * m).rem_euclid(8));
        }
    }

    #[test]
    #[ignore = "enumerates all 196560 minimal vectors; slow"]
    fn minimal_vector_count() {
        let lat = build_leech().unwrap();
        let minimal = lat.lattice().enumerate_vectors(4, &[]).unwrap();
        assert_eq!(minimal.len(), 196560);
    }
}
