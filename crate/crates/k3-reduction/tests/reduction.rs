//! Round-trip, bijection-count, and discriminant-relation tests for the
//! reduction dictionary, on fixed examples and randomized instances.

use k3_reduction::{
    check_discriminant_relations, classify_irreducible, enumerate_fn, hyp, hyp_candidates,
    pair_products, random_polarized_definite, random_polarized_hyperbolic, reduce, K3Error,
    PolarizationType, PolarizedDefinite, PolarizedHyperbolic,
};
use lattice_core::{IntegerLattice, LatticeVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lat(rows: &[&[i64]]) -> IntegerLattice {
    IntegerLattice::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn qint(x: i64) -> BigRational {
    BigRational::from(BigInt::from(x))
}

/// Composes hyp and reduce and verifies that the explicit coordinate map
/// back to S is a polarization-preserving isometry onto S.
fn assert_roundtrip(s: &PolarizedDefinite, kappa: Option<&[i64]>) {
    let model = hyp(s, kappa).unwrap();
    let red = reduce(&model.ns).unwrap();
    let r = s.lattice().rank();
    assert_eq!(red.s.lattice().rank(), r, "round trip must preserve rank");
    assert_eq!(red.s.d(), s.d());

    // Each basis vector of the re-reduced lattice maps to S ⊗ Q by
    // substituting the hyperbolic model's frame and sending the formal ħ of
    // the reduction to the original ħ.
    let hbar_q: Vec<BigRational> = s.hbar().iter().map(|&x| qint(x)).collect();
    let phi: Vec<Vec<BigRational>> = red
        .basis_map
        .iter()
        .map(|(u, t)| {
            let mut s_part = vec![BigRational::zero(); r];
            let mut h_coeff = BigRational::zero();
            for (i, ui) in u.iter().enumerate() {
                let (ref w, ref c) = model.basis_map[i];
                for j in 0..r {
                    s_part[j] += ui * &w[j];
                }
                h_coeff += ui * c;
            }
            assert!(h_coeff.is_zero(), "h-perp vectors have no h component");
            for j in 0..r {
                s_part[j] += t * &hbar_q[j];
            }
            s_part
        })
        .collect();

    // Integrality: the image lies in S.
    let phi_int: Vec<Vec<i64>> = phi
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    assert!(x.denom().is_one(), "image must be integral");
                    i64::try_from(x.numer()).unwrap()
                })
                .collect()
        })
        .collect();
    // Isometry: the Gram matrices agree.
    for i in 0..r {
        for j in 0..r {
            assert_eq!(
                s.lattice().inner_int(&phi_int[i], &phi_int[j]),
                i128::try_from(red.s.lattice().gram()[(i, j)].clone()).unwrap(),
                "gram mismatch at ({i}, {j})"
            );
        }
    }
    // Surjectivity: determinant +-1.
    let m = lattice_core::IMat::from_i64_rows(&phi_int);
    assert!(lattice_core::mat::det(&m).abs().is_one(), "map must be onto S");
    // Polarization: ħ maps to ħ.
    let image_hbar: Vec<i64> = (0..r)
        .map(|j| (0..r).map(|i| red.s.hbar()[i] * phi_int[i][j]).sum())
        .collect();
    assert_eq!(image_hbar, s.hbar());
}

#[test]
fn roundtrip_type_one_for_all_degrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in 1..=4 {
        for _ in 0..25 {
            let s = random_polarized_definite(d, &mut rng);
            assert_roundtrip(&s, None);
        }
    }
}

#[test]
fn roundtrip_type_two_when_kappa_exists() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut seen = 0;
    for d in [1i64, 3] {
        for _ in 0..40 {
            let s = random_polarized_definite(d, &mut rng);
            for (kappa, _) in hyp_candidates(&s).unwrap() {
                let model = match hyp(&s, Some(&kappa)) {
                    Ok(m) => m,
                    // Some classes satisfy the discriminant conditions but
                    // produce a non-even extension; those are rejected.
                    Err(K3Error::InvalidKappa(_)) => continue,
                    Err(e) => panic!("{e}"),
                };
                assert_eq!(model.ns.polarization_type(), PolarizationType::II);
                assert_roundtrip(&s, Some(&kappa));
                seen += 1;
            }
        }
    }
    assert!(seen > 0, "at least one type II instance must be exercised");
}

#[test]
fn type_one_model_has_h_in_two_dual() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for d in 1..=4 {
        let s = random_polarized_definite(d, &mut rng);
        let model = hyp(&s, None).unwrap();
        assert_eq!(model.ns.polarization_type(), PolarizationType::I);
    }
}

#[test]
fn bijection_counts_match() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for d in 1..=4 {
        for _ in 0..10 {
            let s = random_polarized_definite(d, &mut rng);
            let model = hyp(&s, None).unwrap();
            let ns = &model.ns;
            // (1) conics of NS <-> Fano vectors of S.
            let conics = enumerate_fn(ns, 2).unwrap();
            assert_eq!(conics.len(), s.fano_vectors().unwrap().len(), "d = {d}");
            // (2) exceptional divisors in h-perp <-> roots in hbar-perp.
            let h_q: Vec<BigRational> = ns.h().iter().map(|&x| qint(x)).collect();
            let exceptional =
                ns.lattice().enumerate_vectors(-2, &[(h_q.clone(), qint(0))]).unwrap();
            let hbar_q: Vec<BigRational> = s.hbar().iter().map(|&x| qint(x)).collect();
            let perp_roots =
                s.lattice().enumerate_vectors(2, &[(hbar_q.clone(), qint(0))]).unwrap();
            assert_eq!(exceptional.len(), perp_roots.len(), "d = {d}");
            // (3) 2-isotropic vectors <-> roots pairing 2(d-1) with hbar.
            let isotropic = ns.lattice().enumerate_vectors(0, &[(h_q, qint(2))]).unwrap();
            let marked_roots = s
                .lattice()
                .enumerate_vectors(2, &[(hbar_q, qint(2 * (d - 1)))])
                .unwrap();
            assert_eq!(isotropic.len(), marked_roots.len(), "d = {d}");
        }
    }
}

#[test]
fn discriminant_relations_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for d in 1..=4 {
        for i in 0..60 {
            let ns = random_polarized_hyperbolic(d, &mut rng);
            let red = match reduce(&ns) {
                Ok(r) => r,
                Err(K3Error::EmptyConicSet) => unreachable!("generator plants a conic"),
                Err(e) => panic!("{e}"),
            };
            let report = check_discriminant_relations(&ns, &red.s).unwrap();
            assert!(
                report.all_pass(),
                "d = {d}, instance {i}, type {:?}: {report:?}",
                ns.polarization_type()
            );
        }
    }
}

#[test]
fn reduction_determinant_ratio_for_sextics() {
    // |discr S| = (d-1)|discr NS| up to squares; spot-check the absolute
    // determinants on random d = 3 instances via the report field.
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..20 {
        let ns = random_polarized_hyperbolic(3, &mut rng);
        let red = reduce(&ns).unwrap();
        let report = check_discriminant_relations(&ns, &red.s).unwrap();
        assert!(report.det_ratio_square);
    }
}

#[test]
fn empty_conic_set_is_an_error() {
    // <2> with h its generator has no conics.
    let ns = PolarizedHyperbolic::new(lat(&[&[2]]), vec![1]).unwrap();
    assert!(matches!(reduce(&ns), Err(K3Error::EmptyConicSet)));
}

#[test]
fn homological_conditions_examples() {
    // d = 1, NS = <2>: (3) and (4) hold vacuously.
    let ns = PolarizedHyperbolic::new(lat(&[&[2]]), vec![1]).unwrap();
    let report = ns.check_homological_conditions(None).unwrap();
    assert!(report.hyperbolic && report.no_contracted_root && report.no_isotropic_degree2);
    assert!(report.primitive.is_none());

    // NS = U with h = (1, 3) of square 6: e = (0, 2) is isotropic with
    // e.h = 2, so condition (4) fails.
    let u = lat(&[&[0, 1], &[1, 0]]);
    let ns = PolarizedHyperbolic::new(u, vec![1, 3]).unwrap();
    assert_eq!(ns.d(), 3);
    let report = ns.check_homological_conditions(None).unwrap();
    assert!(!report.no_isotropic_degree2);
    assert!(!report.all_pass());
}

#[test]
fn pair_product_ranges() {
    // d = 2 with l1 + l2 = hbar: product -2.
    let s = PolarizedDefinite::new(lat(&[&[4, -2], &[-2, 4]]), vec![1, 1], 2).unwrap();
    assert_eq!(pair_products(&s, &[1, 0], &[0, 1]).unwrap(), -2);
    // Self-pairing.
    assert_eq!(pair_products(&s, &[1, 0], &[1, 0]).unwrap(), 4);
    // d = 3: all pairs land in {0, 1, 2}.
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10 {
        let s = random_polarized_definite(3, &mut rng);
        let fano = s.fano_vectors().unwrap();
        for a in &fano {
            for b in &fano {
                if a != b {
                    let p = pair_products(&s, a, b).unwrap();
                    assert!((0..=2).contains(&p));
                }
            }
        }
    }
    // A non-conic argument is rejected.
    let s3 = PolarizedDefinite::new(lat(&[&[4, 0], &[0, 8]]), vec![1, 1], 3).unwrap();
    assert!(matches!(pair_products(&s3, &[0, 1], &[1, 0]), Err(K3Error::NotAConic)));
}

#[test]
fn classify_irreducible_on_a_model_with_lines() {
    // U with h of square 6 has lines; every conic c with c.l < 0 for some
    // line is reducible. Check internal consistency of the partition.
    let u = lat(&[&[0, 1], &[1, 0]]);
    let ns = PolarizedHyperbolic::new(u, vec![1, 3]).unwrap();
    let split = classify_irreducible(&ns).unwrap();
    assert_eq!(
        split.irreducible.len() + split.reducible.len(),
        enumerate_fn(&ns, 2).unwrap().len()
    );
    for c in &split.reducible {
        assert!(split.lines.iter().any(|l| ns.lattice().inner_int(c, l) < 0));
    }
    for c in &split.irreducible {
        assert!(split.lines.iter().all(|l| ns.lattice().inner_int(c, l) >= 0));
    }
}

#[test]
fn hyp_candidates_agree_with_embedding_module_for_sextics() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..15 {
        let s = random_polarized_definite(3, &mut rng);
        let mine: Vec<Vec<i64>> =
            hyp_candidates(&s).unwrap().into_iter().map(|(e, _)| e).collect();
        let hbar = LatticeVector::from_i64(s.hbar());
        let theirs = discriminant_forms::hyp_classes(s.lattice(), &hbar).unwrap();
        let mut a = mine.clone();
        let mut b = theirs.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}

#[test]
fn json_round_trip_for_hyperbolic_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let ns = random_polarized_hyperbolic(3, &mut rng);
    let back = PolarizedHyperbolic::from_json(&ns.to_json()).unwrap();
    assert_eq!(back.lattice().gram(), ns.lattice().gram());
    assert_eq!(back.h(), ns.h());
    assert_eq!(back.d(), 3);
}
