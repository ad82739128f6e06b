//! Independent oracles for the finite-quadratic-form machinery:
//!
//! * invariants must not change under unimodular basis change of the source
//!   lattice;
//! * the Jordan block decompositions must reassemble (as direct sums of
//!   standard model blocks) to a form with the same (order, q)-value
//!   multiset as the original;
//! * the Gauss-sum phase of the discriminant form must match the lattice
//!   signature modulo 8 (Milgram);
//! * isotropic reduction must match brute-force search on small groups.

use discriminant_forms::{Block2, EvenKind, FiniteQuadraticForm};
use lattice_core::mat::IMat;
use lattice_core::IntegerLattice;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn random_even_posdef(rng: &mut ChaCha8Rng, n: usize) -> IntegerLattice {
    loop {
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..i {
                let v = rng.gen_range(-2..=2);
                g[i][j] = v;
                g[j][i] = v;
            }
            g[i][i] = 2 * rng.gen_range(1..=5) + 2 * n as i64;
        }
        if let Ok(l) = IntegerLattice::from_i64(&g) {
            if l.is_positive_definite() {
                return l;
            }
        }
    }
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IMat {
    let mut u = IMat::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..8 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = BigInt::from(*[-1i64, 1].get(rng.gen_range(0..2)).unwrap());
        // row_i += c * row_j
        for t in 0..n {
            let add = &c * &u[(j, t)];
            u[(i, t)] += add;
        }
    }
    u
}

fn conjugate(l: &IntegerLattice, u: &IMat) -> IntegerLattice {
    let g = u.mul(l.gram()).mul(&u.transpose());
    IntegerLattice::new(g).unwrap()
}

/// Multiset of (element order, q value) over all elements.
fn q_profile(f: &FiniteQuadraticForm) -> BTreeMap<(i64, String), usize> {
    let mut m = BTreeMap::new();
    for e in f.elements().unwrap() {
        *m.entry((f.element_order(&e), f.q_of(&e).to_string())).or_insert(0) += 1;
    }
    m
}

#[test]
fn invariants_stable_under_basis_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(20260823);
    for _ in 0..40 {
        let n = rng.gen_range(1..=4);
        let l = random_even_posdef(&mut rng, n);
        let u = random_unimodular(&mut rng, n);
        let l2 = conjugate(&l, &u);
        assert_eq!(l.det().abs(), l2.det().abs());
        let f1 = FiniteQuadraticForm::from_lattice(&l).unwrap();
        let f2 = FiniteQuadraticForm::from_lattice(&l2).unwrap();
        assert_eq!(f1.primes(), f2.primes());
        for p in f1.primes() {
            assert_eq!(f1.invariants(p), f2.invariants(p), "p = {p}, gram {:?}", l.gram_i64());
        }
        // The full q-profile is also a basis-change invariant.
        if f1.order() <= BigInt::from(1 << 12) {
            assert_eq!(q_profile(&f1), q_profile(&f2));
        }
    }
}

/// Rebuild a form from its Jordan blocks and compare q-profiles.
#[test]
fn jordan_blocks_reassemble_the_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut tested = 0;
    while tested < 30 {
        let n = rng.gen_range(1..=4);
        let l = random_even_posdef(&mut rng, n);
        let f = FiniteQuadraticForm::from_lattice(&l).unwrap();
        if f.order() > BigInt::from(1 << 12) {
            continue;
        }
        let mut model = FiniteQuadraticForm::trivial();
        for p in f.primes() {
            if p == 2 {
                for b in f.jordan_two() {
                    let piece = match b {
                        Block2::Odd { k, q } => FiniteQuadraticForm::from_parts(
                            vec![2i64.pow(k)],
                            vec![q.clone()],
                            vec![vec![q.clone()]],
                        )
                        .unwrap(),
                        Block2::Even { k, kind } => {
                            let qd = match kind {
                                EvenKind::U => rat(0, 1),
                                EvenKind::V => rat(2, 2i64.pow(k)),
                            };
                            FiniteQuadraticForm::from_parts(
                                vec![2i64.pow(k), 2i64.pow(k)],
                                vec![qd.clone(), qd.clone()],
                                vec![
                                    vec![qd.clone(), rat(1, 2i64.pow(k))],
                                    vec![rat(1, 2i64.pow(k)), qd.clone()],
                                ],
                            )
                            .unwrap()
                        }
                    };
                    model = model.direct_sum(&piece);
                }
            } else {
                for (k, q) in f.diagonalize_odd(p) {
                    let piece = FiniteQuadraticForm::from_parts(
                        vec![p.pow(k)],
                        vec![q.clone()],
                        vec![vec![q.clone()]],
                    )
                    .unwrap();
                    model = model.direct_sum(&piece);
                }
            }
        }
        assert_eq!(model.order(), f.order());
        assert_eq!(q_profile(&model), q_profile(&f), "gram {:?}", l.gram_i64());
        tested += 1;
    }
}

/// Milgram: sum over F of exp(pi i q(x)) = sqrt(|F|) exp(2 pi i sig/8) where
/// sig is the lattice signature p - n mod 8.
#[test]
fn gauss_sum_matches_signature() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut tested = 0;
    while tested < 25 {
        let n = rng.gen_range(1..=4);
        let l = random_even_posdef(&mut rng, n);
        let f = FiniteQuadraticForm::from_lattice(&l).unwrap();
        if f.order() > BigInt::from(1 << 12) {
            continue;
        }
        let (mut re, mut im) = (0f64, 0f64);
        for e in f.elements().unwrap() {
            let q = f.q_of(&e);
            let t = std::f64::consts::PI * q.numer().to_f64().unwrap() / q.denom().to_f64().unwrap();
            re += t.cos();
            im += t.sin();
        }
        let norm = (re * re + im * im).sqrt();
        assert!((norm - f.order().to_f64().unwrap().sqrt()).abs() < 1e-6);
        let phase = im.atan2(re) / (std::f64::consts::PI / 4.0);
        let sig = ((phase.round() as i64) % 8 + 8) % 8;
        let expect = (l.signature().0 as i64 - l.signature().1 as i64).rem_euclid(8);
        assert_eq!(sig, expect, "gram {:?}", l.gram_i64());
        tested += 1;
    }
}

/// Negated lattice: invariants of -L are those of the negated form.
#[test]
fn negation_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..15 {
        let n = rng.gen_range(1..=3);
        let l = random_even_posdef(&mut rng, n);
        let f = FiniteQuadraticForm::from_lattice(&l).unwrap();
        let g = FiniteQuadraticForm::from_lattice(&l.negate()).unwrap();
        for p in f.primes() {
            assert_eq!(f.negate().invariants(p), g.invariants(p));
        }
    }
}

/// Polarization identity on random forms: q(x+y) - q(x) - q(y) = 2 b(x,y).
#[test]
fn polarization_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let n = rng.gen_range(2..=4);
        let l = random_even_posdef(&mut rng, n);
        let f = FiniteQuadraticForm::from_lattice(&l).unwrap();
        if f.order() > BigInt::from(1 << 10) {
            continue;
        }
        let els = f.elements().unwrap();
        for _ in 0..50 {
            let x = &els[rng.gen_range(0..els.len())];
            let y = &els[rng.gen_range(0..els.len())];
            let lhs = f.q_of(&f.add_elem(x, y)) - f.q_of(x) - f.q_of(y);
            let rhs = BigRational::from(BigInt::from(2)) * f.b_of(x, y);
            assert!(lattice_core::rat_mod(&(lhs - rhs), 2).is_zero());
        }
    }
}

/// Brute-force oracle for isotropic reduction on groups of order <= 16:
/// each kernel in the chain must be the lexicographically smallest nonzero
/// isotropic element of the offending p-part at its stage, and each quotient
/// divides the order by the square of the kernel's order.
#[test]
fn isotropic_reduction_matches_brute_force() {
    let u2 = FiniteQuadraticForm::from_parts(
        vec![2, 2],
        vec![rat(0, 1), rat(0, 1)],
        vec![vec![rat(0, 1), rat(1, 2)], vec![rat(1, 2), rat(0, 1)]],
    )
    .unwrap();
    let v2 = FiniteQuadraticForm::from_parts(
        vec![2, 2],
        vec![rat(1, 1), rat(1, 1)],
        vec![vec![rat(0, 1), rat(1, 2)], vec![rat(1, 2), rat(0, 1)]],
    )
    .unwrap();
    let a1 = FiniteQuadraticForm::from_parts(vec![2], vec![rat(1, 2)], vec![vec![rat(1, 2)]])
        .unwrap();
    let z4 = FiniteQuadraticForm::from_parts(vec![4], vec![rat(3, 4)], vec![vec![rat(3, 4)]])
        .unwrap();
    let z3 = FiniteQuadraticForm::from_parts(vec![3], vec![rat(2, 3)], vec![vec![rat(2, 3)]])
        .unwrap();
    let z9 = FiniteQuadraticForm::from_parts(vec![9], vec![rat(2, 9)], vec![vec![rat(2, 9)]])
        .unwrap();
    let pool: Vec<FiniteQuadraticForm> = vec![
        u2.direct_sum(&u2),
        u2.direct_sum(&v2),
        v2.direct_sum(&v2),
        u2.direct_sum(&a1).direct_sum(&a1),
        a1.direct_sum(&a1).direct_sum(&a1).direct_sum(&a1),
        z4.direct_sum(&u2),
        z3.direct_sum(&z3).direct_sum(&z3),
        z9.direct_sum(&z3),
        u2.clone(),
        z3.clone(),
    ];
    for f0 in pool {
        let (reduced, chain) = f0.reduce_extension().unwrap();
        // Replay the chain against an independent brute-force step oracle.
        let mut cur = f0.clone();
        for k in &chain {
            let p = cur
                .primes()
                .into_iter()
                .find(|&p| {
                    let inv = cur.invariants(p);
                    !(inv.ell <= 2 || (p == 2 && inv.ell == 3 && inv.odd_form))
                })
                .expect("chain steps only occur while out of bounds");
            let part = cur.p_part(p);
            let expect = part
                .elements()
                .unwrap()
                .into_iter()
                .find(|e| !part.is_zero_elem(e) && part.is_isotropic(e))
                .map(|e| cur.from_p_part_elem(p, &e))
                .expect("an offending p-part has an isotropic element");
            assert_eq!(*k, expect);
            let before = cur.order();
            let t = cur.element_order(k);
            cur = cur.quotient_by_isotropic(k).unwrap();
            assert_eq!(cur.order() * BigInt::from(t) * BigInt::from(t), before);
        }
        assert_eq!(cur, reduced);
        for p in reduced.primes() {
            let inv = reduced.invariants(p);
            assert!(inv.ell <= 2 || (p == 2 && inv.ell == 3 && inv.odd_form));
        }
        // Cross-check: the reduced form is nondegenerate.
        assert!(reduced.is_nondegenerate().unwrap());
    }
}

/// Direct-sum decomposition: the p-part of a sum is the sum of the p-parts.
#[test]
fn p_part_respects_direct_sums() {
    let a2n = IntegerLattice::from_i64(&[vec![-2, 1], vec![1, -2]]).unwrap();
    let a1 = IntegerLattice::from_i64(&[vec![2]]).unwrap();
    let f = FiniteQuadraticForm::from_lattice(&a2n.direct_sum(&a1)).unwrap();
    let fa2 = FiniteQuadraticForm::from_lattice(&a2n).unwrap();
    let fa1 = FiniteQuadraticForm::from_lattice(&a1).unwrap();
    assert_eq!(f.p_part(3), fa2.p_part(3));
    assert_eq!(f.p_part(2), fa1.p_part(2));
    assert_eq!(f.p_part(5), FiniteQuadraticForm::trivial());
}
