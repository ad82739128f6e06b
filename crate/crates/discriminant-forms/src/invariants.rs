//! Nikulin invariants of finite quadratic forms: minimal generator counts,
//! determinant classes, and the even/odd dichotomy at p = 2, computed by
//! splitting each p-part into an orthogonal sum of standard blocks (cyclic
//! q-blocks, plus the hyperbolic/non-hyperbolic even 2-adic pairs u_k, v_k).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::{legendre, modinv, valuation, Element, FiniteQuadraticForm};

/// Determinant class of a p-part.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DetClass {
    /// Odd p: epsilon_p as a Legendre value (+1 residue, -1 non-residue).
    OddPrime { eps: i64 },
    /// p = 2 with even 2-part: the unit class modulo 8 (1, 3, 5, or 7).
    Two { unit_mod8: i64 },
    /// p = 2 with odd 2-part: det_2 is not well defined.
    UndefinedOddForm,
}

/// The p-adic invariant package of a finite quadratic form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PadicInvariants {
    pub p: i64,
    /// Minimal number of generators of the p-part.
    pub ell: usize,
    /// Order of the p-part.
    pub size: BigInt,
    pub det_class: DetClass,
    /// p = 2 only: true iff some order-2 element x has q(x) not in {0,1}.
    pub odd_form: bool,
}

/// One Jordan block of the 2-part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Block2 {
    /// Cyclic <a/2^k> on Z/2^k (a odd, q value normalized into [0,2)).
    Odd { k: u32, q: BigRational },
    /// Rank-2 even block at scale 2^k.
    Even { k: u32, kind: EvenKind },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EvenKind {
    /// Hyperbolic u_k: q = 0 on both generators, det unit 7 mod 8.
    U,
    /// Non-hyperbolic v_k: det unit 3 mod 8.
    V,
}

fn den_valuation(x: &BigRational, p: i64) -> u32 {
    valuation(x.denom(), p)
}

impl FiniteQuadraticForm {
    /// Jordan decomposition of the p-part for odd p: a list of
    /// (scale exponent k, rank, epsilon) sorted by descending scale, where
    /// epsilon is the Legendre value of the product of the block units.
    pub fn jordan_odd(&self, p: i64) -> Vec<(u32, usize, i64)> {
        let mut out: Vec<(u32, usize, i64)> = Vec::new();
        for (k, q) in self.diagonalize_odd(p) {
            let a = (&q * BigRational::from(BigInt::from(p.pow(k))))
                .to_integer()
                .to_i64()
                .expect("block unit fits i64");
            let eps = legendre(a, p);
            match out.last_mut() {
                Some(last) if last.0 == k => {
                    last.1 += 1;
                    last.2 *= eps;
                }
                _ => out.push((k, 1, eps)),
            }
        }
        out
    }

    /// Orthogonal diagonalization of the p-part for odd p: the q-values of an
    /// orthogonal generating set, as (scale exponent, q value) sorted by
    /// descending scale.
    pub fn diagonalize_odd(&self, p: i64) -> Vec<(u32, BigRational)> {
        assert!(p % 2 == 1 && p > 2, "diagonalize_odd requires an odd prime");
        let part = self.p_part(p);
        let n = part.num_gens();
        let mut work: Vec<Element> =
            (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let mut diag: Vec<(u32, BigRational)> = Vec::new(); // (scale, q value)
        loop {
            work.retain(|e| !part.is_zero_elem(e));
            if work.is_empty() {
                break;
            }
            // Candidates: current generators and pairwise sums; the maximal
            // q-denominator among them realizes the maximal scale.
            let mut cands = work.clone();
            for i in 0..work.len() {
                for j in i + 1..work.len() {
                    let s = part.add_elem(&work[i], &work[j]);
                    if !part.is_zero_elem(&s) {
                        cands.push(s);
                    }
                }
            }
            let kmax = cands.iter().map(|e| den_valuation(&part.q_of(e), p)).max().unwrap();
            assert!(kmax > 0, "degenerate p-part in jordan_odd");
            let pivot_pos = cands
                .iter()
                .position(|e| den_valuation(&part.q_of(e), p) == kmax)
                .expect("some candidate realizes the maximal scale");
            let pivot = cands[pivot_pos].clone();
            if pivot_pos >= work.len() {
                // The pivot is a sum g_i + g_j; substitute it for g_i.
                let mut t = pivot_pos - work.len();
                let mut found = None;
                'outer: for i in 0..work.len() {
                    for j in i + 1..work.len() {
                        let s = part.add_elem(&work[i], &work[j]);
                        if part.is_zero_elem(&s) {
                            continue;
                        }
                        if t == 0 {
                            found = Some(i);
                            break 'outer;
                        }
                        t -= 1;
                    }
                }
                work[found.expect("pivot index maps back to a pair")] = pivot.clone();
            }
            let pk = p.pow(kmax);
            let qx = part.q_of(&pivot); // a / p^k, normalized in [0, 2)
            debug_assert_eq!(qx.denom(), &BigInt::from(pk));
            let a_full = qx.numer().to_i64().expect("block unit fits i64");
            let a_mod = a_full.rem_euclid(pk);
            let ainv = modinv(a_mod, pk);
            let pivot_idx = work.iter().position(|e| *e == pivot).unwrap();
            for t in 0..work.len() {
                if t == pivot_idx {
                    continue;
                }
                let bv = part.b_of(&pivot, &work[t]);
                let j = den_valuation(&bv, p);
                if j == 0 {
                    continue;
                }
                let c = (&bv * BigRational::from(BigInt::from(p.pow(j))))
                    .to_integer()
                    .to_i64()
                    .expect("pairing numerator fits i64");
                let lam = ((c as i128 * p.pow(kmax - j) as i128 % pk as i128)
                    * ainv as i128
                    % pk as i128) as i64;
                let corr = part.scale_elem(&BigInt::from(-lam), &pivot);
                work[t] = part.add_elem(&work[t], &corr);
                debug_assert!(part.b_of(&pivot, &work[t]).is_zero());
            }
            diag.push((kmax, qx));
            work.remove(pivot_idx);
        }
        let total: u32 = diag.iter().map(|(k, _)| *k).sum();
        assert_eq!(total, valuation(&part.order(), p), "block scales must exhaust the order");
        // Sort by descending scale, then by q value for determinism.
        diag.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(&y.1)));
        diag
    }

    /// Jordan block decomposition of the 2-part, sorted by descending scale.
    pub fn jordan_two(&self) -> Vec<Block2> {
        let part = self.p_part(2);
        let n = part.num_gens();
        let mut work: Vec<Element> =
            (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let mut blocks: Vec<Block2> = Vec::new();
        loop {
            work.retain(|e| !part.is_zero_elem(e));
            if work.is_empty() {
                break;
            }
            let mut kmax = 0;
            for i in 0..work.len() {
                for j in i..work.len() {
                    kmax = kmax.max(den_valuation(&part.b_of(&work[i], &work[j]), 2));
                }
            }
            assert!(kmax > 0, "degenerate 2-part in jordan_two");
            let pk = 2i64.pow(kmax);
            // If some generator's own b-denominator attains the maximal scale
            // the block is odd (cyclic); an element with maximal diagonal
            // scale exists among the generators whenever one exists at all.
            if let Some(i) =
                (0..work.len()).find(|&i| den_valuation(&part.b_of(&work[i], &work[i]), 2) == kmax)
            {
                let x = work[i].clone();
                let qx = part.q_of(&x);
                debug_assert_eq!(den_valuation(&qx, 2), kmax);
                let a_full = (&qx * BigRational::from(BigInt::from(pk)))
                    .to_integer()
                    .to_i64()
                    .expect("block unit fits i64");
                let a_mod = a_full.rem_euclid(pk);
                let ainv = modinv(a_mod, pk);
                for t in 0..work.len() {
                    if t == i {
                        continue;
                    }
                    let bv = part.b_of(&x, &work[t]);
                    let j = den_valuation(&bv, 2);
                    if j == 0 {
                        continue;
                    }
                    let c = (&bv * BigRational::from(BigInt::from(2i64.pow(j))))
                        .to_integer()
                        .to_i64()
                        .unwrap();
                    let lam = ((c as i128 * 2i64.pow(kmax - j) as i128 % pk as i128)
                        * ainv as i128
                        % pk as i128) as i64;
                    let corr = part.scale_elem(&BigInt::from(-lam), &x);
                    work[t] = part.add_elem(&work[t], &corr);
                    debug_assert!(part.b_of(&x, &work[t]).is_zero());
                }
                blocks.push(Block2::Odd { k: kmax, q: qx });
                work.remove(i);
                continue;
            }
            // Even block: take the first generator pair pairing at full scale.
            let (i, j) = {
                let mut found = None;
                'srch: for i in 0..work.len() {
                    for j in i + 1..work.len() {
                        if den_valuation(&part.b_of(&work[i], &work[j]), 2) == kmax {
                            found = Some((i, j));
                            break 'srch;
                        }
                    }
                }
                found.expect("even scale realized by a generator pair")
            };
            let (x, y) = (work[i].clone(), work[j].clone());
            // Distinguish u_k from v_k by the unit (q(x)q(y) - b(x,y)^2) 4^k mod 8.
            let det_val = (&part.q_of(&x) * &part.q_of(&y) - &part.b_of(&x, &y) * &part.b_of(&x, &y))
                * BigRational::from(BigInt::from(pk) * BigInt::from(pk));
            assert!(det_val.denom().is_one(), "even-block determinant must be integral");
            let r = det_val.to_integer().mod_floor(&BigInt::from(8)).to_i64().unwrap();
            let kind = match r {
                7 => EvenKind::U,
                3 => EvenKind::V,
                _ => unreachable!("rank-2 even 2-adic block has det unit 3 or 7 mod 8, got {r}"),
            };
            // Clear the remaining generators against the pair: invert the
            // 2x2 scaled Gram mod 2^k (odd determinant).
            let scale = |v: &BigRational| -> i64 {
                (v * BigRational::from(BigInt::from(pk)))
                    .to_integer()
                    .to_i64()
                    .unwrap()
                    .rem_euclid(pk)
            };
            let a11 = scale(&part.b_of(&x, &x));
            let a12 = scale(&part.b_of(&x, &y));
            let a22 = scale(&part.b_of(&y, &y));
            let detm = ((a11 as i128 * a22 as i128 - a12 as i128 * a12 as i128)
                .rem_euclid(pk as i128)) as i64;
            let dinv = modinv(detm, pk) as i128;
            for t in 0..work.len() {
                if t == i || t == j {
                    continue;
                }
                let c1 = scale(&part.b_of(&x, &work[t])) as i128;
                let c2 = scale(&part.b_of(&y, &work[t])) as i128;
                let alpha = (dinv * (a22 as i128 * c1 - a12 as i128 * c2)).rem_euclid(pk as i128);
                let beta = (dinv * (a11 as i128 * c2 - a12 as i128 * c1)).rem_euclid(pk as i128);
                let cx = part.scale_elem(&BigInt::from(-(alpha as i64)), &x);
                let cy = part.scale_elem(&BigInt::from(-(beta as i64)), &y);
                work[t] = part.add_elem(&part.add_elem(&work[t], &cx), &cy);
                debug_assert!(part.b_of(&x, &work[t]).is_zero());
                debug_assert!(part.b_of(&y, &work[t]).is_zero());
            }
            blocks.push(Block2::Even { k: kmax, kind });
            work.remove(j);
            work.remove(i);
        }
        let total: u32 = blocks
            .iter()
            .map(|bl| match bl {
                Block2::Odd { k, .. } => *k,
                Block2::Even { k, .. } => 2 * *k,
            })
            .sum();
        assert_eq!(total, valuation(&part.order(), 2), "block scales must exhaust the order");
        blocks.sort_by_key(|bl| match bl {
            Block2::Odd { k, q } => (u32::MAX - *k, 0, q.to_string()),
            Block2::Even { k, kind } => {
                (u32::MAX - *k, 1, if *kind == EvenKind::U { "u".into() } else { "v".into() })
            }
        });
        blocks
    }

    /// The p-adic invariant package: l_p, |F_p|, det class, parity.
    pub fn invariants(&self, p: i64) -> PadicInvariants {
        let part = self.p_part(p);
        let size = part.order();
        if p == 2 {
            let blocks = self.jordan_two();
            let ell: usize = blocks
                .iter()
                .map(|bl| match bl {
                    Block2::Odd { .. } => 1,
                    Block2::Even { .. } => 2,
                })
                .sum();
            let odd_form = blocks.iter().any(|bl| matches!(bl, Block2::Odd { k: 1, .. }));
            let det_class = if odd_form {
                DetClass::UndefinedOddForm
            } else {
                let mut unit = 1i64;
                for bl in &blocks {
                    unit = unit
                        * match bl {
                            Block2::Odd { k, q } => {
                                // a = q * 2^k, odd, well defined mod 8 since k >= 2.
                                debug_assert!(*k >= 2);
                                (q * BigRational::from(BigInt::from(2i64.pow(*k))))
                                    .to_integer()
                                    .to_i64()
                                    .unwrap()
                            }
                            Block2::Even { kind: EvenKind::U, .. } => 7,
                            Block2::Even { kind: EvenKind::V, .. } => 3,
                        }
                        % 8;
                }
                DetClass::Two { unit_mod8: unit.rem_euclid(8) }
            };
            PadicInvariants { p, ell, size, det_class, odd_form }
        } else {
            let jordan = self.jordan_odd(p);
            let ell: usize = jordan.iter().map(|(_, r, _)| *r).sum();
            let eps = jordan.iter().map(|(_, _, e)| *e).product();
            PadicInvariants { p, ell, size, det_class: DetClass::OddPrime { eps }, odd_form: false }
        }
    }

    /// Parity by direct scan of the 2-torsion subgroup (oracle for the
    /// block-based computation; "odd" iff some order-2 x has q(x) not in Z).
    pub fn parity_by_scan(&self) -> bool {
        self.two_torsion().iter().any(|x| {
            let q = self.q_of(x);
            !q.is_zero() && q != BigRational::one()
        })
    }
}
