//! Primitive-embedding existence tests: the K3-lattice criterion for
//! hyperbolic models of conic configurations and the Niemeier-lattice
//! obstruction check.

use lattice_core::{rat_mod, IntegerLattice, LatticeVector, QVec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::{legendre, valuation, DetClass, Element, FiniteQuadraticForm, FormError};

/// Which lattice the Niemeier obstruction check is applied to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NiemeierVariant {
    /// The lattice S itself.
    Plain,
    /// S extended by an orthogonal A1 summand.
    PlusA1,
}

/// Outcome of the K3-lattice embedding test. The test is decisive except in
/// one corner of the type II branch: when kappa is characteristic and the
/// orthogonal complement of kappa in the 2-part is itself odd, det_2 of that
/// complement is not well defined and the +-3 mod squares comparison cannot
/// be evaluated; both readings are reported and `ambiguous` is set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct K3Embedding {
    /// Verdict (the optimistic reading in the ambiguous case).
    pub embeds: bool,
    /// True iff the type II characteristic branch was undecidable.
    pub ambiguous: bool,
    /// Verdict when an undecidable comparison is read as failing.
    pub embeds_pessimistic: bool,
}

impl K3Embedding {
    fn decided(embeds: bool) -> Self {
        K3Embedding { embeds, ambiguous: false, embeds_pessimistic: embeds }
    }
}

fn big_mod_i64(x: &BigInt, m: i64) -> i64 {
    x.mod_floor(&BigInt::from(m)).to_i64().unwrap()
}

/// The odd-prime equality-case determinant condition:
/// |S| det_p(-S) = 2 mod (Z_p^x)^2.
fn odd_prime_det_condition(s: &FiniteQuadraticForm, p: i64) -> bool {
    let inv_neg = s.negate().invariants(p);
    let eps = match inv_neg.det_class {
        DetClass::OddPrime { eps } => eps,
        _ => unreachable!("odd prime"),
    };
    // |S| / |S_p| is prime to p.
    let mut m = s.order();
    let pb = BigInt::from(p);
    while (&m % &pb).is_zero() {
        m /= &pb;
    }
    legendre(big_mod_i64(&m, p), p) * eps == legendre(2, p)
}

/// The hyperelliptic 2-torsion classes Hyp of a span: order-2 elements kappa
/// of the discriminant group with q(kappa) = 3/2 mod 2Z and kappa . hbar = 0
/// mod 4. Requires hbar to lie in 4 * (span dual) so that the mod-4 pairing
/// is well defined.
pub fn hyp_classes(
    span: &IntegerLattice,
    hbar: &LatticeVector,
) -> Result<Vec<Element>, FormError> {
    let h = hbar
        .to_i64()
        .ok_or_else(|| FormError::Invalid("hbar must have integral coordinates".into()))?;
    if h.len() != span.rank() {
        return Err(FormError::Invalid("hbar has wrong dimension".into()));
    }
    let hq: QVec = h.iter().map(|&x| BigRational::from(BigInt::from(x))).collect();
    // Well-definedness: every lattice vector must pair with hbar in 4Z,
    // i.e. (G hbar) = 0 mod 4 componentwise.
    for i in 0..span.rank() {
        let mut e: QVec = vec![BigRational::zero(); span.rank()];
        e[i] = BigRational::from(BigInt::from(1));
        let v = span.inner_q(&e, &hq);
        if !rat_mod(&v, 4).is_zero() {
            return Err(FormError::Invalid("hbar is not divisible by 4 in the dual".into()));
        }
    }
    let (f, lifts) = FiniteQuadraticForm::from_lattice_with_lifts(span)?;
    let target = BigRational::new(BigInt::from(3), BigInt::from(2));
    let mut out = Vec::new();
    for e in f.two_torsion() {
        if f.is_zero_elem(&e) || f.q_of(&e) != target {
            continue;
        }
        let lift: QVec = (0..span.rank())
            .map(|j| {
                let mut s = BigRational::zero();
                for (i, l) in lifts.iter().enumerate() {
                    s += BigRational::from(BigInt::from(e[i])) * &l[j];
                }
                s
            })
            .collect();
        let pairing = span.inner_q(&lift, &hq);
        debug_assert!(pairing.denom().is_one(), "dual pairing with a lattice vector is integral");
        if rat_mod(&pairing, 4).is_zero() {
            out.push(e);
        }
    }
    Ok(out)
}

/// Primitive embedding of the hyperbolic model into the K3 lattice
/// (signature (3,19)): `kappa = None` tests the type I model hyp_0, a
/// hyperelliptic class kappa selects the type II model hyp_kappa.
///
/// With S of rank r and discriminant form 𝒮 the criteria are: r <= 20; for
/// every odd p, l(𝒮_p) <= 22-r with |𝒮|det_p(-𝒮) = 2 mod squares on
/// equality; and l(𝒮_2) <= 22-r, which in the type II case may instead be
/// satisfied at l(𝒮_2) = 24-r via the characteristic dichotomy for kappa
/// (kappa not characteristic, or ½|𝒮|det_2(kappa-perp) = +-3 mod (Z_2^x)^2).
pub fn embeds_in_k3_lattice(
    span: &IntegerLattice,
    hbar: &LatticeVector,
    kappa: Option<&[i64]>,
) -> Result<K3Embedding, FormError> {
    if !span.is_positive_definite() {
        return Err(FormError::Invalid("span must be positive definite".into()));
    }
    let r = span.rank() as i64;
    if r > 20 {
        return Ok(K3Embedding::decided(false));
    }
    let s = FiniteQuadraticForm::from_lattice(span)?;
    let bound = 22 - r;
    for p in s.primes() {
        if p == 2 {
            continue;
        }
        let inv = s.invariants(p);
        let ell = inv.ell as i64;
        if ell > bound || (ell == bound && !odd_prime_det_condition(&s, p)) {
            return Ok(K3Embedding::decided(false));
        }
    }
    let inv2 = s.invariants(2);
    let ell2 = inv2.ell as i64;
    match kappa {
        None => Ok(K3Embedding::decided(ell2 <= bound)),
        Some(k) => {
            let k = s.reduce(k);
            if !hyp_classes(span, hbar)?.contains(&k) {
                return Err(FormError::NotInHyp);
            }
            if ell2 <= bound {
                return Ok(K3Embedding::decided(true));
            }
            if ell2 != 24 - r {
                return Ok(K3Embedding::decided(false));
            }
            if !s.is_characteristic(&k)? {
                return Ok(K3Embedding::decided(true));
            }
            // kappa characteristic: need ½|𝒮| det_2(kappa-perp) = +-3 mod 8.
            let part2 = s.p_part(2);
            let idx = s.p_part_indices(2);
            let k2: Element = idx.iter().map(|&i| k[i]).collect();
            let (perp, _) = part2.orthogonal_of(&k2)?;
            let inv_perp = perp.invariants(2);
            // ½|𝒮|/|kappa-perp| is the odd part of |𝒮| (kappa-perp has
            // index 2 in 𝒮_2), so the class is odd_part(|𝒮|) * unit mod 8.
            let odd_part = {
                let mut m = s.order();
                let two = BigInt::from(2);
                while (&m % &two).is_zero() {
                    m /= &two;
                }
                big_mod_i64(&m, 8)
            };
            debug_assert_eq!(
                valuation(&perp.order(), 2) + 1,
                valuation(&s.order(), 2),
                "kappa-perp has index 2 in the 2-part"
            );
            match inv_perp.det_class {
                DetClass::Two { unit_mod8 } => {
                    let cls = odd_part * unit_mod8 % 8;
                    Ok(K3Embedding::decided(cls == 3 || cls == 5))
                }
                DetClass::UndefinedOddForm => Ok(K3Embedding {
                    embeds: true,
                    ambiguous: true,
                    embeds_pessimistic: false,
                }),
                DetClass::OddPrime { .. } => unreachable!("2-part"),
            }
        }
    }
}

/// Obstruction check for a primitive isometric embedding into a Niemeier
/// lattice: for every prime p, l(𝒮_p) + rank S <= 24, with strict inequality
/// unless p = 2 and 𝒮_2 is odd. Returns true iff an embedding is guaranteed.
pub fn embeds_in_niemeier(s: &IntegerLattice, variant: NiemeierVariant) -> Result<bool, FormError> {
    let l = match variant {
        NiemeierVariant::Plain => s.clone(),
        NiemeierVariant::PlusA1 => {
            let a1 = if s.is_negative_definite() {
                IntegerLattice::from_i64(&[vec![-2]]).unwrap()
            } else {
                IntegerLattice::from_i64(&[vec![2]]).unwrap()
            };
            s.direct_sum(&a1)
        }
    };
    let r = l.rank();
    if r > 24 {
        return Ok(false);
    }
    let f = FiniteQuadraticForm::from_lattice(&l)?;
    for p in f.primes() {
        let inv = f.invariants(p);
        let total = inv.ell + r;
        if total > 24 || (total == 24 && !(p == 2 && inv.odd_form)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[&[i64]]) -> IntegerLattice {
        IntegerLattice::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rank_21_never_embeds() {
        let g: Vec<Vec<i64>> = (0..21)
            .map(|i| (0..21).map(|j| if i == j { 4 } else { 0 }).collect())
            .collect();
        let l = IntegerLattice::from_i64(&g).unwrap();
        let hbar = LatticeVector::from_i64(&vec![0; 21]);
        let out = embeds_in_k3_lattice(&l, &hbar, None).unwrap();
        assert!(!out.embeds);
    }

    #[test]
    fn small_type_one_embeds() {
        // Rank-2 positive definite with tiny discriminant: l_p <= 1 << 20.
        let l = lat(&[&[2, 1], &[1, 2]]);
        let hbar = LatticeVector::from_i64(&[0, 0]);
        assert!(embeds_in_k3_lattice(&l, &hbar, None).unwrap().embeds);
    }

    #[test]
    fn transcendental_style_rank_20_case() {
        // A rank-20 span with discriminant group Z/6 + Z/20 style invariants:
        // build diag(6, 20) + 18 unimodular-glue-free generators via E8 + E8 +
        // [6,0,20] + hyperbolic-free filler of determinant 1 is unavailable in
        // low rank; instead test the threshold logic on diag(4, 4): rank 2,
        // l_2 = 2 <= 20.
        let l = lat(&[&[4, 0], &[0, 4]]);
        let hbar = LatticeVector::from_i64(&[0, 0]);
        assert!(embeds_in_k3_lattice(&l, &hbar, None).unwrap().embeds);
    }

    #[test]
    fn niemeier_obstruction_examples() {
        // Rank 24 with nontrivial discriminant: never guaranteed.
        let g: Vec<Vec<i64>> = (0..24)
            .map(|i| (0..24).map(|j| if i == j { 2 } else { 0 }).collect())
            .collect();
        let l = IntegerLattice::from_i64(&g).unwrap();
        assert!(!embeds_in_niemeier(&l, NiemeierVariant::Plain).unwrap());
        // Low rank with tiny discriminant: E8 + E8 + A2; guaranteed.
        let g: Vec<Vec<i64>> = {
            let e8 = [
                [2, -1, 0, 0, 0, 0, 0, 0],
                [-1, 2, -1, 0, 0, 0, 0, 0],
                [0, -1, 2, -1, 0, 0, 0, -1],
                [0, 0, -1, 2, -1, 0, 0, 0],
                [0, 0, 0, -1, 2, -1, 0, 0],
                [0, 0, 0, 0, -1, 2, -1, 0],
                [0, 0, 0, 0, 0, -1, 2, 0],
                [0, 0, -1, 0, 0, 0, 0, 2],
            ];
            let mut m = vec![vec![0i64; 18]; 18];
            for i in 0..8 {
                for j in 0..8 {
                    m[i][j] = e8[i][j];
                    m[8 + i][8 + j] = e8[i][j];
                }
            }
            m[16][16] = 2;
            m[16][17] = 1;
            m[17][16] = 1;
            m[17][17] = 2;
            m
        };
        let l = IntegerLattice::from_i64(&g).unwrap();
        assert_eq!(l.rank(), 18);
        assert!(embeds_in_niemeier(&l, NiemeierVariant::Plain).unwrap());
        assert!(embeds_in_niemeier(&l, NiemeierVariant::PlusA1).unwrap());
    }

    #[test]
    fn hyp_classes_require_divisible_hbar() {
        let l = lat(&[&[2, 1], &[1, 2]]);
        let hbar = LatticeVector::from_i64(&[1, 0]);
        assert!(hyp_classes(&l, &hbar).is_err());
    }

    #[test]
    fn hyp_classes_on_a_synthetic_span() {
        // diag(4, 4, 8): hbar = (1,1,2) has G*hbar = (4,4,16), all = 0 mod 4.
        // 2-torsion elements with q = 3/2 mod 2Z and pairing = 0 mod 4.
        let l = lat(&[&[4, 0, 0], &[0, 4, 0], &[0, 0, 8]]);
        let hbar = LatticeVector::from_i64(&[1, 1, 2]);
        let hyp = hyp_classes(&l, &hbar).unwrap();
        // Verify each returned class really is 2-torsion with q = 3/2.
        let f = FiniteQuadraticForm::from_lattice(&l).unwrap();
        for k in &hyp {
            assert!(f.is_zero_elem(&f.add_elem(k, k)));
            assert_eq!(f.q_of(k), BigRational::new(BigInt::from(3), BigInt::from(2)));
        }
    }
}
