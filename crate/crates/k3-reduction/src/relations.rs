//! Executable checks of the local relations between the discriminant forms
//! 𝒮 = discr S and 𝒩 = discr NS of a reduction pair: the determinant ratio,
//! the odd-prime local isomorphism, the ℓ_p/determinant shift at primes
//! dividing d−1, and the 2-adic case analysis by parity of d and type.

use crate::polarized::{PolarizationType, PolarizedDefinite, PolarizedHyperbolic};
use crate::K3Error;
use discriminant_forms::{legendre, valuation, FiniteQuadraticForm};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscriminantRelationReport {
    /// |𝒮| = d′·|𝒩| modulo rational squares, d′ = 2 for d = 1 and d−1
    /// otherwise.
    pub det_ratio_square: bool,
    /// −𝒮_p ≅ 𝒩_p for every odd prime p not dividing d−1.
    pub local_iso_odd_primes: bool,
    /// ℓ_p(𝒮) = ℓ_p(𝒩)+1 and |𝒮|det_p(−𝒮) = −2|𝒩|det_p(𝒩) modulo squares
    /// for every odd prime p dividing d−1.
    pub ell_det_shift: bool,
    /// The 2-adic relation for the parity of d and the type of NS ∋ h.
    pub two_adic: bool,
}

impl DiscriminantRelationReport {
    pub fn all_pass(&self) -> bool {
        self.det_ratio_square
            && self.local_iso_odd_primes
            && self.ell_det_shift
            && self.two_adic
    }
}

fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

fn odd_prime_divisors(values: &[BigInt]) -> Vec<i64> {
    let mut primes = Vec::new();
    for v in values {
        let mut m = v.abs();
        let mut p = 3i64;
        while BigInt::from(p) * BigInt::from(p) <= m {
            if (&m % BigInt::from(p)).is_zero() {
                if !primes.contains(&p) {
                    primes.push(p);
                }
                while (&m % BigInt::from(p)).is_zero() {
                    m /= BigInt::from(p);
                }
            }
            p += 2;
        }
        while m.is_even() {
            m /= BigInt::from(2);
        }
        if m > BigInt::one() {
            let q = m.to_i64().expect("prime factor fits in i64");
            if q > 2 && !primes.contains(&q) {
                primes.push(q);
            }
        }
    }
    primes.sort_unstable();
    primes
}

/// (ℓ_p, ε_p) of the p-part for odd p, read off the Jordan decomposition.
fn ell_eps(f: &FiniteQuadraticForm, p: i64) -> (usize, i64) {
    let blocks = f.jordan_odd(p);
    let ell = blocks.iter().map(|&(_, rank, _)| rank).sum();
    let eps = blocks.iter().map(|&(_, _, e)| e).product();
    (ell, eps)
}

/// Unit class of |F|·det_p(F) as a Legendre value: the p-part order cancels
/// against the denominator of det_p, leaving the prime-to-p part of |F|
/// times ε_p.
fn order_det_class(f: &FiniteQuadraticForm, p: i64) -> i64 {
    let (_, eps) = ell_eps(f, p);
    let mut m = f.order();
    let pb = BigInt::from(p);
    for _ in 0..valuation(&f.order(), p) {
        m /= &pb;
    }
    let m_mod = m.mod_floor(&pb).to_i64().unwrap();
    legendre(m_mod, p) * eps
}

/// Multiset of cyclic-factor orders of the 2-part.
fn two_group_shape(f: &FiniteQuadraticForm) -> Vec<i64> {
    let mut shape: Vec<i64> = f.p_part(2).orders().to_vec();
    shape.sort_unstable();
    shape
}

pub fn check_discriminant_relations(
    ns: &PolarizedHyperbolic,
    s: &PolarizedDefinite,
) -> Result<DiscriminantRelationReport, K3Error> {
    let d = ns.d();
    if s.d() != d {
        return Err(K3Error::BadPolarization("mismatched polarization degrees".into()));
    }
    let n_form = FiniteQuadraticForm::from_lattice(ns.lattice())?;
    let s_form = FiniteQuadraticForm::from_lattice(s.lattice())?;
    let neg_s = s_form.negate();
    let d_prime = if d == 1 { 2 } else { d - 1 };

    // Eq. (2.3): |𝒮| = d′|𝒩| mod squares.
    let ratio = BigRational::new(s_form.order(), BigInt::from(d_prime) * n_form.order());
    let det_ratio_square = is_square(ratio.numer()) && is_square(ratio.denom());

    let primes = odd_prime_divisors(&[s_form.order(), n_form.order(), BigInt::from(d - 1)]);
    let mut local_iso_odd_primes = true;
    let mut ell_det_shift = true;
    for &p in &primes {
        if d > 1 && (d - 1) % p == 0 {
            // Eq. (2.5).
            let (ell_s, _) = ell_eps(&s_form, p);
            let (ell_n, _) = ell_eps(&n_form, p);
            let lhs = order_det_class(&neg_s, p);
            let rhs = legendre((-2i64).rem_euclid(p), p) * order_det_class(&n_form, p);
            if ell_s != ell_n + 1 || lhs != rhs {
                ell_det_shift = false;
            }
        } else {
            // Eq. (2.4): full odd-p classification by Jordan invariants.
            if neg_s.jordan_odd(p) != n_form.jordan_odd(p) {
                local_iso_odd_primes = false;
            }
        }
    }

    let inv_s2 = s_form.invariants(2);
    let inv_n2 = n_form.invariants(2);
    let ty = ns.polarization_type();
    let two_adic = if d == 1 {
        match ty {
            PolarizationType::I => {
                inv_n2.ell == inv_s2.ell + 1
                    && inv_n2.size == BigInt::from(2) * &inv_s2.size
                    && inv_n2.odd_form
            }
            PolarizationType::II => {
                inv_s2.ell == inv_n2.ell + 1
                    && inv_s2.size == BigInt::from(2) * &inv_n2.size
                    && inv_s2.odd_form
            }
        }
    } else if d % 2 == 1 {
        match ty {
            PolarizationType::I => inv_s2.ell == inv_n2.ell && inv_n2.odd_form,
            PolarizationType::II => inv_s2.ell == inv_n2.ell + 2 && inv_s2.odd_form,
        }
    } else {
        match ty {
            PolarizationType::I => two_group_shape(&n_form) == two_group_shape(&s_form),
            PolarizationType::II => {
                let shift = inv_s2.ell == inv_n2.ell + 2 && inv_s2.odd_form;
                // −𝒮₂ must contain order-2 classes α, β with α² = −d/2,
                // β² = −½ mod 2Z, α·β = ½ mod Z.
                let q_a = lattice_core::rat_mod(
                    &BigRational::new(BigInt::from(-d), BigInt::from(2)),
                    2,
                );
                let q_b = lattice_core::rat_mod(
                    &BigRational::new(BigInt::from(-1), BigInt::from(2)),
                    2,
                );
                let half = BigRational::new(BigInt::from(1), BigInt::from(2));
                let torsion = neg_s.two_torsion();
                let mut pair_found = false;
                'outer: for a in &torsion {
                    if neg_s.q_of(a) != q_a {
                        continue;
                    }
                    for b in &torsion {
                        if neg_s.q_of(b) == q_b && neg_s.b_of(a, b) == half {
                            pair_found = true;
                            break 'outer;
                        }
                    }
                }
                shift && pair_found
            }
        }
    };

    Ok(DiscriminantRelationReport {
        det_ratio_square,
        local_iso_odd_primes,
        ell_det_shift,
        two_adic,
    })
}
