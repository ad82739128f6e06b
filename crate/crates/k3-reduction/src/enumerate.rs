//! Line/conic enumeration in hyperbolic polarized lattices, the
//! irreducibility partition, the homological conditions on NS ⊂ 𝐋, and the
//! intersection-range assertion for pairs of conics.

use crate::polarized::{to_qvec, PolarizedDefinite, PolarizedHyperbolic};
use crate::K3Error;
use lattice_core::Sublattice;
use num_bigint::BigInt;
use num_rational::BigRational;

/// Fn_n(NS, h): all classes c with c² = −2 and c·h = n. For n = 1 these are
/// the lines, for n = 2 the conics. Finiteness holds because the affine
/// slice {c·h = n} of a hyperbolic lattice carries a negative definite form.
pub fn enumerate_fn(ns: &PolarizedHyperbolic, n: i64) -> Result<Vec<Vec<i64>>, K3Error> {
    if n <= 0 {
        return Err(K3Error::BadPolarization("degree n must be positive".into()));
    }
    let constraint = (to_qvec(ns.h()), BigRational::from(BigInt::from(n)));
    Ok(ns.lattice().enumerate_vectors(-2, &[constraint])?)
}

/// The conics of NS split by irreducibility: a conic c is irreducible iff
/// c·l ≥ 0 for every line l.
#[derive(Debug, Clone)]
pub struct IrreducibleSplit {
    pub lines: Vec<Vec<i64>>,
    pub irreducible: Vec<Vec<i64>>,
    pub reducible: Vec<Vec<i64>>,
}

pub fn classify_irreducible(ns: &PolarizedHyperbolic) -> Result<IrreducibleSplit, K3Error> {
    let lines = enumerate_fn(ns, 1)?;
    let conics = enumerate_fn(ns, 2)?;
    let mut irreducible = Vec::new();
    let mut reducible = Vec::new();
    for c in conics {
        if lines.iter().all(|l| ns.lattice().inner_int(&c, l) >= 0) {
            irreducible.push(c);
        } else {
            reducible.push(c);
        }
    }
    Ok(IrreducibleSplit { lines, irreducible, reducible })
}

/// The conditions a homological type 𝐋 ⊃ NS ∋ h of a smooth 2d-polarized
/// K3 surface must satisfy. Primitivity of NS ⊂ 𝐋 is evaluated only when an
/// embedding is supplied.
#[derive(Debug, Clone)]
pub struct HomologicalReport {
    /// (1) σ₊(NS) = 1.
    pub hyperbolic: bool,
    /// (2) NS ⊂ 𝐋 primitive, relative to a supplied embedding.
    pub primitive: Option<bool>,
    /// (3) no e ∈ NS with e² = −2 and e·h = 0.
    pub no_contracted_root: bool,
    /// (4) no e ∈ NS with e² = 0 and e·h = 2.
    pub no_isotropic_degree2: bool,
    /// (5) if d = 4 then h ∉ 2·NS; vacuously true otherwise.
    pub veronese_excluded: bool,
}

impl HomologicalReport {
    /// True iff every evaluated condition passed.
    pub fn all_pass(&self) -> bool {
        self.hyperbolic
            && self.primitive.unwrap_or(true)
            && self.no_contracted_root
            && self.no_isotropic_degree2
            && self.veronese_excluded
    }
}

impl PolarizedHyperbolic {
    pub fn check_homological_conditions(
        &self,
        embedding: Option<&Sublattice>,
    ) -> Result<HomologicalReport, K3Error> {
        let hq = to_qvec(self.h());
        let zero = BigRational::from(BigInt::from(0));
        let two = BigRational::from(BigInt::from(2));
        let contracted = self.lattice().enumerate_vectors(-2, &[(hq.clone(), zero)])?;
        let isotropic = self.lattice().enumerate_vectors(0, &[(hq, two)])?;
        let veronese_excluded =
            self.d() != 4 || self.h().iter().any(|&x| x % 2 != 0);
        Ok(HomologicalReport {
            hyperbolic: self.lattice().signature().0 == 1,
            primitive: embedding.map(|s| s.is_primitive()),
            no_contracted_root: contracted.is_empty(),
            no_isotropic_degree2: isotropic.is_empty(),
            veronese_excluded,
        })
    }
}

/// The intersection number of two distinct conics, asserted against the
/// admissible range: {−4,−2,−1,0,1,2} for d = 1, {−2,0,1,2} for d = 2, and
/// {0,1,2} for d ≥ 3, with the extreme negative value attained exactly when
/// l₁ + l₂ = ħ.
pub fn pair_products(s: &PolarizedDefinite, l1: &[i64], l2: &[i64]) -> Result<i64, K3Error> {
    let d = s.d();
    let target = 2 * (d as i128 - 1);
    for l in [l1, l2] {
        if s.lattice().norm_int(l) != 4 || s.lattice().inner_int(l, s.hbar()) != target {
            return Err(K3Error::NotAConic);
        }
    }
    if l1 == l2 {
        return Ok(4);
    }
    let p = i64::try_from(s.lattice().inner_int(l1, l2))
        .map_err(|_| K3Error::ProductRange(i64::MAX, d))?;
    let (range_ok, extreme) = match d {
        1 => ([-4, -2, -1, 0, 1, 2].contains(&p), -4),
        2 => ([-2, 0, 1, 2].contains(&p), -2),
        _ => ([0, 1, 2].contains(&p), i64::MIN),
    };
    if !range_ok {
        return Err(K3Error::ProductRange(p, d));
    }
    let is_sum_hbar =
        l1.iter().zip(l2).zip(s.hbar()).all(|((a, b), h)| a + b == *h);
    if d <= 2 && ((p == extreme) != is_sum_hbar) {
        return Err(K3Error::ProductRange(p, d));
    }
    Ok(p)
}
