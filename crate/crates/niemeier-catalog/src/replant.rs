//! Replanting: given a square-12 polarization ħ in an even unimodular
//! rank-24 lattice N whose conic set spans a sublattice F of index 4 with
//! discriminant (Z/4)², the second isotropic subgroup of discr F defines
//! a second even unimodular lattice N′ ⊃ F carrying the same conic set.

use crate::niemeier::NiemeierLattice;
use crate::CatalogError;
use lattice_core::mat::{det, hnf};
use lattice_core::{IMat, QVec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub struct Replanted {
    /// The partner lattice N′, in the same ambient frame as the input.
    pub lattice: NiemeierLattice,
    /// The polarization, unchanged, in ambient coordinates.
    pub hbar_ambient: QVec,
    /// The shared conic set, in ambient coordinates.
    pub conics_ambient: Vec<QVec>,
}

fn conics_ambient_of(
    lat: &NiemeierLattice,
    hbar_coords: &[i64],
) -> Result<Vec<QVec>, CatalogError> {
    let hq: QVec = hbar_coords.iter().map(|&c| BigRational::from(BigInt::from(c))).collect();
    let four = BigRational::from(BigInt::from(4));
    let conics = lat.lattice().enumerate_vectors(4, &[(hq, four)])?;
    Ok(conics.iter().map(|c| lat.ambient_of(c)).collect())
}

pub fn replant(lat: &NiemeierLattice, hbar_ambient: &QVec) -> Result<Replanted, CatalogError> {
    let err = |reason: String| CatalogError::Replant(reason);
    let coords = lat
        .coords_i64(hbar_ambient)
        .ok_or_else(|| err("polarization does not lie in the lattice".into()))?;
    if lat.lattice().norm_int(&coords) != 12 {
        return Err(err("polarization must have square 12".into()));
    }
    let dim = lat.lattice().rank();

    let hq: QVec = coords.iter().map(|&c| BigRational::from(BigInt::from(c))).collect();
    let four = BigRational::from(BigInt::from(4));
    let conics = lat.lattice().enumerate_vectors(4, &[(hq.clone(), four)])?;

    // F = the integral span of the conic set; replanting needs [N : F] = 4.
    let f_rows: Vec<Vec<BigInt>> = conics
        .iter()
        .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let f_hnf = hnf(&IMat::from_rows(&f_rows));
    let f_basis: Vec<Vec<BigInt>> = f_hnf
        .h
        .rows_vec()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    if f_basis.len() != dim {
        return Err(err(format!(
            "conic span has rank {}, expected {}",
            f_basis.len(),
            dim
        )));
    }
    let index = det(&IMat::from_rows(&f_basis)).abs();
    if index != BigInt::from(4) {
        return Err(err(format!("conic span has index {index}, expected 4")));
    }

    // A generator of N/F: any a with a·ħ = 1 (conics pair to 4Z with ħ).
    let gh: Vec<BigInt> = (0..dim)
        .map(|j| {
            (0..dim)
                .map(|i| BigInt::from(coords[i]) * &lat.lattice().gram()[(i, j)])
                .fold(BigInt::zero(), |x, y| x + y)
        })
        .collect();
    let (a, _) = lattice_core::solve_integer_system(&IMat::from_rows(&[gh]), &[BigInt::one()])
        .ok_or_else(|| err("polarization is not of divisor 1".into()))?;

    // N′ = F + Z(a + ħ/2), the other isotropic order-4 subgroup.
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let alpha_prime: QVec = (0..dim)
        .map(|i| BigRational::from(a[i].clone()) + &half * &hq[i])
        .collect();
    if alpha_prime.iter().all(|c| c.is_integer()) {
        return Err(err("replanting is trivial: ħ/2 shift stays integral".into()));
    }
    let mut generators: Vec<QVec> = f_basis
        .iter()
        .map(|r| lat.ambient_of_q(&r.iter().map(|x| BigRational::from(x.clone())).collect::<QVec>()))
        .collect();
    generators.push(lat.ambient_of_q(&alpha_prime));

    let replanted = NiemeierLattice::from_frame(
        &format!("{}-replant", lat.name()),
        Vec::new(),
        Vec::new(),
        lat.ambient_gram().clone(),
        &generators,
    )?;
    replanted.validate()?;

    // The conic set must be shared verbatim (in the common ambient frame).
    let conics_ambient: Vec<QVec> = conics.iter().map(|c| lat.ambient_of(c)).collect();
    let coords_new = replanted
        .coords_i64(hbar_ambient)
        .ok_or_else(|| err("polarization missing from the replanted lattice".into()))?;
    let mut shared = conics_ambient_of(&replanted, &coords_new)?;
    shared.sort();
    let mut original = conics_ambient.clone();
    original.sort();
    if shared != original {
        return Err(err("replanted lattice carries a different conic set".into()));
    }

    Ok(Replanted {
        lattice: replanted,
        hbar_ambient: hbar_ambient.clone(),
        conics_ambient,
    })
}
