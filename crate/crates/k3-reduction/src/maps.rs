//! Construction of finite-index extension lattices from rational generators
//! inside an ambient rational quadratic space, and coordinate extraction
//! relative to the constructed basis.

use crate::K3Error;
use lattice_core::mat::{hnf, qmat_inverse, qmat_mul};
use lattice_core::{IMat, IntegerLattice, QMat, QVec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Value of the ambient form on two rational vectors.
pub(crate) fn form(gram: &QMat, u: &QVec, v: &QVec) -> BigRational {
    let mut s = BigRational::zero();
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if !vj.is_zero() {
                s += ui * &gram[i][j] * vj;
            }
        }
    }
    s
}

/// The lattice generated by rational vectors inside an ambient quadratic
/// space: a Hermite-form basis of the Z-span, its (required even integral)
/// Gram matrix, and the basis rows in ambient coordinates.
pub(crate) fn lattice_from_generators(
    gram: &QMat,
    gens: &[QVec],
) -> Result<(IntegerLattice, QMat), K3Error> {
    let m = gram.len();
    let mut den = BigInt::one();
    for g in gens {
        for x in g {
            den = den.lcm(x.denom());
        }
    }
    let rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| g.iter().map(|x| (x * BigRational::from(den.clone())).to_integer()).collect())
        .collect();
    let h = hnf(&IMat::from_rows(&rows));
    let r = h.pivots.len();
    let denq = BigRational::from(den);
    let basis: QMat = (0..r)
        .map(|i| (0..m).map(|j| BigRational::from(h.h[(i, j)].clone()) / &denq).collect())
        .collect();
    let mut gram_rows: Vec<Vec<BigInt>> = Vec::with_capacity(r);
    for i in 0..r {
        let mut row = Vec::with_capacity(r);
        for j in 0..r {
            let v = form(gram, &basis[i], &basis[j]);
            if !v.denom().is_one() {
                return Err(K3Error::InvalidKappa(format!(
                    "extension is not integral: basis pairing {v}"
                )));
            }
            row.push(v.to_integer());
        }
        if !row[i].is_even() {
            return Err(K3Error::InvalidKappa(format!(
                "extension is not even: basis square {}",
                row[i]
            )));
        }
        gram_rows.push(row);
    }
    let lattice = IntegerLattice::new(IMat::from_rows(&gram_rows))?;
    Ok((lattice, basis))
}

/// Coordinates of an ambient vector in the given basis of a nondegenerate
/// sublattice, or None if the vector is outside the rational span. The
/// solve goes through the restricted Gram matrix, so it needs no choice of
/// complement.
pub fn coords_in_basis(gram: &QMat, basis: &QMat, v: &QVec) -> Option<QVec> {
    let r = basis.len();
    if r == 0 {
        return if v.iter().all(|x| x.is_zero()) { Some(vec![]) } else { None };
    }
    let gb: QMat = (0..r)
        .map(|i| (0..r).map(|j| form(gram, &basis[i], &basis[j])).collect())
        .collect();
    let gb_inv = qmat_inverse(&gb)?;
    let rhs: QMat = (0..r).map(|i| vec![form(gram, &basis[i], v)]).collect();
    let x = qmat_mul(&gb_inv, &rhs);
    let coords: QVec = x.into_iter().map(|row| row.into_iter().next().unwrap()).collect();
    // Confirm membership of v in the span.
    for (j, vj) in v.iter().enumerate() {
        let mut s = BigRational::zero();
        for i in 0..r {
            s += &coords[i] * &basis[i][j];
        }
        if &s != vj {
            return None;
        }
    }
    Some(coords)
}

/// Integer coordinates, or None if non-integral or outside the span.
pub(crate) fn int_coords_in_basis(gram: &QMat, basis: &QMat, v: &QVec) -> Option<Vec<i64>> {
    let coords = coords_in_basis(gram, basis, v)?;
    coords
        .iter()
        .map(|x| {
            if x.denom().is_one() {
                i64::try_from(x.numer()).ok()
            } else {
                None
            }
        })
        .collect()
}
