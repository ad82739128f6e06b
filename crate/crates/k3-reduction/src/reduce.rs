//! The reduction NS ∋ h ↦ S = −(h⊥ ⊕ Zħ)~ ∋ ħ and its inverse hyperbolic
//! models hp₀(S) and hp_κ(S).

use crate::enumerate::enumerate_fn;
use crate::maps::{int_coords_in_basis, lattice_from_generators};
use crate::polarized::{to_qvec, PolarizedDefinite, PolarizedHyperbolic};
use crate::K3Error;
use discriminant_forms::FiniteQuadraticForm;
use lattice_core::{rat_mod, QMat, QVec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// The definite side of the reduction together with the change-of-frame
/// data: each basis vector of S is recorded as a rational vector of h⊥ ⊂ NS
/// (in NS coordinates) plus a rational multiple of the formal vector ħ.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub s: PolarizedDefinite,
    /// Per S-basis vector: (component in NS ⊗ Q, coefficient of ħ).
    pub basis_map: Vec<(QVec, BigRational)>,
}

/// The hyperbolic model together with the change-of-frame data: each basis
/// vector of NS is recorded as a rational vector of S ⊗ Q plus a rational
/// multiple of the formal vector h, h² = 2d; the form on the S-part is the
/// negated form of S.
#[derive(Debug, Clone)]
pub struct HypModel {
    pub ns: PolarizedHyperbolic,
    /// Per NS-basis vector: (component in S ⊗ Q, coefficient of h).
    pub basis_map: Vec<(QVec, BigRational)>,
}

fn qzero() -> BigRational {
    BigRational::zero()
}

fn qint(x: i64) -> BigRational {
    BigRational::from(BigInt::from(x))
}

/// S(NS, h) := −(h⊥ ⊕ Zħ)~, the cyclic index-d extension generated by
/// c′ + d⁻¹ħ for a conic c, c′ = c − d⁻¹h; for d = 1, S = −h⊥ and ħ = 0.
pub fn reduce(ns: &PolarizedHyperbolic) -> Result<Reduction, K3Error> {
    let d = ns.d();
    let conics = enumerate_fn(ns, 2)?;
    let c = conics.first().ok_or(K3Error::EmptyConicSet)?;
    let n = ns.lattice().rank();
    let h_sub = ns.lattice().saturate_int(&[ns.h().to_vec()]);
    let perp = ns.lattice().orthogonal_complement(&h_sub);
    let k = perp.rank();
    let perp_rows: Vec<QVec> = (0..k)
        .map(|i| perp.basis().row(i).iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();

    if d == 1 {
        let s_lattice = ns.lattice().restrict(&perp)?.negate();
        let s = PolarizedDefinite::new(s_lattice, vec![0; k], 1)?;
        let basis_map = perp_rows.into_iter().map(|row| (row, qzero())).collect();
        return Ok(Reduction { s, basis_map });
    }

    // Ambient space: h⊥-basis coordinates followed by the formal ħ, with the
    // form already negated so that the result is positive definite:
    // diag(−Gram(h⊥), 2d(d−1)).
    let gp = ns.lattice().restrict(&perp)?;
    let m = k + 1;
    let mut gram: QMat = vec![vec![qzero(); m]; m];
    for i in 0..k {
        for j in 0..k {
            gram[i][j] = -BigRational::from(gp.gram()[(i, j)].clone());
        }
    }
    gram[k][k] = qint(2 * d * (d - 1));

    // c′ = c − d⁻¹h expressed in the h⊥ basis.
    let cq = to_qvec(c);
    let hq = to_qvec(ns.h());
    let c_proj: QVec = (0..n).map(|j| &cq[j] - &hq[j] / qint(d)).collect();
    let c_coords = perp
        .express(&c_proj)
        .expect("the projection of a conic lies in the rational span of h-perp");

    let mut gens: Vec<QVec> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut e = vec![qzero(); m];
        e[i] = qint(1);
        gens.push(e);
    }
    let mut g: QVec = c_coords;
    g.push(qint(1) / qint(d));
    gens.push(g);

    let (s_lattice, basis) = lattice_from_generators(&gram, &gens)?;
    let mut hbar_ambient = vec![qzero(); m];
    hbar_ambient[k] = qint(1);
    let hbar = int_coords_in_basis(&gram, &basis, &hbar_ambient)
        .expect("hbar lies in the extension by construction");
    let s = PolarizedDefinite::new(s_lattice, hbar, d)?;

    let basis_map = basis
        .iter()
        .map(|row| {
            let ns_part: QVec = (0..n)
                .map(|j| {
                    let mut acc = qzero();
                    for i in 0..k {
                        acc += &row[i] * &perp_rows[i][j];
                    }
                    acc
                })
                .collect();
            (ns_part, row[k].clone())
        })
        .collect();
    Ok(Reduction { s, basis_map })
}

/// The hyperelliptic classes available for the type II model: order-2
/// classes κ of the discriminant group of S with q(κ) = d/2 mod 2Z and
/// κ·ħ ≡ 0 mod 2(d−1), each paired with a rational lift in S-basis
/// coordinates. Defined for odd d; for even d the type II extension datum
/// is of a different shape and is not supported here.
pub fn hyp_candidates(
    s: &PolarizedDefinite,
) -> Result<Vec<(Vec<i64>, QVec)>, K3Error> {
    let d = s.d();
    if d % 2 == 0 {
        return Err(K3Error::InvalidKappa(
            "type II models are only constructed for odd d".into(),
        ));
    }
    let (f, lifts) = FiniteQuadraticForm::from_lattice_with_lifts(s.lattice())?;
    let target = rat_mod(&BigRational::new(BigInt::from(d), BigInt::from(2)), 2);
    let hq = to_qvec(s.hbar());
    let modulus = 2 * (d - 1);
    let mut out = Vec::new();
    for e in f.two_torsion() {
        if f.is_zero_elem(&e) || f.q_of(&e) != target {
            continue;
        }
        let lift: QVec = (0..s.lattice().rank())
            .map(|j| {
                let mut acc = BigRational::zero();
                for (i, l) in lifts.iter().enumerate() {
                    acc += qint(e[i]) * &l[j];
                }
                acc
            })
            .collect();
        if modulus > 0 {
            let pairing = s.lattice().inner_q(&lift, &hq);
            if !rat_mod(&pairing, modulus as u32).is_zero() {
                continue;
            }
        }
        out.push((e, lift));
    }
    Ok(out)
}

/// The hyperbolic model hp_κ(S): for κ = None the cyclic index-d extension
/// hp₀ of ħ⊥ ⊕ Zh containing l − d⁻¹ħ + d⁻¹h for a conic l; for κ ∈ Hyp the
/// further index-2 extension by κ + ½h.
pub fn hyp(s: &PolarizedDefinite, kappa: Option<&[i64]>) -> Result<HypModel, K3Error> {
    let d = s.d();
    let r = s.lattice().rank();
    let m = r + 1;

    // Ambient space: S-basis coordinates followed by the formal h:
    // diag(−Gram(S), 2d).
    let mut gram: QMat = vec![vec![qzero(); m]; m];
    for i in 0..r {
        for j in 0..r {
            gram[i][j] = -BigRational::from(s.lattice().gram()[(i, j)].clone());
        }
    }
    gram[r][r] = qint(2 * d);

    let mut gens: Vec<QVec> = Vec::new();
    if d == 1 {
        // hp₀ = (−S) ⊕ Zh.
        for i in 0..m {
            let mut e = vec![qzero(); m];
            e[i] = qint(1);
            gens.push(e);
        }
    } else {
        let hbar_sub = s.lattice().saturate_int(&[s.hbar().to_vec()]);
        let hperp = s.lattice().orthogonal_complement(&hbar_sub);
        for i in 0..hperp.rank() {
            let mut row: QVec =
                hperp.basis().row(i).iter().map(|x| BigRational::from(x.clone())).collect();
            row.push(qzero());
            gens.push(row);
        }
        let mut h_row = vec![qzero(); m];
        h_row[r] = qint(1);
        gens.push(h_row);
        let fano = s.fano_vectors()?;
        let l = fano.first().ok_or(K3Error::EmptyConicSet)?;
        let lq = to_qvec(l);
        let hbq = to_qvec(s.hbar());
        let mut ext: QVec = (0..r).map(|j| &lq[j] - &hbq[j] / qint(d)).collect();
        ext.push(qint(1) / qint(d));
        gens.push(ext);
    }

    if let Some(k) = kappa {
        let candidates = hyp_candidates(s)?;
        let f = FiniteQuadraticForm::from_lattice(s.lattice())?;
        let k_red = f.reduce(k);
        let mut lift = candidates
            .iter()
            .find(|(e, _)| *e == k_red)
            .map(|(_, lift)| lift.clone())
            .ok_or_else(|| {
                K3Error::InvalidKappa(
                    "kappa fails the order, square, or hbar-pairing condition".into(),
                )
            })?;
        if d > 1 {
            // Normalize the lift into ħ⊥: its ħ-pairing is a multiple of
            // 2(d−1), so subtracting that multiple of a Fano vector (which
            // pairs exactly 2(d−1) with ħ) kills the ħ-component without
            // changing the discriminant class. This keeps hp_κ of the same
            // rank as hp₀.
            let hq = to_qvec(s.hbar());
            let pairing = s.lattice().inner_q(&lift, &hq);
            let step = qint(2 * (d - 1));
            let mult = &pairing / &step;
            if !mult.is_integer() {
                return Err(K3Error::InvalidKappa(
                    "kappa pairs fractionally with hbar".into(),
                ));
            }
            let fano = s.fano_vectors()?;
            let l = fano.first().ok_or(K3Error::EmptyConicSet)?;
            for (j, &lj) in l.iter().enumerate() {
                lift[j] -= &mult * qint(lj);
            }
            debug_assert!(s.lattice().inner_q(&lift, &hq).is_zero());
        }
        let mut row = lift;
        row.push(BigRational::new(BigInt::from(1), BigInt::from(2)));
        gens.push(row);
    }

    let (ns_lattice, basis) = lattice_from_generators(&gram, &gens)?;
    let mut h_ambient = vec![qzero(); m];
    h_ambient[r] = qint(1);
    let h = int_coords_in_basis(&gram, &basis, &h_ambient)
        .expect("h lies in the extension by construction");
    let ns = PolarizedHyperbolic::new(ns_lattice, h)?;
    if ns.d() != d {
        return Err(K3Error::BadPolarization("polarization degree changed".into()));
    }
    let basis_map = basis
        .iter()
        .map(|row| (row[0..r].to_vec(), row[r].clone()))
        .collect();
    Ok(HypModel { ns, basis_map })
}
