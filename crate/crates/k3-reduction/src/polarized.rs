//! Polarized lattice types: hyperbolic NS ∋ h with h² = 2d and positive
//! definite S ∋ ħ with ħ² = 2d(d−1).

use crate::K3Error;
use lattice_core::{IntegerLattice, QVec};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarizationType {
    /// h ∈ 2·NS∨.
    I,
    /// h ∉ 2·NS∨.
    II,
}

/// A hyperbolic 2d-polarized lattice NS ∋ h: σ₊(NS) = 1, h² = 2d > 0.
#[derive(Debug, Clone)]
pub struct PolarizedHyperbolic {
    lattice: IntegerLattice,
    h: Vec<i64>,
    d: i64,
}

pub(crate) fn to_qvec(v: &[i64]) -> QVec {
    v.iter().map(|&x| BigRational::from(BigInt::from(x))).collect()
}

impl PolarizedHyperbolic {
    pub fn new(lattice: IntegerLattice, h: Vec<i64>) -> Result<Self, K3Error> {
        if lattice.signature().0 != 1 {
            return Err(K3Error::NotHyperbolic);
        }
        if h.len() != lattice.rank() {
            return Err(K3Error::BadPolarization("h has wrong dimension".into()));
        }
        let h2 = lattice.norm_int(&h);
        if h2 <= 0 || h2 % 2 != 0 {
            return Err(K3Error::BadPolarization(format!(
                "h squared is {h2}, expected a positive even value"
            )));
        }
        let d = i64::try_from(h2 / 2)
            .map_err(|_| K3Error::BadPolarization("polarization degree overflow".into()))?;
        Ok(PolarizedHyperbolic { lattice, h, d })
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    pub fn h(&self) -> &[i64] {
        &self.h
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Type I iff h ∈ 2·NS∨, i.e. h pairs evenly with every lattice vector.
    pub fn polarization_type(&self) -> PolarizationType {
        let n = self.lattice.rank();
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            if self.lattice.inner_int(&e, &self.h) % 2 != 0 {
                return PolarizationType::II;
            }
        }
        PolarizationType::I
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.lattice.to_json();
        v["h"] = serde_json::json!(self.h);
        v["d"] = serde_json::json!(self.d);
        v["type"] = serde_json::json!(match self.polarization_type() {
            PolarizationType::I => "I",
            PolarizationType::II => "II",
        });
        v
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, K3Error> {
        let gram: Vec<Vec<i64>> = value["gram"]
            .as_array()
            .ok_or_else(|| K3Error::BadPolarization("missing gram".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .map(|r| r.iter().filter_map(|x| x.as_i64()).collect())
                    .ok_or_else(|| K3Error::BadPolarization("malformed gram row".into()))
            })
            .collect::<Result<_, _>>()?;
        let h: Vec<i64> = value["h"]
            .as_array()
            .ok_or_else(|| K3Error::BadPolarization("missing h".into()))?
            .iter()
            .filter_map(|x| x.as_i64())
            .collect();
        let lattice = IntegerLattice::from_i64(&gram)?;
        Self::new(lattice, h)
    }
}

/// A positive definite polarized lattice S ∋ ħ with ħ² = 2d(d−1) and
/// ħ ∈ 2(d−1)·S∨ (for d ≥ 2), or ħ = 0 (for d = 1).
#[derive(Debug, Clone)]
pub struct PolarizedDefinite {
    lattice: IntegerLattice,
    hbar: Vec<i64>,
    d: i64,
}

impl PolarizedDefinite {
    pub fn new(lattice: IntegerLattice, hbar: Vec<i64>, d: i64) -> Result<Self, K3Error> {
        if !lattice.is_positive_definite() {
            return Err(K3Error::NotPositiveDefinite);
        }
        if hbar.len() != lattice.rank() {
            return Err(K3Error::BadPolarization("hbar has wrong dimension".into()));
        }
        if d < 1 {
            return Err(K3Error::BadPolarization("polarization degree must be positive".into()));
        }
        if d == 1 {
            if hbar.iter().any(|&x| x != 0) {
                return Err(K3Error::BadPolarization("hbar must vanish for d = 1".into()));
            }
        } else {
            let target = 2 * d as i128 * (d as i128 - 1);
            let got = lattice.norm_int(&hbar);
            if got != target {
                return Err(K3Error::BadPolarization(format!(
                    "hbar squared is {got}, expected {target}"
                )));
            }
            // ħ ∈ 2(d−1)·S∨: the pairing with every lattice vector is a
            // multiple of 2(d−1).
            let m = 2 * (d as i128 - 1);
            let n = lattice.rank();
            for i in 0..n {
                let mut e = vec![0i64; n];
                e[i] = 1;
                if lattice.inner_int(&e, &hbar) % m != 0 {
                    return Err(K3Error::BadPolarization(format!(
                        "hbar is not divisible by {m} in the dual lattice"
                    )));
                }
            }
        }
        Ok(PolarizedDefinite { lattice, hbar, d })
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    pub fn hbar(&self) -> &[i64] {
        &self.hbar
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// The Fano vertices 𝔉n(S, ħ): vectors l with l² = 4, l·ħ = 2(d−1).
    pub fn fano_vectors(&self) -> Result<Vec<Vec<i64>>, K3Error> {
        let target = BigRational::from(BigInt::from(2 * (self.d - 1)));
        Ok(self.lattice.enumerate_vectors(4, &[(to_qvec(&self.hbar), target)])?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.lattice.to_json();
        v["hbar"] = serde_json::json!(self.hbar);
        v["d"] = serde_json::json!(self.d);
        v
    }
}
