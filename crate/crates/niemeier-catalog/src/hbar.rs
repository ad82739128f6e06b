//! Named square-12 polarization vectors ħ in the catalog lattices. The
//! coordinates ship as frozen data (ambient-frame rationals) and are
//! validated at load time: membership in the lattice and square 12.
//!
//! The single 6D4 configuration is derived on the fly by replanting
//! 24A1#11, which carries the same conic set.

use crate::niemeier::{build_niemeier, NiemeierLattice};
use crate::replant::replant;
use crate::root::RootKind;
use crate::CatalogError;
use lattice_core::QVec;
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone)]
pub struct HbarData {
    pub id: String,
    pub lattice: NiemeierLattice,
    /// ħ in ambient coordinates.
    pub ambient: QVec,
    /// ħ in lattice basis coordinates.
    pub coords: Vec<i64>,
    /// Order of stab ħ = O_ħ/R_ħ where recorded.
    pub stab_order: Option<u64>,
}

fn hbar_data() -> &'static str {
    include_str!("../data/hbar.json")
}

/// All shipped polarization ids.
pub fn hbar_ids() -> Vec<String> {
    let data: serde_json::Value = serde_json::from_str(hbar_data()).unwrap_or_default();
    let mut ids: Vec<String> = data["configs"]
        .as_array()
        .into_iter()
        .flatten()
        .filter_map(|c| c["id"].as_str().map(|s| s.to_string()))
        .collect();
    ids.push("6D4#1".to_string());
    ids
}

/// Loads a named polarization, e.g. "24A1#2" or "Leech#1".
pub fn hbar(id: &str) -> Result<HbarData, CatalogError> {
    if id == "6D4#1" {
        return hbar_6d4();
    }
    let data: serde_json::Value = serde_json::from_str(hbar_data()).map_err(|e| {
        CatalogError::BadHbar {
            id: id.to_string(),
            reason: format!("polarization data unreadable: {e}"),
        }
    })?;
    let entry = data["configs"]
        .as_array()
        .into_iter()
        .flatten()
        .find(|c| c["id"].as_str() == Some(id))
        .ok_or_else(|| CatalogError::UnknownHbar(id.to_string()))?;
    let lattice_name = entry["lattice"].as_str().ok_or_else(|| CatalogError::BadHbar {
        id: id.to_string(),
        reason: "missing lattice name".to_string(),
    })?;
    let den = entry["den"].as_i64().unwrap_or(1);
    let num: Vec<i64> = entry["num"]
        .as_array()
        .into_iter()
        .flatten()
        .filter_map(|x| x.as_i64())
        .collect();
    let lattice = build_niemeier(lattice_name)?;
    if num.len() != lattice.lattice().rank() || den == 0 {
        return Err(CatalogError::BadHbar {
            id: id.to_string(),
            reason: "malformed coordinates".to_string(),
        });
    }
    let ambient: QVec = num
        .iter()
        .map(|&x| BigRational::new(BigInt::from(x), BigInt::from(den)))
        .collect();
    let coords = lattice.coords_i64(&ambient).ok_or_else(|| CatalogError::BadHbar {
        id: id.to_string(),
        reason: "polarization does not lie in the lattice".to_string(),
    })?;
    if lattice.lattice().norm_int(&coords) != 12 {
        return Err(CatalogError::BadHbar {
            id: id.to_string(),
            reason: format!("square is {}, expected 12", lattice.lattice().norm_int(&coords)),
        });
    }
    let stab_order = entry["stab_order"].as_u64();
    Ok(HbarData {
        id: id.to_string(),
        lattice,
        ambient,
        coords,
        stab_order,
    })
}

fn hbar_6d4() -> Result<HbarData, CatalogError> {
    let source = hbar("24A1#11")?;
    let replanted = replant(&source.lattice, &source.ambient)?;
    let system = replanted.lattice.detect_root_system()?;
    if system != vec![RootKind::D(4); 6] {
        return Err(CatalogError::BadHbar {
            id: "6D4#1".to_string(),
            reason: format!("replanted root system is {system:?}, expected six D4"),
        });
    }
    let coords = replanted
        .lattice
        .coords_i64(&replanted.hbar_ambient)
        .ok_or_else(|| CatalogError::BadHbar {
            id: "6D4#1".to_string(),
            reason: "polarization missing after replanting".to_string(),
        })?;
    Ok(HbarData {
        id: "6D4#1".to_string(),
        lattice: replanted.lattice,
        ambient: replanted.hbar_ambient,
        coords,
        stab_order: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replanted_6d4_polarization_validates() {
        let data = hbar("6D4#1").unwrap();
        assert_eq!(data.lattice.lattice().norm_int(&data.coords), 12);
        assert_eq!(data.lattice.detect_root_system().unwrap(), vec![RootKind::D(4); 6]);
    }

    #[test]
    fn every_shipped_polarization_validates() {
        for id in hbar_ids() {
            if id == "6D4#1" {
                continue; // exercised separately; requires replanting
            }
            let data = hbar(&id).unwrap();
            assert_eq!(data.lattice.lattice().norm_int(&data.coords), 12, "{id}");
        }
    }
}
