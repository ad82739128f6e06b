//! Construction of the 23 root-full Niemeier lattices: block root Gram
//! plus a glue code, realized as an explicit rational basis in root-basis
//! coordinates, with full validation at load time.

use crate::glue::{self, GlueWord};
use crate::root::{RootKind, RootSystemComponent};
use crate::CatalogError;
use lattice_core::mat::{hnf, qmat_inverse};
use lattice_core::{IMat, IntegerLattice, QMat, QVec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The root systems of the 23 root-full Niemeier lattices, in the order
/// used throughout (decreasing Coxeter number).
pub fn catalog_spec() -> Vec<(&'static str, Vec<RootKind>)> {
    use RootKind::{A, D, E};
    vec![
        ("D24", vec![D(24)]),
        ("D16E8", vec![D(16), E(8)]),
        ("3E8", vec![E(8), E(8), E(8)]),
        ("A24", vec![A(24)]),
        ("2D12", vec![D(12), D(12)]),
        ("A17E7", vec![A(17), E(7)]),
        ("D10-2E7", vec![D(10), E(7), E(7)]),
        ("A15D9", vec![A(15), D(9)]),
        ("3D8", vec![D(8), D(8), D(8)]),
        ("2A12", vec![A(12), A(12)]),
        ("A11D7E6", vec![A(11), D(7), E(6)]),
        ("4E6", vec![E(6), E(6), E(6), E(6)]),
        ("2A9D6", vec![A(9), A(9), D(6)]),
        ("4D6", vec![D(6), D(6), D(6), D(6)]),
        ("3A8", vec![A(8), A(8), A(8)]),
        ("2A7-2D5", vec![A(7), A(7), D(5), D(5)]),
        ("4A6", vec![A(6), A(6), A(6), A(6)]),
        ("4A5D4", vec![A(5), A(5), A(5), A(5), D(4)]),
        ("6D4", vec![D(4), D(4), D(4), D(4), D(4), D(4)]),
        ("6A4", vec![A(4), A(4), A(4), A(4), A(4), A(4)]),
        ("8A3", vec![A(3); 8]),
        ("12A2", vec![A(2); 12]),
        ("24A1", vec![A(1); 24]),
    ]
}

/// All catalog names, the root-full lattices followed by the Leech
/// lattice.
pub fn catalog_names() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = catalog_spec().iter().map(|(n, _)| *n).collect();
    names.push("Leech");
    names
}

/// A rank-24 positive-definite even unimodular lattice, kept together
/// with the ambient frame it was built in: root-basis coordinates with
/// the block root Gram for the root-full lattices, eighth-integral frame
/// coordinates for the Leech lattice.
#[derive(Debug, Clone)]
pub struct NiemeierLattice {
    name: String,
    components: Vec<RootSystemComponent>,
    glue_generators: Vec<GlueWord>,
    ambient_gram: QMat,
    basis: QMat,
    basis_inv: QMat,
    lattice: IntegerLattice,
}

impl NiemeierLattice {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Empty for the Leech lattice.
    pub fn components(&self) -> &[RootSystemComponent] {
        &self.components
    }

    pub fn glue_generators(&self) -> &[GlueWord] {
        &self.glue_generators
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    pub fn ambient_gram(&self) -> &QMat {
        &self.ambient_gram
    }

    /// Basis rows in ambient coordinates.
    pub fn basis(&self) -> &QMat {
        &self.basis
    }

    /// Ambient coordinates of a lattice vector given in basis coordinates.
    pub fn ambient_of(&self, coords: &[i64]) -> QVec {
        let n = self.basis.len();
        (0..self.basis[0].len())
            .map(|j| {
                (0..n)
                    .map(|i| &self.basis[i][j] * BigRational::from(BigInt::from(coords[i])))
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Ambient coordinates of a rational combination of basis vectors.
    pub fn ambient_of_q(&self, coords: &QVec) -> QVec {
        let n = self.basis.len();
        (0..self.basis[0].len())
            .map(|j| {
                (0..n)
                    .map(|i| &self.basis[i][j] * &coords[i])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Basis coordinates of an ambient vector (rational in general;
    /// integral exactly when the vector lies in the lattice).
    pub fn coords_of(&self, ambient: &QVec) -> QVec {
        let n = self.basis_inv.len();
        (0..self.basis_inv[0].len())
            .map(|j| {
                (0..n)
                    .map(|i| &ambient[i] * &self.basis_inv[i][j])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn contains_ambient(&self, ambient: &QVec) -> bool {
        self.coords_of(ambient).iter().all(|c| c.is_integer())
    }

    /// Basis coordinates as i64, available when the ambient vector lies in
    /// the lattice.
    pub fn coords_i64(&self, ambient: &QVec) -> Option<Vec<i64>> {
        let coords = self.coords_of(ambient);
        coords
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().try_into().ok()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn inner_ambient(&self, u: &QVec, v: &QVec) -> BigRational {
        let n = u.len();
        let mut acc = BigRational::zero();
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc += &u[i] * &self.ambient_gram[i][j] * &v[j];
            }
        }
        acc
    }

    /// All roots (norm-2 vectors), in basis coordinates.
    pub fn roots(&self) -> Result<Vec<Vec<i64>>, CatalogError> {
        Ok(self.lattice.enumerate_vectors(2, &[])?)
    }

    /// Identifies the root system from the norm-2 vectors, as a sorted
    /// multiset of irreducible kinds, by splitting the roots into
    /// orthogonality-connected components and matching (rank, count).
    pub fn detect_root_system(&self) -> Result<Vec<RootKind>, CatalogError> {
        let roots = self.roots()?;
        let mut assigned = vec![usize::MAX; roots.len()];
        let mut kinds: Vec<RootKind> = Vec::new();
        let mut next = 0usize;
        for i in 0..roots.len() {
            if assigned[i] != usize::MAX {
                continue;
            }
            let comp = next;
            next += 1;
            assigned[i] = comp;
            let mut frontier = vec![i];
            while let Some(j) = frontier.pop() {
                for k in 0..roots.len() {
                    if assigned[k] == usize::MAX
                        && self.lattice.inner_int(&roots[j], &roots[k]) != 0
                    {
                        assigned[k] = comp;
                        frontier.push(k);
                    }
                }
            }
            let members: Vec<Vec<num_bigint::BigInt>> = roots
                .iter()
                .zip(assigned.iter())
                .filter(|(_, &a)| a == comp)
                .map(|(r, _)| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let rank = lattice_core::mat::rank(&IMat::from_rows(&members));
            let count = members.len();
            let kind = match (rank, count) {
                (6, 72) => RootKind::E(6),
                (7, 126) => RootKind::E(7),
                (8, 240) => RootKind::E(8),
                (n, c) if c == 2 * n * (n - 1) && n >= 4 => RootKind::D(n),
                (n, c) if c == n * (n + 1) => RootKind::A(n),
                (n, c) => {
                    return Err(CatalogError::BadLattice {
                        name: self.name.clone(),
                        reason: format!("unrecognized root component: rank {n}, {c} roots"),
                    })
                }
            };
            kinds.push(kind);
        }
        kinds.sort_by_key(|k| (k.rank(), k.det()));
        Ok(kinds)
    }

    /// Builds the lattice from ambient generator rows, clearing
    /// denominators and reducing to a Hermite-form basis.
    pub(crate) fn from_frame(
        name: &str,
        components: Vec<RootSystemComponent>,
        glue_generators: Vec<GlueWord>,
        ambient_gram: QMat,
        generators: &[QVec],
    ) -> Result<NiemeierLattice, CatalogError> {
        let dim = ambient_gram.len();
        let mut denom = BigInt::one();
        for g in generators {
            for c in g {
                denom = denom.lcm(c.denom());
            }
        }
        let rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| g.iter().map(|c| (c * BigRational::from(denom.clone())).to_integer()).collect())
            .collect();
        let h = hnf(&IMat::from_rows(&rows));
        let nonzero: Vec<Vec<BigInt>> = h
            .h
            .rows_vec()
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        if nonzero.len() != dim {
            return Err(CatalogError::BadLattice {
                name: name.to_string(),
                reason: format!("generators span rank {} != {}", nonzero.len(), dim),
            });
        }
        let basis: QMat = nonzero
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| BigRational::new(x.clone(), denom.clone()))
                    .collect()
            })
            .collect();
        let basis_inv = qmat_inverse(&basis).ok_or_else(|| CatalogError::BadLattice {
            name: name.to_string(),
            reason: "basis is singular".to_string(),
        })?;
        let mut gram_rows: Vec<Vec<BigInt>> = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut row = Vec::with_capacity(dim);
            for j in 0..dim {
                let mut acc = BigRational::zero();
                for a in 0..dim {
                    if basis[i][a].is_zero() {
                        continue;
                    }
                    for b in 0..dim {
                        acc += &basis[i][a] * &ambient_gram[a][b] * &basis[j][b];
                    }
                }
                if !acc.is_integer() {
                    return Err(CatalogError::BadLattice {
                        name: name.to_string(),
                        reason: format!("non-integral Gram entry at ({i}, {j}): {acc}"),
                    });
                }
                row.push(acc.to_integer());
            }
            gram_rows.push(row);
        }
        let lattice = IntegerLattice::new(IMat::from_rows(&gram_rows))?;
        Ok(NiemeierLattice {
            name: name.to_string(),
            components,
            glue_generators,
            ambient_gram,
            basis,
            basis_inv,
            lattice,
        })
    }

    /// Load-time validation: positive definite, even, unimodular; the glue
    /// group has the order that makes the extension unimodular and every
    /// nonzero glue word has even integral minimal norm ≥ 4 (so the root
    /// system is exactly the block system).
    pub fn validate(&self) -> Result<(), CatalogError> {
        let fail = |reason: String| CatalogError::BadLattice {
            name: self.name.clone(),
            reason,
        };
        if !self.lattice.is_positive_definite() {
            return Err(fail("not positive definite".into()));
        }
        if self.lattice.det() != &BigInt::one() {
            return Err(fail(format!("determinant {} != 1", self.lattice.det())));
        }
        let g = self.lattice.gram();
        for i in 0..self.lattice.rank() {
            if (&g[(i, i)] % BigInt::from(2)).abs() != BigInt::zero() {
                return Err(fail(format!("odd norm at basis vector {i}")));
            }
        }
        if self.components.is_empty() {
            return Ok(());
        }
        let kinds: Vec<RootKind> = self.components.iter().map(|c| c.kind).collect();
        let span = glue::span_words(&kinds, &self.glue_generators);
        let det_product: u128 = kinds.iter().map(|k| k.det() as u128).product();
        let order = span.len() as u128;
        if order * order != det_product {
            return Err(CatalogError::BadGlue {
                name: self.name.clone(),
                reason: format!("glue order {} squared != discriminant {}", order, det_product),
            });
        }
        for w in &span {
            if w.iter().any(|&d| d != 0) && !glue::word_is_glue(&kinds, w) {
                return Err(CatalogError::BadGlue {
                    name: self.name.clone(),
                    reason: format!("word {w:?} has bad minimal norm {}", glue::word_min_norm(&kinds, w)),
                });
            }
        }
        // The root basis itself must lie in the lattice.
        let dim = self.lattice.rank();
        for i in 0..dim {
            let mut e = vec![BigRational::zero(); dim];
            e[i] = BigRational::one();
            if !self.contains_ambient(&e) {
                return Err(fail(format!("root basis vector {i} missing")));
            }
        }
        Ok(())
    }
}

fn parse_kind(s: &str) -> Option<RootKind> {
    let (letter, num) = s.split_at(1);
    let n: usize = num.parse().ok()?;
    match letter {
        "A" => Some(RootKind::A(n)),
        "D" => Some(RootKind::D(n)),
        "E" => Some(RootKind::E(n)),
        _ => None,
    }
}

fn glue_data() -> &'static str {
    include_str!("../data/glue.json")
}

/// Builds a catalog lattice by name ("D24" … "24A1", or "Leech"),
/// validating it on the way out.
pub fn build_niemeier(name: &str) -> Result<NiemeierLattice, CatalogError> {
    if name == "Leech" {
        return crate::leech::build_leech();
    }
    let spec = catalog_spec();
    let kinds = spec
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, k)| k.clone())
        .ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;

    let data: serde_json::Value = serde_json::from_str(glue_data()).map_err(|e| {
        CatalogError::BadGlue {
            name: name.to_string(),
            reason: format!("glue data unreadable: {e}"),
        }
    })?;
    let entry = data["lattices"]
        .as_array()
        .into_iter()
        .flatten()
        .find(|e| e["name"].as_str() == Some(name))
        .ok_or_else(|| CatalogError::BadGlue {
            name: name.to_string(),
            reason: "no glue entry in data file".to_string(),
        })?;
    let listed: Vec<RootKind> = entry["components"]
        .as_array()
        .into_iter()
        .flatten()
        .filter_map(|c| c.as_str().and_then(parse_kind))
        .collect();
    if listed != kinds {
        return Err(CatalogError::BadGlue {
            name: name.to_string(),
            reason: "component list in data file disagrees with the catalog".to_string(),
        });
    }
    let glue_generators: Vec<GlueWord> = entry["generators"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|w| {
            w.as_array()
                .into_iter()
                .flatten()
                .filter_map(|d| d.as_u64().map(|x| x as u8))
                .collect::<GlueWord>()
        })
        .collect();
    for w in &glue_generators {
        if w.len() != kinds.len()
            || w.iter().zip(kinds.iter()).any(|(&d, k)| d >= k.num_classes())
        {
            return Err(CatalogError::BadGlue {
                name: name.to_string(),
                reason: format!("malformed generator word {w:?}"),
            });
        }
    }

    let mut components = Vec::with_capacity(kinds.len());
    let mut offset = 0usize;
    for &kind in &kinds {
        components.push(RootSystemComponent { kind, offset });
        offset += kind.rank();
    }
    let dim = offset;
    debug_assert_eq!(dim, 24);

    let mut ambient_gram: QMat = vec![vec![BigRational::zero(); dim]; dim];
    for comp in &components {
        let g = comp.kind.gram();
        for i in 0..comp.kind.rank() {
            for j in 0..comp.kind.rank() {
                ambient_gram[comp.offset + i][comp.offset + j] =
                    BigRational::from(g[(i, j)].clone());
            }
        }
    }

    let mut generators: Vec<QVec> = Vec::with_capacity(dim + glue_generators.len());
    for i in 0..dim {
        let mut e = vec![BigRational::zero(); dim];
        e[i] = BigRational::one();
        generators.push(e);
    }
    for w in &glue_generators {
        let mut v = vec![BigRational::zero(); dim];
        for (comp, &d) in components.iter().zip(w.iter()) {
            let rep = comp.kind.class_rep(d);
            for (i, x) in rep.into_iter().enumerate() {
                v[comp.offset + i] = x;
            }
        }
        generators.push(v);
    }

    let lat = NiemeierLattice::from_frame(name, components, glue_generators, ambient_gram, &generators)?;
    lat.validate()?;
    Ok(lat)
}
