//! The multigraph type and its serialization.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("multiplicity matrix is not square")]
    NotSquare,
    #[error("multiplicity matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("diagonal entry at {0} must be 0")]
    NonzeroDiagonal(usize),
    #[error("multiplicity {2} at ({0}, {1}) is outside 0..=2")]
    MultiplicityRange(usize, usize, i64),
    #[error("pair product {2} at ({0}, {1}) is outside the admissible range 0..=2")]
    ProductRange(usize, usize, i64),
    #[error("malformed graph data: {0}")]
    Malformed(String),
}

/// An edge-colored multigraph on conics: `mult[i][j] = 2 − lᵢ·lⱼ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanoGraph {
    n: usize,
    mult: Vec<Vec<u8>>,
}

impl FanoGraph {
    /// Builds a graph from an explicit multiplicity matrix, validating
    /// symmetry, the zero diagonal, and the entry range.
    pub fn from_multiplicities(mult: Vec<Vec<u8>>) -> Result<Self, GraphError> {
        let n = mult.len();
        for (i, row) in mult.iter().enumerate() {
            if row.len() != n {
                return Err(GraphError::NotSquare);
            }
            if row[i] != 0 {
                return Err(GraphError::NonzeroDiagonal(i));
            }
            for (j, &m) in row.iter().enumerate() {
                if m > 2 {
                    return Err(GraphError::MultiplicityRange(i, j, m as i64));
                }
                if mult[j][i] != m {
                    return Err(GraphError::NotSymmetric(i, j));
                }
            }
        }
        Ok(FanoGraph { n, mult })
    }

    /// Builds a graph from the pairwise products of an admissible conic
    /// set: the edge multiplicity is 2 − lᵢ·lⱼ. Products outside {0, 1, 2}
    /// signal a non-admissible configuration and are rejected.
    pub fn from_pair_products<F: Fn(usize, usize) -> i64>(
        n: usize,
        product: F,
    ) -> Result<Self, GraphError> {
        let mut mult = vec![vec![0u8; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let p = product(i, j);
                if !(0..=2).contains(&p) {
                    return Err(GraphError::ProductRange(i, j, p));
                }
                let m = (2 - p) as u8;
                mult[i][j] = m;
                mult[j][i] = m;
            }
        }
        Ok(FanoGraph { n, mult })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mult(&self, i: usize, j: usize) -> u8 {
        self.mult[i][j]
    }

    /// Total number of edges counted with multiplicity.
    pub fn edge_weight(&self) -> u64 {
        let mut w = 0u64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                w += self.mult[i][j] as u64;
            }
        }
        w
    }

    /// Applies a vertex relabeling: vertex `i` of the result is vertex
    /// `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> FanoGraph {
        let n = self.n;
        assert_eq!(perm.len(), n);
        let mut mult = vec![vec![0u8; n]; n];
        for i in 0..n {
            for j in 0..n {
                mult[i][j] = self.mult[perm[i]][perm[j]];
            }
        }
        FanoGraph { n, mult }
    }

    /// Canonical JSON export: `{"n": n, "edges": [[i, j, mult], ...]}`
    /// with edges sorted lexicographically, i < j, zero multiplicities
    /// omitted.
    pub fn to_json(&self) -> serde_json::Value {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.mult[i][j] != 0 {
                    edges.push(serde_json::json!([i, j, self.mult[i][j]]));
                }
            }
        }
        serde_json::json!({ "n": self.n, "edges": edges })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, GraphError> {
        let n = value["n"]
            .as_u64()
            .ok_or_else(|| GraphError::Malformed("missing vertex count".to_string()))?
            as usize;
        let mut mult = vec![vec![0u8; n]; n];
        let edges = value["edges"]
            .as_array()
            .ok_or_else(|| GraphError::Malformed("missing edge list".to_string()))?;
        for e in edges {
            let triple = e
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| GraphError::Malformed("edge is not a triple".to_string()))?;
            let get = |k: usize| {
                triple[k]
                    .as_u64()
                    .ok_or_else(|| GraphError::Malformed("non-integer edge entry".to_string()))
            };
            let (i, j, m) = (get(0)? as usize, get(1)? as usize, get(2)? as u8);
            if i >= n || j >= n || i == j {
                return Err(GraphError::Malformed(format!("edge ({i}, {j}) out of range")));
            }
            mult[i][j] = m;
            mult[j][i] = m;
        }
        FanoGraph::from_multiplicities(mult)
    }

    /// Adjacency-matrix text format: one row per line, entries unseparated
    /// digits.
    pub fn to_matrix_text(&self) -> String {
        let mut out = String::new();
        for row in &self.mult {
            for &m in row {
                out.push(char::from(b'0' + m));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetry_and_bad_range() {
        assert_eq!(
            FanoGraph::from_multiplicities(vec![vec![0, 1], vec![2, 0]]),
            Err(GraphError::NotSymmetric(0, 1))
        );
        assert_eq!(
            FanoGraph::from_multiplicities(vec![vec![0, 3], vec![3, 0]]),
            Err(GraphError::MultiplicityRange(0, 1, 3))
        );
        assert!(matches!(
            FanoGraph::from_pair_products(2, |_, _| 3),
            Err(GraphError::ProductRange(0, 1, 3))
        ));
        assert!(matches!(
            FanoGraph::from_pair_products(2, |_, _| -1),
            Err(GraphError::ProductRange(0, 1, -1))
        ));
    }

    #[test]
    fn json_round_trip() {
        let g = FanoGraph::from_pair_products(4, |i, j| ((i + j) % 3) as i64).unwrap();
        let back = FanoGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn singleton_graph_has_no_edges() {
        let g = FanoGraph::from_multiplicities(vec![vec![0]]).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_weight(), 0);
    }
}
