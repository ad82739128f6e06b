//! Canonical labeling of edge-colored multigraphs by
//! individualization–refinement, with automorphism generators collected
//! from the search tree.
//!
//! The refinement step computes the coarsest equitable partition with
//! respect to the two edge colors; cells split by isomorphism-invariant
//! signatures, so the resulting cell order is itself invariant. The
//! search individualizes vertices of the first smallest non-singleton
//! cell, prunes by the path invariant (sequence of quotient matrices)
//! and by orbits of already-discovered automorphisms, and keeps the
//! lexicographically smallest leaf encoding as the certificate.

use crate::graph::FanoGraph;
use crate::perm::{compose, group_order, inverse};
use num_bigint::BigUint;
use std::cmp::Ordering;

/// Canonical certificate: equal for two graphs iff they are isomorphic
/// as edge-colored multigraphs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Certificate {
    n: usize,
    /// Upper-triangular multiplicities under the canonical labeling.
    encoding: Vec<u8>,
}

impl Certificate {
    pub fn hex_digest(&self) -> String {
        // A compact fingerprint for display; equality of full
        // certificates remains the authoritative test.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &b in std::iter::once(&(self.n as u8)).chain(self.encoding.iter()) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        format!("{:016x}-{}", h, self.n)
    }
}

/// Result of the canonical-labeling search.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub certificate: Certificate,
    /// Canonical labeling: position i of the canonical graph holds
    /// vertex `labeling[i]` of the input.
    pub labeling: Vec<usize>,
    /// Generators of the automorphism group (as permutations of the
    /// input vertices).
    pub generators: Vec<Vec<usize>>,
}

impl FanoGraph {
    pub fn canonical_form(&self) -> CanonicalForm {
        let mut searcher = Searcher::new(self);
        let root = Partition::unit(self.n());
        searcher.run(root);
        let labeling = searcher.best_leaf.expect("search visits at least one leaf");
        let encoding = encode(self, &labeling);
        CanonicalForm {
            certificate: Certificate { n: self.n(), encoding },
            labeling,
            generators: searcher.generators,
        }
    }

    /// Order of the edge-colored automorphism group.
    pub fn aut_order(&self) -> BigUint {
        let form = self.canonical_form();
        group_order(self.n().max(1), &form.generators)
    }

    pub fn is_isomorphic(&self, other: &FanoGraph) -> bool {
        self.n() == other.n() && self.canonical_form().certificate == other.canonical_form().certificate
    }
}

/// Upper-triangular multiplicity encoding of the relabeled graph.
fn encode(g: &FanoGraph, labeling: &[usize]) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(g.mult(labeling[i], labeling[j]));
        }
    }
    out
}

/// An ordered partition of the vertices into cells.
#[derive(Debug, Clone)]
struct Partition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl Partition {
    fn unit(n: usize) -> Partition {
        Partition { cells: vec![(0..n).collect()], cell_of: vec![0; n] }
    }

    fn reindex(&mut self) {
        for (c, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                self.cell_of[v] = c;
            }
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// First smallest non-singleton cell (by cell order).
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for (i, cell) in self.cells.iter().enumerate() {
            if cell.len() > 1 && best.is_none_or(|(len, _)| cell.len() < len) {
                best = Some((cell.len(), i));
            }
        }
        best.map(|(_, i)| i)
    }

    /// Splits off `v` into its own cell placed before the remainder of
    /// its former cell.
    fn individualize(&self, v: usize) -> Partition {
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        for cell in &self.cells {
            if cell.contains(&v) {
                cells.push(vec![v]);
                cells.push(cell.iter().copied().filter(|&u| u != v).collect());
            } else {
                cells.push(cell.clone());
            }
        }
        let mut p = Partition { cells, cell_of: vec![0; self.cell_of.len()] };
        p.reindex();
        p
    }
}

/// Refines to the coarsest equitable partition; returns the invariant of
/// the refined partition (cell sizes plus the quotient multiplicity
/// counts), which depends only on the isomorphism class of the colored
/// partitioned graph.
fn refine(g: &FanoGraph, p: &mut Partition) -> Vec<u32> {
    let n = g.n();
    loop {
        let mut changed = false;
        // Signature of each vertex against the current partition:
        // per cell, the counts of multiplicity-1 and multiplicity-2
        // edges into that cell.
        let k = p.cells.len();
        let mut sig = vec![vec![0u32; 2 * k]; n];
        for v in 0..n {
            for u in 0..n {
                let m = g.mult(v, u);
                if m > 0 {
                    sig[v][2 * p.cell_of[u] + (m as usize - 1)] += 1;
                }
            }
        }
        let mut new_cells: Vec<Vec<usize>> = Vec::with_capacity(k);
        for cell in &p.cells {
            if cell.len() == 1 {
                new_cells.push(cell.clone());
                continue;
            }
            // Group by signature; order subcells by the signature key so
            // the refined cell order is isomorphism-invariant.
            let mut groups: std::collections::BTreeMap<&[u32], Vec<usize>> = Default::default();
            for &v in cell {
                groups.entry(&sig[v]).or_default().push(v);
            }
            if groups.len() > 1 {
                changed = true;
            }
            for (_, vs) in groups {
                new_cells.push(vs);
            }
        }
        p.cells = new_cells;
        p.reindex();
        if !changed {
            // Invariant: cell sizes and the equitable quotient.
            let k = p.cells.len();
            let mut inv = Vec::with_capacity(k * (k + 2));
            for cell in &p.cells {
                inv.push(cell.len() as u32);
            }
            for a in 0..k {
                let rep = p.cells[a][0];
                for b in 0..k {
                    let mut m1 = 0u32;
                    let mut m2 = 0u32;
                    for &u in &p.cells[b] {
                        match g.mult(rep, u) {
                            1 => m1 += 1,
                            2 => m2 += 1,
                            _ => {}
                        }
                    }
                    inv.push(m1);
                    inv.push(m2);
                }
            }
            return inv;
        }
    }
}

struct Searcher<'g> {
    g: &'g FanoGraph,
    /// Invariants along the path to the current best leaf.
    best_path: Vec<Vec<u32>>,
    best_leaf: Option<Vec<usize>>,
    best_encoding: Option<Vec<u8>>,
    generators: Vec<Vec<usize>>,
    /// Individualized vertices on the current path.
    prefix: Vec<usize>,
}

impl<'g> Searcher<'g> {
    fn new(g: &'g FanoGraph) -> Self {
        Searcher {
            g,
            best_path: Vec::new(),
            best_leaf: None,
            best_encoding: None,
            generators: Vec::new(),
            prefix: Vec::new(),
        }
    }

    fn run(&mut self, mut p: Partition) {
        let inv = refine(self.g, &mut p);
        self.descend(p, inv, 0);
    }

    /// Compares this node's invariant against the best path; on a
    /// strictly smaller invariant the node starts a new best path.
    /// Returns false if the node is dominated and must be pruned.
    fn admit(&mut self, depth: usize, inv: &[u32]) -> bool {
        match self.best_path.get(depth) {
            None => {
                self.best_path.push(inv.to_vec());
                true
            }
            Some(best) => match inv.cmp(&best[..].to_vec()) {
                Ordering::Greater => false,
                Ordering::Equal => true,
                Ordering::Less => {
                    self.best_path.truncate(depth);
                    self.best_path.push(inv.to_vec());
                    self.best_leaf = None;
                    self.best_encoding = None;
                    true
                }
            },
        }
    }

    fn descend(&mut self, p: Partition, inv: Vec<u32>, depth: usize) {
        if !self.admit(depth, &inv) {
            return;
        }
        if p.is_discrete() {
            let labeling: Vec<usize> = p.cells.iter().map(|c| c[0]).collect();
            let encoding = encode(self.g, &labeling);
            match &self.best_encoding {
                None => {
                    self.best_encoding = Some(encoding);
                    self.best_leaf = Some(labeling);
                }
                Some(best) => match encoding.cmp(best) {
                    Ordering::Less => {
                        self.best_encoding = Some(encoding);
                        self.best_leaf = Some(labeling);
                    }
                    Ordering::Equal => {
                        // Two labelings with the same encoding compose to
                        // an automorphism of the input graph.
                        let best_leaf = self.best_leaf.as_ref().unwrap();
                        let aut = compose(&labeling, &inverse(best_leaf));
                        if aut.iter().enumerate().any(|(i, &x)| i != x)
                            && verify_automorphism(self.g, &aut)
                        {
                            self.generators.push(aut);
                        }
                    }
                    Ordering::Greater => {}
                },
            }
            return;
        }
        let target = p.target_cell().expect("non-discrete partition has a splittable cell");
        let candidates: Vec<usize> = p.cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &candidates {
            if self.in_explored_orbit(v, &explored, &candidates) {
                continue;
            }
            explored.push(v);
            let mut child = p.individualize(v);
            let child_inv = refine(self.g, &mut child);
            self.prefix.push(v);
            self.descend(child, child_inv, depth + 1);
            self.prefix.pop();
        }
    }

    /// Orbit pruning: skip `v` if an automorphism discovered so far that
    /// fixes the individualized prefix pointwise maps an explored sibling
    /// onto it.
    fn in_explored_orbit(&self, v: usize, explored: &[usize], candidates: &[usize]) -> bool {
        if explored.is_empty() || self.generators.is_empty() {
            return false;
        }
        let fixing: Vec<&Vec<usize>> = self
            .generators
            .iter()
            .filter(|g| self.prefix.iter().all(|&x| g[x] == x))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        // Orbit of the explored set under the prefix-fixing generators,
        // restricted to the candidate cell.
        let mut orbit: Vec<usize> = explored.to_vec();
        let mut queue: Vec<usize> = explored.to_vec();
        while let Some(x) = queue.pop() {
            for g in &fixing {
                for y in [g[x], inverse(g)[x]] {
                    if candidates.contains(&y) && !orbit.contains(&y) {
                        orbit.push(y);
                        queue.push(y);
                    }
                }
            }
        }
        orbit.contains(&v)
    }
}

fn verify_automorphism(g: &FanoGraph, perm: &[usize]) -> bool {
    let n = g.n();
    for i in 0..n {
        for j in i + 1..n {
            if g.mult(perm[i], perm[j]) != g.mult(i, j) {
                return false;
            }
        }
    }
    true
}
