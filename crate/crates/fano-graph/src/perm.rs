//! Permutation-group order via the Schreier–Sims algorithm with explicit
//! transversals and fixed-point verification of the stabilizer chain.

use num_bigint::BigUint;
use num_traits::One;

pub(crate) fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a ∘ b)(x) = a(b(x))
    b.iter().map(|&x| a[x]).collect()
}

pub(crate) fn inverse(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn is_identity(a: &[usize]) -> bool {
    a.iter().enumerate().all(|(i, &x)| i == x)
}

/// Stabilizer chain: `strong[i]` generates the pointwise stabilizer of
/// `base[..i]` within the group.
struct Chain {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Vec<Vec<usize>>>,
}

/// Orbit of `point` under `gens`, with coset representatives mapping
/// `point` to each orbit element.
fn orbit_transversal(
    degree: usize,
    point: usize,
    gens: &[Vec<usize>],
) -> Vec<Option<Vec<usize>>> {
    let mut transversal: Vec<Option<Vec<usize>>> = vec![None; degree];
    transversal[point] = Some((0..degree).collect());
    let mut queue = vec![point];
    while let Some(p) = queue.pop() {
        let rep = transversal[p].clone().unwrap();
        for g in gens {
            let q = g[p];
            if transversal[q].is_none() {
                transversal[q] = Some(compose(g, &rep));
                queue.push(q);
            }
        }
    }
    transversal
}

impl Chain {
    fn new(degree: usize) -> Self {
        Chain { degree, base: Vec::new(), strong: Vec::new() }
    }

    /// Records `g` as a strong generator at levels `from..=j`, where `j`
    /// is the first base index `g` moves; extends the base if `g` fixes
    /// every current base point.
    fn insert(&mut self, g: Vec<usize>, from: usize) {
        if is_identity(&g) {
            return;
        }
        let j = match (from..self.base.len()).find(|&k| g[self.base[k]] != self.base[k]) {
            Some(k) => k,
            None => {
                let b = (0..self.degree).find(|&i| g[i] != i).unwrap();
                self.base.push(b);
                self.strong.push(Vec::new());
                self.base.len() - 1
            }
        };
        for k in from..=j {
            self.strong[k].push(g.clone());
        }
    }

    /// Sifts `g` through levels `from..`; returns the level at which a
    /// nontrivial residue gets stuck together with that residue, or None
    /// if `g` factors completely through the current transversals.
    fn sift(&self, g: Vec<usize>, from: usize) -> Option<(usize, Vec<usize>)> {
        let mut residue = g;
        for k in from..self.base.len() {
            if is_identity(&residue) {
                return None;
            }
            let transversal = orbit_transversal(self.degree, self.base[k], &self.strong[k]);
            match &transversal[residue[self.base[k]]] {
                Some(rep) => residue = compose(&inverse(rep), &residue),
                None => return Some((k, residue)),
            }
        }
        if is_identity(&residue) {
            None
        } else {
            Some((self.base.len(), residue))
        }
    }

    /// Schreier verification pass over one level: sifts every Schreier
    /// generator of (strong[i], base[i]) through the levels below and
    /// inserts the first stuck residue. Returns true if the chain grew.
    fn close_level(&mut self, i: usize) -> bool {
        let transversal = orbit_transversal(self.degree, self.base[i], &self.strong[i]);
        for rep in transversal.iter().flatten() {
            for g in self.strong[i].clone() {
                let gr = compose(&g, rep);
                let target = transversal[gr[self.base[i]]]
                    .as_ref()
                    .expect("orbit is closed under its generators");
                let s = compose(&inverse(target), &gr);
                if let Some((_, residue)) = self.sift(s, i + 1) {
                    self.insert(residue, i + 1);
                    return true;
                }
            }
        }
        false
    }

    fn order(&self) -> BigUint {
        let mut order = BigUint::one();
        for (i, &b) in self.base.iter().enumerate() {
            let orbit = orbit_transversal(self.degree, b, &self.strong[i])
                .iter()
                .filter(|t| t.is_some())
                .count();
            order *= BigUint::from(orbit);
        }
        order
    }
}

/// Order of the permutation group generated by `gens` on `degree` points.
pub fn group_order(degree: usize, gens: &[Vec<usize>]) -> BigUint {
    let mut chain = Chain::new(degree);
    for g in gens {
        assert_eq!(g.len(), degree, "generator degree mismatch");
        chain.insert(g.clone(), 0);
    }
    'closure: loop {
        for i in 0..chain.base.len() {
            if chain.close_level(i) {
                continue 'closure;
            }
        }
        return chain.order();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(degree: usize) -> Vec<usize> {
        (0..degree).map(|i| (i + 1) % degree).collect()
    }

    fn transposition(degree: usize, a: usize, b: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..degree).collect();
        p.swap(a, b);
        p
    }

    #[test]
    fn symmetric_group_order() {
        for n in 2..8usize {
            let gens = vec![cycle(n), transposition(n, 0, 1)];
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(group_order(n, &gens), BigUint::from(fact), "S_{n}");
        }
    }

    #[test]
    fn alternating_group_order() {
        // A_5 generated by (0 1 2) and (0 1 2 3 4).
        let three: Vec<usize> = vec![1, 2, 0, 3, 4];
        assert_eq!(group_order(5, &[three, cycle(5)]), BigUint::from(60u32));
    }

    #[test]
    fn cyclic_and_dihedral_orders() {
        let n = 12;
        assert_eq!(group_order(n, &[cycle(n)]), BigUint::from(12u32));
        let reflect: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        assert_eq!(group_order(n, &[cycle(n), reflect]), BigUint::from(24u32));
    }

    #[test]
    fn trivial_group() {
        assert_eq!(group_order(5, &[]), BigUint::one());
        let id: Vec<usize> = (0..5).collect();
        assert_eq!(group_order(5, &[id]), BigUint::one());
    }
}
