//! Irreducible ADE root-lattice components: standard Gram matrices,
//! discriminant-class arithmetic, and minimal-norm class representatives.

use lattice_core::mat::{qmat_from_imat, qmat_inverse};
use lattice_core::{IMat, QVec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootKind {
    A(usize),
    D(usize),
    E(usize),
}

impl RootKind {
    pub fn rank(&self) -> usize {
        match *self {
            RootKind::A(n) | RootKind::D(n) | RootKind::E(n) => n,
        }
    }

    /// Determinant of the standard Gram matrix: n+1 for A_n, 4 for D_n,
    /// 3/2/1 for E6/E7/E8.
    pub fn det(&self) -> i64 {
        match *self {
            RootKind::A(n) => (n + 1) as i64,
            RootKind::D(_) => 4,
            RootKind::E(6) => 3,
            RootKind::E(7) => 2,
            RootKind::E(8) => 1,
            RootKind::E(_) => unreachable!("only E6, E7, E8 exist"),
        }
    }

    pub fn num_roots(&self) -> usize {
        match *self {
            RootKind::A(n) => n * (n + 1),
            RootKind::D(n) => 2 * n * (n - 1),
            RootKind::E(6) => 72,
            RootKind::E(7) => 126,
            RootKind::E(8) => 240,
            RootKind::E(_) => unreachable!(),
        }
    }

    /// Number of discriminant classes (order of the glue digit group).
    pub fn num_classes(&self) -> u8 {
        match *self {
            RootKind::A(n) => (n + 1) as u8,
            RootKind::D(_) => 4,
            RootKind::E(6) => 3,
            RootKind::E(7) => 2,
            RootKind::E(8) => 1,
            RootKind::E(_) => unreachable!(),
        }
    }

    /// Coxeter-diagram Gram matrix. Node order: A_n and E_n use a chain
    /// 0..n-1 with the E-branch node last attached to node 2; D_n uses a
    /// chain 0..n-3 with both fork nodes attached to node n-3.
    pub fn gram(&self) -> IMat {
        let n = self.rank();
        let mut g = vec![vec![0i64; n]; n];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = 2;
        }
        let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize| {
            g[i][j] = -1;
            g[j][i] = -1;
        };
        match *self {
            RootKind::A(_) => {
                for i in 0..n - 1 {
                    link(&mut g, i, i + 1);
                }
            }
            RootKind::D(n) => {
                for i in 0..n - 3 {
                    link(&mut g, i, i + 1);
                }
                link(&mut g, n - 3, n - 2);
                link(&mut g, n - 3, n - 1);
            }
            RootKind::E(n) => {
                // Chain 0-1-...-(n-2), branch node n-1 attached to node 2.
                for i in 0..n - 2 {
                    link(&mut g, i, i + 1);
                }
                link(&mut g, 2, n - 1);
            }
        }
        IMat::from_i64_rows(&g)
    }

    /// Addition in the glue digit group: Z/(n+1) for A_n, Z/4 for D_odd
    /// (generated by a spinor), (Z/2)^2 for D_even (XOR on the two-bit
    /// labels 0/s/v/c = 0/1/2/3), Z/3, Z/2, 0 for E6/E7/E8.
    pub fn class_add(&self, a: u8, b: u8) -> u8 {
        match *self {
            RootKind::A(n) => ((a as usize + b as usize) % (n + 1)) as u8,
            RootKind::D(n) if n % 2 == 1 => (a + b) % 4,
            RootKind::D(_) => a ^ b,
            RootKind::E(6) => (a + b) % 3,
            RootKind::E(7) => (a + b) % 2,
            RootKind::E(8) => 0,
            RootKind::E(_) => unreachable!(),
        }
    }

    pub fn class_neg(&self, a: u8) -> u8 {
        match *self {
            RootKind::A(n) => ((n + 1 - a as usize) % (n + 1)) as u8,
            RootKind::D(n) if n % 2 == 1 => (4 - a) % 4,
            RootKind::D(_) => a,
            RootKind::E(6) => (3 - a) % 3,
            RootKind::E(7) => a,
            RootKind::E(8) => 0,
            RootKind::E(_) => unreachable!(),
        }
    }

    /// Minimal norm among dual vectors in the given class: the standard
    /// values j(n+1-j)/(n+1) for A_n; 1 (vector) and n/4 (spinors) for D_n;
    /// 4/3, 3/2 for the E6/E7 minuscule classes.
    pub fn class_min_norm(&self, class: u8) -> BigRational {
        let rat = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
        if class == 0 {
            return BigRational::zero();
        }
        match *self {
            RootKind::A(n) => {
                let j = class as i64;
                let m = (n + 1) as i64;
                rat(j * (m - j), m)
            }
            RootKind::D(n) => match class {
                2 => BigRational::one(),
                1 | 3 => rat(n as i64, 4),
                _ => unreachable!("D_n classes are 0..3"),
            },
            RootKind::E(6) => rat(4, 3),
            RootKind::E(7) => rat(3, 2),
            RootKind::E(8) => unreachable!("E8 has a single class"),
            RootKind::E(_) => unreachable!(),
        }
    }

    /// A minimal-norm representative of the class in root-basis coordinates
    /// (a fundamental weight, or its negative for the second E6 class).
    pub fn class_rep(&self, class: u8) -> QVec {
        let n = self.rank();
        if class == 0 {
            return vec![BigRational::zero(); n];
        }
        let ginv = qmat_inverse(&qmat_from_imat(&self.gram())).expect("root gram is invertible");
        let weight = |idx: usize| -> QVec { ginv[idx].clone() };
        match *self {
            RootKind::A(_) => weight(class as usize - 1),
            RootKind::D(n) => match class {
                2 => weight(0),
                1 => weight(n - 2),
                3 => weight(n - 1),
                _ => unreachable!(),
            },
            RootKind::E(6) => {
                // Chain-end node 0 carries one minuscule weight w with
                // w^2 = 4/3; the opposite class is represented by -w.
                let w = weight(0);
                match class {
                    1 => w,
                    2 => w.iter().map(|x| -x.clone()).collect(),
                    _ => unreachable!(),
                }
            }
            RootKind::E(7) => {
                // The minuscule weight (norm 3/2) sits at the far chain end.
                weight(n - 2)
            }
            RootKind::E(8) => unreachable!(),
            RootKind::E(_) => unreachable!(),
        }
    }
}

/// One irreducible component of a Niemeier root system, with its offset
/// into the 24 ambient root-basis coordinates.
#[derive(Debug, Clone)]
pub struct RootSystemComponent {
    pub kind: RootKind,
    pub offset: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_core::IntegerLattice;
    use num_traits::ToPrimitive;

    #[test]
    fn gram_determinants_match_kind() {
        let kinds = [
            RootKind::A(1),
            RootKind::A(2),
            RootKind::A(17),
            RootKind::D(4),
            RootKind::D(9),
            RootKind::D(24),
            RootKind::E(6),
            RootKind::E(7),
            RootKind::E(8),
        ];
        for k in kinds {
            let l = IntegerLattice::new(k.gram()).unwrap();
            assert_eq!(l.det(), &BigInt::from(k.det()), "{k:?}");
            assert!(l.is_positive_definite(), "{k:?}");
        }
    }

    #[test]
    fn root_counts_by_enumeration() {
        for k in [RootKind::A(3), RootKind::D(4), RootKind::D(5), RootKind::E(6)] {
            let l = IntegerLattice::new(k.gram()).unwrap();
            let roots = l.enumerate_vectors(2, &[]).unwrap();
            assert_eq!(roots.len(), k.num_roots(), "{k:?}");
        }
    }

    #[test]
    fn class_reps_are_consistent_with_digit_arithmetic() {
        // rep(a) + rep(b) - rep(a+b) must be integral (a root-lattice
        // vector) for every pair of digits.
        for k in [
            RootKind::A(2),
            RootKind::A(5),
            RootKind::A(8),
            RootKind::D(4),
            RootKind::D(5),
            RootKind::D(6),
            RootKind::D(9),
            RootKind::E(6),
            RootKind::E(7),
        ] {
            let m = k.num_classes();
            for a in 0..m {
                for b in 0..m {
                    let c = k.class_add(a, b);
                    let ra = k.class_rep(a);
                    let rb = k.class_rep(b);
                    let rc = k.class_rep(c);
                    for i in 0..k.rank() {
                        let diff = &ra[i] + &rb[i] - &rc[i];
                        assert!(diff.is_integer(), "{k:?} {a}+{b}={c} coord {i}");
                    }
                }
                let na = k.class_neg(a);
                let ra = k.class_rep(a);
                let rna = k.class_rep(na);
                for i in 0..k.rank() {
                    let diff = &ra[i] + &rna[i];
                    assert!(diff.is_integer(), "{k:?} -{a}={na} coord {i}");
                }
            }
        }
    }

    #[test]
    fn class_min_norms_match_representatives_and_are_minimal() {
        for k in [
            RootKind::A(2),
            RootKind::A(3),
            RootKind::A(5),
            RootKind::D(4),
            RootKind::D(5),
            RootKind::D(6),
            RootKind::E(6),
            RootKind::E(7),
        ] {
            let l = IntegerLattice::new(k.gram()).unwrap();
            for class in 1..k.num_classes() {
                let rep = k.class_rep(class);
                let norm = l.inner_q(&rep, &rep);
                assert_eq!(norm, k.class_min_norm(class), "{k:?} class {class} rep norm");
                // Minimality: no coset vector rep + x, x in the root
                // lattice, has smaller norm. Scan a crude box via the
                // bound |x| <= |rep| + sqrt(norm).
                let scaled: Vec<BigRational> = rep.clone();
                let mut best = norm.clone();
                let bound = 2i64;
                let n = k.rank();
                let mut x = vec![-bound; n];
                loop {
                    let cand: QVec = (0..n)
                        .map(|i| &scaled[i] + BigRational::from(BigInt::from(x[i])))
                        .collect();
                    let v = l.inner_q(&cand, &cand);
                    if v < best && !v.is_zero() {
                        best = v;
                    }
                    let mut i = 0;
                    loop {
                        if i == n {
                            break;
                        }
                        x[i] += 1;
                        if x[i] <= bound {
                            break;
                        }
                        x[i] = -bound;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                }
                assert_eq!(best, k.class_min_norm(class), "{k:?} class {class} minimality");
                assert!(best.to_f64().unwrap() > 0.0);
            }
        }
    }
}
