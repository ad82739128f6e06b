//! Even integer lattices, sublattices, and the operations the rest of the
//! workspace is built on: saturation, orthogonal complements, indices,
//! discriminant-group data, and norm/product-constrained enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::enumerate::enumerate_ellipsoid;
use crate::mat::{self, IMat, QMat, QVec};
use crate::LatticeError;

/// An even nondegenerate integer lattice given by its Gram matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerLattice {
    rank: usize,
    gram: IMat,
    signature: (usize, usize),
    det: BigInt,
}

/// A vector with rational coordinates in the basis of some lattice; integral
/// vectors have integer coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeVector {
    pub coords: QVec,
}

impl LatticeVector {
    pub fn from_i64(v: &[i64]) -> Self {
        LatticeVector { coords: v.iter().map(|&x| BigRational::from(BigInt::from(x))).collect() }
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.denom().is_one())
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        if !self.is_integral() {
            return None;
        }
        self.coords.iter().map(|c| i64::try_from(c.numer()).ok()).collect()
    }
}

/// A sublattice of `Z^ambient_rank` stored as a row Hermite normal form basis.
/// Equality of sublattices is literal equality of the HNF matrices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: IMat,
    primitive: bool,
}

impl Sublattice {
    /// Canonical form of the span of integer generator rows.
    pub fn from_generators(ambient_rank: usize, gens: &IMat) -> Sublattice {
        assert_eq!(gens.cols, ambient_rank);
        let res = mat::hnf(gens);
        let rows: Vec<Vec<BigInt>> =
            (0..res.pivots.len()).map(|i| res.h.row(i).to_vec()).collect();
        let basis =
            if rows.is_empty() { IMat::zero(0, ambient_rank) } else { IMat::from_rows(&rows) };
        let primitive = if basis.rows == 0 {
            true
        } else {
            let (d, _, _) = mat::snf(&basis);
            (0..basis.rows).all(|i| d[(i, i)].is_one())
        };
        Sublattice { ambient_rank, basis, primitive }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &IMat {
        &self.basis
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    /// Does the rational vector lie in the rational span of the sublattice?
    pub fn spans(&self, v: &QVec) -> bool {
        self.express(v).is_some()
    }

    /// Coefficients of `v` in the basis rows, if `v` lies in the rational span.
    pub fn express(&self, v: &QVec) -> Option<QVec> {
        assert_eq!(v.len(), self.ambient_rank);
        // Forward-substitute against the HNF pivots.
        let mut rem = v.clone();
        let mut coeffs = vec![BigRational::zero(); self.basis.rows];
        for i in 0..self.basis.rows {
            let piv = (0..self.ambient_rank)
                .find(|&j| !self.basis[(i, j)].is_zero())
                .expect("HNF basis rows are nonzero");
            let c = &rem[piv] / BigRational::from(self.basis[(i, piv)].clone());
            for j in 0..self.ambient_rank {
                let s = &c * BigRational::from(self.basis[(i, j)].clone());
                rem[j] -= s;
            }
            coeffs[i] = c;
        }
        if rem.iter().all(|x| x.is_zero()) { Some(coeffs) } else { None }
    }

    /// Does the integer vector lie in the sublattice itself (not just its span)?
    pub fn contains(&self, v: &[BigInt]) -> bool {
        let vq: QVec = v.iter().map(|x| BigRational::from(x.clone())).collect();
        match self.express(&vq) {
            Some(c) => c.iter().all(|x| x.denom().is_one()),
            None => false,
        }
    }

    /// Group-theoretic index `[self : sub]`; `None` means infinite
    /// (rank drop). Errors if `sub` is not contained in `self`.
    pub fn index_of(&self, sub: &Sublattice) -> Result<Option<BigInt>, LatticeError> {
        assert_eq!(self.ambient_rank, sub.ambient_rank);
        let mut coeff_rows: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..sub.basis.rows {
            let v: QVec = (0..self.ambient_rank)
                .map(|j| BigRational::from(sub.basis[(i, j)].clone()))
                .collect();
            let c = self.express(&v).ok_or(LatticeError::NotContained)?;
            if c.iter().any(|x| !x.denom().is_one()) {
                return Err(LatticeError::NotContained);
            }
            coeff_rows.push(c.into_iter().map(|x| x.numer().clone()).collect());
        }
        if sub.rank() < self.rank() {
            return Ok(None);
        }
        let c = IMat::from_rows(&coeff_rows);
        Ok(Some(mat::det(&c).abs()))
    }
}

/// Raw discriminant-group data of a lattice: cyclic generators with their
/// orders (Smith normal form divisors > 1), coordinates of the generators in
/// the lattice basis (rational), and the quadratic/bilinear values.
#[derive(Clone, Debug)]
pub struct DiscriminantData {
    /// Orders d_1 | d_2 | ... (all > 1).
    pub orders: Vec<BigInt>,
    /// Generator coordinates in the lattice basis (rows).
    pub gens: QMat,
    /// q(g_i) mod 2Z, normalized into [0, 2).
    pub q: QVec,
    /// b(g_i, g_j) mod Z, normalized into [0, 1).
    pub b: QMat,
}

/// Normalize a rational into `[0, m)` modulo `m`.
pub fn rat_mod(x: &BigRational, m: u32) -> BigRational {
    let m = BigRational::from(BigInt::from(m));
    let q = (x / &m).floor();
    x - q * m
}

impl IntegerLattice {
    pub fn new(gram: IMat) -> Result<Self, LatticeError> {
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        let rank = gram.rows;
        for i in 0..rank {
            if !gram[(i, i)].is_even() {
                return Err(LatticeError::NotEven);
            }
        }
        let det = mat::det(&gram);
        if det.is_zero() {
            return Err(LatticeError::Degenerate);
        }
        let signature = mat::signature(&mat::qmat_from_imat(&gram));
        debug_assert_eq!(signature.0 + signature.1, rank);
        Ok(IntegerLattice { rank, gram, signature, det })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, LatticeError> {
        IntegerLattice::new(IMat::from_i64_rows(rows))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &IMat {
        &self.gram
    }

    pub fn gram_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.gram.to_i64_rows()
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature.1 == 0
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature.0 == 0
    }

    pub fn is_definite(&self) -> bool {
        self.is_positive_definite() || self.is_negative_definite()
    }

    /// The lattice with the bilinear form negated (well-defined on even
    /// lattices; discriminant form becomes its negative).
    pub fn negate(&self) -> IntegerLattice {
        let mut g = IMat::zero(self.rank, self.rank);
        for i in 0..self.rank {
            for j in 0..self.rank {
                g[(i, j)] = -self.gram[(i, j)].clone();
            }
        }
        IntegerLattice::new(g).expect("negation preserves lattice axioms")
    }

    pub fn direct_sum(&self, other: &IntegerLattice) -> IntegerLattice {
        let n = self.rank + other.rank;
        let mut g = IMat::zero(n, n);
        for i in 0..self.rank {
            for j in 0..self.rank {
                g[(i, j)] = self.gram[(i, j)].clone();
            }
        }
        for i in 0..other.rank {
            for j in 0..other.rank {
                g[(self.rank + i, self.rank + j)] = other.gram[(i, j)].clone();
            }
        }
        IntegerLattice::new(g).expect("direct sum preserves lattice axioms")
    }

    pub fn inner_q(&self, u: &QVec, v: &QVec) -> BigRational {
        assert!(u.len() == self.rank && v.len() == self.rank);
        let mut s = BigRational::zero();
        for i in 0..self.rank {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if v[j].is_zero() {
                    continue;
                }
                s += &u[i] * BigRational::from(self.gram[(i, j)].clone()) * &v[j];
            }
        }
        s
    }

    pub fn inner_int(&self, u: &[i64], v: &[i64]) -> i128 {
        let g = self.gram_i64().expect("gram entries exceed i64");
        let mut s: i128 = 0;
        for i in 0..self.rank {
            if u[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += u[i] as i128 * g[i][j] as i128 * v[j] as i128;
            }
        }
        s
    }

    pub fn norm_int(&self, v: &[i64]) -> i128 {
        self.inner_int(v, v)
    }

    /// All integral vectors with the given norm satisfying every constraint
    /// `v . w_i = c_i`, sorted lexicographically by coordinates.
    pub fn enumerate_vectors(
        &self,
        norm: i64,
        constraints: &[(QVec, BigRational)],
    ) -> Result<Vec<Vec<i64>>, LatticeError> {
        let n = self.rank;
        let target = BigRational::from(BigInt::from(norm));
        if constraints.is_empty() {
            return if self.is_positive_definite() {
                enumerate_ellipsoid(&self.gram, &vec![BigRational::zero(); n], &target)
            } else if self.is_negative_definite() {
                enumerate_ellipsoid(&self.negate().gram, &vec![BigRational::zero(); n], &(-target))
            } else {
                Err(LatticeError::Unbounded)
            };
        }

        // Integer linear system rows: (G w_i) . x = c_i, denominators cleared.
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut rhs: Vec<BigInt> = Vec::new();
        for (w, c) in constraints {
            let gw: QVec = (0..n)
                .map(|j| {
                    let mut s = BigRational::zero();
                    for i in 0..n {
                        s += &w[i] * BigRational::from(self.gram[(i, j)].clone());
                    }
                    s
                })
                .collect();
            let mut den = c.denom().clone();
            for x in &gw {
                den = den.lcm(x.denom());
            }
            rows.push(gw.iter().map(|x| (x * BigRational::from(den.clone())).to_integer()).collect());
            rhs.push((c * BigRational::from(den.clone())).to_integer());
        }
        let a = IMat::from_rows(&rows);
        let Some((x0, kernel)) = solve_integer_system(&a, &rhs) else {
            return Ok(vec![]);
        };
        if kernel.rows == 0 {
            let xq: QVec = x0.iter().map(|x| BigRational::from(x.clone())).collect();
            return Ok(if self.inner_q(&xq, &xq) == target {
                vec![x0
                    .iter()
                    .map(|v| i64::try_from(v).map_err(|_| LatticeError::Overflow))
                    .collect::<Result<_, _>>()?]
            } else {
                vec![]
            });
        }

        // Restricted form on the kernel: gk = K G K^T.
        let gk = kernel.mul(&self.gram).mul(&kernel.transpose());
        let (pos, neg) = mat::signature(&mat::qmat_from_imat(&gk));
        if pos + neg < gk.rows {
            return Err(LatticeError::Degenerate);
        }
        let negate = if neg == 0 {
            false
        } else if pos == 0 {
            true
        } else {
            return Err(LatticeError::Unbounded);
        };

        // Complete the square: x = x0 + y K, center s = -gk^{-1} (K G x0).
        let x0q: QVec = x0.iter().map(|x| BigRational::from(x.clone())).collect();
        let kg = kernel.mul(&self.gram);
        let v: QVec = (0..kernel.rows)
            .map(|i| {
                let mut s = BigRational::zero();
                for j in 0..n {
                    s += BigRational::from(kg[(i, j)].clone()) * &x0q[j];
                }
                s
            })
            .collect();
        let gk_inv = mat::qmat_inverse(&mat::qmat_from_imat(&gk)).ok_or(LatticeError::Degenerate)?;
        let s: QVec = (0..kernel.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for j in 0..kernel.rows {
                    acc -= &gk_inv[i][j] * &v[j];
                }
                acc
            })
            .collect();
        // Residual target: norm - Q(x0) + s gk s^T (the completed square).
        let q_x0 = self.inner_q(&x0q, &x0q);
        let mut s_gk_s = BigRational::zero();
        for i in 0..kernel.rows {
            for j in 0..kernel.rows {
                s_gk_s += &s[i] * BigRational::from(gk[(i, j)].clone()) * &s[j];
            }
        }
        let t2 = &target - &q_x0 + &s_gk_s;
        // Enumerate (y - s') gk (y - s') = t2 with center s (note sign: we
        // defined s so that Q(x0 + yK) = (y - s) gk (y - s)^T + (target-part)).
        let (gk_enum, center, t_enum) = if negate {
            let mut neg_gk = IMat::zero(gk.rows, gk.rows);
            for i in 0..gk.rows {
                for j in 0..gk.rows {
                    neg_gk[(i, j)] = -gk[(i, j)].clone();
                }
            }
            (neg_gk, s.clone(), -t2)
        } else {
            (gk.clone(), s.clone(), t2)
        };
        let ys = enumerate_ellipsoid(&gk_enum, &center, &t_enum)?;
        let k_i64 = kernel.to_i64_rows().ok_or(LatticeError::Overflow)?;
        let x0_i64: Vec<i64> = x0
            .iter()
            .map(|v| i64::try_from(v).map_err(|_| LatticeError::Overflow))
            .collect::<Result<_, _>>()?;
        let mut out: Vec<Vec<i64>> = ys
            .into_iter()
            .map(|y| {
                (0..n)
                    .map(|j| {
                        let mut acc = x0_i64[j];
                        for (i, yi) in y.iter().enumerate() {
                            acc = acc.checked_add(yi.checked_mul(k_i64[i][j]).unwrap()).unwrap();
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// Primitive closure `(Q . gens) ∩ Z^rank` of rational generators.
    pub fn saturate(&self, gens: &[QVec]) -> Sublattice {
        // Clear denominators row-wise; saturation is insensitive to scaling.
        let rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| {
                let mut den = BigInt::one();
                for x in g {
                    den = den.lcm(x.denom());
                }
                g.iter().map(|x| (x * BigRational::from(den.clone())).to_integer()).collect()
            })
            .collect();
        let a = if rows.is_empty() {
            IMat::zero(0, self.rank)
        } else {
            IMat::from_rows(&rows)
        };
        // sat(rowspace A) = ker(ker(A)): kernels are always saturated.
        let k = mat::kernel(&a);
        let sat = mat::kernel(&k);
        Sublattice::from_generators(self.rank, &sat)
    }

    pub fn saturate_int(&self, gens: &[Vec<i64>]) -> Sublattice {
        let q: Vec<QVec> = gens
            .iter()
            .map(|g| g.iter().map(|&x| BigRational::from(BigInt::from(x))).collect())
            .collect();
        self.saturate(&q)
    }

    /// Primitive sublattice of everything orthogonal to `s`.
    pub fn orthogonal_complement(&self, s: &Sublattice) -> Sublattice {
        assert_eq!(s.ambient_rank, self.rank);
        let m = s.basis.mul(&self.gram);
        let k = mat::kernel(&m);
        Sublattice::from_generators(self.rank, &k)
    }

    /// The sublattice as an abstract lattice (Gram of its basis rows).
    pub fn restrict(&self, s: &Sublattice) -> Result<IntegerLattice, LatticeError> {
        let g = s.basis.mul(&self.gram).mul(&s.basis.transpose());
        IntegerLattice::new(g)
    }

    /// True iff the (definite) sublattice contains no vector of square +-2.
    pub fn is_root_free(&self, s: &Sublattice) -> Result<bool, LatticeError> {
        if s.rank() == 0 {
            return Ok(true);
        }
        let l = self.restrict(s)?;
        if !l.is_definite() {
            return Err(LatticeError::NotDefinite);
        }
        let norm = if l.is_positive_definite() { 2 } else { -2 };
        Ok(l.enumerate_vectors(norm, &[])?.is_empty())
    }

    /// Coordinates (in the lattice basis) of the dual basis: rows of G^{-1}.
    pub fn dual_basis(&self) -> QMat {
        mat::qmat_inverse(&mat::qmat_from_imat(&self.gram)).expect("nondegenerate by construction")
    }

    /// Discriminant group L∨/L with generator orders from Smith normal form.
    pub fn discriminant_data(&self) -> DiscriminantData {
        // Z^n / G Z^n ≅ ⊕ Z/d_i via SNF U G V = D; generators of L∨/L are
        // g_i = G^{-1} U^{-1} e_i (then d_i g_i = V e_i ∈ Z^n).
        let (d, u, _v) = mat::snf(&self.gram);
        let u_q = mat::qmat_from_imat(&u);
        let u_inv = mat::qmat_inverse(&u_q).expect("unimodular");
        let g_inv = self.dual_basis();
        let mut orders = Vec::new();
        let mut gens: QMat = Vec::new();
        for i in 0..self.rank {
            let di = d[(i, i)].clone();
            if di.is_one() {
                continue;
            }
            orders.push(di);
            // Column i of U^{-1}, then multiplied by G^{-1} on the left:
            // coords (as a row vector) are e_i^T (U^{-1})^T (G^{-1})^T; with
            // symmetric G this is the i-th row of (U^{-1})^T G^{-1} read off
            // column-wise. Compute directly: gen_j = sum_k G^{-1}[j][k] * U^{-1}[k][i].
            let gen: QVec = (0..self.rank)
                .map(|j| {
                    let mut s = BigRational::zero();
                    for k in 0..self.rank {
                        s += &g_inv[j][k] * &u_inv[k][i];
                    }
                    s
                })
                .collect();
            gens.push(gen);
        }
        let q: QVec = gens.iter().map(|g| rat_mod(&self.inner_q(g, g), 2)).collect();
        let b: QMat = gens
            .iter()
            .map(|gi| gens.iter().map(|gj| rat_mod(&self.inner_q(gi, gj), 1)).collect())
            .collect();
        DiscriminantData { orders, gens, q, b }
    }

    /// Canonical JSON serialization.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Repr {
            rank: usize,
            gram: Vec<Vec<i64>>,
        }
        serde_json::to_value(Repr {
            rank: self.rank,
            gram: self.gram_i64().expect("gram entries exceed i64 for serialization"),
        })
        .unwrap()
    }
}

/// Canonical JSON for a sublattice.
pub fn sublattice_to_json(s: &Sublattice) -> serde_json::Value {
    #[derive(Serialize)]
    struct Repr {
        basis: Vec<Vec<i64>>,
    }
    serde_json::to_value(Repr {
        basis: s.basis().to_i64_rows().expect("basis entries exceed i64 for serialization"),
    })
    .unwrap()
}

/// Solve `a x = rhs` over the integers. Returns a particular solution and a
/// (saturated, HNF) basis of the homogeneous kernel, or `None` if unsolvable.
pub fn solve_integer_system(a: &IMat, rhs: &[BigInt]) -> Option<(Vec<BigInt>, IMat)> {
    let n = a.cols; // unknowns
    let m = a.rows; // equations
    assert_eq!(rhs.len(), m);
    // Row-vector form: find xi with xi * a^T = rhs; HNF of a^T gives
    // W a^T = H with W unimodular; solve eta H = rhs by forward substitution
    // over the pivot rows, then xi = eta W.
    let t = a.transpose(); // n x m
    let res = mat::hnf(&t);
    let r = res.pivots.len();
    let mut c: Vec<BigInt> = rhs.to_vec();
    let mut eta = vec![BigInt::zero(); n];
    for i in 0..r {
        let p = res.pivots[i];
        let (q, rem) = c[p].div_rem(&res.h[(i, p)]);
        if !rem.is_zero() {
            return None;
        }
        eta[i] = q.clone();
        for j in 0..m {
            let s = &q * &res.h[(i, j)];
            c[j] -= s;
        }
    }
    if c.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let x0: Vec<BigInt> = (0..n)
        .map(|j| {
            let mut s = BigInt::zero();
            for i in 0..r {
                s += &eta[i] * &res.u[(i, j)];
            }
            s
        })
        .collect();
    let kernel_rows: Vec<Vec<BigInt>> = (r..n).map(|i| res.u.row(i).to_vec()).collect();
    let kernel = if kernel_rows.is_empty() {
        IMat::zero(0, n)
    } else {
        mat::hnf(&IMat::from_rows(&kernel_rows)).h
    };
    Some((x0, kernel))
}
