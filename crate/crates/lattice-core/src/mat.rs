//! Dense exact matrices over `BigInt` / `BigRational`.
//!
//! Everything here is small (rank <= ~32) and correctness-critical, so the
//! implementations favor clarity over asymptotics: fraction-free Bareiss for
//! determinants, textbook Euclidean elimination for Hermite and Smith normal
//! forms (with transform tracking), and rational Gauss for inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row-major matrix of big integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IMat { rows: r, cols: c, data: rows.iter().flat_map(|row| row.iter().cloned()).collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        IMat::from_rows(
            &rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>(),
        )
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(i64::try_from(&self[(i, j)]).ok()?);
            }
            out.push(row);
        }
        Some(out)
    }

    pub fn transpose(&self) -> IMat {
        let mut t = IMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (x, y) = (self[(a, j)].clone(), self[(b, j)].clone());
            self[(a, j)] = y;
            self[(b, j)] = x;
        }
    }

    /// row[a] += k * row[b]
    fn add_row_mul(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = k * &self[(b, j)];
            self[(a, j)] += add;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of a row Hermite normal form computation: `u * a = h` with `u`
/// unimodular, `h` in row echelon form with positive pivots and entries above
/// each pivot reduced into `[0, pivot)`. Zero rows are collected at the bottom.
pub struct HnfResult {
    pub h: IMat,
    pub u: IMat,
    /// Column index of the pivot of each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

pub fn hnf(a: &IMat) -> HnfResult {
    let mut h = a.clone();
    let mut u = IMat::identity(a.rows);
    let mut pivots = Vec::new();
    let mut r = 0; // next row to place a pivot in
    for col in 0..h.cols {
        // Clear column `col` below row r using Euclidean elimination.
        loop {
            // Find the row >= r with the smallest nonzero |entry| in this column.
            let mut best: Option<usize> = None;
            for i in r..h.rows {
                if !h[(i, col)].is_zero()
                    && best.is_none_or(|b| h[(i, col)].abs() < h[(b, col)].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(r, b);
            u.swap_rows(r, b);
            let mut any = false;
            for i in r + 1..h.rows {
                if !h[(i, col)].is_zero() {
                    let q = -(&h[(i, col)] / &h[(r, col)]);
                    h.add_row_mul(i, r, &q);
                    u.add_row_mul(i, r, &q);
                    if !h[(i, col)].is_zero() {
                        any = true;
                    }
                }
            }
            if !any {
                // Pivot established.
                if h[(r, col)].is_negative() {
                    h.negate_row(r);
                    u.negate_row(r);
                }
                // Reduce entries above the pivot.
                for i in 0..r {
                    if !h[(i, col)].is_zero() {
                        let q = -h[(i, col)].div_floor(&h[(r, col)]);
                        h.add_row_mul(i, r, &q);
                        u.add_row_mul(i, r, &q);
                    }
                }
                pivots.push(col);
                r += 1;
                break;
            }
        }
        if r == h.rows {
            break;
        }
    }
    HnfResult { h, u, pivots }
}

/// Rank over Q.
pub fn rank(a: &IMat) -> usize {
    hnf(a).pivots.len()
}

/// Basis (rows, saturated) of the integer right kernel `{x : a * x = 0}`.
pub fn kernel(a: &IMat) -> IMat {
    // Left kernel of a^T: the rows of the HNF transform corresponding to the
    // zero rows of H form a basis of {x : x * a^T = 0} = {x : a * x = 0}.
    let t = a.transpose();
    let res = hnf(&t);
    let nz = res.pivots.len();
    let rows: Vec<Vec<BigInt>> = (nz..t.rows).map(|i| res.u.row(i).to_vec()).collect();
    if rows.is_empty() {
        IMat::zero(0, a.cols)
    } else {
        // Canonicalize the kernel basis itself.
        hnf(&IMat::from_rows(&rows)).h
    }
}

/// Smith normal form: returns `(d, u, v)` with `u * a * v = d` diagonal,
/// `d[i] | d[i+1]`, all diagonal entries non-negative, `u`, `v` unimodular.
pub fn snf(a: &IMat) -> (IMat, IMat, IMat) {
    let mut d = a.clone();
    let mut u = IMat::identity(a.rows);
    let mut v = IMat::identity(a.cols);
    let n = d.rows.min(d.cols);

    // Column operations act on v from the right; implement them on d^T logic inline.
    fn swap_cols(m: &mut IMat, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..m.rows {
            let (x, y) = (m[(i, a)].clone(), m[(i, b)].clone());
            m[(i, a)] = y;
            m[(i, b)] = x;
        }
    }
    fn add_col_mul(m: &mut IMat, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..m.rows {
            let add = k * &m[(i, b)];
            m[(i, a)] += add;
        }
    }
    fn negate_col(m: &mut IMat, a: usize) {
        for i in 0..m.rows {
            let x = -m[(i, a)].clone();
            m[(i, a)] = x;
        }
    }

    for t in 0..n {
        loop {
            // Find the smallest nonzero |entry| in the remaining block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if !d[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            swap_cols(&mut d, t, bj);
            swap_cols(&mut v, t, bj);
            let mut clean = true;
            for i in t + 1..d.rows {
                if !d[(i, t)].is_zero() {
                    let q = -(&d[(i, t)] / &d[(t, t)]);
                    d.add_row_mul(i, t, &q);
                    u.add_row_mul(i, t, &q);
                    if !d[(i, t)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..d.cols {
                if !d[(t, j)].is_zero() {
                    let q = -(&d[(t, j)] / &d[(t, t)]);
                    add_col_mul(&mut d, j, t, &q);
                    add_col_mul(&mut v, j, t, &q);
                    if !d[(t, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility d[t][t] | d[i][j] for the rest of the block.
            let mut bad: Option<usize> = None;
            'outer: for i in t + 1..d.rows {
                for j in t + 1..d.cols {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            if let Some(i) = bad {
                // Add the offending row to row t and restart the pivot step.
                d.add_row_mul(t, i, &BigInt::one());
                u.add_row_mul(t, i, &BigInt::one());
                continue;
            }
            if d[(t, t)].is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            break;
        }
    }
    // Fix signs of any trailing diagonal entries (all should be set already).
    for t in 0..n {
        if d[(t, t)].is_negative() {
            negate_col(&mut d, t);
            negate_col(&mut v, t);
        }
    }
    (d, u, v)
}

/// Exact determinant (fraction-free Bareiss).
pub fn det(a: &IMat) -> BigInt {
    assert_eq!(a.rows, a.cols, "determinant of non-square matrix");
    let n = a.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            // Find a row to swap in.
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                m[(i, j)] = &num / &prev;
            }
            m[(i, k)] = BigInt::zero();
        }
        prev = m[(k, k)].clone();
    }
    let d = m[(n - 1, n - 1)].clone();
    if sign < 0 { -d } else { d }
}

// ---------------------------------------------------------------------------
// Rational matrices.
// ---------------------------------------------------------------------------

pub type QVec = Vec<BigRational>;

/// Rational matrix as rows.
pub type QMat = Vec<QVec>;

pub fn qmat_from_imat(a: &IMat) -> QMat {
    (0..a.rows)
        .map(|i| (0..a.cols).map(|j| BigRational::from(a[(i, j)].clone())).collect())
        .collect()
}

pub fn qmat_identity(n: usize) -> QMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect()
}

pub fn qmat_mul(a: &QMat, b: &QMat) -> QMat {
    let (r, k) = (a.len(), if a.is_empty() { 0 } else { a[0].len() });
    let c = if b.is_empty() { 0 } else { b[0].len() };
    assert_eq!(k, b.len(), "dimension mismatch");
    let mut out = vec![vec![BigRational::zero(); c]; r];
    for i in 0..r {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..c {
                let p = &a[i][t] * &b[t][j];
                out[i][j] += p;
            }
        }
    }
    out
}

/// Rational inverse by Gauss-Jordan. Returns `None` if singular.
pub fn qmat_inverse(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let mut m: QMat = a.iter().map(|row| {
        assert_eq!(row.len(), n, "inverse of non-square matrix");
        row.clone()
    }).collect();
    let mut inv = qmat_identity(n);
    for col in 0..n {
        let piv = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] /= p.clone();
            inv[col][j] /= p.clone();
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..n {
                    let s = &f * &m[col][j];
                    m[i][j] -= s;
                    let s = &f * &inv[col][j];
                    inv[i][j] -= s;
                }
            }
        }
    }
    Some(inv)
}

/// Signature of a nondegenerate symmetric rational matrix by congruence
/// diagonalization: returns (positive count, negative count).
pub fn signature(a: &QMat) -> (usize, usize) {
    let n = a.len();
    let mut m: QMat = a.to_vec();
    let mut pos = 0;
    let mut neg = 0;
    let mut done = vec![false; n];
    for _ in 0..n {
        // Pick an unprocessed index with nonzero diagonal, fabricating one if
        // necessary from a nonzero off-diagonal entry.
        let mut pick = (0..n).find(|&i| !done[i] && !m[i][i].is_zero());
        if pick.is_none() {
            let mut fixed = false;
            'search: for i in 0..n {
                if done[i] {
                    continue;
                }
                for j in 0..n {
                    if !done[j] && j != i && !m[i][j].is_zero() {
                        // row/col i += row/col j makes the (i,i) entry 2*m[i][j].
                        for k in 0..n {
                            let add = m[j][k].clone();
                            m[i][k] += add;
                        }
                        for k in 0..n {
                            let add = m[k][j].clone();
                            m[k][i] += add;
                        }
                        fixed = true;
                        break 'search;
                    }
                }
            }
            if !fixed {
                break; // remaining block is zero (degenerate input)
            }
            pick = (0..n).find(|&i| !done[i] && !m[i][i].is_zero());
        }
        let Some(p) = pick else { break };
        if m[p][p].is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        // Clear row/column p against the others.
        for i in 0..n {
            if i != p && !done[i] && !m[i][p].is_zero() {
                let f = &m[i][p] / &m[p][p];
                for k in 0..n {
                    let s = &f * &m[p][k];
                    m[i][k] -= s;
                }
                for k in 0..n {
                    let s = &f * &m[k][p];
                    m[k][i] -= s;
                }
            }
        }
        done[p] = true;
    }
    (pos, neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IMat {
        IMat::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn hnf_simple() {
        let a = im(&[&[2, 3, 6, 2], &[5, 6, 1, 6], &[8, 3, 1, 1]]);
        let res = hnf(&a);
        assert_eq!(res.u.mul(&a), res.h);
        assert_eq!(res.pivots.len(), 3);
        // Transform is unimodular.
        assert_eq!(det(&res.u).abs(), BigInt::one());
    }

    #[test]
    fn snf_divisibility() {
        let a = im(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let (d, u, v) = snf(&a);
        assert_eq!(u.mul(&a).mul(&v), d);
        let d0 = &d[(0, 0)];
        let d1 = &d[(1, 1)];
        let d2 = &d[(2, 2)];
        assert!((d1 % d0).is_zero() && (d2 % d1).is_zero());
        // |det| preserved: product of elementary divisors.
        assert_eq!(d0 * d1 * d2, det(&a).abs());
    }

    #[test]
    fn kernel_is_saturated() {
        let a = im(&[&[2, 4, 6]]);
        let k = kernel(&a);
        assert_eq!(k.rows, 2);
        // 2x+4y+6z=0 over Q intersected with Z^3: contains (1,1,-1) and (3,0,-1).
        for i in 0..k.rows {
            let s: BigInt = (0..3).map(|j| &a[(0, j)] * &k[(i, j)]).sum();
            assert!(s.is_zero());
        }
        // (2,1,0) scaled: (−2,1,0) is in the kernel; saturation means the HNF
        // basis generates it.
        let (d, _, _) = snf(&k);
        assert_eq!(d[(0, 0)], BigInt::one());
        assert_eq!(d[(1, 1)], BigInt::one());
    }

    #[test]
    fn det_matches_laplace_small() {
        let a = im(&[&[2, -1], &[-1, 2]]);
        assert_eq!(det(&a), BigInt::from(3));
        let b = im(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&b), BigInt::from(-1));
    }

    #[test]
    fn signature_of_hyperbolic_plane() {
        let u = qmat_from_imat(&im(&[&[0, 1], &[1, 0]]));
        assert_eq!(signature(&u), (1, 1));
        let a2 = qmat_from_imat(&im(&[&[2, -1], &[-1, 2]]));
        assert_eq!(signature(&a2), (2, 0));
    }

    #[test]
    fn qmat_inverse_roundtrip() {
        let a = qmat_from_imat(&im(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]));
        let inv = qmat_inverse(&a).unwrap();
        assert_eq!(qmat_mul(&a, &inv), qmat_identity(3));
    }
}
