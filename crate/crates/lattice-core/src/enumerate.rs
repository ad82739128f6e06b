//! Short-vector enumeration in definite lattices.
//!
//! The pipeline is: exact LLL reduction on the Gram matrix (rational
//! arithmetic, Cohen's Gram-only variant), then Fincke–Pohst backtracking over
//! an ellipsoid.  Floating point is used only to compute *padded* interval
//! bounds during the tree walk; every candidate leaf is accepted or rejected
//! by an exact integer computation, so the output is exact provided the
//! padding covers the (tiny, bounded) floating-point drift.  Input magnitudes
//! are validated up front so that the exact leaf check cannot overflow `i128`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::mat::IMat;
use crate::LatticeError;

/// Safety margin added to every floating-point pruning bound.
const PAD: f64 = 1e-6;

/// Exact LLL reduction (delta = 99/100) of a positive definite integer Gram
/// matrix. Returns `(u, g')` with `u` unimodular and `g' = u g u^T` reduced.
pub fn lll_reduce(gram: &IMat) -> Result<(IMat, IMat), LatticeError> {
    let n = gram.rows;
    assert!(gram.is_symmetric(), "LLL input must be symmetric");
    if n == 0 {
        return Ok((IMat::identity(0), gram.clone()));
    }
    let delta = BigRational::new(BigInt::from(99), BigInt::from(100));
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));

    let mut u = IMat::identity(n);
    let mut cg = gram.clone(); // current Gram matrix u g u^T
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut b = vec![BigRational::zero(); n];

    // Row operation u[k] -= q*u[l] mirrored on the Gram matrix.
    fn row_op(u: &mut IMat, cg: &mut IMat, k: usize, l: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let n = u.rows;
        for j in 0..u.cols {
            let s = q * &u[(l, j)];
            u[(k, j)] -= s;
        }
        for j in 0..n {
            let s = q * &cg[(l, j)];
            cg[(k, j)] -= s;
        }
        for j in 0..n {
            let s = q * &cg[(j, l)];
            cg[(j, k)] -= s;
        }
    }
    fn swap_rows(u: &mut IMat, cg: &mut IMat, k: usize) {
        let n = u.rows;
        for j in 0..u.cols {
            let (a, b) = (u[(k - 1, j)].clone(), u[(k, j)].clone());
            u[(k - 1, j)] = b;
            u[(k, j)] = a;
        }
        for j in 0..n {
            let (a, b) = (cg[(k - 1, j)].clone(), cg[(k, j)].clone());
            cg[(k - 1, j)] = b;
            cg[(k, j)] = a;
        }
        for j in 0..n {
            let (a, b) = (cg[(j, k - 1)].clone(), cg[(j, k)].clone());
            cg[(j, k - 1)] = b;
            cg[(j, k)] = a;
        }
    }

    // Gram–Schmidt data for row k from the current Gram matrix.
    let gs_row = |cg: &IMat, mu: &mut Vec<Vec<BigRational>>, b: &mut Vec<BigRational>, k: usize| -> Result<(), LatticeError> {
        for j in 0..k {
            let mut t = BigRational::from(cg[(k, j)].clone());
            for i in 0..j {
                let s = &mu[j][i] * &mu[k][i] * &b[i];
                t -= s;
            }
            if b[j].is_zero() {
                return Err(LatticeError::Degenerate);
            }
            mu[k][j] = t / b[j].clone();
        }
        let mut t = BigRational::from(cg[(k, k)].clone());
        for i in 0..k {
            let s = &mu[k][i] * &mu[k][i] * &b[i];
            t -= s;
        }
        if !t.is_positive() {
            return Err(LatticeError::NotDefinite);
        }
        b[k] = t;
        Ok(())
    };

    b[0] = BigRational::from(cg[(0, 0)].clone());
    if !b[0].is_positive() {
        return Err(LatticeError::NotDefinite);
    }
    let mut k = 1usize;
    let mut kmax = 0usize;
    while k < n {
        if k > kmax {
            kmax = k;
            gs_row(&cg, &mut mu, &mut b, k)?;
        }
        // RED(k, k-1)
        let red = |u: &mut IMat,
                   cg: &mut IMat,
                   mu: &mut Vec<Vec<BigRational>>,
                   k: usize,
                   l: usize| {
            if mu[k][l].abs() > half {
                let q = (&mu[k][l] + &half).floor().to_integer();
                row_op(u, cg, k, l, &q);
                let qq = BigRational::from(q);
                for i in 0..l {
                    let s = &qq * &mu[l][i];
                    mu[k][i] -= s;
                }
                mu[k][l] -= qq;
            }
        };
        red(&mut u, &mut cg, &mut mu, k, k - 1);
        let lhs = b[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b[k - 1];
        if lhs < rhs {
            // SWAP(k)
            swap_rows(&mut u, &mut cg, k);
            for j in 0..k.saturating_sub(1) {
                let (a, c) = (mu[k - 1][j].clone(), mu[k][j].clone());
                mu[k - 1][j] = c;
                mu[k][j] = a;
            }
            let m = mu[k][k - 1].clone();
            let bnew = &b[k] + &m * &m * &b[k - 1];
            mu[k][k - 1] = &m * &b[k - 1] / &bnew;
            b[k] = &b[k - 1] * &b[k] / &bnew;
            b[k - 1] = bnew;
            for i in k + 1..=kmax {
                let t = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &m * &t;
                mu[i][k - 1] = &t + &mu[k][k - 1] * &mu[i][k];
            }
            k = k.max(2) - 1;
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                red(&mut u, &mut cg, &mut mu, k, l);
            }
            k += 1;
        }
    }
    Ok((u, cg))
}

/// All `x` in `Z^n` with `(x - center)^T gram (x - center) = target`, for a
/// positive definite integer `gram`. Output sorted lexicographically.
pub fn enumerate_ellipsoid(
    gram: &IMat,
    center: &[BigRational],
    target: &BigRational,
) -> Result<Vec<Vec<i64>>, LatticeError> {
    let n = gram.rows;
    assert_eq!(center.len(), n);
    if n == 0 {
        return Ok(if target.is_zero() { vec![vec![]] } else { vec![] });
    }
    if target.is_negative() {
        return Ok(vec![]);
    }

    // Common denominator of the center and integrality filter on the target.
    let mut den = BigInt::one();
    for c in center {
        den = den.lcm(c.denom());
    }
    let scaled_target = target * BigRational::from(&den * &den);
    if !scaled_target.denom().is_one() {
        return Ok(vec![]); // no integer point can attain a non-integral value
    }
    let scaled_target = scaled_target.to_integer();

    // LLL-reduce; work in the reduced coordinates y with x = y * u.
    let (u, g2) = lll_reduce(gram)?;
    let uinv = invert_unimodular(&u);
    // center' = center * u^{-1}; denominators unchanged (u^{-1} is integral).
    let mut c2 = vec![BigRational::zero(); n];
    for j in 0..n {
        let mut s = BigRational::zero();
        for i in 0..n {
            s += &center[i] * BigRational::from(uinv[(i, j)].clone());
        }
        c2[j] = s;
    }

    // Magnitude guards so the exact i128 leaf check cannot overflow.
    let g2_i64 = g2.to_i64_rows().ok_or(LatticeError::Overflow)?;
    let den_i64 = i64::try_from(&den).map_err(|_| LatticeError::Overflow)?;
    let max_g = g2_i64.iter().flatten().map(|v| v.abs()).max().unwrap_or(0);
    if max_g > 1 << 24 || den_i64 > 1 << 16 {
        return Err(LatticeError::Overflow);
    }

    // Exact rational Cholesky of the reduced Gram: q(y) = sum_i d[i] * w_i^2,
    // w_i = y_i + sum_{j>i} m[i][j] y_j.
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from(g2[(i, j)].clone())).collect())
        .collect();
    let mut d = vec![BigRational::zero(); n];
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        d[i] = a[i][i].clone();
        if !d[i].is_positive() {
            return Err(LatticeError::NotDefinite);
        }
        for j in i + 1..n {
            m[i][j] = &a[i][j] / &d[i];
        }
        for k in i + 1..n {
            for l in k..n {
                let s = &a[i][k] * &a[i][l] / &d[i];
                a[k][l] -= s;
                if l != k {
                    a[l][k] = a[k][l].clone();
                }
            }
        }
    }
    let df: Vec<f64> = d.iter().map(|v| v.to_f64().unwrap()).collect();
    let mf: Vec<Vec<f64>> = m
        .iter()
        .map(|row| row.iter().map(|v| v.to_f64().unwrap()).collect())
        .collect();
    let cf: Vec<f64> = c2.iter().map(|v| v.to_f64().unwrap()).collect();
    let tf = target.to_f64().unwrap();

    // Scaled center numerator for the exact leaf check: z = den*y - cnum.
    let cnum: Vec<i64> = c2
        .iter()
        .map(|v| i64::try_from(&(v * BigRational::from(den.clone())).to_integer()))
        .collect::<Result<_, _>>()
        .map_err(|_| LatticeError::Overflow)?;
    let target_i128 = i128::try_from(&scaled_target).map_err(|_| LatticeError::Overflow)?;

    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut y = vec![0i64; n];
    // Backtracking from coordinate n-1 down to 0.
    struct Ctx<'a> {
        n: usize,
        df: &'a [f64],
        mf: &'a [Vec<f64>],
        cf: &'a [f64],
        g2: &'a [Vec<i64>],
        cnum: &'a [i64],
        den: i64,
        target: i128,
        pad: f64,
    }
    fn descend(ctx: &Ctx, level: isize, rem: f64, y: &mut [i64], out: &mut Vec<Vec<i64>>) {
        if level < 0 {
            // Exact check: (den*y - cnum)^T g2 (den*y - cnum) == target * den^2.
            let n = ctx.n;
            let mut val: i128 = 0;
            let z: Vec<i128> =
                (0..n).map(|i| ctx.den as i128 * y[i] as i128 - ctx.cnum[i] as i128).collect();
            for i in 0..n {
                if z[i] == 0 {
                    continue;
                }
                for j in 0..n {
                    val += z[i] * ctx.g2[i][j] as i128 * z[j];
                }
            }
            if val == ctx.target {
                out.push(y.to_vec());
            }
            return;
        }
        let i = level as usize;
        // w_i = (y_i - c_i) + sum_{j>i} m[i][j] (y_j - c_j)
        let mut off = -ctx.cf[i];
        for j in i + 1..ctx.n {
            off += ctx.mf[i][j] * (y[j] as f64 - ctx.cf[j]);
        }
        if rem < -ctx.pad {
            return;
        }
        let radius = ((rem + ctx.pad).max(0.0) / ctx.df[i]).sqrt();
        let lo = (-off - radius - ctx.pad).floor() as i64;
        let hi = (-off + radius + ctx.pad).ceil() as i64;
        for yi in lo..=hi {
            let w = yi as f64 + off;
            let used = ctx.df[i] * w * w;
            if used > rem + ctx.pad {
                continue;
            }
            y[i] = yi;
            descend(ctx, level - 1, rem - used, y, out);
        }
        y[i] = 0;
    }
    let scale = 1.0 + tf.abs() + max_g as f64;
    let ctx = Ctx {
        n,
        df: &df,
        mf: &mf,
        cf: &cf,
        g2: &g2_i64,
        cnum: &cnum,
        den: den_i64,
        target: target_i128,
        pad: PAD * scale,
    };
    descend(&ctx, n as isize - 1, tf, &mut y, &mut out);

    // Map back to original coordinates x = y * u and sort.
    let u_i64 = u.to_i64_rows().ok_or(LatticeError::Overflow)?;
    let mut res: Vec<Vec<i64>> = out
        .into_iter()
        .map(|yv| {
            (0..n)
                .map(|j| (0..n).map(|i| yv[i].checked_mul(u_i64[i][j]).unwrap()).sum())
                .collect()
        })
        .collect();
    res.sort();
    res.dedup();
    Ok(res)
}

/// Inverse of a unimodular integer matrix (exact, via adjugate-free Gauss on
/// rationals — small sizes only).
fn invert_unimodular(u: &IMat) -> IMat {
    use crate::mat::{qmat_from_imat, qmat_inverse};
    let inv = qmat_inverse(&qmat_from_imat(u)).expect("unimodular matrix is invertible");
    let n = u.rows;
    let mut out = IMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            assert!(inv[i][j].denom().is_one(), "matrix is not unimodular");
            out[(i, j)] = inv[i][j].numer().clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn im(rows: &[&[i64]]) -> IMat {
        IMat::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn lll_preserves_gram_class() {
        let g = im(&[&[10, 9], &[9, 10]]);
        let (u, g2) = lll_reduce(&g).unwrap();
        assert_eq!(u.mul(&g).mul(&u.transpose()), g2);
        assert_eq!(crate::mat::det(&g2), crate::mat::det(&g));
        // The reduced form of this lattice is diag-ish with short first vector.
        assert!(g2[(0, 0)] <= g[(0, 0)]);
    }

    #[test]
    fn a2_root_count() {
        let g = im(&[&[2, -1], &[-1, 2]]);
        let roots =
            enumerate_ellipsoid(&g, &[BigRational::zero(), BigRational::zero()], &BigRational::from_i64(2).unwrap())
                .unwrap();
        assert_eq!(roots.len(), 6);
    }

    #[test]
    fn shifted_count_matches_translation() {
        // Shifting the center by an integer vector translates the solutions.
        let g = im(&[&[2, 0], &[0, 4]]);
        let t = BigRational::from_i64(6).unwrap();
        let plain = enumerate_ellipsoid(&g, &[BigRational::zero(), BigRational::zero()], &t).unwrap();
        let c = vec![BigRational::from_i64(3).unwrap(), BigRational::from_i64(-2).unwrap()];
        let shifted = enumerate_ellipsoid(&g, &c, &t).unwrap();
        let translated: Vec<Vec<i64>> =
            plain.iter().map(|v| vec![v[0] + 3, v[1] - 2]).collect();
        let mut translated = translated;
        translated.sort();
        assert_eq!(shifted, translated);
    }

    #[test]
    fn half_integer_center() {
        // (x - 1/2)^2 * 2 = 1/2 has solutions x in {0, 1}.
        let g = im(&[&[2]]);
        let c = vec![BigRational::new(BigInt::from(1), BigInt::from(2))];
        let t = BigRational::new(BigInt::from(1), BigInt::from(2));
        let sol = enumerate_ellipsoid(&g, &c, &t).unwrap();
        assert_eq!(sol, vec![vec![0], vec![1]]);
    }

    #[test]
    fn zero_norm_gives_origin() {
        let g = im(&[&[2, 1], &[1, 2]]);
        let sol = enumerate_ellipsoid(&g, &[BigRational::zero(), BigRational::zero()], &BigRational::zero()).unwrap();
        assert_eq!(sol, vec![vec![0, 0]]);
    }
}
