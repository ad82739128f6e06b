//! Finite quadratic form calculus on discriminant groups of even lattices.
//!
//! A finite quadratic form is a finite abelian group `F` (presented as a
//! direct sum of cyclic groups of prime-power order) together with a map
//! `q: F -> Q/2Z` whose polarization `b(x,y) = (q(x+y)-q(x)-q(y))/2` is a
//! nondegenerate symmetric pairing `F x F -> Q/Z`. This crate computes
//! p-parts, the Nikulin invariants (minimal generator count, determinant
//! class, parity at p=2), characteristic vectors, isotropic-subgroup
//! reduction, and the primitive-embedding existence tests used by the
//! conic-counting pipeline.

mod embed;
mod invariants;

pub use embed::{
    embeds_in_k3_lattice, embeds_in_niemeier, hyp_classes, K3Embedding, NiemeierVariant,
};
pub use invariants::{Block2, DetClass, EvenKind, PadicInvariants};

use lattice_core::mat::{self, IMat};
use lattice_core::{rat_mod, solve_integer_system, IntegerLattice, LatticeError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// An element of a finite quadratic form, as coefficients on the stored
/// generators (reduced modulo the generator orders).
pub type Element = Vec<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("generator orders must be >= 2 and fit in 31 bits")]
    BadOrder,
    #[error("bilinear matrix is not symmetric")]
    NotSymmetric,
    #[error("values incompatible with the generator orders")]
    BadTorsion,
    #[error("element is not 2-torsion")]
    NotTwoTorsion,
    #[error("element is not isotropic")]
    NotIsotropic,
    #[error("kappa is not a hyperelliptic class of the span")]
    NotInHyp,
    #[error("group too large for exhaustive enumeration")]
    TooLarge,
    #[error("quadratic form does not descend to the quotient")]
    IllDefined,
    #[error("lattice error: {0}")]
    Lattice(#[from] LatticeError),
    #[error("{0}")]
    Invalid(String),
}

/// A finite quadratic form in normalized presentation: generator orders are
/// prime powers sorted by (p, exponent); `q` holds the Q/2Z-values on the
/// generators (in `[0,2)`), `b` the Q/Z pairing (entries in `[0,1)`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteQuadraticForm {
    orders: Vec<i64>,
    q: Vec<BigRational>,
    b: Vec<Vec<BigRational>>,
}

fn big_to_res(x: &BigInt, m: i64) -> i64 {
    let r = x.mod_floor(&BigInt::from(m));
    r.to_i64().expect("residue fits i64")
}

/// Smallest prime factor decomposition of a positive integer.
fn factorize(mut n: i64) -> Vec<(i64, u32)> {
    let mut out = Vec::new();
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Modular inverse of `a` modulo `m` (gcd(a, m) = 1).
pub(crate) fn modinv(a: i64, m: i64) -> i64 {
    let (mut r0, mut r1) = (m as i128, a.rem_euclid(m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "not invertible");
    (t0.rem_euclid(m as i128)) as i64
}

/// Legendre symbol of `a` modulo an odd prime `p` (a coprime to p): +-1.
pub fn legendre(a: i64, p: i64) -> i64 {
    let mut base = a.rem_euclid(p) as i128;
    assert!(base != 0, "legendre of multiple of p");
    let mut exp = (p - 1) / 2;
    let mut acc: i128 = 1;
    let m = p as i128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// p-adic valuation of a positive integer.
pub fn valuation(n: &BigInt, p: i64) -> u32 {
    let mut v = 0;
    let mut m = n.abs();
    let pb = BigInt::from(p);
    while (&m % &pb).is_zero() && !m.is_zero() {
        m /= &pb;
        v += 1;
    }
    v
}

impl FiniteQuadraticForm {
    pub fn trivial() -> Self {
        FiniteQuadraticForm { orders: vec![], q: vec![], b: vec![] }
    }

    fn new_unchecked(orders: Vec<i64>, q: Vec<BigRational>, b: Vec<Vec<BigRational>>) -> Self {
        let q = q.iter().map(|x| rat_mod(x, 2)).collect();
        let b = b.iter().map(|r| r.iter().map(|x| rat_mod(x, 1)).collect()).collect();
        FiniteQuadraticForm { orders, q, b }
    }

    fn validate_values(orders: &[i64], q: &[BigRational], b: &[Vec<BigRational>]) -> Result<(), FormError> {
        let n = orders.len();
        if q.len() != n || b.len() != n || b.iter().any(|r| r.len() != n) {
            return Err(FormError::Invalid("dimension mismatch".into()));
        }
        for &d in orders {
            if d < 2 || d > i32::MAX as i64 {
                return Err(FormError::BadOrder);
            }
        }
        for i in 0..n {
            for j in 0..n {
                if b[i][j] != b[j][i] {
                    return Err(FormError::NotSymmetric);
                }
                // order_i * b(g_i, g_j) must vanish mod Z.
                let v = BigRational::from(BigInt::from(orders[i])) * &b[i][j];
                if !rat_mod(&v, 1).is_zero() {
                    return Err(FormError::BadTorsion);
                }
            }
            // q(g_i) must be consistent with the order: d*q in Z and d^2*q in 2Z.
            let d = BigRational::from(BigInt::from(orders[i]));
            if !rat_mod(&(&d * &q[i]), 1).is_zero()
                || !rat_mod(&(&d * &d * &q[i]), 2).is_zero()
            {
                return Err(FormError::BadTorsion);
            }
            // q(g_i) = b(g_i, g_i) mod Z.
            if rat_mod(&q[i], 1) != rat_mod(&b[i][i], 1) {
                return Err(FormError::BadTorsion);
            }
        }
        Ok(())
    }

    /// Build a form from a raw presentation (orders need not be prime powers);
    /// the result is normalized into the canonical prime-power presentation.
    pub fn from_parts(
        orders: Vec<i64>,
        q: Vec<BigRational>,
        b: Vec<Vec<BigRational>>,
    ) -> Result<Self, FormError> {
        Self::validate_values(&orders, &q, &b)?;
        let raw = Self::new_unchecked(orders, q, b);
        let gens: Vec<Element> =
            (0..raw.num_gens()).map(|i| (0..raw.num_gens()).map(|j| i64::from(i == j)).collect()).collect();
        let (f, _) = raw.group_from_presentation(&gens, &[])?;
        Ok(f)
    }

    /// Discriminant form of an even nondegenerate lattice.
    pub fn from_lattice(l: &IntegerLattice) -> Result<Self, FormError> {
        Ok(Self::from_lattice_with_lifts(l)?.0)
    }

    /// Discriminant form of a lattice together with rational coordinates (in
    /// the lattice basis) of a dual-vector lift of each form generator.
    pub fn from_lattice_with_lifts(
        l: &IntegerLattice,
    ) -> Result<(Self, Vec<lattice_core::QVec>), FormError> {
        let d = l.discriminant_data();
        let orders: Vec<i64> = d
            .orders
            .iter()
            .map(|o| o.to_i64().filter(|&x| x <= i32::MAX as i64).ok_or(FormError::BadOrder))
            .collect::<Result<_, _>>()?;
        Self::validate_values(&orders, &d.q, &d.b)?;
        let raw = Self::new_unchecked(orders, d.q.clone(), d.b.clone());
        let gens: Vec<Element> = (0..raw.num_gens())
            .map(|i| (0..raw.num_gens()).map(|j| i64::from(i == j)).collect())
            .collect();
        let (f, reps) = raw.group_from_presentation(&gens, &[])?;
        let lifts: Vec<lattice_core::QVec> = reps
            .iter()
            .map(|rep| {
                (0..l.rank())
                    .map(|j| {
                        let mut s = BigRational::zero();
                        for (i, g) in d.gens.iter().enumerate() {
                            s += BigRational::from(BigInt::from(rep[i])) * &g[j];
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        Ok((f, lifts))
    }

    pub fn num_gens(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn order(&self) -> BigInt {
        self.orders.iter().map(|&d| BigInt::from(d)).product()
    }

    pub fn primes(&self) -> Vec<i64> {
        let mut ps: Vec<i64> = self.orders.iter().map(|&d| factorize(d)[0].0).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    pub fn reduce(&self, e: &[i64]) -> Element {
        assert_eq!(e.len(), self.num_gens());
        e.iter().zip(&self.orders).map(|(&x, &d)| x.rem_euclid(d)).collect()
    }

    pub fn is_zero_elem(&self, e: &[i64]) -> bool {
        self.reduce(e).iter().all(|&x| x == 0)
    }

    pub fn add_elem(&self, x: &[i64], y: &[i64]) -> Element {
        x.iter().zip(y).zip(&self.orders).map(|((&a, &b), &d)| (a + b).rem_euclid(d)).collect()
    }

    pub fn scale_elem(&self, c: &BigInt, e: &[i64]) -> Element {
        e.iter()
            .zip(&self.orders)
            .map(|(&x, &d)| big_to_res(&(c * BigInt::from(x)), d))
            .collect()
    }

    pub fn neg_elem(&self, e: &[i64]) -> Element {
        e.iter().zip(&self.orders).map(|(&x, &d)| (-x).rem_euclid(d)).collect()
    }

    pub fn element_order(&self, e: &[i64]) -> i64 {
        let e = self.reduce(e);
        let mut m = 1i64;
        for (x, &d) in e.iter().zip(&self.orders) {
            if *x != 0 {
                m = m.lcm(&(d / d.gcd(x)));
            }
        }
        m
    }

    /// q(x) mod 2Z, normalized into [0,2).
    pub fn q_of(&self, e: &[i64]) -> BigRational {
        let e = self.reduce(e);
        let mut s = BigRational::zero();
        for i in 0..self.num_gens() {
            if e[i] == 0 {
                continue;
            }
            let c = BigInt::from(e[i]);
            s += BigRational::from(&c * &c) * &self.q[i];
            for j in 0..i {
                if e[j] == 0 {
                    continue;
                }
                s += BigRational::from(BigInt::from(2) * &c * BigInt::from(e[j])) * &self.b[i][j];
            }
        }
        rat_mod(&s, 2)
    }

    /// b(x,y) mod Z, normalized into [0,1).
    pub fn b_of(&self, x: &[i64], y: &[i64]) -> BigRational {
        let x = self.reduce(x);
        let y = self.reduce(y);
        let mut s = BigRational::zero();
        for i in 0..self.num_gens() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.num_gens() {
                if y[j] == 0 {
                    continue;
                }
                s += BigRational::from(BigInt::from(x[i]) * BigInt::from(y[j])) * &self.b[i][j];
            }
        }
        rat_mod(&s, 1)
    }

    pub fn is_isotropic(&self, e: &[i64]) -> bool {
        self.q_of(e).is_zero()
    }

    /// All elements in lexicographic order of coefficient tuples.
    pub fn elements(&self) -> Result<Vec<Element>, FormError> {
        let total = self.order();
        if total > BigInt::from(1u64 << 22) {
            return Err(FormError::TooLarge);
        }
        let n = self.num_gens();
        let mut out = Vec::with_capacity(total.to_usize().unwrap());
        let mut cur = vec![0i64; n];
        loop {
            out.push(cur.clone());
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.orders[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// All 2-torsion elements (including zero).
    pub fn two_torsion(&self) -> Vec<Element> {
        let even: Vec<usize> =
            (0..self.num_gens()).filter(|&i| self.orders[i] % 2 == 0).collect();
        assert!(even.len() < 30, "2-torsion rank too large");
        let mut out = Vec::with_capacity(1 << even.len());
        for mask in 0u32..(1 << even.len()) {
            let mut e = vec![0i64; self.num_gens()];
            for (t, &i) in even.iter().enumerate() {
                if mask >> t & 1 == 1 {
                    e[i] = self.orders[i] / 2;
                }
            }
            out.push(e);
        }
        out
    }

    /// Direct orthogonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n1 = self.num_gens();
        let n2 = other.num_gens();
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        let mut q = self.q.clone();
        q.extend_from_slice(&other.q);
        let mut b = vec![vec![BigRational::zero(); n1 + n2]; n1 + n2];
        for i in 0..n1 {
            for j in 0..n1 {
                b[i][j] = self.b[i][j].clone();
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                b[n1 + i][n1 + j] = other.b[i][j].clone();
            }
        }
        // Re-sort generators by (prime, order).
        let mut perm: Vec<usize> = (0..n1 + n2).collect();
        perm.sort_by_key(|&i| (factorize(orders[i])[0].0, orders[i]));
        FiniteQuadraticForm {
            orders: perm.iter().map(|&i| orders[i]).collect(),
            q: perm.iter().map(|&i| q[i].clone()).collect(),
            b: perm.iter().map(|&i| perm.iter().map(|&j| b[i][j].clone()).collect()).collect(),
        }
    }

    /// The form with q negated (discriminant form of the negated lattice).
    pub fn negate(&self) -> Self {
        FiniteQuadraticForm {
            orders: self.orders.clone(),
            q: self.q.iter().map(|x| rat_mod(&-x, 2)).collect(),
            b: self
                .b
                .iter()
                .map(|r| r.iter().map(|x| rat_mod(&-x, 1)).collect())
                .collect(),
        }
    }

    /// Indices of generators belonging to the p-primary part.
    pub fn p_part_indices(&self, p: i64) -> Vec<usize> {
        (0..self.num_gens()).filter(|&i| self.orders[i] % p == 0).collect()
    }

    /// The restriction of q to the p-primary component.
    pub fn p_part(&self, p: i64) -> Self {
        let idx = self.p_part_indices(p);
        FiniteQuadraticForm {
            orders: idx.iter().map(|&i| self.orders[i]).collect(),
            q: idx.iter().map(|&i| self.q[i].clone()).collect(),
            b: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.b[i][j].clone()).collect())
                .collect(),
        }
    }

    /// Lift an element of the p-part back into the full form.
    pub fn from_p_part_elem(&self, p: i64, e: &[i64]) -> Element {
        let idx = self.p_part_indices(p);
        assert_eq!(e.len(), idx.len());
        let mut full = vec![0i64; self.num_gens()];
        for (t, &i) in idx.iter().enumerate() {
            full[i] = e[t];
        }
        full
    }

    /// Present the subgroup/quotient generated by ambient elements `gens`
    /// subject to the implicit ambient relations plus `extra_rel` rows (in
    /// gen coordinates). Returns the normalized form together with ambient
    /// coset representatives of its generators.
    fn group_from_presentation(
        &self,
        gens: &[Element],
        extra_rel: &[Vec<BigInt>],
    ) -> Result<(Self, Vec<Element>), FormError> {
        let m = gens.len();
        let n = self.num_gens();
        if m == 0 {
            return Ok((Self::trivial(), vec![]));
        }
        // Relation lattice {a in Z^m : sum a_j gens_j = 0 in F}: kernel of
        // [G^T | -D] projected to the first m coordinates.
        let mut stack = IMat::zero(n, m + n);
        for i in 0..n {
            for (j, g) in gens.iter().enumerate() {
                stack[(i, j)] = BigInt::from(g[i]);
            }
            stack[(i, m + i)] = BigInt::from(-self.orders[i]);
        }
        let ker = mat::kernel(&stack);
        let mut rel: Vec<Vec<BigInt>> =
            (0..ker.rows).map(|i| (0..m).map(|j| ker[(i, j)].clone()).collect()).collect();
        for r in extra_rel {
            assert_eq!(r.len(), m);
            rel.push(r.clone());
        }
        // Well-definedness of q on the quotient: every relation must be
        // isotropic and must pair trivially with all generators.
        for r in &rel {
            let lift = self.reduce(
                &(0..n)
                    .map(|i| {
                        let mut s = BigInt::zero();
                        for (j, g) in gens.iter().enumerate() {
                            s += &r[j] * BigInt::from(g[i]);
                        }
                        big_to_res(&s, self.orders[i])
                    })
                    .collect::<Vec<i64>>(),
            );
            if !self.q_of(&lift).is_zero() {
                return Err(FormError::IllDefined);
            }
            for g in gens {
                if !self.b_of(&lift, g).is_zero() {
                    return Err(FormError::IllDefined);
                }
            }
        }
        let rmat = IMat::from_rows(&rel);
        let (d, _u, v) = mat::snf(&rmat);
        let vq = mat::qmat_inverse(&mat::qmat_from_imat(&v)).expect("V unimodular");
        // New generators: rows of V^{-1} expressed as ambient elements.
        let mut items: Vec<(i64, u32, Element)> = Vec::new(); // (p^k, exponent-key unused later, ambient elem)
        for i in 0..m.min(d.rows) {
            let di = &d[(i, i)];
            if di.is_one() {
                continue;
            }
            if di.is_zero() {
                return Err(FormError::Invalid("presented group is infinite".into()));
            }
            let order = di.to_i64().filter(|&x| x <= i32::MAX as i64).ok_or(FormError::BadOrder)?;
            let amb: Element = (0..n)
                .map(|t| {
                    let mut s = BigInt::zero();
                    for j in 0..m {
                        debug_assert!(vq[i][j].denom().is_one());
                        s += vq[i][j].numer() * BigInt::from(gens[j][t]);
                    }
                    big_to_res(&s, self.orders[t])
                })
                .collect();
            // Split the cyclic factor into its prime-power components.
            let total = BigInt::from(order);
            for (p, k) in factorize(order) {
                let pk = p.pow(k);
                let m0 = order / pk;
                let coef = BigInt::from(m0) * BigInt::from(modinv(m0.rem_euclid(pk), pk));
                let coef = coef.mod_floor(&total);
                let comp = self.scale_elem(&coef, &amb);
                items.push((pk, k, comp));
            }
        }
        items.sort_by_key(|(pk, k, _)| (factorize(*pk)[0].0, *k));
        let orders: Vec<i64> = items.iter().map(|(pk, _, _)| *pk).collect();
        let ambs: Vec<Element> = items.iter().map(|(_, _, a)| a.clone()).collect();
        let q: Vec<BigRational> = ambs.iter().map(|a| self.q_of(a)).collect();
        let b: Vec<Vec<BigRational>> =
            ambs.iter().map(|a| ambs.iter().map(|c| self.b_of(a, c)).collect()).collect();
        Self::validate_values(&orders, &q, &b)?;
        Ok((Self::new_unchecked(orders, q, b), ambs))
    }

    /// The subgroup generated by the given elements, as a form of its own,
    /// together with ambient representatives of its generators.
    pub fn subgroup(&self, gens: &[Element]) -> Result<(Self, Vec<Element>), FormError> {
        self.group_from_presentation(gens, &[])
    }

    /// Ambient generators of the subgroup orthogonal to `v` under b.
    fn orthogonal_gens(&self, v: &[i64]) -> Vec<Element> {
        let n = self.num_gens();
        let cs: Vec<BigRational> = (0..n)
            .map(|i| {
                let mut e = vec![0i64; n];
                e[i] = 1;
                self.b_of(&e, v)
            })
            .collect();
        let mut den = BigInt::one();
        for c in &cs {
            den = den.lcm(c.denom());
        }
        let mut row = IMat::zero(1, n + 1);
        for i in 0..n {
            row[(0, i)] = (&cs[i] * BigRational::from(den.clone())).to_integer();
        }
        row[(0, n)] = -den.clone();
        let ker = mat::kernel(&row);
        (0..ker.rows)
            .map(|i| {
                self.reduce(
                    &(0..n)
                        .map(|j| big_to_res(&ker[(i, j)], self.orders[j]))
                        .collect::<Vec<i64>>(),
                )
            })
            .collect()
    }

    /// The orthogonal complement of `v` as a form, with ambient generator
    /// representatives (nondegenerate iff b(v,v) != 0 or v = 0).
    pub fn orthogonal_of(&self, v: &[i64]) -> Result<(Self, Vec<Element>), FormError> {
        self.subgroup(&self.orthogonal_gens(v))
    }

    /// The form K-perp/K for the cyclic isotropic subgroup K generated by `k`.
    pub fn quotient_by_isotropic(&self, k: &[i64]) -> Result<Self, FormError> {
        let k = self.reduce(k);
        if self.is_zero_elem(&k) {
            return Err(FormError::Invalid("kernel generator is zero".into()));
        }
        if !self.q_of(&k).is_zero() {
            return Err(FormError::NotIsotropic);
        }
        let n = self.num_gens();
        // Integer lattice P of coefficient rows landing in K-perp; its kernel
        // basis from `orthogonal_gens` is reduced, so recompute as a full-rank
        // integer matrix for the coordinate solve.
        let cs: Vec<BigRational> = (0..n)
            .map(|i| {
                let mut e = vec![0i64; n];
                e[i] = 1;
                self.b_of(&e, &k)
            })
            .collect();
        let mut den = BigInt::one();
        for c in &cs {
            den = den.lcm(c.denom());
        }
        let mut row = IMat::zero(1, n + 1);
        for i in 0..n {
            row[(0, i)] = (&cs[i] * BigRational::from(den.clone())).to_integer();
        }
        row[(0, n)] = -den.clone();
        let ker = mat::kernel(&row);
        let a_rows: Vec<Vec<BigInt>> =
            (0..ker.rows).map(|i| (0..n).map(|j| ker[(i, j)].clone()).collect()).collect();
        let a = IMat::from_rows(&a_rows);
        debug_assert_eq!(a.rows, n);
        // Express k in the basis rows of P: x A = k, i.e. A^T x^T = k^T.
        let rhs: Vec<BigInt> = k.iter().map(|&x| BigInt::from(x)).collect();
        let (x0, _) = solve_integer_system(&a.transpose(), &rhs)
            .ok_or_else(|| FormError::Invalid("kernel generator escapes its own perp".into()))?;
        let gens: Vec<Element> = a_rows
            .iter()
            .map(|r| {
                self.reduce(
                    &r.iter()
                        .zip(&self.orders)
                        .map(|(x, &d)| big_to_res(x, d))
                        .collect::<Vec<i64>>(),
                )
            })
            .collect();
        let (f, _) = self.group_from_presentation(&gens, &[x0])?;
        Ok(f)
    }

    /// True iff q(x) = b(x,v) mod Z for every order-2 element x.
    pub fn is_characteristic(&self, v: &[i64]) -> Result<bool, FormError> {
        let v = self.reduce(v);
        if !self.is_zero_elem(&self.add_elem(&v, &v)) {
            return Err(FormError::NotTwoTorsion);
        }
        Ok(self
            .two_torsion()
            .iter()
            .all(|x| rat_mod(&self.q_of(x), 1) == self.b_of(x, &v)))
    }

    /// Repeatedly quotient by the lexicographically smallest nontrivial
    /// isotropic element of an offending p-part until every prime satisfies
    /// the extension bounds (l_p <= 2, or p=2 with l_2 <= 3 and odd 2-part).
    /// Returns the reduced form and the chain of kernel generators used (each
    /// in the coordinates of the form at its own stage).
    pub fn reduce_extension(&self) -> Result<(Self, Vec<Element>), FormError> {
        let mut f = self.clone();
        let mut chain = Vec::new();
        loop {
            let bad = f.primes().into_iter().find(|&p| {
                let inv = f.invariants(p);
                !(inv.ell <= 2 || (p == 2 && inv.ell == 3 && inv.odd_form))
            });
            let Some(p) = bad else {
                return Ok((f, chain));
            };
            let part = f.p_part(p);
            let iso = part
                .elements()?
                .into_iter()
                .find(|e| !part.is_zero_elem(e) && part.is_isotropic(e))
                .ok_or_else(|| {
                    FormError::Invalid(format!("no isotropic element in the {p}-part"))
                })?;
            let full = f.from_p_part_elem(p, &iso);
            chain.push(full.clone());
            f = f.quotient_by_isotropic(&full)?;
        }
    }

    /// Canonical JSON: {"orders": [...], "q_diag": ["a/b", ...],
    /// "b_off": [[i, j, "a/b"], ...]} with i < j and nonzero values only.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        let q: Vec<String> = self.q.iter().map(|x| x.to_string()).collect();
        let mut off = Vec::new();
        for i in 0..self.num_gens() {
            for j in i + 1..self.num_gens() {
                if !self.b[i][j].is_zero() {
                    off.push(json!([i, j, self.b[i][j].to_string()]));
                }
            }
        }
        json!({ "orders": self.orders, "q_diag": q, "b_off": off })
    }

    /// Exhaustive nondegeneracy check (test/diagnostic use; cost O(|F| n)).
    pub fn is_nondegenerate(&self) -> Result<bool, FormError> {
        let n = self.num_gens();
        for e in self.elements()? {
            if self.is_zero_elem(&e) {
                continue;
            }
            let mut paired = false;
            for i in 0..n {
                let mut g = vec![0i64; n];
                g[i] = 1;
                if !self.b_of(&e, &g).is_zero() {
                    paired = true;
                    break;
                }
            }
            if !paired {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn lat(rows: &[&[i64]]) -> IntegerLattice {
        IntegerLattice::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn a1_form() {
        let f = FiniteQuadraticForm::from_lattice(&lat(&[&[2]])).unwrap();
        assert_eq!(f.orders(), &[2]);
        assert_eq!(f.q_of(&[1]), rat(1, 2));
        assert_eq!(f.order(), BigInt::from(2));
    }

    #[test]
    fn composite_orders_split_into_prime_powers() {
        // Z/6 with q(g) = 1/6 mod 2Z splits into Z/2 and Z/3 parts.
        let f = FiniteQuadraticForm::from_parts(vec![12], vec![rat(1, 12)], vec![vec![rat(1, 12)]])
            .unwrap();
        assert_eq!(f.orders(), &[4, 3]);
        assert_eq!(f.order(), BigInt::from(12));
        // The recombined generator must have q = 1/12 again: g = g_2-part + g_3-part.
        assert_eq!(f.q_of(&[1, 1]), rat(1, 12));
    }

    #[test]
    fn p_part_examples() {
        let a1 = lat(&[&[2]]);
        let a2_neg = lat(&[&[-2, 1], &[1, -2]]);
        let f1 = FiniteQuadraticForm::from_lattice(&a1).unwrap();
        assert_eq!(f1.p_part(2), f1);
        let f2 = FiniteQuadraticForm::from_lattice(&a2_neg).unwrap();
        assert_eq!(f2.p_part(2), FiniteQuadraticForm::trivial());
        // discr(A2 + A1) at p = 3 is Z/3 with q = -2/3 (negative-definite A2).
        let sum = FiniteQuadraticForm::from_lattice(&a2_neg.direct_sum(&lat(&[&[-2]]))).unwrap();
        let p3 = sum.p_part(3);
        assert_eq!(p3.orders(), &[3]);
        assert_eq!(p3.q_of(&[1]), rat(4, 3)); // -2/3 mod 2Z
    }

    #[test]
    fn subgroup_and_quotient() {
        // u(2): (Z/2)^2 with q = 0 on generators, b = 1/2 off-diagonal.
        let u2 = FiniteQuadraticForm::from_parts(
            vec![2, 2],
            vec![rat(0, 1), rat(0, 1)],
            vec![vec![rat(0, 1), rat(1, 2)], vec![rat(1, 2), rat(0, 1)]],
        )
        .unwrap();
        assert!(u2.is_nondegenerate().unwrap());
        let q = u2.quotient_by_isotropic(&[1, 0]).unwrap();
        assert_eq!(q, FiniteQuadraticForm::trivial());
        // The subgroup generated by (1,1) is Z/2 with q(1,1) = 0 + 2*(1/2) = 1.
        let (s, _) = u2.subgroup(&[vec![1, 1]]).unwrap();
        assert_eq!(s.orders(), &[2]);
        assert_eq!(s.q_of(&[1]), rat(1, 1));
    }

    #[test]
    fn quotient_rejects_anisotropic_kernel() {
        let f = FiniteQuadraticForm::from_lattice(&lat(&[&[2]])).unwrap();
        assert_eq!(f.quotient_by_isotropic(&[1]).unwrap_err(), FormError::NotIsotropic);
    }

    #[test]
    fn characteristic_examples() {
        let u2 = FiniteQuadraticForm::from_parts(
            vec![2, 2],
            vec![rat(0, 1), rat(0, 1)],
            vec![vec![rat(0, 1), rat(1, 2)], vec![rat(1, 2), rat(0, 1)]],
        )
        .unwrap();
        // Even 2-part: v = 0 is characteristic.
        assert!(u2.is_characteristic(&[0, 0]).unwrap());
        let a1 = FiniteQuadraticForm::from_lattice(&lat(&[&[2]])).unwrap();
        assert!(!a1.is_characteristic(&[0]).unwrap());
        assert!(a1.is_characteristic(&[1]).unwrap());
        // Non-2-torsion input is rejected.
        let a2 = FiniteQuadraticForm::from_lattice(&lat(&[&[2, -1], &[-1, 2]])).unwrap();
        assert_eq!(a2.is_characteristic(&[1]).unwrap_err(), FormError::NotTwoTorsion);
    }

    #[test]
    fn reduce_extension_examples() {
        let t = FiniteQuadraticForm::trivial();
        assert_eq!(t.reduce_extension().unwrap().0, t);
        let u2 = FiniteQuadraticForm::from_parts(
            vec![2, 2],
            vec![rat(0, 1), rat(0, 1)],
            vec![vec![rat(0, 1), rat(1, 2)], vec![rat(1, 2), rat(0, 1)]],
        )
        .unwrap();
        // u(2) has l_2 = 2 <= 2: already within bounds, unchanged.
        let (r, chain) = u2.reduce_extension().unwrap();
        assert_eq!(r, u2);
        assert!(chain.is_empty());
        // u(2) + u(2) has l_2 = 4: must reduce; the result satisfies the bounds.
        let big = u2.direct_sum(&u2);
        let (r, chain) = big.reduce_extension().unwrap();
        assert!(!chain.is_empty());
        let inv = r.invariants(2);
        assert!(inv.ell <= 2 || (inv.ell == 3 && inv.odd_form));
    }

    #[test]
    fn serialization_shape() {
        let u2 = FiniteQuadraticForm::from_parts(
            vec![2, 2],
            vec![rat(0, 1), rat(0, 1)],
            vec![vec![rat(0, 1), rat(1, 2)], vec![rat(1, 2), rat(0, 1)]],
        )
        .unwrap();
        let j = u2.to_json();
        assert_eq!(j["orders"], serde_json::json!([2, 2]));
        assert_eq!(j["b_off"][0][2], "1/2");
    }
}
