//! Exact fixed-precision arithmetic in the ring of integers `O` of an
//! unramified extension of `Q_p`.
//!
//! A context fixes an odd prime `p`, a residue degree `f`, a coefficient
//! precision `N` and a monic degree-`f` modulus whose reduction mod `p` is
//! irreducible. Elements are coordinate vectors in the power basis of the
//! modulus, each coordinate a canonical residue in `[0, p^N)`. All values are
//! immutable after construction and every operation is a pure function, so
//! contexts and elements can be shared freely across threads.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Residue-field helper: arithmetic in `F_p[x]/(modulus mod p)`.
///
/// Elements are coordinate vectors of length `f` with entries in `[0, p)`.
/// Only used for small `q = p^f` (residue search, irreducibility checks),
/// so the quadratic-time algorithms are fine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ResidueField {
    p: u64,
    f: usize,
    /// Monic modulus reduced mod p, length f+1, leading coefficient 1.
    modulus: Vec<u64>,
}

impl ResidueField {
    fn new(p: u64, modulus_mod_p: Vec<u64>) -> Self {
        let f = modulus_mod_p.len() - 1;
        debug_assert_eq!(modulus_mod_p[f], 1);
        ResidueField {
            p,
            f,
            modulus: modulus_mod_p,
        }
    }

    pub(crate) fn q(&self) -> u64 {
        self.p.pow(self.f as u32)
    }

    fn zero(&self) -> Vec<u64> {
        vec![0; self.f]
    }

    fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = self.f;
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // Fold degrees >= f down using x^f = -(lower part of modulus).
        for d in (f..2 * f - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for k in 0..f {
                let m = self.modulus[k] % self.p;
                let idx = d - f + k;
                prod[idx] = (prod[idx] + c * ((self.p - m) % self.p)) % self.p;
            }
        }
        prod.truncate(f);
        prod
    }

    fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: &[u64]) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        // q is small; a^(q-2) is the inverse.
        Some(self.pow(a, self.q() - 2))
    }

    /// All field elements in lexicographic coordinate order.
    fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let q = self.q();
        (0..q).map(move |mut n| {
            let mut v = Vec::with_capacity(self.f);
            // coordinate a_{f-1} varies slowest so that the iteration order is
            // lexicographic on (a_0, ..., a_{f-1}) read left to right
            for _ in 0..self.f {
                v.push(n % self.p);
                n /= self.p;
            }
            // built little-endian in the mixed radix; reorder to make a_0 the
            // most significant lexicographic position
            let mut out = vec![0u64; self.f];
            for (i, c) in v.into_iter().enumerate() {
                out[self.f - 1 - i] = c;
            }
            out
        })
    }
}

/// Polynomial arithmetic over `F_p` used for the irreducibility check.
mod fp_poly {
    /// Reduce a polynomial modulo a monic `modulus` over F_p.
    fn rem(mut a: Vec<u64>, modulus: &[u64], p: u64) -> Vec<u64> {
        let dm = modulus.len() - 1;
        while a.len() > dm {
            let lead = *a.last().unwrap() % p;
            let da = a.len() - 1;
            if lead != 0 {
                for k in 0..dm {
                    let idx = da - dm + k;
                    a[idx] = (a[idx] + lead * (p - modulus[k] % p)) % p;
                }
            }
            a.pop();
            while a.len() > 1 && *a.last().unwrap() % p == 0 {
                a.pop();
            }
        }
        a.iter_mut().for_each(|c| *c %= p);
        a
    }

    fn mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x % p * (y % p)) % p;
            }
        }
        rem(prod, modulus, p)
    }

    /// x^(p^e) mod (modulus, p) by square-and-multiply on the exponent.
    fn frobenius_power(e: u32, modulus: &[u64], p: u64) -> Vec<u64> {
        // exponent p^e as repeated squaring over u128 to avoid overflow
        let mut exp: u128 = 1;
        for _ in 0..e {
            exp *= p as u128;
        }
        let mut base = vec![0u64, 1]; // x
        base = rem(base, modulus, p);
        let mut acc = vec![1u64];
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(&acc, &base, modulus, p);
            }
            base = mul_mod(&base, &base, modulus, p);
            exp >>= 1;
        }
        acc
    }

    fn is_zero(a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
        let norm = |v: &mut Vec<u64>| {
            while v.len() > 1 && *v.last().unwrap() % p == 0 {
                v.pop();
            }
            v.iter_mut().for_each(|c| *c %= p);
        };
        norm(&mut a);
        norm(&mut b);
        while !is_zero(&b) {
            let mut big = if a.len() >= b.len() { a.clone() } else { b.clone() };
            let small = if a.len() >= b.len() { b.clone() } else { a.clone() };
            // make small monic for the reduction
            let lead = *small.last().unwrap();
            let lead_inv = mod_inv(lead, p);
            let monic: Vec<u64> = small.iter().map(|&c| c * lead_inv % p).collect();
            big = rem(big, &monic, p);
            norm(&mut big);
            a = small;
            b = big;
        }
        a
    }

    fn mod_inv(a: u64, p: u64) -> u64 {
        // p is prime and a != 0 mod p
        let mut acc = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    /// True iff the monic polynomial is irreducible over F_p.
    pub(super) fn is_irreducible(modulus: &[u64], p: u64) -> bool {
        let f = modulus.len() - 1;
        if f == 1 {
            return true;
        }
        // x^(p^f) == x mod (modulus, p)
        let xf = frobenius_power(f as u32, modulus, p);
        let x = rem(vec![0, 1], modulus, p);
        let mut diff: Vec<u64> = vec![0; xf.len().max(x.len())];
        for (i, &c) in xf.iter().enumerate() {
            diff[i] = c % p;
        }
        for (i, &c) in x.iter().enumerate() {
            diff[i] = (diff[i] + p - c % p) % p;
        }
        if !is_zero(&diff) {
            return false;
        }
        // gcd(x^(p^(f/d)) - x, modulus) = 1 for every prime divisor d of f
        let mut rest = f;
        let mut d = 2;
        let mut prime_divs = Vec::new();
        while d * d <= rest {
            if rest % d == 0 {
                prime_divs.push(d);
                while rest % d == 0 {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            prime_divs.push(rest);
        }
        for d in prime_divs {
            let e = (f / d) as u32;
            let xe = frobenius_power(e, modulus, p);
            let mut diff: Vec<u64> = vec![0; xe.len().max(2)];
            for (i, &c) in xe.iter().enumerate() {
                diff[i] = c % p;
            }
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(diff, modulus.to_vec(), p);
            if g.len() != 1 || g[0] == 0 {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, PartialEq, Eq)]
struct ContextData {
    p: u64,
    f: usize,
    precision: usize,
    /// Monic integer modulus, ascending coefficients, length f+1.
    modulus: Vec<BigInt>,
    /// p^precision.
    pn: BigUint,
    /// Rows for folding x^(f+j) (j = 0..f-1) into the power basis, mod p^N.
    reduction: Vec<Vec<BigUint>>,
    residue_field: ResidueField,
}

/// The ambient ring `O` at fixed precision: `p`, residue degree `f`,
/// precision exponent `N` and the defining modulus.
#[derive(Clone, Debug)]
pub struct PadicContext {
    data: Arc<ContextData>,
}

impl PartialEq for PadicContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.p == other.data.p
                && self.data.f == other.data.f
                && self.data.precision == other.data.precision
                && self.data.modulus == other.data.modulus)
    }
}

impl Eq for PadicContext {}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PadicContext {
    /// Builds a context, validating the running hypotheses: `p` an odd prime,
    /// `modulus` monic of degree `f >= 1` and irreducible mod `p`.
    pub fn new(p: u64, precision: usize, modulus: Vec<BigInt>) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if precision == 0 {
            return Err(Error::InvalidArgument("precision must be >= 1".into()));
        }
        if modulus.len() < 2 {
            return Err(Error::BadModulus("degree must be >= 1".into()));
        }
        if modulus.last().unwrap() != &BigInt::one() {
            return Err(Error::BadModulus("modulus must be monic".into()));
        }
        let f = modulus.len() - 1;
        let pb = BigInt::from(p);
        let mod_p: Vec<u64> = modulus
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect();
        if !fp_poly::is_irreducible(&mod_p, p) {
            return Err(Error::BadModulus(
                "reduction mod p must be irreducible".into(),
            ));
        }
        let pn = BigUint::from(p).pow(precision as u32);
        let residue_field = ResidueField::new(p, mod_p);

        // Precompute x^(f+j) mod modulus for j = 0..f-1, coefficients mod p^N.
        let reduce_bigint = |c: &BigInt, pn: &BigUint| -> BigUint {
            let m = BigInt::from(pn.clone());
            c.mod_floor(&m).to_biguint().unwrap()
        };
        let mut reduction: Vec<Vec<BigUint>> = Vec::with_capacity(f.saturating_sub(1));
        // row_0 = x^f = -(m_0 + m_1 x + ... + m_{f-1} x^{f-1})
        let mut current: Vec<BigInt> = modulus[..f].iter().map(|c| -c).collect();
        reduction.push(current.iter().map(|c| reduce_bigint(c, &pn)).collect());
        for _ in 1..f {
            // multiply current by x and fold the overflow term
            let top = current[f - 1].clone();
            let mut next = vec![BigInt::zero(); f];
            for k in (1..f).rev() {
                next[k] = current[k - 1].clone();
            }
            for k in 0..f {
                next[k] += &top * -&modulus[k];
            }
            reduction.push(next.iter().map(|c| reduce_bigint(c, &pn)).collect());
            current = next;
        }

        Ok(PadicContext {
            data: Arc::new(ContextData {
                p,
                f,
                precision,
                modulus,
                pn,
                reduction,
                residue_field,
            }),
        })
    }

    /// Unramified context of residue degree `f` with a deterministic default
    /// modulus: the lexicographically smallest monic irreducible polynomial
    /// of degree `f` over `F_p` (which is `x` for `f = 1`).
    pub fn unramified(p: u64, f: usize, precision: usize) -> Result<Self> {
        if f == 0 {
            return Err(Error::BadModulus("degree must be >= 1".into()));
        }
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let total = p.checked_pow(f as u32).ok_or_else(|| {
            Error::BadModulus("default modulus search space too large".into())
        })?;
        for n in 0..total {
            let mut coeffs = Vec::with_capacity(f + 1);
            let mut m = n;
            for _ in 0..f {
                coeffs.push(m % p);
                m /= p;
            }
            coeffs.push(1);
            if fp_poly::is_irreducible(&coeffs, p) {
                let modulus: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
                return Self::new(p, precision, modulus);
            }
        }
        Err(Error::BadModulus(format!(
            "no irreducible monic polynomial of degree {f} over F_{p}"
        )))
    }

    pub fn p(&self) -> u64 {
        self.data.p
    }

    pub fn residue_degree(&self) -> usize {
        self.data.f
    }

    pub fn precision(&self) -> usize {
        self.data.precision
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.data.modulus
    }

    /// Residue field size q = p^f.
    pub fn q(&self) -> u64 {
        self.data.residue_field.q()
    }

    /// p^N as a big integer.
    pub fn pn(&self) -> &BigUint {
        &self.data.pn
    }

    /// p^k for k <= N.
    pub fn p_pow(&self, k: usize) -> BigUint {
        BigUint::from(self.data.p).pow(k as u32)
    }

    /// Same modulus at a different precision (used for guard-digit work).
    pub fn with_precision(&self, precision: usize) -> Result<Self> {
        Self::new(self.data.p, precision, self.data.modulus.clone())
    }

    pub(crate) fn residue_field(&self) -> &ResidueField {
        &self.data.residue_field
    }

    pub fn zero(&self) -> PadicElement {
        PadicElement {
            ctx: self.clone(),
            coords: vec![BigUint::zero(); self.data.f],
        }
    }

    pub fn one(&self) -> PadicElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> PadicElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_i64(&self, n: i64) -> PadicElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> PadicElement {
        let m = BigInt::from(self.data.pn.clone());
        let r = n.mod_floor(&m).to_biguint().unwrap();
        let mut coords = vec![BigUint::zero(); self.data.f];
        coords[0] = r;
        PadicElement {
            ctx: self.clone(),
            coords,
        }
    }

    /// Element from coordinates in the power basis; arbitrary integers are
    /// reduced into canonical residues.
    pub fn from_coords(&self, coords: &[BigInt]) -> Result<PadicElement> {
        if coords.len() != self.data.f {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.data.f,
                coords.len()
            )));
        }
        let m = BigInt::from(self.data.pn.clone());
        Ok(PadicElement {
            ctx: self.clone(),
            coords: coords
                .iter()
                .map(|c| c.mod_floor(&m).to_biguint().unwrap())
                .collect(),
        })
    }

    /// The generator x of the power basis (zero when f = 1 would be wrong;
    /// for f = 1 this is the image of x, i.e. the root of the linear modulus).
    pub fn generator(&self) -> PadicElement {
        if self.data.f == 1 {
            // x = -m_0 in O
            let c = -self.data.modulus[0].clone();
            return self.from_bigint(&c);
        }
        let mut coords = vec![BigUint::zero(); self.data.f];
        coords[1] = BigUint::one();
        PadicElement {
            ctx: self.clone(),
            coords,
        }
    }
}

/// An element of `O` at the context's precision: `f` canonical residues
/// in `[0, p^N)`, coordinates in the power basis of the modulus.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicElement {
    ctx: PadicContext,
    coords: Vec<BigUint>,
}

impl fmt::Debug for PadicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PadicElement[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for PadicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn vp_biguint(n: &BigUint, p: u64, cap: usize) -> usize {
    if n.is_zero() {
        return cap;
    }
    let pb = BigUint::from(p);
    let mut v = 0;
    let mut m = n.clone();
    while v < cap {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    v
}

impl PadicElement {
    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn coords(&self) -> &[BigUint] {
        &self.coords
    }

    fn assert_same_ctx(&self, other: &PadicElement) {
        assert!(
            self.ctx == other.ctx,
            "p-adic elements from different contexts"
        );
    }

    /// True iff the element is congruent to 0 mod p^N.
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == 0
    }

    /// Largest k <= N with p^k dividing every coordinate; N encodes
    /// "indistinguishable from 0 at this precision".
    pub fn valuation(&self) -> usize {
        let n = self.ctx.precision();
        self.coords
            .iter()
            .map(|c| vp_biguint(c, self.ctx.p(), n))
            .min()
            .unwrap_or(n)
    }

    pub fn add(&self, other: &PadicElement) -> PadicElement {
        self.assert_same_ctx(other);
        let pn = self.ctx.pn();
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a + b) % pn)
            .collect();
        PadicElement {
            ctx: self.ctx.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &PadicElement) -> PadicElement {
        self.assert_same_ctx(other);
        let pn = self.ctx.pn();
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a + (pn - b % pn)) % pn)
            .collect();
        PadicElement {
            ctx: self.ctx.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> PadicElement {
        self.ctx.zero().sub(self)
    }

    pub fn mul(&self, other: &PadicElement) -> PadicElement {
        self.assert_same_ctx(other);
        let f = self.ctx.residue_degree();
        let pn = self.ctx.pn();
        if f == 1 {
            return PadicElement {
                ctx: self.ctx.clone(),
                coords: vec![(&self.coords[0] * &other.coords[0]) % pn],
            };
        }
        let mut prod = vec![BigUint::zero(); 2 * f - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = (&prod[i + j] + a * b) % pn;
            }
        }
        // fold x^(f+j) terms via precomputed rows
        let mut coords = prod[..f].to_vec();
        for j in 0..f - 1 {
            let c = &prod[f + j];
            if c.is_zero() {
                continue;
            }
            let row = &self.ctx.data.reduction[j];
            for k in 0..f {
                if row[k].is_zero() {
                    continue;
                }
                coords[k] = (&coords[k] + c * &row[k]) % pn;
            }
        }
        PadicElement {
            ctx: self.ctx.clone(),
            coords,
        }
    }

    pub fn mul_u64(&self, n: u64) -> PadicElement {
        let pn = self.ctx.pn();
        let nb = BigUint::from(n);
        PadicElement {
            ctx: self.ctx.clone(),
            coords: self.coords.iter().map(|c| (c * &nb) % pn).collect(),
        }
    }

    /// Multiply by p^k (k <= N).
    pub fn mul_p_pow(&self, k: usize) -> PadicElement {
        let pn = self.ctx.pn();
        let pk = self.ctx.p_pow(k);
        PadicElement {
            ctx: self.ctx.clone(),
            coords: self.coords.iter().map(|c| (c * &pk) % pn).collect(),
        }
    }

    /// Exact division of the canonical representative by p^k. The result is
    /// only determined mod p^(N-k); higher digits of the returned element are
    /// an artifact of the chosen representative.
    pub fn div_p_pow_exact(&self, k: usize) -> Result<PadicElement> {
        if k == 0 {
            return Ok(self.clone());
        }
        if self.valuation() < k {
            return Err(Error::RamifiedRoot {
                valuation: self.valuation(),
                exponent: 0,
            });
        }
        let pk = self.ctx.p_pow(k);
        let coords = self.coords.iter().map(|c| c / &pk).collect();
        Ok(PadicElement {
            ctx: self.ctx.clone(),
            coords,
        })
    }

    /// Canonical representative of the coset mod p^k: digits >= k are zeroed.
    pub fn reduce_mod(&self, k: usize) -> PadicElement {
        let pk = self.ctx.p_pow(k.min(self.ctx.precision()));
        PadicElement {
            ctx: self.ctx.clone(),
            coords: self.coords.iter().map(|c| c % &pk).collect(),
        }
    }

    /// Congruence mod p^k.
    pub fn congruent_mod(&self, other: &PadicElement, k: usize) -> bool {
        self.sub(other).valuation() >= k.min(self.ctx.precision())
    }

    pub fn pow(&self, mut e: u64) -> PadicElement {
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_biguint(&self, e: &BigUint) -> PadicElement {
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
        }
        acc
    }

    /// Residue mod p as a coordinate vector in `[0, p)^f`.
    pub fn residue(&self) -> Vec<u64> {
        let p = BigUint::from(self.ctx.p());
        self.coords
            .iter()
            .map(|c| (c % &p).to_u64().unwrap())
            .collect()
    }

    /// Multiplicative inverse of a unit, exact at precision N.
    pub fn inverse(&self) -> Result<PadicElement> {
        let v = self.valuation();
        if v > 0 {
            return Err(Error::NonUnit { valuation: v });
        }
        let rf = self.ctx.residue_field();
        let res_inv = rf.inv(&self.residue()).expect("unit has invertible residue");
        let mut z = self
            .ctx
            .from_coords(
                &res_inv
                    .iter()
                    .map(|&c| BigInt::from(c))
                    .collect::<Vec<_>>(),
            )
            .expect("coordinate count matches");
        // Newton: z <- z(2 - uz), doubling correct digits each round.
        let two = self.ctx.from_u64(2);
        let mut digits = 1usize;
        while digits < self.ctx.precision() {
            z = z.mul(&two.sub(&self.mul(&z)));
            digits *= 2;
        }
        Ok(z)
    }

    pub fn div(&self, other: &PadicElement) -> Result<PadicElement> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Canonical lift into a context with the same modulus (typically higher
    /// precision): coordinates are copied verbatim.
    pub fn lift_to(&self, ctx: &PadicContext) -> Result<PadicElement> {
        if ctx.p() != self.ctx.p() || ctx.modulus() != self.ctx.modulus() {
            return Err(Error::ContextMismatch);
        }
        let pn = ctx.pn();
        Ok(PadicElement {
            ctx: ctx.clone(),
            coords: self.coords.iter().map(|c| c % pn).collect(),
        })
    }

    /// Teichmüller lift: the unique (q-1)-st root of unity congruent to this
    /// unit mod p, computed by iterating y -> y^q until stable.
    pub fn teichmuller(&self) -> Result<PadicElement> {
        let v = self.valuation();
        if v > 0 {
            return Err(Error::NonUnit { valuation: v });
        }
        let q = self.ctx.q();
        let mut y = self.clone();
        for _ in 0..=self.ctx.precision() {
            let next = y.pow(q);
            if next == y {
                return Ok(y);
            }
            y = next;
        }
        Ok(y)
    }

    /// Iwasawa logarithm of a unit, exact at precision N.
    ///
    /// Splits off the Teichmüller part and sums log(1+x) on the principal
    /// part. Terms x^k/k are evaluated with internal guard digits so the p
    /// dividing k never costs visible precision; this agrees with the
    /// (q-1)^{-1} log(u^{q-1}) normalization because roots of unity have
    /// logarithm zero.
    pub fn iwasawa_log(&self) -> Result<PadicElement> {
        let v = self.valuation();
        if v > 0 {
            return Err(Error::NonUnit { valuation: v });
        }
        let n = self.ctx.precision();
        let omega = self.teichmuller()?;
        let principal = self.mul(&omega.inverse()?);

        // Terms with k - v_p(k) >= N vanish mod p^N; the guard absorbs the
        // division by p^(v_p(k)) for the terms that remain.
        let p = self.ctx.p();
        let mut k_max = 1usize;
        let mut guard = 0usize;
        for k in 1..=(n + 64) {
            let vk = vp_biguint(&BigUint::from(k), p, 64);
            if k - vk < n {
                k_max = k;
                guard = guard.max(vk);
            }
        }
        let gctx = self.ctx.with_precision(n + guard)?;
        let x = principal.lift_to(&gctx)?.sub(&gctx.one());
        debug_assert!(x.is_zero() || x.valuation() >= 1);

        let mut sum = gctx.zero();
        let mut xk = gctx.one();
        for k in 1..=k_max {
            xk = xk.mul(&x);
            if xk.is_zero() {
                break;
            }
            let vk = vp_biguint(&BigUint::from(k), p, 64);
            let unit_part = (k as u64) / p.pow(vk as u32);
            let term = xk
                .div_p_pow_exact(vk)?
                .mul(&gctx.from_u64(unit_part).inverse()?);
            if k % 2 == 1 {
                sum = sum.add(&term);
            } else {
                sum = sum.sub(&term);
            }
        }
        sum.lift_to(&self.ctx)
    }

    /// e-th root for p not dividing e. Chooses the Hensel lift of the
    /// lexicographically smallest residue-field root.
    pub fn nth_root(&self, e: u64) -> Result<PadicElement> {
        if e == 0 {
            return Err(Error::InvalidArgument("root exponent must be >= 1".into()));
        }
        if e == 1 {
            return Ok(self.clone());
        }
        if e % self.ctx.p() == 0 {
            return Err(Error::WildExponent);
        }
        let n = self.ctx.precision();
        let v = self.valuation();
        if v == n {
            return Err(Error::ZeroAtPrecision);
        }
        if v % (e as usize) != 0 {
            return Err(Error::RamifiedRoot {
                valuation: v,
                exponent: e,
            });
        }
        let unit_part = self.div_p_pow_exact(v)?;
        let rf = self.ctx.residue_field();
        let target = unit_part.residue();
        let root_res = rf
            .elements()
            .find(|z| !rf.is_zero(z) && rf.pow(z, e) == target)
            .ok_or(Error::NoResidueRoot { exponent: e })?;
        let mut y = self
            .ctx
            .from_coords(
                &root_res
                    .iter()
                    .map(|&c| BigInt::from(c))
                    .collect::<Vec<_>>(),
            )
            .expect("coordinate count matches");
        // Hensel: y <- y - (y^e - c)/(e y^(e-1)); the derivative is a unit.
        for _ in 0..=n {
            let ye1 = y.pow(e - 1);
            let fy = ye1.mul(&y).sub(&unit_part);
            if fy.is_zero() {
                break;
            }
            let dy = fy.mul(&ye1.mul_u64(e).inverse()?);
            y = y.sub(&dy);
        }
        Ok(y.mul_p_pow(v / (e as usize)))
    }

    /// Lexicographic comparison of residues mod p (coordinate vectors).
    pub fn residue_lex_cmp(&self, other: &PadicElement) -> std::cmp::Ordering {
        self.residue().cmp(&other.residue())
    }
}
