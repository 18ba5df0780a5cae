//! Exact integer-coefficient polynomials.
//!
//! This is the certainty side of the library: cyclotomic-type polynomials
//! `omega_n`, distinguished structure factors and every gcd feeding the
//! control-equation checks live here, over `BigInt`, with no p-adic
//! truncation anywhere.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial over Z, ascending coefficients.
/// Canonical form: empty vector for zero, nonzero leading coefficient
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPoly {
    coeffs: Vec<BigInt>,
}

impl ExactPoly {
    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ExactPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// The monomial T.
    pub fn t() -> Self {
        ExactPoly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = ExactPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    /// Distinguished: monic and every non-leading coefficient divisible by p.
    pub fn is_distinguished(&self, p: u64) -> bool {
        if !self.is_monic() {
            return false;
        }
        let pb = BigInt::from(p);
        self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .all(|c| (c % &pb).is_zero())
    }

    pub fn add(&self, other: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        ExactPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        ExactPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> ExactPoly {
        ExactPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &ExactPoly) -> ExactPoly {
        if self.is_zero() || other.is_zero() {
            return ExactPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> ExactPoly {
        ExactPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division by a monic divisor; exact over Z.
    pub fn div_rem_monic(&self, divisor: &ExactPoly) -> Result<(ExactPoly, ExactPoly)> {
        if !divisor.is_monic() {
            return Err(Error::InvalidArgument("divisor must be monic".into()));
        }
        let dd = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((ExactPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone();
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c.clone();
            for (j, m) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                let delta = &c * m;
                rem[idx] -= delta;
            }
        }
        rem.truncate(dd);
        Ok((ExactPoly::from_coeffs(quot), ExactPoly::from_coeffs(rem)))
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Content: gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = gcd_bigint(&g, c);
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> ExactPoly {
        if self.is_zero() {
            return ExactPoly::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        ExactPoly::from_coeffs(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// p-adic mu-invariant of the coefficient vector: the largest k with
    /// p^k dividing every coefficient.
    pub fn p_content_exponent(&self, p: u64) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let pb = BigInt::from(p);
        let mut v = usize::MAX;
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let mut m = c.clone();
            let mut k = 0;
            while (&m % &pb).is_zero() && k < v {
                m /= &pb;
                k += 1;
            }
            v = v.min(k);
            if v == 0 {
                break;
            }
        }
        Some(v)
    }

    /// gcd over Q, returned as a primitive polynomial in Z[T]
    /// (subresultant-free: primitive pseudo-remainder sequence).
    pub fn gcd(&self, other: &ExactPoly) -> ExactPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }
}

fn gcd_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.gcd(b)
}

/// Pseudo-remainder: lc(b)^(da-db+1) * a mod b, exact over Z.
fn pseudo_rem(a: &ExactPoly, b: &ExactPoly) -> ExactPoly {
    let da = a.degree().unwrap();
    let db = b.degree().unwrap();
    if da < db {
        return a.clone();
    }
    let lc = b.leading().unwrap().clone();
    let mut rem = a.coeffs.clone();
    for k in (db..=da).rev() {
        let c = rem[k].clone();
        // scale the whole remainder so the division stays integral
        for r in rem.iter_mut() {
            *r *= &lc;
        }
        if !c.is_zero() {
            for (j, m) in b.coeffs.iter().enumerate() {
                let idx = k - db + j;
                let delta = &c * m;
                rem[idx] -= delta;
            }
        }
        debug_assert!(rem[k].is_zero());
    }
    rem.truncate(db);
    ExactPoly::from_coeffs(rem)
}

/// (1 + T)^e reduced modulo a monic polynomial, by binary exponentiation in
/// Z[T]/(modulus). Exact; coefficients may be large.
pub fn one_plus_t_pow_mod(e: u64, modulus: &ExactPoly) -> Result<ExactPoly> {
    if !modulus.is_monic() {
        return Err(Error::InvalidArgument("modulus must be monic".into()));
    }
    let base = ExactPoly::from_i64(&[1, 1]);
    let (_, mut base) = base.div_rem_monic(modulus)?;
    // degree-0 modulus: everything reduces to zero
    if modulus.degree() == Some(0) {
        return Ok(ExactPoly::zero());
    }
    let mut acc = ExactPoly::one();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            let (_, r) = acc.mul(&base).div_rem_monic(modulus)?;
            acc = r;
        }
        let (_, sq) = base.mul(&base).div_rem_monic(modulus)?;
        base = sq;
        e >>= 1;
    }
    Ok(acc)
}

/// omega_n(T) = (1+T)^(p^n) - 1 as an exact integer polynomial of degree p^n.
pub fn omega_exact(p: u64, n: u32) -> ExactPoly {
    let e = p.checked_pow(n).expect("p^n overflows u64");
    // binomial coefficients C(e, k) by the multiplicative recurrence
    let mut coeffs = Vec::with_capacity(e as usize + 1);
    coeffs.push(BigInt::zero()); // (1+T)^e - 1 has constant term 0
    let mut c = BigInt::one();
    for k in 1..=e {
        c = c * BigInt::from(e - k + 1) / BigInt::from(k);
        coeffs.push(c.clone());
    }
    ExactPoly::from_coeffs(coeffs)
}

/// Degree of gcd(P, omega_n) over Q, for monic P. Reduces (1+T)^(p^n) mod P
/// first so the gcd runs at degree <= deg P.
pub fn deg_gcd_with_omega(poly: &ExactPoly, p: u64, n: u32) -> Result<usize> {
    if !poly.is_monic() {
        return Err(Error::InvalidArgument("factor must be monic".into()));
    }
    if poly.degree() == Some(0) {
        return Ok(0);
    }
    let e = p
        .checked_pow(n)
        .ok_or_else(|| Error::SizeLimit(format!("p^{n} overflows u64")))?;
    let reduced = one_plus_t_pow_mod(e, poly)?.sub(&ExactPoly::one());
    let g = poly.gcd(&reduced);
    Ok(g.degree().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn div_rem_roundtrip() {
        let a = ExactPoly::from_i64(&[3, 0, -2, 7, 1]);
        let b = ExactPoly::from_i64(&[-1, 2, 1]);
        let (q, r) = a.div_rem_monic(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn omega_small_cases() {
        assert_eq!(omega_exact(3, 0), ExactPoly::from_i64(&[0, 1]));
        assert_eq!(omega_exact(3, 1), ExactPoly::from_i64(&[0, 3, 3, 1]));
        assert!(omega_exact(5, 1).is_distinguished(5));
        assert!(omega_exact(3, 2).is_distinguished(3));
    }

    #[test]
    fn omega_tower_consistency() {
        // omega_{n+1}(T) = omega_n evaluated at (1+T)^p - 1
        for p in [3u64, 5] {
            let w0 = omega_exact(p, 0);
            let w1 = omega_exact(p, 1);
            let w2 = omega_exact(p, 2);
            let step = omega_exact(p, 1); // (1+T)^p - 1
            let compose = |f: &ExactPoly, g: &ExactPoly| {
                // f(g(T)) by Horner
                let mut acc = ExactPoly::zero();
                for c in f.coeffs().iter().rev() {
                    acc = acc.mul(g).add(&ExactPoly::constant(c.clone()));
                }
                acc
            };
            assert_eq!(compose(&w0, &step), w1);
            assert_eq!(compose(&w1, &step), w2);
        }
    }

    #[test]
    fn gcd_examples() {
        // gcd(T^2, T^3 + p) = 1 over Q
        let a = ExactPoly::from_i64(&[0, 0, 1]);
        let b = ExactPoly::from_i64(&[5, 0, 0, 1]);
        assert_eq!(a.gcd(&b).degree(), Some(0));
        // gcd(T(T-5), omega_n) = T for all small n at p=5
        let f = ExactPoly::t().mul(&ExactPoly::from_i64(&[-5, 1]));
        for n in 0..3 {
            assert_eq!(deg_gcd_with_omega(&f, 5, n).unwrap(), 1);
        }
        // T - p is coprime to every omega_n
        let f = ExactPoly::from_i64(&[-5, 1]);
        for n in 0..3 {
            assert_eq!(deg_gcd_with_omega(&f, 5, n).unwrap(), 0);
        }
        // omega_1/omega_0 has full gcd with omega_1 at p=3
        let (q, r) = omega_exact(3, 1).div_rem_monic(&ExactPoly::t()).unwrap();
        assert!(r.is_zero());
        assert_eq!(deg_gcd_with_omega(&q, 3, 1).unwrap(), 2);
    }

    #[test]
    fn p_content() {
        let f = ExactPoly::from_i64(&[25, 75, 5]);
        assert_eq!(f.p_content_exponent(5), Some(1));
        assert_eq!(ExactPoly::zero().p_content_exponent(5), None);
    }
}
