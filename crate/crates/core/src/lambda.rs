//! Arithmetic in the Iwasawa algebra `Λ = O[[T]]`, truncated in `T`.
//!
//! A series is a coefficient vector of length `D+1`; equality and all ring
//! operations are taken mod `(p^N, T^(D+1))`. Weierstrass preparation
//! factors a nonzero series as `p^μ · P · u` with `P` distinguished and `u`
//! a unit; since dividing out `p^μ` costs `μ` digits, the factors of a
//! series with positive `μ` are only determined mod `p^(N-μ)` and the
//! returned data records that achieved precision.
//!
//! Truncation degree `D` is chosen per computation. Operations that need a
//! unit coefficient below `D` fail loudly rather than auto-extend: `Λ` is not
//! computable in full and explicit windows keep results certifiable.

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::exact::{omega_exact, ExactPoly};
use crate::padic::{PadicContext, PadicElement};

/// Element of `Λ` truncated at `T^(D+1)`, with an optional exact integer
/// coefficient lift. The exact lift survives ring operations between exact
/// series and gates the certified gcd paths.
#[derive(Clone, Debug)]
pub struct IwasawaSeries {
    ctx: PadicContext,
    coeffs: Vec<PadicElement>,
    exact: Option<ExactPoly>,
}

impl PartialEq for IwasawaSeries {
    /// Coefficientwise at precision (p^N, T^(D+1)); the exact lift is a
    /// computational aid, not part of the value.
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.coeffs == other.coeffs
    }
}

impl Eq for IwasawaSeries {}

/// Weierstrass data of a nonzero series: `f = p^mu · P · unit` mod
/// `(p^precision, T^(D+1))` with `P` distinguished of degree `lambda`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassData {
    pub mu: usize,
    /// Distinguished polynomial, ascending coefficients, length lambda+1,
    /// leading coefficient 1. Coefficients are canonical residues mod
    /// p^precision.
    pub distinguished: Vec<PadicElement>,
    /// Unit cofactor, invertible constant term.
    pub unit: IwasawaSeries,
    /// Achieved coefficient precision N - mu.
    pub precision: usize,
}

impl WeierstrassData {
    pub fn lambda(&self) -> usize {
        self.distinguished.len() - 1
    }

    /// p^mu * P as a series, the canonical representative of the class of f
    /// up to units of Λ.
    pub fn canonical_series(&self, degree_bound: usize) -> IwasawaSeries {
        let ctx = self.unit.context().clone();
        let mut coeffs = vec![ctx.zero(); degree_bound + 1];
        for (i, c) in self.distinguished.iter().enumerate() {
            if i <= degree_bound {
                coeffs[i] = c.mul_p_pow(self.mu);
            }
        }
        IwasawaSeries::from_coeffs(ctx, coeffs)
    }

    /// Recomposition p^mu · P · unit at the stated precision.
    pub fn recompose(&self, degree_bound: usize) -> IwasawaSeries {
        let ctx = self.unit.context().clone();
        let p_poly = IwasawaSeries::from_coeffs_padded(
            ctx.clone(),
            self.distinguished.clone(),
            degree_bound,
        );
        p_poly.mul(&self.unit).mul_p_pow(self.mu)
    }
}

/// Order of a finite quotient: a power of q, or infinite at precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendedOrder {
    Finite { q_exponent: usize, order: BigUint },
    Infinite,
}

impl ExtendedOrder {
    pub fn finite(ctx: &PadicContext, q_exponent: usize) -> Self {
        ExtendedOrder::Finite {
            q_exponent,
            order: BigUint::from(ctx.q()).pow(q_exponent as u32),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedOrder::Finite { .. })
    }
}

impl IwasawaSeries {
    pub fn zero(ctx: &PadicContext, degree_bound: usize) -> Self {
        IwasawaSeries {
            ctx: ctx.clone(),
            coeffs: vec![ctx.zero(); degree_bound + 1],
            exact: Some(ExactPoly::zero()),
        }
    }

    pub fn one(ctx: &PadicContext, degree_bound: usize) -> Self {
        Self::from_exact(ctx, degree_bound, ExactPoly::one())
    }

    /// The variable T.
    pub fn t(ctx: &PadicContext, degree_bound: usize) -> Self {
        Self::from_exact(ctx, degree_bound, ExactPoly::t())
    }

    pub fn from_coeffs(ctx: PadicContext, coeffs: Vec<PadicElement>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        IwasawaSeries {
            ctx,
            coeffs,
            exact: None,
        }
    }

    /// From a coefficient prefix, zero-padded up to the degree bound.
    pub fn from_coeffs_padded(
        ctx: PadicContext,
        mut coeffs: Vec<PadicElement>,
        degree_bound: usize,
    ) -> Self {
        while coeffs.len() <= degree_bound {
            coeffs.push(ctx.zero());
        }
        coeffs.truncate(degree_bound + 1);
        IwasawaSeries {
            ctx,
            coeffs,
            exact: None,
        }
    }

    /// From an exact integer polynomial (truncated at the degree bound; the
    /// exact lift is dropped if truncation actually cuts coefficients off).
    pub fn from_exact(ctx: &PadicContext, degree_bound: usize, poly: ExactPoly) -> Self {
        let mut coeffs = Vec::with_capacity(degree_bound + 1);
        for i in 0..=degree_bound {
            coeffs.push(ctx.from_bigint(&poly.coeff(i)));
        }
        let exact = if poly.degree().unwrap_or(0) <= degree_bound {
            Some(poly)
        } else {
            None
        };
        IwasawaSeries {
            ctx: ctx.clone(),
            coeffs,
            exact,
        }
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[PadicElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> PadicElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    /// The exact integer lift, when the series is tracked exactly.
    pub fn exact(&self) -> Option<&ExactPoly> {
        self.exact.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn assert_same_ctx(&self, other: &IwasawaSeries) {
        assert!(self.ctx == other.ctx, "series from different contexts");
    }

    pub fn add(&self, other: &IwasawaSeries) -> IwasawaSeries {
        self.assert_same_ctx(other);
        let d = self.degree_bound().min(other.degree_bound());
        let coeffs = (0..=d)
            .map(|i| self.coeffs[i].add(&other.coeffs[i]))
            .collect();
        let exact = match (&self.exact, &other.exact) {
            (Some(a), Some(b)) if a.degree().unwrap_or(0).max(b.degree().unwrap_or(0)) <= d => {
                Some(a.add(b))
            }
            _ => None,
        };
        IwasawaSeries {
            ctx: self.ctx.clone(),
            coeffs,
            exact,
        }
    }

    pub fn sub(&self, other: &IwasawaSeries) -> IwasawaSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IwasawaSeries {
        IwasawaSeries {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            exact: self.exact.as_ref().map(|e| e.neg()),
        }
    }

    pub fn mul(&self, other: &IwasawaSeries) -> IwasawaSeries {
        self.assert_same_ctx(other);
        let d = self.degree_bound().min(other.degree_bound());
        let mut coeffs = vec![self.ctx.zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        let exact = match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => {
                let prod = a.mul(b);
                if prod.degree().unwrap_or(0) <= d {
                    Some(prod)
                } else {
                    None
                }
            }
            _ => None,
        };
        IwasawaSeries {
            ctx: self.ctx.clone(),
            coeffs,
            exact,
        }
    }

    pub fn scale(&self, c: &PadicElement) -> IwasawaSeries {
        IwasawaSeries {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
            exact: None,
        }
    }

    pub fn mul_p_pow(&self, k: usize) -> IwasawaSeries {
        IwasawaSeries {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul_p_pow(k)).collect(),
            exact: self
                .exact
                .as_ref()
                .map(|e| e.scale(&BigInt::from(self.ctx.p()).pow(k as u32))),
        }
    }

    /// Truncate or zero-extend to a new degree bound. Extension is only
    /// faithful for exact series; for plain series the tail is unknown, so
    /// extension keeps the exact lift only when one is present.
    pub fn with_degree_bound(&self, degree_bound: usize) -> IwasawaSeries {
        if let Some(e) = &self.exact {
            if e.degree().unwrap_or(0) <= degree_bound {
                return Self::from_exact(&self.ctx, degree_bound, e.clone());
            }
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(degree_bound + 1);
        while coeffs.len() <= degree_bound {
            coeffs.push(self.ctx.zero());
        }
        IwasawaSeries {
            ctx: self.ctx.clone(),
            coeffs,
            exact: None,
        }
    }

    /// Smallest coefficient valuation (the mu-invariant candidate); N when
    /// the series vanishes at precision.
    pub fn min_valuation(&self) -> usize {
        self.coeffs
            .iter()
            .map(|c| c.valuation())
            .min()
            .unwrap_or(self.ctx.precision())
    }

    /// Divide every coefficient's canonical representative by p^k.
    /// The result is determined mod p^(N-k).
    pub fn div_p_pow_exact(&self, k: usize) -> Result<IwasawaSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.div_p_pow_exact(k))
            .collect::<Result<Vec<_>>>()?;
        Ok(IwasawaSeries {
            ctx: self.ctx.clone(),
            coeffs,
            exact: None,
        })
    }

    /// True iff the constant term is a unit.
    pub fn is_unit_series(&self) -> bool {
        self.coeffs[0].is_unit()
    }

    /// Inverse of a unit series mod (p^N, T^(D+1)).
    pub fn invert(&self) -> Result<IwasawaSeries> {
        let d = self.degree_bound();
        let c0_inv = self.coeffs[0]
            .inverse()
            .map_err(|_| Error::ZeroDivisor)?;
        let mut out = vec![self.ctx.zero(); d + 1];
        out[0] = c0_inv.clone();
        for n in 1..=d {
            let mut acc = self.ctx.zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() || out[n - k].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[k].mul(&out[n - k]));
            }
            out[n] = acc.mul(&c0_inv).neg();
        }
        Ok(IwasawaSeries {
            ctx: self.ctx.clone(),
            coeffs: out,
            exact: None,
        })
    }

    /// Evaluate at a topologically nilpotent point. The value is exact at
    /// precision min(N, D+1): the unknown tail of the series only
    /// contributes beyond p^(D+1).
    pub fn evaluate(&self, t: &PadicElement) -> Result<PadicElement> {
        if t.valuation() == 0 {
            return Err(Error::NotTopologicallyNilpotent);
        }
        let mut acc = self.ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(t).add(c);
        }
        Ok(acc)
    }

    /// Precision at which `evaluate` is exact.
    pub fn evaluation_precision(&self) -> usize {
        self.ctx.precision().min(self.degree_bound() + 1)
    }
}

/// omega_n(T) = (1+T)^(p^n) - 1 as a series, with its exact lift.
pub fn omega(ctx: &PadicContext, degree_bound: usize, n: u32) -> Result<IwasawaSeries> {
    let p = ctx.p();
    let pn = p
        .checked_pow(n)
        .ok_or_else(|| Error::SizeLimit(format!("p^{n} overflows u64")))?;
    if pn as usize > degree_bound {
        return Err(Error::InsufficientDegree {
            degree: degree_bound,
        });
    }
    Ok(IwasawaSeries::from_exact(
        ctx,
        degree_bound,
        omega_exact(p, n),
    ))
}

/// Weierstrass preparation: factor a nonzero series as p^mu · P · u.
///
/// The factors are found by the contracting fixed-point iteration on the
/// coefficient equations of P·u = f/p^mu, one p-digit per round, with the
/// unit's top lambda coefficients pinned to zero so that the recomposition
/// matches through degree D.
pub fn weierstrass_prepare(f: &IwasawaSeries) -> Result<WeierstrassData> {
    let ctx = f.context();
    let n = ctx.precision();
    let d = f.degree_bound();
    let mu = f.min_valuation();
    if mu == n {
        return Err(Error::ZeroAtPrecision);
    }
    let nu = n - mu;
    let work_ctx = ctx.with_precision(nu)?;
    // f' = f / p^mu in the reduced-precision ring
    let fp: Vec<PadicElement> = f
        .coeffs()
        .iter()
        .map(|c| {
            c.div_p_pow_exact(mu)
                .expect("mu divides every coefficient")
                .lift_to(&work_ctx)
                .expect("same modulus")
        })
        .collect();
    let lambda = match fp.iter().position(|c| c.is_unit()) {
        Some(l) if l < d => l,
        _ => return Err(Error::InsufficientDegree { degree: d }),
    };

    let lift_back = |c: &PadicElement| c.lift_to(ctx).expect("same modulus");

    if lambda == 0 {
        // already a unit series
        let unit = IwasawaSeries::from_coeffs(ctx.clone(), fp.iter().map(lift_back).collect());
        return Ok(WeierstrassData {
            mu,
            distinguished: vec![ctx.one()],
            unit,
            precision: nu,
        });
    }

    // unknowns: lower coefficients c_0..c_{lambda-1} of P (all in pO) and
    // unit coefficients u_0..u_{D-lambda} (u_j = 0 for j > D-lambda)
    let mut c = vec![work_ctx.zero(); lambda];
    let mut u: Vec<PadicElement> = fp[lambda..=d].to_vec();
    let top = d - lambda;
    for _round in 0..=nu {
        // u-update from the degree-k equations, k = lambda..D
        let mut new_u = vec![work_ctx.zero(); top + 1];
        for k in lambda..=d {
            let mut acc = fp[k].clone();
            for (i, ci) in c.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                let j = k - i;
                if j <= top {
                    acc = acc.sub(&ci.mul(&u[j]));
                }
            }
            new_u[k - lambda] = acc;
        }
        let u0_inv = new_u[0].inverse().expect("unit constant term");
        // c-update from the degree-k equations, k = 0..lambda-1
        let mut new_c = vec![work_ctx.zero(); lambda];
        for k in 0..lambda {
            let mut acc = fp[k].clone();
            for i in 0..k {
                let j = k - i;
                if j <= top && !new_c[i].is_zero() {
                    acc = acc.sub(&new_c[i].mul(&new_u[j]));
                }
            }
            new_c[k] = acc.mul(&u0_inv);
        }
        let stable = new_u == u && new_c == c;
        u = new_u;
        c = new_c;
        if stable {
            break;
        }
    }

    debug_assert!(c.iter().all(|ci| ci.is_zero() || ci.valuation() >= 1));
    let mut distinguished: Vec<PadicElement> = c.iter().map(lift_back).collect();
    distinguished.push(ctx.one());
    let mut unit_coeffs: Vec<PadicElement> = u.iter().map(lift_back).collect();
    while unit_coeffs.len() <= d {
        unit_coeffs.push(ctx.zero());
    }
    Ok(WeierstrassData {
        mu,
        distinguished,
        unit: IwasawaSeries::from_coeffs(ctx.clone(), unit_coeffs),
        precision: nu,
    })
}

/// mu and lambda invariants of a nonzero series.
pub fn mu_lambda(f: &IwasawaSeries) -> Result<(usize, usize)> {
    let w = weierstrass_prepare(f)?;
    Ok((w.mu, w.lambda()))
}

fn is_distinguished_padic(poly: &[PadicElement]) -> bool {
    if poly.is_empty() {
        return false;
    }
    let last = poly.len() - 1;
    if poly[last] != poly[last].context().one() {
        return false;
    }
    poly[..last].iter().all(|c| c.valuation() >= 1)
}

/// Polynomial division by a monic polynomial over O; exact at precision.
fn poly_div_rem_monic(
    dividend: &[PadicElement],
    divisor: &[PadicElement],
) -> (Vec<PadicElement>, Vec<PadicElement>) {
    let ctx = divisor.last().unwrap().context().clone();
    let dd = divisor.len() - 1;
    let mut rem: Vec<PadicElement> = dividend.to_vec();
    if rem.len() <= dd {
        return (vec![ctx.zero()], rem);
    }
    let mut quot = vec![ctx.zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - dd] = c.clone();
        for (j, m) in divisor.iter().enumerate() {
            let idx = k - dd + j;
            rem[idx] = rem[idx].sub(&c.mul(m));
        }
    }
    rem.truncate(dd.max(1));
    (quot, rem)
}

/// Weierstrass division of a series by a distinguished polynomial:
/// g = q·P + r with deg r < deg P, valid mod (p^N, T^(D+1-deg P)).
pub fn weierstrass_divide(
    g: &IwasawaSeries,
    distinguished: &[PadicElement],
) -> Result<(IwasawaSeries, Vec<PadicElement>)> {
    if !is_distinguished_padic(distinguished) {
        return Err(Error::NotDistinguished);
    }
    let ctx = g.context();
    let d = g.degree_bound();
    let lambda = distinguished.len() - 1;
    if lambda > d {
        return Err(Error::InsufficientDegree { degree: d });
    }
    if lambda == 0 {
        // P = 1
        return Ok((g.clone(), vec![ctx.zero()]));
    }
    // P = T^lambda + a with a in pO[T], deg a < lambda:
    // the quotient is the fixed point of q -> shift_down(g - a·q, lambda).
    let qd = d - lambda;
    let lower = &distinguished[..lambda];
    let mut q = vec![ctx.zero(); qd + 1];
    for _round in 0..=ctx.precision() {
        // t = g - a·q, then shift down by lambda
        let mut t: Vec<PadicElement> = g.coeffs().to_vec();
        for (i, a) in lower.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, qj) in q.iter().enumerate() {
                if i + j > d || qj.is_zero() {
                    continue;
                }
                t[i + j] = t[i + j].sub(&a.mul(qj));
            }
        }
        let new_q: Vec<PadicElement> = t[lambda..=lambda + qd].to_vec();
        if new_q == q {
            break;
        }
        q = new_q;
    }
    // r = g - q·P, truncated below lambda
    let q_series = IwasawaSeries::from_coeffs_padded(ctx.clone(), q.clone(), d);
    let p_series = IwasawaSeries::from_coeffs_padded(ctx.clone(), distinguished.to_vec(), d);
    let r_full = g.sub(&q_series.mul(&p_series));
    let r = r_full.coeffs()[..lambda].to_vec();
    Ok((
        IwasawaSeries::from_coeffs(ctx.clone(), q),
        r,
    ))
}

/// Divisibility f | g in Λ (or in Λ[1/p] when `invert_p`), decided through
/// the Weierstrass factorizations at the achieved precision.
pub fn divides(f: &IwasawaSeries, g: &IwasawaSeries, invert_p: bool) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    if g.is_zero() {
        return Ok(true);
    }
    let wf = weierstrass_prepare(f)?;
    let wg = weierstrass_prepare(g)?;
    if !invert_p && wf.mu > wg.mu {
        return Ok(false);
    }
    if wf.lambda() > wg.lambda() {
        return Ok(false);
    }
    if wf.lambda() == 0 {
        return Ok(true);
    }
    let precision = wf.precision.min(wg.precision);
    let (_, r) = poly_div_rem_monic(&wg.distinguished, &wf.distinguished);
    Ok(r.iter().all(|c| c.valuation() >= precision))
}

/// Canonical representative of the class of f up to units of Λ:
/// p^mu times the distinguished part.
pub fn canonical_form(f: &IwasawaSeries) -> Result<IwasawaSeries> {
    let w = weierstrass_prepare(f)?;
    Ok(w.canonical_series(f.degree_bound()))
}

/// Order of O[[T]]/(f, T) = O/(f(0)): q^{v(evaluate(f, 0))}, infinite when
/// the constant term vanishes at precision (the trivial-zero signal).
pub fn constant_quotient_order(f: &IwasawaSeries) -> Result<ExtendedOrder> {
    if f.is_zero() {
        return Err(Error::ZeroAtPrecision);
    }
    let c0 = f.evaluate(&f.context().zero())?;
    let v = c0.valuation();
    if v == f.context().precision() {
        return Ok(ExtendedOrder::Infinite);
    }
    Ok(ExtendedOrder::finite(f.context(), v))
}

/// ord_T of f at precision: the least index whose coefficient is certified
/// nonzero. Precision-ambiguous when every coefficient vanishes at
/// precision.
pub fn order_of_vanishing_at_zero(f: &IwasawaSeries) -> Result<usize> {
    let n = f.context().precision();
    for (i, c) in f.coeffs().iter().enumerate() {
        if c.valuation() < n {
            return Ok(i);
        }
    }
    Err(Error::PrecisionAmbiguous(
        "no coefficient is certified nonzero".into(),
    ))
}

/// Certified coprimality of f with omega_n(T)/T, the non-vanishing of f at
/// the points zeta - 1 for zeta of exact order p^m, 1 <= m <= n, restated
/// without ramified evaluation.
///
/// Exact-lift inputs run entirely over Z (subresultant-style gcd); plain
/// p-adic inputs run a Euclid whose pivots must be certified, with the p
/// stripped from non-unit leading coefficients charged against the working
/// precision.
pub fn coprime_to_cyclotomic(f: &IwasawaSeries, n: u32) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroAtPrecision);
    }
    let p = f.context().p();
    if let Some(exact) = f.exact() {
        let omega_n = omega_exact(p, n);
        let (omega_div_t, r) = omega_n.div_rem_monic(&ExactPoly::t())?;
        debug_assert!(r.is_zero());
        let g = exact.gcd(&omega_div_t);
        return Ok(g.degree().unwrap_or(0) == 0);
    }
    let w = weierstrass_prepare(f)?;
    // omega_n / T reduced into O at the working precision
    let ctx = f.context();
    let omega_n = omega_exact(p, n);
    let (omega_div_t, _) = omega_n.div_rem_monic(&ExactPoly::t())?;
    let b: Vec<PadicElement> = omega_div_t
        .coeffs()
        .iter()
        .map(|c| ctx.from_bigint(c))
        .collect();
    let g = certified_monic_gcd(&w.distinguished, &b, w.precision)?;
    Ok(g.len() == 1)
}

/// Monic gcd over Frac(O) by a Euclid with precision accounting: pivots must
/// be certified units after stripping the p-content of each remainder, and
/// every stripped p costs a digit of working precision.
pub(crate) fn certified_monic_gcd(
    a: &[PadicElement],
    b: &[PadicElement],
    precision: usize,
) -> Result<Vec<PadicElement>> {
    let ctx = a.last().unwrap().context().clone();
    let mut a: Vec<PadicElement> = a.to_vec();
    let mut b: Vec<PadicElement> = b.to_vec();
    let mut w = precision.min(ctx.precision());
    let trim = |v: &mut Vec<PadicElement>, w: usize| {
        while v.len() > 1 && v.last().unwrap().reduce_mod(w).valuation() >= w {
            v.pop();
        }
    };
    trim(&mut a, w);
    trim(&mut b, w);
    loop {
        if b.len() < a.len() {
            std::mem::swap(&mut a, &mut b);
        }
        // a is the lower-degree polynomial; terminate on constants
        if a.len() == 1 {
            if a[0].reduce_mod(w).valuation() < w {
                return Ok(vec![ctx.one()]); // nonzero constant: coprime
            }
            // remainder chain ended in 0: the gcd is the previous divisor,
            // normalized monic
            return monicize(&b, w);
        }
        // strip the p-content of a, charging it against the precision
        let strip = a
            .iter()
            .map(|c| c.reduce_mod(w).valuation().min(w))
            .min()
            .unwrap();
        if strip > 0 {
            if strip >= w {
                return Err(Error::PrecisionAmbiguous(
                    "remainder vanishes at working precision".into(),
                ));
            }
            for c in a.iter_mut() {
                *c = c.reduce_mod(w).div_p_pow_exact(strip)?;
            }
            w -= strip;
            trim(&mut a, w);
            trim(&mut b, w);
            if a.len() == 1 {
                continue;
            }
        }
        let lead = a.last().unwrap().reduce_mod(w);
        if lead.valuation() > 0 {
            return Err(Error::PrecisionAmbiguous(
                "leading coefficient is not a certified unit".into(),
            ));
        }
        let lead_inv = lead.inverse().expect("unit");
        let monic: Vec<PadicElement> = a.iter().map(|c| c.mul(&lead_inv)).collect();
        let (_, mut r) = poly_div_rem_monic(&b, &monic);
        for c in r.iter_mut() {
            *c = c.reduce_mod(w);
        }
        trim(&mut r, w);
        if r.iter().all(|c| c.reduce_mod(w).valuation() >= w) {
            // a divides b: a (made monic) is the gcd
            return monicize(&a, w);
        }
        b = a;
        a = r;
    }
}

fn monicize(poly: &[PadicElement], w: usize) -> Result<Vec<PadicElement>> {
    let lead = poly.last().unwrap().reduce_mod(w);
    if lead.valuation() > 0 {
        return Err(Error::PrecisionAmbiguous(
            "gcd leading coefficient is not a certified unit".into(),
        ));
    }
    let inv = lead.inverse().expect("unit");
    Ok(poly.iter().map(|c| c.mul(&inv).reduce_mod(w)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn zp(p: u64, n: usize) -> PadicContext {
        PadicContext::unramified(p, 1, n).unwrap()
    }

    fn series_i64(ctx: &PadicContext, d: usize, coeffs: &[i64]) -> IwasawaSeries {
        IwasawaSeries::from_exact(ctx, d, ExactPoly::from_i64(coeffs))
    }

    #[test]
    fn prepare_already_distinguished() {
        let ctx = zp(5, 6);
        let f = series_i64(&ctx, 10, &[5, 1]); // T + p
        let w = weierstrass_prepare(&f).unwrap();
        assert_eq!(w.mu, 0);
        assert_eq!(w.lambda(), 1);
        assert_eq!(w.distinguished, vec![ctx.from_u64(5), ctx.one()]);
        assert_eq!(w.unit, IwasawaSeries::one(&ctx, 10));
        assert_eq!(w.recompose(10), f);
    }

    #[test]
    fn prepare_pure_mu() {
        let ctx = zp(5, 6);
        let f = series_i64(&ctx, 8, &[5, 5]); // p(1+T)
        let w = weierstrass_prepare(&f).unwrap();
        assert_eq!(w.mu, 1);
        assert_eq!(w.lambda(), 0);
        assert_eq!(w.precision, 5);
        assert_eq!(w.distinguished, vec![ctx.one()]);
        assert_eq!(w.recompose(8), f);
    }

    #[test]
    fn prepare_two_small_roots() {
        let ctx = zp(5, 8);
        let d = 12;
        // (T - p)(T - p^2)(1 + pT)
        let a = series_i64(&ctx, d, &[-5, 1]);
        let b = series_i64(&ctx, d, &[-25, 1]);
        let u = series_i64(&ctx, d, &[1, 5]);
        let f = a.mul(&b).mul(&u);
        let w = weierstrass_prepare(&f).unwrap();
        assert_eq!(w.mu, 0);
        assert_eq!(w.lambda(), 2);
        let expected = a.mul(&b);
        for i in 0..=2 {
            assert_eq!(w.distinguished[i], expected.coeff(i), "coefficient {i}");
        }
        assert_eq!(w.unit, u.with_degree_bound(d));
        assert_eq!(w.recompose(d), f);
    }

    #[test]
    fn prepare_rejects_degenerate_inputs() {
        let ctx = zp(3, 4);
        let zero = IwasawaSeries::zero(&ctx, 6);
        assert!(matches!(
            weierstrass_prepare(&zero),
            Err(Error::ZeroAtPrecision)
        ));
        // all coefficients divisible by p and no unit below D after mu
        let f = series_i64(&ctx, 3, &[3, 9, 27, 81]);
        // f / 3 = [1, 3, 9, 27]: unit at index 0, fine; use T-power instead
        let w = weierstrass_prepare(&f).unwrap();
        assert_eq!(w.mu, 1);
        let g = series_i64(&ctx, 3, &[0, 0, 0, 1]); // T^3 with D = 3
        assert!(matches!(
            weierstrass_prepare(&g),
            Err(Error::InsufficientDegree { .. })
        ));
    }

    #[test]
    fn mu_lambda_examples() {
        let ctx = zp(5, 8);
        // p^2 (T^3 + p)
        let f = series_i64(&ctx, 10, &[125, 0, 0, 25]);
        assert_eq!(mu_lambda(&f).unwrap(), (2, 3));
        let one = IwasawaSeries::one(&ctx, 10);
        assert_eq!(mu_lambda(&one).unwrap(), (0, 0));
        let ctx3 = zp(3, 6);
        let w1 = omega(&ctx3, 10, 1).unwrap();
        assert_eq!(mu_lambda(&w1).unwrap(), (0, 3));
    }

    #[test]
    fn omega_small() {
        let ctx = zp(3, 5);
        assert_eq!(omega(&ctx, 8, 0).unwrap(), IwasawaSeries::t(&ctx, 8));
        assert_eq!(
            omega(&ctx, 8, 1).unwrap(),
            series_i64(&ctx, 8, &[0, 3, 3, 1])
        );
        assert!(matches!(
            omega(&ctx, 2, 1),
            Err(Error::InsufficientDegree { .. })
        ));
    }

    #[test]
    fn divide_examples() {
        let ctx = zp(5, 6);
        let d = 10;
        let p_poly = vec![ctx.from_u64(5), ctx.one()]; // T + p
        let g = series_i64(&ctx, d, &[5, 1]);
        let (q, r) = weierstrass_divide(&g, &p_poly).unwrap();
        assert_eq!(q.coeff(0), ctx.one());
        assert!(r.iter().all(|c| c.is_zero()));

        let t_poly = vec![ctx.zero(), ctx.one()];
        let g = series_i64(&ctx, d, &[0, 0, 1]); // T^2
        let (q, r) = weierstrass_divide(&g, &t_poly).unwrap();
        assert_eq!(q.coeff(1), ctx.one());
        assert!(r.iter().all(|c| c.is_zero()));

        assert!(matches!(
            weierstrass_divide(&g, &[ctx.from_u64(2), ctx.one()]),
            Err(Error::NotDistinguished)
        ));
    }

    #[test]
    fn divide_roundtrip_random_shape() {
        let ctx = zp(3, 6);
        let d = 9;
        let p_poly = vec![ctx.from_u64(3), ctx.from_u64(6), ctx.one()]; // T^2+6T+3
        let g = series_i64(&ctx, d, &[7, 2, 5, 1, 0, 4, 2, 0, 1, 3]);
        let (q, r) = weierstrass_divide(&g, &p_poly).unwrap();
        let recomposed = q
            .mul(&IwasawaSeries::from_coeffs_padded(
                ctx.clone(),
                p_poly.clone(),
                d,
            ))
            .add(&IwasawaSeries::from_coeffs_padded(ctx.clone(), r, d));
        // valid mod (p^N, T^(D+1-deg P))
        for i in 0..=d - 2 {
            assert_eq!(recomposed.coeff(i), g.coeff(i), "degree {i}");
        }
    }

    #[test]
    fn divides_examples() {
        let ctx = zp(3, 6);
        let d = 12;
        let t = IwasawaSeries::t(&ctx, d);
        for n in 0..2 {
            let w = omega(&ctx, d, n).unwrap();
            assert!(divides(&t, &w, false).unwrap());
        }
        let p_series = series_i64(&ctx, d, &[3]);
        let one = IwasawaSeries::one(&ctx, d);
        assert!(divides(&p_series, &one, true).unwrap());
        assert!(!divides(&p_series, &one, false).unwrap());

        let f = series_i64(&ctx, d, &[3, 1, 2]);
        let g = series_i64(&ctx, d, &[1, 0, 0, 2]);
        assert!(divides(&f, &f.mul(&g), false).unwrap());
        assert!(matches!(
            divides(&IwasawaSeries::zero(&ctx, d), &f, false),
            Err(Error::ZeroDivisor)
        ));
    }

    #[test]
    fn evaluate_examples() {
        let ctx = zp(5, 6);
        let d = 8;
        let f = series_i64(&ctx, d, &[7, 3, 1]);
        assert_eq!(f.evaluate(&ctx.zero()).unwrap(), ctx.from_u64(7));
        let w0 = omega(&ctx, d, 0).unwrap();
        assert_eq!(w0.evaluate(&ctx.from_u64(5)).unwrap(), ctx.from_u64(5));
        let tp = series_i64(&ctx, d, &[-5, 1]);
        assert!(tp.evaluate(&ctx.from_u64(5)).unwrap().is_zero());
        assert!(matches!(
            f.evaluate(&ctx.one()),
            Err(Error::NotTopologicallyNilpotent)
        ));
    }

    #[test]
    fn constant_order_examples() {
        let ctx = zp(5, 6);
        let d = 8;
        let tp = series_i64(&ctx, d, &[-5, 1]);
        assert_eq!(
            constant_quotient_order(&tp).unwrap(),
            ExtendedOrder::finite(&ctx, 1)
        );
        let one = IwasawaSeries::one(&ctx, d);
        assert_eq!(
            constant_quotient_order(&one).unwrap(),
            ExtendedOrder::finite(&ctx, 0)
        );
        let t = IwasawaSeries::t(&ctx, d);
        assert_eq!(constant_quotient_order(&t).unwrap(), ExtendedOrder::Infinite);
    }

    #[test]
    fn ord_t_examples() {
        let ctx = zp(5, 6);
        let d = 8;
        let f = series_i64(&ctx, d, &[0, 0, 1, 1]); // T^2(1+T)
        assert_eq!(order_of_vanishing_at_zero(&f).unwrap(), 2);
        let g = series_i64(&ctx, d, &[5, 1]);
        assert_eq!(order_of_vanishing_at_zero(&g).unwrap(), 0);
        let ctx3 = zp(3, 6);
        let w1 = omega(&ctx3, 8, 1).unwrap();
        assert_eq!(order_of_vanishing_at_zero(&w1).unwrap(), 1);
        assert!(matches!(
            order_of_vanishing_at_zero(&IwasawaSeries::zero(&ctx, d)),
            Err(Error::PrecisionAmbiguous(_))
        ));
    }

    #[test]
    fn coprimality_examples() {
        let ctx = zp(3, 6);
        let d = 12;
        let t = IwasawaSeries::t(&ctx, d);
        for n in 0..3 {
            assert!(coprime_to_cyclotomic(&t, n).unwrap());
        }
        // omega_1/omega_0 shares a factor with omega_n for n >= 1
        let w1 = omega(&ctx, d, 1).unwrap();
        let q = series_i64(&ctx, d, &[3, 3, 1]);
        assert!(coprime_to_cyclotomic(&q, 0).unwrap());
        assert!(!coprime_to_cyclotomic(&q, 1).unwrap());
        assert!(!coprime_to_cyclotomic(&q, 2).unwrap());
        let _ = w1;
        // T - p is coprime to every omega_n, decided exactly
        let tp = series_i64(&ctx, d, &[-3, 1]);
        assert!(tp.exact().is_some());
        for n in 0..3 {
            assert!(coprime_to_cyclotomic(&tp, n).unwrap());
        }
        // the p-adic path agrees when the lift is dropped
        let tp_opaque =
            IwasawaSeries::from_coeffs(ctx.clone(), tp.coeffs().to_vec());
        for n in 0..2 {
            assert!(coprime_to_cyclotomic(&tp_opaque, n).unwrap());
        }
    }

    #[test]
    fn canonical_form_strips_units() {
        let ctx = zp(5, 8);
        let d = 10;
        let f = series_i64(&ctx, d, &[-5, 1]); // T - p
        let u = series_i64(&ctx, d, &[2, 5, 1, 0, 3]); // unit
        let fu = f.mul(&u);
        assert_eq!(canonical_form(&fu).unwrap(), canonical_form(&f).unwrap());
        let c = canonical_form(&fu).unwrap();
        assert_eq!(c.coeff(0), ctx.from_i64(-5));
        assert_eq!(c.coeff(1), ctx.one());
    }

    #[test]
    fn exact_lift_propagates_through_ring_ops() {
        let ctx = zp(5, 6);
        let d = 6;
        let a = series_i64(&ctx, d, &[1, 2]);
        let b = series_i64(&ctx, d, &[-5, 1]);
        assert!(a.mul(&b).exact().is_some());
        assert!(a.add(&b).exact().is_some());
        let opaque = IwasawaSeries::from_coeffs(ctx.clone(), a.coeffs().to_vec());
        assert!(opaque.mul(&b).exact().is_none());
        // exact data must match the residues
        let prod = a.mul(&b);
        let e = prod.exact().unwrap().clone();
        for i in 0..=d {
            assert_eq!(prod.coeff(i), ctx.from_bigint(&e.coeff(i)));
        }
        let _ = BigInt::from(0);
    }
}
