//! Dense linear algebra over `O` at precision: determinants, elementary
//! divisors in the discrete valuation ring, certified kernel dimensions,
//! and the regular-representation expansion into integer matrices that
//! feeds the exact brute-force oracles.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::padic::{PadicContext, PadicElement};

/// Square matrix over O, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct OMatrix {
    ctx: PadicContext,
    size: usize,
    entries: Vec<PadicElement>,
}

impl OMatrix {
    pub fn new(ctx: PadicContext, size: usize, entries: Vec<PadicElement>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for a {size}x{size} matrix, got {}",
                size * size,
                entries.len()
            )));
        }
        Ok(OMatrix { ctx, size, entries })
    }

    pub fn identity(ctx: &PadicContext, size: usize) -> Self {
        let mut entries = vec![ctx.zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = ctx.one();
        }
        OMatrix {
            ctx: ctx.clone(),
            size,
            entries,
        }
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &PadicElement {
        &self.entries[i * self.size + j]
    }

    pub fn entries(&self) -> &[PadicElement] {
        &self.entries
    }

    pub fn map<F: Fn(&PadicElement) -> PadicElement>(&self, f: F) -> Self {
        OMatrix {
            ctx: self.ctx.clone(),
            size: self.size,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn map_fallible<F: Fn(&PadicElement) -> Result<PadicElement>>(
        &self,
        f: F,
    ) -> Result<Self> {
        Ok(OMatrix {
            ctx: self.ctx.clone(),
            size: self.size,
            entries: self
                .entries
                .iter()
                .map(f)
                .collect::<Result<Vec<_>>>()?,
        })
    }

    pub fn mul(&self, other: &OMatrix) -> OMatrix {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut out = vec![self.ctx.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out[i * n + j] = out[i * n + j].add(&a.mul(b));
                }
            }
        }
        OMatrix {
            ctx: self.ctx.clone(),
            size: n,
            entries: out,
        }
    }

    pub fn sub(&self, other: &OMatrix) -> OMatrix {
        assert_eq!(self.size, other.size);
        OMatrix {
            ctx: self.ctx.clone(),
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    /// self + c * other.
    pub fn add_scaled(&self, other: &OMatrix, c: &PadicElement) -> OMatrix {
        assert_eq!(self.size, other.size);
        OMatrix {
            ctx: self.ctx.clone(),
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(&b.mul(c)))
                .collect(),
        }
    }

    /// Determinant by cofactor expansion along the first column; fine for
    /// the dense desk-scale sizes this library targets.
    pub fn det(&self) -> Result<PadicElement> {
        if self.size > 8 {
            return Err(Error::SizeLimit(format!(
                "cofactor determinant limited to size 8, got {}",
                self.size
            )));
        }
        if self.size == 0 {
            return Ok(self.ctx.one());
        }
        Ok(det_rec(&self.ctx, &self.entries, self.size))
    }

    /// Valuations of the elementary divisors read modulo p^k, capped at k.
    pub fn smith_valuations(&self, k: usize) -> Vec<usize> {
        let n = self.size;
        let mut m: Vec<PadicElement> =
            self.entries.iter().map(|e| e.reduce_mod(k)).collect();
        let mut out = Vec::with_capacity(n);
        let val = |e: &PadicElement, k: usize| e.valuation().min(k);
        for t in 0..n {
            let mut best = (k, t, t);
            for i in t..n {
                for j in t..n {
                    let v = val(&m[i * n + j], k);
                    if v < best.0 {
                        best = (v, i, j);
                    }
                }
            }
            let (v, bi, bj) = best;
            if v >= k {
                for _ in t..n {
                    out.push(k);
                }
                return out;
            }
            // move the pivot to (t, t)
            if bi != t {
                for j in 0..n {
                    m.swap(t * n + j, bi * n + j);
                }
            }
            if bj != t {
                for i in 0..n {
                    m.swap(i * n + t, i * n + bj);
                }
            }
            // normalize the pivot to p^v
            let unit = m[t * n + t]
                .div_p_pow_exact(v)
                .expect("pivot valuation v");
            let unit_inv = unit.reduce_mod(k - v).inverse().expect("unit");
            for j in t..n {
                m[t * n + j] = m[t * n + j].mul(&unit_inv).reduce_mod(k);
            }
            for i in t + 1..n {
                if m[i * n + t].is_zero() {
                    continue;
                }
                let factor = m[i * n + t].div_p_pow_exact(v).expect("minimal pivot");
                for j in t..n {
                    m[i * n + j] = m[i * n + j].sub(&factor.mul(&m[t * n + j])).reduce_mod(k);
                }
            }
            for j in t + 1..n {
                if m[t * n + j].is_zero() {
                    continue;
                }
                let factor = m[t * n + j].div_p_pow_exact(v).expect("minimal pivot");
                for i in t..n {
                    m[i * n + j] = m[i * n + j].sub(&factor.mul(&m[i * n + t])).reduce_mod(k);
                }
            }
            out.push(v);
        }
        out
    }

    /// Dimension over Frac(O) of the kernel, by elimination with
    /// minimal-valuation pivots. Entries that vanish at the available
    /// working precision are treated as zero; dividing by a pivot of
    /// positive valuation is charged against the working precision and the
    /// computation aborts as ambiguous when none is left.
    pub fn kernel_dim(&self) -> Result<usize> {
        let n = self.size;
        let mut w = self.ctx.precision();
        let mut m: Vec<PadicElement> = self.entries.to_vec();
        let mut rank = 0;
        let mut used_rows = vec![false; n];
        for _col_pass in 0..n {
            // next pivot: minimal valuation among unused rows
            let mut best: Option<(usize, usize, usize)> = None;
            for i in 0..n {
                if used_rows[i] {
                    continue;
                }
                for j in 0..n {
                    let v = m[i * n + j].reduce_mod(w).valuation().min(w);
                    if v < w && best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
            let Some((v, pi, pj)) = best else {
                break; // remaining block vanishes at working precision
            };
            if v > 0 && v >= w {
                return Err(Error::PrecisionAmbiguous(
                    "pivot valuation reaches working precision".into(),
                ));
            }
            used_rows[pi] = true;
            rank += 1;
            let pivot_unit = m[pi * n + pj].div_p_pow_exact(v)?;
            let pivot_inv = pivot_unit.reduce_mod(w - v).inverse().map_err(|_| {
                Error::PrecisionAmbiguous("pivot unit not invertible at precision".into())
            })?;
            for i in 0..n {
                if used_rows[i] || m[i * n + pj].reduce_mod(w).valuation() >= w {
                    continue;
                }
                // entry has valuation >= v by pivot minimality
                let factor = m[i * n + pj].div_p_pow_exact(v)?.mul(&pivot_inv);
                for j in 0..n {
                    m[i * n + j] = m[i * n + j].sub(&factor.mul(&m[pi * n + j]));
                }
            }
            if v > 0 {
                w -= v;
                if w == 0 {
                    return Err(Error::PrecisionAmbiguous(
                        "working precision exhausted".into(),
                    ));
                }
            }
        }
        Ok(n - rank)
    }

    /// Expand into an integer matrix via the regular representation of O on
    /// its power basis: each entry becomes an f x f integer block, acting on
    /// column vectors of coordinates.
    pub fn regular_representation(&self) -> Vec<Vec<BigInt>> {
        let n = self.size;
        let f = self.ctx.residue_degree();
        let gen = self.ctx.generator();
        let mut out = vec![vec![BigInt::from(0); n * f]; n * f];
        for i in 0..n {
            for j in 0..n {
                let e = self.entry(i, j);
                // column b of the block: coordinates of e * x^b
                let mut power = self.ctx.one();
                for b in 0..f {
                    let col = e.mul(&power);
                    for (a, coord) in col.coords().iter().enumerate() {
                        out[i * f + a][j * f + b] = BigInt::from(coord.clone());
                    }
                    power = power.mul(&gen);
                }
            }
        }
        out
    }
}

fn det_rec(ctx: &PadicContext, entries: &[PadicElement], n: usize) -> PadicElement {
    if n == 1 {
        return entries[0].clone();
    }
    if n == 2 {
        return entries[0]
            .mul(&entries[3])
            .sub(&entries[1].mul(&entries[2]));
    }
    let mut acc = ctx.zero();
    for i in 0..n {
        let a = &entries[i * n];
        if a.is_zero() {
            continue;
        }
        // minor: delete row i, column 0
        let mut minor = Vec::with_capacity((n - 1) * (n - 1));
        for r in 0..n {
            if r == i {
                continue;
            }
            for c in 1..n {
                minor.push(entries[r * n + c].clone());
            }
        }
        let term = a.mul(&det_rec(ctx, &minor, n - 1));
        if i % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn zp(p: u64, n: usize) -> PadicContext {
        PadicContext::unramified(p, 1, n).unwrap()
    }

    fn m_i64(ctx: &PadicContext, size: usize, vals: &[i64]) -> OMatrix {
        OMatrix::new(
            ctx.clone(),
            size,
            vals.iter().map(|&v| ctx.from_i64(v)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn det_examples() {
        let ctx = zp(5, 6);
        let a = m_i64(&ctx, 2, &[1, 2, 3, 4]);
        assert_eq!(a.det().unwrap(), ctx.from_i64(-2));
        let id = OMatrix::identity(&ctx, 3);
        assert_eq!(id.det().unwrap(), ctx.one());
        let d = m_i64(&ctx, 3, &[2, 0, 0, 0, 3, 0, 0, 0, 7]);
        assert_eq!(d.det().unwrap(), ctx.from_u64(42));
    }

    #[test]
    fn smith_valuations_example() {
        let ctx = zp(5, 6);
        let a = m_i64(&ctx, 2, &[5, 0, 0, 25]);
        assert_eq!(a.smith_valuations(4), vec![1, 2]);
        let b = m_i64(&ctx, 2, &[5, 3, 10, 4]);
        // det = 20 - 30 = -10, valuation 1; divisors (1, 10) -> vals (0, 1)
        assert_eq!(b.smith_valuations(4), vec![0, 1]);
        let z = m_i64(&ctx, 2, &[0, 0, 0, 0]);
        assert_eq!(z.smith_valuations(3), vec![3, 3]);
    }

    #[test]
    fn smith_agrees_with_integer_path() {
        let ctx = zp(3, 6);
        let a = m_i64(&ctx, 3, &[3, 1, 0, 9, 3, 3, 0, 1, 6]);
        let vals = a.smith_valuations(5);
        let ints = a.regular_representation();
        let zvals = crate::zmat::smith_valuations_mod_pk(&ints, 3, 5);
        let mut sorted = vals.clone();
        sorted.sort();
        let mut zsorted = zvals.clone();
        zsorted.sort();
        assert_eq!(sorted, zsorted);
    }

    #[test]
    fn kernel_dims() {
        let ctx = zp(7, 5);
        let id = OMatrix::identity(&ctx, 3);
        let zero = id.sub(&id);
        assert_eq!(zero.kernel_dim().unwrap(), 3);
        assert_eq!(id.kernel_dim().unwrap(), 0);
        // diag(0, zeta - 1) with zeta a nontrivial root of unity
        let zeta = ctx.from_u64(2).teichmuller().unwrap();
        let e = zeta.sub(&ctx.one());
        let m = OMatrix::new(
            ctx.clone(),
            2,
            vec![ctx.zero(), ctx.zero(), ctx.zero(), e],
        )
        .unwrap();
        assert_eq!(m.kernel_dim().unwrap(), 1);
    }

    #[test]
    fn regular_representation_extension() {
        let ctx = PadicContext::unramified(5, 2, 4).unwrap();
        let x = ctx.generator();
        let m = OMatrix::new(ctx.clone(), 1, vec![x.clone()]).unwrap();
        let rep = m.regular_representation();
        assert_eq!(rep.len(), 2);
        // multiplication by x sends 1 -> x, so column 0 is (0, 1)
        assert_eq!(rep[0][0], BigInt::from(0));
        assert_eq!(rep[1][0], BigInt::from(1));
        // det of the block = norm of x; the modulus is x^2 + 2, so N(x) = 2
        let det_block = &rep[0][0] * &rep[1][1] - &rep[0][1] * &rep[1][0];
        assert_eq!(ctx.from_bigint(&det_block), ctx.from_u64(2));
    }
}
