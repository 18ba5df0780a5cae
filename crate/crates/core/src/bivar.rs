//! Truncated two-variable series over O, specialization at Y = y, the
//! weight grid (k(n), y_n), the determinant/specialization commutation
//! check, and the limit-divisibility harness.
//!
//! Specializing a product that was truncated at Y^(DY+1) only matches the
//! product of the specializations mod p^((DY+1)·v(y)): the dropped tail is
//! divisible by y^(DY+1). The specialization check therefore compares at
//! precision min(N, (DY+1)·v(y)); choosing DY+1 >= N makes it exact.

use crate::error::{Error, Result};
use crate::lambda::{canonical_form, divides, weierstrass_prepare, IwasawaSeries};
use crate::padic::{PadicContext, PadicElement};

/// Element of O[[Y, T]] mod (p^N, Y^(DY+1), T^(DT+1)); `coeffs[i][j]` is the
/// coefficient of Y^i T^j.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateSeries {
    ctx: PadicContext,
    coeffs: Vec<Vec<PadicElement>>,
}

impl BivariateSeries {
    pub fn zero(ctx: &PadicContext, dy: usize, dt: usize) -> Self {
        BivariateSeries {
            ctx: ctx.clone(),
            coeffs: vec![vec![ctx.zero(); dt + 1]; dy + 1],
        }
    }

    pub fn from_coeffs(ctx: PadicContext, coeffs: Vec<Vec<PadicElement>>) -> Result<Self> {
        if coeffs.is_empty() || coeffs[0].is_empty() {
            return Err(Error::InvalidArgument("empty coefficient grid".into()));
        }
        let dt = coeffs[0].len();
        if coeffs.iter().any(|row| row.len() != dt) {
            return Err(Error::InvalidArgument("ragged coefficient grid".into()));
        }
        Ok(BivariateSeries { ctx, coeffs })
    }

    /// Embed a one-variable series as the Y-constant slice.
    pub fn from_t_series(f: &IwasawaSeries, dy: usize) -> Self {
        let ctx = f.context().clone();
        let dt = f.degree_bound();
        let mut out = Self::zero(&ctx, dy, dt);
        out.coeffs[0] = f.coeffs().to_vec();
        out
    }

    /// The monomial c · Y^i T^j.
    pub fn monomial(
        ctx: &PadicContext,
        dy: usize,
        dt: usize,
        i: usize,
        j: usize,
        c: PadicElement,
    ) -> Self {
        let mut out = Self::zero(ctx, dy, dt);
        if i <= dy && j <= dt {
            out.coeffs[i][j] = c;
        }
        out
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn dy(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn dt(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    pub fn coeff(&self, i: usize, j: usize) -> PadicElement {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn rows(&self) -> &[Vec<PadicElement>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs
            .iter()
            .all(|row| row.iter().all(|c| c.is_zero()))
    }

    fn assert_same_shape(&self, other: &BivariateSeries) -> (usize, usize) {
        assert!(self.ctx == other.ctx, "series from different contexts");
        (self.dy().min(other.dy()), self.dt().min(other.dt()))
    }

    pub fn add(&self, other: &BivariateSeries) -> BivariateSeries {
        let (dy, dt) = self.assert_same_shape(other);
        let coeffs = (0..=dy)
            .map(|i| {
                (0..=dt)
                    .map(|j| self.coeffs[i][j].add(&other.coeffs[i][j]))
                    .collect()
            })
            .collect();
        BivariateSeries {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &BivariateSeries) -> BivariateSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BivariateSeries {
        BivariateSeries {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|c| c.neg()).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &BivariateSeries) -> BivariateSeries {
        let (dy, dt) = self.assert_same_shape(other);
        let mut coeffs = vec![vec![self.ctx.zero(); dt + 1]; dy + 1];
        for (i1, row1) in self.coeffs.iter().enumerate().take(dy + 1) {
            for (j1, a) in row1.iter().enumerate().take(dt + 1) {
                if a.is_zero() {
                    continue;
                }
                for (i2, row2) in other.coeffs.iter().enumerate().take(dy + 1 - i1) {
                    for (j2, b) in row2.iter().enumerate().take(dt + 1 - j1) {
                        if b.is_zero() {
                            continue;
                        }
                        coeffs[i1 + i2][j1 + j2] =
                            coeffs[i1 + i2][j1 + j2].add(&a.mul(b));
                    }
                }
            }
        }
        BivariateSeries {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// Coefficientwise evaluation at Y = y for topologically nilpotent y.
    pub fn specialize_y(&self, y: &PadicElement) -> Result<IwasawaSeries> {
        if y.valuation() == 0 {
            return Err(Error::NotTopologicallyNilpotent);
        }
        let dt = self.dt();
        let mut coeffs = vec![self.ctx.zero(); dt + 1];
        // Horner in Y, columnwise
        for row in self.coeffs.iter().rev() {
            for (j, c) in row.iter().enumerate() {
                coeffs[j] = coeffs[j].mul(y).add(c);
            }
        }
        Ok(IwasawaSeries::from_coeffs(self.ctx.clone(), coeffs))
    }
}

/// One row of the Hida-style specialization grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GridEntry {
    pub n: u32,
    pub weight: u64,
    pub y: PadicElement,
    pub valuation: usize,
}

/// The weight grid k(n) = (p-1) p^(n+re) + 1 with the e-th roots
/// y_n of (u^(k(n)-1) - 1) / p^(re), u = 1 + p.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightGrid {
    pub r: u32,
    pub e: u64,
    pub entries: Vec<GridEntry>,
}

/// Build the grid for n = 0..=n_max. Requires p not dividing e; each entry
/// needs e to divide the valuation n+1 of the normalized point, otherwise
/// the e-th root would leave the unramified coefficient ring and the grid
/// reports RamifiedRoot instead of silently extending the field.
pub fn weight_grid(ctx: &PadicContext, r: u32, e: u64, n_max: u32) -> Result<WeightGrid> {
    if e == 0 {
        return Err(Error::InvalidArgument("root exponent must be >= 1".into()));
    }
    let p = ctx.p();
    if e % p == 0 {
        return Err(Error::WildExponent);
    }
    let n = ctx.precision();
    let re = (r as u64)
        .checked_mul(e)
        .ok_or_else(|| Error::SizeLimit("r*e overflows".into()))? as usize;
    // guard digits so the division by p^(re) is exact at precision N
    let gctx = ctx.with_precision(n + re)?;
    let u = gctx.from_u64(p + 1);
    let mut entries = Vec::with_capacity(n_max as usize + 1);
    for level in 0..=n_max {
        let exp_pow = (level as usize) + re;
        let weight = (p - 1)
            .checked_mul(p.checked_pow(exp_pow as u32).ok_or_else(|| {
                Error::SizeLimit(format!("p^{exp_pow} overflows u64"))
            })?)
            .and_then(|m| m.checked_add(1))
            .ok_or_else(|| Error::SizeLimit("weight overflows u64".into()))?;
        let x = u.pow(weight - 1).sub(&gctx.one());
        debug_assert!(x.valuation() >= exp_pow + 1);
        let c = x.div_p_pow_exact(re)?.lift_to(ctx)?.reduce_mod(n);
        let y = c.nth_root(e)?;
        let valuation = y.valuation();
        entries.push(GridEntry {
            n: level,
            weight,
            y,
            valuation,
        });
    }
    Ok(WeightGrid { r, e, entries })
}

/// Square presentation over O[[Y, T]].
#[derive(Clone, Debug, PartialEq)]
pub struct BivariatePresentation {
    size: usize,
    entries: Vec<BivariateSeries>,
}

impl BivariatePresentation {
    pub fn new(size: usize, entries: Vec<BivariateSeries>) -> Result<Self> {
        if size == 0 || entries.len() != size * size {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for a {size}x{size} presentation, got {}",
                size * size,
                entries.len()
            )));
        }
        Ok(BivariatePresentation { size, entries })
    }

    pub fn diagonal(entries: Vec<BivariateSeries>) -> Result<Self> {
        let size = entries.len();
        if size == 0 {
            return Err(Error::InvalidArgument("empty diagonal".into()));
        }
        let ctx = entries[0].context().clone();
        let (dy, dt) = (entries[0].dy(), entries[0].dt());
        let mut full = vec![BivariateSeries::zero(&ctx, dy, dt); size * size];
        for (i, e) in entries.into_iter().enumerate() {
            full[i * size + i] = e;
        }
        BivariatePresentation::new(size, full)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &BivariateSeries {
        &self.entries[i * self.size + j]
    }

    pub fn det(&self) -> Result<BivariateSeries> {
        if self.size > 5 {
            return Err(Error::SizeLimit(format!(
                "cofactor determinant limited to size 5, got {}",
                self.size
            )));
        }
        Ok(det_rec(&self.entries, self.size))
    }

    pub fn specialize_y(&self, y: &PadicElement) -> Result<crate::modcalc::ModulePresentation> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.specialize_y(y))
            .collect::<Result<Vec<_>>>()?;
        crate::modcalc::ModulePresentation::new(self.size, entries)
    }

    pub fn row_operation(&self, i: usize, j: usize, c: &BivariateSeries) -> BivariatePresentation {
        assert!(i != j && i < self.size && j < self.size);
        let mut entries = self.entries.clone();
        for k in 0..self.size {
            entries[i * self.size + k] =
                entries[i * self.size + k].add(&c.mul(self.entry(j, k)));
        }
        BivariatePresentation {
            size: self.size,
            entries,
        }
    }

    pub fn col_operation(&self, i: usize, j: usize, c: &BivariateSeries) -> BivariatePresentation {
        assert!(i != j && i < self.size && j < self.size);
        let mut entries = self.entries.clone();
        for k in 0..self.size {
            entries[k * self.size + j] =
                entries[k * self.size + j].add(&self.entry(k, i).mul(c));
        }
        BivariatePresentation {
            size: self.size,
            entries,
        }
    }
}

fn det_rec(entries: &[BivariateSeries], n: usize) -> BivariateSeries {
    if n == 1 {
        return entries[0].clone();
    }
    if n == 2 {
        return entries[0]
            .mul(&entries[3])
            .sub(&entries[1].mul(&entries[2]));
    }
    let ctx = entries[0].context().clone();
    let (dy, dt) = (entries[0].dy(), entries[0].dt());
    let mut acc = BivariateSeries::zero(&ctx, dy, dt);
    for i in 0..n {
        let a = &entries[i * n];
        if a.is_zero() {
            continue;
        }
        let mut minor = Vec::with_capacity((n - 1) * (n - 1));
        for r in 0..n {
            if r == i {
                continue;
            }
            for c in 1..n {
                minor.push(entries[r * n + c].clone());
            }
        }
        let term = a.mul(&det_rec(&minor, n - 1));
        if i % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

/// Result of the determinant/specialization commutation check.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecializationReport {
    /// Precision (digits) at which the two routes are compared.
    pub compare_precision: usize,
    /// det first, specialize second.
    pub det_then_specialize: IwasawaSeries,
    /// specialize entrywise first, det second.
    pub specialize_then_det: IwasawaSeries,
    pub coefficients_agree: bool,
    pub canonical_forms_agree: bool,
    pub pass: bool,
}

/// Verify that the canonical Weierstrass form of det(pres) specialized at
/// Y = y equals the canonical form of det of the specialized matrix.
pub fn char_specialization_check(
    pres: &BivariatePresentation,
    y: &PadicElement,
) -> Result<SpecializationReport> {
    let ctx = pres.entry(0, 0).context().clone();
    let n = ctx.precision();
    let dy = pres.entry(0, 0).dy();
    let vy = y.valuation().max(1);
    let compare_precision = n.min((dy + 1) * vy);

    let det_big = pres.det()?;
    let lhs = det_big.specialize_y(y)?;
    let rhs = pres.specialize_y(y)?.det()?;

    if lhs.coeffs().iter().all(|c| c.valuation() >= compare_precision) {
        return Err(Error::NotTorsionAfterSpecialization);
    }

    let coefficients_agree = lhs
        .coeffs()
        .iter()
        .zip(rhs.coeffs())
        .all(|(a, b)| a.congruent_mod(b, compare_precision));

    // canonical forms; compare at the precision both sides achieve
    let wl = weierstrass_prepare(&lhs)?;
    let wr = weierstrass_prepare(&rhs)?;
    let canon_prec = compare_precision
        .saturating_sub(wl.mu.max(wr.mu))
        .max(1);
    let cl = canonical_form(&lhs)?;
    let cr = canonical_form(&rhs)?;
    let canonical_forms_agree = wl.mu == wr.mu
        && wl.lambda() == wr.lambda()
        && cl
            .coeffs()
            .iter()
            .zip(cr.coeffs())
            .all(|(a, b)| a.congruent_mod(b, canon_prec.min(compare_precision)));

    Ok(SpecializationReport {
        compare_precision,
        det_then_specialize: lhs,
        specialize_then_det: rhs,
        coefficients_agree,
        canonical_forms_agree,
        pass: coefficients_agree && canonical_forms_agree,
    })
}

/// Report of the limit-divisibility harness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitDivReport {
    /// divides(a_n, b_n) holds in Λ[1/p] for every n.
    pub hypothesis_ok: bool,
    pub failing_indices: Vec<usize>,
    /// Minimal denominator exponent covering the whole sequence.
    pub k: Option<usize>,
    pub limit_divides: Option<bool>,
    pub pass: bool,
}

/// The computable shadow of the limit argument: find the minimal K <= k_max
/// with a_n | p^K b_n in Λ for every n, then test a_lim | p^K b_lim.
pub fn limit_divisibility_check(
    a_seq: &[IwasawaSeries],
    b_seq: &[IwasawaSeries],
    a_lim: &IwasawaSeries,
    b_lim: &IwasawaSeries,
    k_max: usize,
) -> Result<LimitDivReport> {
    if a_seq.len() != b_seq.len() || a_seq.is_empty() {
        return Err(Error::InvalidArgument(
            "sequences must be nonempty and of equal length".into(),
        ));
    }
    if a_lim.is_zero() {
        return Err(Error::ZeroAtPrecision);
    }
    let mut failing = Vec::new();
    for (i, (a, b)) in a_seq.iter().zip(b_seq).enumerate() {
        if !divides(a, b, true)? {
            failing.push(i);
        }
    }
    if !failing.is_empty() {
        return Ok(LimitDivReport {
            hypothesis_ok: false,
            failing_indices: failing,
            k: None,
            limit_divides: None,
            pass: false,
        });
    }
    let mut found = None;
    'outer: for k in 0..=k_max {
        for (a, b) in a_seq.iter().zip(b_seq) {
            if !divides(a, &b.mul_p_pow(k), false)? {
                continue 'outer;
            }
        }
        found = Some(k);
        break;
    }
    let Some(k) = found else {
        return Err(Error::BoundExceeded { k_max });
    };
    let limit_divides = divides(a_lim, &b_lim.mul_p_pow(k), false)?;
    Ok(LimitDivReport {
        hypothesis_ok: true,
        failing_indices: Vec::new(),
        k: Some(k),
        limit_divides: Some(limit_divides),
        pass: limit_divides,
    })
}
