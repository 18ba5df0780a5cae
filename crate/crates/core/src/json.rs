//! Stable JSON wire formats.
//!
//! All residues and integers travel as decimal strings so the formats are
//! reproducible across languages and integer widths. Deserialization
//! validates the same invariants the constructors enforce.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::artin::{CharacterData, GModule, StabilizationData};
use crate::bivar::{BivariatePresentation, BivariateSeries, WeightGrid};
use crate::error::{Error, Result};
use crate::exact::ExactPoly;
use crate::lambda::{ExtendedOrder, IwasawaSeries};
use crate::modcalc::{ModulePresentation, StructureData};
use crate::omatrix::OMatrix;
use crate::padic::{PadicContext, PadicElement};

fn parse_bigint(s: &str) -> Result<BigInt> {
    BigInt::from_str_radix(s.trim(), 10)
        .map_err(|_| Error::InvalidArgument(format!("not a decimal integer: {s:?}")))
}

fn parse_biguint(s: &str) -> Result<BigUint> {
    BigUint::from_str_radix(s.trim(), 10)
        .map_err(|_| Error::InvalidArgument(format!("not a decimal natural number: {s:?}")))
}

/// Context header {p, f, N, modulus}.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CtxJson {
    pub p: u64,
    pub f: usize,
    #[serde(rename = "N")]
    pub precision: usize,
    /// Monic integer modulus, ascending coefficients, decimal strings.
    pub modulus: Vec<String>,
}

impl CtxJson {
    pub fn from_context(ctx: &PadicContext) -> Self {
        CtxJson {
            p: ctx.p(),
            f: ctx.residue_degree(),
            precision: ctx.precision(),
            modulus: ctx.modulus().iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn to_context(&self) -> Result<PadicContext> {
        let modulus = self
            .modulus
            .iter()
            .map(|s| parse_bigint(s))
            .collect::<Result<Vec<_>>>()?;
        if modulus.len() != self.f + 1 {
            return Err(Error::BadModulus(format!(
                "modulus degree {} does not match f = {}",
                modulus.len().saturating_sub(1),
                self.f
            )));
        }
        PadicContext::new(self.p, self.precision, modulus)
    }
}

/// Residue coordinates of one element.
pub fn element_to_strings(e: &PadicElement) -> Vec<String> {
    e.coords().iter().map(|c| c.to_string()).collect()
}

pub fn element_from_strings(ctx: &PadicContext, coords: &[String]) -> Result<PadicElement> {
    let ints = coords
        .iter()
        .map(|s| parse_bigint(s))
        .collect::<Result<Vec<_>>>()?;
    ctx.from_coords(&ints)
}

/// Standalone element: residues plus context header; bit-exact round-trip.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ElementJson {
    pub ctx: CtxJson,
    pub residues: Vec<String>,
}

impl ElementJson {
    pub fn from_element(e: &PadicElement) -> Self {
        ElementJson {
            ctx: CtxJson::from_context(e.context()),
            residues: element_to_strings(e),
        }
    }

    pub fn to_element(&self) -> Result<PadicElement> {
        let ctx = self.ctx.to_context()?;
        element_from_strings(&ctx, &self.residues)
    }
}

/// Series body {D, coeffs, exact}; the context is carried by the enclosing
/// document. With `exact: true` the residues are read back as balanced
/// representatives in (-p^N/2, p^N/2], which recovers integer coefficients
/// of that size exactly.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeriesJson {
    #[serde(rename = "D")]
    pub degree_bound: usize,
    pub coeffs: Vec<Vec<String>>,
    #[serde(default)]
    pub exact: bool,
}

impl SeriesJson {
    pub fn from_series(f: &IwasawaSeries) -> Self {
        SeriesJson {
            degree_bound: f.degree_bound(),
            coeffs: f.coeffs().iter().map(element_to_strings).collect(),
            exact: f.exact().is_some(),
        }
    }

    pub fn to_series(&self, ctx: &PadicContext) -> Result<IwasawaSeries> {
        if self.coeffs.len() != self.degree_bound + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                self.degree_bound + 1,
                self.coeffs.len()
            )));
        }
        if self.exact {
            let mut ints = Vec::with_capacity(self.coeffs.len());
            let half = ctx.pn() / 2u32;
            for c in &self.coeffs {
                if c.len() != ctx.residue_degree() {
                    return Err(Error::InvalidArgument(
                        "residue count does not match f".into(),
                    ));
                }
                for extra in &c[1..] {
                    if parse_biguint(extra)? != BigUint::from(0u32) {
                        return Err(Error::InvalidArgument(
                            "exact series must have rational-integer coefficients".into(),
                        ));
                    }
                }
                let r = parse_biguint(&c[0])?;
                if r >= *ctx.pn() {
                    return Err(Error::InvalidArgument(format!(
                        "residue {r} out of range"
                    )));
                }
                let balanced = if r > half {
                    BigInt::from(r) - BigInt::from(ctx.pn().clone())
                } else {
                    BigInt::from(r)
                };
                ints.push(balanced);
            }
            return Ok(IwasawaSeries::from_exact(
                ctx,
                self.degree_bound,
                ExactPoly::from_coeffs(ints),
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| element_from_strings(ctx, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(IwasawaSeries::from_coeffs(ctx.clone(), coeffs))
    }
}

/// Exact polynomial: ascending integer-string coefficients.
pub fn exact_poly_to_strings(p: &ExactPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn exact_poly_from_strings(coeffs: &[String]) -> Result<ExactPoly> {
    Ok(ExactPoly::from_coeffs(
        coeffs
            .iter()
            .map(|s| parse_bigint(s))
            .collect::<Result<Vec<_>>>()?,
    ))
}

/// Square matrix over O: rows of entries, each entry a residue vector.
pub type MatrixJson = Vec<Vec<Vec<String>>>;

pub fn matrix_to_json(m: &OMatrix) -> MatrixJson {
    (0..m.size())
        .map(|i| {
            (0..m.size())
                .map(|j| element_to_strings(m.entry(i, j)))
                .collect()
        })
        .collect()
}

pub fn matrix_from_json(ctx: &PadicContext, rows: &MatrixJson) -> Result<OMatrix> {
    let size = rows.len();
    let mut entries = Vec::with_capacity(size * size);
    for row in rows {
        if row.len() != size {
            return Err(Error::InvalidArgument("matrix must be square".into()));
        }
        for e in row {
            entries.push(element_from_strings(ctx, e)?);
        }
    }
    OMatrix::new(ctx.clone(), size, entries)
}

/// Presentation body: square matrix of series.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresentationJson {
    pub size: usize,
    /// Row-major entries.
    pub entries: Vec<SeriesJson>,
}

impl PresentationJson {
    pub fn from_presentation(p: &ModulePresentation) -> Self {
        PresentationJson {
            size: p.size(),
            entries: p.entries().iter().map(SeriesJson::from_series).collect(),
        }
    }

    pub fn to_presentation(&self, ctx: &PadicContext) -> Result<ModulePresentation> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.to_series(ctx))
            .collect::<Result<Vec<_>>>()?;
        ModulePresentation::new(self.size, entries)
    }
}

/// Structure data {r, factors, mus} with exact integer factors.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StructureJson {
    pub r: usize,
    pub factors: Vec<Vec<String>>,
    pub mus: Vec<usize>,
}

impl StructureJson {
    pub fn from_structure(s: &StructureData) -> Self {
        StructureJson {
            r: s.free_rank,
            factors: s.factors.iter().map(exact_poly_to_strings).collect(),
            mus: s.mus.clone(),
        }
    }

    pub fn to_structure(&self, p: u64) -> Result<StructureData> {
        let factors = self
            .factors
            .iter()
            .map(|f| exact_poly_from_strings(f))
            .collect::<Result<Vec<_>>>()?;
        StructureData::new(p, self.r, factors, self.mus.clone())
    }
}

/// Bivariate body {DY, DT, coeffs} with coeffs[i][j] the Y^i T^j entry.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BivariateJson {
    #[serde(rename = "DY")]
    pub dy: usize,
    #[serde(rename = "DT")]
    pub dt: usize,
    pub coeffs: Vec<Vec<Vec<String>>>,
}

impl BivariateJson {
    pub fn from_series(f: &BivariateSeries) -> Self {
        BivariateJson {
            dy: f.dy(),
            dt: f.dt(),
            coeffs: f
                .rows()
                .iter()
                .map(|row| row.iter().map(element_to_strings).collect())
                .collect(),
        }
    }

    pub fn to_series(&self, ctx: &PadicContext) -> Result<BivariateSeries> {
        if self.coeffs.len() != self.dy + 1 {
            return Err(Error::InvalidArgument("Y-coefficient count mismatch".into()));
        }
        let mut rows = Vec::with_capacity(self.dy + 1);
        for row in &self.coeffs {
            if row.len() != self.dt + 1 {
                return Err(Error::InvalidArgument(
                    "T-coefficient count mismatch".into(),
                ));
            }
            rows.push(
                row.iter()
                    .map(|c| element_from_strings(ctx, c))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        BivariateSeries::from_coeffs(ctx.clone(), rows)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BivariatePresentationJson {
    pub size: usize,
    pub entries: Vec<BivariateJson>,
}

impl BivariatePresentationJson {
    pub fn from_presentation(p: &BivariatePresentation) -> Self {
        let size = p.size();
        BivariatePresentationJson {
            size,
            entries: (0..size)
                .flat_map(|i| (0..size).map(move |j| (i, j)))
                .map(|(i, j)| BivariateJson::from_series(p.entry(i, j)))
                .collect(),
        }
    }

    pub fn to_presentation(&self, ctx: &PadicContext) -> Result<BivariatePresentation> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.to_series(ctx))
            .collect::<Result<Vec<_>>>()?;
        BivariatePresentation::new(self.size, entries)
    }
}

/// Character table: values keyed by element label.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CharacterJson {
    pub elements: Vec<String>,
    pub identity: String,
    pub inverse: BTreeMap<String, String>,
    pub values: BTreeMap<String, Vec<String>>,
    pub dim: u64,
}

impl CharacterJson {
    pub fn to_character(&self, ctx: &PadicContext) -> Result<CharacterData> {
        let values = self
            .values
            .iter()
            .map(|(k, v)| Ok((k.clone(), element_from_strings(ctx, v)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        CharacterData::new(
            ctx.clone(),
            self.elements.clone(),
            self.identity.clone(),
            self.inverse.clone(),
            values,
            self.dim,
        )
    }
}

/// G-module: rank, coefficient length k, and an action matrix per label.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GModuleJson {
    pub rank: usize,
    pub k: usize,
    pub actions: BTreeMap<String, MatrixJson>,
}

impl GModuleJson {
    pub fn to_module(&self, ctx: &PadicContext) -> Result<GModule> {
        let actions = self
            .actions
            .iter()
            .map(|(g, m)| Ok((g.clone(), matrix_from_json(ctx, m)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(GModule {
            rank: self.rank,
            k: self.k,
            actions,
        })
    }
}

/// Stabilization data; the unit-logarithm matrix may be supplied directly
/// as `s_plus` or as a matrix of `units` whose Iwasawa logarithms are taken
/// entrywise.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StabilizationJson {
    pub d: usize,
    pub d_plus: usize,
    pub frob_minus: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_plus: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<MatrixJson>,
    /// Order of the rho-isotypic class group (a power of q), decimal.
    pub class_order: String,
}

impl StabilizationJson {
    pub fn to_stabilization(&self, ctx: &PadicContext) -> Result<StabilizationData> {
        let frob = matrix_from_json(ctx, &self.frob_minus)?;
        let s_plus = match (&self.s_plus, &self.units) {
            (Some(m), None) => matrix_from_json(ctx, m)?,
            (None, Some(m)) => matrix_from_json(ctx, m)?.map_fallible(|u| u.iwasawa_log())?,
            _ => {
                return Err(Error::InvalidArgument(
                    "provide exactly one of s_plus or units".into(),
                ))
            }
        };
        let class_order = parse_biguint(&self.class_order)?;
        StabilizationData::new(self.d, self.d_plus, frob, s_plus, class_order)
    }
}

/// Extended order on the wire: a decimal order or the infinite marker.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OrderJson {
    pub finite: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_exponent: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

impl OrderJson {
    pub fn from_order(o: &ExtendedOrder) -> Self {
        match o {
            ExtendedOrder::Finite { q_exponent, order } => OrderJson {
                finite: true,
                q_exponent: Some(*q_exponent),
                order: Some(order.to_string()),
            },
            ExtendedOrder::Infinite => OrderJson {
                finite: false,
                q_exponent: None,
                order: None,
            },
        }
    }
}

/// Weight-grid report with decimal y_n coordinates.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GridJson {
    pub r: u32,
    pub e: u64,
    pub entries: Vec<GridEntryJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GridEntryJson {
    pub n: u32,
    pub weight: u64,
    pub y: Vec<String>,
    pub valuation: usize,
}

impl GridJson {
    pub fn from_grid(g: &WeightGrid) -> Self {
        GridJson {
            r: g.r,
            e: g.e,
            entries: g
                .entries
                .iter()
                .map(|e| GridEntryJson {
                    n: e.n,
                    weight: e.weight,
                    y: element_to_strings(&e.y),
                    valuation: e.valuation,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_roundtrip_is_bit_exact() {
        let ctx = PadicContext::unramified(5, 2, 4).unwrap();
        let e = ctx.generator().mul_u64(17).add(&ctx.from_u64(123));
        let json = serde_json::to_string(&ElementJson::from_element(&e)).unwrap();
        let back: ElementJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_element().unwrap(), e);
        let json2 = serde_json::to_string(&ElementJson::from_element(
            &back.to_element().unwrap(),
        ))
        .unwrap();
        assert_eq!(json, json2);
    }

    #[test]
    fn series_roundtrip_preserves_exactness() {
        let ctx = PadicContext::unramified(5, 1, 6).unwrap();
        let f = IwasawaSeries::from_exact(&ctx, 4, ExactPoly::from_i64(&[-5, 0, 1]));
        let wire = SeriesJson::from_series(&f);
        assert!(wire.exact);
        let back = wire.to_series(&ctx).unwrap();
        assert_eq!(back, f);
        // the balanced lift recovers the negative coefficient
        assert_eq!(back.exact().unwrap(), f.exact().unwrap());
    }

    #[test]
    fn structure_roundtrip() {
        let s = StructureData::new(
            5,
            1,
            vec![ExactPoly::from_i64(&[-5, 1]), ExactPoly::from_i64(&[0, 1])],
            vec![2],
        )
        .unwrap();
        let wire = StructureJson::from_structure(&s);
        let back = wire.to_structure(5).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn bad_input_is_reported() {
        assert!(parse_bigint("12x").is_err());
        let ctx = CtxJson {
            p: 4,
            f: 1,
            precision: 3,
            modulus: vec!["0".into(), "1".into()],
        };
        assert!(matches!(ctx.to_context(), Err(Error::NotOddPrime(4))));
    }
}
