//! Shared input builders for the criterion benches.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use charlam_core::{ExactPoly, IwasawaSeries, PadicContext, StructureData};

pub fn context(p: u64, f: usize, precision: usize) -> PadicContext {
    PadicContext::unramified(p, f, precision).unwrap()
}

pub fn random_series(ctx: &PadicContext, d: usize, seed: u64) -> IwasawaSeries {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let pn = ctx.p().pow(ctx.precision() as u32);
    let coeffs = (0..=d)
        .map(|_| {
            let coords: Vec<BigInt> = (0..ctx.residue_degree())
                .map(|_| BigInt::from(rng.gen_range(0..pn)))
                .collect();
            ctx.from_coords(&coords).unwrap()
        })
        .collect();
    IwasawaSeries::from_coeffs(ctx.clone(), coeffs)
}

pub fn structure_fixture(p: u64) -> StructureData {
    let factors = vec![
        ExactPoly::t(),
        ExactPoly::from_coeffs(vec![BigInt::from(-(p as i64)), BigInt::from(1)]),
        ExactPoly::from_coeffs(vec![
            BigInt::from(p as i64),
            BigInt::from(2 * p as i64),
            BigInt::from(0),
            BigInt::from(1),
        ]),
    ];
    StructureData::new(p, 0, factors, vec![1]).unwrap()
}
