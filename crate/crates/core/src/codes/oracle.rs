use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::{LocalRankCode, RankCode};
use crate::error::{Error, Result};
use crate::gf::{BaseField, FieldElement};
use crate::matrix::Matrix;

/// Default cap on the number of codewords an exhaustive scan may visit.
pub const DEFAULT_ORACLE_BUDGET: u128 = 1 << 20;

/// `q^(m k)`, saturating at `u128::MAX`.
pub fn codeword_count<C: RankCode + ?Sized>(code: &C) -> u128 {
    let f = code.field();
    (f.q() as u128).saturating_pow((f.degree() * code.dimension()) as u32)
}

/// Visits every codeword matrix (the zero codeword first).
///
/// Codewords are walked as a base-p odometer over the GF(p)-generators
/// `p^b · G` of the code, so each step costs one matrix addition.
pub fn for_each_codeword<C, F>(code: &C, budget: u128, mut visit: F) -> Result<()>
where
    C: RankCode + ?Sized,
    F: FnMut(&Matrix),
{
    let size = codeword_count(code);
    if size > budget {
        return Err(Error::OracleScale { size, budget });
    }
    let gf = code.field().base();
    let gens = prime_generators(gf, &code.gf_basis());
    let (rows, cols) = (code.field().degree(), code.length());
    let p = gf.characteristic();
    let mut state = Matrix::zeros(rows, cols);
    let mut digits = vec![0usize; gens.len()];
    visit(&state);
    'outer: loop {
        let mut t = 0;
        loop {
            if t == gens.len() {
                break 'outer;
            }
            state.add_scaled(1, &gens[t], gf);
            digits[t] += 1;
            if digits[t] < p {
                break;
            }
            digits[t] = 0;
            t += 1;
        }
        visit(&state);
    }
    Ok(())
}

fn prime_generators(gf: &BaseField, basis: &[Matrix]) -> Vec<Matrix> {
    let p = gf.characteristic();
    let mut out = Vec::with_capacity(basis.len() * gf.prime_degree());
    for g in basis {
        let mut scale = 1usize;
        for _ in 0..gf.prime_degree() {
            let mut h = Matrix::zeros(g.rows(), g.cols());
            h.add_scaled(scale as u8, g, gf);
            out.push(h);
            scale *= p;
        }
    }
    out
}

pub fn enumerate_codewords<C: RankCode + ?Sized>(code: &C, budget: u128) -> Result<Vec<Matrix>> {
    let mut out = Vec::new();
    for_each_codeword(code, budget, |c| out.push(c.clone()))?;
    Ok(out)
}

/// Exact minimum rank over all nonzero codewords.
pub fn min_rank_distance<C: RankCode + ?Sized>(code: &C, budget: u128) -> Result<usize> {
    let gf = code.field().base();
    let mut best: Option<usize> = None;
    for_each_codeword(code, budget, |c| {
        if !c.is_zero() {
            let r = c.rank(gf);
            best = Some(best.map_or(r, |b| b.min(r)));
        }
    })?;
    best.ok_or(Error::Degenerate)
}

/// Exact minimum rank distance of the local code of group `j`.
pub fn local_min_rank_distance(code: &LocalRankCode, j: usize, budget: u128) -> Result<usize> {
    min_rank_distance(&code.local_code(j)?, budget)
}

/// Outcome of a sampled distance check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampledDistance {
    pub samples: usize,
    pub min_rank: usize,
}

impl SampledDistance {
    pub fn at_least(&self, bound: usize) -> bool {
        self.min_rank >= bound
    }
}

/// Minimum rank over `samples` uniformly random nonzero messages. This is an
/// upper bound on the true distance, used where exhaustive scans are too large.
pub fn sampled_min_rank<C: RankCode + ?Sized>(code: &C, samples: usize, seed: u64) -> Result<SampledDistance> {
    if samples == 0 {
        return Err(Error::InvalidParams("need at least one sample".into()));
    }
    let field = code.field();
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut min_rank = usize::MAX;
    let mut drawn = 0;
    while drawn < samples {
        let msg: Vec<FieldElement> = (0..code.dimension())
            .map(|_| field.from_index(rng.gen_range(0..field.order())))
            .collect();
        if msg.iter().all(|e| e.is_zero()) {
            continue;
        }
        min_rank = min_rank.min(code.encode_matrix(&msg)?.rank(field.base()));
        drawn += 1;
    }
    Ok(SampledDistance { samples, min_rank })
}
