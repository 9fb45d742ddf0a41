//! Distance and locality checks for a built code, exact or sampled.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::codes::{local_min_rank_distance, min_rank_distance, sampled_min_rank, LocalRankCode, RankCode};
use crate::error::Result;
use crate::gf::elements_rank;
use crate::subspace::{verify_subspace_locality, LiftedCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Exhaustive scans within the oracle budget.
    Exact { budget: u128 },
    /// Random codewords; results are upper bounds on true distances.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub mode: Mode,
    pub n: usize,
    pub points_rank: usize,
    pub h_constant: bool,
    pub repair_consistent: bool,
    pub distance_bound: usize,
    pub distance: usize,
    pub local_distances: Vec<usize>,
    pub delta: usize,
    pub r: usize,
    pub lifted_distance: usize,
    pub subspace_locality: bool,
}

impl VerifyReport {
    /// Exact mode requires equality with the bounds; sampled minima only
    /// overestimate distances, so there they must reach the bounds.
    pub fn passed(&self) -> bool {
        let meets = |got: usize, want: usize| match self.mode {
            Mode::Exact { .. } => got == want,
            Mode::Sampled { .. } => got >= want,
        };
        self.points_rank == self.n
            && self.h_constant
            && self.repair_consistent
            && meets(self.distance, self.distance_bound)
            && self.local_distances.iter().all(|&d| meets(d, self.delta))
            && meets(self.lifted_distance, 2 * self.distance_bound)
            && self.subspace_locality
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "evaluation points rank={}/{}: {}",
            self.points_rank,
            self.n,
            verdict(self.points_rank == self.n)
        )?;
        writeln!(f, "H constant on each group: {}", verdict(self.h_constant))?;
        writeln!(
            f,
            "repair polynomials agree with encoder: {}",
            verdict(self.repair_consistent)
        )?;
        if let Mode::Sampled { samples, .. } = self.mode {
            writeln!(
                f,
                "sampled: all {samples} sampled nonzero codewords have rank >= {} (bound {})",
                self.distance, self.distance_bound
            )?;
        }
        let local = self.local_distances.iter().copied().min().unwrap_or(0);
        let optimal = if self.distance == self.distance_bound {
            " (optimal)"
        } else {
            ""
        };
        let mrd = if local == self.delta { " (MRD)" } else { "" };
        write!(
            f,
            "d={}{optimal}, local d={local}{mrd}, lifted d_S={}, subspace-locality ({},{}): {}",
            self.distance,
            self.lifted_distance,
            self.r,
            2 * self.delta,
            verdict(self.passed())
        )
    }
}

/// Number of random messages used for the repair-consistency check.
const REPAIR_SAMPLES: usize = 64;

/// Pairwise comparisons per projected family before sampling kicks in.
const MAX_PAIRS: usize = 1 << 16;

pub fn verify_code(code: &LocalRankCode, mode: Mode) -> Result<VerifyReport> {
    let params = *code.params();
    let field = code.field();
    let gf = field.base();
    let points_rank = elements_rank(field, code.points());

    let h_constant = (1..=code.mu()).all(|j| {
        let group = code.group(j).expect("group index in range");
        group
            .iter()
            .all(|&p| code.good_poly_value(p) == code.good_poly_value(group[0]))
    });

    let mut rng = SplitMix64::seed_from_u64(0x5eed);
    let mut repair_consistent = true;
    for _ in 0..REPAIR_SAMPLES {
        let msg: Vec<_> = (0..params.k)
            .map(|_| field.from_index(rng.gen_range(0..field.order())))
            .collect();
        let cw = code.encode(&msg)?;
        for j in 1..=code.mu() {
            let rp = code.repair_poly(&msg, j)?;
            let cols = code.group_columns(j);
            repair_consistent &= code.points()[cols.clone()]
                .iter()
                .zip(&cw[cols])
                .all(|(&p, &c)| rp.eval(field, p) == c);
        }
    }

    let groups: Vec<Vec<usize>> = (1..=code.mu()).map(|j| code.group_columns(j).collect()).collect();
    let (distance, local_distances, lifted) = match mode {
        Mode::Exact { budget } => {
            let d = min_rank_distance(code, budget)?;
            let local = (1..=code.mu())
                .map(|j| local_min_rank_distance(code, j, budget))
                .collect::<Result<Vec<_>>>()?;
            (d, local, LiftedCode::new(code, budget)?)
        }
        Mode::Sampled { samples, seed } => {
            let d = sampled_min_rank(code, samples, seed)?.min_rank;
            let local = (1..=code.mu())
                .map(|j| Ok(sampled_min_rank(&code.local_code(j)?, samples, seed ^ j as u64)?.min_rank))
                .collect::<Result<Vec<_>>>()?;
            (d, local, LiftedCode::sampled(code, samples, seed)?)
        }
    };
    let lifted_distance = lifted.min_distance(gf)?;
    let locality = verify_subspace_locality(&lifted, &groups, params.r, 2 * params.delta, gf, MAX_PAIRS, 1)?;

    Ok(VerifyReport {
        mode,
        n: params.n,
        points_rank,
        h_constant,
        repair_consistent,
        distance_bound: code.distance_bound(),
        distance,
        local_distances,
        delta: params.delta,
        r: params.r,
        lifted_distance,
        subspace_locality: locality.passed(),
    })
}
