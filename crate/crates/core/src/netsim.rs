//! Partial download of one rack over a random linear network with erasures
//! and injected error packets, decoded by minimum subspace distance.
//!
//! The channel is `Y = A X + B Z` over GF(q): `A` is N×s with rank at least
//! `s - ρ`, `Z` holds the error packets on ℓ links and `B` is N×ℓ.
//!
//! Trial `i` draws from `SplitMix64` seeded with `seed ^ (i + 1) * 0x9E3779B97F4A7C15`
//! (wrapping). SplitMix64 keeps one 64-bit counter, adds the golden-ratio
//! increment per draw and returns its output through two xor-shift-multiply
//! rounds, so a stream depends only on `(seed, i)`.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::codes::{enumerate_codewords, LocalRankCode, RankCode};
use crate::error::{Error, Result};
use crate::gf::BaseField;
use crate::matrix::Matrix;

/// Draws allowed when sampling A with a rank floor.
pub const MAX_RANK_DRAWS: usize = 10_000;

/// Channel parameters for downloading one rack.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChannelConfig {
    /// Packets sent by the rack (r + δ - 1).
    pub s: usize,
    /// Packets collected by the user.
    pub collect: usize,
    /// Largest allowed rank deficiency of A.
    pub rho_max: usize,
    /// Number of error packets injected.
    pub t_max: usize,
    /// Network links carrying error packets.
    pub links: usize,
    pub seed: u64,
}

impl ChannelConfig {
    pub fn validate(&self, r: usize) -> Result<()> {
        if self.collect < r {
            return Err(Error::InvalidChannel(format!(
                "collect = {} is below r = {r}",
                self.collect
            )));
        }
        if self.links < self.t_max {
            return Err(Error::InvalidChannel(format!(
                "links = {} cannot carry t = {} error packets",
                self.links, self.t_max
            )));
        }
        Ok(())
    }
}

/// One channel use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelOutput {
    pub y: Matrix,
    /// `s - rank(A)`.
    pub rho: usize,
    /// Nonzero rows of Z.
    pub t: usize,
}

/// Packets of rack j: row i is `[e_{(j-1)s+i} | column (j-1)s+i of C]`.
pub fn transmit_matrix(codeword: &Matrix, j: usize, s: usize) -> Matrix {
    let (m, n) = codeword.shape();
    let mut x = Matrix::zeros(s, n + m);
    for i in 0..s {
        let col = (j - 1) * s + i;
        x.set(i, col, 1);
        for a in 0..m {
            x.set(i, n + a, codeword.get(a, col));
        }
    }
    x
}

fn random_matrix(rows: usize, cols: usize, gf: &BaseField, rng: &mut impl Rng) -> Matrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..gf.order()) as u8).collect();
    Matrix::from_vec(rows, cols, data).expect("sized buffer")
}

fn random_nonzero_row(len: usize, gf: &BaseField, rng: &mut impl Rng) -> Vec<u8> {
    loop {
        let row: Vec<u8> = (0..len).map(|_| rng.gen_range(0..gf.order()) as u8).collect();
        if row.iter().any(|&v| v != 0) {
            return row;
        }
    }
}

/// Applies the channel to the s×M packet matrix `x`.
pub fn channel_apply(x: &Matrix, config: &ChannelConfig, gf: &BaseField, rng: &mut impl Rng) -> Result<ChannelOutput> {
    let (s, width) = x.shape();
    let floor = s.saturating_sub(config.rho_max);
    let mut a = None;
    for _ in 0..MAX_RANK_DRAWS {
        let cand = random_matrix(config.collect, s, gf, rng);
        if cand.rank(gf) >= floor {
            a = Some(cand);
            break;
        }
    }
    let a = a.ok_or(Error::RankConstraint)?;
    let rho = s - a.rank(gf);

    let mut z = Matrix::zeros(config.links, width);
    let mut slots: Vec<usize> = (0..config.links).collect();
    for k in 0..config.t_max {
        let pick = rng.gen_range(k..slots.len());
        slots.swap(k, pick);
        z.row_mut(slots[k]).copy_from_slice(&random_nonzero_row(width, gf, rng));
    }
    let b = random_matrix(config.collect, config.links, gf, rng);
    let y = a.mul(x, gf)?.add(&b.mul(&z, gf)?, gf)?;
    Ok(ChannelOutput {
        y,
        rho,
        t: config.t_max,
    })
}

/// Result of minimum subspace distance decoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubspaceDecision {
    Unique { index: usize, distance: usize },
    Tie { indices: Vec<usize>, distance: usize },
}

/// Minimum subspace distance decoder for the lifted local code of one rack.
#[derive(Clone, Debug)]
pub struct RackDecoder {
    j: usize,
    s: usize,
    candidates: Vec<Matrix>,
    packets: Vec<Matrix>,
}

impl RackDecoder {
    pub fn new(code: &LocalRankCode, j: usize, budget: u128) -> Result<Self> {
        let local = code.local_code(j)?;
        let candidates = enumerate_codewords(&local, budget)?;
        let (s, n) = (code.params().s(), code.params().n);
        let packets = candidates
            .iter()
            .map(|c| {
                // embed the local block into its columns of a zero m×n array
                let mut full = Matrix::zeros(c.rows(), n);
                for a in 0..c.rows() {
                    for t in 0..s {
                        full.set(a, (j - 1) * s + t, c.get(a, t));
                    }
                }
                transmit_matrix(&full, j, s).transpose()
            })
            .collect();
        Ok(Self {
            j,
            s,
            candidates,
            packets,
        })
    }

    pub fn rack(&self) -> usize {
        self.j
    }

    /// Local codewords (m×s), in candidate order.
    pub fn candidates(&self) -> &[Matrix] {
        &self.candidates
    }

    /// Index of a local codeword among the candidates.
    pub fn index_of(&self, local: &Matrix) -> Option<usize> {
        self.candidates.iter().position(|c| c == local)
    }

    /// `argmin d_S(⟨X'^T⟩, ⟨Y^T⟩)` over the candidates.
    pub fn decode(&self, y: &Matrix, gf: &BaseField) -> Result<SubspaceDecision> {
        let yt = y.transpose();
        if yt.rows() != self.packets.first().map_or(0, Matrix::rows) {
            return Err(crate::error::shape_err(self.packets[0].rows(), yt.rows()));
        }
        let dim_y = yt.rank(gf);
        let mut best = usize::MAX;
        let mut winners = Vec::new();
        for (idx, xt) in self.packets.iter().enumerate() {
            let joint = xt.hstack(&yt)?.rank(gf);
            let d = 2 * joint - self.s - dim_y;
            if d < best {
                best = d;
                winners.clear();
            }
            if d == best {
                winners.push(idx);
            }
        }
        Ok(if winners.len() == 1 {
            SubspaceDecision::Unique {
                index: winners[0],
                distance: best,
            }
        } else {
            SubspaceDecision::Tie {
                indices: winners,
                distance: best,
            }
        })
    }
}

/// Per-(ρ, t) tallies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub trials: usize,
    pub successes: usize,
}

/// Outcome of a batch of trials.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialReport {
    pub rack: usize,
    pub config: ChannelConfig,
    pub trials: usize,
    pub successes: usize,
    pub ties: usize,
    /// Keyed by realized (ρ, t).
    pub histogram: BTreeMap<(usize, usize), Tally>,
    pub delta: usize,
    pub wall_time: Duration,
}

impl TrialReport {
    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            return 1.0;
        }
        self.successes as f64 / self.trials as f64
    }

    /// Whether `2 t_max + ρ_max <= δ - 1`.
    pub fn within_guarantee(&self) -> bool {
        2 * self.config.t_max + self.config.rho_max < self.delta
    }

    /// The report without timing, for comparing runs.
    pub fn key_values(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        out.push_str(&format!("rack={}\n", self.rack));
        out.push_str(&format!(
            "s={}\ncollect={}\nrho_max={}\nt_max={}\nlinks={}\nseed={}\n",
            c.s, c.collect, c.rho_max, c.t_max, c.links, c.seed
        ));
        out.push_str(&format!(
            "trials={}\nsuccesses={}\nties={}\n",
            self.trials, self.successes, self.ties
        ));
        out.push_str(&format!("success_rate={:.6}\n", self.success_rate()));
        out.push_str(&format!("within_guarantee={}\n", self.within_guarantee()));
        for ((rho, t), tally) in &self.histogram {
            out.push_str(&format!(
                "realized rho={rho} t={t} trials={} successes={}\n",
                tally.trials, tally.successes
            ));
        }
        out
    }
}

impl fmt::Display for TrialReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>5} {:>5} {:>8} {:>10} {:>8}",
            "rho", "t", "trials", "successes", "rate"
        )?;
        for ((rho, t), tally) in &self.histogram {
            let rate = tally.successes as f64 / tally.trials.max(1) as f64;
            writeln!(
                f,
                "{rho:>5} {t:>5} {:>8} {:>10} {rate:>8.4}",
                tally.trials, tally.successes
            )?;
        }
        writeln!(f)?;
        f.write_str(&self.key_values())?;
        write!(f, "wall_time_ms={}", self.wall_time.as_millis())
    }
}

/// The RNG stream of trial `index`.
pub fn trial_rng(seed: u64, index: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Runs `trials` downloads of rack `j`, each with a fresh uniform message.
pub fn run_trials(
    code: &LocalRankCode,
    decoder: &RackDecoder,
    config: &ChannelConfig,
    trials: usize,
) -> Result<TrialReport> {
    let params = code.params();
    config.validate(params.r)?;
    let j = decoder.rack();
    if config.s != params.s() {
        return Err(Error::InvalidChannel(format!(
            "s = {} but the code has s = {}",
            config.s,
            params.s()
        )));
    }
    let field = code.field();
    let gf = field.base();
    let start = Instant::now();
    let mut histogram: BTreeMap<(usize, usize), Tally> = BTreeMap::new();
    let (mut successes, mut ties) = (0, 0);
    let cols: Vec<usize> = code.group_columns(j).collect();
    for i in 0..trials {
        let mut rng = trial_rng(config.seed, i as u64);
        let msg: Vec<_> = (0..params.k)
            .map(|_| field.from_index(rng.gen_range(0..field.order())))
            .collect();
        let cw = code.encode_matrix(&msg)?;
        let sent = decoder.index_of(&cw.select_columns(&cols)).ok_or(Error::NotCodeword)?;
        let out = channel_apply(&transmit_matrix(&cw, j, params.s()), config, gf, &mut rng)?;
        let ok = match decoder.decode(&out.y, gf)? {
            SubspaceDecision::Unique { index, .. } => index == sent,
            SubspaceDecision::Tie { .. } => {
                ties += 1;
                false
            }
        };
        let tally = histogram.entry((out.rho, out.t)).or_default();
        tally.trials += 1;
        if ok {
            tally.successes += 1;
            successes += 1;
        }
    }
    Ok(TrialReport {
        rack: j,
        config: *config,
        trials,
        successes,
        ties,
        histogram,
        delta: params.delta,
        wall_time: start.elapsed(),
    })
}
