//! Rank-metric codes: Gabidulin codes and evaluation codes with
//! (r, δ) rank-locality, plus exhaustive and sampled distance oracles.
//!
//! Every code here is GF(q^m)-linear; as an array code it is the GF(q)-span
//! of the m·k basis codeword matrices returned by [`RankCode::gf_basis`].

mod gabidulin;
mod local;
mod oracle;

pub use gabidulin::GabidulinCode;
pub use local::LocalRankCode;
pub use oracle::{
    codeword_count, enumerate_codewords, for_each_codeword, local_min_rank_distance, min_rank_distance,
    sampled_min_rank, SampledDistance, DEFAULT_ORACLE_BUDGET,
};

use crate::error::{Error, Result};
use crate::gf::{to_matrix, Field, FieldElement};
use crate::matrix::Matrix;

/// Parameters `(q, m, n, k, r, δ)` of a rank-metric code with rank-locality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CodeParams {
    pub q: usize,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub delta: usize,
}

impl CodeParams {
    pub fn new(q: usize, m: usize, n: usize, k: usize, r: usize, delta: usize) -> Result<Self> {
        let p = Self { q, m, n, k, r, delta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { m, n, k, r, delta, .. } = *self;
        if m == 0 || n == 0 || k == 0 || r == 0 || delta == 0 {
            return Err(Error::InvalidParams("all parameters must be positive".into()));
        }
        if k % r != 0 {
            return Err(Error::InvalidParams("r must divide k".into()));
        }
        let s = self.s();
        if n % s != 0 {
            return Err(Error::Divisibility(format!("r + delta - 1 = {s} must divide n = {n}")));
        }
        if m % n != 0 {
            return Err(Error::Divisibility(format!("n = {n} must divide m = {m}")));
        }
        if k > n {
            return Err(Error::InvalidParams(format!("k = {k} exceeds n = {n}")));
        }
        // largest q-exponent s(k/r - 1) + r - 1 must stay below n
        if self.max_q_exponent() >= n {
            return Err(Error::InvalidParams(format!(
                "k/r = {} local blocks need more than n = {n} evaluation points",
                k / r
            )));
        }
        Ok(())
    }

    /// s = r + δ - 1, the size of each local group.
    pub fn s(&self) -> usize {
        self.r + self.delta - 1
    }

    /// μ = n / s, the number of local groups.
    pub fn mu(&self) -> usize {
        self.n / self.s()
    }

    pub fn max_q_exponent(&self) -> usize {
        self.s() * (self.k / self.r - 1) + self.r - 1
    }

    /// Upper bound on the minimum rank distance, attained by the construction.
    pub fn distance_bound(&self) -> usize {
        distance_bound_rank(self.n, self.k, self.r, self.delta) as usize
    }
}

/// `n - k + 1 - (⌈k/r⌉ - 1)(δ - 1)`, the rank-distance bound for codes with
/// (r, δ) rank-locality.
pub fn distance_bound_rank(n: usize, k: usize, r: usize, delta: usize) -> i64 {
    let blocks = k.div_ceil(r) as i64;
    n as i64 - k as i64 + 1 - (blocks - 1) * (delta as i64 - 1)
}

/// The Hamming-metric bound for codes with (r, δ) locality; it has the same
/// form as the rank-metric one.
pub fn distance_bound_hamming(n: usize, k: usize, r: usize, delta: usize) -> i64 {
    distance_bound_rank(n, k, r, delta)
}

/// A GF(q^m)-linear code of length n whose codewords are read as m×n
/// matrices over GF(q).
pub trait RankCode {
    fn field(&self) -> &Field;

    /// Code length n.
    fn length(&self) -> usize;

    /// Dimension k over GF(q^m).
    fn dimension(&self) -> usize;

    fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>>;

    fn encode_matrix(&self, message: &[FieldElement]) -> Result<Matrix> {
        Ok(to_matrix(self.field(), &self.encode(message)?))
    }

    /// Codeword matrices of the m·k GF(q)-basis messages `x^a e_t`, ordered
    /// `t * m + a`.
    fn gf_basis(&self) -> Vec<Matrix> {
        let field = self.field();
        let (m, k) = (field.degree(), self.dimension());
        let mut out = Vec::with_capacity(m * k);
        for t in 0..k {
            for a in 0..m {
                let mut msg = vec![FieldElement::ZERO; k];
                msg[t] = field.x_pow(a as u128);
                out.push(self.encode_matrix(&msg).expect("basis message has length k"));
            }
        }
        out
    }

    /// Generator over GF(q): one row per basis codeword, flattened row-major.
    fn gf_generator(&self) -> Matrix {
        let basis = self.gf_basis();
        let cols = self.field().degree() * self.length();
        let mut data = Vec::with_capacity(basis.len() * cols);
        for b in &basis {
            data.extend_from_slice(b.as_slice());
        }
        Matrix::from_vec(basis.len(), cols, data).expect("consistent basis shapes")
    }
}

/// Message whose GF(q) coordinates (w.r.t. [`RankCode::gf_basis`]) are `u`.
pub fn message_from_gf(field: &Field, u: &[u8]) -> Result<Vec<FieldElement>> {
    let m = field.degree();
    if !u.len().is_multiple_of(m) {
        return Err(crate::error::shape_err(format!("multiple of {m}"), u.len()));
    }
    let x = field.x();
    u.chunks(m)
        .map(|chunk| {
            // Σ_a u_a x^a through Horner on the powers of x
            let mut acc = FieldElement::ZERO;
            for &c in chunk.iter().rev() {
                acc = field.add(field.mul(acc, x), field.scalar(c));
            }
            Ok(acc)
        })
        .collect()
}
