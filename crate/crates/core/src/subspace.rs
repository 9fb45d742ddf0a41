//! Subspaces in reduced column echelon form, the subspace distance, lifting
//! of matrix codes, and subspace-locality checks.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::codes::{enumerate_codewords, RankCode};
use crate::error::{shape_err, Error, Result};
use crate::gf::BaseField;
use crate::matrix::Matrix;

/// A subspace of GF(q)^M, stored as the RCEF basis matrix of its columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Column span of `m`.
    pub fn span(m: &Matrix, gf: &BaseField) -> Self {
        Self { basis: m.rcef(gf) }
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            basis: Matrix::zeros(ambient, 0),
        }
    }

    /// Accepts a basis already in RCEF.
    pub fn from_rcef(basis: Matrix, gf: &BaseField) -> Result<Self> {
        if basis.rcef(gf) != basis {
            return Err(Error::InvalidParams(
                "basis is not in reduced column echelon form".into(),
            ));
        }
        Ok(Self { basis })
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// `dim U + dim V - 2 dim(U ∩ V)`.
    pub fn distance(&self, other: &Subspace, gf: &BaseField) -> Result<usize> {
        subspace_distance(self, other, gf)
    }

    /// Span of the basis columns listed in `cols`.
    pub fn project(&self, cols: &[usize], gf: &BaseField) -> Self {
        Self::span(&self.basis.select_columns(cols), gf)
    }
}

/// `2 rank[U | V] - dim U - dim V`.
pub fn subspace_distance(u: &Subspace, v: &Subspace, gf: &BaseField) -> Result<usize> {
    if u.ambient() != v.ambient() {
        return Err(shape_err(u.ambient(), v.ambient()));
    }
    let joint = u.basis.hstack(&v.basis)?.rank(gf);
    Ok(2 * joint - u.dim() - v.dim())
}

/// `⟨[I; X]⟩`, an n-dimensional subspace of GF(q)^(m+n) for an m×n matrix X.
pub fn lift(x: &Matrix) -> Subspace {
    let basis = Matrix::identity(x.cols())
        .vstack(x)
        .expect("identity and X share the column count");
    Subspace { basis }
}

/// The lifting of a matrix code, held as its source matrices.
#[derive(Clone, Debug)]
pub struct LiftedCode {
    source: Vec<Matrix>,
    sampled: bool,
}

impl LiftedCode {
    /// Every codeword of `code`, within `budget`.
    pub fn new<C: RankCode + ?Sized>(code: &C, budget: u128) -> Result<Self> {
        Ok(Self {
            source: enumerate_codewords(code, budget)?,
            sampled: false,
        })
    }

    /// The zero codeword plus `samples` random codewords.
    pub fn sampled<C: RankCode + ?Sized>(code: &C, samples: usize, seed: u64) -> Result<Self> {
        let field = code.field();
        let mut rng = SplitMix64::seed_from_u64(seed);
        let mut source = vec![Matrix::zeros(field.degree(), code.length())];
        for _ in 0..samples {
            let msg: Vec<_> = (0..code.dimension())
                .map(|_| field.from_index(rng.gen_range(0..field.order())))
                .collect();
            source.push(code.encode_matrix(&msg)?);
        }
        source.sort();
        source.dedup();
        Ok(Self { source, sampled: true })
    }

    /// Whether the code was sampled rather than enumerated.
    pub fn is_sampled(&self) -> bool {
        self.sampled
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn source(&self) -> &[Matrix] {
        &self.source
    }

    pub fn subspaces(&self) -> impl Iterator<Item = Subspace> + '_ {
        self.source.iter().map(lift)
    }

    /// Minimum distance through `2 min rank(X - X')`, which by linearity is
    /// twice the least rank of a nonzero source matrix.
    pub fn min_distance(&self, gf: &BaseField) -> Result<usize> {
        if self.source.len() < 2 {
            return Err(Error::Degenerate);
        }
        self.source
            .iter()
            .filter(|x| !x.is_zero())
            .map(|x| 2 * x.rank(gf))
            .min()
            .ok_or(Error::Degenerate)
    }

    /// Minimum subspace distance over distinct pairs, all of them when there
    /// are at most `max_pairs`, otherwise `max_pairs` random ones.
    pub fn pairwise_min_distance(&self, gf: &BaseField, max_pairs: usize, seed: u64) -> Result<usize> {
        let subs: Vec<Subspace> = self.subspaces().collect();
        pairwise_min(&subs, gf, max_pairs, seed)
    }
}

fn pairwise_min(subs: &[Subspace], gf: &BaseField, max_pairs: usize, seed: u64) -> Result<usize> {
    let n = subs.len();
    if n < 2 {
        return Err(Error::Degenerate);
    }
    let total = n * (n - 1) / 2;
    let mut best = usize::MAX;
    if total <= max_pairs {
        for a in 0..n {
            for b in a + 1..n {
                best = best.min(subspace_distance(&subs[a], &subs[b], gf)?);
            }
        }
    } else {
        let mut rng = SplitMix64::seed_from_u64(seed);
        for _ in 0..max_pairs {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            best = best.min(subspace_distance(&subs[a], &subs[b], gf)?);
        }
    }
    Ok(best)
}

/// Outcome of the locality conditions for one repair group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCheck {
    pub columns: Vec<usize>,
    pub size_ok: bool,
    pub dimension_ok: bool,
    pub distance: usize,
    pub distance_ok: bool,
    pub distinct: usize,
}

impl GroupCheck {
    pub fn passed(&self) -> bool {
        self.size_ok && self.dimension_ok && self.distance_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalityReport {
    pub r: usize,
    pub delta: usize,
    pub groups: Vec<GroupCheck>,
    pub sampled: bool,
}

impl LocalityReport {
    pub fn passed(&self) -> bool {
        self.groups.iter().all(GroupCheck::passed)
    }
}

/// Checks (r, δ) subspace-locality of a lifted code whose repair groups are
/// `groups` (column index sets partitioning the basis).
///
/// For each group: it has at most r + δ - 1 columns, every projected
/// codeword keeps full dimension, and the distinct projections are pairwise
/// at subspace distance at least δ. Pairs beyond `max_pairs` are sampled.
pub fn verify_subspace_locality(
    lifted: &LiftedCode,
    groups: &[Vec<usize>],
    r: usize,
    delta: usize,
    gf: &BaseField,
    max_pairs: usize,
    seed: u64,
) -> Result<LocalityReport> {
    let mut checks = Vec::with_capacity(groups.len());
    let mut sampled = lifted.is_sampled();
    for cols in groups {
        let projected: BTreeSet<Subspace> = lifted.subspaces().map(|s| s.project(cols, gf)).collect();
        let dimension_ok = projected.iter().all(|p| p.dim() == cols.len());
        let projected: Vec<Subspace> = projected.into_iter().collect();
        let n = projected.len();
        sampled |= n * n.saturating_sub(1) / 2 > max_pairs;
        let distance = pairwise_min(&projected, gf, max_pairs, seed)?;
        checks.push(GroupCheck {
            columns: cols.clone(),
            size_ok: cols.len() < r + delta,
            dimension_ok,
            distance,
            distance_ok: distance >= delta,
            distinct: n,
        });
    }
    Ok(LocalityReport {
        r,
        delta,
        groups: checks,
        sampled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> BaseField {
        BaseField::new(2).unwrap()
    }

    #[test]
    fn complementary_lines() {
        let gf = gf2();
        let u = Subspace::span(&Matrix::from_rows(&[vec![1], vec![0]]).unwrap(), &gf);
        let v = Subspace::span(&Matrix::from_rows(&[vec![0], vec![1]]).unwrap(), &gf);
        assert_eq!(u.distance(&v, &gf).unwrap(), 2);
        assert_eq!(u.distance(&u, &gf).unwrap(), 0);
    }

    #[test]
    fn span_is_canonical() {
        let gf = gf2();
        let h = Matrix::from_rows(&[vec![1, 1], vec![0, 1], vec![1, 1]]).unwrap();
        let g = Matrix::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap();
        let hg = h.mul(&g, &gf).unwrap();
        assert_eq!(Subspace::span(&h, &gf), Subspace::span(&hg, &gf));
    }

    #[test]
    fn lift_is_rcef() {
        let gf = gf2();
        let x = Matrix::from_rows(&[vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        let s = lift(&x);
        assert_eq!(s.ambient(), 5);
        assert_eq!(s.dim(), 3);
        assert!(Subspace::from_rcef(s.basis().clone(), &gf).is_ok());
        let zero = lift(&Matrix::zeros(2, 3));
        assert_eq!(zero.distance(&s, &gf).unwrap(), 2 * x.rank(&gf));
    }

    #[test]
    fn ambient_mismatch() {
        let gf = gf2();
        assert!(subspace_distance(&Subspace::zero(3), &Subspace::zero(4), &gf).is_err());
    }

    #[test]
    fn single_codeword_is_degenerate() {
        let lc = LiftedCode {
            source: vec![Matrix::zeros(2, 2)],
            sampled: false,
        };
        assert_eq!(lc.min_distance(&gf2()), Err(Error::Degenerate));
    }
}
