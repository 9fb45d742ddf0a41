//! Crisscross erasure and error patterns, cover-based weights, the
//! local/global correctability predicates, and erasure decoding.

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use crate::codes::{CodeParams, LocalRankCode, RankCode};
use crate::error::{shape_err, Error, Result};
use crate::gf::{BaseField, Field};
use crate::matrix::Matrix;

/// Positions of erased symbols in an m×n array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ErasurePattern {
    mask: Matrix,
}

impl ErasurePattern {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            mask: Matrix::zeros(rows, cols),
        }
    }

    /// From a 0/1 matrix.
    pub fn from_mask(mask: Matrix) -> Result<Self> {
        if let Some(&v) = mask.as_slice().iter().find(|&&v| v > 1) {
            return Err(Error::CoordinateOutOfRange { value: v as u64, q: 2 });
        }
        Ok(Self { mask })
    }

    /// Erases every listed `(row, col)` cell.
    pub fn from_cells(rows: usize, cols: usize, cells: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut p = Self::new(rows, cols);
        for (i, j) in cells {
            p.erase(i, j);
        }
        p
    }

    pub fn erase(&mut self, i: usize, j: usize) {
        self.mask.set(i, j, 1);
    }

    pub fn erase_row(&mut self, i: usize) {
        for j in 0..self.cols() {
            self.erase(i, j);
        }
    }

    pub fn erase_column(&mut self, j: usize) {
        for i in 0..self.rows() {
            self.erase(i, j);
        }
    }

    pub fn is_erased(&self, i: usize, j: usize) -> bool {
        self.mask.get(i, j) != 0
    }

    /// Whether the row-major coordinate `i * cols + j` is erased.
    pub fn is_erased_flat(&self, idx: usize) -> bool {
        self.mask.as_slice()[idx] != 0
    }

    pub fn rows(&self) -> usize {
        self.mask.rows()
    }

    pub fn cols(&self) -> usize {
        self.mask.cols()
    }

    pub fn count(&self) -> usize {
        self.mask.as_slice().iter().filter(|&&v| v != 0).count()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_zero()
    }

    pub fn mask(&self) -> &Matrix {
        &self.mask
    }

    pub fn restrict(&self, cols: Range<usize>) -> Self {
        Self {
            mask: self.mask.select_columns(&cols.collect::<Vec<_>>()),
        }
    }

    pub fn clear_columns(&mut self, cols: Range<usize>) {
        for i in 0..self.rows() {
            for j in cols.clone() {
                self.mask.set(i, j, 0);
            }
        }
    }

    /// Crisscross weight: the size of a minimum cover.
    pub fn weight(&self) -> usize {
        crisscross_weight(&self.mask).0
    }
}

/// Error values; zero wherever the array is erased.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorPattern {
    values: Matrix,
}

impl ErrorPattern {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            values: Matrix::zeros(rows, cols),
        }
    }

    pub fn new(values: Matrix, erasures: &ErasurePattern) -> Result<Self> {
        if values.shape() != erasures.mask().shape() {
            return Err(shape_err(
                format!("{:?}", erasures.mask().shape()),
                format!("{:?}", values.shape()),
            ));
        }
        let overlap = values
            .as_slice()
            .iter()
            .zip(erasures.mask().as_slice())
            .any(|(&v, &e)| v != 0 && e != 0);
        if overlap {
            return Err(Error::InvalidParams("error values must be zero on erased cells".into()));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn restrict(&self, cols: Range<usize>) -> Self {
        Self {
            values: self.values.select_columns(&cols.collect::<Vec<_>>()),
        }
    }

    pub fn rank(&self, gf: &BaseField) -> usize {
        self.values.rank(gf)
    }
}

/// A set of rows and columns containing every nonzero entry of a matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cover {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Cover {
    pub fn size(&self) -> usize {
        self.rows.len() + self.cols.len()
    }

    pub fn covers(&self, m: &Matrix) -> bool {
        (0..m.rows())
            .all(|i| self.rows.contains(&i) || (0..m.cols()).all(|j| m.get(i, j) == 0 || self.cols.contains(&j)))
    }
}

/// Minimum cover size of the support of `m`, with a minimum cover.
///
/// The weight is the size of a maximum row/column matching (augmenting paths
/// tried from the lowest index); the cover is read off the final matching.
pub fn crisscross_weight(m: &Matrix) -> (usize, Cover) {
    let (rows, cols) = m.shape();
    let adj: Vec<Vec<usize>> = (0..rows)
        .map(|i| (0..cols).filter(|&j| m.get(i, j) != 0).collect())
        .collect();
    let mut col_match: Vec<Option<usize>> = vec![None; cols];
    for i in 0..rows {
        let mut seen = vec![false; cols];
        augment(i, &adj, &mut seen, &mut col_match);
    }
    let mut row_matched = vec![false; rows];
    for &r in col_match.iter().flatten() {
        row_matched[r] = true;
    }
    let size = row_matched.iter().filter(|&&b| b).count();

    // alternating reachability from unmatched rows
    let mut row_seen = vec![false; rows];
    let mut col_seen = vec![false; cols];
    let mut stack: Vec<usize> = (0..rows).filter(|&i| !row_matched[i]).collect();
    for &i in &stack {
        row_seen[i] = true;
    }
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if !col_seen[j] {
                col_seen[j] = true;
                if let Some(r) = col_match[j] {
                    if !row_seen[r] {
                        row_seen[r] = true;
                        stack.push(r);
                    }
                }
            }
        }
    }
    let cover = Cover {
        rows: (0..rows).filter(|&i| !row_seen[i]).collect(),
        cols: (0..cols).filter(|&j| col_seen[j]).collect(),
    };
    debug_assert_eq!(cover.size(), size);
    (size, cover)
}

fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], col_match: &mut [Option<usize>]) -> bool {
    for &j in &adj[i] {
        if seen[j] {
            continue;
        }
        seen[j] = true;
        if col_match[j].is_none_or(|r| augment(r, adj, seen, col_match)) {
            col_match[j] = Some(i);
            return true;
        }
    }
    false
}

/// `2 rank(Φ_j) + wt(E_j)` for local array j (1-based).
pub fn local_load(params: &CodeParams, gf: &BaseField, e: &ErasurePattern, phi: &ErrorPattern, j: usize) -> usize {
    let s = params.s();
    let cols = (j - 1) * s..j * s;
    2 * phi.restrict(cols.clone()).rank(gf) + e.restrict(cols).weight()
}

/// Whether local array j can repair its own erasures and errors.
pub fn delta_j(params: &CodeParams, gf: &BaseField, e: &ErasurePattern, phi: &ErrorPattern, j: usize) -> bool {
    local_load(params, gf, e, phi, j) < params.delta
}

/// Verdict of the correctability predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correctability {
    /// Local arrays with a nonzero pattern that they repair on their own.
    pub local: Vec<usize>,
    /// `2 rank(Φ) + wt(E)` minus the load handled locally.
    pub residual: usize,
    /// Distance used for the global check.
    pub distance: usize,
    pub global: bool,
}

impl Correctability {
    pub fn guaranteed(&self) -> bool {
        self.global
    }
}

impl fmt::Display for Correctability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.local.is_empty() {
            let js: Vec<String> = self.local.iter().map(|j| j.to_string()).collect();
            parts.push(format!("LOCAL j={}", js.join(",")));
        }
        if self.global {
            parts.push("GLOBAL".to_string());
        } else {
            parts.push("NONE".to_string());
        }
        f.write_str(&parts.join(" "))
    }
}

/// Correctability with the code's distance bound as d.
pub fn correctable(code: &LocalRankCode, e: &ErasurePattern, phi: &ErrorPattern) -> Correctability {
    correctable_with_distance(code.params(), code.field().base(), e, phi, code.distance_bound())
}

/// Correctability with an explicit distance d.
pub fn correctable_with_distance(
    params: &CodeParams,
    gf: &BaseField,
    e: &ErasurePattern,
    phi: &ErrorPattern,
    d: usize,
) -> Correctability {
    let total = 2 * phi.rank(gf) + e.weight();
    let mut local = Vec::new();
    let mut handled = 0;
    for j in 1..=params.mu() {
        let load = local_load(params, gf, e, phi, j);
        if load < params.delta {
            handled += load;
            if load > 0 {
                local.push(j);
            }
        }
    }
    let residual = total.saturating_sub(handled);
    Correctability {
        local,
        residual,
        distance: d,
        global: residual < d,
    }
}

/// Fills erased coordinates of a GF(q)-linear array code.
///
/// The generator is row-reduced with pivots taken only among unerased
/// coordinates; the completion is unique exactly when every row gets a pivot.
#[derive(Clone, Debug)]
pub struct ErasureDecoder {
    reduced: Matrix,
    pivots: Vec<usize>,
    dimension: usize,
    shape: (usize, usize),
    erasures: ErasurePattern,
}

impl ErasureDecoder {
    /// `generator` has one flattened (row-major) `rows × cols` codeword per row.
    pub fn new(generator: &Matrix, erasures: &ErasurePattern, gf: &BaseField) -> Result<Self> {
        let shape = erasures.mask().shape();
        if generator.cols() != shape.0 * shape.1 {
            return Err(shape_err(shape.0 * shape.1, generator.cols()));
        }
        let mut reduced = generator.clone();
        let pivots = reduced.rref_in_place(gf, |c| !erasures.is_erased_flat(c));
        let reduced = reduced.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        Ok(Self {
            reduced,
            pivots,
            dimension: generator.rank(gf),
            shape,
            erasures: erasures.clone(),
        })
    }

    /// Whether the unerased coordinates determine the codeword.
    pub fn is_unique(&self) -> bool {
        self.pivots.len() == self.dimension
    }

    /// Completes `received`; values at erased cells are ignored.
    pub fn decode(&self, received: &Matrix, gf: &BaseField) -> Result<Matrix> {
        if received.shape() != self.shape {
            return Err(shape_err(
                format!("{:?}", self.shape),
                format!("{:?}", received.shape()),
            ));
        }
        if !self.is_unique() {
            return Err(Error::ExceedsGuarantee);
        }
        let y = received.as_slice();
        let mut out = vec![0u8; y.len()];
        for (t, &p) in self.pivots.iter().enumerate() {
            if y[p] != 0 {
                gf.axpy(&mut out, y[p], self.reduced.row(t));
            }
        }
        let rebuilt = Matrix::from_vec(self.shape.0, self.shape.1, out)?;
        check_agrees(&rebuilt, received, &self.erasures)?;
        Ok(rebuilt)
    }
}

/// Recovered array plus which stages produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recovered {
    pub codeword: Matrix,
    pub local: Vec<usize>,
    pub global: bool,
}

/// Local-then-global erasure decoding for one erasure pattern.
#[derive(Clone, Debug)]
pub struct CrisscrossDecoder {
    field: Arc<Field>,
    s: usize,
    erasures: ErasurePattern,
    verdict: Correctability,
    local: Vec<(usize, ErasureDecoder)>,
    global: ErasureDecoder,
    global_needed: bool,
}

impl CrisscrossDecoder {
    pub fn new(code: &LocalRankCode, erasures: &ErasurePattern) -> Result<Self> {
        Self::with_generator(code, &code.gf_generator(), erasures)
    }

    /// Reuses a precomputed GF(q) generator of `code`.
    pub fn with_generator(code: &LocalRankCode, generator: &Matrix, erasures: &ErasurePattern) -> Result<Self> {
        let field = code.field_arc().clone();
        let (m, n) = (field.degree(), code.params().n);
        if erasures.mask().shape() != (m, n) {
            return Err(shape_err(
                format!("({m}, {n})"),
                format!("{:?}", erasures.mask().shape()),
            ));
        }
        let gf = field.base();
        let verdict = correctable(code, erasures, &ErrorPattern::zero(m, n));
        let mut residual = erasures.clone();
        let mut local = Vec::new();
        for &j in &verdict.local {
            let cols = code.group_columns(j);
            let sub = erasures.restrict(cols.clone());
            let gen = code.local_code(j)?.gf_generator();
            local.push((j, ErasureDecoder::new(&gen, &sub, gf)?));
            residual.clear_columns(cols);
        }
        let global = ErasureDecoder::new(generator, &residual, gf)?;
        Ok(Self {
            s: code.params().s(),
            field,
            erasures: erasures.clone(),
            verdict,
            local,
            global,
            global_needed: !residual.is_empty(),
        })
    }

    pub fn verdict(&self) -> &Correctability {
        &self.verdict
    }

    pub fn erasures(&self) -> &ErasurePattern {
        &self.erasures
    }

    pub fn decode(&self, received: &Matrix) -> Result<Recovered> {
        let gf = self.field.base();
        if received.shape() != self.erasures.mask().shape() {
            return Err(shape_err(
                format!("{:?}", self.erasures.mask().shape()),
                format!("{:?}", received.shape()),
            ));
        }
        let mut work = received.clone();
        let mut repaired = Vec::new();
        for (j, dec) in &self.local {
            let cols: Vec<usize> = ((j - 1) * self.s..j * self.s).collect();
            let block = dec.decode(&work.select_columns(&cols), gf)?;
            for i in 0..block.rows() {
                for (t, &c) in cols.iter().enumerate() {
                    work.set(i, c, block.get(i, t));
                }
            }
            repaired.push(*j);
        }
        Ok(Recovered {
            codeword: self.global.decode(&work, gf)?,
            global: self.global_needed,
            local: repaired,
        })
    }
}

fn check_agrees(candidate: &Matrix, received: &Matrix, erasures: &ErasurePattern) -> Result<()> {
    let ok = candidate
        .as_slice()
        .iter()
        .zip(received.as_slice())
        .enumerate()
        .all(|(idx, (a, b))| erasures.is_erased_flat(idx) || a == b);
    if ok {
        Ok(())
    } else {
        Err(Error::NotCodeword)
    }
}

/// Outcome of minimum rank distance decoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nearest {
    Unique { codeword: Matrix, distance: usize },
    Tie { codewords: Vec<Matrix>, distance: usize },
}

impl Nearest {
    pub fn unique(&self) -> Option<&Matrix> {
        match self {
            Nearest::Unique { codeword, .. } => Some(codeword),
            Nearest::Tie { .. } => None,
        }
    }

    pub fn distance(&self) -> usize {
        match self {
            Nearest::Unique { distance, .. } | Nearest::Tie { distance, .. } => *distance,
        }
    }
}

/// Exhaustive nearest-codeword search in rank distance.
#[derive(Clone, Debug)]
pub struct MinDistanceDecoder {
    codewords: Vec<Matrix>,
}

impl MinDistanceDecoder {
    pub fn new<C: RankCode + ?Sized>(code: &C, budget: u128) -> Result<Self> {
        Ok(Self {
            codewords: crate::codes::enumerate_codewords(code, budget)?,
        })
    }

    pub fn codewords(&self) -> &[Matrix] {
        &self.codewords
    }

    /// Nearest codewords to `y`. With a cover, its rows and columns are deleted
    /// from every difference first (they hold erased symbols).
    pub fn decode(&self, y: &Matrix, gf: &BaseField, erased: Option<&Cover>) -> Result<Nearest> {
        let first = self.codewords.first().ok_or(Error::Degenerate)?;
        if first.shape() != y.shape() {
            return Err(shape_err(format!("{:?}", first.shape()), format!("{:?}", y.shape())));
        }
        let (keep_rows, keep_cols): (Vec<usize>, Vec<usize>) = match erased {
            Some(c) => (
                (0..y.rows()).filter(|i| !c.rows.contains(i)).collect(),
                (0..y.cols()).filter(|j| !c.cols.contains(j)).collect(),
            ),
            None => ((0..y.rows()).collect(), (0..y.cols()).collect()),
        };
        let mut best = usize::MAX;
        let mut winners: Vec<&Matrix> = Vec::new();
        for c in &self.codewords {
            let diff = y.sub(c, gf)?.select_rows(&keep_rows).select_columns(&keep_cols);
            let d = diff.rank(gf);
            if d < best {
                best = d;
                winners.clear();
            }
            if d == best {
                winners.push(c);
            }
        }
        Ok(if winners.len() == 1 {
            Nearest::Unique {
                codeword: winners[0].clone(),
                distance: best,
            }
        } else {
            Nearest::Tie {
                codewords: winners.into_iter().cloned().collect(),
                distance: best,
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{FieldSpec, FieldTower, TowerOverrides};

    fn two_rows() -> Matrix {
        let mut m = Matrix::zeros(4, 4);
        for j in 0..4 {
            m.set(0, j, 1);
            m.set(2, j, 1);
        }
        m
    }

    fn brute_cover(m: &Matrix) -> usize {
        let (r, c) = m.shape();
        let mut best = r + c;
        for xs in 0u32..1 << r {
            for ys in 0u32..1 << c {
                let ok = (0..r).all(|i| xs >> i & 1 == 1 || (0..c).all(|j| m.get(i, j) == 0 || ys >> j & 1 == 1));
                if ok {
                    best = best.min((xs.count_ones() + ys.count_ones()) as usize);
                }
            }
        }
        best
    }

    #[test]
    fn two_row_weight_and_witness() {
        let (w, cover) = crisscross_weight(&two_rows());
        assert_eq!(w, 2);
        assert_eq!(
            cover,
            Cover {
                rows: vec![0, 2],
                cols: vec![]
            }
        );
        let gf = BaseField::new(2).unwrap();
        assert_eq!(two_rows().rank(&gf), 1);
    }

    #[test]
    fn trivial_weights() {
        assert_eq!(crisscross_weight(&Matrix::zeros(3, 5)).0, 0);
        assert_eq!(crisscross_weight(&Matrix::identity(6)).0, 6);
    }

    #[test]
    fn konig_matches_exhaustive_on_all_3x3() {
        for bits in 0u32..1 << 9 {
            let data = (0..9).map(|t| (bits >> t & 1) as u8).collect();
            let m = Matrix::from_vec(3, 3, data).unwrap();
            let (w, cover) = crisscross_weight(&m);
            assert_eq!(w, brute_cover(&m));
            assert!(cover.covers(&m));
            assert_eq!(cover.size(), w);
        }
    }

    #[test]
    fn error_pattern_must_avoid_erasures() {
        let e = ErasurePattern::from_cells(2, 2, [(0, 0)]);
        let mut v = Matrix::zeros(2, 2);
        v.set(0, 0, 1);
        assert!(ErrorPattern::new(v.clone(), &e).is_err());
        v.set(0, 0, 0);
        v.set(1, 1, 1);
        assert!(ErrorPattern::new(v, &e).is_ok());
    }

    fn gf512() -> LocalRankCode {
        let f = Arc::new(Field::new(&FieldSpec::new(2, 9, vec![1, 0, 0, 0, 1, 0, 0, 0, 0, 1])).unwrap());
        let w = |k| f.x_pow(k);
        let ov = TowerOverrides {
            generator: Some(w(73)),
            basis_a: Some(vec![w(0), w(73), w(146)]),
            basis_b: Some(vec![w(0), w(309), w(107)]),
        };
        let tower = FieldTower::build(f.clone(), 9, 2, 2, &ov).unwrap();
        LocalRankCode::new(CodeParams::new(2, 9, 9, 4, 2, 2).unwrap(), tower).unwrap()
    }

    fn mixed_pattern() -> ErasurePattern {
        let mut e = ErasurePattern::new(9, 9);
        for i in 0..3 {
            for j in 0..3 {
                e.erase(i, j);
            }
        }
        for j in 3..6 {
            e.erase(0, j);
        }
        e.erase_column(3);
        for j in 6..9 {
            e.erase(8, j);
        }
        e
    }

    #[test]
    fn mixed_pattern_verdict() {
        let code = gf512();
        let e = mixed_pattern();
        let v = correctable(&code, &e, &ErrorPattern::zero(9, 9));
        assert_eq!(v.local, vec![3]);
        assert_eq!(v.residual, 4);
        assert!(v.global);
        assert_eq!(v.to_string(), "LOCAL j=3 GLOBAL");
        let gf = code.field().base();
        let zero = ErrorPattern::zero(9, 9);
        assert!(!delta_j(code.params(), gf, &e, &zero, 1));
        assert!(!delta_j(code.params(), gf, &e, &zero, 2));
        assert!(delta_j(code.params(), gf, &e, &zero, 3));
    }

    #[test]
    fn mixed_pattern_decodes_codeword() {
        let code = gf512();
        let f = code.field();
        let msg = [f.x_pow(1), f.x_pow(2), f.x_pow(4), f.x_pow(8)];
        let cw = code.encode_matrix(&msg).unwrap();
        let e = mixed_pattern();
        let mut received = cw.clone();
        for i in 0..9 {
            for j in 0..9 {
                if e.is_erased(i, j) {
                    received.set(i, j, 0);
                }
            }
        }
        let dec = CrisscrossDecoder::new(&code, &e).unwrap();
        let out = dec.decode(&received).unwrap();
        assert_eq!(out.codeword, cw);
        assert_eq!(out.local, vec![3]);
        assert!(out.global);
    }

    #[test]
    fn local_pass_alone_restores_rack() {
        let code = gf512();
        let f = code.field();
        let msg = [f.x_pow(1), f.x_pow(2), f.x_pow(4), f.x_pow(8)];
        let cw = code.encode_matrix(&msg).unwrap();
        let e = ErasurePattern::from_cells(9, 9, [(8, 6), (8, 7), (8, 8)]);
        let dec = CrisscrossDecoder::new(&code, &e).unwrap();
        let out = dec.decode(&cw).unwrap();
        assert_eq!(out.codeword, cw);
        assert!(!out.global);
        let values: Vec<_> = (6..9)
            .map(|j| f.log_x(crate::gf::from_matrix(f, &out.codeword).unwrap()[j]).unwrap())
            .collect();
        assert_eq!(values, [236, 132, 399]);
    }

    #[test]
    fn inconsistent_word_rejected() {
        let code = gf512();
        let mut y = Matrix::zeros(9, 9);
        y.set(0, 0, 1);
        let dec = CrisscrossDecoder::new(&code, &ErasurePattern::new(9, 9)).unwrap();
        assert_eq!(dec.decode(&y), Err(Error::NotCodeword));
    }

    #[test]
    fn too_many_erasures_is_ambiguous() {
        let code = gf512();
        let mut e = ErasurePattern::new(9, 9);
        for j in 0..5 {
            e.erase_column(j);
        }
        let dec = CrisscrossDecoder::new(&code, &e).unwrap();
        assert!(!dec.verdict().global);
        assert_eq!(dec.decode(&Matrix::zeros(9, 9)), Err(Error::ExceedsGuarantee));
    }
}
