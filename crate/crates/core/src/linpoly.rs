//! Linearized (q-)polynomials `L(x) = Σ a_i x^(q^i)` over GF(q^m).
//!
//! Such a polynomial is a GF(q)-linear map on GF(q^m). Polynomials are kept
//! sparse: the encoders of this crate use only a handful of q-exponents
//! spread over a wide range.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf::{elements_rank, to_matrix, Field, FieldElement};

/// A linearized polynomial in sparse normal form: every stored coefficient
/// is nonzero, and the zero polynomial has no terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinearizedPoly {
    coeffs: BTreeMap<usize, FieldElement>,
}

/// An ordinary polynomial `Σ c_e x^e`, sparse, used for q-associates and for
/// the expanded form of a linearized polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrdinaryPoly {
    coeffs: BTreeMap<u128, FieldElement>,
}

impl OrdinaryPoly {
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (u128, FieldElement)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            let entry = coeffs.entry(e).or_insert(FieldElement::ZERO);
            *entry = field.add(*entry, c);
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { coeffs }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u128, FieldElement)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u128> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn eval(&self, field: &Field, x: FieldElement) -> FieldElement {
        self.terms().fold(FieldElement::ZERO, |acc, (e, c)| {
            field.add(acc, field.mul(c, field.pow(x, e)))
        })
    }
}

impl LinearizedPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The identity map `x^[0]`.
    pub fn identity() -> Self {
        Self::monomial(0, FieldElement::ONE)
    }

    pub fn monomial(q_exp: usize, coeff: FieldElement) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(q_exp, coeff);
        }
        Self { coeffs }
    }

    /// Builds from `(q-exponent, coefficient)` pairs, summing repeats and
    /// dropping zeros.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (usize, FieldElement)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            let entry = coeffs.entry(e).or_insert(FieldElement::ZERO);
            *entry = field.add(*entry, c);
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest q-exponent with a nonzero coefficient.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, q_exp: usize) -> FieldElement {
        self.coeffs.get(&q_exp).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, FieldElement)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, field: &Field, other: &LinearizedPoly) -> Self {
        Self::from_terms(field, self.terms().chain(other.terms()))
    }

    pub fn scale(&self, field: &Field, c: FieldElement) -> Self {
        Self::from_terms(field, self.terms().map(|(e, a)| (e, field.mul(c, a))))
    }

    /// Evaluates `L(x)`, stepping `x^(q^i)` forward with the Frobenius map.
    pub fn eval(&self, field: &Field, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut power = x;
        let mut at = 0;
        for (e, c) in self.terms() {
            power = field.frobenius(power, e - at);
            at = e;
            acc = field.add(acc, field.mul(c, power));
        }
        acc
    }

    /// The q-associate `l(x) = Σ a_i x^i`.
    pub fn q_associate(&self) -> OrdinaryPoly {
        OrdinaryPoly {
            coeffs: self.terms().map(|(e, c)| (e as u128, c)).collect(),
        }
    }

    /// The linearized polynomial whose q-associate is `l`.
    pub fn from_q_associate(l: &OrdinaryPoly) -> Result<Self> {
        let coeffs = l
            .terms()
            .map(|(e, c)| {
                usize::try_from(e)
                    .map(|e| (e, c))
                    .map_err(|_| Error::InvalidParams(format!("q-exponent {e} too large")))
            })
            .collect::<Result<_>>()?;
        Ok(Self { coeffs })
    }

    /// `L` written as an ordinary polynomial, with exponents `q^i`.
    pub fn expand(&self, q: usize) -> Result<OrdinaryPoly> {
        let coeffs = self
            .terms()
            .map(|(e, c)| {
                (q as u128)
                    .checked_pow(e as u32)
                    .map(|p| (p, c))
                    .ok_or_else(|| Error::InvalidParams(format!("q^{e} overflows")))
            })
            .collect::<Result<_>>()?;
        Ok(OrdinaryPoly { coeffs })
    }

    /// Reads an ordinary polynomial as a linearized one; every exponent must
    /// be a power of q.
    pub fn from_expanded(p: &OrdinaryPoly, q: usize) -> Result<Self> {
        let coeffs = p
            .terms()
            .map(|(e, c)| q_log(e, q as u128).map(|i| (i, c)).ok_or(Error::NotQPolynomial(e)))
            .collect::<Result<_>>()?;
        Ok(Self { coeffs })
    }

    /// The unique `L` of q-degree below `points.len()` with `L(points[j]) = values[j]`,
    /// found by solving the Moore system.
    pub fn interpolate(field: &Field, points: &[FieldElement], values: &[FieldElement]) -> Result<Self> {
        let n = points.len();
        if values.len() != n {
            return Err(crate::error::shape_err(n, values.len()));
        }
        if elements_rank(field, points) != n {
            return Err(Error::MooreSingular);
        }
        // Row j: p_j^[0], p_j^[1], ..., p_j^[n-1] | v_j
        let mut rows: Vec<Vec<FieldElement>> = points
            .iter()
            .zip(values)
            .map(|(&p, &v)| {
                let mut row = Vec::with_capacity(n + 1);
                let mut cur = p;
                for _ in 0..n {
                    row.push(cur);
                    cur = field.frobenius(cur, 1);
                }
                row.push(v);
                row
            })
            .collect();
        let solution = solve_square(field, &mut rows).ok_or(Error::MooreSingular)?;
        Ok(Self::from_terms(field, solution.into_iter().enumerate()))
    }

    /// Dimension over GF(q) of the root space `{x : L(x) = 0}` in GF(q^m).
    pub fn root_space_dim(&self, field: &Field) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(field.degree() - self.map_matrix(field).rank(field.base()))
    }

    /// The m×m GF(q) matrix of `x ↦ L(x)` in the polynomial basis.
    pub fn map_matrix(&self, field: &Field) -> crate::matrix::Matrix {
        let images: Vec<FieldElement> = (0..field.degree())
            .map(|i| self.eval(field, field.x_pow(i as u128)))
            .collect();
        to_matrix(field, &images)
    }

    /// Text form `a*X^[i] + ...` with q-exponents in brackets.
    pub fn display(&self, field: &Field) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms()
            .map(|(e, c)| format!("{}*X^[{e}]", field.format(c)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn q_log(mut e: u128, q: u128) -> Option<usize> {
    let mut i = 0;
    while e > 1 {
        if !e.is_multiple_of(q) {
            return None;
        }
        e /= q;
        i += 1;
    }
    (e == 1).then_some(i)
}

/// Gauss-Jordan on an augmented n×(n+1) system over GF(q^m).
pub(crate) fn solve_square(field: &Field, rows: &mut [Vec<FieldElement>]) -> Option<Vec<FieldElement>> {
    let n = rows.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !rows[i][c].is_zero())?;
        rows.swap(p, c);
        let inv = field.inv(rows[c][c]).ok()?;
        for v in rows[c].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot = rows[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c];
            for (v, &pv) in row.iter_mut().zip(&pivot) {
                *v = field.sub(*v, field.mul(f, pv));
            }
        }
    }
    Some(rows.iter().map(|r| r[n]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use rand::{Rng, SeedableRng};
    use rand_xoshiro::SplitMix64;

    fn gf2_9() -> Field {
        Field::new(&FieldSpec {
            q: 2,
            m: 9,
            modulus: vec![1, 0, 0, 0, 1, 0, 0, 0, 0, 1],
            primitive_reporting: true,
        })
        .unwrap()
    }

    fn random_poly(field: &Field, max_exp: usize, rng: &mut impl Rng) -> LinearizedPoly {
        LinearizedPoly::from_terms(
            field,
            (0..max_exp).map(|e| (e, field.from_index(rng.gen_range(0..field.order())))),
        )
    }

    #[test]
    fn identity_is_identity() {
        let f = gf2_9();
        for k in [0u128, 5, 400] {
            let a = f.x_pow(k);
            assert_eq!(LinearizedPoly::identity().eval(&f, a), a);
        }
    }

    #[test]
    fn normal_form_drops_zeros() {
        let f = gf2_9();
        let one = f.one();
        let p = LinearizedPoly::from_terms(&f, [(1, one), (1, one), (3, f.zero())]);
        assert!(p.is_zero());
        assert_eq!(p.q_degree(), None);
    }

    #[test]
    fn eval_matches_expanded_form() {
        let f = gf2_9();
        let mut rng = SplitMix64::seed_from_u64(1);
        for _ in 0..100 {
            let l = random_poly(&f, 9, &mut rng);
            let expanded = l.expand(2).unwrap();
            let a = f.from_index(rng.gen_range(0..f.order()));
            assert_eq!(l.eval(&f, a), expanded.eval(&f, a));
        }
    }

    #[test]
    fn additive_and_gfq_homogeneous() {
        let f = Field::with_default_modulus(3, 4).unwrap();
        let mut rng = SplitMix64::seed_from_u64(2);
        for _ in 0..100 {
            let l = random_poly(&f, 4, &mut rng);
            let a = f.from_index(rng.gen_range(0..f.order()));
            let b = f.from_index(rng.gen_range(0..f.order()));
            assert_eq!(l.eval(&f, f.add(a, b)), f.add(l.eval(&f, a), l.eval(&f, b)));
            let c = rng.gen_range(0..3) as u8;
            assert_eq!(l.eval(&f, f.scale(c, a)), f.scale(c, l.eval(&f, a)));
        }
    }

    #[test]
    fn q_associates() {
        let f = gf2_9();
        let x = OrdinaryPoly::from_terms(&f, [(1, f.one())]);
        let l = LinearizedPoly::from_q_associate(&x).unwrap();
        assert_eq!(l, LinearizedPoly::monomial(1, f.one()));
        assert_eq!(l.q_associate(), x);
        assert!(LinearizedPoly::from_q_associate(&OrdinaryPoly::default())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn expanded_form_requires_q_powers() {
        let f = gf2_9();
        let ok = OrdinaryPoly::from_terms(&f, [(1, f.one()), (8, f.x())]);
        let l = LinearizedPoly::from_expanded(&ok, 2).unwrap();
        assert_eq!(l.q_degree(), Some(3));
        let bad = OrdinaryPoly::from_terms(&f, [(3, f.one())]);
        assert_eq!(LinearizedPoly::from_expanded(&bad, 2), Err(Error::NotQPolynomial(3)));
        let bad0 = OrdinaryPoly::from_terms(&f, [(0, f.one())]);
        assert_eq!(LinearizedPoly::from_expanded(&bad0, 2), Err(Error::NotQPolynomial(0)));
    }

    #[test]
    fn interpolation_of_zero_values() {
        let f = gf2_9();
        let pts: Vec<_> = (0..5).map(|i| f.x_pow(i)).collect();
        let l = LinearizedPoly::interpolate(&f, &pts, &[f.zero(); 5]).unwrap();
        assert!(l.is_zero());
    }

    #[test]
    fn interpolation_round_trip() {
        let f = Field::with_default_modulus(2, 6).unwrap();
        let mut rng = SplitMix64::seed_from_u64(3);
        let pts: Vec<_> = (0..6).map(|i| f.x_pow(i)).collect();
        for _ in 0..100 {
            let l = random_poly(&f, 6, &mut rng);
            let vals: Vec<_> = pts.iter().map(|&p| l.eval(&f, p)).collect();
            assert_eq!(LinearizedPoly::interpolate(&f, &pts, &vals).unwrap(), l);
        }
    }

    #[test]
    fn interpolation_rejects_dependent_points() {
        let f = gf2_9();
        let pts = [f.one(), f.x(), f.add(f.one(), f.x())];
        assert_eq!(
            LinearizedPoly::interpolate(&f, &pts, &[f.zero(); 3]),
            Err(Error::MooreSingular)
        );
    }

    #[test]
    fn root_spaces() {
        let f = Field::with_default_modulus(2, 4).unwrap();
        // x^q - x fixes GF(2)
        let l = LinearizedPoly::from_terms(&f, [(1, f.one()), (0, f.neg(f.one()))]);
        assert_eq!(l.root_space_dim(&f).unwrap(), 1);
        let g = Field::with_default_modulus(3, 6).unwrap();
        for s in [1, 2, 3, 6] {
            let l = LinearizedPoly::from_terms(&g, [(s, g.one()), (0, g.neg(g.one()))]);
            assert_eq!(l.root_space_dim(&g).unwrap(), s);
        }
        assert_eq!(LinearizedPoly::zero().root_space_dim(&f), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn root_space_bounded_by_q_degree() {
        let f = Field::with_default_modulus(2, 8).unwrap();
        let mut rng = SplitMix64::seed_from_u64(4);
        for _ in 0..100 {
            let d = rng.gen_range(0..8);
            let mut l = random_poly(&f, d, &mut rng);
            l = l.add(&f, &LinearizedPoly::monomial(d, f.x_pow(rng.gen_range(0..255))));
            assert_eq!(l.q_degree(), Some(d));
            assert!(l.root_space_dim(&f).unwrap() <= d);
        }
    }

    #[test]
    fn display_form() {
        let f = gf2_9();
        let l = LinearizedPoly::from_terms(&f, [(0, f.x()), (3, f.x_pow(2))]);
        assert_eq!(l.display(&f), "w^1*X^[0] + w^2*X^[3]");
    }
}
