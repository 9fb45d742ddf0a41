use std::sync::Arc;

use super::RankCode;
use crate::error::{Error, Result};
use crate::gf::{elements_rank, Field, FieldElement};
use crate::linpoly::LinearizedPoly;

/// The (n, k) Gabidulin code: evaluations of all linearized polynomials of
/// q-degree below k at n GF(q)-independent points. It is MRD, with minimum
/// rank distance n - k + 1.
#[derive(Clone, Debug)]
pub struct GabidulinCode {
    field: Arc<Field>,
    k: usize,
    points: Vec<FieldElement>,
}

impl GabidulinCode {
    pub fn new(field: Arc<Field>, k: usize, points: Vec<FieldElement>) -> Result<Self> {
        let n = points.len();
        if k == 0 || k > n || n > field.degree() {
            return Err(Error::InvalidParams(format!(
                "need 0 < k <= n <= m, got k = {k}, n = {n}, m = {}",
                field.degree()
            )));
        }
        if elements_rank(&field, &points) != n {
            return Err(Error::PointsDependent);
        }
        Ok(Self { field, k, points })
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn field_arc(&self) -> &Arc<Field> {
        &self.field
    }

    /// `n - k + 1`.
    pub fn designed_distance(&self) -> usize {
        self.points.len() - self.k + 1
    }

    /// `Σ_{j<k} m_j x^[j]`.
    pub fn message_poly(&self, message: &[FieldElement]) -> Result<LinearizedPoly> {
        if message.len() != self.k {
            return Err(Error::BadMessageLength {
                expected: self.k,
                got: message.len(),
            });
        }
        Ok(LinearizedPoly::from_terms(
            &self.field,
            message.iter().copied().enumerate(),
        ))
    }

    /// Recovers the message of a codeword by Moore interpolation; fails with
    /// [`Error::NotCodeword`] when the interpolant has q-degree ≥ k.
    pub fn unencode(&self, codeword: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let poly = LinearizedPoly::interpolate(&self.field, &self.points, codeword)?;
        if poly.q_degree().is_some_and(|d| d >= self.k) {
            return Err(Error::NotCodeword);
        }
        Ok((0..self.k).map(|i| poly.coeff(i)).collect())
    }
}

impl RankCode for GabidulinCode {
    fn field(&self) -> &Field {
        &self.field
    }

    fn length(&self) -> usize {
        self.points.len()
    }

    fn dimension(&self) -> usize {
        self.k
    }

    fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let poly = self.message_poly(message)?;
        Ok(self.points.iter().map(|&p| poly.eval(&self.field, p)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::min_rank_distance;

    fn gf16() -> Arc<Field> {
        Arc::new(Field::with_default_modulus(2, 4).unwrap())
    }

    #[test]
    fn gabidulin_4_2_is_mrd() {
        let f = gf16();
        let pts: Vec<_> = (0..4).map(|i| f.x_pow(i)).collect();
        let code = GabidulinCode::new(f, 2, pts).unwrap();
        assert_eq!(min_rank_distance(&code, 1 << 20).unwrap(), 3);
    }

    #[test]
    fn full_length_code_has_distance_one() {
        let f = gf16();
        let pts: Vec<_> = (0..4).map(|i| f.x_pow(i)).collect();
        let code = GabidulinCode::new(f, 4, pts).unwrap();
        assert_eq!(code.designed_distance(), 1);
        let cw = code
            .encode_matrix(&[
                code.field().one(),
                code.field().zero(),
                code.field().zero(),
                code.field().zero(),
            ])
            .unwrap();
        assert!(cw.rank(code.field().base()) >= 1);
    }

    #[test]
    fn dependent_points_rejected() {
        let f = gf16();
        let pts = vec![f.one(), f.x(), f.add(f.one(), f.x())];
        assert!(matches!(GabidulinCode::new(f, 1, pts), Err(Error::PointsDependent)));
    }

    #[test]
    fn unencode_inverts_encode() {
        let f = gf16();
        let pts: Vec<_> = (0..4).map(|i| f.x_pow(i)).collect();
        let code = GabidulinCode::new(f.clone(), 2, pts).unwrap();
        let msg = vec![f.x_pow(3), f.x_pow(11)];
        let cw = code.encode(&msg).unwrap();
        assert_eq!(code.unencode(&cw).unwrap(), msg);
        let mut bad = cw.clone();
        bad[0] = f.add(bad[0], f.one());
        assert_eq!(code.unencode(&bad), Err(Error::NotCodeword));
    }
}
