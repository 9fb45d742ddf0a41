//! Finite field arithmetic: GF(q), GF(q^m) over GF(q), and the subfield
//! tower GF(q) ⊂ GF(q^s) ⊂ GF(q^n) ⊆ GF(q^m) used by the local codes.

mod base;
mod field;
mod moduli;
mod tower;

pub use base::{prime_power, BaseField, MAX_BASE_ORDER};
pub use field::{Field, FieldElement, FieldSpec, MAX_DEGREE, TABLE_LIMIT};
pub use moduli::default_modulus;
pub use tower::{FieldTower, TowerOverrides};

pub(crate) use field::{format_coefficient_list, parse_coefficient_list};

use crate::error::{shape_err, Result};
use crate::matrix::Matrix;

/// Expands a vector over GF(q^m) into the m×n matrix whose column j holds the
/// coordinates of `v[j]`.
pub fn to_matrix(field: &Field, v: &[FieldElement]) -> Matrix {
    let m = field.degree();
    let mut out = Matrix::zeros(m, v.len());
    for (j, &a) in v.iter().enumerate() {
        for i in 0..m {
            out.set(i, j, a.coeff(i));
        }
    }
    out
}

/// Inverse of [`to_matrix`].
pub fn from_matrix(field: &Field, mat: &Matrix) -> Result<Vec<FieldElement>> {
    if mat.rows() != field.degree() {
        return Err(shape_err(
            format!("{} rows", field.degree()),
            format!("{} rows", mat.rows()),
        ));
    }
    (0..mat.cols()).map(|j| field.from_coords(&mat.column(j))).collect()
}

/// Rank over GF(q) of a matrix.
pub fn gfq_rank(gf: &BaseField, mat: &Matrix) -> usize {
    mat.rank(gf)
}

/// GF(q)-rank of a set of GF(q^m) elements (the rank of their coordinate matrix).
pub fn elements_rank(field: &Field, v: &[FieldElement]) -> usize {
    to_matrix(field, v).rank(field.base())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_vector_maps_to_zero_matrix() {
        let f = Field::with_default_modulus(2, 5).unwrap();
        let mat = to_matrix(&f, &[f.zero(); 4]);
        assert_eq!(mat.shape(), (5, 4));
        assert!(mat.is_zero());
    }

    #[test]
    fn powers_of_x_give_unit_columns() {
        let f = Field::with_default_modulus(2, 5).unwrap();
        let v = [f.one(), f.x(), f.x_pow(2)];
        let mat = to_matrix(&f, &v);
        for j in 0..3 {
            let mut unit = vec![0u8; 5];
            unit[j] = 1;
            assert_eq!(mat.column(j), unit);
        }
        assert_eq!(from_matrix(&f, &mat).unwrap(), v.to_vec());
    }

    #[test]
    fn from_matrix_rejects_wrong_height() {
        let f = Field::with_default_modulus(2, 5).unwrap();
        assert!(from_matrix(&f, &Matrix::zeros(4, 2)).is_err());
    }
}
