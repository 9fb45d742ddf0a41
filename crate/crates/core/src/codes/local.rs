use std::ops::Range;
use std::sync::Arc;

use super::{CodeParams, GabidulinCode, RankCode};
use crate::error::{Error, Result};
use crate::gf::{elements_rank, Field, FieldElement, FieldSpec, FieldTower, TowerOverrides};
use crate::linpoly::LinearizedPoly;

/// Evaluation code with (r, δ) rank-locality.
///
/// The message `m_{ij}` (stored at flat index `j*r + i`) is encoded by
/// `G(x) = Σ m_{ij} x^[s*j + i]` with `s = r + δ - 1`, evaluated at the points
/// `α_i β_j` laid out group by group. Group `j` (1-based) occupies columns
/// `(j-1)*s .. j*s` of the codeword array.
#[derive(Clone, Debug)]
pub struct LocalRankCode {
    params: CodeParams,
    tower: FieldTower,
    points: Vec<FieldElement>,
    exponents: Vec<usize>,
}

impl LocalRankCode {
    pub fn new(params: CodeParams, tower: FieldTower) -> Result<Self> {
        params.validate()?;
        let field = tower.field();
        if field.q() != params.q || field.degree() != params.m {
            return Err(Error::InvalidParams(format!(
                "tower field GF({}^{}) does not match q = {}, m = {}",
                field.q(),
                field.degree(),
                params.q,
                params.m
            )));
        }
        if tower.s() != params.s() || tower.n() != params.n {
            return Err(Error::InvalidParams(
                "tower does not match s = r + delta - 1 and n".into(),
            ));
        }
        let points = tower.product_set();
        if elements_rank(field, &points) != params.n {
            return Err(Error::PointsDependent);
        }
        let s = params.s();
        let exponents = (0..params.k / params.r)
            .flat_map(|j| (0..params.r).map(move |i| s * j + i))
            .collect();
        Ok(Self {
            params,
            tower,
            points,
            exponents,
        })
    }

    /// Builds with the field's built-in modulus and the default tower.
    pub fn with_defaults(params: CodeParams) -> Result<Self> {
        params.validate()?;
        let field = Arc::new(Field::new(&FieldSpec::default_for(params.q, params.m)?)?);
        Self::with_field(params, field, &TowerOverrides::default())
    }

    pub fn with_field(params: CodeParams, field: Arc<Field>, overrides: &TowerOverrides) -> Result<Self> {
        params.validate()?;
        let tower = FieldTower::build(field, params.n, params.r, params.delta, overrides)?;
        Self::new(params, tower)
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn field_arc(&self) -> &Arc<Field> {
        self.tower.field()
    }

    /// All n evaluation points, group by group.
    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    /// q-exponent carrying each flat message index.
    pub fn exponent_map(&self) -> &[usize] {
        &self.exponents
    }

    pub fn mu(&self) -> usize {
        self.params.mu()
    }

    fn check_group(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.mu() {
            return Err(Error::OutOfRange {
                index: j,
                max: self.mu(),
            });
        }
        Ok(())
    }

    /// Columns of local group `j` (1-based).
    pub fn group_columns(&self, j: usize) -> Range<usize> {
        let s = self.params.s();
        (j - 1) * s..j * s
    }

    /// Local group containing column `col` (0-based), 1-based.
    pub fn group_of(&self, col: usize) -> usize {
        col / self.params.s() + 1
    }

    /// Evaluation points of group `j` (1-based).
    pub fn group(&self, j: usize) -> Result<&[FieldElement]> {
        self.check_group(j)?;
        Ok(&self.points[self.group_columns(j)])
    }

    /// The encoding polynomial `G(x)` of a message.
    pub fn encoding_poly(&self, message: &[FieldElement]) -> Result<LinearizedPoly> {
        if message.len() != self.params.k {
            return Err(Error::BadMessageLength {
                expected: self.params.k,
                got: message.len(),
            });
        }
        Ok(LinearizedPoly::from_terms(
            self.field(),
            self.exponents.iter().copied().zip(message.iter().copied()),
        ))
    }

    /// `H(x) = x^(q^s - 1)`, evaluated as `x^[s] / x` (and `H(0) = 0`).
    pub fn good_poly_value(&self, x: FieldElement) -> FieldElement {
        let field = self.field();
        match field.inv(x) {
            Ok(inv) => field.mul(field.frobenius(x, self.params.s()), inv),
            Err(_) => FieldElement::ZERO,
        }
    }

    /// Multipliers `c[i][b]` such that the i-th repair coefficient for group
    /// `j` is `Σ_b c[i][b] m_{ib}`.
    ///
    /// With `h = H(γ)` for a point γ of the group, `c[i][0] = 1` and
    /// `c[i][b] = h^(Σ_{l<b} q^(s*l + i)) = Π_{l<b} h^[s*l + i]`.
    pub fn repair_multipliers(&self, j: usize) -> Result<Vec<Vec<FieldElement>>> {
        self.check_group(j)?;
        let field = self.field();
        let gamma = self.points[self.group_columns(j).start];
        let h = self.good_poly_value(gamma);
        let s = self.params.s();
        let blocks = self.params.k / self.params.r;
        Ok((0..self.params.r)
            .map(|i| {
                let mut row = Vec::with_capacity(blocks);
                let mut acc = field.one();
                for l in 0..blocks {
                    row.push(acc);
                    acc = field.mul(acc, field.frobenius(h, s * l + i));
                }
                row
            })
            .collect())
    }

    /// The repair polynomial `R_j(x) = Σ_{i<r} G_i(γ) x^[i]`, which agrees with
    /// the encoding polynomial on every point of group `j`.
    pub fn repair_poly(&self, message: &[FieldElement], j: usize) -> Result<LinearizedPoly> {
        self.encoding_poly(message)?;
        let field = self.field();
        let mult = self.repair_multipliers(j)?;
        let r = self.params.r;
        let terms = mult.iter().enumerate().map(|(i, row)| {
            let c = row.iter().enumerate().fold(FieldElement::ZERO, |acc, (b, &c)| {
                field.add(acc, field.mul(c, message[b * r + i]))
            });
            (i, c)
        });
        Ok(LinearizedPoly::from_terms(field, terms))
    }

    /// The local code of group `j`: the (s, r) Gabidulin code on its points.
    pub fn local_code(&self, j: usize) -> Result<GabidulinCode> {
        let pts = self.group(j)?.to_vec();
        GabidulinCode::new(self.field_arc().clone(), self.params.r, pts)
    }

    /// Entries of a codeword belonging to group `j`.
    pub fn restrict<'a>(&self, codeword: &'a [FieldElement], j: usize) -> Result<&'a [FieldElement]> {
        self.check_group(j)?;
        if codeword.len() != self.params.n {
            return Err(crate::error::shape_err(self.params.n, codeword.len()));
        }
        Ok(&codeword[self.group_columns(j)])
    }

    /// The Gabidulin code of dimension `k + (k/r - 1)(δ - 1)` on all points,
    /// which contains this code.
    pub fn gabidulin_supercode(&self) -> Result<GabidulinCode> {
        GabidulinCode::new(
            self.field_arc().clone(),
            self.params.max_q_exponent() + 1,
            self.points.clone(),
        )
    }

    pub fn distance_bound(&self) -> usize {
        self.params.distance_bound()
    }
}

impl RankCode for LocalRankCode {
    fn field(&self) -> &Field {
        self.tower.field()
    }

    fn length(&self) -> usize {
        self.params.n
    }

    fn dimension(&self) -> usize {
        self.params.k
    }

    fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let poly = self.encoding_poly(message)?;
        Ok(self.points.iter().map(|&p| poly.eval(self.field(), p)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_xoshiro::SplitMix64;

    fn tiny() -> LocalRankCode {
        LocalRankCode::with_defaults(CodeParams::new(2, 6, 6, 2, 1, 2).unwrap()).unwrap()
    }

    fn random_message(code: &LocalRankCode, rng: &mut impl Rng) -> Vec<FieldElement> {
        let f = code.field();
        (0..code.params().k)
            .map(|_| f.from_index(rng.gen_range(0..f.order())))
            .collect()
    }

    fn gf512() -> LocalRankCode {
        let f = Arc::new(Field::new(&FieldSpec::new(2, 9, vec![1, 0, 0, 0, 1, 0, 0, 0, 0, 1])).unwrap());
        let w = |k| f.x_pow(k);
        let ov = TowerOverrides {
            generator: Some(w(73)),
            basis_a: Some(vec![w(0), w(73), w(146)]),
            basis_b: Some(vec![w(0), w(309), w(107)]),
        };
        LocalRankCode::with_field(CodeParams::new(2, 9, 9, 4, 2, 2).unwrap(), f.clone(), &ov).unwrap()
    }

    fn logs(code: &LocalRankCode, v: &[FieldElement]) -> Vec<u64> {
        v.iter().map(|&e| code.field().log_x(e).unwrap()).collect()
    }

    #[test]
    fn gf512_partition() {
        let code = gf512();
        assert_eq!(logs(&code, code.group(1).unwrap()), [0, 73, 146]);
        assert_eq!(logs(&code, code.group(2).unwrap()), [309, 382, 455]);
        assert_eq!(logs(&code, code.group(3).unwrap()), [107, 180, 253]);
        assert_eq!(code.exponent_map(), &[0, 1, 3, 4]);
    }

    #[test]
    fn gf512_codeword() {
        let code = gf512();
        let f = code.field();
        let msg = [f.x_pow(1), f.x_pow(2), f.x_pow(4), f.x_pow(8)];
        let cw = code.encode(&msg).unwrap();
        assert_eq!(logs(&code, &cw), [440, 307, 81, 465, 11, 174, 236, 132, 399]);
        let sup = code.gabidulin_supercode().unwrap();
        let interp = sup.unencode(&cw).unwrap();
        assert_eq!(interp[2], FieldElement::ZERO);
        assert_eq!(logs(&code, &[interp[0], interp[1], interp[3], interp[4]]), [1, 2, 4, 8]);
    }

    #[test]
    fn gf512_repair_multipliers() {
        let code = gf512();
        let f = code.field();
        let one = vec![vec![f.one(), f.one()], vec![f.one(), f.one()]];
        assert_eq!(code.repair_multipliers(1).unwrap(), one);
        let m2 = code.repair_multipliers(2).unwrap();
        assert_eq!(m2, vec![vec![f.one(), f.x_pow(119)], vec![f.one(), f.x_pow(238)]]);
        let m3 = code.repair_multipliers(3).unwrap();
        assert_eq!(m3, vec![vec![f.one(), f.x_pow(238)], vec![f.one(), f.x_pow(476)]]);
    }

    #[test]
    fn repair_multipliers_match_closed_form() {
        // c[i][b] = γ^(q^(s*b + i) - q^i)
        let code = LocalRankCode::with_defaults(CodeParams::new(2, 12, 12, 4, 2, 2).unwrap()).unwrap();
        let f = code.field();
        let s = code.params().s() as u32;
        for j in 1..=code.mu() {
            let gamma = code.group(j).unwrap()[0];
            let mult = code.repair_multipliers(j).unwrap();
            for (i, row) in mult.iter().enumerate() {
                for (b, &c) in row.iter().enumerate() {
                    let e = 2u128.pow(s * b as u32 + i as u32) - 2u128.pow(i as u32);
                    assert_eq!(c, f.pow(gamma, e));
                }
            }
        }
    }

    #[test]
    fn tiny_points_are_independent() {
        let code = tiny();
        assert_eq!(code.points().len(), 6);
        assert_eq!(elements_rank(code.field(), code.points()), 6);
        assert_eq!(code.exponent_map(), &[0, 2]);
    }

    #[test]
    fn zero_message_gives_zero_codeword() {
        let code = tiny();
        let cw = code.encode(&[FieldElement::ZERO; 2]).unwrap();
        assert!(cw.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn encoding_is_linear() {
        let code = tiny();
        let f = code.field();
        let mut rng = SplitMix64::seed_from_u64(9);
        for _ in 0..100 {
            let a = random_message(&code, &mut rng);
            let b = random_message(&code, &mut rng);
            let sum: Vec<_> = a.iter().zip(&b).map(|(&x, &y)| f.add(x, y)).collect();
            let ca = code.encode(&a).unwrap();
            let cb = code.encode(&b).unwrap();
            let expect: Vec<_> = ca.iter().zip(&cb).map(|(&x, &y)| f.add(x, y)).collect();
            assert_eq!(code.encode(&sum).unwrap(), expect);
        }
    }

    #[test]
    fn bad_message_length() {
        let code = tiny();
        assert_eq!(
            code.encode(&[FieldElement::ZERO; 3]),
            Err(Error::BadMessageLength { expected: 2, got: 3 })
        );
    }

    #[test]
    fn repair_polynomial_agrees_on_group() {
        let code = LocalRankCode::with_defaults(CodeParams::new(2, 12, 12, 4, 2, 2).unwrap()).unwrap();
        let mut rng = SplitMix64::seed_from_u64(10);
        for _ in 0..50 {
            let msg = random_message(&code, &mut rng);
            let cw = code.encode(&msg).unwrap();
            for j in 1..=code.mu() {
                let rp = code.repair_poly(&msg, j).unwrap();
                assert!(rp.q_degree().unwrap_or(0) < code.params().r);
                for (t, &p) in code.group(j).unwrap().iter().enumerate() {
                    assert_eq!(rp.eval(code.field(), p), code.restrict(&cw, j).unwrap()[t]);
                }
            }
        }
    }

    #[test]
    fn good_polynomial_constant_on_groups() {
        let code = LocalRankCode::with_defaults(CodeParams::new(2, 12, 12, 4, 2, 2).unwrap()).unwrap();
        let f = code.field();
        let s = code.params().s();
        let power = (f.q() as u128).pow(s as u32) - 1;
        for j in 1..=code.mu() {
            let beta = code.tower().basis_b()[j - 1];
            let expected = f.pow(beta, power);
            for &p in code.group(j).unwrap() {
                assert_eq!(code.good_poly_value(p), expected);
                assert_eq!(f.pow(p, power), expected);
            }
        }
    }

    #[test]
    fn group_index_checked() {
        let code = tiny();
        assert!(code.group(0).is_err());
        assert!(code.group(4).is_err());
        assert!(code.repair_multipliers(4).is_err());
        assert_eq!(code.group_of(5), 3);
    }

    #[test]
    fn codewords_lie_in_gabidulin_supercode() {
        let code = LocalRankCode::with_defaults(CodeParams::new(2, 9, 9, 4, 2, 2).unwrap()).unwrap();
        let sup = code.gabidulin_supercode().unwrap();
        assert_eq!(sup.dimension(), 5);
        let mut rng = SplitMix64::seed_from_u64(11);
        for _ in 0..20 {
            let msg = random_message(&code, &mut rng);
            let coeffs = sup.unencode(&code.encode(&msg).unwrap()).unwrap();
            for (e, &c) in coeffs.iter().enumerate() {
                match code.exponent_map().iter().position(|&x| x == e) {
                    Some(idx) => assert_eq!(c, msg[idx]),
                    None => assert!(c.is_zero()),
                }
            }
        }
    }

    #[test]
    fn delta_one_has_trivial_locality() {
        let code = LocalRankCode::with_defaults(CodeParams::new(2, 4, 4, 2, 2, 1).unwrap()).unwrap();
        assert_eq!(code.mu(), 2);
        assert_eq!(code.distance_bound(), 3);
        assert_eq!(code.local_code(1).unwrap().designed_distance(), 1);
    }
}
