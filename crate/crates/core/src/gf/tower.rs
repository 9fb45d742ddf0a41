use std::sync::Arc;

use super::elements_rank;
use super::field::{prime_factors, Field, FieldElement};
use crate::error::{Error, Result};

/// Explicit choices that replace the deterministic defaults of [`FieldTower::build`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TowerOverrides {
    pub generator: Option<FieldElement>,
    pub basis_a: Option<Vec<FieldElement>>,
    pub basis_b: Option<Vec<FieldElement>>,
}

/// The chain GF(q) ⊂ GF(q^s) ⊂ GF(q^n) ⊆ GF(q^m) with s = r + δ - 1, a basis
/// A of GF(q^s) over GF(q) and a basis B of GF(q^n) over GF(q^s).
#[derive(Clone, Debug)]
pub struct FieldTower {
    field: Arc<Field>,
    s: usize,
    n: usize,
    generator: FieldElement,
    basis_a: Vec<FieldElement>,
    basis_b: Vec<FieldElement>,
}

impl FieldTower {
    /// Builds and verifies the tower.
    ///
    /// Defaults: `g = w^((q^m - 1)/(q^s - 1))` for the field's primitive
    /// element `w`, `A = {1, g, ..., g^(s-1)}`, and `B = {1, c, ..., c^(μ-1)}`
    /// where `c = h^e` for the generator `h` of GF(q^n)* and the smallest
    /// `e >= 1` making the product set independent.
    pub fn build(field: Arc<Field>, n: usize, r: usize, delta: usize, overrides: &TowerOverrides) -> Result<Self> {
        if r == 0 || delta == 0 || n == 0 {
            return Err(Error::InvalidParams("n, r and delta must be positive".into()));
        }
        let m = field.degree();
        let s = r + delta - 1;
        if !n.is_multiple_of(s) {
            return Err(Error::Divisibility(format!(
                "r + delta - 1 = {s} does not divide n = {n}"
            )));
        }
        if !m.is_multiple_of(n) {
            return Err(Error::Divisibility(format!("n = {n} does not divide m = {m}")));
        }
        let mu = n / s;
        let q = field.q() as u128;
        let sub_order = q.pow(s as u32) - 1;

        let generator = match overrides.generator {
            Some(g) => g,
            None => {
                let w = field.primitive_element()?;
                field.pow(w, (field.order() - 1) / sub_order)
            }
        };
        if field.frobenius(generator, s) != generator {
            return Err(Error::OutsideSubfield(s));
        }
        if !has_order(&field, generator, sub_order) {
            return Err(Error::InvalidField(format!(
                "subfield generator does not have order q^{s} - 1"
            )));
        }

        let basis_a = match &overrides.basis_a {
            Some(a) => a.clone(),
            None => powers(&field, generator, s),
        };
        if basis_a.len() != s {
            return Err(crate::error::shape_err(format!("{s} elements in A"), basis_a.len()));
        }
        for &a in &basis_a {
            if field.frobenius(a, s) != a {
                return Err(Error::OutsideSubfield(s));
            }
        }
        if elements_rank(&field, &basis_a) != s {
            return Err(Error::BasisNotIndependent("A is not a GF(q)-basis of GF(q^s)"));
        }

        let basis_b = match &overrides.basis_b {
            Some(b) => b.clone(),
            None => default_basis_b(&field, &basis_a, n, mu)?,
        };
        if basis_b.len() != mu {
            return Err(crate::error::shape_err(format!("{mu} elements in B"), basis_b.len()));
        }
        for &b in &basis_b {
            if field.frobenius(b, n) != b {
                return Err(Error::OutsideSubfield(n));
            }
        }
        if elements_rank(&field, &product_set(&field, &basis_a, &basis_b)) != n {
            return Err(Error::BasisNotIndependent("B is not a basis of GF(q^n) over GF(q^s)"));
        }

        Ok(Self {
            field,
            s,
            n,
            generator,
            basis_a,
            basis_b,
        })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// s = r + δ - 1, the subfield degree and the size of each local group.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// μ = n / s.
    pub fn mu(&self) -> usize {
        self.basis_b.len()
    }

    pub fn subfield_generator(&self) -> FieldElement {
        self.generator
    }

    pub fn basis_a(&self) -> &[FieldElement] {
        &self.basis_a
    }

    pub fn basis_b(&self) -> &[FieldElement] {
        &self.basis_b
    }

    /// The products `α_i β_j`, ordered block by block (j outer, i inner).
    pub fn product_set(&self) -> Vec<FieldElement> {
        product_set(&self.field, &self.basis_a, &self.basis_b)
    }
}

fn product_set(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    b.iter()
        .flat_map(|&beta| a.iter().map(move |&alpha| field.mul(alpha, beta)))
        .collect()
}

fn powers(field: &Field, g: FieldElement, count: usize) -> Vec<FieldElement> {
    let mut out = Vec::with_capacity(count);
    let mut cur = field.one();
    for _ in 0..count {
        out.push(cur);
        cur = field.mul(cur, g);
    }
    out
}

fn has_order(field: &Field, g: FieldElement, order: u128) -> bool {
    if g.is_zero() || field.pow(g, order) != field.one() {
        return false;
    }
    match prime_factors(order) {
        Some(ps) => ps.iter().all(|&p| field.pow(g, order / p) != field.one()),
        None => true,
    }
}

fn default_basis_b(field: &Field, basis_a: &[FieldElement], n: usize, mu: usize) -> Result<Vec<FieldElement>> {
    let w = field.primitive_element()?;
    let sub_order = (field.q() as u128).pow(n as u32) - 1;
    let h = field.pow(w, (field.order() - 1) / sub_order);
    let mut c = h;
    for _ in 1..=sub_order {
        let candidate = powers(field, c, mu);
        if elements_rank(field, &product_set(field, basis_a, &candidate)) == n {
            return Ok(candidate);
        }
        c = field.mul(c, h);
    }
    Err(Error::BasisNotIndependent(
        "no power basis found for GF(q^n) over GF(q^s)",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn gf2_9() -> Arc<Field> {
        Arc::new(
            Field::new(&FieldSpec {
                q: 2,
                m: 9,
                modulus: vec![1, 0, 0, 0, 1, 0, 0, 0, 0, 1],
                primitive_reporting: true,
            })
            .unwrap(),
        )
    }

    #[test]
    fn example_overrides_accepted() {
        let f = gf2_9();
        let w = |k| f.x_pow(k);
        let ov = TowerOverrides {
            generator: Some(w(73)),
            basis_a: Some(vec![w(0), w(73), w(146)]),
            basis_b: Some(vec![w(0), w(309), w(107)]),
        };
        let t = FieldTower::build(f.clone(), 9, 2, 2, &ov).unwrap();
        assert_eq!(elements_rank(&f, &t.product_set()), 9);
        // w^309 is a root of y^3 + y + w^73
        let b = w(309);
        let val = f.add(f.add(f.pow(b, 3), b), w(73));
        assert!(val.is_zero());
    }

    #[test]
    fn default_generator_matches_example() {
        let f = gf2_9();
        let t = FieldTower::build(f.clone(), 9, 2, 2, &TowerOverrides::default()).unwrap();
        assert_eq!(t.subfield_generator(), f.x_pow(73));
        assert_eq!(t.basis_a(), &[f.x_pow(0), f.x_pow(73), f.x_pow(146)]);
        assert_eq!(t.basis_b(), &[f.one(), f.x(), f.x_pow(2)]);
    }

    #[test]
    fn tiny_default_tower() {
        let f = Arc::new(Field::with_default_modulus(2, 6).unwrap());
        let t = FieldTower::build(f.clone(), 6, 1, 2, &TowerOverrides::default()).unwrap();
        assert_eq!(t.basis_a().len(), 2);
        assert_eq!(t.basis_b().len(), 3);
        assert_eq!(elements_rank(&f, &t.product_set()), 6);
        for &a in t.basis_a() {
            assert_eq!(f.frobenius(a, 2), a);
        }
    }

    #[test]
    fn subfield_smaller_than_ambient() {
        let f = Arc::new(Field::with_default_modulus(2, 8).unwrap());
        let t = FieldTower::build(f.clone(), 4, 1, 2, &TowerOverrides::default()).unwrap();
        for &b in t.basis_b() {
            assert_eq!(f.frobenius(b, 4), b);
        }
        assert_eq!(elements_rank(&f, &t.product_set()), 4);
    }

    #[test]
    fn dependent_override_rejected() {
        let f = gf2_9();
        let w = |k| f.x_pow(k);
        let ov = TowerOverrides {
            basis_b: Some(vec![w(0), w(73), w(107)]),
            ..Default::default()
        };
        assert!(matches!(
            FieldTower::build(f.clone(), 9, 2, 2, &ov),
            Err(Error::BasisNotIndependent(_))
        ));
    }

    #[test]
    fn divisibility_checked() {
        let f = gf2_9();
        let ov = TowerOverrides::default();
        assert!(matches!(
            FieldTower::build(f.clone(), 9, 3, 2, &ov),
            Err(Error::Divisibility(_))
        ));
        assert!(matches!(
            FieldTower::build(f, 6, 1, 2, &ov),
            Err(Error::Divisibility(_))
        ));
    }
}
