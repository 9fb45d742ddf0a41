// Arithmetic in GF(2^9) and the subfield tower behind the (9, 4) code.

use std::error::Error;
use std::sync::Arc;

use rankloc::gf::{elements_rank, Field, FieldSpec, FieldTower, TowerOverrides};

pub fn run() -> Result<(), Box<dyn Error>> {
    // x^9 + x^4 + 1, coefficients low-first
    let field = Arc::new(Field::new(&FieldSpec::new(2, 9, vec![1, 0, 0, 0, 1, 0, 0, 0, 0, 1]))?);
    let w = field.x();
    let a = field.pow(w, 73);
    let b = field.pow(w, 146);
    println!("w^73 * w^146 = {}", field.format(field.mul(a, b)));
    println!("frob(w^73) = {}", field.format(field.frobenius(a, 1)));
    assert_eq!(field.mul(a, b), field.x_pow(219));

    // GF(2^3) is generated by w^73 since (2^9 - 1) / (2^3 - 1) = 73
    assert_eq!(field.pow(a, 7), field.one());

    let overrides = TowerOverrides {
        generator: Some(a),
        basis_a: Some(vec![field.one(), a, b]),
        basis_b: Some(vec![field.one(), field.x_pow(309), field.x_pow(107)]),
    };
    let tower = FieldTower::build(field.clone(), 9, 2, 2, &overrides)?;
    let points = tower.product_set();
    let logs: Vec<String> = points.iter().map(|&p| field.format(p)).collect();
    println!("evaluation points: {}", logs.join(" "));
    assert_eq!(elements_rank(&field, &points), 9);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
