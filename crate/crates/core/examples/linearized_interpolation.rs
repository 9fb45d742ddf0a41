// Evaluating and interpolating linearized polynomials over GF(2^6).

use std::error::Error;

use rankloc::gf::Field;
use rankloc::linpoly::LinearizedPoly;

pub fn run() -> Result<(), Box<dyn Error>> {
    let field = Field::with_default_modulus(2, 6)?;
    let w = field.x();
    // L(x) = w x + x^[2]
    let l = LinearizedPoly::from_terms(&field, [(0, w), (2, field.one())]);
    println!("L(x) = {}", l.display(&field));

    // GF(2)-linear: L(a + b) = L(a) + L(b)
    let (a, b) = (field.x_pow(5), field.x_pow(40));
    assert_eq!(
        l.eval(&field, field.add(a, b)),
        field.add(l.eval(&field, a), l.eval(&field, b))
    );

    // three independent points pin down a q-degree-2 polynomial
    let points = [field.one(), w, field.x_pow(2)];
    let values: Vec<_> = points.iter().map(|&p| l.eval(&field, p)).collect();
    let back = LinearizedPoly::interpolate(&field, &points, &values)?;
    assert_eq!(back, l);
    println!("interpolated: {}", back.display(&field));
    println!("root space dimension: {}", l.root_space_dim(&field)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
