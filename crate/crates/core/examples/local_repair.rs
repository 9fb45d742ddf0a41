// Repairing one rack of a codeword of the (9, 4) code from its own symbols.

use std::error::Error;

use rankloc::codes::RankCode;
use rankloc::crisscross::{CrisscrossDecoder, ErasurePattern};
use rankloc::formats::CodeSpec;

const SPEC: &str =
    "q=2\nm=9\nn=9\nk=4\nr=2\ndelta=2\nmodulus=1,0,0,0,1,0,0,0,0,1\nbasisA=w^0,w^73,w^146\nbasisB=w^0,w^309,w^107\n";

pub fn run() -> Result<(), Box<dyn Error>> {
    let code = CodeSpec::parse(SPEC)?.build()?;
    let field = code.field();
    let message: Vec<_> = [1, 2, 4, 8].iter().map(|&e| field.x_pow(e)).collect();
    let codeword = code.encode(&message)?;

    // on rack j the codeword agrees with a q-degree r-1 polynomial
    for j in 1..=code.mu() {
        let rp = code.repair_poly(&message, j)?;
        for col in code.group_columns(j) {
            assert_eq!(rp.eval(field, code.points()[col]), codeword[col]);
        }
        println!("R_{j}(x) = {}", rp.display(field));
    }

    // lose column 4 entirely: rack 2 restores it
    let mut erased = ErasurePattern::new(field.degree(), code.params().n);
    erased.erase_column(4);
    let decoder = CrisscrossDecoder::new(&code, &erased)?;
    let received = code.encode_matrix(&message)?;
    let out = decoder.decode(&received)?;
    println!("verdict: {}, repaired racks {:?}", decoder.verdict(), out.local);
    assert_eq!(out.local, vec![2]);
    assert_eq!(out.codeword, received);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
