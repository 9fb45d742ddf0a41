// Encoding with the (9, 4) code over GF(2^9) with (2, 2) rank-locality.

use std::error::Error;

use rankloc::codes::RankCode;
use rankloc::formats::CodeSpec;

const SPEC: &str =
    "q=2\nm=9\nn=9\nk=4\nr=2\ndelta=2\nmodulus=1,0,0,0,1,0,0,0,0,1\nbasisA=w^0,w^73,w^146\nbasisB=w^0,w^309,w^107\n";

pub fn run() -> Result<(), Box<dyn Error>> {
    let code = CodeSpec::parse(SPEC)?.build()?;
    let field = code.field();
    let message: Vec<_> = [1, 2, 4, 8].iter().map(|&e| field.x_pow(e)).collect();
    println!("G(x) = {}", code.encoding_poly(&message)?.display(field));

    let codeword = code.encode(&message)?;
    let shown: Vec<String> = codeword.iter().map(|&c| field.format(c)).collect();
    println!("codeword: {}", shown.join(" "));
    let logs: Vec<u64> = codeword.iter().map(|&c| field.log_x(c).unwrap_or(0)).collect();
    assert_eq!(logs, [440, 307, 81, 465, 11, 174, 236, 132, 399]);

    println!("as a matrix over GF(2):");
    let mat = code.encode_matrix(&message)?;
    for i in 0..mat.rows() {
        let row: String = mat.row(i).iter().map(|v| v.to_string()).collect();
        println!("  {row}");
    }
    println!("distance bound: {}", code.distance_bound());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
