// Crisscross erasures on the (9, 4) code over GF(2^9): one rack repaired locally, the rest
// globally.

use std::error::Error;

use rankloc::codes::RankCode;
use rankloc::crisscross::{crisscross_weight, CrisscrossDecoder, ErasurePattern};
use rankloc::formats::{self, CodeSpec};

const SPEC: &str =
    "q=2\nm=9\nn=9\nk=4\nr=2\ndelta=2\nmodulus=1,0,0,0,1,0,0,0,0,1\nbasisA=w^0,w^73,w^146\nbasisB=w^0,w^309,w^107\n";

const PATTERN: &str = "\
??????...
???......
???......
...?.....
...?.....
...?.....
...?.....
...?.....
...?..???
";

pub fn run() -> Result<(), Box<dyn Error>> {
    let code = CodeSpec::parse(SPEC)?.build()?;
    let field = code.field();
    let (erased, _) = formats::parse_pattern(PATTERN, 9, 9)?;
    let (weight, cover) = crisscross_weight(erased.mask());
    println!(
        "crisscross weight {weight}: rows {:?}, columns {:?}",
        cover.rows, cover.cols
    );

    let message: Vec<_> = [1, 2, 4, 8].iter().map(|&e| field.x_pow(e)).collect();
    let sent = code.encode_matrix(&message)?;
    print!("{}", formats::format_array(&sent, 2, Some(&erased)));

    let decoder = CrisscrossDecoder::new(&code, &erased)?;
    let verdict = decoder.verdict();
    println!(
        "verdict: {verdict} (residual {} < d = {})",
        verdict.residual, verdict.distance
    );
    let out = decoder.decode(&sent)?;
    assert_eq!(out.codeword, sent);
    assert_eq!(verdict.to_string(), "LOCAL j=3 GLOBAL");

    // six full rows leave too little to pin the codeword down
    let mut heavy = ErasurePattern::new(9, 9);
    for i in 0..6 {
        heavy.erase_row(i);
    }
    let fails = CrisscrossDecoder::new(&code, &heavy)?.decode(&sent);
    println!(
        "six erased rows: {}",
        fails.err().map_or("decoded".into(), |e| e.to_string())
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
