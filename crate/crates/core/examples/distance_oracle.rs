// Brute-force rank distance for small codes and sampling for larger ones.

use std::error::Error;

use rankloc::codes::{
    codeword_count, local_min_rank_distance, min_rank_distance, sampled_min_rank, CodeParams, LocalRankCode,
    DEFAULT_ORACLE_BUDGET,
};
use rankloc::formats::CodeSpec;

const SPEC: &str =
    "q=2\nm=9\nn=9\nk=4\nr=2\ndelta=2\nmodulus=1,0,0,0,1,0,0,0,0,1\nbasisA=w^0,w^73,w^146\nbasisB=w^0,w^309,w^107\n";

pub fn run() -> Result<(), Box<dyn Error>> {
    let tiny = LocalRankCode::with_defaults(CodeParams::new(2, 6, 6, 2, 1, 2)?)?;
    let d = min_rank_distance(&tiny, DEFAULT_ORACLE_BUDGET)?;
    println!(
        "tiny code: {} codewords, d = {d}, bound {}",
        codeword_count(&tiny),
        tiny.distance_bound()
    );
    for j in 1..=tiny.mu() {
        println!(
            "  local code {j}: d = {}",
            local_min_rank_distance(&tiny, j, DEFAULT_ORACLE_BUDGET)?
        );
    }
    assert_eq!(d, tiny.distance_bound());

    // 2^36 codewords is past the budget, so sample instead
    let large = CodeSpec::parse(SPEC)?.build()?;
    match min_rank_distance(&large, DEFAULT_ORACLE_BUDGET) {
        Err(e) => println!("exhaustive scan refused: {e}"),
        Ok(d) => println!("exhaustive d = {d}"),
    }
    let sampled = sampled_min_rank(&large, 2000, 11)?;
    println!(
        "{} sampled codewords, least rank {} (bound {})",
        sampled.samples,
        sampled.min_rank,
        large.distance_bound()
    );
    assert!(sampled.at_least(large.distance_bound()));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
