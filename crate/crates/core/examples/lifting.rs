// Lifting the tiny (6, 2) code to a subspace code and checking its locality.

use std::error::Error;

use rankloc::codes::{CodeParams, LocalRankCode, RankCode, DEFAULT_ORACLE_BUDGET};
use rankloc::subspace::{lift, verify_subspace_locality, LiftedCode};

pub fn run() -> Result<(), Box<dyn Error>> {
    let code = LocalRankCode::with_defaults(CodeParams::new(2, 6, 6, 2, 1, 2)?)?;
    let field = code.field();
    let gf = field.base();

    let x = code.encode_matrix(&[field.one(), field.x()])?;
    let u = lift(&x);
    let zero = lift(&rankloc::matrix::Matrix::zeros(6, 6));
    println!(
        "rank X = {}, d_S(lift X, lift 0) = {}",
        x.rank(gf),
        u.distance(&zero, gf)?
    );

    let lifted = LiftedCode::new(&code, DEFAULT_ORACLE_BUDGET)?;
    let d = lifted.min_distance(gf)?;
    println!(
        "{} subspaces of dimension 6 in GF(2)^12, minimum distance {d}",
        lifted.len()
    );
    assert_eq!(d, 8);

    let groups: Vec<Vec<usize>> = (1..=code.mu()).map(|j| code.group_columns(j).collect()).collect();
    let report = verify_subspace_locality(&lifted, &groups, 1, 4, gf, 1 << 16, 1)?;
    for g in &report.groups {
        println!(
            "group {:?}: {} projections, distance {}",
            g.columns, g.distinct, g.distance
        );
    }
    assert!(report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
