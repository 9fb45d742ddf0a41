// Downloading one rack through a random linear network that may drop rank
// and inject error packets.

use std::error::Error;

use rankloc::codes::{CodeParams, LocalRankCode, DEFAULT_ORACLE_BUDGET};
use rankloc::netsim::{run_trials, ChannelConfig, RackDecoder};

pub fn run() -> Result<(), Box<dyn Error>> {
    let code = LocalRankCode::with_defaults(CodeParams::new(2, 6, 6, 2, 1, 2)?)?;
    let s = code.params().s();
    let decoder = RackDecoder::new(&code, 2, DEFAULT_ORACLE_BUDGET)?;
    println!("rack 2 has {} candidate local codewords", decoder.candidates().len());

    // one dimension lost is within the guarantee for delta = 2
    let safe = ChannelConfig {
        s,
        collect: s,
        rho_max: 1,
        t_max: 0,
        links: s,
        seed: 7,
    };
    let report = run_trials(&code, &decoder, &safe, 200)?;
    println!("{report}");
    assert_eq!(report.successes, report.trials);

    // one error packet is beyond it, and some trials fail
    let noisy = ChannelConfig {
        t_max: 1,
        rho_max: 0,
        ..safe
    };
    let report = run_trials(&code, &decoder, &noisy, 200)?;
    println!("with one error packet: {}/{} decoded", report.successes, report.trials);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
