//! Full acceptance run at the default sizes and tolerances. Runs without the
//! libtest harness so the PASS/FAIL lines always reach the console.

use std::process::ExitCode;
use std::time::Instant;

use ratquad::verify::{run_all, summary_line, VerifyConfig, CRITERIA};

fn main() -> ExitCode {
    let start = Instant::now();
    let results = run_all(&VerifyConfig::default());
    for r in &results {
        println!("{}", summary_line(r));
        for note in &r.notes {
            println!("    {note}");
        }
    }
    println!("acceptance run took {:.1} s", start.elapsed().as_secs_f64());
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if results.len() != CRITERIA as usize || !failed.is_empty() {
        println!(
            "acceptance: {} of {CRITERIA} criteria ran, failed: {failed:?}",
            results.len()
        );
        return ExitCode::FAILURE;
    }
    println!("acceptance: all {CRITERIA} criteria passed");
    ExitCode::SUCCESS
}
