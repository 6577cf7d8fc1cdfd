//! Run one verification suite programmatically and summarize it.

use ffdiophantine::cli::config::ExperimentConfig;
use ffdiophantine::cli::suites::Runner;

fn main() -> ffdiophantine::Result<()> {
    let mut cfg = ExperimentConfig {
        workers: 4,
        ..ExperimentConfig::default()
    };
    cfg.proposition.count = 30;
    let runner = Runner::new(&cfg)?;
    let report = runner.run("proposition")?;
    println!("{}: passed = {}", report.suite, report.passed);
    println!("{:#?}", report.tally);
    Ok(())
}
