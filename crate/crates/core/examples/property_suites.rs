// Running the property suites from code, including a deliberately broken constant.

use blaschke_persistence::verify::{run_verify, suite_names, Fault, VerifyConfig};

pub fn run_example() -> blaschke_persistence::Result<()> {
    println!("suites: {}", suite_names().join(", "));
    let config = VerifyConfig {
        seed: 2024,
        suites: ["ineq3", "ln1x", "exhaustive", "order2-consistency"].map(String::from).to_vec(),
        ..Default::default()
    };
    for suite in run_verify(&config)?.suites {
        println!("{:20} {:7} cases  {}", suite.name, suite.cases, if suite.passed { "ok" } else { "FAILED" });
    }

    let faulty = VerifyConfig { suites: vec!["ln1x".into()], fault: Some(Fault::Ln1xConstant), ..config };
    let report = run_verify(&faulty)?;
    println!("with {}: passed = {}, first case {}", Fault::Ln1xConstant, report.passed, report.suites[0].first_violation.as_ref().unwrap());
    assert!(!report.passed);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
