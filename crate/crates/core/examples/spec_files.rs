// Reading product spec files the way the command line does.

use blaschke_persistence::cli::{critical_report, parse_product, product_to_json};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let b = parse_product(r#"{"phase": [0, 1], "zeros": [[0.6, 0, 1], [-0.6, 0], [0.1, 0.2, 2]]}"#)?;
    println!("parsed degree {} product: {}", b.degree(), product_to_json(&b));
    println!("{}", serde_json::to_string_pretty(&critical_report(&b, 1e-10).map_err(|e| format!("{e:?}"))?)?);

    for bad in [r#"{"zeros": [[0.2, 0, 1], [1.2, 0, 1]]}"#, r#"{"zeros": [[0.2, 0, -1]]}"#, r#"{"phase": [1, 1], "zeros": [[0.2, 0]]}"#] {
        println!("rejected: {}", parse_product(bad).unwrap_err());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
