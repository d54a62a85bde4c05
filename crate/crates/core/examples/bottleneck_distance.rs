// Bottleneck distance between barcodes, with the optimal matching as a witness.

use blaschke_persistence::barcode::{canonicalize, Bar};
use blaschke_persistence::distance::{bottleneck, delta_matching, exhaustive_bottleneck, two_bar_distance, validate_witness};

pub fn run_example() -> blaschke_persistence::Result<()> {
    let a = canonicalize([Bar::infinite(0.0), Bar::finite(0.0, 2.125f64.ln())?, Bar::finite(0.2, 1.4)?])?;
    let b = canonicalize([Bar::infinite(0.0), Bar::finite(0.0, (109.0f64 / 91.0).ln())?])?;
    let result = bottleneck(&a, &b);
    let witness = result.witness.as_ref().unwrap();
    println!("d_bot = {:.7}", result.value);
    println!("pairs {:?}, deleted {:?} / {:?}", witness.pairs, witness.deleted1, witness.deleted2);
    validate_witness(&a, &b, witness).expect("witness is a valid matching");
    assert_eq!(result.value, exhaustive_bottleneck(&a, &b));

    // Feasibility at a given delta: deleting (0, 1] needs 2 delta >= 1.
    let unit = canonicalize([Bar::finite(0.0, 1.0)?])?;
    let empty = canonicalize([])?;
    println!("0.49: {}", delta_matching(&unit, &empty, 0.49).is_some());
    println!("0.50: {}", delta_matching(&unit, &empty, 0.5).is_some());

    println!("two-bar formula (0,1] vs (2,3]: {}", two_bar_distance(&Bar::finite(0.0, 1.0)?, &Bar::finite(2.0, 3.0)?)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
