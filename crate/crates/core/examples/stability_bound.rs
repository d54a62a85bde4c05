// The interleaving bound for perturbed products, checked on a few experiments.

use blaschke_persistence::distance::theorem_b_bound;
use blaschke_persistence::sampling::seeded_rng;
use blaschke_persistence::verify::perturbation_experiment;

pub fn run_example() -> blaschke_persistence::Result<()> {
    let bound = theorem_b_bound(0.05, 0.01)?;
    println!("{}", serde_json::to_string_pretty(&bound).unwrap());
    println!("delta0 = 0.3, eta = 0.4: {}", theorem_b_bound(0.3, 0.4).unwrap_err());

    let mut rng = seeded_rng(11);
    for _ in 0..3 {
        let run = perturbation_experiment(&mut rng, 512, 4096)?;
        println!(
            "moved {:.4}, ||B - B~|| = {:.4}, eta = {:.4}, delta0 = {:.4}: d_int = {:.2e} <= Delta = {:.4}; zero counts agree: {}",
            run.displacement,
            run.sup_norm,
            run.eta,
            run.bound.delta0,
            run.distance,
            run.bound.big_delta,
            run.rouche.passed()
        );
        assert!(run.within_bound());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
