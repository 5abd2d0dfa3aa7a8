//! Seeded generators; the same seed always gives the same network.

use crn_equiv::parser::default_species;
use crn_equiv::random::{random_split_pair, random_with_requirements, Requirement};
use crn_equiv::{classify, dynamics_included, NetworkDocument};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let species = default_species(2);
    let wants = [
        vec![Requirement::WeaklyReversible],
        vec![Requirement::StronglyEndotactic, Requirement::SourceOnly],
        vec![Requirement::Endotactic],
    ];
    for (seed, want) in wants.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed as u64);
        let g = random_with_requirements(&mut rng, 2, 4, want, 10_000)?;
        let r = classify(&g);
        println!("seed {seed}, requiring {want:?}: endotactic {}, weakly reversible {}", r.endotactic, r.weakly_reversible);
        print!("{}", NetworkDocument::from_egraph(&g, &species, None)?.serialize());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (small, big) = random_split_pair(&mut rng, 3)?;
    println!(
        "split pair: {} reactions inside {}, inclusion {}",
        small.num_edges(),
        big.num_edges(),
        dynamics_included(&small, &big)?.holds
    );
    Ok(())
}
