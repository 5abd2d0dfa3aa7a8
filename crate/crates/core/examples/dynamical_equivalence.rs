//! Inclusion of dynamics, capacity for equivalence and explicit rate witnesses.

use crn_equiv::{
    capacity_for_equivalence, dynamics_included, fields_equal, find_rate_witness, generate_field, parse,
    RateAssignment,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (small, _) = parse("species: X1 X2\nX1 <-> X2")?.to_egraph()?;
    let (big, _) = parse("species: X1 X2\nX2 -> X1\nX1 -> X1 + X2\nX1 -> 0")?.to_egraph()?;

    let inc = dynamics_included(&small, &big)?;
    println!("every field of the reversible pair is generated by the larger network: {}", inc.holds);
    println!("certificate rechecks: {}", inc.recheck(&small, &big));

    let back = dynamics_included(&big, &small)?;
    println!("and conversely: {}", back.holds);
    if let (Some(s), Some(reason)) = (&back.failing_source, back.failing_reason) {
        println!("  fails at source {s}: {reason:?}");
    }

    let k = RateAssignment::from_ints(&[2, 5])?;
    let f = generate_field(&small, &k)?;
    let witness = find_rate_witness(&big, &f)?;
    let rates: Vec<String> = witness.rates().iter().map(ToString::to_string).collect();
    println!("rates on the larger network: {}", rates.join(", "));
    println!("fields agree: {}", fields_equal(&f, &generate_field(&big, &witness)?)?);

    let cap = capacity_for_equivalence(&small, &big)?;
    if let Some(shared) = &cap.shared_field {
        println!("a shared field:");
        for line in shared.to_text(&["X1".into(), "X2".into()]) {
            println!("  {line}");
        }
    }
    Ok(())
}
