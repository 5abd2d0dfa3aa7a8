//! Sign cells of the central arrangement cut out by a set of directions.

use crn_equiv::{enumerate_sign_cells, rv};

fn main() {
    let sets = [
        ("axes", vec![rv![1, 0], rv![0, 1]], 2),
        ("parallel", vec![rv![1, 0], rv![2, 0]], 2),
        ("three lines", vec![rv![1, 0], rv![0, 1], rv![1, 1]], 2),
        ("space", vec![rv![1, 0, 0], rv![0, 1, 0], rv![0, 0, 1], rv![1, 1, 1]], 3),
    ];
    for (name, dirs, dim) in sets {
        let cells = enumerate_sign_cells(&dirs, dim);
        println!("{name}: {} cells", cells.len());
        for c in &cells {
            let signs: String = c.signs.iter().map(|s| match s { 1 => '+', -1 => '-', _ => '0' }).collect();
            println!("  {signs}  w = {}  rechecks: {}", c.witness, c.recheck(&dirs));
        }
    }
}
