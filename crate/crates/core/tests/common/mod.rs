#![allow(dead_code)]

use crn_equiv::rational::q;
use crn_equiv::{parse, EGraph, NetworkDocument, RateAssignment, RationalVector, Q};
use num_traits::{One, ToPrimitive};

pub fn fixture_text(name: &str) -> String {
    let path = format!("{}/fixtures/{name}.crn", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn doc(name: &str) -> NetworkDocument {
    parse(&fixture_text(name)).unwrap()
}

pub fn net(name: &str) -> EGraph {
    doc(name).to_egraph().unwrap().0
}

pub fn net_with_rates(name: &str) -> (EGraph, RateAssignment) {
    doc(name).to_egraph_with_rates().unwrap()
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}.crn", env!("CARGO_MANIFEST_DIR"))
}

pub fn rates(ks: &[i64]) -> RateAssignment {
    RateAssignment::from_ints(ks).unwrap()
}

/// `sum_e k_e x^{s(e)} v(e)` summed edge by edge at an integer-exponent point.
pub fn field_at(g: &EGraph, k: &RateAssignment, x: &RationalVector) -> RationalVector {
    let mut acc = vec![Q::from_integer(0.into()); g.dim()];
    for e in 0..g.num_edges() {
        let mut mono = Q::one();
        for (xi, si) in x.iter().zip(g.source(e).iter()) {
            assert!(si.is_integer());
            for _ in 0..si.to_integer().to_u32().unwrap() {
                mono *= xi;
            }
        }
        let v = g.reaction_vector(e);
        for i in 0..g.dim() {
            acc[i] += &k.rates()[e] * &mono * &v[i];
        }
    }
    RationalVector::new(acc)
}

/// A handful of positive integer probe points.
pub fn probe_points(dim: usize) -> Vec<RationalVector> {
    let mut pts = Vec::new();
    for a in 1..=4i64 {
        let coords: Vec<Q> = (0..dim).map(|i| q(a + 2 * i as i64 + (a * i as i64) % 3)).collect();
        pts.push(RationalVector::new(coords));
    }
    pts
}
