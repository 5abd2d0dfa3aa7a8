//! Mass-action polynomial vector fields in canonical form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::egraph::{EGraph, RateAssignment};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{format_rational, RationalVector, Q};

/// `f(x) = sum_s x^s c_s`, keyed by exponent with zero coefficients dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawField", into = "RawField")]
pub struct VectorField {
    dim: usize,
    terms: BTreeMap<RationalVector, RationalVector>,
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    exponent: RationalVector,
    coefficient: RationalVector,
}

#[derive(Serialize, Deserialize)]
struct RawField {
    dim: usize,
    terms: Vec<RawTerm>,
}

impl TryFrom<RawField> for VectorField {
    type Error = Error;
    fn try_from(raw: RawField) -> Result<Self> {
        VectorField::from_terms(raw.dim, raw.terms.into_iter().map(|t| (t.exponent, t.coefficient)))
    }
}

impl From<VectorField> for RawField {
    fn from(f: VectorField) -> Self {
        RawField {
            dim: f.dim,
            terms: f.terms.into_iter().map(|(exponent, coefficient)| RawTerm { exponent, coefficient }).collect(),
        }
    }
}

impl VectorField {
    pub fn zero(dim: usize) -> Self {
        VectorField { dim, terms: BTreeMap::new() }
    }

    /// Sums terms with equal exponents and drops zero coefficients.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (RationalVector, RationalVector)>) -> Result<Self> {
        let mut f = VectorField::zero(dim);
        for (e, c) in terms {
            f.add_term(e, &c)?;
        }
        Ok(f)
    }

    fn add_term(&mut self, exponent: RationalVector, coeff: &RationalVector) -> Result<()> {
        for v in [&exponent, coeff] {
            if v.dim() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: v.dim() });
            }
        }
        let sum = match self.terms.remove(&exponent) {
            Some(old) => &old + coeff,
            None => coeff.clone(),
        };
        if !sum.is_zero() {
            self.terms.insert(exponent, sum);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<RationalVector, RationalVector> {
        &self.terms
    }

    pub fn exponents(&self) -> Vec<RationalVector> {
        self.terms.keys().cloned().collect()
    }

    /// Net coefficient of `x^exponent`; zero when absent.
    pub fn coefficient(&self, exponent: &RationalVector) -> RationalVector {
        self.terms.get(exponent).cloned().unwrap_or_else(|| RationalVector::zeros(self.dim))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: &Q) -> Self {
        if c.is_zero() {
            return VectorField::zero(self.dim);
        }
        VectorField { dim: self.dim, terms: self.terms.iter().map(|(e, v)| (e.clone(), v.scale(c))).collect() }
    }

    /// Exact value at `x >= 0`, with `0^0 = 1`.
    pub fn evaluate(&self, x: &RationalVector) -> Result<RationalVector> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        if !x.is_nonnegative() {
            return Err(Error::NegativeConcentration);
        }
        let mut out = RationalVector::zeros(self.dim);
        for (e, c) in &self.terms {
            out = out.add_scaled(&monomial(e, x)?, c);
        }
        Ok(out)
    }

    /// One `dX/dt = ...` line per species.
    pub fn to_text(&self, species: &[String]) -> Vec<String> {
        (0..self.dim)
            .map(|i| {
                let name = variable(species, i, self.dim);
                format!("d{name}/dt = {}", self.component_text(i, species))
            })
            .collect()
    }

    pub fn to_latex(&self, species: &[String]) -> Vec<String> {
        (0..self.dim)
            .map(|i| {
                let name = latex_variable(species, i, self.dim);
                format!("\\dot{{{name}}} = {}", self.component_latex(i, species))
            })
            .collect()
    }

    /// Terms of coordinate `i`, ordered by total degree then lexicographically descending.
    fn component_terms(&self, i: usize) -> Vec<(&RationalVector, &Q)> {
        let mut out: Vec<(&RationalVector, &Q)> =
            self.terms.iter().filter(|(_, c)| !c[i].is_zero()).map(|(e, c)| (e, &c[i])).collect();
        out.sort_by(|a, b| a.0.coordinate_sum().cmp(&b.0.coordinate_sum()).then_with(|| b.0.cmp(a.0)));
        out
    }

    fn component_text(&self, i: usize, species: &[String]) -> String {
        let terms = self.component_terms(i);
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(j, p)| {
                    let v = variable(species, j, self.dim);
                    if p.is_one() {
                        v
                    } else if p.is_integer() {
                        format!("{v}^{}", format_rational(p))
                    } else {
                        format!("{v}^({})", format_rational(p))
                    }
                })
                .collect();
            match (mag.is_one(), factors.is_empty()) {
                (true, true) => s.push('1'),
                (true, false) => s.push_str(&factors.join("*")),
                (false, true) => s.push_str(&format_rational(&mag)),
                (false, false) => {
                    let _ = write!(s, "{}*{}", format_rational(&mag), factors.join("*"));
                }
            }
        }
        s
    }

    fn component_latex(&self, i: usize, species: &[String]) -> String {
        let terms = self.component_terms(i);
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(j, p)| {
                    let v = latex_variable(species, j, self.dim);
                    if p.is_one() {
                        v
                    } else {
                        format!("{v}^{{{}}}", latex_rational(p))
                    }
                })
                .collect();
            if !mag.is_one() || factors.is_empty() {
                s.push_str(&latex_rational(&mag));
                if !factors.is_empty() {
                    s.push(' ');
                }
            }
            s.push_str(&factors.join(" "));
        }
        s
    }
}

fn latex_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        let sign = if x.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", x.numer().abs(), x.denom())
    }
}

fn variable(species: &[String], i: usize, dim: usize) -> String {
    match species.get(i) {
        Some(name) => name.to_lowercase(),
        None if dim == 1 => "x".into(),
        None => format!("x{}", i + 1),
    }
}

fn latex_variable(species: &[String], i: usize, dim: usize) -> String {
    let v = variable(species, i, dim);
    let cut = v.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if cut > 0 && cut < v.len() {
        format!("{}_{{{}}}", &v[..cut], &v[cut..])
    } else {
        v
    }
}

fn monomial(exponent: &RationalVector, x: &RationalVector) -> Result<Q> {
    let mut acc = Q::one();
    for (p, base) in exponent.iter().zip(x.iter()) {
        if p.is_zero() || base.is_one() {
            continue;
        }
        if !p.is_integer() {
            return Err(Error::NonIntegerExponentAtEvaluation { exponent: format_rational(p) });
        }
        if base.is_zero() {
            return Ok(Q::zero());
        }
        let n: BigInt = p.to_integer();
        let n = n.to_i32().ok_or_else(|| Error::NonIntegerExponentAtEvaluation { exponent: format_rational(p) })?;
        acc *= base.pow(n);
    }
    Ok(acc)
}

/// `f_{G(K)}(x) = sum_e k_e x^{s(e)} v(e)` in canonical form.
pub fn generate_field(g: &EGraph, k: &RateAssignment) -> Result<VectorField> {
    k.check_for(g)?;
    let mut f = VectorField::zero(g.dim());
    for e in 0..g.num_edges() {
        let contribution = g.reaction_vector(e).scale(&k.rates()[e]);
        f.add_term(g.source(e).clone(), &contribution)?;
    }
    Ok(f)
}

pub fn fields_equal(f: &VectorField, g: &VectorField) -> Result<bool> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch { expected: f.dim, found: g.dim });
    }
    Ok(f.terms == g.terms)
}

pub fn evaluate_field(f: &VectorField, x: &RationalVector) -> Result<RationalVector> {
    f.evaluate(x)
}

/// A basis of `span{v(e)}` drawn from the reaction vectors in edge order.
pub fn stoichiometric_subspace(g: &EGraph) -> Vec<RationalVector> {
    let vs = g.reaction_vectors();
    linalg::independent_subset(&vs).into_iter().map(|i| vs[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};
    use crate::rv;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn two_species_exchange() {
        let g = EGraph::from_reactions(2, &[(rv![1, 0], rv![0, 1]), (rv![0, 1], rv![1, 0])]).unwrap();
        let f = generate_field(&g, &RateAssignment::ones(2)).unwrap();
        assert_eq!(f.coefficient(&rv![1, 0]), rv![-1, 1]);
        assert_eq!(f.coefficient(&rv![0, 1]), rv![1, -1]);
        assert_eq!(f.evaluate(&rv![3, 5]).unwrap(), rv![2, -2]);
        assert_eq!(f.to_text(&names(&["X1", "X2"])), vec!["dx1/dt = -x1 + x2", "dx2/dt = x1 - x2"]);
        assert_eq!(f.to_latex(&names(&["X1", "X2"]))[0], "\\dot{x_{1}} = -x_{1} + x_{2}");
    }

    #[test]
    fn quadratic_degradation() {
        let g = EGraph::from_reactions(1, &[(rv![0], rv![2]), (rv![2], rv![0])]).unwrap();
        let k = RateAssignment::new(vec![qr(1, 2), qr(1, 2)]).unwrap();
        let f = generate_field(&g, &k).unwrap();
        assert_eq!(f.to_text(&names(&["X"])), vec!["dx/dt = 1 - x^2"]);
        let k = RateAssignment::new(vec![q(2), qr(1, 2)]).unwrap();
        let f = generate_field(&g, &k).unwrap();
        assert_eq!(f.evaluate(&rv![2]).unwrap(), rv![0]);
        assert_eq!(f.to_latex(&names(&["X"])), vec!["\\dot{x} = 4 - x^{2}"]);
    }

    #[test]
    fn zero_terms_are_dropped_and_constants_survive_at_origin() {
        let g = EGraph::from_reactions(1, &[(rv![1], rv![0]), (rv![1], rv![2]), (rv![0], rv![1])]).unwrap();
        let f = generate_field(&g, &RateAssignment::ones(3)).unwrap();
        assert_eq!(f.exponents(), vec![rv![0]]);
        assert_eq!(f.evaluate(&rv![0]).unwrap(), rv![1]);
    }

    #[test]
    fn evaluation_rejects_fractional_powers() {
        let f = VectorField::from_terms(1, [(RationalVector::new(vec![qr(1, 2)]), rv![1])]).unwrap();
        assert!(matches!(f.evaluate(&rv![4]), Err(Error::NonIntegerExponentAtEvaluation { .. })));
        assert_eq!(f.evaluate(&rv![1]).unwrap(), rv![1]);
        assert_eq!(f.to_text(&[]), vec!["dx/dt = x^(1/2)"]);
        assert!(matches!(f.evaluate(&RationalVector::from_ints(&[-1])), Err(Error::NegativeConcentration)));
    }

    #[test]
    fn rate_length_and_dimension_checks() {
        let g = EGraph::from_reactions(1, &[(rv![0], rv![1])]).unwrap();
        assert!(matches!(generate_field(&g, &RateAssignment::ones(2)), Err(Error::RateLengthMismatch { .. })));
        assert!(fields_equal(&VectorField::zero(1), &VectorField::zero(2)).is_err());
    }

    #[test]
    fn stoichiometric_bases() {
        let g = EGraph::from_reactions(2, &[(rv![1, 0], rv![0, 1]), (rv![0, 1], rv![1, 0])]).unwrap();
        assert_eq!(stoichiometric_subspace(&g), vec![rv![-1, 1]]);
        let g = EGraph::from_reactions(1, &[(rv![0], rv![1])]).unwrap();
        assert_eq!(stoichiometric_subspace(&g), vec![rv![1]]);
    }

    #[test]
    fn serde_round_trip() {
        let g = EGraph::from_reactions(2, &[(rv![1, 0], rv![0, 1]), (rv![0, 0], rv![1, 1])]).unwrap();
        let f = generate_field(&g, &RateAssignment::from_ints(&[2, 3]).unwrap()).unwrap();
        let back: VectorField = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
    }
}
