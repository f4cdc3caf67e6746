use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Signed};
use serde::Serialize;

use super::diagonal::touches_diagonal_standard;
use super::terms::{roof, TermList};
use crate::error::{Error, Result};
use crate::shuffle::{cross_symbols, GableChain, OrbitSimplex};
use crate::simplicial::SimplicialComplex;

#[derive(Clone, Debug, Serialize)]
pub struct FundamentalReport {
    pub k: usize,
    pub top_simplices: usize,
    pub support_size: usize,
    pub expected_support_size: usize,
    pub boundary_terms: usize,
    /// Boundary orbits whose realization misses the diagonal.
    pub boundary_violations: Vec<String>,
    /// Expected orbits absent from the roof.
    pub missing: Vec<String>,
    /// Roof orbits outside the expected support.
    pub unexpected: Vec<String>,
    /// Orbits whose coefficient is not ±1.
    pub non_unit: Vec<String>,
    pub relative_cycle: bool,
    pub support_matches: bool,
    pub unit_coefficients: bool,
    pub passed: bool,
    #[serde(skip)]
    pub roof: GableChain,
}

/// Checks that the roof of a fundamental term list is a cycle modulo the
/// diagonal, supported exactly on the staircase cells of `σ_s×σ_t` over
/// unordered pairs `s ≠ t` of top simplices, with unit coefficients.
pub fn fundamental_roof_check(
    m: &SimplicialComplex,
    fundamental: &TermList,
) -> Result<FundamentalReport> {
    let k = fundamental.k();
    if k % 2 == 1 {
        return Err(Error::OddDimension(k));
    }
    fundamental.check_support(m)?;
    if !fundamental.is_cycle() {
        return Err(Error::NotACycle(
            "the fundamental term list has a nonzero boundary".into(),
        ));
    }
    let tops = m.simplices(k);
    if m.dim() != Some(k) || fundamental.len() != tops.len() {
        return Err(Error::Precondition(format!(
            "expected one term per top simplex ({}), got {}",
            tops.len(),
            fundamental.len()
        )));
    }
    if let Some((g, s)) = fundamental.terms().iter().find(|(g, _)| !g.abs().is_one()) {
        return Err(Error::Precondition(format!(
            "coefficient {g} on {} is not ±1",
            m.show(s)
        )));
    }

    let chain = roof(fundamental)?;
    let boundary = chain.boundary();
    let boundary_violations: Vec<String> = boundary
        .iter()
        .filter(|(o, _)| !touches_diagonal_standard(o.canonical()))
        .map(|(o, _)| o.show(m))
        .collect();

    let expected: BTreeSet<OrbitSimplex> = tops
        .iter()
        .tuple_combinations()
        .flat_map(|(s, t)| {
            cross_symbols(s, t)
                .into_iter()
                .map(|(_, p)| OrbitSimplex::new(&p))
        })
        .collect();
    let actual: BTreeSet<OrbitSimplex> = chain.iter().map(|(o, _)| o.clone()).collect();
    let missing: Vec<String> = expected.difference(&actual).map(|o| o.show(m)).collect();
    let unexpected: Vec<String> = actual.difference(&expected).map(|o| o.show(m)).collect();
    let non_unit: Vec<String> = chain
        .iter()
        .filter(|(_, g)| !g.abs().is_one())
        .map(|(o, g)| format!("{g}·{}", o.show(m)))
        .collect();

    let relative_cycle = boundary_violations.is_empty();
    let support_matches = missing.is_empty() && unexpected.is_empty();
    let unit_coefficients = non_unit.is_empty();
    Ok(FundamentalReport {
        k,
        top_simplices: tops.len(),
        support_size: actual.len(),
        expected_support_size: expected.len(),
        boundary_terms: boundary.len(),
        boundary_violations,
        missing,
        unexpected,
        non_unit,
        relative_cycle,
        support_matches,
        unit_coefficients,
        passed: relative_cycle && support_matches && unit_coefficients,
        roof: chain,
    })
}
