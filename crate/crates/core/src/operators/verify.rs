//! Checking operator identities on the monomial basis.

use rayon::prelude::*;
use serde::Serialize;

use super::DifferenceOperator;
use crate::error::Result;
use crate::exact::{ComplexRational, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub monomial_degree: usize,
    pub residual_poly: Polynomial,
}

/// Outcome of checking that a residual operator kills `x^0 … x^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub relation: String,
    pub degree_checked: usize,
    pub pass: bool,
    pub first_failure: Option<Failure>,
}

/// Applies `residual` to every monomial of degree `≤ d` in parallel and records
/// the lowest degree with a nonzero image. Errors from lower degrees win too.
pub fn check_annihilates(relation: &str, residual: &DifferenceOperator, d: usize) -> Result<RelationReport> {
    let images: Vec<Result<Polynomial>> =
        (0..=d).into_par_iter().map(|k| residual.apply(&Polynomial::monomial(k))).collect();
    let mut first_failure = None;
    for (k, image) in images.into_iter().enumerate() {
        let image = image?;
        if !image.is_zero() {
            first_failure = Some(Failure { monomial_degree: k, residual_poly: image });
            break;
        }
    }
    Ok(RelationReport {
        relation: relation.to_string(),
        degree_checked: d,
        pass: first_failure.is_none(),
        first_failure,
    })
}

/// `lhs = rhs` on monomials up to degree `d`.
pub fn check_equal(
    relation: &str,
    lhs: &DifferenceOperator,
    rhs: &DifferenceOperator,
    d: usize,
) -> Result<RelationReport> {
    check_annihilates(relation, &(lhs - rhs), d)
}

/// `op = c·𝟙` on monomials up to degree `d`.
pub fn check_scalar(relation: &str, op: &DifferenceOperator, c: &ComplexRational, d: usize) -> Result<RelationReport> {
    check_equal(relation, op, &DifferenceOperator::scalar(c.clone()), d)
}

/// A named group of relation checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub pass: bool,
    pub relations: Vec<RelationReport>,
}

impl IdentityReport {
    pub fn new(relations: Vec<RelationReport>) -> Self {
        IdentityReport { pass: relations.iter().all(|r| r.pass), relations }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenCheck {
    pub n: usize,
    pub eigenvalue: ComplexRational,
    pub pass: bool,
    pub residual_poly: Option<Polynomial>,
}

/// Result of checking `op P_n = θ_n P_n` for a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenReport {
    pub relation: String,
    pub n_max: usize,
    pub pass: bool,
    pub checks: Vec<EigenCheck>,
}

/// Exact check of `op P_n = θ_n P_n` for each pair, in parallel over `n`.
pub fn verify_eigenpairs(
    relation: &str,
    op: &DifferenceOperator,
    family: &[Polynomial],
    eigenvalues: &[ComplexRational],
) -> Result<EigenReport> {
    assert_eq!(family.len(), eigenvalues.len(), "one eigenvalue per polynomial");
    let checks = family
        .par_iter()
        .zip(eigenvalues.par_iter())
        .enumerate()
        .map(|(n, (p, theta))| {
            let residual = &op.apply(p)? - &p.scale(theta);
            let pass = residual.is_zero();
            Ok(EigenCheck { n, eigenvalue: theta.clone(), pass, residual_poly: (!pass).then_some(residual) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EigenReport {
        relation: relation.to_string(),
        n_max: family.len().saturating_sub(1),
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}
