//! The King cone of a dimension vector `n`: weights `sigma` with
//! `<sigma, n> = 0` and `<sigma, beta> >= 0` for every Schofield quotient
//! dimension vector `beta` of `n`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::schofield::SchofieldSession;
use crate::vector::{DimVector, LatticeVector, Weight};

/// All defining constraints of the cone, without facet reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDescription {
    /// Coefficients of the single equation `<sigma, n> = 0`.
    pub n: DimVector,
    /// One inequality `<sigma, beta> >= 0` per quotient dimension vector.
    pub inequalities: Vec<DimVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeDecision {
    Member,
    ViolatedEquality { pairing: BigRational },
    ViolatedInequality { beta: DimVector, pairing: BigRational },
}

impl ConeDecision {
    pub fn is_member(&self) -> bool {
        matches!(self, ConeDecision::Member)
    }

    /// Short name of the verdict.
    pub fn verdict(&self) -> &'static str {
        match self {
            ConeDecision::Member => "member",
            ConeDecision::ViolatedEquality { .. } => "violated-equality",
            ConeDecision::ViolatedInequality { .. } => "violated-inequality",
        }
    }
}

impl fmt::Display for ConeDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeDecision::Member => f.write_str("member"),
            ConeDecision::ViolatedEquality { pairing } => {
                write!(f, "violated-equality (<sigma, n> = {pairing})")
            }
            ConeDecision::ViolatedInequality { beta, pairing } => {
                write!(f, "violated-inequality (<sigma, {beta}> = {pairing})")
            }
        }
    }
}

impl ConeDescription {
    /// Checks a rational weight; the first violated constraint is reported
    /// (the equation first, then inequalities in stored order).
    pub fn decide(&self, sigma: &[BigRational]) -> Result<ConeDecision> {
        if sigma.len() != self.n.len() {
            return Err(Error::Length {
                expected: self.n.len(),
                found: sigma.len(),
            });
        }
        // Clear denominators; membership is invariant under positive scaling.
        let lcm = sigma
            .iter()
            .fold(BigInt::one(), |acc, s| acc.lcm(s.denom()));
        let scaled: Vec<BigInt> = sigma.iter().map(|s| s.numer() * (&lcm / s.denom())).collect();
        Ok(self.decide_scaled(&scaled, &lcm))
    }

    /// Checks an integral weight.
    pub fn decide_integral(&self, sigma: &[i64]) -> Result<ConeDecision> {
        if sigma.len() != self.n.len() {
            return Err(Error::Length {
                expected: self.n.len(),
                found: sigma.len(),
            });
        }
        let pair = |v: &[i64]| -> i64 { sigma.iter().zip(v).map(|(s, x)| s * x).sum() };
        let rat = |x: i64| BigRational::from_integer(BigInt::from(x));
        let eq = pair(&self.n);
        if eq != 0 {
            return Ok(ConeDecision::ViolatedEquality { pairing: rat(eq) });
        }
        for beta in &self.inequalities {
            let value = pair(beta);
            if value < 0 {
                return Ok(ConeDecision::ViolatedInequality {
                    beta: beta.clone(),
                    pairing: rat(value),
                });
            }
        }
        Ok(ConeDecision::Member)
    }

    fn decide_scaled(&self, sigma: &[BigInt], scale: &BigInt) -> ConeDecision {
        let pair = |v: &[i64]| -> BigInt { sigma.iter().zip(v).map(|(s, x)| s * x).sum() };
        let eq = pair(&self.n);
        if !eq.is_zero() {
            return ConeDecision::ViolatedEquality {
                pairing: BigRational::new(eq, scale.clone()),
            };
        }
        for beta in &self.inequalities {
            let value = pair(beta);
            if value.is_negative() {
                return ConeDecision::ViolatedInequality {
                    beta: beta.clone(),
                    pairing: BigRational::new(value, scale.clone()),
                };
            }
        }
        ConeDecision::Member
    }
}

/// Equation and inequalities of the cone of `n`.
pub fn cone_description(session: &mut SchofieldSession, n: &DimVector) -> Result<ConeDescription> {
    let inequalities = session.quotdims(n)?;
    Ok(ConeDescription {
        n: n.clone(),
        inequalities,
    })
}

pub fn in_cone(session: &mut SchofieldSession, n: &DimVector, sigma: &Weight) -> Result<ConeDecision> {
    cone_description(session, n)?.decide_integral(sigma)
}

pub fn in_cone_rational(
    session: &mut SchofieldSession,
    n: &DimVector,
    sigma: &[BigRational],
) -> Result<ConeDecision> {
    cone_description(session, n)?.decide(sigma)
}

/// `A = L1^{-1}(sigma)` for a cone member, checked to be a dimension vector
/// with `euler(A, n) = 0` and `euler(A, gamma) >= 0` on every quotient.
pub fn sigma_to_a(session: &mut SchofieldSession, n: &DimVector, sigma: &Weight) -> Result<DimVector> {
    let description = cone_description(session, n)?;
    let decision = description.decide_integral(sigma)?;
    if !decision.is_member() {
        return Err(Error::NotInCone(format!("{sigma} ({decision})")));
    }
    let q = session.quiver();
    let a: LatticeVector = q.l1_inverse(sigma)?;
    let a = a.to_dim().ok_or_else(|| {
        Error::Inconsistency(format!("L1^-1({sigma}) = {a} has a negative entry"))
    })?;
    let e = q.euler_form(&a, n)?;
    if e != 0 {
        return Err(Error::Inconsistency(format!("euler({a}, {n}) = {e}")));
    }
    for gamma in &description.inequalities {
        let e = q.euler_form(&a, gamma)?;
        if e < 0 {
            return Err(Error::Inconsistency(format!("euler({a}, {gamma}) = {e} < 0")));
        }
    }
    Ok(a)
}
