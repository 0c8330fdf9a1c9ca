//! Degree and genus of a curve directly linked to another inside the
//! complete intersection of two surfaces.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::resolutions::CurveInvariants;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiaisonError {
    #[error("surface degrees must be positive, got {s} and {s_prime}")]
    BadProfile { s: i64, s_prime: i64 },
    #[error("curve degree {degree} leaves no residual in a complete intersection of degree {total}")]
    NoResidual { degree: i64, total: i64 },
    #[error("genus transfer ({diff} * {excess}) / 2 is not an integer")]
    NonIntegralGenus { diff: i64, excess: i64 },
}

/// Degrees of the two linking surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CiProfile {
    pub s: i64,
    pub s_prime: i64,
}

impl CiProfile {
    pub fn new(s: i64, s_prime: i64) -> Result<Self, LiaisonError> {
        if s < 1 || s_prime < 1 {
            return Err(LiaisonError::BadProfile { s, s_prime });
        }
        Ok(Self { s, s_prime })
    }

    pub fn degree(&self) -> i64 {
        self.s * self.s_prime
    }
}

/// `d' = s s' - d`, `g' = g + (d' - d)(s + s' - 4) / 2`.
pub fn residual_invariants(
    c: CurveInvariants,
    ci: CiProfile,
) -> Result<CurveInvariants, LiaisonError> {
    let total = ci.degree();
    let degree = total - c.degree;
    if degree <= 0 {
        return Err(LiaisonError::NoResidual {
            degree: c.degree,
            total,
        });
    }
    let diff = degree - c.degree;
    let excess = ci.s + ci.s_prime - 4;
    if (diff * excess) % 2 != 0 {
        return Err(LiaisonError::NonIntegralGenus { diff, excess });
    }
    Ok(CurveInvariants {
        degree,
        genus: c.genus + diff * excess / 2,
    })
}

pub fn link_is_involution_check(c: CurveInvariants, ci: CiProfile) -> bool {
    residual_invariants(c, ci)
        .and_then(|r| residual_invariants(r, ci))
        .map(|back| back == c)
        .unwrap_or(false)
}
