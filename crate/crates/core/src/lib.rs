//! Computational toolkit for quasismooth weighted hypersurfaces and complete
//! intersections in weighted projective space, their birational links and
//! point/curve exclusion arithmetic.
//!
//! Everything is exact: coefficients live in ℚ or in a prime field, and every
//! geometric claim is reduced to polynomial identities, ideal membership or
//! emptiness of an affine variety.

pub mod error;
pub mod exclusion;
pub mod family;
pub mod groebner;
pub mod links;
pub mod par;
pub mod poly;
pub mod wps;

use serde::{Deserialize, Serialize};

pub use error::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Three-valued outcome of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Failed,
    Inconclusive,
}

impl Verdict {
    /// Failed beats inconclusive beats verified.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Failed, _) | (_, Failed) => Failed,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Verified,
        }
    }

    pub fn all(it: impl IntoIterator<Item = Verdict>) -> Verdict {
        it.into_iter().fold(Verdict::Verified, Verdict::and)
    }

    pub fn is_verified(self) -> bool {
        self == Verdict::Verified
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Failed => "failed",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}
