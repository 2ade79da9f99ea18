//! Exact integer linear algebra: Smith normal form, abelian invariants,
//! ranks over ℚ and 𝔽₂, and the mod-2 invariant `S`.

mod matrix;
mod rank;
mod smith;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use matrix::IntMatrix;
pub use rank::{rank_f2, rank_rational, ranks};
pub use smith::{invariant_factors_sparse, smith_normal_form, SnfResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SnfError {
    #[error("relation matrix has {cols} columns but {generators} generators were given")]
    ColumnMismatch { cols: usize, generators: usize },
}

/// A finitely generated abelian group `ℤ^free_rank ⊕ ⨁ ℤ/dᵢ`,
/// with `d_1 | d_2 | …` and every `dᵢ > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    #[serde(with = "biguint_strings")]
    pub torsion: Vec<BigUint>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    /// Drops factors equal to 1 and sorts the rest; the caller guarantees
    /// the input is already a divisibility chain up to order.
    pub fn new(mut factors: Vec<BigUint>, free_rank: usize) -> Self {
        factors.retain(|d| !d.is_one());
        factors.sort();
        debug_assert!(factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        AbelianInvariants {
            torsion: factors,
            free_rank,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Torsion factors as `u64`s (panics on overflow; test helper).
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|d| d.to_u64().expect("factor fits u64")).collect()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

mod biguint_strings {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

fn to_invariants(factors: Vec<BigInt>, num_generators: usize) -> AbelianInvariants {
    let rank = factors.len();
    let torsion = factors
        .into_iter()
        .map(|d| d.to_biguint().expect("invariant factors are positive"))
        .collect();
    AbelianInvariants::new(torsion, num_generators - rank)
}

/// The abelian group presented by `num_generators` generators subject to the
/// rows of `m` as relations.
pub fn abelian_invariants(m: &IntMatrix, num_generators: usize) -> Result<AbelianInvariants, SnfError> {
    if m.cols() != num_generators {
        return Err(SnfError::ColumnMismatch {
            cols: m.cols(),
            generators: num_generators,
        });
    }
    Ok(to_invariants(invariant_factors_sparse(m), num_generators))
}

/// Number of even torsion factors, mod 2. The free part never contributes.
pub fn s_invariant(a: &AbelianInvariants) -> u8 {
    let even = a.torsion.iter().filter(|d| d.is_even()).count();
    (even % 2) as u8
}

/// `S` from the two ranks: `dim H₁(·;𝔽₂) − dim H₁(·;ℚ) = rank_ℚ − rank_𝔽₂`, mod 2.
pub fn s_from_ranks(m: &IntMatrix) -> u8 {
    let (q, f2) = ranks(m);
    ((q - f2) % 2) as u8
}
