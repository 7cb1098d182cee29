//! Parameter-level concatenation `outer ▷ inner`.
//!
//! When the inner dimension divides the outer length, each group of `k_i`
//! outer qubits is re-encoded by one inner block:
//! `[[n_o n_i / k_i, k_o, ≥ d_o d_i / k_i; c_o + c_i n_o / k_i]]`.
//! Otherwise `k_i` outer blocks are interleaved and every one of the `n_o`
//! columns is re-encoded: `[[n_o n_i, k_o k_i, ≥ d_o d_i; c_o k_i + c_i n_o]]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::code::{Distance, DistanceKind, EaCode};
use crate::error::{Error, Result};
use crate::exact::serialize_opt_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Procedure {
    /// `k_i | n_o`
    Divisible,
    /// Interleaved blocks; always available.
    NonDivisible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConcatResult {
    pub code: EaCode,
    pub procedure: Procedure,
    pub outer: EaCode,
    pub inner: EaCode,
    /// Exact distance lower bound before integer rounding.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub distance_bound: Option<BigRational>,
    /// Set when `k_i ∤ d_o d_i` and the stored distance is the floor.
    pub distance_floored: bool,
}

pub fn concat(outer: &EaCode, inner: &EaCode, force: Option<Procedure>) -> Result<ConcatResult> {
    if outer.q() != inner.q() {
        return Err(Error::AlphabetMismatch {
            outer: outer.q(),
            inner: inner.q(),
        });
    }
    let divides = dispatch(outer, inner) == Procedure::Divisible;
    let procedure = match force {
        Some(Procedure::Divisible) if !divides => {
            return Err(Error::Indivisible {
                procedure: Procedure::Divisible,
                k_inner: inner.k(),
                n_outer: outer.n(),
            })
        }
        Some(p) => p,
        None if divides => Procedure::Divisible,
        None => Procedure::NonDivisible,
    };

    let (n, k, c, bound) = match procedure {
        Procedure::Divisible => {
            let blocks = outer.n() / inner.k();
            let bound = outer
                .d()
                .zip(inner.d())
                .map(|(dout, din)| BigRational::new(BigInt::from(dout) * din, BigInt::from(inner.k())));
            (blocks * inner.n(), outer.k(), outer.c() + inner.c() * blocks, bound)
        }
        Procedure::NonDivisible => {
            let bound = outer
                .d()
                .zip(inner.d())
                .map(|(dout, din)| BigRational::from_integer(BigInt::from(dout) * din));
            (
                outer.n() * inner.n(),
                outer.k() * inner.k(),
                outer.c() * inner.k() + inner.c() * outer.n(),
                bound,
            )
        }
    };

    let mut floored = false;
    let distance = bound.as_ref().map(|b| {
        floored = !b.is_integer();
        let value = b.floor().to_integer().max(BigInt::from(1));
        Distance {
            value: u64::try_from(value).expect("distance bound fits in u64"),
            kind: DistanceKind::LowerBound,
        }
    });
    let code = EaCode::concatenated(n, k, distance, c, outer.q())?;
    Ok(ConcatResult {
        code,
        procedure,
        outer: outer.clone(),
        inner: inner.clone(),
        distance_bound: bound,
        distance_floored: floored,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BothOrders {
    /// `a ▷ b`
    pub forward: ConcatResult,
    /// `b ▷ a`
    pub reverse: ConcatResult,
    /// `c(a ▷ b) - c(b ▷ a)`
    pub ebit_difference: i64,
}

pub fn both_orders(a: &EaCode, b: &EaCode) -> Result<BothOrders> {
    let forward = concat(a, b, None)?;
    let reverse = concat(b, a, None)?;
    let ebit_difference = forward.code.c() as i64 - reverse.code.c() as i64;
    Ok(BothOrders {
        forward,
        reverse,
        ebit_difference,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainResult {
    /// One entry per stage; the last one holds the final code.
    pub stages: Vec<ConcatResult>,
}

impl ChainResult {
    pub fn result(&self) -> &ConcatResult {
        self.stages.last().expect("chains have at least one stage")
    }

    pub fn code(&self) -> &EaCode {
        &self.result().code
    }

    pub fn procedures(&self) -> Vec<Procedure> {
        self.stages.iter().map(|s| s.procedure).collect()
    }
}

/// Left fold `((c1 ▷ c2) ▷ c3) ▷ ...` with automatic procedure dispatch.
pub fn chain_concat(codes: &[EaCode]) -> Result<ChainResult> {
    let (first, rest) = match codes {
        [first, rest @ ..] if !rest.is_empty() => (first, rest),
        _ => {
            return Err(Error::Precondition(
                "chain concatenation needs at least two codes".into(),
            ))
        }
    };
    let mut stages: Vec<ConcatResult> = Vec::with_capacity(rest.len());
    let mut current = first.clone();
    for (i, next) in rest.iter().enumerate() {
        let stage = concat(&current, next, None).map_err(|e| Error::Stage {
            stage: i + 1,
            source: Box::new(e),
        })?;
        current = stage.code.clone();
        stages.push(stage);
    }
    Ok(ChainResult { stages })
}

/// Procedure picked by [`concat`] when none is forced.
pub fn dispatch(outer: &EaCode, inner: &EaCode) -> Procedure {
    if outer.n().is_multiple_of(inner.k()) {
        Procedure::Divisible
    } else {
        Procedure::NonDivisible
    }
}
