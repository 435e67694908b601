//! Necessary-condition arithmetic for CIST families.
//!
//! Two packing inequalities decide whether ⌊k/2⌋ CISTs can fit at all: the
//! k-connected k-regular bound and its sharper bipartite refinement (which
//! is what rules out three CISTs in Q_6). On top of them sit the strict
//! ceiling/floor inequality lemma, the divisibility scan for the even
//! values where that lemma goes silent, and the per-dimension verdict on
//! the half-degree conjecture for hypercubes.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConditionError {
    #[error("regularity k must be at least 2, got {k}")]
    KTooSmall { k: u64 },
    #[error("vertex count must be at least 2, got {nv}")]
    NvTooSmall { nv: u64 },
    #[error("a k-regular bipartite graph has an even vertex count, got {nv}")]
    OddVertexCount { nv: u64 },
    #[error("lemma inapplicable: {k} divides {witness} (requires k ∤ x and k ∤ x−1)")]
    LemmaInapplicable { x: u64, k: u64, witness: u64 },
    #[error("the divisibility test is defined for even m ≥ 4, got {m}")]
    BadExceptionDomain { m: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Regular,
    Bipartite,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Regular => write!(f, "regular"),
            Variant::Bipartite => write!(f, "bipartite"),
        }
    }
}

/// One evaluated inequality: `holds` ⟺ lhs ≤ rhs ⟺ the necessary condition
/// for ⌊k/2⌋ CISTs is satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionReport {
    pub variant: Variant,
    pub k: u64,
    pub nv: u64,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

fn check_k_nv(k: u64, nv: u64) -> Result<(), ConditionError> {
    if k < 2 {
        return Err(ConditionError::KTooSmall { k });
    }
    if nv < 2 {
        return Err(ConditionError::NvTooSmall { nv });
    }
    Ok(())
}

/// The k-connected k-regular necessary condition:
/// ⌈(nv − 2)/⌈k/2⌉⌉ ≤ ⌊nv/⌊k/2⌋⌋.
pub fn condition_regular(k: u64, nv: u64) -> Result<ConditionReport, ConditionError> {
    check_k_nv(k, nv)?;
    let lhs = (nv - 2).div_ceil(k.div_ceil(2));
    let rhs = nv / (k / 2);
    Ok(ConditionReport { variant: Variant::Regular, k, nv, lhs, rhs, holds: lhs <= rhs })
}

/// The bipartite refinement: with m = nv/2 vertices per side,
/// ⌈(m − 1)/⌈k/2⌉⌉ ≤ ⌊m/⌊k/2⌋⌋.
pub fn condition_bipartite(k: u64, nv: u64) -> Result<ConditionReport, ConditionError> {
    check_k_nv(k, nv)?;
    if !nv.is_multiple_of(2) {
        return Err(ConditionError::OddVertexCount { nv });
    }
    let m = nv / 2;
    let lhs = (m - 1).div_ceil(k.div_ceil(2));
    let rhs = m / (k / 2);
    Ok(ConditionReport { variant: Variant::Bipartite, k, nv, lhs, rhs, holds: lhs <= rhs })
}

/// The strict inequality ⌈(x−1)/k⌉ > ⌊x/k⌋, valid exactly when k divides
/// neither x nor x−1. Violating that precondition is an explicit
/// "inapplicable" error, never a silent `false`, so the property suite
/// asserts the lemma rather than assuming it.
pub fn lemma_strict(x: u64, k: u64) -> Result<bool, ConditionError> {
    if x < 1 {
        return Err(ConditionError::NvTooSmall { nv: x });
    }
    if k < 1 {
        return Err(ConditionError::KTooSmall { k });
    }
    for witness in [x, x - 1] {
        if witness % k == 0 {
            return Err(ConditionError::LemmaInapplicable { x, k, witness });
        }
    }
    Ok((x - 1).div_ceil(k) > x / k)
}

/// Modular exponentiation with 128-bit intermediates, overflow-safe for any
/// u64 modulus.
fn modpow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = u128::from(modulus);
    let mut result = 1u128 % m;
    let mut b = u128::from(base) % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result as u64
}

/// Whether m/2 divides 2^(m−1) − 1. The numerator is odd, so an even m/2
/// short-circuits to false and only m ≡ 2 (mod 4) ever reaches the modpow.
pub fn divides_exception(m: u64) -> Result<bool, ConditionError> {
    if m < 4 || !m.is_multiple_of(2) {
        return Err(ConditionError::BadExceptionDomain { m });
    }
    let denom = m / 2;
    if denom.is_multiple_of(2) {
        return Ok(false);
    }
    Ok(modpow(2, m - 1, denom) == 1 % denom)
}

/// All even m in [4, limit] with [`divides_exception`] true, ascending.
/// Only m ≡ 2 (mod 4) can qualify, so the scan steps by 4.
pub fn search_exceptions(limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = 6;
    while m <= limit {
        if divides_exception(m).expect("m ≡ 2 (mod 4) is in domain") {
            out.push(m);
        }
        m += 4;
    }
    out
}

/// How the even-dimension feasibility argument classifies Q_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictClass {
    /// The bipartite condition fails strictly: Q_n has no n/2 CISTs.
    Impossible,
    /// n = 2^r, so n/2 divides 2^(n−1) and the strict lemma is inapplicable.
    ExceptionPowerOfTwo,
    /// n/2 divides 2^(n−1) − 1; the other divisibility escape.
    ExceptionDivisor,
    /// Odd n or n ≤ 2: the proposition says nothing.
    OutOfScope,
}

impl fmt::Display for VerdictClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictClass::Impossible => write!(f, "impossible"),
            VerdictClass::ExceptionPowerOfTwo => write!(f, "exception-power-of-two"),
            VerdictClass::ExceptionDivisor => write!(f, "exception-divisor"),
            VerdictClass::OutOfScope => write!(f, "out-of-scope"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureVerdict {
    pub n: u64,
    pub class: VerdictClass,
    /// Which divisibility fired, in words.
    pub detail: String,
}

/// Classifies whether Q_n can host n/2 CISTs, for the half-degree
/// conjecture. The exceptional classes only mean the impossibility proof
/// does not apply — they never claim the trees exist.
pub fn conjecture_verdict(n: u64) -> ConjectureVerdict {
    if n <= 2 || !n.is_multiple_of(2) {
        return ConjectureVerdict {
            n,
            class: VerdictClass::OutOfScope,
            detail: "the proposition concerns even n ≥ 4".to_string(),
        };
    }
    if n & (n - 1) == 0 {
        let r = n.trailing_zeros();
        return ConjectureVerdict {
            n,
            class: VerdictClass::ExceptionPowerOfTwo,
            detail: format!("n = 2^{r}; k = n/2 divides 2^(n−1)"),
        };
    }
    if divides_exception(n).expect("even n ≥ 4 is in domain") {
        return ConjectureVerdict {
            n,
            class: VerdictClass::ExceptionDivisor,
            detail: format!("{} divides 2^{} − 1", n / 2, n - 1),
        };
    }
    ConjectureVerdict {
        n,
        class: VerdictClass::Impossible,
        detail: format!(
            "{} divides neither 2^{} nor 2^{} − 1, so the bipartite condition fails strictly",
            n / 2,
            n - 1,
            n - 1
        ),
    }
}
