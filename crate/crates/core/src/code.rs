//! Code parameter tuples and the parameter-level transformations between them.
//!
//! An [`EaCode`] is an entanglement-assisted `[[n,k,d;c]]_q` code: `n` physical
//! qudits sent by the encoder, `k` logical qudits, optional minimum distance `d`,
//! `c` preshared ebits and `a = n - k - c` ancillas. A [`ClassicalCode`] is a
//! linear `[n,k,d]_q` code.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{serialize_opt_rational, serialize_rational, truncate_decimal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceKind {
    Exact,
    /// The true distance is at least the stored value (concatenated codes).
    LowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    Nondegenerate,
    Degenerate,
    /// Never inferred from the parameters; must be supplied by the caller.
    #[default]
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Distance {
    pub value: u64,
    pub kind: DistanceKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EaCode {
    n: u64,
    k: u64,
    distance: Option<Distance>,
    c: u64,
    q: u64,
    degeneracy: Degeneracy,
}

impl EaCode {
    /// Binary code with exact distance (when given) and unknown degeneracy.
    pub fn new(n: u64, k: u64, d: Option<u64>, c: u64) -> Result<Self> {
        Self::with_params(
            n,
            k,
            d.map(|value| Distance {
                value,
                kind: DistanceKind::Exact,
            }),
            c,
            2,
        )
    }

    pub fn with_params(n: u64, k: u64, distance: Option<Distance>, c: u64, q: u64) -> Result<Self> {
        // Codes derived from a stabilizer code may hold more ebits than n - k
        // (e.g. [[3,2,2;2]] from [[5,2,2]]), but never more than n.
        if c > n {
            return Err(Error::Invariant(format!(
                "c <= n - k, relaxed to c <= n for derived codes (got n = {n}, k = {k}, c = {c})"
            )));
        }
        Self::concatenated(n, k, distance, c, q)
    }

    /// Same checks as [`EaCode::with_params`] minus the ebit cap: concatenating
    /// over-entangled derived codes can give `c > n`.
    pub(crate) fn concatenated(n: u64, k: u64, distance: Option<Distance>, c: u64, q: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invariant("n must be positive".into()));
        }
        if k == 0 {
            return Err(Error::Invariant("k must be positive".into()));
        }
        if q < 2 {
            return Err(Error::Invariant(format!("alphabet size q = {q} must be at least 2")));
        }
        if k > n {
            return Err(Error::Invariant(format!("k <= n (got n = {n}, k = {k})")));
        }
        if let Some(d) = distance {
            if d.value == 0 {
                return Err(Error::Invariant("d must be positive".into()));
            }
            if d.kind == DistanceKind::Exact && d.value > n {
                return Err(Error::Invariant(format!("1 <= d <= n (got d = {}, n = {n})", d.value)));
            }
        }
        Ok(Self {
            n,
            k,
            distance,
            c,
            q,
            degeneracy: Degeneracy::Unknown,
        })
    }

    pub fn with_degeneracy(mut self, degeneracy: Degeneracy) -> Self {
        self.degeneracy = degeneracy;
        self
    }

    pub fn with_q(self, q: u64) -> Result<Self> {
        let degeneracy = self.degeneracy;
        Ok(Self::with_params(self.n, self.k, self.distance, self.c, q)?.with_degeneracy(degeneracy))
    }

    /// Re-tags the stored distance. No-op when the distance is absent.
    pub fn with_distance_kind(mut self, kind: DistanceKind) -> Self {
        if let Some(d) = self.distance.as_mut() {
            d.kind = kind;
        }
        self
    }

    pub fn without_distance(mut self) -> Self {
        self.distance = None;
        self
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn d(&self) -> Option<u64> {
        self.distance.map(|d| d.value)
    }

    pub fn distance(&self) -> Option<Distance> {
        self.distance
    }

    pub fn degeneracy(&self) -> Degeneracy {
        self.degeneracy
    }

    /// Ancilla count `a = n - k - c`; negative for over-entangled derived codes.
    pub fn ancillas(&self) -> i64 {
        self.n as i64 - self.k as i64 - self.c as i64
    }

    /// `c > n - k`, only possible for codes derived from a stabilizer code.
    pub fn is_over_entangled(&self) -> bool {
        self.c > self.n - self.k
    }

    pub fn is_maximal_entanglement(&self) -> bool {
        self.c == self.n - self.k
    }

    /// `n - k + c`, the exponent of the EA Hamming budget.
    pub fn redundancy(&self) -> u64 {
        self.n - self.k + self.c
    }

    pub(crate) fn require_d(&self) -> Result<u64> {
        self.d().ok_or(Error::MissingDistance)
    }

    pub(crate) fn is_lower_bound(&self) -> bool {
        matches!(
            self.distance,
            Some(Distance {
                kind: DistanceKind::LowerBound,
                ..
            })
        )
    }
}

/// Renders the code notation, `[[n,k,d;c]]_q`. Lower-bound distances render as
/// `≥d` and `_q` is omitted for binary codes.
impl fmt::Display for EaCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}", self.n, self.k)?;
        match self.distance {
            Some(Distance {
                value,
                kind: DistanceKind::Exact,
            }) => write!(f, ",{value}")?,
            Some(Distance {
                value,
                kind: DistanceKind::LowerBound,
            }) => write!(f, ",≥{value}")?,
            None => {}
        }
        write!(f, ";{}]]", self.c)?;
        if self.q != 2 {
            write!(f, "_{}", self.q)?;
        }
        Ok(())
    }
}

impl Serialize for EaCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("EaCode", 8)?;
        st.serialize_field("notation", &self.to_string())?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("d", &self.d())?;
        st.serialize_field("d_kind", &self.distance.map(|d| d.kind))?;
        st.serialize_field("c", &self.c)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("degeneracy", &self.degeneracy)?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassicalCode {
    n: u64,
    k: u64,
    d: u64,
    q: u64,
}

impl ClassicalCode {
    pub fn new(n: u64, k: u64, d: u64, q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::Invariant(format!("alphabet size q = {q} must be at least 2")));
        }
        if k == 0 || k > n {
            return Err(Error::Invariant(format!("1 <= k <= n (got n = {n}, k = {k})")));
        }
        if d == 0 || d > n {
            return Err(Error::Invariant(format!("1 <= d <= n (got n = {n}, d = {d})")));
        }
        Ok(Self { n, k, d, q })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl fmt::Display for ClassicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.n, self.k, self.d)?;
        if self.q != 2 {
            write!(f, "_{}", self.q)?;
        }
        Ok(())
    }
}

impl Serialize for ClassicalCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ClassicalCode", 5)?;
        st.serialize_field("notation", &self.to_string())?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("q", &self.q)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RateSummary {
    /// `k / n`
    #[serde(serialize_with = "serialize_rational")]
    pub r: BigRational,
    /// `c / n`
    #[serde(serialize_with = "serialize_rational")]
    pub r_e: BigRational,
    /// `(k - c) / n`
    #[serde(serialize_with = "serialize_rational")]
    pub r_n: BigRational,
    /// `d / n`, absent when the code has no distance.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub delta: Option<BigRational>,
}

impl RateSummary {
    /// Four-place truncated renderings `(r, r_e, r_n, delta)`.
    pub fn truncated(&self) -> [String; 4] {
        [
            truncate_decimal(&self.r, 4),
            truncate_decimal(&self.r_e, 4),
            truncate_decimal(&self.r_n, 4),
            self.delta
                .as_ref()
                .map(|d| truncate_decimal(d, 4))
                .unwrap_or_else(|| "-".to_string()),
        ]
    }
}

pub fn rates(code: &EaCode) -> RateSummary {
    let n = BigInt::from(code.n);
    let frac = |num: BigInt| BigRational::new(num, n.clone());
    RateSummary {
        r: frac(BigInt::from(code.k)),
        r_e: frac(BigInt::from(code.c)),
        r_n: frac(BigInt::from(code.k) - BigInt::from(code.c)),
        delta: code.d().map(|d| frac(BigInt::from(d))),
    }
}

/// Turns a standard `[[n,k,d]]` code into the derived `[[n - c_new, k, d; c_new]]`
/// code. `n + c` is preserved.
pub fn derive_eaqecc(code: &EaCode, c_new: u64) -> Result<EaCode> {
    if code.c != 0 {
        return Err(Error::Precondition(format!(
            "derivation starts from a standard stabilizer code (c = 0), got c = {}",
            code.c
        )));
    }
    if c_new > code.n - code.k {
        return Err(Error::Precondition(format!(
            "c_new = {c_new} exceeds n - k = {}",
            code.n - code.k
        )));
    }
    let mut derived = EaCode::with_params(code.n - c_new, code.k, code.distance, c_new, code.q)?;
    derived.degeneracy = code.degeneracy;
    Ok(derived)
}

/// The two extensions `[[n+1, k, d; c+1]]` and `[[n, k-1; c+1]]`.
///
/// The second extension has no known distance. It needs `k >= 2`; when the
/// parent has `k = 1` it is reported as an error in the second slot.
pub fn extend_code(code: &EaCode) -> (Result<EaCode>, Result<EaCode>) {
    let lengthened = EaCode::with_params(code.n + 1, code.k, code.distance, code.c + 1, code.q);
    let shortened = if code.k < 2 {
        Err(Error::Precondition("the [[n, k-1; c+1]] extension needs k >= 2".into()))
    } else {
        EaCode::with_params(code.n, code.k - 1, None, code.c + 1, code.q)
    };
    (lengthened, shortened)
}

/// Integer square root when `q` is a perfect square.
pub(crate) fn exact_sqrt(q: u64) -> Option<u64> {
    let s = (q as f64).sqrt().round() as u64;
    (s.saturating_sub(1)..=s + 1).find(|r| r * r == q)
}

/// Induces the nondegenerate `[[n, 2k - n + c, d; c]]_s` code from a classical
/// `[n,k,d]_{s^2}` code.
pub fn induce_eaqecc(ccode: &ClassicalCode, c: u64) -> Result<EaCode> {
    let s = exact_sqrt(ccode.q).ok_or(Error::NotPerfectSquare(ccode.q))?;
    let (n, k) = (ccode.n, ccode.k);
    let lower = (n + 1).saturating_sub(2 * k);
    if c < lower || c > n - k {
        return Err(Error::Precondition(format!(
            "c = {c} outside [{lower}, {}] for {ccode}",
            n - k
        )));
    }
    let kappa = 2 * k + c - n;
    Ok(EaCode::with_params(
        n,
        kappa,
        Some(Distance {
            value: ccode.d,
            kind: DistanceKind::Exact,
        }),
        c,
        s,
    )?
    .with_degeneracy(Degeneracy::Nondegenerate))
}
