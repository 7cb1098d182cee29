//! Logical-error polynomials in the physical error probability `p`.
//!
//! Only the encoder's `n` qubits are noisy; the receiver's halves of the ebits
//! are assumed perfect. Coefficients are exact rationals and concatenation is
//! polynomial substitution, `p_L^{a ▷ b}(p) = p_L^a(p_L^b(p))`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, rat, serialize_rationals, to_f64};

/// Samples used when validating that a polynomial maps `[0, 1]` into `[0, 1]`.
const RANGE_SAMPLES: u32 = 1000;
const SCAN_STEP_DENOM: u32 = 1000;
/// Pseudothreshold search stops at `p = 0.5`.
const SCAN_STEPS: u32 = 500;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorPolynomial {
    label: String,
    /// Constant term first, no trailing zeros (except the zero polynomial).
    #[serde(serialize_with = "serialize_rationals")]
    coefficients: Vec<BigRational>,
    #[serde(skip)]
    numerators: Vec<BigInt>,
    #[serde(skip)]
    denominator: BigInt,
}

impl ErrorPolynomial {
    /// Validates that the polynomial stays within `[0, 1]` on a 1001-point grid
    /// of `[0, 1]`.
    pub fn new(coefficients: Vec<BigRational>, label: impl Into<String>) -> Result<Self> {
        let poly = Self::from_parts(coefficients, label.into());
        let den = BigInt::from(RANGE_SAMPLES);
        for i in 0..=RANGE_SAMPLES {
            let (num, scale) = poly.scaled_value(&BigInt::from(i), &den);
            if num.is_negative() || num > scale {
                return Err(Error::Polynomial(format!(
                    "value at p = {} is outside [0, 1]",
                    f64::from(i) / f64::from(RANGE_SAMPLES)
                )));
            }
        }
        Ok(poly)
    }

    fn from_parts(mut coefficients: Vec<BigRational>, label: String) -> Self {
        while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(BigRational::zero());
        }
        let denominator = coefficients.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numerators = coefficients
            .iter()
            .map(|c| c.numer() * (&denominator / c.denom()))
            .collect();
        Self {
            label,
            coefficients,
            numerators,
            denominator,
        }
    }

    /// The identity map `p`.
    pub fn identity() -> Self {
        Self::from_parts(vec![BigRational::zero(), BigRational::one()], "p".into())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `(A, B)` with `f(a/b) = A / B`, `B > 0`.
    fn scaled_value(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let mut acc = self.numerators.last().cloned().unwrap_or_default();
        let mut b_pow = b.clone();
        for numer in self.numerators.iter().rev().skip(1) {
            acc = acc * a + numer * &b_pow;
            b_pow *= b;
        }
        let deg = self.degree() as u32;
        let scale = &self.denominator * b.pow(deg);
        (acc, scale)
    }

    pub fn evaluate(&self, p: &BigRational) -> BigRational {
        let (num, den) = self.scaled_value(p.numer(), p.denom());
        BigRational::new(num, den)
    }

    /// Exact evaluation at the binary value of `p`, rounded once at the end.
    pub fn evaluate_f64(&self, p: f64) -> f64 {
        let p = BigRational::from_float(p).expect("finite probability");
        to_f64(&self.evaluate(&p))
    }

    /// Sign of `f(p) - p`.
    fn gap_sign(&self, p: &BigRational) -> std::cmp::Ordering {
        let (num, den) = self.scaled_value(p.numer(), p.denom());
        // f(p) - p = num/den - a/b
        (num * p.denom()).cmp(&(p.numer() * den))
    }
}

impl fmt::Display for ErrorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (power, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            match power {
                0 => write!(f, "{abs}")?,
                _ if abs.is_one() => {}
                _ => write!(f, "{abs}·")?,
            }
            match power {
                0 => {}
                1 => write!(f, "p")?,
                _ => write!(f, "p^{power}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn poly_add(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x + y
        })
        .collect()
}

/// `coeff · p^w · (1 - p)^(n - w)` expanded.
fn weight_term(n: u64, w: u64, coeff: &BigRational) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n as usize + 1];
    let m = n - w;
    for j in 0..=m {
        let b = BigRational::from_integer(binomial(m, j).into());
        let term = coeff * b;
        out[(w + j) as usize] = if j % 2 == 0 { term } else { -term };
    }
    out
}

fn one_minus(terms: Vec<BigRational>) -> Vec<BigRational> {
    let neg: Vec<_> = terms.into_iter().map(|c| -c).collect();
    poly_add(&[BigRational::one()], &neg)
}

/// `1 - sum_{i<=t} C(n,i) p^i (1-p)^(n-i)`: failure probability of a code that
/// corrects every error of weight at most `t` on `n` qubits.
pub fn perfect_t_polynomial(n: u64, t: u64) -> Result<ErrorPolynomial> {
    if t > n {
        return Err(Error::Precondition(format!("t = {t} exceeds n = {n}")));
    }
    let sum = (0..=t).fold(Vec::new(), |acc, i| {
        poly_add(
            &acc,
            &weight_term(n, i, &BigRational::from_integer(binomial(n, i).into())),
        )
    });
    ErrorPolynomial::new(one_minus(sum), format!("perfect(n={n}, t={t})"))
}

/// Weight-two coefficient in the published `[[3,1,3;2]]` repetition-code
/// polynomial.
pub fn rep_3132_weight_two_coefficient() -> BigRational {
    rat(2, 9)
}

/// `1 - (1-p)^3 - 3(1-p)^2 p - (2/9)(1-p) p^2` for the `[[3,1,3;2]]`
/// repetition code.
pub fn rep_3132_polynomial() -> ErrorPolynomial {
    let sum = [
        weight_term(3, 0, &BigRational::one()),
        weight_term(3, 1, &rat(3, 1)),
        weight_term(3, 2, &rep_3132_weight_two_coefficient()),
    ]
    .iter()
    .fold(Vec::new(), |acc, t| poly_add(&acc, t));
    ErrorPolynomial::new(one_minus(sum), "[[3,1,3;2]]_R").expect("valid polynomial")
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `p_L^{outer}(p_L^{inner}(p))`.
///
/// With `outer = A(x)/D` and `inner = G(p)/E` this is
/// `sum_j A_j G^j E^(m-j) / (D E^m)`, evaluated by Horner over the integers.
pub fn compose(outer: &ErrorPolynomial, inner: &ErrorPolynomial) -> ErrorPolynomial {
    let m = outer.degree();
    let e = &inner.denominator;
    let mut e_pow = BigInt::one();
    let mut acc = vec![outer.numerators[m].clone()];
    for a in outer.numerators[..m].iter().rev() {
        e_pow *= e;
        acc = int_poly_mul(&acc, &inner.numerators);
        acc[0] += a * &e_pow;
    }
    let den = &outer.denominator * e_pow;
    let coefficients = acc.into_iter().map(|c| BigRational::new(c, den.clone())).collect();
    ErrorPolynomial::from_parts(coefficients, format!("{} ▷ {}", outer.label, inner.label))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Self::I),
            'X' => Some(Self::X),
            'Y' => Some(Self::Y),
            'Z' => Some(Self::Z),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            Self::I => 'I',
            Self::X => 'X',
            Self::Y => 'Y',
            Self::Z => 'Z',
        }
    }
}

/// Set of Pauli error patterns on the `n` noisy qubits that a decoder
/// corrects. Always contains the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectableSet {
    n: usize,
    patterns: BTreeSet<Vec<Pauli>>,
}

impl CorrectableSet {
    /// Patterns are dense strings over `IXYZ`, one character per qubit.
    pub fn new<I, S>(n: usize, patterns: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = BTreeSet::new();
        for text in patterns {
            let text = text.as_ref();
            let pattern = text
                .chars()
                .map(Pauli::from_char)
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Invariant(format!("`{text}` is not a Pauli string")))?;
            if pattern.len() != n {
                return Err(Error::Invariant(format!("`{text}` does not act on {n} qubits")));
            }
            if !set.insert(pattern) {
                return Err(Error::Invariant(format!("pattern `{text}` listed twice")));
            }
        }
        if !set.contains(&vec![Pauli::I; n]) {
            return Err(Error::Invariant("the identity pattern must be correctable".into()));
        }
        Ok(Self { n, patterns: set })
    }

    /// Every pattern of weight at most `t`.
    pub fn all_up_to_weight(n: usize, t: usize) -> Self {
        fn extend(prefix: &mut Vec<Pauli>, n: usize, budget: usize, out: &mut BTreeSet<Vec<Pauli>>) {
            if prefix.len() == n {
                out.insert(prefix.clone());
                return;
            }
            for p in [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z] {
                if p != Pauli::I && budget == 0 {
                    continue;
                }
                prefix.push(p);
                extend(prefix, n, budget - usize::from(p != Pauli::I), out);
                prefix.pop();
            }
        }
        let mut patterns = BTreeSet::new();
        extend(&mut Vec::with_capacity(n), n, t, &mut patterns);
        Self { n, patterns }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn patterns(&self) -> impl Iterator<Item = String> + '_ {
        self.patterns.iter().map(|p| p.iter().map(|q| q.as_char()).collect())
    }

    /// Number of patterns of each weight `0..=n`.
    pub fn weight_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n + 1];
        for p in &self.patterns {
            counts[p.iter().filter(|&&q| q != Pauli::I).count()] += 1;
        }
        counts
    }
}

/// The sixteen errors the `[[3,1,3;2]]` repetition code corrects: identity,
/// all single-qubit errors, and six `X_i Z_j` pairs.
pub fn rep_3132_correctable_set() -> CorrectableSet {
    CorrectableSet::new(
        3,
        [
            "III", "XII", "IXI", "IIX", "ZII", "IZI", "IIZ", "YII", "IYI", "IIY", // weight <= 1
            "XZI", "XIZ", "ZXI", "IXZ", "ZIX", "IZX",
        ],
    )
    .expect("valid set")
}

/// Depolarizing-model oracle: `1 - sum_{E in set} (p/3)^w(E) (1-p)^(n - w(E))`.
pub fn polynomial_from_set(set: &CorrectableSet) -> ErrorPolynomial {
    let n = set.n as u64;
    let sum = set
        .weight_counts()
        .iter()
        .enumerate()
        .filter(|(_, &count)| count > 0)
        .fold(Vec::new(), |acc, (w, &count)| {
            let coeff = BigRational::new(count.into(), BigInt::from(3).pow(w as u32));
            poly_add(&acc, &weight_term(n, w as u64, &coeff))
        });
    ErrorPolynomial::from_parts(one_minus(sum), format!("enumerated({} patterns)", set.len()))
}

/// Smallest `p*` in `(0, 0.5]` with `f(p*) = p*` and `f(p) < p` below it.
///
/// `f(p) - p` is sign-scanned exactly on the grid `i/1000` and the first
/// bracketing interval is bisected until narrower than `tol`. Returns `None`
/// when encoding never helps on the first grid point or no crossing exists.
pub fn pseudothreshold(f: &ErrorPolynomial, tol: f64) -> Result<Option<f64>> {
    if !f.coefficients[0].is_zero() {
        return Err(Error::Polynomial("p_L(0) must be 0".into()));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Precondition(format!("tolerance {tol} must be positive")));
    }
    use std::cmp::Ordering::*;
    let denom = BigInt::from(SCAN_STEP_DENOM);
    let grid = |i: u32| BigRational::new(BigInt::from(i), denom.clone());
    for i in 1..=SCAN_STEPS {
        let hi = grid(i);
        match f.gap_sign(&hi) {
            Less => continue,
            Equal | Greater if i == 1 => return Ok(None),
            Equal => return Ok(Some(to_f64(&hi))),
            Greater => {
                let mut lo = grid(i - 1);
                let mut hi = hi;
                let tol = BigRational::from_float(tol).expect("finite tolerance");
                let two = BigRational::from_integer(2.into());
                while &hi - &lo >= tol {
                    let mid = (&lo + &hi) / &two;
                    match f.gap_sign(&mid) {
                        Less => lo = mid,
                        Equal => return Ok(Some(to_f64(&mid))),
                        Greater => hi = mid,
                    }
                }
                return Ok(Some(to_f64(&((lo + hi) / two))));
            }
        }
    }
    Ok(None)
}

/// Uniformly spaced `(p, f(p))` samples, evaluated exactly.
pub fn curve(f: &ErrorPolynomial, p_min: f64, p_max: f64, steps: usize) -> Result<Vec<(f64, f64)>> {
    if !(0.0 <= p_min && p_min < p_max && p_max <= 1.0) {
        return Err(Error::Precondition(format!(
            "need 0 <= p_min < p_max <= 1, got [{p_min}, {p_max}]"
        )));
    }
    if steps < 2 {
        return Err(Error::Precondition("a curve needs at least 2 steps".into()));
    }
    let lo = BigRational::from_float(p_min).expect("finite");
    let hi = BigRational::from_float(p_max).expect("finite");
    let span = (&hi - &lo) / BigRational::from_integer(BigInt::from(steps - 1));
    Ok((0..steps)
        .map(|i| {
            let p = if i + 1 == steps {
                hi.clone()
            } else {
                &lo + &span * BigRational::from_integer(i.into())
            };
            (to_f64(&p), to_f64(&f.evaluate(&p)))
        })
        .collect())
}

/// Names accepted by [`named_polynomial`].
pub const POLYNOMIAL_NAMES: &[&str] = &["five13", "four131", "rep3132", "rep3132_enumerated"];

pub fn named_polynomial(name: &str) -> Result<ErrorPolynomial> {
    Ok(match name {
        "five13" => perfect_t_polynomial(5, 1)?.with_label("[[5,1,3]]"),
        "four131" => perfect_t_polynomial(4, 1)?.with_label("[[4,1,3;1]]"),
        "rep3132" => rep_3132_polynomial(),
        // weight-two coefficient 2/3 from the sixteen listed patterns
        "rep3132_enumerated" => polynomial_from_set(&rep_3132_correctable_set()).with_label("[[3,1,3;2]]_R enumerated"),
        other => return Err(Error::UnknownName(other.to_string())),
    })
}

/// One coefficient in a JSON polynomial file: `{"num": .., "den": ..}`, an
/// integer, or a string such as `"-2/9"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CoefficientInput {
    Fraction { num: IntInput, den: IntInput },
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum IntInput {
    Int(i64),
    Text(String),
}

impl IntInput {
    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            Self::Int(v) => Ok(BigInt::from(*v)),
            Self::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Polynomial(format!("`{s}` is not an integer"))),
        }
    }
}

impl CoefficientInput {
    pub fn to_rational(&self) -> Result<BigRational> {
        let (num, den) = match self {
            Self::Fraction { num, den } => (num.to_bigint()?, den.to_bigint()?),
            Self::Int(v) => (BigInt::from(*v), BigInt::one()),
            Self::Text(s) => match s.split_once('/') {
                Some((a, b)) => (
                    IntInput::Text(a.to_string()).to_bigint()?,
                    IntInput::Text(b.to_string()).to_bigint()?,
                ),
                None => (IntInput::Text(s.clone()).to_bigint()?, BigInt::one()),
            },
        };
        if den.is_zero() {
            return Err(Error::Polynomial("zero denominator".into()));
        }
        Ok(BigRational::new(num, den))
    }
}

/// Builds a validated polynomial from parsed JSON coefficients.
pub fn polynomial_from_inputs(inputs: &[CoefficientInput], label: &str) -> Result<ErrorPolynomial> {
    let coefficients = inputs
        .iter()
        .map(CoefficientInput::to_rational)
        .collect::<Result<Vec<_>>>()?;
    if coefficients.is_empty() {
        return Err(Error::Polynomial("no coefficients".into()));
    }
    ErrorPolynomial::new(coefficients, label)
}
