//! Named code families, EAHB scans over concatenated families, and saturation
//! audits of codes induced from quaternary classical codes.

use std::ops::RangeInclusive;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::bounds::{
    classical_griesmer, classical_plotkin, ea_griesmer, ea_hamming, griesmer_induced_saturation, hamming_budget,
    hamming_efficiency, linear_ea_plotkin, plotkin_induced_saturation, sphere_count, BoundStatus, BoundVerdict,
};
use crate::code::{induce_eaqecc, ClassicalCode, Degeneracy, EaCode};
use crate::concat::{chain_concat, concat, ChainResult, ConcatResult};
use crate::error::{Error, Result};
use crate::exact::serialize_biguint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
    Any,
}

impl Parity {
    pub fn admits(self, n: u64) -> bool {
        match self {
            Self::Odd => n % 2 == 1,
            Self::Even => n.is_multiple_of(2),
            Self::Any => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Generator {
    /// `[[n,1,n;n-1]]`
    RepOdd,
    /// `[[n,1,n-1;n-1]]`
    RepEven,
    /// `[[n+1,1,n;n]]`
    RepOddExt,
    /// `[[n+1,1,n-1;n]]`
    RepEvenExt,
    Constant {
        n: u64,
        k: u64,
        d: u64,
        c: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub name: &'static str,
    pub parity: Parity,
    pub n_min: u64,
    pub degeneracy: Degeneracy,
    #[serde(skip)]
    generator: Generator,
}

pub const FAMILY_NAMES: &[&str] = &["rep_odd", "rep_even", "rep_odd_ext", "rep_even_ext", "C1", "C2", "C4"];

pub fn family(name: &str) -> Result<FamilySpec> {
    use Generator::*;
    let (parity, n_min, degeneracy, generator) = match name {
        "rep_odd" => (Parity::Odd, 3, Degeneracy::Nondegenerate, RepOdd),
        "rep_even" => (Parity::Even, 4, Degeneracy::Nondegenerate, RepEven),
        "rep_odd_ext" => (Parity::Odd, 3, Degeneracy::Unknown, RepOddExt),
        "rep_even_ext" => (Parity::Even, 4, Degeneracy::Unknown, RepEvenExt),
        "C1" => (
            Parity::Any,
            0,
            Degeneracy::Degenerate,
            Constant { n: 8, k: 1, d: 5, c: 1 },
        ),
        "C2" => (Parity::Any, 0, Degeneracy::Unknown, Constant { n: 7, k: 1, d: 5, c: 2 }),
        "C4" => (Parity::Any, 0, Degeneracy::Unknown, Constant { n: 9, k: 1, d: 7, c: 4 }),
        other => return Err(Error::UnknownName(other.to_string())),
    };
    let name = FAMILY_NAMES.iter().find(|&&f| f == name).expect("listed name");
    Ok(FamilySpec {
        name,
        parity,
        n_min,
        degeneracy,
        generator,
    })
}

impl FamilySpec {
    pub fn admits(&self, n: u64) -> bool {
        n >= self.n_min && self.parity.admits(n)
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.generator, Generator::Constant { .. })
    }

    /// The family member at index `n`; constants ignore `n`.
    pub fn member(&self, n: u64) -> Result<EaCode> {
        use Generator::*;
        if !self.is_constant() && !self.admits(n) {
            return Err(Error::Precondition(format!(
                "{} is defined for {} n >= {}, got n = {n}",
                self.name,
                match self.parity {
                    Parity::Odd => "odd",
                    Parity::Even => "even",
                    Parity::Any => "all",
                },
                self.n_min
            )));
        }
        let (len, k, d, c) = match self.generator {
            RepOdd => (n, 1, n, n - 1),
            RepEven => (n, 1, n - 1, n - 1),
            RepOddExt => (n + 1, 1, n, n),
            RepEvenExt => (n + 1, 1, n - 1, n),
            Constant { n, k, d, c } => (n, k, d, c),
        };
        Ok(EaCode::new(len, k, Some(d), c)?.with_degeneracy(self.degeneracy))
    }

    /// Admissible indices inside `range`.
    pub fn indices(&self, range: RangeInclusive<u64>) -> Vec<u64> {
        range.filter(|&n| self.admits(n)).collect()
    }
}

/// Resolves a constant family name or code notation to a code.
pub fn resolve_code(text: &str) -> Result<EaCode> {
    match family(text) {
        Ok(spec) if spec.is_constant() => spec.member(0),
        Ok(spec) => Err(Error::Precondition(format!(
            "{} is a family, not a single code",
            spec.name
        ))),
        Err(_) => text.parse(),
    }
}

/// Degeneracy of a concatenation of flagged components: nondegenerate only
/// when both components are.
fn combined_degeneracy(outer: &EaCode, inner: &EaCode) -> Degeneracy {
    if outer.degeneracy() == Degeneracy::Nondegenerate && inner.degeneracy() == Degeneracy::Nondegenerate {
        Degeneracy::Nondegenerate
    } else {
        Degeneracy::Unknown
    }
}

fn flagged_concat(outer: &EaCode, inner: &EaCode) -> Result<ConcatResult> {
    let mut result = concat(outer, inner, None)?;
    result.code = result.code.clone().with_degeneracy(combined_degeneracy(outer, inner));
    Ok(result)
}

fn serialize_status<S: Serializer>(status: &BoundStatus, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(status.label())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub n: u64,
    pub code: EaCode,
    #[serde(serialize_with = "serialize_biguint")]
    pub sphere_count: BigUint,
    #[serde(serialize_with = "serialize_biguint")]
    pub budget: BigUint,
    #[serde(serialize_with = "serialize_status")]
    pub status: BoundStatus,
    /// Hamming efficiency `log2(sphere_count) / (n - k + c)`.
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scan {
    pub rows: Vec<ScanRow>,
    /// Smallest scanned `n` from which every scanned index violates.
    pub onset: Option<u64>,
}

impl Scan {
    fn from_rows(rows: Vec<ScanRow>) -> Self {
        let mut onset = None;
        for row in rows.iter().rev() {
            if row.status != BoundStatus::Violated {
                break;
            }
            onset = Some(row.n);
        }
        Self { rows, onset }
    }

    pub fn all_satisfy(&self) -> bool {
        self.rows.iter().all(|r| r.status.holds())
    }
}

fn scan_row(n: u64, code: EaCode) -> Result<ScanRow> {
    let verdict = ea_hamming(&code)?;
    let d = code.d().ok_or(Error::MissingDistance)?;
    Ok(ScanRow {
        n,
        sphere_count: sphere_count(code.n(), (d - 1) / 2),
        budget: hamming_budget(&code),
        status: verdict.status,
        phi: hamming_efficiency(&code)?,
        code,
    })
}

fn admissible(spec: &FamilySpec, range: RangeInclusive<u64>) -> Result<Vec<u64>> {
    let indices = spec.indices(range.clone());
    if indices.is_empty() {
        return Err(Error::EmptyRange(format!(
            "no admissible index for {} in {}..={}",
            spec.name,
            range.start(),
            range.end()
        )));
    }
    Ok(indices)
}

/// EAHB check of `outer(n) ▷ inner` at the concatenation distance bound.
pub fn scan_eahb(outer: &FamilySpec, inner: &EaCode, range: RangeInclusive<u64>) -> Result<Scan> {
    let rows = admissible(outer, range)?
        .into_iter()
        .map(|n| scan_row(n, flagged_concat(&outer.member(n)?, inner)?.code))
        .collect::<Result<Vec<_>>>()?;
    Ok(Scan::from_rows(rows))
}

/// EAHB check of `outer ▷ inner(n)`.
pub fn reversed_scan_eahb(outer: &EaCode, inner: &FamilySpec, range: RangeInclusive<u64>) -> Result<Scan> {
    let rows = admissible(inner, range)?
        .into_iter()
        .map(|n| scan_row(n, flagged_concat(outer, &inner.member(n)?)?.code))
        .collect::<Result<Vec<_>>>()?;
    Ok(Scan::from_rows(rows))
}

/// Default upper index for scans of a family of the given parity.
pub fn default_scan_max(parity: Parity) -> u64 {
    match parity {
        Parity::Odd => 99,
        _ => 110,
    }
}

/// The eight violating combinations with their expected onsets.
pub const ONSET_TABLE: &[(&str, &str, u64)] = &[
    ("rep_odd", "C1", 3),
    ("rep_even", "C1", 10),
    ("rep_odd", "C2", 3),
    ("rep_odd", "C4", 11),
    ("rep_even", "C2", 18),
    ("rep_even", "C4", 52),
    ("rep_odd_ext", "C1", 9),
    ("rep_even_ext", "C1", 16),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditRow {
    pub c: u64,
    pub code: EaCode,
    pub verdict: BoundVerdict,
    /// The closed-form saturation predicate for this `c`.
    pub predicate: bool,
}

impl AuditRow {
    pub fn consistent(&self) -> bool {
        self.verdict.is_saturated() == self.predicate
    }
}

fn audit(
    ccode: &ClassicalCode,
    c_range: RangeInclusive<u64>,
    bound: fn(&EaCode) -> Result<BoundVerdict>,
    predicate: fn(&ClassicalCode, u64) -> Result<bool>,
) -> Result<Vec<AuditRow>> {
    if c_range.is_empty() {
        return Err(Error::EmptyRange(format!("empty c range for {ccode}")));
    }
    c_range
        .map(|c| {
            let code = induce_eaqecc(ccode, c)?;
            Ok(AuditRow {
                c,
                verdict: bound(&code)?,
                predicate: predicate(ccode, c)?,
                code,
            })
        })
        .collect()
}

/// EA Griesmer verdicts of the codes induced from a Griesmer-saturating
/// quaternary code, next to the closed-form predicate.
pub fn griesmer_family_audit(ccode: &ClassicalCode, c_range: RangeInclusive<u64>) -> Result<Vec<AuditRow>> {
    if !classical_griesmer(ccode).is_saturated() {
        return Err(Error::Precondition(format!(
            "{ccode} does not saturate the Griesmer bound"
        )));
    }
    audit(ccode, c_range, ea_griesmer, griesmer_induced_saturation)
}

/// Linear EA Plotkin counterpart of [`griesmer_family_audit`].
pub fn plotkin_family_audit(ccode: &ClassicalCode, c_range: RangeInclusive<u64>) -> Result<Vec<AuditRow>> {
    if !classical_plotkin(ccode).is_saturated() {
        return Err(Error::Precondition(format!(
            "{ccode} does not saturate the Plotkin bound"
        )));
    }
    audit(ccode, c_range, linear_ea_plotkin, plotkin_induced_saturation)
}

/// Classical `[n,k,d]` and the inclusive range of c to audit.
pub type AuditCase = ((u64, u64, u64), (u64, u64));

/// Quaternary Griesmer codes and the ebit ranges of their saturating families.
pub const GRIESMER_AUDITS: &[AuditCase] = &[
    ((6, 3, 4), (1, 3)),
    ((10, 4, 6), (4, 6)),
    ((12, 6, 6), (2, 6)),
    ((16, 8, 8), (2, 8)),
    ((21, 3, 16), (17, 18)),
];

/// Quaternary Plotkin codes and their saturating ebit ranges.
pub const PLOTKIN_AUDITS: &[AuditCase] = &[((21, 3, 16), (17, 18)), ((85, 4, 64), (80, 81))];

/// `rep_odd(n_1) ▷ rep_odd(n_2) ▷ ...`, flagged nondegenerate.
pub fn rep_odd_chain(indices: &[u64]) -> Result<ChainResult> {
    let spec = family("rep_odd")?;
    let codes = indices.iter().map(|&n| spec.member(n)).collect::<Result<Vec<_>>>()?;
    let mut chain = chain_concat(&codes)?;
    for stage in &mut chain.stages {
        stage.code = stage.code.clone().with_degeneracy(Degeneracy::Nondegenerate);
    }
    Ok(chain)
}

/// `rep_odd(n) ▷ [[5,1,3;0]]` and `rep_odd(n) ▷ [[4,1,3;1]]`.
pub fn mds_propagation(n: u64) -> Result<[ConcatResult; 2]> {
    let outer = family("rep_odd")?.member(n)?;
    let five = EaCode::new(5, 1, Some(3), 0)?.with_degeneracy(Degeneracy::Nondegenerate);
    let four = EaCode::new(4, 1, Some(3), 1)?.with_degeneracy(Degeneracy::Nondegenerate);
    Ok([flagged_concat(&outer, &five)?, flagged_concat(&outer, &four)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::saturation_trio;
    use crate::code::DistanceKind;

    fn ea(n: u64, k: u64, d: u64, c: u64) -> EaCode {
        EaCode::new(n, k, Some(d), c).unwrap()
    }

    fn nondeg(n: u64, k: u64, d: u64, c: u64) -> EaCode {
        ea(n, k, d, c).with_degeneracy(Degeneracy::Nondegenerate)
    }

    #[test]
    fn members() {
        assert_eq!(family("rep_odd").unwrap().member(5).unwrap(), nondeg(5, 1, 5, 4));
        assert_eq!(family("rep_even").unwrap().member(6).unwrap(), nondeg(6, 1, 5, 5));
        assert_eq!(family("rep_odd_ext").unwrap().member(3).unwrap(), ea(4, 1, 3, 3));
        assert_eq!(family("rep_even_ext").unwrap().member(10).unwrap(), ea(11, 1, 9, 10));
        assert_eq!(family("C4").unwrap().member(0).unwrap(), ea(9, 1, 7, 4));
        assert_eq!(
            family("C1").unwrap().member(0).unwrap(),
            ea(8, 1, 5, 1).with_degeneracy(Degeneracy::Degenerate)
        );
        assert!(family("rep_odd").unwrap().member(4).is_err());
        assert!(family("rep_even").unwrap().member(2).is_err());
        assert!(matches!(family("C3"), Err(Error::UnknownName(_))));
        assert_eq!(resolve_code("C2").unwrap(), ea(7, 1, 5, 2));
        assert_eq!(resolve_code("[[8,1,5;1]]").unwrap(), ea(8, 1, 5, 1));
        assert_eq!(resolve_code("[[8,1,5;1]]").unwrap().degeneracy(), Degeneracy::Unknown);
        assert!(resolve_code("rep_odd").is_err());
    }

    #[test]
    fn first_scan_row() {
        let scan = scan_eahb(&family("rep_odd").unwrap(), &resolve_code("C1").unwrap(), 3..=3).unwrap();
        let row = &scan.rows[0];
        assert_eq!(row.code.to_string(), "[[24,1,≥15;5]]");
        assert_eq!(row.sphere_count, sphere_count(24, 7));
        assert!(row.sphere_count > BigUint::from(1u32) << 28);
        assert_eq!(row.status, BoundStatus::Violated);
        assert!(row.phi > 1.0);
        assert_eq!(scan.onset, Some(3));
    }

    #[test]
    fn reversal_first_row() {
        let scan = reversed_scan_eahb(&resolve_code("C1").unwrap(), &family("rep_odd").unwrap(), 3..=3).unwrap();
        assert_eq!(scan.rows[0].code.to_string(), "[[24,1,≥15;17]]");
        assert_eq!(scan.rows[0].status, BoundStatus::Satisfied);
        assert_eq!(scan.onset, None);
    }

    #[test]
    fn onsets() {
        for &(outer, inner, expected) in ONSET_TABLE {
            let spec = family(outer).unwrap();
            let scan = scan_eahb(&spec, &resolve_code(inner).unwrap(), 0..=default_scan_max(spec.parity)).unwrap();
            assert_eq!(scan.onset, Some(expected), "{outer} ▷ {inner}");
        }
    }

    #[test]
    fn empty_range() {
        let spec = family("rep_odd").unwrap();
        assert!(matches!(
            scan_eahb(&spec, &ea(8, 1, 5, 1), 4..=4),
            Err(Error::EmptyRange(_))
        ));
    }

    #[test]
    fn griesmer_audit_rows() {
        let code = ClassicalCode::new(6, 3, 4, 4).unwrap();
        let rows = griesmer_family_audit(&code, 1..=3).unwrap();
        assert!(rows.iter().all(|r| r.verdict.is_saturated() && r.predicate));
        assert_eq!(rows[0].code, nondeg(6, 1, 4, 1));
        let big = ClassicalCode::new(21, 3, 16, 4).unwrap();
        let rows = griesmer_family_audit(&big, 16..=16).unwrap();
        assert!(!rows[0].predicate && !rows[0].verdict.is_saturated());
        let not_griesmer = ClassicalCode::new(7, 4, 3, 4).unwrap();
        assert!(griesmer_family_audit(&not_griesmer, 1..=1).is_err());
    }

    #[test]
    fn plotkin_audit_rows() {
        for &((n, k, d), (lo, hi)) in PLOTKIN_AUDITS {
            let code = ClassicalCode::new(n, k, d, 4).unwrap();
            for row in plotkin_family_audit(&code, lo..=hi).unwrap() {
                assert!(row.verdict.is_saturated() && row.consistent());
            }
        }
    }

    #[test]
    fn repetition_chains() {
        let chain = rep_odd_chain(&[3, 5]).unwrap();
        assert_eq!(
            chain.code(),
            &nondeg(15, 1, 15, 14).with_distance_kind(DistanceKind::LowerBound)
        );
        assert!(saturation_trio(chain.code()).unwrap());
        let [five, four] = mds_propagation(3).unwrap();
        assert_eq!(five.code.to_string(), "[[15,1,≥9;2]]");
        assert_eq!(four.code.to_string(), "[[12,1,≥9;5]]");
        assert!(saturation_trio(&five.code).unwrap());
        assert!(saturation_trio(&four.code).unwrap());
    }
}
