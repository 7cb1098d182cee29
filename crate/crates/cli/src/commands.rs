use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use eaqecc::bounds::{classical_report, ea_report, hamming_efficiency, BoundReport, BoundStatus, BoundVerdict};
use eaqecc::code::rates;
use eaqecc::concat::{both_orders, concat, ConcatResult, Procedure};
use eaqecc::error_model::{
    compose, curve, named_polynomial, polynomial_from_inputs, pseudothreshold, CoefficientInput, ErrorPolynomial,
};
use eaqecc::families::{default_scan_max, family, resolve_code, reversed_scan_eahb, scan_eahb, Scan};
use eaqecc::{parse_code, Degeneracy, EaCode, Error, ParsedCode};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::output::{text_table, Rendered};

/// Failures reported with exit code 1.
#[derive(Debug)]
pub enum Failure {
    Domain(Error),
    Io { path: PathBuf, message: String },
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Domain(e)
    }
}

impl Failure {
    pub fn to_json(&self) -> Value {
        let (kind, message) = match self {
            Self::Domain(e) => (e.kind(), e.to_string()),
            Self::Io { path, message } => ("io", format!("{}: {message}", path.display())),
            Self::Input(message) => ("input", message.clone()),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

pub type Outcome = Result<Rendered, Failure>;

fn ratio(value: &impl std::fmt::Display) -> String {
    value.to_string()
}

fn slack_text(verdict: &BoundVerdict) -> String {
    verdict.slack.as_ref().map(ratio).unwrap_or_default()
}

fn reason_text(verdict: &BoundVerdict) -> String {
    match &verdict.status {
        BoundStatus::NotApplicable(reason) => reason.clone(),
        _ => String::new(),
    }
}

fn report_rows(report: &BoundReport) -> Vec<Vec<String>> {
    report
        .entries
        .iter()
        .map(|(name, v)| {
            vec![
                name.clone(),
                v.status.label().to_string(),
                slack_text(v),
                reason_text(v),
            ]
        })
        .collect()
}

const BOUND_HEADER: [&str; 4] = ["bound", "status", "slack", "reason"];

pub fn check(text: &str, degeneracy: Option<Degeneracy>) -> Outcome {
    match parse_code(text)? {
        ParsedCode::Ea(code) => {
            let code = match degeneracy {
                Some(d) => code.with_degeneracy(d),
                None => code,
            };
            let report = ea_report(&code);
            let summary = rates(&code);
            let truncated = summary.truncated();
            let phi = hamming_efficiency(&code).ok();
            let rows = report_rows(&report);
            let mut table = format!(
                "code        {code}  (degeneracy: {})\n",
                degeneracy_label(code.degeneracy())
            );
            writeln!(
                table,
                "rates       r = {}  r_e = {}  r_n = {}  delta = {}",
                truncated[0], truncated[1], truncated[2], truncated[3]
            )
            .unwrap();
            if let Some(phi) = phi {
                writeln!(table, "efficiency  phi = {phi:.6}").unwrap();
            }
            table.push('\n');
            table.push_str(&text_table(&BOUND_HEADER, &rows));
            Ok(Rendered {
                json: json!({
                    "code": code,
                    "rates": {
                        "exact": summary,
                        "truncated": { "r": truncated[0], "r_e": truncated[1], "r_n": truncated[2], "delta": truncated[3] },
                    },
                    "hamming_efficiency": phi,
                    "bounds": report,
                }),
                header: BOUND_HEADER.to_vec(),
                rows,
                table,
                csv_note: None,
            })
        }
        ParsedCode::Classical(ccode) => {
            if degeneracy.is_some() {
                return Err(Failure::Input("degeneracy flags apply to quantum codes only".into()));
            }
            let report = classical_report(&ccode);
            let rows = report_rows(&report);
            let table = format!("code  {ccode}\n\n{}", text_table(&BOUND_HEADER, &rows));
            Ok(Rendered {
                json: json!({ "code": ccode, "bounds": report }),
                header: BOUND_HEADER.to_vec(),
                rows,
                table,
                csv_note: None,
            })
        }
    }
}

fn degeneracy_label(d: Degeneracy) -> &'static str {
    match d {
        Degeneracy::Nondegenerate => "nondegenerate",
        Degeneracy::Degenerate => "degenerate",
        Degeneracy::Unknown => "unknown",
    }
}

fn procedure_label(p: Procedure) -> &'static str {
    match p {
        Procedure::Divisible => "divisible",
        Procedure::NonDivisible => "non_divisible",
    }
}

const CONCAT_HEADER: [&str; 9] = [
    "outer",
    "inner",
    "procedure",
    "notation",
    "n",
    "k",
    "d_lower_bound",
    "c",
    "d_floored",
];

fn concat_row(r: &ConcatResult) -> Vec<String> {
    vec![
        r.outer.to_string(),
        r.inner.to_string(),
        procedure_label(r.procedure).to_string(),
        r.code.to_string(),
        r.code.n().to_string(),
        r.code.k().to_string(),
        r.code.d().map(|d| d.to_string()).unwrap_or_default(),
        r.code.c().to_string(),
        r.distance_floored.to_string(),
    ]
}

fn concat_line(r: &ConcatResult) -> String {
    let mut line = format!(
        "{} ▷ {} = {}  ({})",
        r.outer,
        r.inner,
        r.code,
        procedure_label(r.procedure)
    );
    if r.distance_floored {
        write!(
            line,
            "  distance bound {} floored",
            r.distance_bound.as_ref().map(ratio).unwrap_or_default()
        )
        .unwrap();
    }
    line.push('\n');
    line
}

pub fn concat_cmd(outer: &str, inner: &str, both: bool, force: Option<Procedure>) -> Outcome {
    let outer = resolve_code(outer)?;
    let inner = resolve_code(inner)?;
    if both {
        let r = both_orders(&outer, &inner)?;
        let mut table = concat_line(&r.forward);
        table.push_str(&concat_line(&r.reverse));
        writeln!(
            table,
            "ebits: c = {}, c' = {}, c - c' = {}",
            r.forward.code.c(),
            r.reverse.code.c(),
            r.ebit_difference
        )
        .unwrap();
        return Ok(Rendered {
            json: serde_json::to_value(&r).expect("serializable"),
            header: CONCAT_HEADER.to_vec(),
            rows: vec![concat_row(&r.forward), concat_row(&r.reverse)],
            table,
            csv_note: None,
        });
    }
    let r = concat(&outer, &inner, force)?;
    Ok(Rendered {
        json: serde_json::to_value(&r).expect("serializable"),
        header: CONCAT_HEADER.to_vec(),
        rows: vec![concat_row(&r)],
        table: concat_line(&r),
        csv_note: None,
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolyFile {
    Bare(Vec<CoefficientInput>),
    Labelled {
        label: Option<String>,
        coefficients: Vec<CoefficientInput>,
    },
}

/// Polynomials loaded from `--poly-file NAME=PATH`, consulted before the
/// built-in names.
#[derive(Default)]
pub struct PolyRegistry {
    extra: BTreeMap<String, ErrorPolynomial>,
}

impl PolyRegistry {
    pub fn load(specs: &[String]) -> Result<Self, Failure> {
        let mut extra = BTreeMap::new();
        for spec in specs {
            let (name, path) = spec
                .split_once('=')
                .ok_or_else(|| Failure::Input(format!("--poly-file expects NAME=PATH, got `{spec}`")))?;
            let path = Path::new(path);
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Io {
                path: path.to_path_buf(),
                message: e.to_string(),
            })?;
            let parsed: PolyFile =
                serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let (label, coefficients) = match parsed {
                PolyFile::Bare(c) => (name.to_string(), c),
                PolyFile::Labelled { label, coefficients } => (label.unwrap_or_else(|| name.to_string()), coefficients),
            };
            extra.insert(name.to_string(), polynomial_from_inputs(&coefficients, &label)?);
        }
        Ok(Self { extra })
    }

    pub fn get(&self, name: &str) -> Result<ErrorPolynomial, Failure> {
        match self.extra.get(name) {
            Some(p) => Ok(p.clone()),
            None => Ok(named_polynomial(name)?),
        }
    }

    fn composed(&self, outer: &str, inner: Option<&str>) -> Result<ErrorPolynomial, Failure> {
        let f = self.get(outer)?;
        Ok(match inner {
            Some(inner) => compose(&f, &self.get(inner)?),
            None => f,
        })
    }
}

/// Reference pseudothresholds for the four component pairs.
const REFERENCE_THRESHOLDS: &[(&str, &str, f64)] = &[
    ("five13", "rep3132", 0.2441),
    ("rep3132", "five13", 0.2284),
    ("five13", "four131", 0.1877),
    ("four131", "five13", 0.1622),
];
const REFERENCE_TOLERANCE: f64 = 5e-4;

fn write_curve(path: &Path, f: &ErrorPolynomial) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    };
    let points = curve(f, 0.0, 0.5, 501)?;
    let mut writer = csv::Writer::from_path(path).map_err(|e| Failure::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    writer.write_record(["p", "p_l"]).map_err(|e| io(e.into()))?;
    for (p, value) in points {
        writer
            .write_record([p.to_string(), value.to_string()])
            .map_err(|e| io(e.into()))?;
    }
    writer.flush().map_err(io)
}

pub fn pseudothreshold_cmd(
    registry: &PolyRegistry,
    outer: &str,
    inner: Option<&str>,
    tol: f64,
    curve_file: Option<&Path>,
) -> Outcome {
    let f = registry.composed(outer, inner)?;
    let threshold = pseudothreshold(&f, tol)?;
    if let Some(path) = curve_file {
        write_curve(path, &f)?;
    }

    let mut notes = Vec::new();
    let reference = REFERENCE_THRESHOLDS
        .iter()
        .find(|(o, i, _)| *o == outer && Some(*i) == inner)
        .map(|&(_, _, value)| value);
    let matches_reference = reference.map(|r| threshold.is_some_and(|p| (p - r).abs() <= REFERENCE_TOLERANCE));
    if matches_reference == Some(false) {
        notes.push(format!(
            "reference value {} is not reproduced by this polynomial (tolerance {REFERENCE_TOLERANCE})",
            reference.unwrap()
        ));
    }
    let mut enumerated = None;
    if outer == "rep3132" || inner == Some("rep3132") {
        fn swap(name: &str) -> &str {
            if name == "rep3132" {
                "rep3132_enumerated"
            } else {
                name
            }
        }
        let variant = registry.composed(swap(outer), inner.map(swap))?;
        let value = pseudothreshold(&variant, tol)?;
        notes.push(format!(
            "rep3132 uses weight-two coefficient 2/9; enumerating its 16 correctable patterns gives 2/3, \
             pseudothreshold with that variant: {}",
            value.map_or("none below 0.5".to_string(), |p| format!("{p:.6}"))
        ));
        enumerated = Some(value);
    }

    let label = f.label().to_string();
    let shown = threshold.map_or("none below 0.5".to_string(), |p| format!("{p:.6}"));
    let mut table = format!("polynomial       {label}\np_L(p)           {f}\npseudothreshold  {shown}\n");
    if let Some(r) = reference {
        writeln!(table, "reference        {r}").unwrap();
    }
    for note in &notes {
        writeln!(table, "note: {note}").unwrap();
    }
    let row = vec![
        outer.to_string(),
        inner.unwrap_or_default().to_string(),
        threshold.map(|p| p.to_string()).unwrap_or_default(),
        tol.to_string(),
        reference.map(|r| r.to_string()).unwrap_or_default(),
    ];
    Ok(Rendered {
        json: json!({
            "outer": outer,
            "inner": inner,
            "polynomial": f,
            "pseudothreshold": threshold,
            "tol": tol,
            "reference": reference,
            "matches_reference": matches_reference,
            "enumerated_variant_pseudothreshold": enumerated.flatten(),
            "notes": notes,
        }),
        header: vec!["outer", "inner", "pseudothreshold", "tol", "reference"],
        rows: vec![row],
        table,
        csv_note: (!notes.is_empty()).then(|| notes.join("\n")),
    })
}

pub fn curve_cmd(
    registry: &PolyRegistry,
    outer: &str,
    inner: Option<&str>,
    p_min: f64,
    p_max: f64,
    steps: usize,
) -> Outcome {
    let f = registry.composed(outer, inner)?;
    let points = curve(&f, p_min, p_max, steps)?;
    let rows: Vec<Vec<String>> = points.iter().map(|(p, v)| vec![p.to_string(), v.to_string()]).collect();
    Ok(Rendered {
        json: json!({
            "polynomial": f,
            "points": points.iter().map(|(p, v)| json!({ "p": p, "p_l": v })).collect::<Vec<_>>(),
        }),
        header: vec!["p", "p_l"],
        table: format!("{}\n{}", f.label(), text_table(&["p", "p_l"], &rows)),
        rows,
        csv_note: None,
    })
}

const SCAN_HEADER: [&str; 6] = ["n", "notation", "sphere_count", "budget", "verdict", "phi"];

pub fn scan_cmd(family_name: &str, fixed: &str, n_min: Option<u64>, n_max: Option<u64>, reversed: bool) -> Outcome {
    let spec = family(family_name)?;
    if spec.is_constant() {
        return Err(Failure::Input(format!("{family_name} is a single code, not a family")));
    }
    let code: EaCode = resolve_code(fixed)?;
    let lo = n_min.unwrap_or(spec.n_min);
    let hi = n_max.unwrap_or_else(|| default_scan_max(spec.parity));
    let scan: Scan = if reversed {
        reversed_scan_eahb(&code, &spec, lo..=hi)?
    } else {
        scan_eahb(&spec, &code, lo..=hi)?
    };
    let rows: Vec<Vec<String>> = scan
        .rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.code.to_string(),
                r.sphere_count.to_string(),
                r.budget.to_string(),
                r.status.label().to_string(),
                format!("{:.12}", r.phi),
            ]
        })
        .collect();
    let onset = scan.onset.map_or("none".to_string(), |n| n.to_string());
    let direction = if reversed {
        format!("{code} ▷ {family_name}(n)")
    } else {
        format!("{family_name}(n) ▷ {code}")
    };
    let short: Vec<Vec<String>> = scan
        .rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.code.to_string(),
                r.status.label().to_string(),
                format!("{:.6}", r.phi),
                r.sphere_count.bits().to_string(),
                r.budget.bits().to_string(),
            ]
        })
        .collect();
    let table = format!(
        "EA Hamming scan of {direction}, n in {lo}..={hi}\n\n{}\nonset: {onset}\n",
        text_table(&["n", "code", "verdict", "phi", "sphere bits", "budget bits"], &short)
    );
    Ok(Rendered {
        json: json!({
            "family": spec,
            "fixed": code,
            "reversed": reversed,
            "n_min": lo,
            "n_max": hi,
            "onset": scan.onset,
            "rows": scan.rows,
        }),
        header: SCAN_HEADER.to_vec(),
        rows,
        table,
        csv_note: Some(format!("onset: {onset}")),
    })
}

pub fn family_cmd(name: &str, indices: &[u64]) -> Outcome {
    let spec = family(name)?;
    let indices: Vec<u64> = if spec.is_constant() {
        vec![0]
    } else if indices.is_empty() {
        spec.indices(spec.n_min..=spec.n_min + 8)
    } else {
        indices.to_vec()
    };
    let members = indices
        .iter()
        .map(|&n| Ok((n, spec.member(n)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let rows: Vec<Vec<String>> = members
        .iter()
        .map(|(n, code)| {
            vec![
                if spec.is_constant() {
                    String::new()
                } else {
                    n.to_string()
                },
                code.to_string(),
                degeneracy_label(code.degeneracy()).to_string(),
            ]
        })
        .collect();
    let table = format!(
        "{}  (parity: {}, n_min: {})\n\n{}",
        spec.name,
        format!("{:?}", spec.parity).to_lowercase(),
        spec.n_min,
        text_table(&["n", "code", "degeneracy"], &rows)
    );
    Ok(Rendered {
        json: json!({
            "family": spec,
            "members": members.iter().map(|(n, code)| json!({
                "n": if spec.is_constant() { None } else { Some(n) },
                "code": code,
            })).collect::<Vec<_>>(),
        }),
        header: vec!["n", "notation", "degeneracy"],
        rows,
        table,
        csv_note: None,
    })
}

const TABLE_ONE: &[(&str, Option<&str>)] = &[
    ("[[9,1,9;8]]", None),
    ("[[12,1,9;5]]", None),
    (
        "[[15,1,9;2]]",
        Some("r_n = (k - c)/n = -1/15 = -0.0666; the reference table lists -0.6666"),
    ),
    ("[[16,1,9;5]]", None),
    ("[[20,1,9;1]]", None),
];

pub fn table1() -> Outcome {
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let mut notes = String::new();
    for &(text, note) in TABLE_ONE {
        let code: EaCode = text.parse()?;
        let summary = rates(&code);
        let [r, r_e, r_n, delta] = summary.truncated();
        rows.push(vec![
            text.to_string(),
            r.clone(),
            r_e.clone(),
            r_n.clone(),
            delta.clone(),
            note.unwrap_or_default().to_string(),
        ]);
        if let Some(note) = note {
            writeln!(notes, "note for {text}: {note}").unwrap();
        }
        entries.push(json!({
            "code": code,
            "exact": summary,
            "truncated": { "r": r, "r_e": r_e, "r_n": r_n, "delta": delta },
            "note": note,
        }));
    }
    let short: Vec<Vec<String>> = rows.iter().map(|r| r[..5].to_vec()).collect();
    let table = format!("{}\n{notes}", text_table(&["code", "r", "r_e", "r_n", "delta"], &short));
    Ok(Rendered {
        json: json!({ "rows": entries }),
        header: vec!["code", "r", "r_e", "r_n", "delta", "note"],
        rows,
        table,
        csv_note: None,
    })
}
