//! JSON report formats: exact rationals as "a/b" strings, polynomials as
//! grammar text, deterministic field order.  Every report round-trips
//! byte-identically through parse and re-render.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::bogomolov::{CertOutcome, EpsilonPair, HeightCert, KVariety, StepRecord};
use crate::constants::{Field, FieldKind};
use crate::error::{Error, Result};
use crate::heights::AlgPoint;
use crate::mpoly::MultiPoly;
use crate::oracle::{OracleVerdict, SearchSpec};
use crate::parse::{parse_poly, PolyContext};
use crate::selftest::CheckOutcome;

/// Exact rational as "numerator/denominator", never floating point.
pub fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer: BigInt = n.trim().parse().map_err(|_| Error::Parse {
        line: 1,
        col: 1,
        msg: format!("bad rational '{s}'"),
    })?;
    let denom: BigInt = d.trim().parse().map_err(|_| Error::Parse {
        line: 1,
        col: 1,
        msg: format!("bad rational '{s}'"),
    })?;
    if denom == BigInt::from(0) {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(numer, denom))
}

/// Field named by its CLI flag plus the defining modulus when one exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

impl FieldDoc {
    pub fn from_field(field: &Field) -> FieldDoc {
        let name = field.to_string();
        let modulus = match field.kind() {
            FieldKind::ExtensionFinite => Some(field.modulus().to_vec()),
            _ => None,
        };
        FieldDoc { name, modulus }
    }

    pub fn to_field(&self) -> Result<Field> {
        match &self.modulus {
            Some(m) => {
                let p = parse_field_flag_prime(&self.name)?;
                Field::extension_with_modulus(p, m.clone())
            }
            None => parse_field_flag(&self.name),
        }
    }
}

fn parse_field_flag_prime(s: &str) -> Result<u64> {
    let body = s.trim_start_matches('F');
    let p_txt = body.split('^').next().unwrap_or("");
    p_txt.parse().map_err(|_| Error::Parse {
        line: 1,
        col: 1,
        msg: format!("bad field flag '{s}'"),
    })
}

/// Parse "F<p>", "F<p>^<m>", or "Q".
pub fn parse_field_flag(s: &str) -> Result<Field> {
    let s = s.trim();
    if s == "Q" || s == "q" {
        return Ok(Field::rationals());
    }
    if let Some(body) = s.strip_prefix('F') {
        let (p_txt, m_txt) = match body.split_once('^') {
            Some((p, m)) => (p, Some(m)),
            None => (body, None),
        };
        let p: u64 = p_txt.parse().map_err(|_| Error::Parse {
            line: 1,
            col: 1,
            msg: format!("bad field flag '{s}'"),
        })?;
        return match m_txt {
            None => Field::prime(p),
            Some(m) => {
                let m: u32 = m.parse().map_err(|_| Error::Parse {
                    line: 1,
                    col: 1,
                    msg: format!("bad field flag '{s}'"),
                })?;
                Field::extension(p, m)
            }
        };
    }
    Err(Error::Parse {
        line: 1,
        col: 1,
        msg: format!("bad field flag '{s}' (expected F<p>, F<p>^<m>, or Q)"),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SupportRow {
    pub place: String,
    pub residue_degree: u32,
    /// Most negative valuation across the coordinates.
    pub min_valuation: i64,
    pub contribution: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct HeightReport {
    pub kind: String,
    pub field: FieldDoc,
    pub index: u32,
    pub input: Vec<String>,
    pub height: String,
    pub support: Vec<SupportRow>,
}

pub fn height_report(point: &AlgPoint) -> Result<HeightReport> {
    let height = crate::heights::height_tuple(point)?;
    let mut places: Vec<crate::ratfunc::Place> = Vec::new();
    for x in point.coords() {
        if x.is_zero() {
            continue;
        }
        for (w, _) in x.support()? {
            if !places.contains(&w) {
                places.push(w);
            }
        }
    }
    places.sort();
    let mut support = Vec::new();
    for w in places {
        let mut min_v: Option<i64> = None;
        for x in point.coords() {
            if x.is_zero() {
                continue;
            }
            let v = w.valuation(x)?;
            min_v = Some(min_v.map_or(v, |m: i64| m.min(v)));
        }
        let min_valuation = min_v.unwrap_or(0);
        let pole = (-min_valuation).max(0);
        let contribution = BigRational::new(
            BigInt::from(w.residue_degree() as i64 * pole),
            BigInt::from(point.index()),
        );
        support.push(SupportRow {
            place: w.to_text(),
            residue_degree: w.residue_degree(),
            min_valuation,
            contribution: fmt_rational(&contribution),
        });
    }
    Ok(HeightReport {
        kind: "height".into(),
        field: FieldDoc::from_field(point.field()),
        index: point.index(),
        input: point.coords().iter().map(|c| c.to_text()).collect(),
        height: fmt_rational(&height),
        support,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MinPolyReport {
    pub kind: String,
    pub field: FieldDoc,
    pub index: u32,
    pub input: String,
    pub degree: u32,
    pub coeff_degree: u32,
    pub poly: String,
    pub height: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SigmaReport {
    pub kind: String,
    pub field: FieldDoc,
    pub index: u32,
    pub m: u64,
    pub input: String,
    pub output: String,
    pub height_in: String,
    pub height_out: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DichotomyReport {
    pub kind: String,
    pub field: FieldDoc,
    pub index: u32,
    pub n: usize,
    pub d: u32,
    pub m: u64,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<String>,
    pub point_height: String,
}

pub fn dichotomy_report(
    cert: &HeightCert,
    field: &Field,
    point_height: &BigRational,
) -> DichotomyReport {
    let (outcome, bound, zeta) = match &cert.outcome {
        CertOutcome::ZeroAtTwist => ("zero_at_twist".to_string(), None, None),
        CertOutcome::LowerBound { bound, zeta } => (
            "lower_bound".to_string(),
            Some(fmt_rational(bound)),
            Some(zeta.to_text()),
        ),
    };
    DichotomyReport {
        kind: "dichotomy".into(),
        field: FieldDoc::from_field(field),
        index: cert.index,
        n: cert.n,
        d: cert.d,
        m: cert.m,
        outcome,
        bound,
        zeta,
        point_height: fmt_rational(point_height),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EpsilonReport {
    pub kind: String,
    pub field: FieldDoc,
    pub n: usize,
    pub polynomials: Vec<String>,
    pub c: String,
    pub z: Vec<Vec<String>>,
    pub provenance: Vec<StepRecord>,
}

pub fn epsilon_report(pair: &EpsilonPair, field: &Field, inputs: &[MultiPoly]) -> EpsilonReport {
    EpsilonReport {
        kind: "epsilon_pair".into(),
        field: FieldDoc::from_field(field),
        n: pair.z.nvars(),
        polynomials: inputs.iter().map(|f| f.to_text()).collect(),
        c: fmt_rational(&pair.c),
        z: pair
            .z
            .components()
            .iter()
            .map(|comp| comp.iter().map(|p| p.to_text()).collect())
            .collect(),
        provenance: pair.provenance.clone(),
    }
}

/// Rebuild the certified pair from its report.
pub fn epsilon_from_report(report: &EpsilonReport) -> Result<EpsilonPair> {
    let field = report.field.to_field()?;
    let ctx = PolyContext {
        field: field.clone(),
        index: 1,
        nvars: report.n,
    };
    let mut components = Vec::new();
    for comp in &report.z {
        let mut polys = Vec::new();
        for text in comp {
            polys.push(parse_poly(text, &ctx)?);
        }
        components.push(polys);
    }
    let z = KVariety::from_components(report.n, components)?;
    Ok(EpsilonPair {
        c: parse_rational(&report.c)?,
        z,
        provenance: report.provenance.clone(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SearchSpecDoc {
    pub kind: String,
    pub field: FieldDoc,
    pub n: usize,
    pub indices: Vec<u32>,
    pub degree_bound: u32,
    pub budget: u64,
    pub polynomials: Vec<String>,
}

pub fn search_spec_doc(spec: &SearchSpec, polynomials: &[MultiPoly]) -> SearchSpecDoc {
    SearchSpecDoc {
        kind: "search_spec".into(),
        field: FieldDoc::from_field(&spec.field),
        n: spec.nvars,
        indices: spec.indices.clone(),
        degree_bound: spec.degree_bound,
        budget: spec.budget,
        polynomials: polynomials.iter().map(|f| f.to_text()).collect(),
    }
}

/// Rebuild a spec (and the polynomial system) from its config document.
pub fn search_spec_from_doc(doc: &SearchSpecDoc) -> Result<(SearchSpec, Vec<MultiPoly>)> {
    let field = doc.field.to_field()?;
    let ctx = PolyContext {
        field: field.clone(),
        index: 1,
        nvars: doc.n,
    };
    let polys: Vec<MultiPoly> = doc
        .polynomials
        .iter()
        .map(|t| parse_poly(t, &ctx))
        .collect::<Result<_>>()?;
    let mut spec = SearchSpec::new(field, doc.n, doc.indices.clone(), doc.degree_bound);
    spec.budget = doc.budget;
    spec.restrict = if polys.is_empty() {
        None
    } else {
        Some(polys.clone())
    };
    Ok((spec, polys))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerifyReport {
    pub kind: String,
    pub verdict: String,
    pub c: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_height: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_index: Option<u32>,
    pub evaluated: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub required: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

/// Report for an enumeration that exceeded its budget; no partial results.
pub fn overflow_report(c: &BigRational, required: u128, budget: u64) -> VerifyReport {
    VerifyReport {
        kind: "verify".into(),
        verdict: "BUDGET_EXCEEDED".into(),
        c: fmt_rational(c),
        min_height: None,
        witness: None,
        witness_index: None,
        evaluated: 0,
        required: Some(required.to_string()),
        budget: Some(budget),
    }
}

pub fn verify_report(verdict: &OracleVerdict, c: &BigRational) -> VerifyReport {
    VerifyReport {
        kind: "verify".into(),
        verdict: if verdict.pass { "PASS" } else { "FAIL" }.into(),
        c: fmt_rational(c),
        min_height: verdict.min_height.as_ref().map(fmt_rational),
        witness: verdict
            .witness
            .as_ref()
            .map(|p| p.coords().iter().map(|c| c.to_text()).collect()),
        witness_index: verdict.witness.as_ref().map(|p| p.index()),
        evaluated: verdict.evaluated,
        required: None,
        budget: None,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OutcomeDoc {
    pub name: String,
    pub cases: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SelfTestReport {
    pub kind: String,
    pub pass: bool,
    pub outcomes: Vec<OutcomeDoc>,
}

pub fn selftest_report(outcomes: &[CheckOutcome]) -> SelfTestReport {
    SelfTestReport {
        kind: "selftest".into(),
        pass: outcomes.iter().all(|o| o.pass),
        outcomes: outcomes
            .iter()
            .map(|o| OutcomeDoc {
                name: o.name.clone(),
                cases: o.cases,
                pass: o.pass,
                detail: o.detail.clone(),
            })
            .collect(),
    }
}

/// Canonical rendering: pretty JSON with a trailing newline.
pub fn render<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bogomolov::epsilon_hypersurface;
    use crate::parse::parse_tuple;

    #[test]
    fn rational_formatting() {
        let r = BigRational::new(1.into(), 4.into());
        assert_eq!(fmt_rational(&r), "1/4");
        assert_eq!(parse_rational("1/4").unwrap(), r);
        assert_eq!(
            parse_rational("3").unwrap(),
            BigRational::from_integer(3.into())
        );
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn field_flags() {
        assert_eq!(parse_field_flag("F5").unwrap(), Field::prime(5).unwrap());
        assert_eq!(parse_field_flag("Q").unwrap(), Field::rationals());
        let f25 = parse_field_flag("F5^2").unwrap();
        assert_eq!(f25.degree(), 2);
        assert!(parse_field_flag("G7").is_err());
        let doc = FieldDoc::from_field(&f25);
        assert_eq!(doc.to_field().unwrap(), f25);
    }

    #[test]
    fn epsilon_report_round_trip() {
        let field = Field::prime(5).unwrap();
        let ctx = PolyContext {
            field: field.clone(),
            index: 1,
            nvars: 2,
        };
        let f = parse_poly("X2 - t*X1", &ctx).unwrap();
        let pair = epsilon_hypersurface(&f).unwrap();
        let report = epsilon_report(&pair, &field, &[f]);
        let text = render(&report).unwrap();
        let parsed: EpsilonReport = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, report);
        // Byte-identical re-render.
        assert_eq!(render(&parsed).unwrap(), text);
        // The pair survives the round trip semantically.
        let rebuilt = epsilon_from_report(&parsed).unwrap();
        assert_eq!(rebuilt.c, pair.c);
        assert_eq!(rebuilt.z, pair.z);
    }

    #[test]
    fn height_report_round_trip() {
        let field = Field::prime(5).unwrap();
        let point =
            AlgPoint::new(parse_tuple("t, 1/t", &field, 1).unwrap()).unwrap();
        let report = height_report(&point).unwrap();
        assert_eq!(report.height, "2/1");
        let text = render(&report).unwrap();
        let parsed: HeightReport = serde_json::from_str(&text).unwrap();
        assert_eq!(render(&parsed).unwrap(), text);
    }

    #[test]
    fn search_spec_round_trip() {
        let field = Field::prime(5).unwrap();
        let ctx = PolyContext {
            field: field.clone(),
            index: 1,
            nvars: 2,
        };
        let f = parse_poly("X2 - t*X1", &ctx).unwrap();
        let spec = SearchSpec::new(field, 2, vec![1, 2], 2);
        let doc = search_spec_doc(&spec, &[f.clone()]);
        let text = render(&doc).unwrap();
        let parsed: SearchSpecDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(render(&parsed).unwrap(), text);
        let (spec2, polys) = search_spec_from_doc(&parsed).unwrap();
        assert_eq!(spec2.nvars, 2);
        assert_eq!(polys, vec![f.clone()]);
        assert_eq!(spec2.restrict, Some(vec![f]));
    }
}
