//! Command-line front end: exact heights, Kummer minimal polynomials,
//! twists, the dichotomy certificate, (C, Z) pairs, and oracle verification.
//!
//! Machine-readable JSON goes to standard output; `--pretty` appends a
//! human table.  Exit codes: 0 success (and verify PASS), 1 error or
//! verify FAIL, 2 enumeration budget exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use heightgap::bogomolov::{
    dichotomy_check, epsilon_variety, CertOutcome,
};
use heightgap::constants::Field;
use heightgap::heights::{
    height_element, height_tuple, height_via_min_poly, min_poly_of_kummer, sigma_element,
    AlgPoint,
};
use heightgap::mpoly::MultiPoly;
use heightgap::oracle::{min_height_off_z, SearchSpec};
use heightgap::parse::{parse_poly, parse_ratfunc, parse_tuple, PolyContext};
use heightgap::report::{
    self, dichotomy_report, epsilon_from_report, epsilon_report, height_report, overflow_report,
    parse_field_flag, search_spec_doc, search_spec_from_doc, selftest_report, verify_report,
    EpsilonReport, FieldDoc, MinPolyReport, SearchSpecDoc, SigmaReport,
};
use heightgap::Error;

#[derive(Parser)]
#[command(
    name = "heightgap",
    version,
    about = "Exact Weil heights over k(t) and its Kummer extensions, with certified height-gap pairs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct FieldArgs {
    /// Constant field: F<p>, F<p>^<m>, or Q
    #[arg(long)]
    field: String,
    /// Kummer index e of the inputs (T denotes t^(1/e))
    #[arg(short = 'e', long = "index", default_value_t = 1)]
    index: u32,
}

impl FieldArgs {
    fn field(&self) -> anyhow::Result<Field> {
        Ok(parse_field_flag(&self.field)?)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact height of an element or tuple, with its support table
    Height {
        #[command(flatten)]
        field: FieldArgs,
        /// A single element of k(T)
        #[arg(long, conflicts_with = "tuple")]
        expr: Option<String>,
        /// Comma-separated coordinates of a point
        #[arg(long)]
        tuple: Option<String>,
        #[arg(long)]
        pretty: bool,
    },
    /// Kummer minimal polynomial over k(t) and the height it certifies
    Minpoly {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        pretty: bool,
    },
    /// Apply the twist t -> t^M and report both heights
    Sigma {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short = 'M', long = "exponent")]
        m: u64,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        pretty: bool,
    },
    /// Twist dichotomy for a reduced polynomial at a point of its zero set
    Dichotomy {
        #[command(flatten)]
        field: FieldArgs,
        /// Ambient dimension (inferred from the polynomial when omitted)
        #[arg(short = 'n', long)]
        n: Option<usize>,
        #[arg(long)]
        poly: String,
        /// Comma-separated point coordinates
        #[arg(long)]
        point: String,
        /// Kummer index of the point (defaults to -e)
        #[arg(long)]
        point_index: Option<u32>,
        /// Twist exponent (defaults to the canonical choice)
        #[arg(short = 'M', long = "exponent")]
        m: Option<u64>,
        #[arg(long)]
        pretty: bool,
    },
    /// Certified pair (C, Z) for the variety cut out by the polynomials
    Epsilon {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short = 'n', long)]
        n: Option<usize>,
        /// Defining polynomial; repeat for a joint system
        #[arg(long = "poly", required = true)]
        polys: Vec<String>,
        /// Also write the report to this file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a matching oracle search spec to this file
        #[arg(long)]
        emit_search: Option<PathBuf>,
        /// Degree bound for the emitted search spec
        #[arg(long, default_value_t = 2)]
        bound: u32,
        /// Kummer indices for the emitted search spec
        #[arg(long, value_delimiter = ',', default_values_t = vec![1u32, 2])]
        indices: Vec<u32>,
        /// Point budget for the emitted search spec
        #[arg(long, default_value_t = heightgap::oracle::DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        pretty: bool,
    },
    /// Check a certified pair against exhaustive bounded search
    Verify {
        /// Epsilon report file (JSON)
        #[arg(long)]
        pair: PathBuf,
        /// Search spec file (JSON)
        #[arg(long)]
        search: PathBuf,
        #[arg(long)]
        pretty: bool,
    },
    /// Run the seeded invariant suites and print a summary
    Selftest {
        /// Smaller case counts
        #[arg(long)]
        quick: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

/// Largest X-variable index mentioned in the polynomial texts.
fn infer_nvars(polys: &[String]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for text in polys {
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i] == b'X' {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j > i + 1 {
                    let v: usize = text[i + 1..j].parse().ok()?;
                    best = Some(best.map_or(v, |b| b.max(v)));
                }
                i = j;
            } else {
                i += 1;
            }
        }
    }
    best
}

fn parse_system(
    field: &Field,
    index: u32,
    n: Option<usize>,
    polys: &[String],
) -> anyhow::Result<(usize, Vec<MultiPoly>)> {
    let nvars = match n {
        Some(n) => n,
        None => infer_nvars(polys).context("pass -n: no X variables found")?,
    };
    let ctx = PolyContext {
        field: field.clone(),
        index,
        nvars,
    };
    let parsed = polys
        .iter()
        .map(|t| Ok(parse_poly(t, &ctx)?))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok((nvars, parsed))
}

fn emit<T: serde::Serialize>(value: &T) -> anyhow::Result<()> {
    print!("{}", report::render(value)?);
    Ok(())
}

fn run(cmd: Cmd) -> anyhow::Result<ExitCode> {
    match cmd {
        Cmd::Height {
            field,
            expr,
            tuple,
            pretty,
        } => {
            let k = field.field()?;
            let coords = match (expr, tuple) {
                (Some(e), None) => vec![parse_ratfunc(&e, &k, field.index)?],
                (None, Some(t)) => parse_tuple(&t, &k, field.index)?,
                _ => bail!("pass exactly one of --expr or --tuple"),
            };
            let point = AlgPoint::new(coords)?;
            let rep = height_report(&point)?;
            emit(&rep)?;
            if pretty {
                println!();
                println!("height({}) = {}", point.to_text(), rep.height);
                println!("{:<24} {:>6} {:>8} {:>14}", "place", "deg", "min w", "contribution");
                for row in &rep.support {
                    println!(
                        "{:<24} {:>6} {:>8} {:>14}",
                        row.place, row.residue_degree, row.min_valuation, row.contribution
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Minpoly {
            field,
            expr,
            pretty,
        } => {
            let k = field.field()?;
            let x = parse_ratfunc(&expr, &k, field.index)?;
            let rep_poly = min_poly_of_kummer(&x)?;
            let h = height_via_min_poly(&rep_poly);
            let rep = MinPolyReport {
                kind: "minpoly".into(),
                field: FieldDoc::from_field(&k),
                index: field.index,
                input: x.to_text(),
                degree: rep_poly.degree(),
                coeff_degree: rep_poly.t_height(),
                poly: rep_poly.to_text(),
                height: report::fmt_rational(&h),
            };
            emit(&rep)?;
            if pretty {
                println!();
                println!("minimal polynomial of {}: {}", rep.input, rep.poly);
                println!(
                    "degree d = {}, coefficient degree D = {}, height D/(d*e) = {}",
                    rep.degree, rep.coeff_degree, rep.height
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sigma {
            field,
            m,
            expr,
            pretty,
        } => {
            let k = field.field()?;
            let x = parse_ratfunc(&expr, &k, field.index)?;
            let y = sigma_element(&x, m)?;
            let rep = SigmaReport {
                kind: "sigma".into(),
                field: FieldDoc::from_field(&k),
                index: field.index,
                m,
                input: x.to_text(),
                output: y.to_text(),
                height_in: report::fmt_rational(&height_element(&x)?),
                height_out: report::fmt_rational(&height_element(&y)?),
            };
            emit(&rep)?;
            if pretty {
                println!();
                println!("sigma_{}({}) = {}", m, rep.input, rep.output);
                println!("h: {} -> {}", rep.height_in, rep.height_out);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Dichotomy {
            field,
            n,
            poly,
            point,
            point_index,
            m,
            pretty,
        } => {
            let k = field.field()?;
            let (_, polys) = parse_system(&k, field.index, n, std::slice::from_ref(&poly))?;
            let f = polys.into_iter().next().unwrap();
            let pe = point_index.unwrap_or(field.index);
            let coords = parse_tuple(&point, &k, pe)?;
            let p = AlgPoint::new(coords)?;
            let cert = dichotomy_check(&f, &p, m)?;
            let h = height_tuple(&p)?;
            let rep = dichotomy_report(&cert, &k, &h);
            emit(&rep)?;
            if pretty {
                println!();
                match &cert.outcome {
                    CertOutcome::ZeroAtTwist => {
                        println!("ZERO_AT_TWIST: f vanishes at sigma_{}(P)", cert.m)
                    }
                    CertOutcome::LowerBound { bound, zeta } => {
                        println!(
                            "LOWER_BOUND {}: h(P) = {} >= 1/(2dne), twist value {}",
                            report::fmt_rational(bound),
                            rep.point_height,
                            zeta.to_text()
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Epsilon {
            field,
            n,
            polys,
            out,
            emit_search,
            bound,
            indices,
            budget,
            pretty,
        } => {
            let k = field.field()?;
            let (nvars, parsed) = parse_system(&k, field.index, n, &polys)?;
            let pair = epsilon_variety(&parsed)?;
            let rep = epsilon_report(&pair, &k, &parsed);
            let text = report::render(&rep)?;
            print!("{text}");
            if let Some(path) = out {
                std::fs::write(&path, &text)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = emit_search {
                let mut spec = SearchSpec::new(k.clone(), nvars, indices, bound);
                spec.budget = budget;
                let doc = search_spec_doc(&spec, &parsed);
                std::fs::write(&path, report::render(&doc)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if pretty {
                println!();
                println!("C = {}", rep.c);
                if rep.z.is_empty() {
                    println!("Z = (empty)");
                } else {
                    for (i, comp) in rep.z.iter().enumerate() {
                        println!("Z component {}: {}", i + 1, comp.join(" = 0, ") + " = 0");
                    }
                }
                println!("provenance: {} steps", rep.provenance.len());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            pair,
            search,
            pretty,
        } => {
            let pair_text = std::fs::read_to_string(&pair)
                .with_context(|| format!("reading {}", pair.display()))?;
            let pair_doc: EpsilonReport = serde_json::from_str(&pair_text)?;
            let pair = epsilon_from_report(&pair_doc)?;
            let search_text = std::fs::read_to_string(&search)
                .with_context(|| format!("reading {}", search.display()))?;
            let spec_doc: SearchSpecDoc = serde_json::from_str(&search_text)?;
            let (spec, polys) = search_spec_from_doc(&spec_doc)?;
            if polys.is_empty() {
                bail!("the search spec lists no polynomials");
            }
            if spec.nvars != pair.z.nvars() {
                bail!(
                    "ambient mismatch: pair is in dimension {}, search spec in {}",
                    pair.z.nvars(),
                    spec.nvars
                );
            }
            match min_height_off_z(&polys, &pair, &spec) {
                Ok(verdict) => {
                    let rep = verify_report(&verdict, &pair.c);
                    emit(&rep)?;
                    if pretty {
                        println!();
                        match (&rep.min_height, &rep.witness) {
                            (Some(h), Some(w)) => println!(
                                "{}: min height off Z is {} at ({})",
                                rep.verdict,
                                h,
                                w.join(", ")
                            ),
                            _ => println!("{}: no points on the variety off Z in range", rep.verdict),
                        }
                    }
                    Ok(if verdict.pass {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    })
                }
                Err(Error::BudgetExceeded { required, budget }) => {
                    let rep = overflow_report(&pair.c, required, budget);
                    emit(&rep)?;
                    if pretty {
                        println!();
                        println!("BUDGET_EXCEEDED: needs {required} points, budget {budget}");
                    }
                    Ok(ExitCode::from(2))
                }
                Err(other) => Err(other.into()),
            }
        }
        Cmd::Selftest { quick } => {
            let outcomes = heightgap::selftest::run_all(quick)?;
            for o in &outcomes {
                eprintln!(
                    "{} {} ({} cases){}",
                    if o.pass { "PASS" } else { "FAIL" },
                    o.name,
                    o.cases,
                    if o.detail.is_empty() {
                        String::new()
                    } else {
                        format!(": {}", o.detail)
                    }
                );
            }
            let rep = selftest_report(&outcomes);
            emit(&rep)?;
            Ok(if rep.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
