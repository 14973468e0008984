//! Command dispatch.  Every command returns its full output as a string so
//! that the binary, the tests and the acceptance suite share one code path.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde_json::{json, Value};
use z2covers::classify::{
    bounds_report, enumerate_s1, flat_bounds, l1_cases, solve_flat_cell, solve_l1_case,
    sort_solutions, AdmissibleSolution, PluricanonicalReport, S1Family,
};
use z2covers::cover::{validate, CoverSpec};
use z2covers::gf2::{bitstring, Rank};
use z2covers::invariants::{
    geography_bounds, geography_point, hunt_f_closed_form, hunt_scan, invariant_report,
    EulerExactness, GeographyPoint, RatioVector,
};
use z2covers::moduli::{
    deformation_criteria, gen_new_component, gen_unbounded, DeformationReport, UnboundedKind,
};
use z2covers::{cover, Weights};

use crate::cli::{
    Base, ClassifyArgs, Command, CoverCommand, DeformCommand, ExamplesCommand, Format,
    GeographyCommand, Kind, SelftestCommand,
};
use crate::error::{malformed, CliError};
use crate::io::{
    bitstrings, coverspec_json, optional_rational_json, parse_rational, rational_json,
    read_coverspec, ParsedCover,
};
use crate::output::{
    families_csv, families_markdown, family_json, solutions_csv, solutions_json,
    solutions_markdown,
};
use crate::sample::{sample_points, samples_csv};
use crate::selftest::{fourier_selftest, render, RankReport};

/// The `t` values scanned by `geography hunt` when none are given.
pub const DEFAULT_HUNT_T: [&str; 5] = ["1/2", "11/20", "3/5", "13/20", "17/25"];

/// Whether a well-formed input passed its checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Everything checked out.
    Success,
    /// The input was well-formed but failed validation.
    Failed,
}

/// The result of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    /// Standard output.
    pub stdout: String,
    /// Standard error (diagnostics such as the bounds report).
    pub stderr: String,
    /// Pass or validation failure.
    pub status: Status,
}

impl Outcome {
    fn new(stdout: String, ok: bool) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            status: if ok { Status::Success } else { Status::Failed },
        }
    }

    fn json(value: &Value, ok: bool) -> Self {
        let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
        text.push('\n');
        Outcome::new(text, ok)
    }

    /// Process exit code: 0 on success, 1 on validation failure.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Success => 0,
            Status::Failed => 1,
        }
    }
}

/// Runs one command on the current worker pool.
pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Cover(CoverCommand::Check { file }) => Ok(cover_check(&read_coverspec(file)?)),
        Command::Cover(CoverCommand::Invariants { file }) => {
            Ok(cover_invariants(&read_coverspec(file)?))
        }
        Command::Geography(g) => geography(g),
        Command::Classify(args) => classify(args),
        Command::Deform(DeformCommand::Check { file }) => Ok(deform_check(&read_coverspec(file)?)),
        Command::Examples(e) => examples(e),
        Command::Selftest(SelftestCommand::Fourier {
            seed,
            cases,
            max_s,
        }) => {
            if !(2..=z2covers::gf2::MAX_RANK).contains(max_s) {
                return Err(malformed(format!("--max-s must lie in 2..=16, got {max_s}")));
            }
            let reports = fourier_selftest(*seed, *cases, *max_s);
            let ok = reports.iter().all(RankReport::passed);
            Ok(Outcome::new(render(*seed, &reports), ok))
        }
    }
}

fn rank(s: u32) -> Result<Rank, CliError> {
    Rank::new(s).map_err(malformed)
}

fn int_json(v: i128) -> Value {
    i64::try_from(v).map_or_else(|_| json!(v.to_string()), |x| json!(x))
}

fn sign_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Greater => "positive",
        Ordering::Equal => "zero",
        Ordering::Less => "negative",
    }
}

/// `cover check`: the validation report.
pub fn cover_check(input: &ParsedCover) -> Outcome {
    let report = validate(input.raw_weights, &input.branch);
    let rank = input.branch.rank();
    let mut sorted = input.raw_weights;
    sorted.sort_unstable();
    let value = json!({
        "weights": report.weights,
        "weights_normalized": sorted != input.raw_weights,
        "weights_well_formed": report.weights_well_formed,
        "s": rank.get(),
        "D": input.branch.total().to_string(),
        "parity_vector": bitstring(rank, report.parity_vector.0),
        "parity_ok": report.parity_ok,
        "parity_failure": report.parity_failure.map(|c| bitstring(rank, c.0)),
        "flat": report.flat,
        "hurwitz": rational_json(&report.hurwitz),
        "hurwitz_sign": sign_name(report.hurwitz_sign),
        "half_points": match &report.half_points {
            Ok(n) => json!(n.to_string()),
            Err(e) => json!({ "error": e.to_string() }),
        },
        "genericity_assumed": report.genericity_assumed,
        "passes": report.passes(),
    });
    Outcome::json(&value, report.passes())
}

/// Builds the cover, or a failure outcome naming the problem.
fn build_cover(input: &ParsedCover) -> Result<CoverSpec, Outcome> {
    let fail = |msg: String| Outcome::json(&json!({ "passes": false, "error": msg }), false);
    let weights = Weights::new(input.raw_weights).map_err(|e| fail(e.to_string()))?;
    CoverSpec::new(weights, input.branch.clone()).map_err(|e| fail(e.to_string()))
}

/// `cover invariants`: exact `K³`, `χ(O_X)`, `e(X)` and the ratios.
pub fn cover_invariants(input: &ParsedCover) -> Outcome {
    let c = match build_cover(input) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let r = invariant_report(&c);
    let value = json!({
        "weights": c.weights().get(),
        "s": c.rank().get(),
        "D": c.total_degree().to_string(),
        "l": c.eigensheaf_degrees().nonzero_values().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "K3": rational_json(&r.k3),
        "chi": int_json(r.chi),
        "euler": rational_json(&r.euler),
        "exact": r.euler_exactness == EulerExactness::Exact,
        "x": optional_rational_json(&r.x),
        "y": optional_rational_json(&r.y),
        "hurwitz": rational_json(&cover::hurwitz_degree(&c)),
        "half_points": cover::half_point_count(&c).map(|n| n.to_string()).ok(),
        "flat": cover::is_flat(&c),
    });
    Outcome::json(&value, true)
}

fn deformation_json(rank: Rank, d: &DeformationReport) -> Value {
    json!({
        "pairwise_ok": d.pairwise_ok,
        "failures": d.failures.iter().map(|&(g, chi)| [bitstring(rank, g), bitstring(rank, chi)]).collect::<Vec<_>>(),
        "total_degree_ok": d.total_degree_ok,
        "weights_pairwise_coprime": d.weights_pairwise_coprime,
        "genericity_assumed": d.genericity_assumed,
        "stability": d.stability,
        "passes": d.passes(),
    })
}

/// `deform check`: the numeric deformation criteria.
pub fn deform_check(input: &ParsedCover) -> Outcome {
    let c = match build_cover(input) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let report = deformation_criteria(&c);
    let ok = report.passes();
    let mut value = deformation_json(c.rank(), &report);
    value["weights"] = json!(c.weights().get());
    value["s"] = json!(c.rank().get());
    Outcome::json(&value, ok)
}

fn point_json(p: &GeographyPoint) -> Value {
    json!({
        "a": rational_json(&p.a),
        "b": rational_json(&p.b),
        "T": rational_json(&p.t),
        "S_idp": rational_json(&p.s_idp),
        "Q": rational_json(&p.q),
        "Phi": rational_json(&p.phi),
        "x": rational_json(&p.x),
        "y": rational_json(&p.y),
        "SCI": rational_json(&p.sci),
    })
}

fn geography(cmd: &GeographyCommand) -> Result<Outcome, CliError> {
    match cmd {
        GeographyCommand::Sample {
            s,
            count,
            seed,
            denominator,
        } => {
            let rank = rank(*s)?;
            if *denominator == 0 {
                return Err(malformed("--denominator must be positive"));
            }
            let samples = sample_points(rank, *count, *seed, *denominator);
            let ok = samples.iter().all(|p| p.in_bounds);
            Ok(Outcome::new(samples_csv(rank, &samples)?, ok))
        }
        GeographyCommand::Extremes { s } => {
            let rank = rank(*s)?;
            let b = geography_bounds(rank);
            let vertex = geography_point(&RatioVector::vertex(rank, 1));
            let bary = geography_point(&RatioVector::barycenter(rank));
            let value = json!({
                "s": s,
                "vertex": point_json(&vertex),
                "barycenter": point_json(&bary),
                "bounds": {
                    "sci_min": rational_json(&b.sci_min),
                    "sci_max": rational_json(&b.sci_max),
                    "x_max": rational_json(&b.x_max),
                    "x_min_proof": rational_json(&b.x_min_proof),
                    "x_min_stated": rational_json(&b.x_min_stated),
                    "y_min": rational_json(&b.y_min),
                    "y_max": rational_json(&b.y_max),
                },
            });
            let ok = vertex.sci == b.sci_min && vertex.x == b.x_max && vertex.y == b.y_min && bary.y == b.y_max;
            Ok(Outcome::json(&value, ok))
        }
        GeographyCommand::Hunt { s, t } => {
            let rank = rank(*s)?;
            let ts: Vec<String> = if t.is_empty() {
                DEFAULT_HUNT_T.iter().map(|x| x.to_string()).collect()
            } else {
                t.clone()
            };
            let half_order = 1u64 << (rank.get().saturating_sub(1));
            let mut rows = Vec::new();
            let mut ok = true;
            for text in &ts {
                let t = parse_rational(text)?;
                let (f, point) = hunt_scan(rank, &t).map_err(malformed)?;
                let closed = hunt_f_closed_form(half_order, &t);
                ok &= closed == f;
                rows.push(json!({
                    "t": rational_json(&t),
                    "F": rational_json(&f),
                    "F_closed_form": rational_json(&closed),
                    "T": rational_json(&point.t),
                    "x": rational_json(&point.x),
                    "y": rational_json(&point.y),
                    "SCI": rational_json(&point.sci),
                    "in_empty_zone": point.sci > z2covers::Rational::from_integer(0.into()),
                }));
            }
            Ok(Outcome::json(&Value::Array(rows), ok))
        }
    }
}

/// Solutions of rank `s >= 2`, computed in parallel over search cells and
/// sorted canonically.
pub fn classify_solutions(s: u32, m: u32, base: Base) -> Vec<AdmissibleSolution> {
    let mut out: Vec<AdmissibleSolution> = Vec::new();
    if base != Base::L1 {
        let cells = flat_bounds(s, m).cells;
        out.extend(
            cells
                .par_iter()
                .flat_map_iter(solve_flat_cell)
                .collect::<Vec<_>>(),
        );
    }
    if base != Base::General {
        let cases: Vec<_> = l1_cases().into_iter().filter(|c| c.m == m).collect();
        out.extend(
            cases
                .par_iter()
                .flat_map_iter(|c| solve_l1_case(c, s))
                .collect::<Vec<_>>(),
        );
    }
    sort_solutions(&mut out);
    out
}

/// Double-cover families over the selected bases.
pub fn classify_families(m: u32, base: Base) -> Vec<S1Family> {
    enumerate_s1(m)
        .into_iter()
        .filter(|f| match base {
            Base::L1 => f.weights.lcm() == 1,
            Base::General => f.weights.lcm() >= 2,
            Base::All => true,
        })
        .collect()
}

fn classify(args: &ClassifyArgs) -> Result<Outcome, CliError> {
    let rank = rank(args.s)?;
    if args.m == 0 {
        return Err(malformed("--m must be positive"));
    }
    let stdout = if rank.get() == 1 {
        let (kept, excluded): (Vec<_>, Vec<_>) = classify_families(args.m, args.base)
            .into_iter()
            .partition(|f| f.passes_divisibility);
        match args.format {
            Format::Json => {
                let value = json!({
                    "s": 1,
                    "m": args.m,
                    "t_max": args.t_max,
                    "families": kept.iter().map(|f| family_json(f, args.t_max)).collect::<Vec<_>>(),
                    "excluded_by_divisibility": excluded.iter().map(|f| family_json(f, args.t_max)).collect::<Vec<_>>(),
                });
                serde_json::to_string_pretty(&value)? + "\n"
            }
            Format::Md => families_markdown(&kept),
            Format::Csv => families_csv(&kept)?,
        }
    } else {
        let sols = classify_solutions(args.s, args.m, args.base);
        match args.format {
            Format::Json => serde_json::to_string_pretty(&solutions_json(&sols))? + "\n",
            Format::Md => solutions_markdown(&sols),
            Format::Csv => solutions_csv(&sols)?,
        }
    };
    let mut outcome = Outcome::new(stdout, true);
    if args.bounds_report {
        outcome.stderr = bounds_report(args.s, args.m).to_string();
    }
    Ok(outcome)
}

fn pluricanonical_json(r: &PluricanonicalReport) -> Value {
    json!({
        "m": r.m,
        "D": r.d_total.to_string(),
        "M": r.big_m.to_string(),
        "k": r.k.to_string(),
        "p_m": r.plurigenus.to_string(),
        "flat": r.flat,
    })
}

fn examples(cmd: &ExamplesCommand) -> Result<Outcome, CliError> {
    match cmd {
        ExamplesCommand::NewComponent { big_m } => {
            let nc = gen_new_component(*big_m).map_err(malformed)?;
            let rank = nc.cover.rank();
            let l = nc.cover.eigensheaf_degrees();
            let odd: Vec<u32> = (1..rank.order() as u32).filter(|&chi| chi & 1 == 1).collect();
            let l_matches = (1..rank.order() as u32).all(|chi| {
                l.get(chi) == if chi & 1 == 1 { nc.l_odd } else { nc.l_even }
            });
            let ok = nc.deformation.passes() && !nc.flat && l_matches;
            let value = json!({
                "M": big_m,
                "weights": nc.cover.weights().get(),
                "s": rank.get(),
                "coverspec": coverspec_json(&nc.cover),
                "l_odd": nc.l_odd.to_string(),
                "l_even": nc.l_even.to_string(),
                "odd_characters": bitstrings(rank, &odd),
                "l_matches_closed_form": l_matches,
                "flat": nc.flat,
                "deformation": deformation_json(rank, &nc.deformation),
            });
            Ok(Outcome::json(&value, ok))
        }
        ExamplesCommand::Unbounded { kind, s, with_cover } => {
            let kind = match kind {
                Kind::Canonical => UnboundedKind::Canonical,
                Kind::Bicanonical => UnboundedKind::Bicanonical,
            };
            let fam = gen_unbounded(*s, kind).map_err(malformed)?;
            let ok = fam.structural_ok && (fam.cover.is_none() || fam.report.is_some());
            let value = json!({
                "kind": match kind {
                    UnboundedKind::Canonical => "canonical",
                    UnboundedKind::Bicanonical => "bicanonical",
                },
                "m": kind.m(),
                "s": fam.s,
                "weights": [1, 1, fam.l_lcm, fam.l_lcm],
                "L": fam.l_lcm.to_string(),
                "d_on_hyperplane": fam.value,
                "D": fam.d_total.to_string(),
                "l_chi0": fam.l_chi0.to_string(),
                "l_other": fam.l_other.to_string(),
                "M": fam.big_m.to_string(),
                "k": fam.k.to_string(),
                "flat": fam.flat,
                "structural_ok": fam.structural_ok,
                "explicit_check": fam.report.as_ref().map(pluricanonical_json),
                "coverspec": if *with_cover { fam.cover.as_ref().map(coverspec_json) } else { None },
            });
            Ok(Outcome::json(&value, ok))
        }
    }
}
