//! Rendering classification results as JSON, CSV and Markdown tables.
//!
//! The Markdown rows follow the layout `| m | (a0,a1,a2,a3) | (d_g) | k |
//! p_m |`, with the branch degrees listed over the nonzero elements in
//! integer order of their encodings (for `s = 2`: `(d10, d01, d11)`).  A
//! trailing `note` column appears only when some row carries a note.
//! [`parse_solutions_markdown`] reads such a table back.

use serde_json::{json, Value};
use z2covers::classify::{sort_solutions, AdmissibleSolution, S1Family, SolutionNote};
use z2covers::cover::{BranchData, CoverSpec};
use z2covers::gf2::{GroupFunction, Rank};
use z2covers::Weights;

use crate::error::{malformed, CliError};
use crate::io::{bitstrings, coverspec_json};

/// Short tag of a note, as used in tables.
pub fn note_tag(note: SolutionNote) -> &'static str {
    match note {
        SolutionNote::DeferredCase => "deferred",
        SolutionNote::UnlistedOrbit => "unlisted-orbit",
    }
}

fn parse_note(tag: &str) -> Result<Option<SolutionNote>, CliError> {
    match tag {
        "" => Ok(None),
        "deferred" => Ok(Some(SolutionNote::DeferredCase)),
        "unlisted-orbit" => Ok(Some(SolutionNote::UnlistedOrbit)),
        other => Err(malformed(format!("unknown note {other:?}"))),
    }
}

/// `(a,b,c)` for any list of integers.
pub fn tuple<T: ToString>(items: &[T]) -> String {
    let inner: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("({})", inner.join(","))
}

fn parse_tuple<T: std::str::FromStr>(cell: &str) -> Result<Vec<T>, CliError> {
    let inner = cell
        .trim()
        .strip_prefix('(')
        .and_then(|c| c.strip_suffix(')'))
        .ok_or_else(|| malformed(format!("expected a parenthesised tuple, found {cell:?}")))?;
    inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<T>()
                .map_err(|_| malformed(format!("bad tuple entry {x:?} in {cell:?}")))
        })
        .collect()
}

/// The JSON object of one solution.
pub fn solution_json(sol: &AdmissibleSolution) -> Value {
    let cover = sol.cover();
    json!({
        "s": sol.rank.get(),
        "m": sol.m,
        "weights": sol.weights.get(),
        "k": sol.k.to_string(),
        "D": sol.d_total().to_string(),
        "d": sol.d.nonzero_values(),
        "l": sol.l.nonzero_values().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "p_m": sol.plurigenus.to_string(),
        "flat": sol.flat,
        "exact_orbit": sol.exact_orbit,
        "exceptional_characters": bitstrings(sol.rank, &sol.exceptional_characters()),
        "note": sol.note.map(note_tag),
        "note_text": sol.note.map(SolutionNote::describe),
        "coverspec": coverspec_json(&cover),
    })
}

/// A JSON array of solutions.
pub fn solutions_json(sols: &[AdmissibleSolution]) -> Value {
    Value::Array(sols.iter().map(solution_json).collect())
}

/// The Markdown table of solutions.
pub fn solutions_markdown(sols: &[AdmissibleSolution]) -> String {
    let with_notes = sols.iter().any(|s| s.note.is_some());
    let mut out = String::new();
    if with_notes {
        out.push_str("| m | (a0,a1,a2,a3) | (d_g) | k | p_m | note |\n");
        out.push_str("|---|---|---|---|---|---|\n");
    } else {
        out.push_str("| m | (a0,a1,a2,a3) | (d_g) | k | p_m |\n");
        out.push_str("|---|---|---|---|---|\n");
    }
    for sol in sols {
        let mut row = format!(
            "| {} | {} | {} | {} | {} |",
            sol.m,
            tuple(&sol.weights.get()),
            tuple(sol.d.nonzero_values()),
            sol.k,
            sol.plurigenus
        );
        if with_notes {
            row.push_str(&format!(" {} |", sol.note.map(note_tag).unwrap_or("")));
        }
        row.push('\n');
        out.push_str(&row);
    }
    out
}

/// Reads a table produced by [`solutions_markdown`] back into solutions.
///
/// Each row is re-verified: the cover must pass the pluricanonical
/// criterion with the stated `m`, and the stated `k` and `p_m` must match.
pub fn parse_solutions_markdown(text: &str) -> Result<Vec<AdmissibleSolution>, CliError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if !line.starts_with('|') || line.starts_with("|---") || line.starts_with("| m ") {
            continue;
        }
        let cells: Vec<&str> = line
            .trim_matches('|')
            .split('|')
            .map(str::trim)
            .collect();
        if cells.len() != 5 && cells.len() != 6 {
            return Err(malformed(format!("expected 5 or 6 cells in {line:?}")));
        }
        let m: u32 = cells[0]
            .parse()
            .map_err(|_| malformed(format!("bad m {:?}", cells[0])))?;
        let weights: Vec<u64> = parse_tuple(cells[1])?;
        let weights: [u64; 4] = weights
            .try_into()
            .map_err(|_| malformed(format!("expected four weights in {:?}", cells[1])))?;
        let weights = Weights::new(weights).map_err(malformed)?;
        let d: Vec<i64> = parse_tuple(cells[2])?;
        let s = (d.len() + 1).trailing_zeros();
        if (1usize << s) != d.len() + 1 {
            return Err(malformed(format!("{} degrees is not 2^s - 1", d.len())));
        }
        let rank = Rank::new(s).map_err(malformed)?;
        let branch = BranchData::new(GroupFunction::from_nonzero(rank, &d).map_err(malformed)?)
            .map_err(malformed)?;
        let cover = CoverSpec::new(weights, branch).map_err(malformed)?;
        let mut sol = AdmissibleSolution::from_cover(&cover, m)
            .ok_or_else(|| malformed(format!("row {line:?} is not {m}-canonical")))?;
        if sol.k.to_string() != cells[3] || sol.plurigenus.to_string() != cells[4] {
            return Err(malformed(format!("k or p_m disagree with the criterion in {line:?}")));
        }
        sol.note = parse_note(cells.get(5).copied().unwrap_or(""))?;
        out.push(sol);
    }
    sort_solutions(&mut out);
    Ok(out)
}

/// CSV with columns `s,m,weights,d,k,p_m,flat,exact_orbit,note`.
pub fn solutions_csv(sols: &[AdmissibleSolution]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["s", "m", "weights", "d", "k", "p_m", "flat", "exact_orbit", "note"])?;
    for sol in sols {
        w.write_record([
            sol.rank.get().to_string(),
            sol.m.to_string(),
            tuple(&sol.weights.get()),
            tuple(sol.d.nonzero_values()),
            sol.k.to_string(),
            sol.plurigenus.to_string(),
            sol.flat.to_string(),
            sol.exact_orbit.to_string(),
            sol.note.map(note_tag).unwrap_or("").to_string(),
        ])?;
    }
    finish_csv(w)
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w
        .into_inner()
        .map_err(|e| malformed(format!("CSV buffer: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

/// `a·t + b` written compactly (`t-1`, `24t`, `2t-3`).
pub fn linear_in_t(a: i128, b: i128) -> String {
    let lead = match a {
        0 => String::new(),
        1 => String::from("t"),
        -1 => String::from("-t"),
        _ => format!("{a}t"),
    };
    match (lead.is_empty(), b) {
        (true, _) => b.to_string(),
        (false, 0) => lead,
        (false, b) if b > 0 => format!("{lead}+{b}"),
        (false, b) => format!("{lead}{b}"),
    }
}

/// The admissible range of `t`: `t >= a` or `a <= t <= b`.
pub fn t_range(f: &S1Family) -> String {
    match f.t_max {
        None => format!("t >= {}", f.t_min),
        Some(hi) if hi == f.t_min => format!("t = {hi}"),
        Some(hi) => format!("{} <= t <= {hi}", f.t_min),
    }
}

/// `d = 2Lt`.
pub fn degree_formula(f: &S1Family) -> String {
    linear_in_t(f.degree_coefficient() as i128, 0)
}

/// `k = mt - mW/L`.
pub fn k_formula(f: &S1Family) -> String {
    linear_in_t(f.m as i128, -(f.j as i128))
}

/// `p_m = h0(O(kL))`.
pub fn plurigenus_formula(f: &S1Family) -> String {
    let l = f.weights.lcm() as i128;
    format!("h0(O({}))", linear_in_t(l * f.m as i128, -l * f.j as i128))
}

/// The JSON object of a double-cover family with its instances for
/// `t <= t_max`.
pub fn family_json(f: &S1Family, t_max: u64) -> Value {
    let hi = f.t_max.unwrap_or(t_max).min(t_max);
    let instances: Vec<Value> = (f.t_min..=hi)
        .filter_map(|t| f.instantiate(t).map(|sol| (t, sol)))
        .map(|(t, sol)| {
            json!({
                "t": t,
                "d": sol.d_total().to_string(),
                "k": sol.k.to_string(),
                "p_m": sol.plurigenus.to_string(),
            })
        })
        .collect();
    json!({
        "m": f.m,
        "weights": f.weights.get(),
        "degree": degree_formula(f),
        "t_min": f.t_min,
        "t_max": f.t_max,
        "t_range": t_range(f),
        "k": k_formula(f),
        "p_m": plurigenus_formula(f),
        "passes_divisibility": f.passes_divisibility,
        "instances": instances,
    })
}

/// Markdown rows `| m | (a0,a1,a2,a3) | d | k | p_m |` for double-cover
/// families.
pub fn families_markdown(families: &[S1Family]) -> String {
    let mut out = String::from("| m | (a0,a1,a2,a3) | d | k | p_m |\n|---|---|---|---|---|\n");
    for f in families {
        out.push_str(&format!(
            "| {} | {} | {}, {} | {} | {} |\n",
            f.m,
            tuple(&f.weights.get()),
            degree_formula(f),
            t_range(f),
            k_formula(f),
            plurigenus_formula(f)
        ));
    }
    out
}

/// CSV with columns `m,weights,degree,t_min,t_max,k,p_m,passes_divisibility`.
pub fn families_csv(families: &[S1Family]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["m", "weights", "degree", "t_min", "t_max", "k", "p_m", "passes_divisibility"])?;
    for f in families {
        w.write_record([
            f.m.to_string(),
            tuple(&f.weights.get()),
            degree_formula(f),
            f.t_min.to_string(),
            f.t_max.map(|t| t.to_string()).unwrap_or_default(),
            k_formula(f),
            plurigenus_formula(f),
            f.passes_divisibility.to_string(),
        ])?;
    }
    finish_csv(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use z2covers::classify::{enumerate_flat, enumerate_l1, enumerate_s1};

    #[test]
    fn markdown_row_matches_the_table_layout() {
        let sols = enumerate_flat(2, 3);
        let md = solutions_markdown(&sols);
        assert!(md.contains("| 3 | (1,1,3,3) | (6,6,6) | 1 | 6 |"), "{md}");
    }

    #[test]
    fn markdown_round_trips() {
        let mut sols = enumerate_flat(2, 1);
        sols.extend(enumerate_l1(2, 1));
        sols.extend(enumerate_l1(4, 2));
        sort_solutions(&mut sols);
        let parsed = parse_solutions_markdown(&solutions_markdown(&sols)).unwrap();
        assert_eq!(parsed, sols);
    }

    #[test]
    fn corrupted_rows_are_rejected() {
        let bad = "| m | (a0,a1,a2,a3) | (d_g) | k | p_m |\n|---|---|---|---|---|\n| 3 | (1,1,3,3) | (6,6,6) | 2 | 6 |\n";
        assert!(parse_solutions_markdown(bad).is_err());
        let not_canonical = "| 3 | (1,1,3,3) | (2,2,2) | 1 | 6 |\n";
        assert!(parse_solutions_markdown(not_canonical).is_err());
    }

    #[test]
    fn family_formulas() {
        let fam = enumerate_s1(1)
            .into_iter()
            .find(|f| f.weights.get() == [1, 1, 4, 6])
            .unwrap();
        assert_eq!(degree_formula(&fam), "24t");
        assert_eq!(t_range(&fam), "t >= 2");
        assert_eq!(k_formula(&fam), "t-1");
        assert_eq!(plurigenus_formula(&fam), "h0(O(12t-12))");
        assert_eq!(linear_in_t(2, -3), "2t-3");
        assert_eq!(linear_in_t(0, 5), "5");
    }
}
