//! Seeded, thread-count-independent sampling of the degree simplex.
//!
//! Sample `i` draws from its own ChaCha stream (`seed`, stream `i`), so the
//! points do not depend on how the indices are split across workers; the
//! parallel map collects results in index order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use z2covers::gf2::Rank;
use z2covers::invariants::{geography_bounds, geography_point, GeographyPoint, RatioVector};

use crate::error::CliError;
use crate::io::{decimal, rational_string};

/// One sampled point with its geography.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    /// Index of the sample in the run.
    pub index: u64,
    /// The ratio vector.
    pub r: RatioVector,
    /// Its geography.
    pub point: GeographyPoint,
    /// Whether the proven bounds hold at this point.
    pub in_bounds: bool,
}

/// The random generator of sample `index`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A random rational point of the simplex: each nonzero element joins the
/// support with probability 1/2 (at least one does) and receives an
/// integer weight in `1..=denominator`; the weights are then normalised.
pub fn sample_vector(rank: Rank, seed: u64, index: u64, denominator: u32) -> RatioVector {
    let mut rng = sample_rng(seed, index);
    let n = rank.order();
    let mut d = vec![0i64; n];
    loop {
        for v in d.iter_mut().skip(1) {
            *v = if rng.gen_bool(0.5) {
                rng.gen_range(1..=denominator.max(1) as i64)
            } else {
                0
            };
        }
        if d.iter().any(|&v| v > 0) {
            break;
        }
    }
    RatioVector::from_degrees(rank, &d).expect("positive total")
}

/// Draws `count` samples in parallel and evaluates them exactly.
pub fn sample_points(rank: Rank, count: u64, seed: u64, denominator: u32) -> Vec<Sample> {
    let bounds = geography_bounds(rank);
    (0..count)
        .into_par_iter()
        .map(|index| {
            let r = sample_vector(rank, seed, index, denominator);
            let point = geography_point(&r);
            let in_bounds = point.sci >= bounds.sci_min
                && point.sci <= bounds.sci_max
                && point.x <= bounds.x_max
                && point.y >= bounds.y_min
                && point.y <= bounds.y_max;
            Sample {
                index,
                r,
                point,
                in_bounds,
            }
        })
        .collect()
}

/// CSV with columns `index,s,r,x,y,sci,x_approx,y_approx,sci_approx,in_bounds`.
///
/// `r` lists the ratios of the nonzero elements in integer order of their
/// encodings, as `p/q` strings separated by `;`.
pub fn samples_csv(rank: Rank, samples: &[Sample]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "index",
        "s",
        "r",
        "x",
        "y",
        "sci",
        "x_approx",
        "y_approx",
        "sci_approx",
        "in_bounds",
    ])?;
    for s in samples {
        let r: Vec<String> = s.r.values()[1..].iter().map(rational_string).collect();
        w.write_record([
            s.index.to_string(),
            rank.get().to_string(),
            r.join(";"),
            rational_string(&s.point.x),
            rational_string(&s.point.y),
            rational_string(&s.point.sci),
            decimal(&s.point.x),
            decimal(&s.point.y),
            decimal(&s.point.sci),
            s.in_bounds.to_string(),
        ])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Malformed(format!("CSV buffer: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}
