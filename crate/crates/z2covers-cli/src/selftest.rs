//! A seeded self-test of the Fourier identities on random integer
//! functions, with naive reference computations.

use rand::Rng;
use rayon::prelude::*;
use z2covers::gf2::{GroupFunction, Rank};
use z2covers::walsh::{forward, inverse, triple_convolution_at_zero};
use z2covers::{BigInt, Rational};

use crate::sample::sample_rng;

/// Largest rank for the convolution check.
pub const CONVOLUTION_MAX_RANK: u32 = 5;

/// Largest rank for the cubic-moment check.
pub const CUBIC_MAX_RANK: u32 = 6;

/// Outcome of one identity at one rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tally {
    /// Name of the identity.
    pub name: &'static str,
    /// Cases checked.
    pub checked: u64,
    /// Cases that failed.
    pub failed: u64,
}

/// All identities at one rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    /// The rank.
    pub s: u32,
    /// One tally per identity.
    pub tallies: Vec<Tally>,
}

impl RankReport {
    /// True when no case failed.
    pub fn passed(&self) -> bool {
        self.tallies.iter().all(|t| t.failed == 0)
    }
}

fn random_function(rng: &mut impl Rng, rank: Rank, lo: i64, hi: i64) -> GroupFunction {
    GroupFunction::from_fn(rank, |_| rng.gen_range(lo..=hi))
}

fn tally(name: &'static str, results: &[bool]) -> Tally {
    Tally {
        name,
        checked: results.len() as u64,
        failed: results.iter().filter(|ok| !**ok).count() as u64,
    }
}

fn rank_report(s: u32, cases: u64, seed: u64) -> RankReport {
    let rank = Rank::new(s).expect("selftest ranks are valid");
    let n = rank.order() as u32;
    let scale = 1i128 << s;
    let mut inversion = Vec::new();
    let mut first = Vec::new();
    let mut parseval = Vec::new();
    let mut plancherel = Vec::new();
    let mut convolution = Vec::new();
    let mut cubic = Vec::new();
    for case in 0..cases {
        let mut rng = sample_rng(seed, (u64::from(s) << 32) | case);
        let d = random_function(&mut rng, rank, -1000, 1000);
        let g = random_function(&mut rng, rank, -1000, 1000);
        let (dh, gh) = (forward(&d), forward(&g));

        inversion.push(inverse(&dh).as_ref() == Ok(&d));

        let sum: i128 = dh.values().iter().sum();
        first.push(sum == scale * d.get(0) as i128);

        let spectral: i128 = dh.values().iter().zip(gh.values()).map(|(a, b)| a * b).sum();
        let direct: i128 = (0..n).map(|x| d.get(x) as i128 * g.get(x) as i128).sum();
        parseval.push(spectral == scale * direct);

        let spectral: i128 = dh.values().iter().map(|a| a * a).sum();
        let direct: i128 = (0..n).map(|x| (d.get(x) as i128).pow(2)).sum();
        plancherel.push(spectral == scale * direct);

        if s <= CONVOLUTION_MAX_RANK {
            let conv = GroupFunction::from_fn(rank, |z| (0..n).map(|x| d.get(x) * g.get(x ^ z)).sum());
            let ch = forward(&conv);
            convolution.push((0..n).all(|chi| ch.get(chi) == dh.get(chi) * gh.get(chi)));
        }

        if s <= CUBIC_MAX_RANK {
            let b = GroupFunction::from_fn(rank, |x| if x == 0 { 0 } else { rng.gen_range(0..=50) });
            let mut direct = 0i128;
            for x in 0..n {
                for y in 0..n {
                    direct += (b.get(x) * b.get(y) * b.get(x ^ y)) as i128;
                }
            }
            cubic.push(
                triple_convolution_at_zero(&forward(&b))
                    == Rational::from_integer(BigInt::from(direct)),
            );
        }
    }
    let mut tallies = vec![
        tally("inversion", &inversion),
        tally("first-moment", &first),
        tally("parseval", &parseval),
        tally("plancherel", &plancherel),
    ];
    if s <= CONVOLUTION_MAX_RANK {
        tallies.push(tally("convolution", &convolution));
    }
    if s <= CUBIC_MAX_RANK {
        tallies.push(tally("cubic-moment", &cubic));
    }
    RankReport { s, tallies }
}

/// Runs the suite for ranks `2..=max_rank`, `cases` functions per rank.
pub fn fourier_selftest(seed: u64, cases: u64, max_rank: u32) -> Vec<RankReport> {
    (2..=max_rank)
        .into_par_iter()
        .map(|s| rank_report(s, cases, seed))
        .collect()
}

/// A plain-text report, one line per rank and a final verdict.
pub fn render(seed: u64, reports: &[RankReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let parts: Vec<String> = r
            .tallies
            .iter()
            .map(|t| format!("{} {}/{}", t.name, t.checked - t.failed, t.checked))
            .collect();
        out.push_str(&format!("s = {}: {}\n", r.s, parts.join(", ")));
    }
    let verdict = if reports.iter().all(RankReport::passed) {
        "PASS"
    } else {
        "FAIL"
    };
    out.push_str(&format!("fourier selftest (seed {seed}): {verdict}\n"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let a = fourier_selftest(7, 20, 6);
        assert!(a.iter().all(RankReport::passed));
        assert_eq!(render(7, &a), render(7, &fourier_selftest(7, 20, 6)));
    }
}
