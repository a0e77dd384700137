//! Seeded reconstruction experiments.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{collect_distinct_reads, reconstruct, ReconError};
use crate::ball::{count_ball, intersection_size};
use crate::codes::{vt_encode, vt_message_bits, BruteDecoder, Codebook, Decoder, VtDecoder};
use crate::word::{mask, Word};

/// Largest codebook length whose read-count hypothesis is certified pairwise.
pub const MAX_CERTIFY_LEN: usize = 10;

/// Attempts at drawing a codeword with at least `m` distinct reads before a
/// trial is declared infeasible.
const MAX_RESAMPLE: usize = 1000;

/// The code under test together with its decoder.
#[derive(Debug, Clone)]
pub enum TrialCode {
    Vt(VtDecoder),
    Explicit(BruteDecoder),
}

impl TrialCode {
    pub fn n(&self) -> usize {
        self.decoder().code_length()
    }

    pub fn decoder(&self) -> &dyn Decoder {
        match self {
            TrialCode::Vt(d) => d,
            TrialCode::Explicit(d) => d,
        }
    }

    /// A uniformly random codeword (uniform message for VT).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Word {
        match self {
            TrialCode::Vt(d) => {
                let index = rng.gen::<u64>() & mask(vt_message_bits(d.n));
                vt_encode(d.n, d.a, index).expect("index within message range")
            }
            TrialCode::Explicit(d) => {
                let words = d.codebook.codewords();
                words[rng.gen_range(0..words.len())]
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialConfig {
    /// deletions per read
    pub t: usize,
    /// distinct reads per trial
    pub m: usize,
    pub trials: usize,
    /// trial `i` runs with seed `seed + i`
    pub seed: u64,
    pub max_draws: Option<usize>,
    /// record wall-clock time of `reconstruct`; off gives reproducible output
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub codeword: Option<Word>,
    pub reads: Vec<Word>,
    pub recovered: Option<Word>,
    pub ok: bool,
    pub micros: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub recovered: usize,
    pub recovery_rate: f64,
    pub p50_micros: f64,
    pub p90_micros: f64,
    pub p99_micros: f64,
    pub max_micros: f64,
}

/// Runs one trial on a fixed codeword: collect `m` distinct reads, then
/// reconstruct.
pub fn run_on_codeword(code: &TrialCode, x: Word, cfg: &TrialConfig, seed: u64) -> TrialRecord {
    let mut record = TrialRecord {
        seed,
        codeword: Some(x),
        reads: Vec::new(),
        recovered: None,
        ok: false,
        micros: 0.0,
        error: None,
    };
    let rs = match collect_distinct_reads(&x, cfg.t, cfg.m, seed, cfg.max_draws) {
        Ok(rs) => rs,
        Err(e) => {
            record.error = Some(e.to_string());
            return record;
        }
    };
    let start = Instant::now();
    let out = reconstruct(&rs, code.decoder());
    if cfg.timing {
        record.micros = start.elapsed().as_secs_f64() * 1e6;
    }
    record.reads = rs.reads().to_vec();
    match out {
        Ok(w) => {
            record.recovered = Some(w);
            record.ok = w == x;
        }
        Err(e) => record.error = Some(e.to_string()),
    }
    record
}

fn run_one(code: &TrialCode, cfg: &TrialConfig, seed: u64) -> TrialRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let feasible = (0..MAX_RESAMPLE)
        .map(|_| code.sample(&mut rng))
        .find(|x| count_ball(x, cfg.t).is_ok_and(|c| c >= cfg.m as u64));
    match feasible {
        Some(x) => TrialRecord {
            seed,
            ..run_on_codeword(code, x, cfg, rng.gen())
        },
        None => TrialRecord {
            seed,
            codeword: None,
            reads: Vec::new(),
            recovered: None,
            ok: false,
            micros: 0.0,
            error: Some(format!(
                "no codeword with at least {} distinct reads in {MAX_RESAMPLE} draws",
                cfg.m
            )),
        },
    }
}

/// Runs `cfg.trials` independent trials on the current rayon pool. Each
/// trial resamples its codeword until the deletion ball holds `cfg.m`
/// distinct reads. Records come back in trial order.
pub fn run_trials(code: &TrialCode, cfg: &TrialConfig) -> Vec<TrialRecord> {
    (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| run_one(code, cfg, cfg.seed.wrapping_add(i)))
        .collect()
}

fn percentile(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let rank = ((p * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    sorted[rank - 1]
}

/// Recovery rate and nearest-rank timing percentiles.
pub fn summarize(records: &[TrialRecord]) -> TrialSummary {
    let recovered = records.iter().filter(|r| r.ok).count();
    let mut times: Vec<f64> = records.iter().map(|r| r.micros).collect();
    times.sort_by(f64::total_cmp);
    TrialSummary {
        trials: records.len(),
        recovered,
        recovery_rate: if records.is_empty() {
            0.0
        } else {
            recovered as f64 / records.len() as f64
        },
        p50_micros: percentile(&times, 0.5),
        p90_micros: percentile(&times, 0.9),
        p99_micros: percentile(&times, 0.99),
        max_micros: times.last().copied().unwrap_or(0.0),
    }
}

/// The largest number of length-`(n - t)` reads shared by two distinct
/// codewords. Reconstruction from `m` distinct reads is guaranteed exactly
/// when this is below `m`. Only for `n <= MAX_CERTIFY_LEN`.
pub fn certify_read_count(cb: &Codebook, t: usize) -> Result<u64, ReconError> {
    if cb.n > MAX_CERTIFY_LEN {
        return Err(ReconError::CertificationTooLarge { n: cb.n, max: MAX_CERTIFY_LEN });
    }
    if t > cb.n {
        return Err(ReconError::RadiusOutOfRange { t, len: cb.n });
    }
    let words = cb.codewords();
    let shared = words
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            words[i + 1..]
                .iter()
                .map(|y| intersection_size(x, y, t, t).map(|r| r.size).unwrap_or(0))
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    Ok(shared)
}
