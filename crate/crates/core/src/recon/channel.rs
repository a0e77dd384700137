use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ReadSet, ReconError};
use crate::ball::count_ball;
use crate::word::Word;

/// Deletes a uniformly random set of `t` positions from `x`.
pub fn deletion_channel<R: Rng + ?Sized>(x: &Word, t: usize, rng: &mut R) -> Result<Word, ReconError> {
    if t > x.len() {
        return Err(ReconError::RadiusOutOfRange { t, len: x.len() });
    }
    let mut positions: Vec<usize> = sample(rng, x.len(), t).into_iter().map(|i| i + 1).collect();
    positions.sort_unstable();
    Ok(x.delete_positions(&positions))
}

/// [`deletion_channel`] driven by a ChaCha8 stream seeded with `seed`.
pub fn deletion_channel_seeded(x: &Word, t: usize, seed: u64) -> Result<Word, ReconError> {
    deletion_channel(x, t, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Draws channel outputs until `m` distinct reads have been seen, giving up
/// after `max_draws` draws (default `64 m`). Reads are kept in first-seen
/// order.
pub fn collect_distinct_reads(
    x: &Word,
    t: usize,
    m: usize,
    seed: u64,
    max_draws: Option<usize>,
) -> Result<ReadSet, ReconError> {
    let available = count_ball(x, t).map_err(|_| ReconError::RadiusOutOfRange { t, len: x.len() })?;
    if available < m as u64 {
        return Err(ReconError::InsufficientDiversity { available, requested: m });
    }
    let max_draws = max_draws.unwrap_or(64 * m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(m);
    let mut reads = Vec::with_capacity(m);
    let mut draws = 0;
    while reads.len() < m {
        if draws == max_draws {
            return Err(ReconError::DrawBudgetExhausted {
                draws,
                found: reads.len(),
                requested: m,
            });
        }
        draws += 1;
        let y = deletion_channel(x, t, &mut rng)?;
        if seen.insert(y) {
            reads.push(y);
        }
    }
    ReadSet::new(x.len(), t, reads)
}
