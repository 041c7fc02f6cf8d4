//! Counter-based random streams.
//!
//! Every consumer addresses its randomness by `(seed, purpose, i, j)` and a
//! sample index, so results do not depend on how work is split across
//! threads. A stream is a ChaCha8 keystream; `sample k` of a stream drawing
//! `d` uniforms per sample starts at word `2·d·k` (one `f64` uses one `u64`).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Purpose tags, kept in the top byte of the stream id.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Purpose {
    Volume = 0,
    Lojasiewicz = 1,
    Chebyshev = 2,
}

const INDEX_BITS: u32 = 28;

/// Stream id for cell `(i, j)` of a purpose.
pub fn stream_id(purpose: Purpose, i: usize, j: usize) -> u64 {
    assert!(i < 1 << INDEX_BITS && j < 1 << INDEX_BITS, "cell index too large");
    ((purpose as u64) << 56) | ((i as u64) << INDEX_BITS) | j as u64
}

/// Generator positioned at `sample` of the given stream, for samples that
/// each consume `draws_per_sample` uniforms.
pub fn stream_at(seed: u64, stream: u64, sample: u64, draws_per_sample: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos(2 * sample as u128 * draws_per_sample as u128);
    rng
}

/// Fills `x` with uniforms on `(−r, r)`.
#[inline]
pub fn fill_box(rng: &mut ChaCha8Rng, r: f64, x: &mut [f64]) {
    for xi in x.iter_mut() {
        *xi = r * (2.0 * rng.random::<f64>() - 1.0);
    }
}

/// Samples are processed in chunks of this size; chunk boundaries are fixed
/// so reductions are schedule independent.
pub const CHUNK: u64 = 4096;

/// Splits `0..total` into fixed chunks.
pub fn chunks(total: u64) -> impl Iterator<Item = (u64, u64)> + Clone {
    (0..total.div_ceil(CHUNK)).map(move |c| (c * CHUNK, ((c + 1) * CHUNK).min(total)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positioning_matches_sequential_draws() {
        let mut seq = stream_at(42, stream_id(Purpose::Volume, 3, 5), 0, 3);
        let mut all = vec![0.0; 3 * 10];
        fill_box(&mut seq, 1.0, &mut all);
        let mut jumped = stream_at(42, stream_id(Purpose::Volume, 3, 5), 7, 3);
        let mut x = [0.0; 3];
        fill_box(&mut jumped, 1.0, &mut x);
        assert_eq!(&x[..], &all[21..24]);
    }

    #[test]
    fn streams_differ() {
        let mut a = stream_at(1, stream_id(Purpose::Volume, 0, 0), 0, 1);
        let mut b = stream_at(1, stream_id(Purpose::Volume, 0, 1), 0, 1);
        assert_ne!(a.random::<u64>(), b.random::<u64>());
    }

    #[test]
    fn chunking_covers_range() {
        let c: Vec<_> = chunks(10_000).collect();
        assert_eq!(c.first(), Some(&(0, 4096)));
        assert_eq!(c.last(), Some(&(8192, 10_000)));
        assert_eq!(chunks(0).count(), 0);
    }
}
