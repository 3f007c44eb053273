//! Seeded random streams.
//!
//! Every random quantity in the crate is drawn from a ChaCha8 generator
//! addressed by `(seed, stream)`. Work that is split across workers assigns
//! streams by chunk index, never by worker, so results do not depend on the
//! number of threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Generator for the given seed and stream id.
pub fn stream_rng(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Number of draws handled per stream when work is chunked.
pub const CHUNK: u64 = 1 << 14;

/// Split `total` draws into `(stream, count)` chunks of size [`CHUNK`].
pub fn chunks(total: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::with_capacity((total / CHUNK + 1) as usize);
    let mut done = 0;
    let mut stream = 0;
    while done < total {
        let len = CHUNK.min(total - done);
        out.push((stream, len));
        done += len;
        stream += 1;
    }
    out
}
