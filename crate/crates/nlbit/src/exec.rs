//! Deterministic chunked execution.
//!
//! Estimators split their `n` samples into fixed-size chunks; chunk `i`
//! draws every random number it needs from the stream `(seed, i)`. The
//! per-chunk results are integer tallies merged by sum, which is
//! associative and commutative, so the outcome is bit-identical whether
//! chunks run sequentially, on the global rayon pool, or on a pool of any
//! size. The `parallel` feature (default on) selects the rayon path;
//! without it everything runs sequentially through the same chunk layout.

use std::cell::Cell;
use std::ops::Add;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Samples per chunk. Fixed: it is part of the stream layout, so changing
/// it changes every seeded result.
pub const CHUNK_SIZE: u64 = 1 << 14;

/// One unit of work: `len` samples drawn from stream `index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chunk {
    pub index: u64,
    pub len: u64,
}

/// The fixed chunk layout for `n` samples.
pub fn chunks(n: u64) -> Vec<Chunk> {
    let full = n / CHUNK_SIZE;
    let rest = n % CHUNK_SIZE;
    let mut out = Vec::with_capacity((full + (rest > 0) as u64) as usize);
    for index in 0..full {
        out.push(Chunk {
            index,
            len: CHUNK_SIZE,
        });
    }
    if rest > 0 {
        out.push(Chunk {
            index: full,
            len: rest,
        });
    }
    out
}

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

fn sequential_forced() -> bool {
    FORCE_SEQUENTIAL.with(Cell::get)
}

/// Maps every chunk and sums the results, always on the calling thread.
pub fn reduce_chunks_seq<T, F>(n: u64, f: F) -> T
where
    T: Default + Add<Output = T>,
    F: Fn(Chunk) -> T,
{
    chunks(n).into_iter().map(f).fold(T::default(), T::add)
}

/// Maps every chunk and sums the results, in parallel when the `parallel`
/// feature is enabled and the caller has not forced sequential execution.
#[cfg(feature = "parallel")]
pub fn reduce_chunks<T, F>(n: u64, f: F) -> T
where
    T: Default + Add<Output = T> + Send,
    F: Fn(Chunk) -> T + Sync + Send,
{
    if sequential_forced() {
        reduce_chunks_seq(n, f)
    } else {
        chunks(n)
            .into_par_iter()
            .map(f)
            .reduce(T::default, T::add)
    }
}

#[cfg(not(feature = "parallel"))]
pub fn reduce_chunks<T, F>(n: u64, f: F) -> T
where
    T: Default + Add<Output = T> + Send,
    F: Fn(Chunk) -> T + Sync + Send,
{
    reduce_chunks_seq(n, f)
}

/// Runs `f` under an explicit worker policy:
///
/// - `workers == 0`: the ambient thread pool (all available cores);
/// - `workers == 1`: strictly sequential, no pool;
/// - `workers >= 2`: a dedicated pool of that many threads.
///
/// The policy changes scheduling only; numerical results are identical
/// for every value. Without the `parallel` feature every value runs
/// sequentially.
pub fn with_workers<R, F>(workers: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match workers {
        1 => {
            struct Reset(bool);
            impl Drop for Reset {
                fn drop(&mut self) {
                    FORCE_SEQUENTIAL.with(|c| c.set(self.0));
                }
            }
            let _reset = Reset(FORCE_SEQUENTIAL.with(|c| c.replace(true)));
            f()
        }
        #[cfg(feature = "parallel")]
        k if k >= 2 => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool construction")
            .install(f),
        _ => f(),
    }
}
