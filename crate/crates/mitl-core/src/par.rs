//! Chunked execution over sample batches.
//!
//! All data parallelism in the crate goes through these two helpers. Chunk
//! boundaries are fixed by the caller, chunks write disjoint output regions,
//! and cross-chunk reductions happen in chunk order at the call site, so the
//! `parallel` feature and the sequential fallback produce identical bits for
//! any worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Samples per task in batched model code. Fixed so that chunk-local
/// accumulation order never depends on the thread count.
pub(crate) const SAMPLE_CHUNK: usize = 8;

/// Run `f(chunk_index, chunk)` over consecutive chunks of `out`.
pub(crate) fn for_each_chunk_mut<T, F>(out: &mut [T], chunk_len: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync,
{
    debug_assert!(chunk_len > 0);
    #[cfg(feature = "parallel")]
    {
        out.par_chunks_mut(chunk_len)
            .enumerate()
            .for_each(|(i, c)| f(i, c));
    }
    #[cfg(not(feature = "parallel"))]
    {
        for (i, c) in out.chunks_mut(chunk_len).enumerate() {
            f(i, c);
        }
    }
}

/// Map `f` over the chunked index ranges of `0..n`, collecting results in
/// chunk order.
pub(crate) fn map_chunks<R, F>(n: usize, chunk_len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(std::ops::Range<usize>) -> R + Sync,
{
    debug_assert!(chunk_len > 0);
    let bounds: Vec<std::ops::Range<usize>> = (0..n)
        .step_by(chunk_len)
        .map(|s| s..(s + chunk_len).min(n))
        .collect();
    #[cfg(feature = "parallel")]
    {
        bounds.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        bounds.into_iter().map(f).collect()
    }
}
