//! Worker-thread cap shared by the parallel summation kernels.
//!
//! Results are bit-identical for every thread count: work is split into
//! fixed-size chunks whose partial sums are combined in index order, so
//! the cap only changes wall-clock time.

use std::sync::atomic::{AtomicUsize, Ordering};

static MAX_THREADS: AtomicUsize = AtomicUsize::new(0);

/// Cap the number of worker threads (0 restores the hardware default).
pub fn set_max_threads(n: usize) {
    MAX_THREADS.store(n, Ordering::Relaxed);
}

/// Current worker-thread budget.
pub fn max_threads() -> usize {
    let cap = MAX_THREADS.load(Ordering::Relaxed);
    let hw = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    if cap == 0 {
        hw
    } else {
        cap.min(hw).max(1)
    }
}
