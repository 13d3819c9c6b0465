//! Compensated summation and deterministic chunked reductions.
//!
//! Every long sum in the crate goes through [`NeumaierSum`]; sums beyond
//! a million terms additionally split into fixed chunks whose partials
//! are combined in index order, so the result does not depend on the
//! number of worker threads.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::threads;

/// Kahan–Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    s: f64,
    c: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    /// Merge another accumulator (used for ordered chunk combination).
    #[inline]
    pub fn merge(&mut self, other: NeumaierSum) {
        self.add(other.s);
        self.c += other.c;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// Map chunk indices `0..chunks` through `work` on up to
/// [`threads::max_threads`] workers and return the results in index
/// order. Determinism: each chunk's result depends only on its index.
pub fn indexed_chunks<R, F>(chunks: usize, work: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync,
{
    let workers = threads::max_threads().min(chunks.max(1));
    if workers <= 1 || chunks <= 1 {
        return (0..chunks).map(&work).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..chunks).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= chunks {
                    break;
                }
                let r = work(i);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("chunk result missing"))
        .collect()
}

/// Combine per-chunk compensated partials in index order.
pub fn combine(partials: Vec<NeumaierSum>) -> NeumaierSum {
    let mut total = NeumaierSum::new();
    for p in partials {
        total.merge(p);
    }
    total
}
