//! Batch driver for independent verification cases.
//!
//! Every caller passes a pure-per-index closure, results come back in index
//! order, and any randomness inside a case must be seeded from the case
//! index — so the output is byte-identical whether cases run on one thread
//! or many, and parallelism only changes wall-clock time.

/// Run `f` over `0..n`, preserving input order.
///
/// With the `parallel` feature (the crate default) and `parallel == true`
/// the cases run on the rayon pool; otherwise sequentially. Without the
/// feature the flag is ignored and everything is sequential.
pub fn run_cases<T, F>(n: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}
