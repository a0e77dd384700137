//! Benchmarks for the ball engine, the exhaustive search and reconstruction.
//! Run with `cargo bench -p seqrecon-bench`.
