//! Benchmarks only; see benches/engines.rs.
