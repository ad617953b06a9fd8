//! Benchmark-only crate; see benches/sim.rs.
