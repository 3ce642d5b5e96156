//! Holds the acceptance suite for `jsp-sim`; see `tests/acceptance.rs`.
//!
//! The suite is a separate package so that `cargo test --workspace` runs it
//! after every unit and integration test of the core crate, even when one
//! of its criteria fails.
