//! Verification suites shared by the `permiso` binary and its test targets.

pub mod verify;
