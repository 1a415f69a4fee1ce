//! Library half of the `origami` binary: deterministic SVG rendering and
//! the scene builders behind the named figures. Argument handling lives in
//! the binary; everything here is callable from integration tests.

pub mod render;
pub mod scenes;
