//! Compiles the guide's Rust snippets as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/mass-functions.md")]
pub mod mass_functions {}
#[doc = include_str!("../../../book/src/combination.md")]
pub mod combination {}
#[doc = include_str!("../../../book/src/decisions.md")]
pub mod decisions {}
#[doc = include_str!("../../../book/src/fusion.md")]
pub mod fusion {}
#[doc = include_str!("../../../book/src/cycles.md")]
pub mod cycles {}
#[doc = include_str!("../../../book/src/synthetic.md")]
pub mod synthetic {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
