//! Doc-test shim for the guide in `book/`.
//!
//! mdbook renders the chapters but cannot compile their code against this
//! workspace's crates, so each chapter is also included here as module
//! documentation. `cargo test -p flaggcs-book --doc` then runs every code
//! block in the book as a rustdoc doctest, keeping the guide and the
//! library in sync; a failing snippet names its chapter module.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/root-systems.md")]
pub mod root_systems {}

#[doc = include_str!("../../../book/src/structures.md")]
pub mod structures {}

#[doc = include_str!("../../../book/src/integrability.md")]
pub mod integrability {}

#[doc = include_str!("../../../book/src/weyl-action.md")]
pub mod weyl_action {}

#[doc = include_str!("../../../book/src/spinors.md")]
pub mod spinors {}

#[doc = include_str!("../../../book/src/kahler.md")]
pub mod kahler {}

#[doc = include_str!("../../../book/src/cells.md")]
pub mod cells {}

#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
