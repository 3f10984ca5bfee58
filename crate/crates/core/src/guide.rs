// The guide chapters live in book/ as an mdbook; including them here as doc
// comments makes `cargo test --doc` compile and run every code block, so
// the book cannot drift from the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/arrays.md")]
pub mod arrays {}

#[doc = include_str!("../../../book/src/orders.md")]
pub mod orders {}

#[doc = include_str!("../../../book/src/methods.md")]
pub mod methods {}

#[doc = include_str!("../../../book/src/row-sums.md")]
pub mod row_sums {}

#[doc = include_str!("../../../book/src/axioms.md")]
pub mod axioms {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
