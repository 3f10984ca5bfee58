//! Aggregation of incomplete paired comparisons into rankings.
//!
//! `rankagg` turns an array of incomplete, possibly weighted paired
//! comparisons — one sparse matrix of outcomes per individual — into
//! optimal weak or linear orders, and audits the result against two
//! consistency axioms.
//!
//! The pieces:
//!
//! * [`comparisons`] — the data model: validated arrays, entrywise
//!   aggregates, per-alternative outcome records, Copeland index vectors.
//! * [`orders`] — weak orders as ordered partitions, with canonical
//!   exhaustive enumeration of the weak and linear domains.
//! * [`structfun`] — the structure functions the assignment-form
//!   objectives are built from, and their weak-order-safe revisions.
//! * [`objectives`] — the method catalog (assignment objectives, deviation
//!   sums, net back scores, win/loss balances, least squares, score-based
//!   assignment) and the exact exhaustive optimizer.
//! * [`grs`] — the generalized row sum method: an exact rational solve of
//!   a damped linear system, plus the continuous least-squares relaxation
//!   it is linked to.
//! * [`axioms`] — Self-Consistency and Self-Consistent Monotonicity:
//!   premise detection by matchings with mandatory saturation, order and
//!   operator audits, sign-pattern indifference and strictness checks.
//! * [`fixtures`], [`io`], [`suites`] — named test arrays, the JSON file
//!   formats, and the theorem verification suites.
//!
//! Everything on the exact path is arbitrary-precision rational: objective
//! values compare exactly, so "the set of optimal orders" is a well-defined
//! finite object, reproduced in a documented canonical sequence.
//!
//! ```
//! use rankagg::comparisons::ArrayBuilder;
//! use rankagg::objectives::{optimize, Method, MethodSpec};
//! use rankagg::rational::rat_int;
//!
//! // two voters: X2, X3 beat X4; X1 beats X3
//! let array = ArrayBuilder::dichotomous(4, 2, rat_int(1))
//!     .max_win(1, 2, 4)
//!     .max_win(1, 3, 4)
//!     .max_win(2, 1, 3)
//!     .build()?;
//!
//! let spec = MethodSpec::linear(Method::Wqa { k: 2 });
//! let optima = optimize(&spec, &array)?;
//! assert_eq!(optima.orders.len(), 3);
//! # Ok::<(), rankagg::error::Error>(())
//! ```

pub mod axioms;
pub mod comparisons;
pub mod error;
pub mod fixtures;
pub mod grs;
pub mod io;
pub mod objectives;
pub mod orders;
pub mod rational;
pub mod structfun;
pub mod suites;

mod guide;

pub use error::{Error, Result};
