//! Small named contexts used by tests, the CLI and the verification suites.

use crate::context::FormalContext;

/// Five objects `g..k` over attributes `m..q`. Its lattice has 15 concepts;
/// deleting `(g, m)` leaves 7 and deleting `(h, m)` leaves 9.
pub fn running_example() -> FormalContext {
    FormalContext::from_rows(
        &["g", "h", "i", "j", "k"],
        &["m", "n", "o", "p", "q"],
        &[".XX.X", ".X.XX", "XX.X.", "X.XX.", "X...X"],
    )
    .expect("well-formed")
}

/// A 5×6 context with 22 concepts where no `op^{g,m}` increases the count.
pub fn resistant_context() -> FormalContext {
    FormalContext::from_rows(
        &["1", "2", "3", "4", "5"],
        &["a", "b", "c", "d", "e", "f"],
        &["..XXXX", "XX..XX", "XXXX..", ".X.X.X", "X.X.X."],
    )
    .expect("well-formed")
}

/// The standard context of the three-element chain.
pub fn three_chain() -> FormalContext {
    FormalContext::from_rows(&["g1", "g2"], &["m1", "m2"], &["X.", ".."]).expect("well-formed")
}

/// The family of mixed generators for [`running_example`] with `R = {g, h}`
/// (the co-extent of `m`), written as strings of object names.
pub const RUNNING_SYSTEM: [&str; 15] = [
    "", "g", "gh", "gi", "gj", "gk", "h", "hi", "hij", "hijk", "i", "ij", "ijk", "j", "k",
];
