//! Longest common subsequence of two byte strings that contains none of a
//! set of forbidden patterns as a substring.
//!
//! The patterns are compiled into a keyword-tree automaton
//! ([`automaton::ExclusionAutomaton`]) whose nonleaf nodes index the third
//! dimension of an `O(n·m·s)` dynamic program ([`solver`]). The [`oracle`]
//! module holds brute-force references used to certify results.
//!
//! ```
//! use exclcs::{solve, Mode};
//!
//! let result = solve(b"aabb", b"abab", &["ab"], Mode::Witness).unwrap();
//! assert_eq!(result.length, 2);
//! ```

pub mod automaton;
pub mod bench;
pub mod error;
pub mod gen;
pub mod oracle;
pub mod solver;

pub use automaton::{normalize, ConstraintSet, ExclusionAutomaton, KeywordTree, Step, MATCH};
pub use error::{Error, Result};
pub use solver::{solve, solve_with, Mode, SolveResult};
