//! Mealy automata, automaton semigroups, Wang tilings, and the reduction
//! connecting them.
//!
//! The library has three legs and a bridge:
//!
//! - [`mealy`]: exact semantics of Mealy automata and their extended,
//!   length- and prefix-preserving action on words.
//! - [`semigroup`]: the semigroup of word transformations generated by a
//!   machine's states — canonical forms, equality decision, budgeted
//!   enumeration, and power searches.
//! - [`wang`]: Wang tile sets with exact rectangle and torus solvers.
//! - [`reduction`]: builds the Mealy automaton of an NW-deterministic tile
//!   set, whose semigroup is infinite exactly when the plane is tileable,
//!   plus the verification machinery and a semi-decision driver for both
//!   directions.
//!
//! [`mod@format`] holds the text file formats, [`render`] an SVG view of
//! tilings, and [`report`] the JSON report types used by the CLI.
//!
//! ```
//! use tilemealy::reduction::{build_reduction, verify_lemma1, Lemma1Params};
//! use tilemealy::semigroup::{enumerate, Budget, FinitenessVerdict};
//! use tilemealy::wang::{find_torus_tiling, SolveOutcome, TileSet};
//!
//! // Two tiles tiling the plane in alternating rows.
//! let tiles = TileSet::new(
//!     &["0", "1"],
//!     &[("a", "0", "1", "0", "0"), ("b", "1", "0", "1", "1")],
//! )?;
//! let (outcome, _) = find_torus_tiling(&tiles, 4, 4, 100_000);
//! let SolveOutcome::Found(torus) = outcome else { unreachable!() };
//!
//! // The machine's bottom state shifts the tiling's diagonals, so its
//! // powers are pairwise distinct and the generated semigroup is infinite.
//! let machine = build_reduction(&tiles)?;
//! let report = verify_lemma1(&machine, &torus, &Lemma1Params::with_default_prefix(4, 4))?;
//! assert!(report.pass);
//!
//! // Enumeration accordingly only ever stops on its budget.
//! let budget = Budget { max_elements: 100, ..Budget::default() };
//! assert!(matches!(
//!     enumerate(machine.machine(), &budget),
//!     FinitenessVerdict::BudgetExceeded { .. }
//! ));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod format;
pub mod mealy;
pub mod reduction;
pub mod render;
pub mod report;
pub mod semigroup;
pub mod wang;
pub mod words;

pub use mealy::{MealyAutomaton, MealyBuilder, MealyError};
pub use semigroup::{Budget, CanonicalTransformation, Digest, FinitenessVerdict};
pub use wang::{RectTiling, TileSet, TorusTiling};
pub use words::{Alphabet, EventuallyPeriodicWord, Symbol, Word};
