//! Characters of U(N) irreducible representations and character expansions
//! of invariant functions `prod_i G(x, t_i)` of a group element.
//!
//! * [`partitions`]: irrep labels and their enumeration.
//! * [`symfunc`]: characters by Weyl's ratio and by the Jacobi-Trudi
//!   determinant, complete symmetric functions, the Vandermonde determinant.
//! * [`genfunc`]: coefficient sequences of generating functions.
//! * [`expansion`]: expansion coefficients as Toeplitz minors of the
//!   coefficient sequence, truncated expansions and their reconstruction.
//! * [`haar`]: Haar-measure integration used to check all of the above.
//! * [`cli`]: the `charexp` command line.

pub mod cli;
pub mod error;
pub mod expansion;
pub mod genfunc;
pub mod haar;
pub mod linalg;
pub mod partitions;
pub mod symfunc;

pub use error::{Error, Result};
pub use expansion::{coefficient, direct_product, expand, expand_with, Expansion, ExpansionTerm};
pub use genfunc::{CoefficientSequence, Support};
pub use partitions::{enumerate_labels, GeneralizedLabel, Partition};
pub use symfunc::EigenvalueSet;
