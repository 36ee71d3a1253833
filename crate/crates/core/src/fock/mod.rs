//! Combinatorial and linear-algebra primitives: occupation vectors, factorial
//! weights, contingency tables, permanents and the unitary container.

mod factorial;
mod interferometer;
mod occupation;
mod permanent;
mod table;

pub use factorial::{factorial, factorial_exact, ln_factorial, EXACT_FACTORIAL_LIMIT};
pub use interferometer::{expand_submatrix, unitarity_residual, Interferometer};
pub use occupation::OccupationVector;
pub use permanent::{permanent, permanent_ryser};
pub use table::{fisher_yates, for_each_table, tables_with_margins, ContingencyTable};
