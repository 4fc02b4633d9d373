//! Difference-reflection operators, their realizations and exact identity checks.

mod expr;
mod realize;
mod verify;

pub use expr::DifferenceOperator;
pub use realize::*;
pub use verify::*;

#[cfg(test)]
mod tests;
