pub mod algebra;
pub mod cli;
pub mod constructions;
pub mod dichotomy;
pub mod divisors;
pub mod error;
pub mod invariants;
pub mod numeric;
pub mod puiseux;
