pub mod catalog;
pub mod cli;
pub mod exact;
pub mod quadrature;
pub mod sequences;
pub mod transform;
pub mod verification;
