pub mod achievable;
pub mod bounds;
