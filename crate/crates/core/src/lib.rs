//! Few-weight p-ary linear codes built from binomial Weil sums.

pub mod bent;
pub mod charsum;
pub mod cli;
pub mod codes;
pub mod cyclotomic;
pub mod field;
pub mod predict;
pub mod symbols;
