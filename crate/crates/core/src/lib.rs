pub mod cyclotomic;
pub mod hadamard;
pub mod construction;
pub mod analysis;
pub mod fixtures;
pub mod formats;
pub mod report;
pub mod reproduce;
pub mod cli;
