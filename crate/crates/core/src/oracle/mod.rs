//! Random function instances, query accounting and the preimage search.

mod image_list;
mod ledger;
mod mtps;
mod table;

use thiserror::Error;

pub use image_list::ImageList;
pub use ledger::{Aborted, QueryLedger};
pub use mtps::{mtps, InflatedPreimageOracle, INFLATION, PREDICATE_COST};
pub use table::{
    partition_domain, restrict_cell, restrict_domain, sample_random_function, FunctionTable,
    FunctionValues, RandomFunction,
};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("domain and range must be non-empty")]
    EmptySet,
    #[error("domain of size {domain_size} exceeds range of size {range_size}; restrict the domain first")]
    DomainExceedsRange { domain_size: u64, range_size: u32 },
    #[error("value {value} is outside the range [0, {range_size})")]
    ValueOutOfRange { value: u32, range_size: u32 },
    #[error("domain of size {0} does not fit 32-bit indices")]
    DomainTooLarge(u64),
    #[error("cell {start}..{end} is not a non-empty part of a domain of size {domain_size}")]
    CellOutOfDomain { start: u32, end: u32, domain_size: u32 },
    #[error("malformed table: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
