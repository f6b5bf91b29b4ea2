//! Partitions, hook formulas and RSK statistics of words.

mod partition;
mod tableaux;
mod word;

pub use partition::{enumerate_partitions, Partition, PartitionIter};
pub use tableaux::{
    count_standard, count_standard_vandermonde, pochhammer_symbol, schur_at_ones,
    schur_at_ones_forms, strip_hook_product,
};
pub use word::{d1, i_k, rsk_shape, IkMethod, Word, EXHAUSTIVE_BOUND};
