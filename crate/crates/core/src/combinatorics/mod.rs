//! Partitions, weak compositions, tableaux, Gelfand-Tsetlin patterns,
//! hook lengths and Kostka numbers.
//!
//! Enumeration orders are fixed: partitions and weak compositions in reverse
//! lexicographic order, standard tableaux by row-reading word.

mod gt;
mod partition;
mod tableau;

pub use gt::{gt_from_ssyt, ssyt_from_gt, GtPattern};
pub use partition::{
    dominates, enumerate_partitions, enumerate_weak_compositions, factorial, hook_data,
    multinomial, multiset_from_weight, sort_to_partition, HookData, MultisetIndex, Partition,
    WeakComposition,
};
pub use tableau::{
    count_ssyt_bounded, enumerate_ssyt, enumerate_syt, kostka, theta_mu, SemistandardTableau,
    StandardTableau, ThetaImage,
};
