//! Adapters from library types to the brute-force oracle in `tests/common`.

use crate::model::Instance;

#[path = "../tests/common/oracle.rs"]
mod brute;

pub(crate) fn rows(instance: &Instance) -> Vec<Vec<u64>> {
    instance.charts().iter().map(|c| c.heights().iter().map(|h| h.units()).collect()).collect()
}

pub(crate) fn optimum(instance: &Instance) -> u32 {
    brute::optimum(&rows(instance)).0
}

pub(crate) fn order_preserving_optimum(instance: &Instance, order: &[usize]) -> u32 {
    let all = rows(instance);
    let ordered: Vec<Vec<u64>> = order.iter().map(|&i| all[i].clone()).collect();
    brute::order_preserving_optimum(&ordered)
}
