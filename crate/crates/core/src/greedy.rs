//! Order-preserving greedy packing of charts with any number of bars.

use crate::error::{Error, Result};
use crate::model::{left_justify, CellLoads, Instance, Packing};

/// A processing order: a permutation of the instance's chart ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedList(Vec<usize>);

impl OrderedList {
    pub fn new(ids: Vec<usize>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        if ids.len() != n {
            return Err(Error::InvalidOrder { n });
        }
        for &id in &ids {
            if id >= n || std::mem::replace(&mut seen[id], true) {
                return Err(Error::InvalidOrder { n });
            }
        }
        Ok(OrderedList(ids))
    }

    pub fn identity(n: usize) -> Self {
        OrderedList((0..n).collect())
    }

    pub(crate) fn from_permutation(ids: Vec<usize>) -> Self {
        OrderedList(ids)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn check_for(&self, instance: &Instance) -> Result<()> {
        if self.0.len() == instance.len() {
            Ok(())
        } else {
            Err(Error::InvalidOrder { n: instance.len() })
        }
    }
}

/// Packs charts one at a time in `order`, each at the leftmost feasible start
/// cell not to the left of the previous chart's start.
pub fn pack_g(instance: &Instance, order: &OrderedList) -> Result<Packing> {
    order.check_for(instance)?;
    let mut starts = vec![0u32; instance.len()];
    let mut loads = CellLoads::with_capacity(instance.total_width());
    let mut prev = 1u32;
    for &id in order.as_slice() {
        let heights = instance.chart(id).heights();
        // terminates: past the last occupied cell every start fits
        let mut s = prev;
        while !loads.fits(s, heights) {
            s += 1;
        }
        loads.place(s, heights);
        starts[id] = s;
        prev = s;
    }
    Ok(Packing::from_starts(starts))
}

/// Runs [`pack_g`] on the mirrored charts and reflects the result, building the
/// packing from right to left.
pub fn pack_g_right_to_left(instance: &Instance, order: &OrderedList) -> Result<Packing> {
    mirror_solve(instance, |m| pack_g(m, order))
}

/// Solves the mirrored instance with `solve` and reflects the packing back.
pub(crate) fn mirror_solve<F>(instance: &Instance, solve: F) -> Result<Packing>
where
    F: FnOnce(&Instance) -> Result<Packing>,
{
    let mirrored = instance.mirrored();
    let packing = solve(&mirrored)?;
    let ends: Vec<u32> =
        instance.charts().iter().zip(packing.start_cells()).map(|(c, &s)| s + c.width() as u32 - 1).collect();
    let span = ends.iter().copied().max().unwrap_or(0);
    let reflected = Packing::from_starts(ends.iter().map(|&e| span - e + 1).collect());
    left_justify(instance, &reflected)
}
