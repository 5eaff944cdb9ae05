//! First-fit-decreasing on bounding rectangles: each two-bar chart becomes an
//! item of size `max(a, b)` and bins are pairs of adjacent cells.

use crate::error::Result;
use crate::height::Height;
use crate::model::{Instance, Packing};

pub fn pack_ffd_wrap(instance: &Instance) -> Result<Packing> {
    instance.require_two_bar()?;
    let mut items: Vec<(Height, usize)> =
        instance.charts().iter().map(|c| (c.max_height(), c.id())).collect();
    // decreasing size, ties by ascending id
    items.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));

    let mut bins: Vec<Height> = Vec::new();
    let mut starts = vec![0u32; instance.len()];
    for (size, id) in items {
        let bin = match bins.iter().position(|&used| used + size <= Height::FULL) {
            Some(k) => k,
            None => {
                bins.push(Height::ZERO);
                bins.len() - 1
            }
        };
        bins[bin] += size;
        starts[id] = 2 * bin as u32 + 1;
    }
    Ok(Packing::new(starts).expect("starts are odd and positive"))
}
