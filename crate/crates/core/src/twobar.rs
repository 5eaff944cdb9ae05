//! Algorithms for charts of exactly two bars.
//!
//! [`pack_ga`] is the non-order-preserving greedy: at every step the chart with
//! the leftmost feasible start is fixed. [`algorithm_a`] merges small charts,
//! splits the rest by shape, packs the non-increasing set with GA from the left
//! and the non-decreasing set with GA from the right, then slides the right
//! block left. Its packings are never longer than `2 * OPT + 1`.

use std::cmp::Ordering;

use crate::error::Result;
use crate::greedy::{mirror_solve, OrderedList};
use crate::height::Height;
use crate::model::{left_justify, CellLoads, Instance, Packing};

const CAP: u64 = Height::FULL.units();

/// Output of [`merge_small`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeResult {
    /// Merged charts in emission order. Its origin map points at original ids.
    pub merged_instance: Instance,
    /// The accumulation still holding both bars `<= 1/2` when the scan ended.
    pub leftover_small: Option<usize>,
    /// For each merged chart, the ids of the input charts it combines.
    pub members: Vec<Vec<usize>>,
}

impl MergeResult {
    /// Maps a packing of the merged charts back to the input charts: every
    /// constituent starts where its merged chart starts.
    pub fn expand(&self, merged: &Packing) -> Packing {
        let n: usize = self.members.iter().map(Vec::len).sum();
        let mut starts = vec![0u32; n];
        for (k, group) in self.members.iter().enumerate() {
            for &id in group {
                starts[id] = merged.start(k);
            }
        }
        Packing::from_starts(starts)
    }
}

/// Non-increasing (`a >= b`) and non-decreasing (`a < b`) charts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitSets {
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
}

/// Lexicographic key used by the `_lo` variants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum LexKey {
    /// Compare `(a, b)`.
    #[default]
    FirstBar,
    /// Compare `(max(a, b), min(a, b))`.
    MaxBar,
}

impl LexKey {
    pub fn name(self) -> &'static str {
        match self {
            LexKey::FirstBar => "first_bar",
            LexKey::MaxBar => "max_bar",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "first_bar" | "first" => Some(LexKey::FirstBar),
            "max_bar" | "max" => Some(LexKey::MaxBar),
            _ => None,
        }
    }
}

/// Chart ids sorted by descending lexicographic key, ties by ascending id.
pub fn lex_order(instance: &Instance) -> Result<OrderedList> {
    lex_order_by(instance, LexKey::FirstBar)
}

pub fn lex_order_by(instance: &Instance, key: LexKey) -> Result<OrderedList> {
    instance.require_two_bar()?;
    let key_of = |id: usize| {
        let c = instance.chart(id);
        match key {
            LexKey::FirstBar => (c.a(), c.b()),
            LexKey::MaxBar => (c.a().max(c.b()), c.a().min(c.b())),
        }
    };
    let mut ids: Vec<usize> = (0..instance.len()).collect();
    ids.sort_by(|&x, &y| key_of(y).cmp(&key_of(x)).then(x.cmp(&y)));
    Ok(OrderedList::from_permutation(ids))
}

/// Greedy GA: repeatedly fixes the chart whose leftmost feasible start is
/// minimal, ties going to the chart earliest in `order`.
pub fn pack_ga(instance: &Instance, order: &OrderedList) -> Result<Packing> {
    instance.require_two_bar()?;
    order.check_for(instance)?;
    let bars: Vec<(u64, u64)> = order
        .as_slice()
        .iter()
        .map(|&id| (instance.chart(id).a().units(), instance.chart(id).b().units()))
        .collect();
    let by_position = ga_starts(&bars);
    let mut starts = vec![0u32; instance.len()];
    for (pos, &id) in order.as_slice().iter().enumerate() {
        starts[id] = by_position[pos];
    }
    Ok(Packing::from_starts(starts))
}

/// GA over charts listed in priority order; returns start cells by position.
///
/// Loads only grow, so a chart's leftmost feasible start never moves left.
/// Each chart keeps a cursor that is advanced lazily, which makes the whole
/// run `O(n^2)`.
fn ga_starts(bars: &[(u64, u64)]) -> Vec<u32> {
    let n = bars.len();
    let mut loads = vec![0u64; 2 * n + 3];
    let mut cursor = vec![1usize; n];
    let mut starts = vec![0u32; n];
    let mut remaining: Vec<usize> = (0..n).collect();

    while !remaining.is_empty() {
        let mut best: Option<(usize, usize)> = None; // (start, index in remaining)
        for (idx, &pos) in remaining.iter().enumerate() {
            let (a, b) = bars[pos];
            let mut s = cursor[pos];
            while loads[s] + a > CAP || loads[s + 1] + b > CAP {
                s += 1;
            }
            cursor[pos] = s;
            // remaining is kept in priority order, so strict < keeps the earliest
            if best.is_none_or(|(bs, _)| s < bs) {
                best = Some((s, idx));
            }
        }
        let (s, idx) = best.expect("remaining is non-empty");
        let pos = remaining.remove(idx);
        let (a, b) = bars[pos];
        loads[s] += a;
        loads[s + 1] += b;
        starts[pos] = s as u32;
    }
    starts
}

/// GA run on the mirrored charts and reflected: packs from right to left.
pub fn pack_ga_right_to_left(instance: &Instance, order: &OrderedList) -> Result<Packing> {
    instance.require_two_bar()?;
    mirror_solve(instance, |m| pack_ga(m, order))
}

/// Single-scan merging of charts whose bars are both `<= 1/2`.
///
/// Charts with a big bar pass through. A small chart either becomes the
/// accumulator or is added to it bar by bar; once the accumulator gains a bar
/// above 1/2 it is emitted. Whatever is left in the accumulator at the end is
/// the leftover, appended last.
pub fn merge_small(instance: &Instance) -> Result<MergeResult> {
    merge_small_in_order(instance, &OrderedList::identity(instance.len()))
}

/// [`merge_small`] scanning the charts in `order` instead of id order.
pub fn merge_small_in_order(instance: &Instance, order: &OrderedList) -> Result<MergeResult> {
    instance.require_two_bar()?;
    order.check_for(instance)?;
    let mut heights: Vec<Vec<Height>> = Vec::with_capacity(instance.len());
    let mut members: Vec<Vec<usize>> = Vec::with_capacity(instance.len());
    let mut acc: Option<([Height; 2], Vec<usize>)> = None;

    for &id in order.as_slice() {
        let c = instance.chart(id);
        if !c.is_small() {
            heights.push(c.heights().to_vec());
            members.push(vec![id]);
            continue;
        }
        match acc.take() {
            None => acc = Some(([c.a(), c.b()], vec![id])),
            Some(([a, b], mut group)) => {
                group.push(id);
                let merged = [a + c.a(), b + c.b()];
                if merged.iter().any(|h| h.is_big()) {
                    heights.push(merged.to_vec());
                    members.push(group);
                } else {
                    acc = Some((merged, group));
                }
            }
        }
    }
    let leftover_small = acc.map(|(bars, group)| {
        heights.push(bars.to_vec());
        members.push(group);
        heights.len() - 1
    });

    let origin = members
        .iter()
        .map(|g| {
            let mut ids: Vec<usize> =
                g.iter().flat_map(|&i| instance.origin_map()[i].iter().copied()).collect();
            ids.sort_unstable();
            ids
        })
        .collect();
    let merged_instance = Instance::from_parts(heights, instance.strip_height(), origin);
    Ok(MergeResult { merged_instance, leftover_small, members })
}

/// Splits by shape, preserving relative order; the leftover goes last in `s1`.
pub fn split(instance: &Instance, leftover: Option<usize>) -> Result<SplitSets> {
    instance.require_two_bar()?;
    let mut sets = SplitSets::default();
    for c in instance.charts() {
        if Some(c.id()) == leftover {
            continue;
        }
        if c.a() >= c.b() {
            sets.s1.push(c.id());
        } else {
            sets.s2.push(c.id());
        }
    }
    sets.s1.extend(leftover);
    Ok(sets)
}

/// Joins the left package (over `sets.s1`, indexed by position in `s1`) and the
/// right package (over `sets.s2`): the right block is placed just after the
/// left one and slid left, rigidly, one cell at a time while the result stays
/// feasible.
pub fn shift_join(instance: &Instance, sets: &SplitSets, left: &Packing, right: &Packing) -> Result<Packing> {
    let left_inst = instance.subset(&sets.s1);
    let right_inst = instance.subset(&sets.s2);
    let left_loads = CellLoads::of(&left_inst, left)?;
    let right_loads = CellLoads::of(&right_inst, right)?;

    let left_end = left_loads.end() as usize;
    let right_first = right.start_cells().iter().copied().min().unwrap_or(1) as usize;
    let right_end = right_loads.end() as usize;

    // right cell c lands on c + offset
    let fits = |offset: usize| {
        (right_first..=right_end).all(|c| left_loads.get(c + offset) + right_loads.get(c) <= CAP)
    };
    let mut offset = left_end + 1 - right_first;
    while offset > 0 && fits(offset - 1) {
        offset -= 1;
    }

    let mut starts = vec![0u32; instance.len()];
    for (pos, &id) in sets.s1.iter().enumerate() {
        starts[id] = left.start(pos);
    }
    for (pos, &id) in sets.s2.iter().enumerate() {
        starts[id] = right.start(pos) + offset as u32;
    }
    left_justify(instance, &Packing::from_starts(starts))
}

/// Which optional stages of the three-stage pipeline to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Merge small charts first (`A`); without it the pipeline is `A1`.
    pub merge: bool,
    /// Re-sort each shape class by this key before packing (`_lo` variants).
    pub lex: Option<LexKey>,
}

/// Algorithm A: merge, split, pack both sides, join.
pub fn algorithm_a(instance: &Instance) -> Result<Packing> {
    run_pipeline(instance, PipelineOptions { merge: true, lex: None })
}

/// Algorithm A without the merge stage.
pub fn algorithm_a1(instance: &Instance) -> Result<Packing> {
    run_pipeline(instance, PipelineOptions { merge: false, lex: None })
}

pub fn run_pipeline(instance: &Instance, opts: PipelineOptions) -> Result<Packing> {
    instance.require_two_bar()?;
    let scan = match opts.lex {
        Some(key) => lex_order_by(instance, key)?,
        None => OrderedList::identity(instance.len()),
    };
    let stage1 = if opts.merge {
        merge_small_in_order(instance, &scan)?
    } else {
        MergeResult {
            merged_instance: instance.subset(scan.as_slice()),
            leftover_small: None,
            members: scan.as_slice().iter().map(|&id| vec![id]).collect(),
        }
    };
    let merged = &stage1.merged_instance;
    let mut sets = split(merged, stage1.leftover_small)?;
    if let Some(key) = opts.lex {
        let tail = stage1.leftover_small.filter(|_| !sets.s1.is_empty());
        if tail.is_some() {
            sets.s1.pop();
        }
        sort_by_key_desc(merged, &mut sets.s1, key);
        sort_by_key_desc(merged, &mut sets.s2, key);
        sets.s1.extend(tail);
    }

    let left_inst = merged.subset(&sets.s1);
    let right_inst = merged.subset(&sets.s2);
    let left = pack_ga(&left_inst, &OrderedList::identity(left_inst.len()))?;
    let right = pack_ga_right_to_left(&right_inst, &OrderedList::identity(right_inst.len()))?;
    let joined = shift_join(merged, &sets, &left, &right)?;
    Ok(stage1.expand(&joined))
}

fn sort_by_key_desc(instance: &Instance, ids: &mut [usize], key: LexKey) {
    let key_of = |id: usize| {
        let c = instance.chart(id);
        match key {
            LexKey::FirstBar => (c.a(), c.b()),
            LexKey::MaxBar => (c.a().max(c.b()), c.a().min(c.b())),
        }
    };
    ids.sort_by(|&x, &y| match key_of(y).cmp(&key_of(x)) {
        Ordering::Equal => x.cmp(&y),
        o => o,
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::evaluate;
    use crate::oracle;
    use proptest::prelude::*;

    fn inst(rows: &[[f64; 2]]) -> Instance {
        Instance::from_rows(rows).unwrap()
    }

    fn length(i: &Instance, p: &Packing) -> u32 {
        let r = evaluate(i, p).unwrap();
        assert!(r.feasible, "{:?}", r.violations);
        r.length
    }

    fn h(s: &str) -> Height {
        Height::parse(s).unwrap()
    }

    #[test]
    fn ga_on_tall_first_bars_is_optimal() {
        let i = inst(&[[1.0, 0.1], [1.0, 0.1]]);
        let p = pack_ga(&i, &OrderedList::identity(2)).unwrap();
        assert_eq!(p.start_cells(), &[1, 3]);
        assert_eq!(length(&i, &p), 4);
        assert_eq!(oracle::optimum(&i), 4);
    }

    #[test]
    fn ga_stacks_fitting_pair() {
        let i = inst(&[[0.6, 0.6], [0.4, 0.4]]);
        let p = pack_ga(&i, &OrderedList::identity(2)).unwrap();
        assert_eq!(p.start_cells(), &[1, 1]);
        assert_eq!(length(&i, &p), 2);
        assert_eq!(oracle::optimum(&i), 2);
    }

    #[test]
    fn ga_three_chart_trace() {
        let i = inst(&[[0.9, 0.1], [0.1, 0.9], [0.9, 0.1]]);
        let p = pack_ga(&i, &OrderedList::identity(3)).unwrap();
        assert_eq!(p.start_cells(), &[1, 1, 3]);
        let r = evaluate(&i, &p).unwrap();
        assert_eq!(r.cell_loads[&1], Height::FULL);
        assert_eq!(r.cell_loads[&2], Height::FULL);
        assert_eq!(r.length, 4);
        assert_eq!(oracle::optimum(&i), 4);
    }

    #[test]
    fn ga_is_not_order_preserving() {
        // chart 2 fits under chart 0's second bar at cell 2 while chart 1 needs cell 3
        let i = inst(&[[0.9, 0.5], [0.9, 0.9], [0.5, 0.1]]);
        let p = pack_ga(&i, &OrderedList::identity(3)).unwrap();
        assert!(p.start(2) < p.start(1), "{:?}", p.start_cells());
        length(&i, &p);
    }

    #[test]
    fn ga_right_to_left_examples() {
        let i = inst(&[[0.1, 1.0], [0.1, 1.0]]);
        let p = pack_ga_right_to_left(&i, &OrderedList::identity(2)).unwrap();
        assert_eq!(length(&i, &p), 4);

        let i = inst(&[[0.3, 0.8]]);
        let p = pack_ga_right_to_left(&i, &OrderedList::identity(1)).unwrap();
        assert_eq!(p.start_cells(), &[1]);
        assert_eq!(length(&i, &p), 2);

        let i = inst(&[[0.1, 0.9], [0.9, 0.1], [0.1, 0.9]]);
        let p = pack_ga_right_to_left(&i, &OrderedList::identity(3)).unwrap();
        assert_eq!(length(&i, &p), 4);
        assert_eq!(oracle::optimum(&i), 4);
    }

    #[test]
    fn ga_rejects_other_widths() {
        let i = Instance::from_rows(&[vec![0.5, 0.5], vec![0.5, 0.5, 0.5]]).unwrap();
        let err = pack_ga(&i, &OrderedList::identity(2)).unwrap_err();
        assert!(err.is_shape_mismatch());
        assert!(algorithm_a(&i).is_err());
        assert!(merge_small(&i).is_err());
    }

    #[test]
    fn merge_componentwise_sum() {
        let i = inst(&[[0.3, 0.2], [0.2, 0.4]]);
        let m = merge_small(&i).unwrap();
        assert_eq!(m.merged_instance.len(), 1);
        assert_eq!(m.merged_instance.chart(0).heights(), &[h("0.5"), h("0.6")]);
        assert_eq!(m.leftover_small, None);
        assert_eq!(m.members, vec![vec![0, 1]]);
        assert_eq!(m.merged_instance.origin_map(), &[vec![0, 1]]);
    }

    #[test]
    fn merge_keeps_small_accumulation_as_leftover() {
        let i = inst(&[[0.2, 0.1], [0.1, 0.2], [0.1, 0.1]]);
        let m = merge_small(&i).unwrap();
        assert_eq!(m.merged_instance.len(), 1);
        assert_eq!(m.merged_instance.chart(0).heights(), &[h("0.4"), h("0.4")]);
        assert_eq!(m.leftover_small, Some(0));
        assert_eq!(m.members, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn merge_passes_big_charts_through() {
        let i = inst(&[[0.9, 0.2], [0.6, 0.7]]);
        let m = merge_small(&i).unwrap();
        assert_eq!(m.merged_instance.charts(), i.charts());
        assert_eq!(m.leftover_small, None);
    }

    #[test]
    fn merge_boundary_half_is_small() {
        let i = inst(&[[0.5, 0.5], [0.5, 0.5]]);
        let m = merge_small(&i).unwrap();
        assert_eq!(m.merged_instance.len(), 1);
        assert_eq!(m.merged_instance.chart(0).heights(), &[Height::FULL, Height::FULL]);
    }

    #[test]
    fn split_examples() {
        let i = inst(&[[0.7, 0.2], [0.3, 0.8], [0.5, 0.5]]);
        assert_eq!(split(&i, None).unwrap(), SplitSets { s1: vec![0, 2], s2: vec![1] });

        let i = inst(&[[0.4, 0.45], [0.9, 0.1]]);
        assert_eq!(split(&i, Some(0)).unwrap(), SplitSets { s1: vec![1, 0], s2: vec![] });

        let i = inst(&[[0.1, 0.2], [0.3, 0.9]]);
        assert_eq!(split(&i, None).unwrap(), SplitSets { s1: vec![], s2: vec![0, 1] });
    }

    /// Places the right block at every offset and keeps the smallest feasible
    /// one reachable by sliding from the touching position.
    fn slide_oracle(i: &Instance, sets: &SplitSets, left: &Packing, right: &Packing) -> u32 {
        let left_end = sets.s1.iter().enumerate().map(|(pos, _)| left.start(pos) + 1).max().unwrap_or(0);
        let mut best = None;
        for shift in 0..=left_end {
            let mut starts = vec![0; i.len()];
            for (pos, &id) in sets.s1.iter().enumerate() {
                starts[id] = left.start(pos);
            }
            let offset = left_end - shift;
            for (pos, &id) in sets.s2.iter().enumerate() {
                starts[id] = right.start(pos) + offset;
            }
            if !evaluate(i, &Packing::new(starts.clone()).unwrap()).unwrap().feasible {
                break;
            }
            best = Some(evaluate(i, &Packing::new(starts).unwrap()).unwrap().length);
        }
        best.unwrap()
    }

    #[test]
    fn shift_join_overlaps_one_cell_when_it_fits() {
        let i = inst(&[[0.8, 0.3], [0.6, 0.9]]);
        let sets = SplitSets { s1: vec![0], s2: vec![1] };
        let left = Packing::new(vec![1]).unwrap();
        let right = Packing::new(vec![1]).unwrap();
        let p = shift_join(&i, &sets, &left, &right).unwrap();
        assert_eq!(p.start_cells(), &[1, 2]);
        assert_eq!(length(&i, &p), 3);
        assert_eq!(slide_oracle(&i, &sets, &left, &right), 3);
    }

    #[test]
    fn shift_join_touches_when_bars_collide() {
        let i = inst(&[[0.8, 0.7], [0.7, 0.9]]);
        let sets = SplitSets { s1: vec![0], s2: vec![1] };
        let one = Packing::new(vec![1]).unwrap();
        let p = shift_join(&i, &sets, &one, &one).unwrap();
        assert_eq!(p.start_cells(), &[1, 3]);
        assert_eq!(length(&i, &p), 4);
    }

    #[test]
    fn shift_join_with_empty_side() {
        let i = inst(&[[0.8, 0.7], [0.7, 0.2]]);
        let sets = SplitSets { s1: vec![0, 1], s2: vec![] };
        let left = Packing::new(vec![1, 3]).unwrap();
        let p = shift_join(&i, &sets, &left, &Packing::from_starts(vec![])).unwrap();
        assert_eq!(p, left);

        let sets = SplitSets { s1: vec![], s2: vec![0] };
        let i = inst(&[[0.2, 0.7]]);
        let one = Packing::new(vec![1]).unwrap();
        let p = shift_join(&i, &sets, &Packing::from_starts(vec![]), &one).unwrap();
        assert_eq!(p.start_cells(), &[1]);
    }

    #[test]
    fn algorithm_a_on_tall_first_bars() {
        let i = inst(&[[1.0, 0.1]; 4]);
        let p = algorithm_a(&i).unwrap();
        assert_eq!(length(&i, &p), 8);
        assert_eq!(oracle::optimum(&i), 8);
    }

    #[test]
    fn algorithm_a_merge_trace() {
        let i = inst(&[[0.3, 0.2], [0.2, 0.4], [0.9, 0.1]]);
        let m = merge_small(&i).unwrap();
        let heights: Vec<_> = m.merged_instance.charts().iter().map(|c| c.heights().to_vec()).collect();
        assert_eq!(heights, vec![vec![h("0.5"), h("0.6")], vec![h("0.9"), h("0.1")]]);
        let sets = split(&m.merged_instance, m.leftover_small).unwrap();
        assert_eq!(sets, SplitSets { s1: vec![1], s2: vec![0] });
        let p = algorithm_a(&i).unwrap();
        assert_eq!(length(&i, &p), 3);
        assert!(oracle::optimum(&i) <= 3);
        // merged constituents share a start
        assert_eq!(p.start(0), p.start(1));
    }

    #[test]
    fn algorithm_a_single_chart() {
        let i = inst(&[[0.5, 0.5]]);
        assert_eq!(length(&i, &algorithm_a(&i).unwrap()), 2);
        assert_eq!(algorithm_a1(&i).unwrap(), algorithm_a(&i).unwrap());
    }

    #[test]
    fn algorithm_a1_skips_merging() {
        let i = inst(&[[0.5, 0.1], [0.5, 0.1], [0.1, 0.5], [0.1, 0.5]]);
        let opt = oracle::optimum(&i);
        let la = length(&i, &algorithm_a(&i).unwrap());
        let la1 = length(&i, &algorithm_a1(&i).unwrap());
        // A merges into (1.0, 0.2) and (0.2, 1.0); A1 stacks the pairs directly
        assert_eq!((opt, la, la1), (3, 3, 3));

        let i = inst(&[[0.9, 0.2], [0.6, 0.7], [0.8, 0.8]]);
        assert_eq!(algorithm_a1(&i).unwrap(), algorithm_a(&i).unwrap());
    }

    #[test]
    fn lex_order_examples() {
        let i = inst(&[[0.5, 0.9], [0.5, 0.2], [0.7, 0.1]]);
        assert_eq!(lex_order(&i).unwrap().as_slice(), &[2, 0, 1]);
        let i = inst(&[[0.4, 0.4]; 3]);
        assert_eq!(lex_order(&i).unwrap().as_slice(), &[0, 1, 2]);
        let i = inst(&[[0.3, 0.3], [0.3, 0.3]]);
        assert_eq!(lex_order(&i).unwrap().as_slice(), &[0, 1]);
        let i = inst(&[[0.5, 0.9], [0.6, 0.2]]);
        assert_eq!(lex_order_by(&i, LexKey::MaxBar).unwrap().as_slice(), &[0, 1]);
        assert_eq!(lex_order_by(&i, LexKey::FirstBar).unwrap().as_slice(), &[1, 0]);
    }

    fn arb_two_bar(max_n: usize) -> impl Strategy<Value = Vec<[u64; 2]>> {
        prop::collection::vec([1u64..=1000, 1u64..=1000], 1..=max_n)
    }

    fn build(rows: &[[u64; 2]]) -> Instance {
        Instance::new(
            rows.iter().map(|r| r.iter().map(|&m| Height::from_units(m * 1_000_000)).collect()).collect(),
        )
        .unwrap()
    }

    proptest! {
        #[test]
        fn all_two_bar_algorithms_are_feasible(rows in arb_two_bar(40)) {
            let i = build(&rows);
            let id = OrderedList::identity(i.len());
            let lo = lex_order(&i).unwrap();
            for p in [
                pack_ga(&i, &id).unwrap(),
                pack_ga(&i, &lo).unwrap(),
                pack_ga_right_to_left(&i, &id).unwrap(),
                algorithm_a(&i).unwrap(),
                algorithm_a1(&i).unwrap(),
                run_pipeline(&i, PipelineOptions { merge: true, lex: Some(LexKey::FirstBar) }).unwrap(),
                run_pipeline(&i, PipelineOptions { merge: false, lex: Some(LexKey::MaxBar) }).unwrap(),
            ] {
                let r = evaluate(&i, &p).unwrap();
                prop_assert!(r.feasible);
                prop_assert!(r.length <= 2 * i.len() as u32);
            }
        }

        #[test]
        fn merge_conserves_height_and_leaves_one_small(rows in arb_two_bar(60)) {
            let i = build(&rows);
            let m = merge_small(&i).unwrap();
            prop_assert_eq!(m.merged_instance.total_height(), i.total_height());
            let small = m.merged_instance.charts().iter().filter(|c| c.is_small()).count();
            prop_assert!(small <= 1);
            prop_assert_eq!(small == 1, m.leftover_small.is_some());
            for c in m.merged_instance.charts() {
                prop_assert!(c.max_height() <= Height::FULL);
            }
            let mut all: Vec<usize> = m.members.concat();
            all.sort_unstable();
            prop_assert_eq!(all, (0..i.len()).collect::<Vec<_>>());
        }

        #[test]
        fn expansion_preserves_loads(rows in arb_two_bar(40)) {
            let i = build(&rows);
            let m = merge_small(&i).unwrap();
            let merged = &m.merged_instance;
            let p = pack_ga(merged, &OrderedList::identity(merged.len())).unwrap();
            let before = evaluate(merged, &p).unwrap();
            let after = evaluate(&i, &m.expand(&p)).unwrap();
            prop_assert_eq!(before, after);
        }

        #[test]
        fn packages_are_more_than_half_dense(rows in arb_two_bar(40)) {
            // the leftover small chart is excluded: it can occupy two nearly
            // empty cells of its own
            let i = build(&rows);
            let m = merge_small(&i).unwrap();
            let sets = split(&m.merged_instance, m.leftover_small).unwrap();
            let s1: Vec<usize> =
                sets.s1.iter().copied().filter(|&id| Some(id) != m.leftover_small).collect();
            for (ids, rtl) in [(s1, false), (sets.s2.clone(), true)] {
                let side = m.merged_instance.subset(&ids);
                if side.is_empty() {
                    continue;
                }
                let order = OrderedList::identity(side.len());
                let p = if rtl { pack_ga_right_to_left(&side, &order) } else { pack_ga(&side, &order) }.unwrap();
                let r = evaluate(&side, &p).unwrap();
                let loads: Vec<u64> = r.cell_loads.values().map(|h| h.units()).collect();
                // all cells but the outermost one carry more than half on average
                let inner = if rtl { &loads[1..] } else { &loads[..loads.len() - 1] };
                prop_assert!(2 * inner.iter().sum::<u64>() >= inner.len() as u64 * CAP);
            }
        }

        #[test]
        fn algorithm_a_area_bound(rows in arb_two_bar(120)) {
            let i = build(&rows);
            let r = evaluate(&i, &algorithm_a(&i).unwrap()).unwrap();
            let sum = i.total_height().units();
            let leftover = merge_small(&i).unwrap().leftover_small.is_some();
            // L <= 2 * sum + 1 without a leftover small chart, which may cost
            // up to two more cells; compared exactly in fixed point
            let slack = if leftover { 3 } else { 1 };
            prop_assert!(r.length as u64 * CAP <= 2 * sum + slack * CAP);
        }

        #[test]
        fn algorithm_a_within_twice_optimum_plus_one(rows in prop::collection::vec([1u64..=10, 1u64..=10], 1..=5)) {
            let i = Instance::from_rows(
                &rows.iter().map(|r| [r[0] as f64 / 10.0, r[1] as f64 / 10.0]).collect::<Vec<_>>(),
            ).unwrap();
            let r = evaluate(&i, &algorithm_a(&i).unwrap()).unwrap();
            prop_assert!(r.length <= 2 * oracle::optimum(&i) + 1);
        }
    }
}
