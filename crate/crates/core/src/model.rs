//! Bar charts, instances, packings and the feasibility/length evaluation that
//! every solver is checked against.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::height::{parse_signed_units, Height};

/// A rigid sequence of unit-width bars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarChart {
    id: usize,
    heights: Vec<Height>,
}

impl BarChart {
    pub fn id(&self) -> usize {
        self.id
    }

    pub fn heights(&self) -> &[Height] {
        &self.heights
    }

    pub fn width(&self) -> usize {
        self.heights.len()
    }

    /// Tallest bar.
    pub fn max_height(&self) -> Height {
        self.heights.iter().copied().max().unwrap_or_default()
    }

    pub fn total_height(&self) -> Height {
        self.heights.iter().sum()
    }

    /// First bar.
    pub fn a(&self) -> Height {
        self.heights[0]
    }

    /// Second bar. Panics on one-bar charts.
    pub fn b(&self) -> Height {
        self.heights[1]
    }

    pub fn is_non_increasing(&self) -> bool {
        self.heights.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.heights.windows(2).all(|w| w[0] <= w[1])
    }

    /// Both bars (all bars) at most half the strip.
    pub fn is_small(&self) -> bool {
        self.heights.iter().all(|h| !h.is_big())
    }
}

/// Instance as read from disk, before dividing by the strip height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawInstance {
    pub strip_height: Height,
    pub charts: Vec<Vec<Height>>,
}

/// A normalized set of bar charts packed into a strip of height 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    charts: Vec<BarChart>,
    strip_height: Height,
    origin_map: Vec<Vec<usize>>,
}

impl Instance {
    /// Builds an instance whose heights are already relative to a unit strip.
    pub fn new(charts: Vec<Vec<Height>>) -> Result<Self> {
        normalize(RawInstance { strip_height: Height::FULL, charts })
    }

    /// Convenience constructor from float rows, e.g. `&[[0.6, 0.4], [0.4, 0.6]]`.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let charts = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&h| Height::from_f64(h)).collect())
            .collect::<Result<Vec<Vec<Height>>>>()?;
        Self::new(charts)
    }

    pub(crate) fn from_parts(
        heights: Vec<Vec<Height>>,
        strip_height: Height,
        origin_map: Vec<Vec<usize>>,
    ) -> Self {
        debug_assert_eq!(heights.len(), origin_map.len());
        let charts = heights.into_iter().enumerate().map(|(id, heights)| BarChart { id, heights }).collect();
        Instance { charts, strip_height, origin_map }
    }

    pub fn charts(&self) -> &[BarChart] {
        &self.charts
    }

    pub fn chart(&self, id: usize) -> &BarChart {
        &self.charts[id]
    }

    pub fn len(&self) -> usize {
        self.charts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.charts.is_empty()
    }

    /// The raw strip height `D` the instance was normalized by.
    pub fn strip_height(&self) -> Height {
        self.strip_height
    }

    /// For each working chart, the original chart ids it stands for.
    pub fn origin_map(&self) -> &[Vec<usize>] {
        &self.origin_map
    }

    /// Widest chart.
    pub fn max_width(&self) -> usize {
        self.charts.iter().map(BarChart::width).max().unwrap_or(0)
    }

    pub fn total_width(&self) -> usize {
        self.charts.iter().map(BarChart::width).sum()
    }

    pub fn total_height(&self) -> Height {
        self.charts.iter().map(BarChart::total_height).sum()
    }

    pub fn is_two_bar(&self) -> bool {
        self.charts.iter().all(|c| c.width() == 2)
    }

    pub fn require_two_bar(&self) -> Result<()> {
        match self.charts.iter().find(|c| c.width() != 2) {
            Some(c) => Err(Error::NotTwoBar { chart: c.id, width: c.width() }),
            None => Ok(()),
        }
    }

    /// The charts listed in `ids`, renumbered `0..ids.len()` in that order.
    pub fn subset(&self, ids: &[usize]) -> Instance {
        let heights = ids.iter().map(|&i| self.charts[i].heights.clone()).collect();
        let origin = ids.iter().map(|&i| self.origin_map[i].clone()).collect();
        Instance::from_parts(heights, self.strip_height, origin)
    }

    /// Same instance with every chart's bar sequence reversed.
    pub fn mirrored(&self) -> Instance {
        let heights = self.charts.iter().map(|c| c.heights.iter().rev().copied().collect()).collect();
        Instance::from_parts(heights, self.strip_height, self.origin_map.clone())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        normalize(RawInstance::from_json(text)?)
    }

    /// Serializes the normalized heights (so `d` is written as 1).
    pub fn to_json(&self) -> String {
        let doc = InstanceDoc {
            d: Height::FULL.to_string(),
            charts: self
                .charts
                .iter()
                .map(|c| ChartDoc { heights: c.heights.iter().map(Height::to_string).collect() })
                .collect(),
        };
        let mut out = serde_json::to_value(&doc).expect("plain data serializes");
        // Emit numbers rather than strings; the text is already canonical.
        numberize(&mut out);
        serde_json::to_string_pretty(&out).expect("plain data serializes")
    }
}

#[derive(Serialize)]
struct InstanceDoc {
    d: String,
    charts: Vec<ChartDoc>,
}

#[derive(Serialize)]
struct ChartDoc {
    heights: Vec<String>,
}

fn numberize(v: &mut Value) {
    match v {
        Value::String(s) => {
            if let Ok(n) = s.parse::<serde_json::Number>() {
                *v = Value::Number(n);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(numberize),
        Value::Object(map) => map.values_mut().for_each(numberize),
        _ => {}
    }
}

impl RawInstance {
    /// Reads `{"d": <real>, "charts": [{"heights": [...]}, ...]}`. Heights and
    /// `d` may be JSON numbers or decimal strings; `d` defaults to 1.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            #[serde(default)]
            d: Option<Value>,
            charts: Vec<ChartIn>,
        }
        #[derive(Deserialize)]
        struct ChartIn {
            heights: Vec<Value>,
        }

        let doc: Doc = serde_json::from_str(text)?;
        let strip_height = match &doc.d {
            None => Height::FULL,
            Some(v) => {
                let units = decimal_units(v)?;
                if units <= 0 {
                    return Err(Error::NonPositiveStrip);
                }
                Height::from_units(units as u64)
            }
        };
        let charts = doc
            .charts
            .iter()
            .enumerate()
            .map(|(chart, c)| {
                c.heights
                    .iter()
                    .map(|v| match decimal_units(v)? {
                        u if u < 0 => Err(Error::NonPositiveHeight { chart }),
                        u => Ok(Height::from_units(u as u64)),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(RawInstance { strip_height, charts })
    }
}

fn decimal_units(v: &Value) -> Result<i128> {
    match v {
        Value::Number(n) => parse_signed_units(&n.to_string()),
        Value::String(s) => parse_signed_units(s),
        other => Err(Error::InvalidDecimal(other.to_string())),
    }
}

/// Divides every height by the strip height so the working strip has height 1.
pub fn normalize(raw: RawInstance) -> Result<Instance> {
    if raw.strip_height == Height::ZERO {
        return Err(Error::NonPositiveStrip);
    }
    if raw.charts.is_empty() {
        return Err(Error::EmptyInstance);
    }
    let d = raw.strip_height;
    let mut heights = Vec::with_capacity(raw.charts.len());
    for (chart, bars) in raw.charts.into_iter().enumerate() {
        if bars.is_empty() {
            return Err(Error::EmptyChart { chart });
        }
        let scaled = bars
            .into_iter()
            .map(|h| {
                if h == Height::ZERO {
                    Err(Error::NonPositiveHeight { chart })
                } else if h > d {
                    Err(Error::HeightExceedsStrip { chart })
                } else {
                    match h.scale_down(d) {
                        Height::ZERO => Err(Error::NonPositiveHeight { chart }),
                        s => Ok(s),
                    }
                }
            })
            .collect::<Result<Vec<_>>>()?;
        heights.push(scaled);
    }
    let origin = (0..heights.len()).map(|i| vec![i]).collect();
    Ok(Instance::from_parts(heights, d, origin))
}

/// Start cell (1-based) of every chart, indexed by chart id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Packing {
    start_cells: Vec<u32>,
}

impl Packing {
    pub fn new(start_cells: Vec<u32>) -> Result<Self> {
        if let Some(chart) = start_cells.iter().position(|&s| s == 0) {
            return Err(Error::InvalidStartCell { chart });
        }
        Ok(Packing { start_cells })
    }

    pub(crate) fn from_starts(start_cells: Vec<u32>) -> Self {
        debug_assert!(start_cells.iter().all(|&s| s >= 1));
        Packing { start_cells }
    }

    pub fn start_cells(&self) -> &[u32] {
        &self.start_cells
    }

    pub fn start(&self, chart: usize) -> u32 {
        self.start_cells[chart]
    }

    pub fn len(&self) -> usize {
        self.start_cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.start_cells.is_empty()
    }

    /// Reads `{"start_cell": {"<chart_id>": <cell>, ...}}`; ids must be `0..n`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            start_cell: BTreeMap<String, u32>,
        }
        let doc: Doc = serde_json::from_str(text)?;
        let n = doc.start_cell.len();
        let mut starts = vec![0u32; n];
        for (key, cell) in doc.start_cell {
            let id: usize = key.parse().map_err(|_| Error::PackingMismatch { expected: n, got: n })?;
            if id >= n {
                return Err(Error::PackingMismatch { expected: id + 1, got: n });
            }
            starts[id] = cell;
        }
        Packing::new(starts)
    }

    pub fn to_json(&self) -> String {
        let mut map = serde_json::Map::new();
        for (id, &cell) in self.start_cells.iter().enumerate() {
            map.insert(id.to_string(), Value::from(cell));
        }
        let mut doc = serde_json::Map::new();
        doc.insert("start_cell".into(), Value::Object(map));
        serde_json::to_string_pretty(&Value::Object(doc)).expect("plain data serializes")
    }
}

/// Result of [`evaluate`].
#[derive(Clone, Debug, PartialEq)]
pub struct PackingReport {
    pub feasible: bool,
    /// Number of occupied cells.
    pub length: u32,
    /// Load of every occupied cell.
    pub cell_loads: BTreeMap<u32, Height>,
    pub density: f64,
    /// Cells whose load exceeds the strip capacity.
    pub violations: Vec<(u32, Height)>,
}

impl fmt::Display for PackingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "length={}, density={:.6}, feasible={}", self.length, self.density, self.feasible)
    }
}

/// Computes per-cell loads, feasibility, length and density of a packing.
pub fn evaluate(instance: &Instance, packing: &Packing) -> Result<PackingReport> {
    let loads = CellLoads::of(instance, packing)?;
    let mut cell_loads = BTreeMap::new();
    let mut violations = Vec::new();
    for (cell, &units) in loads.loads.iter().enumerate().skip(1) {
        if units == 0 {
            continue;
        }
        let load = Height::from_units(units);
        cell_loads.insert(cell as u32, load);
        if load > Height::FULL {
            violations.push((cell as u32, load));
        }
    }
    let length = cell_loads.len() as u32;
    let density = instance.total_height().to_f64() / length as f64;
    Ok(PackingReport { feasible: violations.is_empty(), length, cell_loads, density, violations })
}

/// Removes empty cells before and between occupied cells.
///
/// No chart spans an empty cell, so everything to the right of a gap can slide
/// left over it without changing any load.
pub fn left_justify(instance: &Instance, packing: &Packing) -> Result<Packing> {
    let loads = CellLoads::of(instance, packing)?;
    if let Some((cell, load)) = loads.first_violation() {
        return Err(Error::Infeasible { cell, load: load.to_string() });
    }
    Ok(loads.compress(packing))
}

/// Dense cell-load vector, indexed by 1-based cell (index 0 unused).
#[derive(Clone, Debug, Default)]
pub(crate) struct CellLoads {
    loads: Vec<u64>,
}

impl CellLoads {
    pub(crate) fn with_capacity(cells: usize) -> Self {
        CellLoads { loads: vec![0; cells + 2] }
    }

    pub(crate) fn of(instance: &Instance, packing: &Packing) -> Result<Self> {
        if packing.len() != instance.len() {
            return Err(Error::PackingMismatch { expected: instance.len(), got: packing.len() });
        }
        let end = instance
            .charts()
            .iter()
            .zip(packing.start_cells())
            .map(|(c, &s)| s as usize + c.width() - 1)
            .max()
            .unwrap_or(0);
        let mut loads = CellLoads::with_capacity(end);
        for (c, &s) in instance.charts().iter().zip(packing.start_cells()) {
            loads.place(s, c.heights());
        }
        Ok(loads)
    }

    #[inline]
    pub(crate) fn get(&self, cell: usize) -> u64 {
        self.loads.get(cell).copied().unwrap_or(0)
    }

    #[inline]
    pub(crate) fn fits(&self, start: u32, heights: &[Height]) -> bool {
        let start = start as usize;
        heights.iter().enumerate().all(|(k, h)| self.get(start + k) + h.units() <= Height::FULL.units())
    }

    pub(crate) fn place(&mut self, start: u32, heights: &[Height]) {
        let start = start as usize;
        let end = start + heights.len();
        if self.loads.len() <= end {
            self.loads.resize(end + 1, 0);
        }
        for (k, h) in heights.iter().enumerate() {
            self.loads[start + k] += h.units();
        }
    }

    /// Highest occupied cell, 0 when empty.
    pub(crate) fn end(&self) -> u32 {
        self.loads.iter().rposition(|&l| l > 0).unwrap_or(0) as u32
    }

    pub(crate) fn first_violation(&self) -> Option<(u32, Height)> {
        self.loads
            .iter()
            .enumerate()
            .find(|(_, &l)| l > Height::FULL.units())
            .map(|(c, &l)| (c as u32, Height::from_units(l)))
    }

    /// Shifts every start left by the number of empty cells before it.
    pub(crate) fn compress(&self, packing: &Packing) -> Packing {
        let mut empty_before = vec![0u32; self.loads.len()];
        let mut empty = 0u32;
        for (before, &load) in empty_before.iter_mut().zip(&self.loads).skip(1) {
            *before = empty;
            if load == 0 {
                empty += 1;
            }
        }
        Packing::from_starts(packing.start_cells().iter().map(|&s| s - empty_before[s as usize]).collect())
    }
}
