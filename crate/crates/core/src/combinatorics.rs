//! Partitions, increasing tableaux, hook lengths and descent statistics.
//!
//! Cells are addressed 1-based with `(1, 1)` in the upper-left corner, rows
//! growing downward (English notation). Entries of a tableau are stored
//! row-major; the entry bound `m` is carried separately and is never inferred
//! from the entries.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition: a weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Malformed(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Malformed(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The `rows × cols` rectangle `(cols^rows)`.
    pub fn rectangle(rows: u32, cols: u32) -> Self {
        if cols == 0 {
            return Partition::empty();
        }
        Partition(vec![cols; rows as usize])
    }

    /// The toothbrush shape `(2, 2, 2, 1^{k-2})`.
    pub fn toothbrush(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("toothbrush shape needs k >= 2, got {k}")));
        }
        let mut parts = vec![2; 3];
        parts.extend(std::iter::repeat_n(1, k as usize - 2));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of cells, `N`.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Length of row `row` (1-based); zero past the last row.
    pub fn row_len(&self, row: usize) -> u32 {
        if row == 0 {
            return 0;
        }
        self.0.get(row - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.row_len(cell.row) as usize
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=width)
                .map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32)
                .collect(),
        )
    }

    /// `Some((a, b))` when the shape is an `a × b` rectangle with `a, b ≥ 1`.
    pub fn as_rectangle(&self) -> Option<(u32, u32)> {
        let first = *self.0.first()?;
        self.0
            .iter()
            .all(|&p| p == first)
            .then_some((self.0.len() as u32, first))
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len as usize).map(move |c| Cell::new(r + 1, c)))
    }

    /// Every partition of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: u32) -> Vec<Partition> {
        fn go(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition(current.clone()));
                return;
            }
            for p in (1..=remaining.min(max_part)).rev() {
                current.push(p);
                go(remaining - p, p, current, out);
                current.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A 1-based cell position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

/// Hook length `arm + leg + 1` of every cell, as a grid congruent to `shape`.
pub fn hook_lengths(shape: &Partition) -> Vec<Vec<u32>> {
    let conj = shape.conjugate();
    shape
        .parts()
        .iter()
        .enumerate()
        .map(|(r, &len)| {
            (0..len as usize)
                .map(|c| {
                    let arm = len - c as u32 - 1;
                    let leg = conj.parts()[c] - r as u32 - 1;
                    arm + leg + 1
                })
                .collect()
        })
        .collect()
}

fn check_congruent(shape: &Partition, rows: &[Vec<u32>]) -> Result<()> {
    if rows.len() != shape.len() || rows.iter().zip(shape.parts()).any(|(r, &p)| r.len() != p as usize) {
        let got: Vec<usize> = rows.iter().map(Vec::len).collect();
        return Err(Error::Malformed(format!(
            "entries with row lengths {got:?} do not fit shape {shape}"
        )));
    }
    Ok(())
}

/// True iff all row-adjacent and column-adjacent pairs strictly increase.
pub fn is_increasing(shape: &Partition, rows: &[Vec<u32>]) -> Result<bool> {
    check_congruent(shape, rows)?;
    let rows_ok = rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
    let cols_ok = rows
        .windows(2)
        .all(|pair| pair[1].iter().zip(&pair[0]).all(|(below, above)| above < below));
    Ok(rows_ok && cols_ok)
}

/// Which descent rule to use for tableaux with repeated entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DescentConvention {
    /// `i` is a descent iff some `i + 1` sits in a strictly lower row than
    /// some `i`. Agrees with the classical rule on standard tableaux.
    #[default]
    LowerRow,
}

impl fmt::Display for DescentConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DescentConvention::LowerRow => f.write_str("LOWER_ROW"),
        }
    }
}

/// An increasing tableau of a given shape with entries bounded by `bound`.
///
/// Ordering compares shape, then bound, then the row-major entry sequence,
/// which is the canonical order used for orbit representatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IncreasingTableau {
    shape: Partition,
    bound: u32,
    rows: Vec<Vec<u32>>,
}

impl IncreasingTableau {
    pub fn new(shape: Partition, bound: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        if !is_increasing(&shape, &rows)? {
            return Err(Error::Malformed(format!(
                "entries {rows:?} are not strictly increasing"
            )));
        }
        if rows.iter().flatten().any(|&v| v == 0) {
            return Err(Error::Malformed("entries must be positive".into()));
        }
        if let Some(&v) = rows.iter().flatten().find(|&&v| v > bound) {
            return Err(Error::Malformed(format!("entry {v} exceeds the bound {bound}")));
        }
        Ok(IncreasingTableau { shape, rows, bound })
    }

    /// Builds a tableau whose shape is read off the row lengths.
    pub fn from_rows(bound: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(|r| r.len() as u32).collect())?;
        Self::new(shape, bound, rows)
    }

    /// Caller guarantees validity; used by the dynamics on already-checked data.
    pub(crate) fn from_parts_unchecked(shape: Partition, bound: u32, rows: Vec<Vec<u32>>) -> Self {
        debug_assert!(is_increasing(&shape, &rows).unwrap_or(false));
        IncreasingTableau { shape, rows, bound }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn get(&self, cell: Cell) -> Option<u32> {
        self.rows
            .get(cell.row.checked_sub(1)?)?
            .get(cell.col.checked_sub(1)?)
            .copied()
    }

    /// The largest entry, or 0 for the empty tableau.
    pub fn max_entry(&self) -> u32 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// True iff every value `1..=max(T)` occurs.
    pub fn is_packed(&self) -> bool {
        let values: BTreeSet<u32> = self.rows.iter().flatten().copied().collect();
        values.len() as u32 == self.max_entry()
    }

    /// Membership in the packed family with maximum entry exactly `bound`.
    pub fn is_packed_at_bound(&self) -> bool {
        self.max_entry() == self.bound && self.is_packed()
    }

    /// Row-major entry sequence.
    pub fn entries(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().flatten().copied()
    }

    pub fn with_bound(&self, bound: u32) -> Result<Self> {
        Self::new(self.shape.clone(), bound, self.rows.clone())
    }

    pub fn descent_set(&self, conv: DescentConvention) -> BTreeSet<u32> {
        match conv {
            DescentConvention::LowerRow => {
                let max = self.max_entry() as usize;
                // (highest row, lowest row) per value
                let mut span = vec![None::<(usize, usize)>; max + 2];
                for (r, row) in self.rows.iter().enumerate() {
                    for &v in row {
                        let e = span[v as usize].get_or_insert((r, r));
                        e.0 = e.0.min(r);
                        e.1 = e.1.max(r);
                    }
                }
                (1..max)
                    .filter(|&i| match (span[i], span[i + 1]) {
                        (Some((top_i, _)), Some((_, bottom_next))) => bottom_next > top_i,
                        _ => false,
                    })
                    .map(|i| i as u32)
                    .collect()
            }
        }
    }

    pub fn major_index(&self, conv: DescentConvention) -> u32 {
        self.descent_set(conv).iter().sum()
    }
}

impl fmt::Display for IncreasingTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct RawTableau {
    shape: Partition,
    bound: u32,
    rows: Vec<Vec<u32>>,
}

impl<'de> Deserialize<'de> for IncreasingTableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTableau::deserialize(d)?;
        IncreasingTableau::new(raw.shape, raw.bound, raw.rows).map_err(serde::de::Error::custom)
    }
}
