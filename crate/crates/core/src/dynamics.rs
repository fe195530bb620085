//! K-promotion, K-Bender–Knuth toggles, K-evacuation, rowmotion on order
//! ideals of `[a] × [b]`, and the bijection `Θ` between rectangular increasing
//! tableaux with bound `a + b` and order ideals.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{Cell, IncreasingTableau, Partition};
use crate::error::{Error, Result};

type Grid = Vec<Vec<Option<u32>>>;

fn at(grid: &Grid, c: Cell) -> Option<u32> {
    grid.get(c.row - 1).and_then(|r| r.get(c.col - 1)).copied().flatten()
}

fn in_grid(grid: &Grid, c: Cell) -> bool {
    c.row >= 1 && c.col >= 1 && grid.get(c.row - 1).is_some_and(|r| c.col <= r.len())
}

fn south_east(grid: &Grid, c: Cell) -> impl Iterator<Item = Cell> + '_ {
    [Cell::new(c.row + 1, c.col), Cell::new(c.row, c.col + 1)]
        .into_iter()
        .filter(move |&n| in_grid(grid, n))
}

fn orthogonal(shape: &Partition, c: Cell) -> impl Iterator<Item = Cell> + '_ {
    let mut out = Vec::with_capacity(4);
    if c.row > 1 {
        out.push(Cell::new(c.row - 1, c.col));
    }
    if c.col > 1 {
        out.push(Cell::new(c.row, c.col - 1));
    }
    out.push(Cell::new(c.row + 1, c.col));
    out.push(Cell::new(c.row, c.col + 1));
    out.into_iter().filter(move |&n| shape.contains(n))
}

/// K-promotion by simultaneous K-jeu-de-taquin slides.
///
/// Deletes the entry 1 (if present), slides the holes outward until none has
/// a labelled south or east neighbour, fills the holes with `m + 1` and
/// decrements every entry.
pub fn k_promote(t: &IncreasingTableau) -> IncreasingTableau {
    let m = t.bound();
    let mut grid: Grid = t.rows().iter().map(|r| r.iter().map(|&v| Some(v)).collect()).collect();

    let mut holes: Vec<Cell> = t.shape().cells().filter(|&c| t.get(c) == Some(1)).collect();
    for h in &holes {
        grid[h.row - 1][h.col - 1] = None;
    }

    loop {
        // Read phase: every hole picks the minimum label among its south/east
        // neighbours before any label is moved.
        let moves: Vec<(Cell, u32, Vec<Cell>)> = holes
            .iter()
            .filter_map(|&h| {
                let min = south_east(&grid, h).filter_map(|n| at(&grid, n)).min()?;
                let sources = south_east(&grid, h).filter(|&n| at(&grid, n) == Some(min)).collect();
                Some((h, min, sources))
            })
            .collect();
        if moves.is_empty() {
            break;
        }
        let mut next: Vec<Cell> = holes
            .iter()
            .copied()
            .filter(|h| !moves.iter().any(|(m, _, _)| m == h))
            .collect();
        for (hole, label, sources) in moves {
            grid[hole.row - 1][hole.col - 1] = Some(label);
            for s in sources {
                grid[s.row - 1][s.col - 1] = None;
                if !next.contains(&s) {
                    next.push(s);
                }
            }
        }
        holes = next;
    }
    debug_assert!(holes
        .iter()
        .all(|&h| south_east(&grid, h).all(|n| at(&grid, n).is_none())));

    let rows = grid
        .into_iter()
        .map(|r| r.into_iter().map(|v| v.unwrap_or(m + 1) - 1).collect())
        .collect();
    IncreasingTableau::from_parts_unchecked(t.shape().clone(), m, rows)
}

fn check_toggle_index(t: &IncreasingTableau, i: u32) -> Result<()> {
    if i == 0 || i >= t.bound() {
        return Err(Error::Domain(format!(
            "toggle index {i} outside 1..{} for bound {}",
            t.bound(),
            t.bound()
        )));
    }
    Ok(())
}

/// The K-Bender–Knuth involution `ρ_i`.
///
/// Among cells labelled `i` or `i + 1`, a cell with no orthogonal neighbour
/// carrying the other label swaps to the other label; all other cells are
/// untouched.
pub fn k_bk_toggle(t: &IncreasingTableau, i: u32) -> Result<IncreasingTableau> {
    check_toggle_index(t, i)?;
    Ok(toggle_unchecked(t, i))
}

fn toggle_unchecked(t: &IncreasingTableau, i: u32) -> IncreasingTableau {
    let shape = t.shape();
    let rows = t
        .rows()
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, &v)| {
                    let other = if v == i {
                        i + 1
                    } else if v == i + 1 {
                        i
                    } else {
                        return v;
                    };
                    let cell = Cell::new(r + 1, c + 1);
                    if orthogonal(shape, cell).any(|n| t.get(n) == Some(other)) {
                        v
                    } else {
                        other
                    }
                })
                .collect()
        })
        .collect();
    IncreasingTableau::from_parts_unchecked(shape.clone(), t.bound(), rows)
}

/// Applies `ρ_1`, then `ρ_2`, …, then `ρ_last`.
fn toggle_sweep_up(t: &IncreasingTableau, last: u32) -> IncreasingTableau {
    (1..=last).fold(t.clone(), |acc, i| toggle_unchecked(&acc, i))
}

/// K-promotion as the toggle product `ρ_{m-1} ∘ … ∘ ρ_1`.
pub fn k_promote_toggles(t: &IncreasingTableau) -> IncreasingTableau {
    toggle_sweep_up(t, t.bound().saturating_sub(1))
}

/// Inverse K-promotion, `ρ_1 ∘ … ∘ ρ_{m-1}`.
pub fn k_promote_inverse(t: &IncreasingTableau) -> IncreasingTableau {
    (1..t.bound()).rev().fold(t.clone(), |acc, i| toggle_unchecked(&acc, i))
}

/// K-evacuation, `∂_1 ∘ ∂_2 ∘ … ∘ ∂_{m-1}` with `∂_j = ρ_j ∘ … ∘ ρ_1`.
/// The longest partial promotion is applied first.
pub fn k_evacuate(t: &IncreasingTableau) -> IncreasingTableau {
    (1..t.bound()).rev().fold(t.clone(), |acc, j| toggle_sweep_up(&acc, j))
}

/// `k_promote` iterated `steps` times.
pub fn k_promote_pow(t: &IncreasingTableau, steps: usize) -> IncreasingTableau {
    (0..steps).fold(t.clone(), |acc, _| k_promote(&acc))
}

/// An order ideal of the grid poset `[a] × [b]`, stored as the row lengths of
/// its Young diagram (row `i` holds the elements `(i, 1..=profile[i])`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderIdeal {
    rows: u32,
    cols: u32,
    profile: Vec<u32>,
}

impl OrderIdeal {
    /// Trailing zeros in `profile` are dropped.
    pub fn new(rows: u32, cols: u32, mut profile: Vec<u32>) -> Result<Self> {
        while profile.last() == Some(&0) {
            profile.pop();
        }
        if profile.len() > rows as usize {
            return Err(Error::Domain(format!("profile {profile:?} has more than {rows} rows")));
        }
        if profile.iter().any(|&p| p > cols) || profile.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "profile {profile:?} is not a partition inside {rows}x{cols}"
            )));
        }
        Ok(OrderIdeal { rows, cols, profile })
    }

    pub fn empty(rows: u32, cols: u32) -> Self {
        OrderIdeal {
            rows,
            cols,
            profile: Vec::new(),
        }
    }

    pub fn full(rows: u32, cols: u32) -> Self {
        Self::new(rows, cols, vec![cols; rows as usize]).expect("full rectangle is a valid ideal")
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    pub fn profile(&self) -> &[u32] {
        &self.profile
    }

    /// Row length of row `i` (1-based), zero past the profile.
    pub fn row_len(&self, i: u32) -> u32 {
        self.profile.get(i as usize - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, i: u32, j: u32) -> bool {
        i >= 1 && i <= self.rows && j >= 1 && j <= self.row_len(i)
    }

    pub fn size(&self) -> u32 {
        self.profile.iter().sum()
    }

    /// All `binom(a + b, a)` ideals of `[a] × [b]`, ordered by profile.
    pub fn all(rows: u32, cols: u32) -> Vec<OrderIdeal> {
        fn go(rows: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == rows as usize {
                out.push(cur.clone());
                return;
            }
            for p in 0..=max {
                cur.push(p);
                go(rows, p, cur, out);
                cur.pop();
            }
        }
        let mut profiles = Vec::new();
        go(rows, cols, &mut Vec::new(), &mut profiles);
        let mut out: Vec<_> = profiles
            .into_iter()
            .map(|p| OrderIdeal::new(rows, cols, p).unwrap())
            .collect();
        out.sort();
        out
    }
}

impl fmt::Display for OrderIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.profile.iter().map(u32::to_string).collect();
        write!(f, "[{}]x[{}]:({})", self.rows, self.cols, parts.join(","))
    }
}

/// Rowmotion: the ideal generated by the minimal elements of the complement.
pub fn rowmotion(ideal: &OrderIdeal) -> OrderIdeal {
    let (a, b) = (ideal.rows, ideal.cols);
    // Minimal elements of the complement sit at (i, p_i + 1) whenever the cell
    // above is in the ideal (or i = 1).
    let minimal: Vec<(u32, u32)> = (1..=a)
        .filter_map(|i| {
            let p = ideal.row_len(i);
            let covered_above = i == 1 || ideal.row_len(i - 1) > p;
            (p < b && covered_above).then_some((i, p + 1))
        })
        .collect();
    let profile = (1..=a)
        .map(|i| {
            minimal
                .iter()
                .filter(|&&(r, _)| r >= i)
                .map(|&(_, c)| c)
                .max()
                .unwrap_or(0)
        })
        .collect();
    OrderIdeal::new(a, b, profile).expect("rowmotion preserves the box")
}

fn rectangle_params(t: &IncreasingTableau) -> Result<(u32, u32)> {
    let (a, b) = t
        .shape()
        .as_rectangle()
        .ok_or_else(|| Error::Domain(format!("theta needs a rectangular shape, got {}", t.shape())))?;
    if t.bound() != a + b {
        return Err(Error::Domain(format!(
            "theta needs bound a+b = {}, got {}",
            a + b,
            t.bound()
        )));
    }
    Ok((a, b))
}

/// `Θ`: the cells with `T(i, j) = i + j` form an order filter; its 180°
/// rotation `{(a-i+1, b-j+1)}` is the returned ideal.
pub fn theta(t: &IncreasingTableau) -> Result<OrderIdeal> {
    let (a, b) = rectangle_params(t)?;
    let mut profile = vec![0; a as usize];
    for (r, row) in t.rows().iter().enumerate() {
        let i = r as u32 + 1;
        let on_filter = row.iter().enumerate().filter(|&(c, &v)| v == i + c as u32 + 1).count();
        profile[(a - i) as usize] = on_filter as u32;
    }
    OrderIdeal::new(a, b, profile).map_err(|_| Error::Internal(format!("filter of {t} is not an order filter")))
}

/// Inverse of [`theta`]: `i + j` on the rotated ideal, `i + j - 1` elsewhere.
pub fn theta_inv(ideal: &OrderIdeal) -> IncreasingTableau {
    let (a, b) = (ideal.rows, ideal.cols);
    let rows = (1..=a)
        .map(|i| {
            (1..=b)
                .map(|j| {
                    if ideal.contains(a - i + 1, b - j + 1) {
                        i + j
                    } else {
                        i + j - 1
                    }
                })
                .collect()
        })
        .collect();
    IncreasingTableau::from_parts_unchecked(Partition::rectangle(a, b), a + b, rows)
}

/// The tableau `T(i, j) = i + j - 1` on `a × b`, with bound `a + b`.
pub fn minimal_tableau(a: u32, b: u32) -> IncreasingTableau {
    theta_inv(&OrderIdeal::empty(a, b))
}

/// The K-promotion orbit of the minimal rectangular tableau, in promotion order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalOrbit {
    pub tableaux: Vec<IncreasingTableau>,
}

impl ExceptionalOrbit {
    pub fn len(&self) -> usize {
        self.tableaux.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tableaux.is_empty()
    }

    pub fn contains(&self, t: &IncreasingTableau) -> bool {
        self.tableaux.contains(t)
    }
}

pub fn exceptional_orbit(a: u32, b: u32) -> Result<ExceptionalOrbit> {
    if a == 0 || b == 0 {
        return Err(Error::Domain(format!("exceptional orbit needs a, b >= 1, got {a}x{b}")));
    }
    let start = minimal_tableau(a, b);
    let mut tableaux = vec![start.clone()];
    let mut cur = k_promote(&start);
    while cur != start {
        tableaux.push(cur.clone());
        cur = k_promote(&cur);
    }
    Ok(ExceptionalOrbit { tableaux })
}
