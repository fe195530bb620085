//! Exhaustive generation of increasing tableaux, orbit decomposition under a
//! bijection, and the lattice-path encoding of order ideals as subsets.

use std::collections::HashMap;
use std::hash::Hash;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{Cell, IncreasingTableau, Partition};
use crate::dynamics::OrderIdeal;
use crate::error::{Error, Result};

/// Default cap on the size of any enumerated ground set.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Streams every increasing tableau of `shape` with entries at most `bound`,
/// in lexicographic order of the row-major entry sequence.
///
/// Cells are filled in row-major order. A cell's value is bounded below by
/// its left and upper neighbours and above by `bound` minus the length of the
/// longest right/down path still to be filled from it.
#[derive(Debug, Clone)]
pub struct IncreasingTableaux {
    shape: Partition,
    bound: u32,
    packed_only: bool,
    left: Vec<Option<usize>>,
    up: Vec<Option<usize>>,
    ceiling: Vec<i64>,
    fixed: usize,
    vals: Vec<u32>,
    pos: usize,
    fresh: bool,
    done: bool,
}

impl IncreasingTableaux {
    pub fn new(shape: &Partition, bound: u32, packed_only: bool) -> Self {
        Self::with_prefix(shape, bound, packed_only, &[])
    }

    /// Restricts the stream to tableaux whose first `prefix.len()` row-major
    /// entries equal `prefix`.
    pub fn with_prefix(shape: &Partition, bound: u32, packed_only: bool, prefix: &[u32]) -> Self {
        let cells: Vec<_> = shape.cells().collect();
        let index: HashMap<_, _> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let left = cells
            .iter()
            .map(|c| index.get(&Cell::new(c.row, c.col.wrapping_sub(1))).copied())
            .collect();
        let up = cells
            .iter()
            .map(|c| index.get(&Cell::new(c.row.wrapping_sub(1), c.col)).copied())
            .collect();
        let ceiling = cells
            .iter()
            .map(|c| {
                // longest strictly increasing chain still needed below/right of c
                let tail = (c.row..=shape.len())
                    .filter(|&r| shape.row_len(r) as usize >= c.col)
                    .map(|r| (r - c.row) + (shape.row_len(r) as usize - c.col))
                    .max()
                    .unwrap_or(0);
                bound as i64 - tail as i64
            })
            .collect();
        let mut vals = vec![0; cells.len()];
        let fixed = prefix.len().min(cells.len());
        vals[..fixed].copy_from_slice(&prefix[..fixed]);
        let mut it = IncreasingTableaux {
            shape: shape.clone(),
            bound,
            packed_only,
            left,
            up,
            ceiling,
            fixed,
            vals,
            pos: fixed,
            fresh: true,
            done: false,
        };
        it.done = !(0..fixed).all(|k| it.admissible(k, it.vals[k]));
        it
    }

    fn floor(&self, k: usize) -> u32 {
        let l = self.left[k].map_or(0, |i| self.vals[i]);
        let u = self.up[k].map_or(0, |i| self.vals[i]);
        l.max(u) + 1
    }

    fn admissible(&self, k: usize, v: u32) -> bool {
        v >= self.floor(k) && (v as i64) <= self.ceiling[k]
    }

    fn build(&self) -> IncreasingTableau {
        let mut rest = self.vals.as_slice();
        let rows = self
            .shape
            .parts()
            .iter()
            .map(|&len| {
                let (row, tail) = rest.split_at(len as usize);
                rest = tail;
                row.to_vec()
            })
            .collect();
        IncreasingTableau::from_parts_unchecked(self.shape.clone(), self.bound, rows)
    }
}

impl Iterator for IncreasingTableaux {
    type Item = IncreasingTableau;

    fn next(&mut self) -> Option<IncreasingTableau> {
        let n = self.vals.len();
        while !self.done {
            if self.pos == n {
                let t = self.build();
                if self.pos == self.fixed {
                    self.done = true;
                } else {
                    self.pos -= 1;
                    self.fresh = false;
                }
                if !self.packed_only || t.is_packed_at_bound() {
                    return Some(t);
                }
                continue;
            }
            let candidate = if self.fresh {
                self.floor(self.pos)
            } else {
                self.vals[self.pos] + 1
            };
            if (candidate as i64) <= self.ceiling[self.pos] {
                self.vals[self.pos] = candidate;
                self.pos += 1;
                self.fresh = true;
            } else if self.pos == self.fixed {
                self.done = true;
            } else {
                self.pos -= 1;
                self.fresh = false;
            }
        }
        None
    }
}

/// Stream of `Inc^m(shape)`, or of its packed part when `packed_only`.
pub fn enumerate_increasing(shape: &Partition, bound: u32, packed_only: bool) -> IncreasingTableaux {
    IncreasingTableaux::new(shape, bound, packed_only)
}

/// Standard Young tableaux of `shape`.
pub fn enumerate_syt(shape: &Partition) -> IncreasingTableaux {
    IncreasingTableaux::new(shape, shape.size(), true)
}

/// Collects a stream, failing as soon as it yields more than `budget` items.
pub fn collect_within<I: Iterator>(iter: I, budget: usize) -> Result<Vec<I::Item>> {
    let mut out = Vec::new();
    for item in iter {
        if out.len() == budget {
            return Err(Error::Budget {
                size: budget + 1,
                budget,
            });
        }
        out.push(item);
    }
    Ok(out)
}

/// Same output as collecting [`enumerate_increasing`], with the search split
/// into prefix subtrees that run on the rayon pool and are concatenated in
/// prefix order.
pub fn enumerate_increasing_par(
    shape: &Partition,
    bound: u32,
    packed_only: bool,
    budget: usize,
) -> Result<Vec<IncreasingTableau>> {
    let depth = shape.size().min(3) as usize;
    let prefixes = prefixes_of(shape, bound, depth);
    let chunks: Vec<Result<Vec<IncreasingTableau>>> = prefixes
        .par_iter()
        .map(|p| collect_within(IncreasingTableaux::with_prefix(shape, bound, packed_only, p), budget))
        .collect();
    let mut out = Vec::new();
    for chunk in chunks {
        out.extend(chunk?);
        if out.len() > budget {
            return Err(Error::Budget {
                size: out.len(),
                budget,
            });
        }
    }
    Ok(out)
}

/// All admissible row-major prefixes of the given depth, in lexicographic order.
fn prefixes_of(shape: &Partition, bound: u32, depth: usize) -> Vec<Vec<u32>> {
    let mut frontier = vec![Vec::new()];
    for _ in 0..depth {
        frontier = frontier
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                let probe = IncreasingTableaux::with_prefix(shape, bound, false, &p);
                if probe.done {
                    return Vec::new();
                }
                let k = p.len();
                (probe.floor(k)..=probe.ceiling[k].max(0) as u32)
                    .filter(|&v| probe.admissible(k, v))
                    .map(|v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                    .collect()
            })
            .collect();
    }
    frontier
}

/// One cycle of a bijection: its least element and its length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit<T> {
    pub representative: T,
    pub length: usize,
}

/// Cycles of a bijection on a finite set, sorted by representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition<T> {
    pub orbits: Vec<Orbit<T>>,
    pub total: usize,
    /// Least common multiple of the orbit lengths.
    pub order: usize,
}

impl<T> OrbitDecomposition<T> {
    /// Orbit lengths in representative order.
    pub fn lengths(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.length).collect()
    }

    /// Orbit lengths, ascending.
    pub fn length_profile(&self) -> Vec<usize> {
        let mut v = self.lengths();
        v.sort_unstable();
        v
    }
}

/// Splits `ground` into cycles of `step`.
///
/// Fails with a closure violation if `step` leaves the set or is not injective
/// on it, and with a malformed-input error if `ground` has duplicates.
pub fn orbit_decomposition<T, F>(ground: &[T], step: F) -> Result<OrbitDecomposition<T>>
where
    T: Clone + Ord + Hash + std::fmt::Debug,
    F: Fn(&T) -> T,
{
    let mut index = HashMap::with_capacity(ground.len());
    for (i, x) in ground.iter().enumerate() {
        if index.insert(x, i).is_some() {
            return Err(Error::Malformed(format!("ground set contains {x:?} twice")));
        }
    }
    let mut seen = vec![false; ground.len()];
    let mut orbits = Vec::new();
    for start in 0..ground.len() {
        if seen[start] {
            continue;
        }
        let mut rep = start;
        let mut length = 0;
        let mut cur = start;
        loop {
            seen[cur] = true;
            length += 1;
            if ground[cur] < ground[rep] {
                rep = cur;
            }
            let image = step(&ground[cur]);
            let next = *index
                .get(&image)
                .ok_or_else(|| Error::Closure(format!("{:?} maps outside the ground set to {image:?}", ground[cur])))?;
            if next == start {
                break;
            }
            if seen[next] {
                return Err(Error::Closure(format!(
                    "{image:?} is hit twice; the map is not injective"
                )));
            }
            cur = next;
        }
        orbits.push(Orbit {
            representative: ground[rep].clone(),
            length,
        });
    }
    orbits.sort_by(|a, b| a.representative.cmp(&b.representative));
    let order = orbits.iter().fold(1, |acc, o| acc.lcm(&o.length));
    Ok(OrbitDecomposition {
        orbits,
        total: ground.len(),
        order,
    })
}

/// Reads the boundary of the ideal's diagram (drawn lower-right-justified)
/// from the bottom-left corner of the `a × b` box, and returns the positions
/// `1..=a+b` of the `a` vertical steps. The empty ideal gives `{b+1..a+b}`,
/// the full ideal gives `{1..a}`.
pub fn ideal_to_subset(ideal: &OrderIdeal) -> Vec<u32> {
    (1..=ideal.rows())
        .map(|i| ideal.cols() - ideal.row_len(i) + i)
        .collect()
}

/// Inverse of [`ideal_to_subset`].
pub fn subset_to_ideal(rows: u32, cols: u32, subset: &[u32]) -> Result<OrderIdeal> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != rows as usize || s.len() != subset.len() {
        return Err(Error::Domain(format!("{subset:?} is not a {rows}-element set")));
    }
    if s.iter().any(|&x| x == 0 || x > rows + cols) {
        return Err(Error::Domain(format!("{subset:?} is not inside 1..={}", rows + cols)));
    }
    let profile = s.iter().enumerate().map(|(i, &x)| cols + i as u32 + 1 - x).collect();
    OrderIdeal::new(rows, cols, profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::k_promote;

    fn rect(a: u32, b: u32) -> Partition {
        Partition::rectangle(a, b)
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_increasing(&rect(2, 2), 4, false).count(), 6);
        assert_eq!(enumerate_syt(&Partition::new(vec![2, 2, 2]).unwrap()).count(), 5);
        assert_eq!(enumerate_syt(&Partition::new(vec![1]).unwrap()).count(), 1);
        assert_eq!(enumerate_increasing(&rect(1, 1), 1, false).count(), 1);
        assert_eq!(enumerate_increasing(&rect(2, 2), 2, false).count(), 0);
    }

    #[test]
    fn empty_shape() {
        let all: Vec<_> = enumerate_increasing(&Partition::empty(), 3, false).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(enumerate_increasing(&Partition::empty(), 3, true).count(), 0);
        assert_eq!(enumerate_syt(&Partition::empty()).count(), 1);
    }

    #[test]
    fn lexicographic_and_distinct() {
        let all: Vec<_> = enumerate_increasing(&Partition::new(vec![3, 2]).unwrap(), 5, false).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn prefix_split_matches_serial() {
        for (shape, m, packed) in [
            (rect(3, 3), 6, false),
            (rect(3, 4), 7, true),
            (Partition::new(vec![3, 2, 1]).unwrap(), 6, false),
        ] {
            let serial: Vec<_> = enumerate_increasing(&shape, m, packed).collect();
            assert_eq!(
                enumerate_increasing_par(&shape, m, packed, DEFAULT_BUDGET).unwrap(),
                serial
            );
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            collect_within(enumerate_increasing(&rect(2, 2), 4, false), 5),
            Err(Error::Budget { .. })
        ));
        assert_eq!(
            collect_within(enumerate_increasing(&rect(2, 2), 4, false), 6)
                .unwrap()
                .len(),
            6
        );
        assert!(enumerate_increasing_par(&rect(3, 3), 6, false, 10).is_err());
    }

    #[test]
    fn orbit_examples() {
        let packed: Vec<_> = enumerate_increasing(&rect(3, 2), 5, true).collect();
        let d = orbit_decomposition(&packed, k_promote).unwrap();
        assert_eq!(d.lengths(), vec![5]);
        let all: Vec<_> = enumerate_increasing(&rect(3, 4), 7, false).collect();
        let d = orbit_decomposition(&all, k_promote).unwrap();
        assert_eq!(d.lengths(), vec![7; 5]);
        assert_eq!(d.total, 35);
        assert_eq!(d.order, 7);
        let d = orbit_decomposition(&[42u32], |&x| x).unwrap();
        assert_eq!(d.lengths(), vec![1]);
    }

    #[test]
    fn orbit_errors() {
        assert!(matches!(
            orbit_decomposition(&[1u32, 2, 3], |&x| x + 1),
            Err(Error::Closure(_))
        ));
        assert!(matches!(
            orbit_decomposition(&[1u32, 2, 3], |_| 1),
            Err(Error::Closure(_))
        ));
        assert!(matches!(
            orbit_decomposition(&[1u32, 1], |&x| x),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn representatives_are_minimal() {
        let d = orbit_decomposition(&[0u32, 1, 2, 3, 4, 5], |&x| (x + 2) % 6).unwrap();
        assert_eq!(
            d.orbits.iter().map(|o| o.representative).collect::<Vec<_>>(),
            vec![0, 1]
        );
        assert_eq!(d.length_profile(), vec![3, 3]);
    }

    #[test]
    fn subset_encoding() {
        assert_eq!(ideal_to_subset(&OrderIdeal::empty(3, 4)), vec![5, 6, 7]);
        assert_eq!(ideal_to_subset(&OrderIdeal::full(3, 4)), vec![1, 2, 3]);
        for j in OrderIdeal::all(3, 4) {
            assert_eq!(subset_to_ideal(3, 4, &ideal_to_subset(&j)).unwrap(), j);
        }
        assert!(subset_to_ideal(3, 4, &[1, 2]).is_err());
        assert!(subset_to_ideal(3, 4, &[1, 2, 8]).is_err());
        assert!(subset_to_ideal(3, 4, &[1, 1, 2]).is_err());
    }
}
