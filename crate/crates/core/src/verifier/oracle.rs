//! Brute-force reference implementations. They read the incidence through
//! the public boolean matrix only and work on plain integer masks, so they
//! share no code with the bitset algorithms they check.

use std::collections::HashSet;

use crate::context::FormalContext;
use crate::error::{Error, Result};

/// Largest object count the subset-closure oracle accepts.
pub const ORACLE_MAX_OBJECTS: usize = 20;

/// Incidence as one attribute mask per object and one object mask per attribute.
#[derive(Debug, Clone)]
pub struct MaskContext {
    pub objects: usize,
    pub attributes: usize,
    rows: Vec<u64>,
    cols: Vec<u64>,
}

impl MaskContext {
    pub fn new(context: &FormalContext) -> Result<Self> {
        let (a, b) = (context.num_objects(), context.num_attributes());
        if a > 63 || b > 63 {
            return Err(Error::Guard(format!("{a}x{b} context does not fit the mask oracle")));
        }
        let matrix = context.incidence_matrix();
        let mut rows = vec![0u64; a];
        let mut cols = vec![0u64; b];
        for (g, row) in matrix.iter().enumerate() {
            for (m, &x) in row.iter().enumerate() {
                if x {
                    rows[g] |= 1 << m;
                    cols[m] |= 1 << g;
                }
            }
        }
        Ok(MaskContext {
            objects: a,
            attributes: b,
            rows,
            cols,
        })
    }

    pub fn all_objects(&self) -> u64 {
        (1u64 << self.objects) - 1
    }

    pub fn all_attributes(&self) -> u64 {
        (1u64 << self.attributes) - 1
    }

    pub fn intent(&self, objects: u64) -> u64 {
        (0..self.objects)
            .filter(|g| objects >> g & 1 == 1)
            .fold(self.all_attributes(), |acc, g| acc & self.rows[g])
    }

    pub fn extent(&self, attributes: u64) -> u64 {
        (0..self.attributes)
            .filter(|m| attributes >> m & 1 == 1)
            .fold(self.all_objects(), |acc, m| acc & self.cols[m])
    }

    pub fn closure(&self, objects: u64) -> u64 {
        self.extent(self.intent(objects))
    }

    pub fn incident(&self, g: usize, m: usize) -> bool {
        self.rows[g] >> m & 1 == 1
    }

    /// Objects lacking attribute `m`.
    pub fn co_extent(&self, m: usize) -> u64 {
        self.all_objects() & !self.cols[m]
    }

    /// The literal two-clause definition of an `R`-mixed generator.
    pub fn is_mixgen(&self, r: u64, s: u64) -> bool {
        let intent = self.intent(s);
        let removal_critical = (0..self.objects)
            .filter(|g| (s & r) >> g & 1 == 1)
            .all(|g| self.intent(s & !(1 << g)) != intent);
        let addition_critical = (0..self.objects)
            .filter(|h| (s | r) >> h & 1 == 0)
            .all(|h| self.intent(s | 1 << h) != intent);
        removal_critical && addition_critical
    }

    /// Some attribute `n ≠ m` shared by all of `s` is missing at `h`.
    pub fn strongly_avoids(&self, m: usize, s: u64, h: usize) -> bool {
        let intent = self.intent(s) & !(1 << m);
        intent & !self.rows[h] != 0
    }
}

/// Number of distinct closures of all object subsets.
pub fn oracle_concept_count(context: &FormalContext) -> Result<usize> {
    let a = context.num_objects();
    if a > ORACLE_MAX_OBJECTS {
        return Err(Error::Guard(format!(
            "subset-closure oracle refuses {a} objects (limit {ORACLE_MAX_OBJECTS})"
        )));
    }
    let k = MaskContext::new(context)?;
    let closures: HashSet<u64> = (0..1u64 << a).map(|s| k.closure(s)).collect();
    Ok(closures.len())
}

/// Object masks in lectic order: object 0 is the most significant position.
pub fn lectic_subsets(n: usize) -> impl Iterator<Item = u64> {
    (0..1u64 << n).map(move |code| {
        (0..n)
            .filter(|j| code >> (n - 1 - j) & 1 == 1)
            .fold(0u64, |acc, g| acc | 1 << g)
    })
}

/// The lectically least `R`-mixed generator closing to `extent`, found by
/// scanning every object subset.
pub fn oracle_lex_min_mixgen(k: &MaskContext, r: u64, extent: u64) -> Option<u64> {
    lectic_subsets(k.objects).find(|&s| k.closure(s) == extent && k.is_mixgen(r, s))
}

/// Largest `j` with a `j × j` subcontext that is a contranominal scale up to
/// reordering, by trying object subsets, attribute subsets and bijections.
pub fn oracle_contrast(context: &FormalContext) -> Result<usize> {
    let (a, b) = (context.num_objects(), context.num_attributes());
    if a > 6 || b > 6 {
        return Err(Error::Guard(format!("contrast oracle refuses a {a}x{b} context")));
    }
    let k = MaskContext::new(context)?;
    for j in (1..=a.min(b)).rev() {
        for objects in subsets_of_size(a, j) {
            for attributes in subsets_of_size(b, j) {
                if permutations(j).any(|p| {
                    (0..j).all(|x| {
                        (0..j).all(|y| k.incident(objects[x], attributes[p[y]]) == (x != y))
                    })
                }) {
                    return Ok(j);
                }
            }
        }
    }
    Ok(0)
}

fn subsets_of_size(n: usize, j: usize) -> Vec<Vec<usize>> {
    (0..1u64 << n)
        .filter(|s| s.count_ones() as usize == j)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

fn permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut all = vec![];
    let mut current: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut current, &mut all);
    all.into_iter()
}

fn heap_permute(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, items, out);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn counts() {
        assert_eq!(oracle_concept_count(&samples::running_example()).unwrap(), 15);
        assert_eq!(oracle_concept_count(&FormalContext::contranominal(2)).unwrap(), 4);
        assert_eq!(oracle_concept_count(&samples::resistant_context()).unwrap(), 22);
        assert_eq!(oracle_concept_count(&FormalContext::empty(0, 0)).unwrap(), 1);
        assert!(matches!(
            oracle_concept_count(&FormalContext::empty(21, 1)),
            Err(Error::Guard(_))
        ));
    }

    #[test]
    fn lectic_order_of_masks() {
        let order: Vec<u64> = lectic_subsets(2).collect();
        // ∅, {1}, {0}, {0,1}
        assert_eq!(order, vec![0b00, 0b10, 0b01, 0b11]);
    }

    #[test]
    fn permutations_are_complete() {
        let mut all: Vec<Vec<usize>> = permutations(4).collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 24);
    }

    #[test]
    fn contrast_by_brute_force() {
        assert_eq!(oracle_contrast(&FormalContext::contranominal(4)).unwrap(), 4);
        assert_eq!(oracle_contrast(&FormalContext::full(3, 3)).unwrap(), 0);
        assert_eq!(oracle_contrast(&FormalContext::empty(2, 3)).unwrap(), 1);
    }

    #[test]
    fn mixgen_definition() {
        let k = samples::running_example();
        let masks = MaskContext::new(&k).unwrap();
        let r = masks.co_extent(0);
        assert_eq!(r, 0b00011);
        // {h,i,j,k} is a mixed generator; {g,h,i,j,k} and {h,j} are not.
        assert!(masks.is_mixgen(r, 0b11110));
        assert!(!masks.is_mixgen(r, 0b11111));
        assert!(!masks.is_mixgen(r, 0b01010));
    }
}
