//! Exhaustive search over contexts without a contranominal scale of size `c`.

use rayon::prelude::*;
use serde::Serialize;

use crate::concepts::count_concepts;
use crate::context::FormalContext;
use crate::cxt::write_cxt;
use crate::edit::contrast;
use crate::error::{Error, Result};

use super::universe::MAX_EXHAUSTIVE_CELLS;
use super::VerificationReport;

/// Outcome of maximizing the concept count over all `a × b` contexts whose
/// contrast is below `c`.
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalReport {
    pub objects: usize,
    pub attributes: usize,
    pub c: usize,
    /// Contexts of the class, i.e. those without `CN(c)`.
    pub class_size: usize,
    pub max_count: usize,
    /// Number of class members reaching `max_count`.
    pub extremal_count: usize,
    /// Whether some extremal context has contrast exactly `c − 1`.
    pub contains_cn_c_minus_1: bool,
    /// Lowest-code extremal context, preferring one with contrast `c − 1`.
    #[serde(serialize_with = "as_cxt")]
    pub witness: FormalContext,
}

fn as_cxt<S: serde::Serializer>(k: &FormalContext, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&write_cxt(k))
}

#[derive(Clone, Copy)]
struct Best {
    count: usize,
    extremal: usize,
    // lowest code with the largest contrast among extremal members
    witness: (usize, std::cmp::Reverse<u64>),
}

fn merge(x: Option<Best>, y: Option<Best>) -> Option<Best> {
    match (x, y) {
        (None, b) | (b, None) => b,
        (Some(x), Some(y)) => Some(match x.count.cmp(&y.count) {
            std::cmp::Ordering::Greater => x,
            std::cmp::Ordering::Less => y,
            std::cmp::Ordering::Equal => Best {
                count: x.count,
                extremal: x.extremal + y.extremal,
                witness: x.witness.max(y.witness),
            },
        }),
    }
}

/// Maximum concept count over the `CN(c)`-free `a × b` contexts.
pub fn extremal_search(a: usize, b: usize, c: usize) -> Result<ExtremalReport> {
    if c == 0 || c > a.min(b) + 1 {
        return Err(Error::domain(format!("c must lie in 1..={}, got {c}", a.min(b) + 1)));
    }
    if a * b > MAX_EXHAUSTIVE_CELLS {
        return Err(Error::Guard(format!("extremal search over {a}x{b} contexts")));
    }
    let (best, class_size) = (0..1u64 << (a * b))
        .into_par_iter()
        .filter_map(|code| {
            let k = FormalContext::from_code(a, b, code);
            let ct = contrast(&k);
            (ct < c).then(|| {
                Best {
                    count: count_concepts(&k),
                    extremal: 1,
                    witness: (ct, std::cmp::Reverse(code)),
                }
            })
        })
        .map(|best| (Some(best), 1usize))
        .reduce(|| (None, 0), |x, y| (merge(x.0, y.0), x.1 + y.1));
    let best = best.expect("the full context is always in the class");
    let (ct, std::cmp::Reverse(code)) = best.witness;
    Ok(ExtremalReport {
        objects: a,
        attributes: b,
        c,
        class_size,
        max_count: best.count,
        extremal_count: best.extremal,
        contains_cn_c_minus_1: ct + 1 == c,
        witness: FormalContext::from_code(a, b, code),
    })
}

/// `Σ_{i<c} C(a, i)`.
pub fn albano_bound(a: usize, c: usize) -> usize {
    let mut binom = 1usize;
    let mut sum = 0;
    for i in 0..c.min(a + 1) {
        sum += binom;
        binom = binom * (a - i) / (i + 1);
    }
    sum
}

/// Largest number of attributes [`check_albano_bound`] enumerates.
pub const ALBANO_MAX_ATTRIBUTES: usize = 4;

/// No `CN(c)`-free context with `a` objects and at most four attributes has
/// more than `Σ_{i<c} C(a, i)` concepts.
pub fn check_albano_bound(a: usize, c: usize) -> Result<VerificationReport> {
    if c == 0 {
        return Err(Error::domain("c must be positive"));
    }
    if a > 4 {
        return Err(Error::Guard(format!("bound check enumerates at most 4 objects, got {a}")));
    }
    let bound = albano_bound(a, c);
    let property = format!("albano-bound a={a} c={c}");
    let universe = format!("exhaustive {a}xb, b<={ALBANO_MAX_ATTRIBUTES}, bound {bound}");
    let mut checked = 0;
    for b in 0..=ALBANO_MAX_ATTRIBUTES {
        let found = (0..1u64 << (a * b)).into_par_iter().find_map_first(|code| {
            let k = FormalContext::from_code(a, b, code);
            (contrast(&k) < c && count_concepts(&k) > bound).then_some(k)
        });
        if let Some(k) = found {
            let n = count_concepts(&k);
            return Ok(VerificationReport::fail(
                property,
                universe,
                None,
                checked,
                format!("{a}x{b} context without CN({c}) has {n} > {bound} concepts"),
                &k,
            ));
        }
        checked += 1 << (a * b);
    }
    Ok(VerificationReport::pass(property, universe, None, checked))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_values() {
        assert_eq!(albano_bound(4, 2), 5);
        assert_eq!(albano_bound(3, 3), 7);
        assert_eq!(albano_bound(3, 4), 8);
        assert_eq!(albano_bound(4, 1), 1);
    }

    #[test]
    fn only_full_contexts_avoid_cn1() {
        let r = extremal_search(3, 3, 1).unwrap();
        assert_eq!((r.class_size, r.max_count, r.extremal_count), (1, 1, 1));
        assert!(r.contains_cn_c_minus_1);
        assert!(r.witness.is_full());
    }

    #[test]
    fn cn2_free_three_by_three() {
        let r = extremal_search(3, 3, 2).unwrap();
        assert!(r.contains_cn_c_minus_1);
        assert_eq!(contrast(&r.witness), 1);
        assert_eq!(count_concepts(&r.witness), r.max_count);
        assert!(r.max_count <= albano_bound(3, 2));
    }

    #[test]
    fn guards() {
        assert!(matches!(extremal_search(3, 3, 5), Err(Error::Domain(_))));
        assert!(matches!(extremal_search(5, 4, 2), Err(Error::Guard(_))));
        assert!(matches!(check_albano_bound(5, 2), Err(Error::Guard(_))));
    }

    #[test]
    fn small_bounds_hold() {
        assert!(check_albano_bound(3, 3).unwrap().passed);
        assert!(check_albano_bound(2, 3).unwrap().passed);
    }
}
