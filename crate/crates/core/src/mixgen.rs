//! Mixed generators relative to a fixed object set `R`.
//!
//! A set `S` is an `R`-mixed generator of `S^{II}` when every object of
//! `S ∩ R` is needed (removing it changes the closure) and no object outside
//! `S ∪ R` can be added without changing the closure. With `R = G` these are
//! the minimal generators, with `R = ∅` the extents.
//!
//! Throughout, `R` is usually the co-extent `G ∖ m^I` of an attribute `m`.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::concepts::{count_concepts, Extents};
use crate::context::{FormalContext, ObjectSet};
use crate::error::{Error, Result};

/// Subsets of `A ∩ R` beyond this size are not searched exhaustively.
pub const LEX_MIN_SEARCH_LIMIT: usize = 30;

pub(crate) fn is_mixgen_bits(context: &FormalContext, r: &FixedBitSet, s: &FixedBitSet) -> bool {
    let intent = context.intent_bits(s);
    // ii) nothing outside S ∪ R may be added for free
    for g in 0..context.num_objects() {
        if !s.contains(g) && !r.contains(g) && intent.is_subset(context.row(g)) {
            return false;
        }
    }
    // i) every member of S ∩ R is needed
    let mut reduced = s.clone();
    for g in s.ones() {
        if !r.contains(g) {
            continue;
        }
        reduced.set(g, false);
        let same = context.intent_bits(&reduced) == intent;
        reduced.insert(g);
        if same {
            return false;
        }
    }
    true
}

fn owned(context: &FormalContext, set: &ObjectSet) -> Result<()> {
    if set.context_id() == context.id() {
        Ok(())
    } else {
        Err(Error::ForeignSet)
    }
}

/// Whether `s` is an `r`-mixed generator of its closure.
pub fn is_mixed_generator(context: &FormalContext, r: &ObjectSet, s: &ObjectSet) -> Result<bool> {
    owned(context, r)?;
    owned(context, s)?;
    Ok(is_mixgen_bits(context, r.bits(), s.bits()))
}

/// `S^I ∩ (h^{Ic} ∖ {m}) ≠ ∅` for a precomputed intent `S^I`.
pub(crate) fn strongly_avoids_intent(
    context: &FormalContext,
    m: usize,
    intent: &FixedBitSet,
    h: usize,
) -> bool {
    let row = context.row(h);
    intent
        .ones()
        .any(|n| n != m && !row.contains(n))
}

/// `S` strongly avoids `h` when some attribute of `S^I` other than `m` is
/// missing from `h`. Such an `h` stays outside the closure of `S` even after
/// `m` is dropped from the intent.
pub fn strongly_avoids(context: &FormalContext, m: usize, s: &ObjectSet, h: usize) -> Result<bool> {
    context.check_attribute(m)?;
    context.check_object(h)?;
    owned(context, s)?;
    Ok(strongly_avoids_intent(context, m, &context.intent_bits(s.bits()), h))
}

/// `χ(S) = {h ∈ G ∖ m^I : S strongly avoids h}` on a precomputed intent.
pub(crate) fn chi_from_intent(context: &FormalContext, m: usize, intent: &FixedBitSet) -> FixedBitSet {
    let mut out = context.co_extent_bits(m);
    let members: Vec<usize> = out.ones().collect();
    for h in members {
        if !strongly_avoids_intent(context, m, intent, h) {
            out.set(h, false);
        }
    }
    out
}

pub(crate) fn chi_bits(context: &FormalContext, m: usize, s: &FixedBitSet) -> FixedBitSet {
    chi_from_intent(context, m, &context.intent_bits(s))
}

/// Objects of `R = G ∖ m^I` that `s` strongly avoids. Always computed in the
/// context passed in, which callers keep as the original one.
pub fn chi(context: &FormalContext, m: usize, s: &ObjectSet) -> Result<ObjectSet> {
    context.check_attribute(m)?;
    owned(context, s)?;
    Ok(context.objects_from_bits(chi_bits(context, m, s.bits())))
}

/// `R ∖ χ(S)`.
pub fn chi_bar(context: &FormalContext, m: usize, s: &ObjectSet) -> Result<ObjectSet> {
    let mut bits = context.co_extent_bits(m);
    bits.difference_with(chi(context, m, s)?.bits());
    Ok(context.objects_from_bits(bits))
}

/// The restriction `S ↦ S ∖ R`.
pub fn restrict(s: &ObjectSet, r: &ObjectSet) -> Result<ObjectSet> {
    if s.context_id() != r.context_id() {
        return Err(Error::ForeignSet);
    }
    Ok(s.difference(r))
}

/// The lexicographically least `R`-mixed generator of the extent `A`.
///
/// Every mixed generator of `A` lies between `A ∖ R` and `A`, so only the
/// subsets of `A ∩ R` are scanned, in lectic order; the first hit wins. The
/// scan is exponential in `|A ∩ R|` and refused beyond
/// [`LEX_MIN_SEARCH_LIMIT`].
pub fn lex_min_mixgen(context: &FormalContext, r: &ObjectSet, extent: &ObjectSet) -> Result<ObjectSet> {
    owned(context, r)?;
    owned(context, extent)?;
    if !context.is_extent(extent)? {
        return Err(Error::domain(format!(
            "{} is not an extent",
            context.format_objects(extent)
        )));
    }
    Ok(context.objects_from_bits(lex_min_bits(context, r.bits(), extent.bits())?))
}

pub(crate) fn lex_min_bits(
    context: &FormalContext,
    r: &FixedBitSet,
    extent: &FixedBitSet,
) -> Result<FixedBitSet> {
    let mut forced = extent.clone();
    forced.difference_with(r);
    let mut free_set = extent.clone();
    free_set.intersect_with(r);
    let free: Vec<usize> = free_set.ones().collect();
    let k = free.len();
    if k > LEX_MIN_SEARCH_LIMIT {
        return Err(Error::Guard(format!(
            "lexicographic mixed-generator search over {k} objects"
        )));
    }
    let target = context.intent_bits(extent);
    for code in 0u64..(1u64 << k) {
        // free[0] is the most significant position of the lectic order
        let mut candidate = forced.clone();
        for (j, &g) in free.iter().enumerate() {
            if code >> (k - 1 - j) & 1 == 1 {
                candidate.insert(g);
            }
        }
        if context.intent_bits(&candidate) == target && is_mixgen_bits(context, r, &candidate) {
            return Ok(candidate);
        }
    }
    Err(Error::Invariant(
        "every extent has a mixed generator between A \\ R and A".into(),
    ))
}

/// A family of `R`-mixed generators with pairwise distinct closures, where
/// `R` is the co-extent of one attribute.
#[derive(Debug, Clone)]
pub struct MixgenSystem {
    context: FormalContext,
    attribute: usize,
    r: ObjectSet,
    generators: Vec<ObjectSet>,
    complete: bool,
    semi_downset: bool,
}

impl MixgenSystem {
    /// Validates a given family as a representative system of
    /// `(G ∖ m^I)`-mixed generators and records whether it is complete and
    /// has the semi-downset property.
    pub fn from_family(context: &FormalContext, m: usize, family: Vec<ObjectSet>) -> Result<Self> {
        let r = context.co_extent(m)?;
        let mut closures = HashSet::with_capacity(family.len());
        for s in &family {
            owned(context, s)?;
            if !is_mixgen_bits(context, r.bits(), s.bits()) {
                return Err(Error::domain(format!(
                    "{} is not a mixed generator",
                    context.format_objects(s)
                )));
            }
            if !closures.insert(context.closure_bits(s.bits())) {
                return Err(Error::domain(format!(
                    "{} repeats the closure of another member",
                    context.format_objects(s)
                )));
            }
        }
        let complete = family.len() == count_concepts(context);
        let semi_downset = has_semi_downset(&r, &family);
        Ok(MixgenSystem {
            context: context.clone(),
            attribute: m,
            r,
            generators: family,
            complete,
            semi_downset,
        })
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    /// The attribute `m` with `R = G ∖ m^I`.
    pub fn attribute(&self) -> usize {
        self.attribute
    }

    pub fn r(&self) -> &ObjectSet {
        &self.r
    }

    pub fn generators(&self) -> &[ObjectSet] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, s: &ObjectSet) -> bool {
        self.generators.contains(s)
    }

    /// Every extent is the closure of some member.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// `S ∈ 𝒮, T ⊆ S ∩ R ⟹ S ∖ T ∈ 𝒮`.
    pub fn has_semi_downset(&self) -> bool {
        self.semi_downset
    }
}

fn has_semi_downset(r: &ObjectSet, family: &[ObjectSet]) -> bool {
    let members: HashSet<&FixedBitSet> = family.iter().map(|s| s.bits()).collect();
    family.iter().all(|s| {
        let removable: Vec<usize> = s.intersection(r).iter().collect();
        (1u64..(1u64 << removable.len())).all(|code| {
            let mut reduced = s.bits().clone();
            for (j, &g) in removable.iter().enumerate() {
                if code >> j & 1 == 1 {
                    reduced.set(g, false);
                }
            }
            members.contains(&reduced)
        })
    })
}

/// One lexicographically least mixed generator per extent. The result is
/// complete and has the semi-downset property; both are re-checked.
pub fn build_complete_system(context: &FormalContext, m: usize) -> Result<MixgenSystem> {
    let r = context.co_extent(m)?;
    let generators = Extents::new(context)
        .map(|extent| lex_min_bits(context, r.bits(), &extent).map(|s| context.objects_from_bits(s)))
        .collect::<Result<Vec<_>>>()?;
    let system = MixgenSystem::from_family(context, m, generators)?;
    if !system.is_complete() {
        return Err(Error::Invariant("lexicographic system is not complete".into()));
    }
    if !system.has_semi_downset() {
        return Err(Error::Invariant(
            "lexicographic system lacks the semi-downset property".into(),
        ));
    }
    Ok(system)
}

/// Parses a family written as strings of single-character object names,
/// e.g. `["", "g", "gh"]`.
pub fn family_from_strings(context: &FormalContext, family: &[&str]) -> Result<Vec<ObjectSet>> {
    family
        .iter()
        .map(|word| {
            let names: Vec<String> = word.chars().map(|c| c.to_string()).collect();
            context.objects_named(&names)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn set(k: &FormalContext, word: &str) -> ObjectSet {
        family_from_strings(k, &[word]).unwrap().pop().unwrap()
    }

    fn running() -> (FormalContext, usize, ObjectSet) {
        let k = samples::running_example();
        let m = k.attribute_index("m").unwrap();
        let r = k.co_extent(m).unwrap();
        (k, m, r)
    }

    #[test]
    fn mixgen_examples() {
        let (k, _, r) = running();
        let hijk = set(&k, "hijk");
        assert!(is_mixed_generator(&k, &r, &hijk).unwrap());
        assert!(!k.is_extent(&hijk).unwrap());

        let all = set(&k, "ghijk");
        assert!(k.is_extent(&all).unwrap());
        assert!(!is_mixed_generator(&k, &r, &all).unwrap());

        let ij = set(&k, "ij");
        assert!(k.is_extent(&ij).unwrap());
        assert!(is_mixed_generator(&k, &r, &ij).unwrap());

        let hj = set(&k, "hj");
        assert!(!k.is_extent(&hj).unwrap());
        assert!(!is_mixed_generator(&k, &r, &hj).unwrap());
    }

    #[test]
    fn mixgen_rejects_foreign_sets() {
        let (k, _, r) = running();
        let other = samples::running_example();
        let s = other.no_objects();
        assert_eq!(is_mixed_generator(&k, &r, &s), Err(Error::ForeignSet));
    }

    #[test]
    fn boundary_choices_of_r() {
        let (k, _, _) = running();
        let everything = k.all_objects();
        let nothing = k.no_objects();
        for code in 0u32..32 {
            let s = k.object_set((0..5).filter(|g| code >> g & 1 == 1)).unwrap();
            let is_extent = k.is_extent(&s).unwrap();
            assert_eq!(is_mixed_generator(&k, &nothing, &s).unwrap(), is_extent);
            let closure = k.close_objects(&s).unwrap();
            let minimal = s
                .iter()
                .all(|g| k.close_objects(&s.without(g)).unwrap() != closure);
            assert_eq!(is_mixed_generator(&k, &everything, &s).unwrap(), minimal);
        }
    }

    #[test]
    fn strong_avoidance() {
        let (k, m, _) = running();
        let g = k.object_index("g").unwrap();
        let h = k.object_index("h").unwrap();
        assert!(strongly_avoids(&k, m, &k.no_objects(), g).unwrap());
        assert!(!strongly_avoids(&k, m, &set(&k, "i"), h).unwrap());
        // S^I = ∅ avoids nothing
        let all = k.all_objects();
        assert!(k.derive_objects(&all).unwrap().is_empty());
        for x in 0..5 {
            assert!(!strongly_avoids(&k, m, &all, x).unwrap());
        }
    }

    #[test]
    fn chi_examples() {
        let (k, m, r) = running();
        assert_eq!(chi(&k, m, &k.no_objects()).unwrap(), r);
        assert_eq!(chi(&k, m, &set(&k, "j")).unwrap(), r);
        assert!(chi(&k, m, &set(&k, "ijk")).unwrap().is_empty());
        assert!(chi(&k, m, &k.all_objects()).unwrap().is_subset(&chi(&k, m, &k.no_objects()).unwrap()));
        assert_eq!(
            chi_bar(&k, m, &k.all_objects()).unwrap(),
            r.difference(&chi(&k, m, &k.all_objects()).unwrap())
        );
    }

    #[test]
    fn restriction() {
        let (k, _, r) = running();
        assert_eq!(restrict(&set(&k, "hijk"), &r).unwrap(), set(&k, "ijk"));
        assert_eq!(restrict(&set(&k, "ik"), &r).unwrap(), set(&k, "ik"));
        let other = samples::running_example();
        assert_eq!(restrict(&set(&k, "i"), &other.no_objects()), Err(Error::ForeignSet));
    }

    #[test]
    fn lex_min_examples() {
        let (k, _, r) = running();
        let hi = set(&k, "hi");
        let found = lex_min_mixgen(&k, &r, &hi).unwrap();
        assert_eq!(found, hi);
        assert!(matches!(lex_min_mixgen(&k, &r, &set(&k, "hj")), Err(Error::Domain(_))));

        // ∅ closed: its own generator.
        let closed_empty = FormalContext::contranominal(2);
        let r2 = closed_empty.co_extent(0).unwrap();
        let empty = closed_empty.no_objects();
        assert_eq!(lex_min_mixgen(&closed_empty, &r2, &empty).unwrap(), empty);
    }

    #[test]
    fn given_family_is_complete_and_semi_downset() {
        let (k, m, _) = running();
        let family = family_from_strings(&k, &samples::RUNNING_SYSTEM).unwrap();
        let system = MixgenSystem::from_family(&k, m, family).unwrap();
        assert!(system.is_complete());
        assert!(system.has_semi_downset());
        assert!(system.contains(&set(&k, "hi")));
    }

    #[test]
    fn from_family_rejects_bad_members() {
        let (k, m, _) = running();
        let bad = family_from_strings(&k, &["hj"]).unwrap();
        assert!(matches!(MixgenSystem::from_family(&k, m, bad), Err(Error::Domain(_))));
        let twice = family_from_strings(&k, &["hijk", "hijk"]).unwrap();
        assert!(matches!(MixgenSystem::from_family(&k, m, twice), Err(Error::Domain(_))));
        let partial = family_from_strings(&k, &["", "g"]).unwrap();
        let system = MixgenSystem::from_family(&k, m, partial).unwrap();
        assert!(!system.is_complete());
    }

    #[test]
    fn built_system_on_running_example() {
        let (k, m, _) = running();
        let system = build_complete_system(&k, m).unwrap();
        assert_eq!(system.len(), 15);
        assert!(system.is_complete() && system.has_semi_downset());
        for s in system.generators() {
            let family = family_from_strings(&k, &samples::RUNNING_SYSTEM).unwrap();
            // Each built generator closes to an extent that the given family
            // also generates.
            let closure = k.close_objects(s).unwrap();
            assert!(family.iter().any(|t| k.close_objects(t).unwrap() == closure));
        }
    }

    #[test]
    fn full_column_system_is_the_extents() {
        let k = samples::running_example();
        let with_full = FormalContext::from_fn(
            k.object_names().to_vec(),
            vec!["m".into(), "z".into()],
            |g, m| m == 1 || k.incident(g, 0),
        )
        .unwrap();
        let system = build_complete_system(&with_full, 1).unwrap();
        assert!(system.r().is_empty());
        for s in system.generators() {
            assert!(with_full.is_extent(s).unwrap());
        }
    }
}
