//! Concept enumeration with NextClosure over object sets.
//!
//! Extents are produced in strictly increasing lectic order, anchored to the
//! object index order: at the first index where two extents differ, the one
//! lacking that object comes first.

use fixedbitset::FixedBitSet;

use crate::context::{AttributeSet, ContextId, FormalContext, ObjectSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Concept {
    pub extent: ObjectSet,
    pub intent: AttributeSet,
}

/// All concepts of one context, in lectic order of their extents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptSet {
    context: ContextId,
    concepts: Vec<Concept>,
}

impl ConceptSet {
    pub fn context_id(&self) -> ContextId {
        self.context
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Concept> {
        self.concepts.iter()
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn extents(&self) -> impl Iterator<Item = &ObjectSet> {
        self.concepts.iter().map(|c| &c.extent)
    }
}

impl<'a> IntoIterator for &'a ConceptSet {
    type Item = &'a Concept;
    type IntoIter = std::slice::Iter<'a, Concept>;

    fn into_iter(self) -> Self::IntoIter {
        self.concepts.iter()
    }
}

/// Lazily walks the closed object sets of a context in lectic order.
pub struct Extents<'a> {
    context: &'a FormalContext,
    next: Option<FixedBitSet>,
}

impl<'a> Extents<'a> {
    pub fn new(context: &'a FormalContext) -> Self {
        let first = context.closure_bits(&FixedBitSet::with_capacity(context.num_objects()));
        Extents {
            context,
            next: Some(first),
        }
    }

    fn successor(&self, current: &FixedBitSet) -> Option<FixedBitSet> {
        let mut prefix = current.clone();
        for i in (0..self.context.num_objects()).rev() {
            if prefix.contains(i) {
                prefix.set(i, false);
                continue;
            }
            prefix.insert(i);
            let candidate = self.context.closure_bits(&prefix);
            prefix.set(i, false);
            // Accept when the closure adds nothing below i.
            let mut added = candidate.clone();
            added.difference_with(&prefix);
            if added.ones().next() == Some(i) {
                return Some(candidate);
            }
        }
        None
    }
}

impl Iterator for Extents<'_> {
    type Item = FixedBitSet;

    fn next(&mut self) -> Option<FixedBitSet> {
        let current = self.next.take()?;
        self.next = self.successor(&current);
        Some(current)
    }
}

/// Lazily enumerates the extents of `context` as object sets.
pub fn extents(context: &FormalContext) -> impl Iterator<Item = ObjectSet> + '_ {
    Extents::new(context).map(move |bits| context.objects_from_bits(bits))
}

/// Every concept of `context`, extents in strictly increasing lectic order.
pub fn enumerate_concepts(context: &FormalContext) -> ConceptSet {
    let concepts = Extents::new(context)
        .map(|bits| {
            let intent = context.intent_bits(&bits);
            Concept {
                extent: context.objects_from_bits(bits),
                intent: context.attributes_from_bits(intent),
            }
        })
        .collect();
    ConceptSet {
        context: context.id(),
        concepts,
    }
}

/// `|B(K)|` without materializing the concepts.
pub fn count_concepts(context: &FormalContext) -> usize {
    Extents::new(context).count()
}

#[cfg(test)]
mod tests {
    use std::cmp::Ordering;
    use std::collections::HashSet;

    use super::*;
    use crate::samples;

    #[test]
    fn known_counts() {
        assert_eq!(count_concepts(&samples::running_example()), 15);
        assert_eq!(count_concepts(&FormalContext::contranominal(3)), 8);
        assert_eq!(count_concepts(&samples::resistant_context()), 22);
        assert_eq!(count_concepts(&samples::three_chain()), 3);
        assert_eq!(count_concepts(&FormalContext::full(4, 3)), 1);
        let k = samples::running_example();
        let g = k.object_index("g").unwrap();
        let m = k.attribute_index("m").unwrap();
        assert_eq!(count_concepts(&k.delete_pair(g, m).unwrap()), 7);
    }

    #[test]
    fn contranominal_scales_are_boolean() {
        for j in 0..=10 {
            assert_eq!(count_concepts(&FormalContext::contranominal(j)), 1 << j);
        }
    }

    #[test]
    fn degenerate_contexts_have_one_concept() {
        for (a, b) in [(0, 0), (0, 4), (3, 0)] {
            let set = enumerate_concepts(&FormalContext::empty(a, b));
            assert_eq!(set.len(), 1);
            let only = &set.concepts()[0];
            assert_eq!(only.extent.len(), a);
            assert_eq!(only.intent.len(), b);
        }
    }

    #[test]
    fn enumeration_is_strictly_lectic_and_closed() {
        let k = samples::resistant_context();
        let set = enumerate_concepts(&k);
        for pair in set.concepts().windows(2) {
            assert_eq!(pair[0].extent.lectic_cmp(&pair[1].extent), Ordering::Less);
        }
        let mut seen = HashSet::new();
        for c in &set {
            assert!(seen.insert(c.extent.clone()));
            assert_eq!(k.derive_objects(&c.extent).unwrap(), c.intent);
            assert_eq!(k.derive_attributes(&c.intent).unwrap(), c.extent);
        }
    }

    #[test]
    fn full_column_does_not_change_count() {
        let k = samples::running_example();
        let mut names: Vec<String> = k.attribute_names().to_vec();
        names.push("full".into());
        let widened = FormalContext::from_fn(k.object_names().to_vec(), names, |g, m| {
            m == 5 || k.incident(g, m)
        })
        .unwrap();
        assert_eq!(count_concepts(&widened), count_concepts(&k));
    }
}
