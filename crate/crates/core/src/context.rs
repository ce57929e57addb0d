//! Finite formal contexts `(G, M, I)`, their object/attribute subsets, the
//! two derivation operators and the context edits used throughout the crate.
//!
//! Objects and attributes are identified by position; names are labels only.
//! The incidence is stored twice, once as one bit row per object and once as
//! one bit column per attribute, so both derivations are a fold of word-wise
//! intersections.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::marker::PhantomData;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

static NEXT_CONTEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Identity token of a constructed context. Clones share the token; every
/// edit produces a context with a fresh one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContextId(u64);

impl ContextId {
    fn fresh() -> Self {
        ContextId(NEXT_CONTEXT_ID.fetch_add(1, AtomicOrdering::Relaxed))
    }
}

/// Marker for sets of objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objects {}

/// Marker for sets of attributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Attributes {}

/// A set of object or attribute indices bound to one context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet<K> {
    context: ContextId,
    bits: FixedBitSet,
    kind: PhantomData<K>,
}

pub type ObjectSet = IndexSet<Objects>;
pub type AttributeSet = IndexSet<Attributes>;

impl<K> IndexSet<K> {
    pub(crate) fn from_bits(context: ContextId, bits: FixedBitSet) -> Self {
        IndexSet {
            context,
            bits,
            kind: PhantomData,
        }
    }

    pub fn context_id(&self) -> ContextId {
        self.context
    }

    /// Size of the universe this set lives in (|G| or |M|).
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.bits.contains(index)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub(crate) fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    fn same_context(&self, other: &Self) {
        assert_eq!(
            self.context, other.context,
            "set operation across different contexts"
        );
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.same_context(other);
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.same_context(other);
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.same_context(other);
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self::from_bits(self.context, bits)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.same_context(other);
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self::from_bits(self.context, bits)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.same_context(other);
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self::from_bits(self.context, bits)
    }

    /// `self ∪ {index}`.
    pub fn with(&self, index: usize) -> Self {
        let mut bits = self.bits.clone();
        bits.insert(index);
        Self::from_bits(self.context, bits)
    }

    /// `self ∖ {index}`.
    pub fn without(&self, index: usize) -> Self {
        let mut bits = self.bits.clone();
        bits.set(index, false);
        Self::from_bits(self.context, bits)
    }

    /// Complement within the universe.
    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Self::from_bits(self.context, bits)
    }

    /// Lexicographic (lectic) comparison of characteristic vectors: at the
    /// first index where the sets differ, the set lacking it is smaller.
    pub fn lectic_cmp(&self, other: &Self) -> Ordering {
        self.same_context(other);
        lectic_cmp_bits(&self.bits, &other.bits)
    }
}

/// Lectic comparison on raw bit sets of equal length.
pub(crate) fn lectic_cmp_bits(a: &FixedBitSet, b: &FixedBitSet) -> Ordering {
    for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
        let diff = x ^ y;
        if diff != 0 {
            let low = diff & diff.wrapping_neg();
            return if y & low != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            };
        }
    }
    Ordering::Equal
}

/// A finite formal context with a boolean incidence relation.
#[derive(Debug, Clone)]
pub struct FormalContext {
    id: ContextId,
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<FixedBitSet>,
    cols: Vec<FixedBitSet>,
}

/// Equality compares names and incidence; the identity token is ignored.
impl PartialEq for FormalContext {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.attributes == other.attributes
            && self.rows == other.rows
    }
}

impl Eq for FormalContext {}

fn check_distinct(kind: &'static str, names: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(names.len());
    for name in names {
        if !seen.insert(name.as_str()) {
            return Err(Error::domain(format!("duplicate {kind} name {name:?}")));
        }
    }
    Ok(())
}

/// Default labels `g1, g2, ...` for objects.
pub fn default_object_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("g{i}")).collect()
}

/// Default labels `m1, m2, ...` for attributes.
pub fn default_attribute_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("m{i}")).collect()
}

impl FormalContext {
    /// Builds a context from names and an incidence predicate.
    pub fn from_fn(
        objects: Vec<String>,
        attributes: Vec<String>,
        incident: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        check_distinct("object", &objects)?;
        check_distinct("attribute", &attributes)?;
        let (n, k) = (objects.len(), attributes.len());
        let mut rows = vec![FixedBitSet::with_capacity(k); n];
        let mut cols = vec![FixedBitSet::with_capacity(n); k];
        for (g, row) in rows.iter_mut().enumerate() {
            for (m, col) in cols.iter_mut().enumerate() {
                if incident(g, m) {
                    row.insert(m);
                    col.insert(g);
                }
            }
        }
        Ok(FormalContext {
            id: ContextId::fresh(),
            objects,
            attributes,
            rows,
            cols,
        })
    }

    /// Builds a context from a row-major boolean matrix.
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        incidence: &[Vec<bool>],
    ) -> Result<Self> {
        if incidence.len() != objects.len() {
            return Err(Error::domain(format!(
                "incidence has {} rows but there are {} objects",
                incidence.len(),
                objects.len()
            )));
        }
        if let Some((g, row)) = incidence
            .iter()
            .enumerate()
            .find(|(_, row)| row.len() != attributes.len())
        {
            return Err(Error::domain(format!(
                "incidence row {g} has {} entries but there are {} attributes",
                row.len(),
                attributes.len()
            )));
        }
        Self::from_fn(objects, attributes, |g, m| incidence[g][m])
    }

    /// Builds a context from cross-table rows of `X`/`x` (incident) and `.`.
    pub fn from_rows(objects: &[&str], attributes: &[&str], rows: &[&str]) -> Result<Self> {
        let matrix = rows
            .iter()
            .map(|row| {
                row.chars()
                    .map(|c| match c {
                        'X' | 'x' => Ok(true),
                        '.' => Ok(false),
                        other => Err(Error::domain(format!("illegal cross-table character {other:?}"))),
                    })
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            objects.iter().map(|s| s.to_string()).collect(),
            attributes.iter().map(|s| s.to_string()).collect(),
            &matrix,
        )
    }

    /// Context with default names whose incidence is read from the low
    /// `a * b` bits of `code`, bit `g * b + m` standing for `g I m`.
    pub fn from_code(a: usize, b: usize, code: u64) -> Self {
        assert!(a * b <= 64, "incidence code limited to 64 cells");
        Self::from_fn(default_object_names(a), default_attribute_names(b), |g, m| {
            code >> (g * b + m) & 1 == 1
        })
        .expect("default names are distinct")
    }

    /// The `a × b` context in which every object has every attribute.
    pub fn full(a: usize, b: usize) -> Self {
        Self::from_fn(default_object_names(a), default_attribute_names(b), |_, _| true)
            .expect("default names are distinct")
    }

    /// The `a × b` context without any incidence.
    pub fn empty(a: usize, b: usize) -> Self {
        Self::from_fn(default_object_names(a), default_attribute_names(b), |_, _| false)
            .expect("default names are distinct")
    }

    /// The contranominal scale of size `j`: `({1..j}, {1..j}, ≠)`.
    pub fn contranominal(j: usize) -> Self {
        Self::from_fn(default_object_names(j), default_attribute_names(j), |g, m| g != m)
            .expect("default names are distinct")
    }

    pub fn id(&self) -> ContextId {
        self.id
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attributes
    }

    pub fn object_name(&self, g: usize) -> &str {
        &self.objects[g]
    }

    pub fn attribute_name(&self, m: usize) -> &str {
        &self.attributes[m]
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownName {
                kind: "object",
                name: name.to_string(),
            })
    }

    pub fn attribute_index(&self, name: &str) -> Result<usize> {
        self.attributes
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownName {
                kind: "attribute",
                name: name.to_string(),
            })
    }

    /// `g I m`. Panics if either index is out of range.
    pub fn incident(&self, g: usize, m: usize) -> bool {
        assert!(m < self.attributes.len(), "attribute index out of range");
        self.rows[g].contains(m)
    }

    /// Row-major copy of the incidence matrix.
    pub fn incidence_matrix(&self) -> Vec<Vec<bool>> {
        self.rows
            .iter()
            .map(|row| (0..self.num_attributes()).map(|m| row.contains(m)).collect())
            .collect()
    }

    /// True when both contexts have the same shape and incidence, names aside.
    pub fn same_incidence(&self, other: &Self) -> bool {
        self.num_objects() == other.num_objects()
            && self.num_attributes() == other.num_attributes()
            && self.rows == other.rows
    }

    pub(crate) fn row(&self, g: usize) -> &FixedBitSet {
        &self.rows[g]
    }


    pub fn check_object(&self, g: usize) -> Result<()> {
        if g < self.num_objects() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                kind: "object",
                index: g,
                len: self.num_objects(),
            })
        }
    }

    pub fn check_attribute(&self, m: usize) -> Result<()> {
        if m < self.num_attributes() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                kind: "attribute",
                index: m,
                len: self.num_attributes(),
            })
        }
    }

    pub fn is_full_column(&self, m: usize) -> bool {
        self.cols[m].is_full()
    }

    pub fn is_full_row(&self, g: usize) -> bool {
        self.rows[g].is_full()
    }

    /// True when every object has every attribute (vacuously for empty sides).
    pub fn is_full(&self) -> bool {
        self.rows.iter().all(FixedBitSet::is_full)
    }

    pub fn has_non_incidence(&self) -> bool {
        !self.is_full()
    }

    /// All pairs `(g, m)` with `g` not incident to `m`, in row-major order.
    pub fn non_incident_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.num_attributes();
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(g, row)| (0..k).filter(move |&m| !row.contains(m)).map(move |m| (g, m)))
            .collect()
    }

    // ---- set construction -------------------------------------------------

    pub fn object_set(&self, members: impl IntoIterator<Item = usize>) -> Result<ObjectSet> {
        let mut bits = FixedBitSet::with_capacity(self.num_objects());
        for g in members {
            self.check_object(g)?;
            bits.insert(g);
        }
        Ok(ObjectSet::from_bits(self.id, bits))
    }

    pub fn attribute_set(&self, members: impl IntoIterator<Item = usize>) -> Result<AttributeSet> {
        let mut bits = FixedBitSet::with_capacity(self.num_attributes());
        for m in members {
            self.check_attribute(m)?;
            bits.insert(m);
        }
        Ok(AttributeSet::from_bits(self.id, bits))
    }

    pub fn objects_named<S: AsRef<str>>(&self, names: &[S]) -> Result<ObjectSet> {
        let indices = names
            .iter()
            .map(|n| self.object_index(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        self.object_set(indices)
    }

    pub fn attributes_named<S: AsRef<str>>(&self, names: &[S]) -> Result<AttributeSet> {
        let indices = names
            .iter()
            .map(|n| self.attribute_index(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        self.attribute_set(indices)
    }

    pub fn no_objects(&self) -> ObjectSet {
        ObjectSet::from_bits(self.id, FixedBitSet::with_capacity(self.num_objects()))
    }

    pub fn all_objects(&self) -> ObjectSet {
        ObjectSet::from_bits(self.id, full_bits(self.num_objects()))
    }

    pub fn no_attributes(&self) -> AttributeSet {
        AttributeSet::from_bits(self.id, FixedBitSet::with_capacity(self.num_attributes()))
    }

    pub fn all_attributes(&self) -> AttributeSet {
        AttributeSet::from_bits(self.id, full_bits(self.num_attributes()))
    }

    pub(crate) fn objects_from_bits(&self, bits: FixedBitSet) -> ObjectSet {
        debug_assert_eq!(bits.len(), self.num_objects());
        ObjectSet::from_bits(self.id, bits)
    }

    pub(crate) fn attributes_from_bits(&self, bits: FixedBitSet) -> AttributeSet {
        debug_assert_eq!(bits.len(), self.num_attributes());
        AttributeSet::from_bits(self.id, bits)
    }

    /// Rebinds an object set of a context with the same object count
    /// (for example `K` and `op(K)`) to this context.
    pub fn adopt_objects(&self, set: &ObjectSet) -> Result<ObjectSet> {
        if set.universe() != self.num_objects() {
            return Err(Error::domain(format!(
                "object set over {} objects cannot be used in a context with {}",
                set.universe(),
                self.num_objects()
            )));
        }
        Ok(ObjectSet::from_bits(self.id, set.bits.clone()))
    }

    fn own_objects(&self, set: &ObjectSet) -> Result<()> {
        if set.context == self.id {
            Ok(())
        } else {
            Err(Error::ForeignSet)
        }
    }

    fn own_attributes(&self, set: &AttributeSet) -> Result<()> {
        if set.context == self.id {
            Ok(())
        } else {
            Err(Error::ForeignSet)
        }
    }

    // ---- derivation -------------------------------------------------------

    /// `S^I` on raw bits; the empty set derives to all of `M`.
    pub(crate) fn intent_bits(&self, objects: &FixedBitSet) -> FixedBitSet {
        let mut out = full_bits(self.num_attributes());
        for g in objects.ones() {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// `B^I` on raw bits; the empty set derives to all of `G`.
    pub(crate) fn extent_bits(&self, attributes: &FixedBitSet) -> FixedBitSet {
        let mut out = full_bits(self.num_objects());
        for m in attributes.ones() {
            out.intersect_with(&self.cols[m]);
        }
        out
    }

    pub(crate) fn closure_bits(&self, objects: &FixedBitSet) -> FixedBitSet {
        self.extent_bits(&self.intent_bits(objects))
    }

    /// `S^I = {m : g I m for all g in S}`.
    pub fn derive_objects(&self, objects: &ObjectSet) -> Result<AttributeSet> {
        self.own_objects(objects)?;
        Ok(self.attributes_from_bits(self.intent_bits(&objects.bits)))
    }

    /// `B^I = {g : g I m for all m in B}`.
    pub fn derive_attributes(&self, attributes: &AttributeSet) -> Result<ObjectSet> {
        self.own_attributes(attributes)?;
        Ok(self.objects_from_bits(self.extent_bits(&attributes.bits)))
    }

    /// `S^{II}`.
    pub fn close_objects(&self, objects: &ObjectSet) -> Result<ObjectSet> {
        self.own_objects(objects)?;
        Ok(self.objects_from_bits(self.closure_bits(&objects.bits)))
    }

    /// `B^{II}`.
    pub fn close_attributes(&self, attributes: &AttributeSet) -> Result<AttributeSet> {
        self.own_attributes(attributes)?;
        Ok(self.attributes_from_bits(self.intent_bits(&self.extent_bits(&attributes.bits))))
    }

    pub fn is_extent(&self, objects: &ObjectSet) -> Result<bool> {
        Ok(self.close_objects(objects)? == *objects)
    }

    pub fn is_intent(&self, attributes: &AttributeSet) -> Result<bool> {
        Ok(self.close_attributes(attributes)? == *attributes)
    }

    /// `g^I`, the attributes of one object.
    pub fn object_intent(&self, g: usize) -> Result<AttributeSet> {
        self.check_object(g)?;
        Ok(self.attributes_from_bits(self.rows[g].clone()))
    }

    /// `m^I`, the objects having one attribute.
    pub fn attribute_extent(&self, m: usize) -> Result<ObjectSet> {
        self.check_attribute(m)?;
        Ok(self.objects_from_bits(self.cols[m].clone()))
    }

    pub(crate) fn co_intent_bits(&self, g: usize) -> FixedBitSet {
        let mut bits = self.rows[g].clone();
        bits.toggle_range(..);
        bits
    }

    pub(crate) fn co_extent_bits(&self, m: usize) -> FixedBitSet {
        let mut bits = self.cols[m].clone();
        bits.toggle_range(..);
        bits
    }

    /// `M ∖ g^I`, the attributes an object lacks.
    pub fn co_intent(&self, g: usize) -> Result<AttributeSet> {
        self.check_object(g)?;
        Ok(self.attributes_from_bits(self.co_intent_bits(g)))
    }

    /// `G ∖ m^I`, the objects lacking an attribute.
    pub fn co_extent(&self, m: usize) -> Result<ObjectSet> {
        self.check_attribute(m)?;
        Ok(self.objects_from_bits(self.co_extent_bits(m)))
    }

    // ---- edits ------------------------------------------------------------

    /// The subcontext induced by the given objects and attributes, kept in
    /// their original relative order.
    pub fn subcontext(&self, objects: &[usize], attributes: &[usize]) -> Result<Self> {
        for &g in objects {
            self.check_object(g)?;
        }
        for &m in attributes {
            self.check_attribute(m)?;
        }
        Self::from_fn(
            objects.iter().map(|&g| self.objects[g].clone()).collect(),
            attributes.iter().map(|&m| self.attributes[m].clone()).collect(),
            |g, m| self.rows[objects[g]].contains(attributes[m]),
        )
    }

    /// `K_{-g-m}`: the context without object `g` and attribute `m`.
    pub fn delete_pair(&self, g: usize, m: usize) -> Result<Self> {
        if self.num_objects() == 0 || self.num_attributes() == 0 {
            return Err(Error::domain("cannot delete a pair from a context with an empty side"));
        }
        self.check_object(g)?;
        self.check_attribute(m)?;
        let objects: Vec<usize> = (0..self.num_objects()).filter(|&h| h != g).collect();
        let attributes: Vec<usize> = (0..self.num_attributes()).filter(|&n| n != m).collect();
        self.subcontext(&objects, &attributes)
    }

    /// `op^{g,m}`: for a non-incident pair, fills row `g` everywhere except at
    /// `m` and column `m` everywhere except at `g`.
    pub fn apply_op(&self, g: usize, m: usize) -> Result<Self> {
        self.check_object(g)?;
        self.check_attribute(m)?;
        if self.incident(g, m) {
            return Err(Error::domain(format!(
                "op is only defined for a non-incident pair, but {} has {}",
                self.objects[g], self.attributes[m]
            )));
        }
        Self::from_fn(self.objects.clone(), self.attributes.clone(), |h, n| {
            if h == g {
                n != m
            } else if n == m {
                true
            } else {
                self.rows[h].contains(n)
            }
        })
    }

    /// The same context with the single incidence `(g, m)` removed.
    pub fn remove_incidence(&self, g: usize, m: usize) -> Result<Self> {
        self.check_object(g)?;
        self.check_attribute(m)?;
        if !self.incident(g, m) {
            return Err(Error::domain(format!(
                "{} and {} are already non-incident",
                self.objects[g], self.attributes[m]
            )));
        }
        Self::from_fn(self.objects.clone(), self.attributes.clone(), |h, n| {
            (h, n) != (g, m) && self.rows[h].contains(n)
        })
    }

    /// Direct sum: disjoint union of both sides with full incidence between
    /// the parts. Names present on both sides get the suffixes `_1` and `_2`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let objects = disjoint_names(&self.objects, &other.objects);
        let attributes = disjoint_names(&self.attributes, &other.attributes);
        let (g1, m1) = (self.num_objects(), self.num_attributes());
        Self::from_fn(objects, attributes, |g, m| match (g < g1, m < m1) {
            (true, true) => self.rows[g].contains(m),
            (false, false) => other.rows[g - g1].contains(m - m1),
            _ => true,
        })
        .expect("suffixing yields distinct names")
    }

    /// Cross-table rendering of a set of objects, e.g. `{h,i,j}`.
    pub fn format_objects(&self, set: &ObjectSet) -> String {
        let names: Vec<&str> = set.iter().map(|g| self.objects[g].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn object_labels(&self, set: &ObjectSet) -> Vec<String> {
        set.iter().map(|g| self.objects[g].clone()).collect()
    }

    pub fn attribute_labels(&self, set: &AttributeSet) -> Vec<String> {
        set.iter().map(|m| self.attributes[m].clone()).collect()
    }
}

fn full_bits(n: usize) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(n);
    bits.insert_range(..);
    bits
}

fn disjoint_names(left: &[String], right: &[String]) -> Vec<String> {
    let right_set: HashSet<&str> = right.iter().map(String::as_str).collect();
    let left_set: HashSet<&str> = left.iter().map(String::as_str).collect();
    let mut out: Vec<String> = left
        .iter()
        .map(|n| if right_set.contains(n.as_str()) { format!("{n}_1") } else { n.clone() })
        .chain(
            right
                .iter()
                .map(|n| if left_set.contains(n.as_str()) { format!("{n}_2") } else { n.clone() }),
        )
        .collect();
    // A suffixed name may itself collide with an untouched one.
    let mut seen = HashSet::new();
    for name in out.iter_mut() {
        while !seen.insert(name.clone()) {
            name.push('\'');
        }
    }
    out
}

impl fmt::Display for FormalContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.objects.iter().map(|n| n.chars().count()).max().unwrap_or(0);
        write!(f, "{:width$} |", "")?;
        for name in &self.attributes {
            write!(f, " {name}")?;
        }
        writeln!(f)?;
        for (g, name) in self.objects.iter().enumerate() {
            write!(f, "{name:width$} |")?;
            for (m, attr) in self.attributes.iter().enumerate() {
                let mark = if self.rows[g].contains(m) { "x" } else { "." };
                write!(f, " {mark:>w$}", w = attr.chars().count())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn names(ctx: &FormalContext, set: &ObjectSet) -> String {
        set.iter().map(|g| ctx.object_name(g)).collect()
    }

    fn attr_names(ctx: &FormalContext, set: &AttributeSet) -> String {
        set.iter().map(|m| ctx.attribute_name(m)).collect()
    }

    #[test]
    fn derivation_on_running_example() {
        let k = samples::running_example();
        let ij = k.objects_named(&["i", "j"]).unwrap();
        assert_eq!(attr_names(&k, &k.derive_objects(&ij).unwrap()), "mp");
        let only_k = k.objects_named(&["k"]).unwrap();
        assert_eq!(attr_names(&k, &k.derive_objects(&only_k).unwrap()), "mq");
        assert_eq!(k.derive_objects(&k.no_objects()).unwrap(), k.all_attributes());

        let m = k.attributes_named(&["m"]).unwrap();
        assert_eq!(names(&k, &k.derive_attributes(&m).unwrap()), "ijk");
        let np = k.attributes_named(&["n", "p"]).unwrap();
        assert_eq!(names(&k, &k.derive_attributes(&np).unwrap()), "hi");
        assert_eq!(k.derive_attributes(&k.no_attributes()).unwrap(), k.all_objects());
    }

    #[test]
    fn closure_examples() {
        let k = samples::running_example();
        let only_k = k.objects_named(&["k"]).unwrap();
        assert_eq!(k.close_objects(&only_k).unwrap(), only_k);
        assert_eq!(k.close_objects(&k.all_objects()).unwrap(), k.all_objects());
        let hi = k.objects_named(&["h", "i"]).unwrap();
        assert_eq!(k.close_objects(&hi).unwrap(), hi);
    }

    #[test]
    fn co_sets() {
        let k = samples::running_example();
        let m = k.attribute_index("m").unwrap();
        assert_eq!(names(&k, &k.co_extent(m).unwrap()), "gh");
        let h = k.object_index("h").unwrap();
        assert_eq!(attr_names(&k, &k.co_intent(h).unwrap()), "mo");
        let full = FormalContext::full(3, 2);
        assert!(full.co_extent(1).unwrap().is_empty());
        assert!(matches!(k.co_extent(9), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(k.co_intent(5), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn foreign_sets_are_rejected() {
        let k = samples::running_example();
        let other = samples::running_example();
        let s = other.objects_named(&["g"]).unwrap();
        assert_eq!(k.derive_objects(&s), Err(Error::ForeignSet));
        let b = other.attributes_named(&["m"]).unwrap();
        assert_eq!(k.derive_attributes(&b), Err(Error::ForeignSet));
        assert_eq!(k.close_objects(&s), Err(Error::ForeignSet));
        assert!(k.object_set([7]).is_err());
    }

    #[test]
    fn construction_rejects_bad_input() {
        let dup = FormalContext::from_rows(&["a", "a"], &["x"], &["X", "."]);
        assert!(matches!(dup, Err(Error::Domain(_))));
        let dup_attr = FormalContext::from_rows(&["a"], &["x", "x"], &["X."]);
        assert!(matches!(dup_attr, Err(Error::Domain(_))));
        let short = FormalContext::from_rows(&["a", "b"], &["x", "y"], &["X.", "X"]);
        assert!(matches!(short, Err(Error::Domain(_))));
        let rows = FormalContext::from_rows(&["a", "b"], &["x"], &["X"]);
        assert!(matches!(rows, Err(Error::Domain(_))));
    }

    #[test]
    fn delete_pair_shapes() {
        let k = samples::running_example();
        let d = k.delete_pair(0, 0).unwrap();
        assert_eq!((d.num_objects(), d.num_attributes()), (4, 4));
        assert_eq!(d.object_names(), ["h", "i", "j", "k"]);
        assert_eq!(k, samples::running_example());

        let one = FormalContext::full(1, 1);
        let zero = one.delete_pair(0, 0).unwrap();
        assert_eq!((zero.num_objects(), zero.num_attributes()), (0, 0));
        assert!(matches!(zero.delete_pair(0, 0), Err(Error::Domain(_))));
        assert!(matches!(FormalContext::full(0, 3).delete_pair(0, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn apply_op_on_running_example() {
        let k = samples::running_example();
        let (g, h, m, o) = (0, 1, 0, 2);
        let l = k.apply_op(g, m).unwrap();
        // Row g keeps only m out; column m is filled except at g.
        assert_eq!(attr_names(&l, &l.co_intent(g).unwrap()), "m");
        assert_eq!(names(&l, &l.co_extent(m).unwrap()), "g");
        // h lost m from its co-intent and keeps o.
        assert_eq!(l.co_intent(h).unwrap().to_vec(), vec![o]);
        assert!(matches!(k.apply_op(2, 0), Err(Error::Domain(_))));

        let cn1 = FormalContext::contranominal(1);
        assert!(cn1.apply_op(0, 0).unwrap().same_incidence(&cn1));
    }

    #[test]
    fn remove_incidence_edits_one_cell() {
        let full = FormalContext::full(1, 1);
        let cn1 = full.remove_incidence(0, 0).unwrap();
        assert!(cn1.same_incidence(&FormalContext::contranominal(1)));
        assert!(matches!(cn1.remove_incidence(0, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn direct_sum_of_scales() {
        let cn1 = FormalContext::contranominal(1);
        let sum = cn1.direct_sum(&cn1);
        assert!(sum.same_incidence(&FormalContext::contranominal(2)));
        assert_eq!(sum.object_names(), ["g1_1", "g1_2"]);

        let k = samples::running_example();
        let unit = FormalContext::empty(0, 0);
        assert_eq!(k.direct_sum(&unit), k);
        assert_eq!(unit.direct_sum(&k), k);
    }

    #[test]
    fn direct_sum_suffix_collisions() {
        let left = FormalContext::from_rows(&["a", "a_2"], &["x"], &["X", "."]).unwrap();
        let right = FormalContext::from_rows(&["a"], &["y"], &["."]).unwrap();
        let sum = left.direct_sum(&right);
        assert_eq!(sum.object_names(), ["a_1", "a_2", "a_2'"]);
        assert_eq!(sum.attribute_names(), ["x", "y"]);
    }

    #[test]
    fn lectic_comparison() {
        let k = FormalContext::empty(3, 0);
        let s = |v: &[usize]| k.object_set(v.iter().copied()).unwrap();
        assert_eq!(s(&[]).lectic_cmp(&s(&[2])), Ordering::Less);
        assert_eq!(s(&[1, 2]).lectic_cmp(&s(&[0])), Ordering::Less);
        assert_eq!(s(&[0]).lectic_cmp(&s(&[0, 2])), Ordering::Less);
        assert_eq!(s(&[0, 1]).lectic_cmp(&s(&[0, 1])), Ordering::Equal);
        assert_eq!(s(&[0, 1]).lectic_cmp(&s(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn degenerate_shapes() {
        let k = FormalContext::full(0, 3);
        assert_eq!(k.derive_objects(&k.no_objects()).unwrap().len(), 3);
        assert!(!k.has_non_incidence());
        let k = FormalContext::empty(2, 0);
        assert_eq!(k.derive_attributes(&k.no_attributes()).unwrap().len(), 2);
        assert!(k.is_full());
    }
}
