//! Splitting a mixed-generator system according to what `op^{g,m}` does to
//! each member, and checking the injections into the mixed generators of
//! `L = op^{g,m}(K)` that bound `|B(L)|` from below.

use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::concepts::count_concepts;
use crate::context::{AttributeSet, FormalContext, ObjectSet};
use crate::error::{Error, Result};
use crate::mixgen::{chi_bits, is_mixgen_bits, MixgenSystem};

/// The seven classes of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MixgenClass {
    /// No longer a mixed generator in `L`.
    N,
    /// `S^J = S^I`, `χ(S) ≠ R`, not a restriction of a member of `N`.
    A1,
    /// Restrictions `S ∖ R` of members of `N`.
    A2,
    /// `S^J = S^I` and `χ(S) = R`.
    AchiEqR,
    /// `S^J ≠ S^I` and `(S ∪ {g})^J = S^I`.
    B,
    /// `S^J ≠ S^I`, `(S ∪ {g})^J ≠ S^I` and `R ⊆ S`.
    CR,
    /// `S^J ≠ S^I`, `(S ∪ {g})^J ≠ S^I` and `R ⊄ S`.
    CnotR,
}

impl MixgenClass {
    pub const ALL: [MixgenClass; 7] = [
        MixgenClass::N,
        MixgenClass::A1,
        MixgenClass::A2,
        MixgenClass::AchiEqR,
        MixgenClass::B,
        MixgenClass::CR,
        MixgenClass::CnotR,
    ];

    pub fn label(self) -> &'static str {
        match self {
            MixgenClass::N => "N",
            MixgenClass::A1 => "A1",
            MixgenClass::A2 => "A2",
            MixgenClass::AchiEqR => "AchiEqR",
            MixgenClass::B => "B",
            MixgenClass::CR => "CR",
            MixgenClass::CnotR => "CnotR",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }

    pub fn is_a(self) -> bool {
        matches!(self, MixgenClass::A1 | MixgenClass::A2 | MixgenClass::AchiEqR)
    }

    pub fn is_c(self) -> bool {
        matches!(self, MixgenClass::CR | MixgenClass::CnotR)
    }
}

impl fmt::Display for MixgenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A system split into the seven classes for one object `g ∈ R`.
#[derive(Debug, Clone)]
pub struct Decomposition<'a> {
    system: &'a MixgenSystem,
    object: usize,
    op_context: FormalContext,
    classes: [Vec<ObjectSet>; 7],
    labels: Vec<MixgenClass>,
}

impl<'a> Decomposition<'a> {
    pub fn system(&self) -> &'a MixgenSystem {
        self.system
    }

    /// The object `g` the edit was applied to.
    pub fn object(&self) -> usize {
        self.object
    }

    /// `L = op^{g,m}(K)`.
    pub fn op_context(&self) -> &FormalContext {
        &self.op_context
    }

    pub fn class(&self, label: MixgenClass) -> &[ObjectSet] {
        &self.classes[label.slot()]
    }

    /// Class of each generator, aligned with `system().generators()`.
    pub fn labels(&self) -> &[MixgenClass] {
        &self.labels
    }

    pub fn class_of(&self, s: &ObjectSet) -> Option<MixgenClass> {
        self.system
            .generators()
            .iter()
            .position(|t| t == s)
            .map(|i| self.labels[i])
    }

    /// `B ∪ C^{¬R}`, the part of the decomposition that does not depend on `g`.
    pub fn stable_part(&self) -> Vec<ObjectSet> {
        let mut out = self.class(MixgenClass::B).to_vec();
        out.extend_from_slice(self.class(MixgenClass::CnotR));
        out
    }
}

/// Partitions `system` by the literal class definitions in `L = op^{g,m}(K)`.
///
/// The characterization of `N` (exactly one `h ∈ S ∩ R`, `h ≠ g`, with
/// `(S ∖ {h})^J = S^I ∪ {m}`) is evaluated alongside the direct mixed
/// generator test; a disagreement is reported as an invariant failure.
pub fn decompose(system: &MixgenSystem, g: usize) -> Result<Decomposition<'_>> {
    let k = system.context();
    let m = system.attribute();
    let r = system.r().bits();
    k.check_object(g)?;
    if !r.contains(g) {
        return Err(Error::domain(format!(
            "{} has attribute {}, so it is not in R",
            k.object_name(g),
            k.attribute_name(m)
        )));
    }
    let l = k.apply_op(g, m)?;

    let mut labels = Vec::with_capacity(system.len());
    let mut pending_a = Vec::new();
    let mut restricted_n: HashSet<FixedBitSet> = HashSet::new();
    for (idx, s) in system.generators().iter().enumerate() {
        let s = s.bits();
        let intent_k = k.intent_bits(s);
        let mixgen_in_l = is_mixgen_bits(&l, r, s);
        if mixgen_in_l == characterizes_n(&l, r, g, m, s, &intent_k) {
            return Err(Error::Invariant(format!(
                "membership of {} in N disagrees with its characterization",
                k.format_objects(&k.objects_from_bits(s.clone()))
            )));
        }
        let label = if !mixgen_in_l {
            let mut res = s.clone();
            res.difference_with(r);
            restricted_n.insert(res);
            MixgenClass::N
        } else if l.intent_bits(s) == intent_k {
            pending_a.push(idx);
            MixgenClass::A1
        } else {
            let mut with_g = s.clone();
            with_g.insert(g);
            if l.intent_bits(&with_g) == intent_k {
                MixgenClass::B
            } else if r.is_subset(s) {
                MixgenClass::CR
            } else {
                MixgenClass::CnotR
            }
        };
        labels.push(label);
    }
    for idx in pending_a {
        let s = system.generators()[idx].bits();
        labels[idx] = if restricted_n.contains(s) {
            MixgenClass::A2
        } else if chi_bits(k, m, s) == *r {
            MixgenClass::AchiEqR
        } else {
            MixgenClass::A1
        };
    }

    let mut classes: [Vec<ObjectSet>; 7] = Default::default();
    for (s, label) in system.generators().iter().zip(&labels) {
        classes[label.slot()].push(s.clone());
    }
    Ok(Decomposition {
        system,
        object: g,
        op_context: l,
        classes,
        labels,
    })
}

/// `S ∩ R = {h}` with `h ≠ g` and `(S ∖ {h})^J = S^I ∪ {m}`.
fn characterizes_n(
    l: &FormalContext,
    r: &FixedBitSet,
    g: usize,
    m: usize,
    s: &FixedBitSet,
    intent_k: &FixedBitSet,
) -> bool {
    let mut inside = s.clone();
    inside.intersect_with(r);
    let mut members = inside.ones();
    let (Some(h), None) = (members.next(), members.next()) else {
        return false;
    };
    if h == g {
        return false;
    }
    let mut without = s.clone();
    without.set(h, false);
    let mut expected = intent_k.clone();
    expected.insert(m);
    l.intent_bits(&without) == expected
}

/// Which of the two maps produced an image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ImageMap {
    /// `S ↦ S`
    Alpha,
    /// `S ↦ S ∪ {g}`
    Beta,
}

/// Predicted against computed values for one image in `L`.
#[derive(Debug, Clone)]
pub struct ImageCheck {
    pub map: ImageMap,
    pub class: MixgenClass,
    /// The generator in `K`.
    pub source: ObjectSet,
    /// Its image, bound to `L`.
    pub image: ObjectSet,
    pub is_mixgen: bool,
    pub predicted_intent: AttributeSet,
    pub computed_intent: AttributeSet,
    pub predicted_extent: ObjectSet,
    pub computed_extent: ObjectSet,
    /// Whether the image intent is also an intent of `K`.
    pub intent_of_original: bool,
    pub predicted_intent_of_original: bool,
}

impl ImageCheck {
    pub fn holds(&self) -> bool {
        self.is_mixgen
            && self.predicted_intent == self.computed_intent
            && self.predicted_extent == self.computed_extent
            && self.intent_of_original == self.predicted_intent_of_original
    }
}

/// Outcome of checking the injections `α` and `β` and the resulting bound
/// `|B(L)| ≥ |B(K)| + |B| − |C^{¬R}|` for one decomposition.
#[derive(Debug, Clone)]
pub struct Theorem1Report {
    pub object: usize,
    pub attribute: usize,
    pub images: Vec<ImageCheck>,
    pub count_original: usize,
    pub count_op: usize,
    pub b_size: usize,
    pub c_not_r_size: usize,
    /// First violated clause, if any.
    pub violation: Option<String>,
}

impl Theorem1Report {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    /// Right-hand side `|B(K)| + |B| − |C^{¬R}|`.
    pub fn bound(&self) -> i64 {
        self.count_original as i64 + self.b_size as i64 - self.c_not_r_size as i64
    }

    pub fn bound_holds(&self) -> bool {
        self.count_op as i64 >= self.bound()
    }
}

/// Checks every clause of the injection statement on one decomposition.
/// Never fails silently: the first violated clause is recorded in the report.
pub fn verify_theorem1(decomposition: &Decomposition<'_>) -> Theorem1Report {
    let system = decomposition.system();
    let k = system.context();
    let l = decomposition.op_context();
    let m = system.attribute();
    let g = decomposition.object();
    let r = system.r().bits();

    let mut images = Vec::new();
    for (s, &class) in system.generators().iter().zip(decomposition.labels()) {
        let in_a = class.is_a();
        let in_b = class == MixgenClass::B;
        let beta_domain = matches!(class, MixgenClass::A2 | MixgenClass::AchiEqR | MixgenClass::B);
        let intent_k = k.intent_bits(s.bits());
        let mut chi_bar = r.clone();
        chi_bar.difference_with(&chi_bits(k, m, s.bits()));

        if in_a || in_b {
            let mut predicted_intent = intent_k.clone();
            if in_b {
                predicted_intent.insert(m);
            }
            let mut predicted_extent = chi_bar.clone();
            predicted_extent.set(g, false);
            predicted_extent.union_with(s.bits());
            images.push(image_check(
                k,
                l,
                r,
                ImageMap::Alpha,
                class,
                s,
                s.bits().clone(),
                predicted_intent,
                predicted_extent,
                in_a,
            ));
        }
        if beta_domain {
            let mut predicted_intent = intent_k.clone();
            if in_a {
                predicted_intent.set(m, false);
            }
            let mut predicted_extent = chi_bar.clone();
            predicted_extent.union_with(s.bits());
            predicted_extent.insert(g);
            let mut image = s.bits().clone();
            image.insert(g);
            images.push(image_check(
                k,
                l,
                r,
                ImageMap::Beta,
                class,
                s,
                image,
                predicted_intent,
                predicted_extent,
                class != MixgenClass::AchiEqR,
            ));
        }
    }

    let count_original = count_concepts(k);
    let count_op = count_concepts(l);
    let b_size = decomposition.class(MixgenClass::B).len();
    let c_not_r_size = decomposition.class(MixgenClass::CnotR).len();

    let describe = |c: &ImageCheck| {
        format!(
            "{:?} image of {} (class {})",
            c.map,
            k.format_objects(&c.source),
            c.class
        )
    };
    let mut violation = None;
    for c in &images {
        let clause = if !c.is_mixgen {
            Some("is not a mixed generator in L")
        } else if c.predicted_intent != c.computed_intent {
            Some("has an intent other than predicted")
        } else if c.intent_of_original != c.predicted_intent_of_original {
            Some("violates the original-intent characterization")
        } else if c.predicted_extent != c.computed_extent {
            Some("has an extent other than predicted")
        } else {
            None
        };
        if let Some(clause) = clause {
            violation = Some(format!("{} {clause}", describe(c)));
            break;
        }
    }
    if violation.is_none() {
        let mut seen = HashSet::new();
        if let Some(dup) = images.iter().find(|c| !seen.insert(c.computed_intent.clone())) {
            violation = Some(format!("{} repeats the intent of another image", describe(dup)));
        }
    }
    let mut report = Theorem1Report {
        object: g,
        attribute: m,
        images,
        count_original,
        count_op,
        b_size,
        c_not_r_size,
        violation,
    };
    if report.violation.is_none() && !report.bound_holds() {
        report.violation = Some(format!(
            "|B(L)| = {} is below |B(K)| + |B| - |C^notR| = {}",
            report.count_op,
            report.bound()
        ));
    }
    report
}

#[allow(clippy::too_many_arguments)]
fn image_check(
    k: &FormalContext,
    l: &FormalContext,
    r: &FixedBitSet,
    map: ImageMap,
    class: MixgenClass,
    source: &ObjectSet,
    image: FixedBitSet,
    predicted_intent: FixedBitSet,
    predicted_extent: FixedBitSet,
    predicted_intent_of_original: bool,
) -> ImageCheck {
    let computed_intent = l.intent_bits(&image);
    let computed_extent = l.extent_bits(&computed_intent);
    let intent_of_original = k.intent_bits(&k.extent_bits(&computed_intent)) == computed_intent;
    ImageCheck {
        map,
        class,
        source: source.clone(),
        is_mixgen: is_mixgen_bits(l, r, &image),
        image: l.objects_from_bits(image),
        predicted_intent: l.attributes_from_bits(predicted_intent),
        computed_intent: l.attributes_from_bits(computed_intent),
        predicted_extent: l.objects_from_bits(predicted_extent),
        computed_extent: l.objects_from_bits(computed_extent),
        intent_of_original,
        predicted_intent_of_original,
    }
}

/// First failure of the stability statement for a system, if any: across
/// all choices of `g ∈ R`, the classes `A^{χ=R}`, `C^R` and `B ∪ C^{¬R}`
/// coincide, and membership in `N ∪ A` (resp. `B ∪ C`) is decided by
/// `χ(S) = χ(S ∖ R)` (resp. `χ(S) ⊊ χ(S ∖ R)`).
pub fn stability_violation(system: &MixgenSystem) -> Result<Option<String>> {
    let k = system.context();
    let m = system.attribute();
    let r = system.r();
    if r.is_empty() {
        return Err(Error::domain("stability needs a non-empty R"));
    }
    let as_set = |v: &[ObjectSet]| v.iter().cloned().collect::<HashSet<_>>();
    let mut reference: Option<(usize, [HashSet<ObjectSet>; 3])> = None;
    for g in r.iter() {
        let d = decompose(system, g)?;
        let stable = [
            as_set(d.class(MixgenClass::AchiEqR)),
            as_set(d.class(MixgenClass::CR)),
            as_set(&d.stable_part()),
        ];
        for (s, &class) in system.generators().iter().zip(d.labels()) {
            let chi_s = chi_bits(k, m, s.bits());
            let chi_res = chi_bits(k, m, s.difference(r).bits());
            let equal = chi_s == chi_res;
            let proper = !equal && chi_s.is_subset(&chi_res);
            let unchanged_class = class == MixgenClass::N || class.is_a();
            if unchanged_class != equal || !unchanged_class != proper {
                return Ok(Some(format!(
                    "chi criterion fails for {} (class {class}) with g = {}",
                    k.format_objects(s),
                    k.object_name(g)
                )));
            }
        }
        match &reference {
            None => reference = Some((g, stable)),
            Some((g0, first)) => {
                for (name, (a, b)) in ["AchiEqR", "CR", "B+CnotR"].iter().zip(first.iter().zip(&stable)) {
                    if a != b {
                        return Ok(Some(format!(
                            "class {name} differs between g = {} and g = {}",
                            k.object_name(*g0),
                            k.object_name(g)
                        )));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Whether the stability statement holds for `system`.
pub fn check_stability(system: &MixgenSystem) -> Result<bool> {
    Ok(stability_violation(system)?.is_none())
}
