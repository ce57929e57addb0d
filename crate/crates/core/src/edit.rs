//! Choosing the object for `op^{g,m}`, rich-pair search, contranominal
//! structure (contrast, contranominal summands, kernel) and the `nop` walk
//! through contexts without a contranominal scale of a given size.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::concepts::count_concepts;
use crate::context::FormalContext;
use crate::decomposition::{decompose, MixgenClass};
use crate::error::{Error, Result};
use crate::mixgen::{build_complete_system, MixgenSystem};

/// Per-object membership counts in the stable class `D = B ∪ C^{¬R}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ObjectCounts {
    pub object: usize,
    /// `|{S ∈ D : g ∈ S}|`, which equals `|C^{¬R}|` for this choice of `g`.
    pub containing: usize,
    /// `|{S ∈ D : g ∉ S}|`, which equals `|B|` for this choice of `g`.
    pub omitting: usize,
}

impl ObjectCounts {
    pub fn qualifies(&self) -> bool {
        self.omitting >= self.containing
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Report {
    pub attribute: usize,
    pub counts: Vec<ObjectCounts>,
    pub selected: usize,
}

impl Theorem2Report {
    /// Every object of `R` with `|B| ≥ |C^{¬R}|`.
    pub fn qualifying(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts.iter().filter(|c| c.qualifies()).map(|c| c.object)
    }
}

/// Picks `g ∈ R = G ∖ m^I` with `|B| ≥ |C^{¬R}|`, the lowest index among
/// those qualifying.
///
/// `D = B ∪ C^{¬R}` does not depend on `g`, so it is computed once and every
/// candidate is scored by counting the members of `D` that contain it.
pub fn select_object_theorem2(
    context: &FormalContext,
    m: usize,
    system: &MixgenSystem,
) -> Result<Theorem2Report> {
    context.check_attribute(m)?;
    if system.context().id() != context.id() {
        return Err(Error::ForeignSet);
    }
    if system.attribute() != m {
        return Err(Error::domain(format!(
            "system was built for attribute {}, not {}",
            context.attribute_name(system.attribute()),
            context.attribute_name(m)
        )));
    }
    if context.is_full_column(m) {
        return Err(Error::domain(format!(
            "attribute {} is a full column",
            context.attribute_name(m)
        )));
    }
    if !system.has_semi_downset() {
        return Err(Error::domain("system lacks the semi-downset property"));
    }
    let r = system.r();
    let first = r.iter().next().expect("non-full column has a non-empty co-extent");
    let stable = decompose(system, first)?.stable_part();
    let counts: Vec<ObjectCounts> = r
        .iter()
        .map(|g| {
            let containing = stable.iter().filter(|s| s.contains(g)).count();
            ObjectCounts {
                object: g,
                containing,
                omitting: stable.len() - containing,
            }
        })
        .collect();
    let selected = counts
        .iter()
        .find(|c| c.qualifies())
        .map(|c| c.object)
        .ok_or_else(|| {
            Error::Invariant(format!(
                "no object lacking {} has |B| >= |C^notR|",
                context.attribute_name(m)
            ))
        })?;
    Ok(Theorem2Report {
        attribute: m,
        counts,
        selected,
    })
}

/// Whether `K_{-g-m}` keeps at least half of the concepts of `K`.
pub fn is_rich_pair(context: &FormalContext, g: usize, m: usize) -> Result<bool> {
    context.check_object(g)?;
    context.check_attribute(m)?;
    if context.incident(g, m) {
        return Err(Error::domain(format!(
            "({}, {}) is an incident pair",
            context.object_name(g),
            context.attribute_name(m)
        )));
    }
    let after = count_concepts(&context.delete_pair(g, m)?);
    Ok(2 * after >= count_concepts(context))
}

/// A non-incident pair whose deletion keeps at least half of the concepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RichPair {
    pub object: usize,
    pub attribute: usize,
    pub count: usize,
    pub count_after_deletion: usize,
}

/// Finds a rich pair, or `None` for a context without non-incidence.
///
/// The attribute is the non-full column with the fewest non-incident objects
/// (lowest index on ties); the object comes from [`select_object_theorem2`]
/// on the lexicographically least complete system. Richness is re-checked
/// before returning.
pub fn find_rich_pair(context: &FormalContext) -> Result<Option<RichPair>> {
    let Some(m) = (0..context.num_attributes())
        .filter(|&m| !context.is_full_column(m))
        .min_by_key(|&m| (context.co_extent_bits(m).count_ones(..), m))
    else {
        return Ok(None);
    };
    let system = build_complete_system(context, m)?;
    let g = select_object_theorem2(context, m, &system)?.selected;
    let count = count_concepts(context);
    let count_after_deletion = count_concepts(&context.delete_pair(g, m)?);
    if 2 * count_after_deletion < count {
        return Err(Error::Invariant(format!(
            "selected pair ({}, {}) is not rich",
            context.object_name(g),
            context.attribute_name(m)
        )));
    }
    Ok(Some(RichPair {
        object: g,
        attribute: m,
        count,
        count_after_deletion,
    }))
}

/// The non-incident pairs of a largest contranominal subcontext, as
/// (object, attribute) pairs forming its diagonal.
///
/// Pairs `(g, m)`, `(g', m')` fit together when `g ≠ g'`, `m ≠ m'`, `g I m'`
/// and `g' I m`; a contranominal scale is a clique of such pairs. Found by
/// branch and bound on clique size; exponential in the worst case.
pub fn contranominal_witness(context: &FormalContext) -> Vec<(usize, usize)> {
    let pairs = context.non_incident_pairs();
    let n = pairs.len();
    let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
    for (i, &(g, m)) in pairs.iter().enumerate() {
        for (j, &(h, n2)) in pairs.iter().enumerate() {
            if g != h && m != n2 && context.incident(g, n2) && context.incident(h, m) {
                adjacency[i].insert(j);
            }
        }
    }
    let mut candidates = FixedBitSet::with_capacity(n);
    candidates.insert_range(..);
    let mut best = Vec::new();
    let cap = context.num_objects().min(context.num_attributes());
    grow_clique(&adjacency, &mut Vec::new(), candidates, &mut best, cap);
    best.into_iter().map(|i| pairs[i]).collect()
}

fn grow_clique(
    adjacency: &[FixedBitSet],
    current: &mut Vec<usize>,
    mut candidates: FixedBitSet,
    best: &mut Vec<usize>,
    cap: usize,
) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    while let Some(v) = candidates.ones().next() {
        if best.len() >= cap || current.len() + candidates.count_ones(..) <= best.len() {
            return;
        }
        current.push(v);
        let mut next = candidates.clone();
        next.intersect_with(&adjacency[v]);
        grow_clique(adjacency, current, next, best, cap);
        current.pop();
        candidates.set(v, false);
    }
}

/// Size of the largest contranominal scale found as a subcontext.
pub fn contrast(context: &FormalContext) -> usize {
    contranominal_witness(context).len()
}

/// A context split as `kernel + CN(summand_size)`.
#[derive(Debug, Clone)]
pub struct ContranominalDecomposition {
    pub kernel: FormalContext,
    pub summand_size: usize,
    /// Splitting pairs `(g, m)` with `g^{Ic} = {m}` and `m^{Ic} = {g}`.
    pub peeled_pairs: Vec<(usize, usize)>,
    /// Original indices of the kernel's objects.
    pub kernel_objects: Vec<usize>,
    /// Original indices of the kernel's attributes.
    pub kernel_attributes: Vec<usize>,
}

fn splitting_pairs(context: &FormalContext) -> Vec<(usize, usize)> {
    (0..context.num_objects())
        .filter_map(|g| {
            let missing = context.co_intent_bits(g);
            let mut it = missing.ones();
            match (it.next(), it.next()) {
                (Some(m), None) if context.co_extent_bits(m).count_ones(..) == 1 => Some((g, m)),
                _ => None,
            }
        })
        .collect()
}

/// Peels every splitting pair off the context.
pub fn noncontranominal_kernel(context: &FormalContext) -> ContranominalDecomposition {
    let peeled_pairs = splitting_pairs(context);
    let kernel_objects: Vec<usize> = (0..context.num_objects())
        .filter(|g| !peeled_pairs.iter().any(|p| p.0 == *g))
        .collect();
    let kernel_attributes: Vec<usize> = (0..context.num_attributes())
        .filter(|m| !peeled_pairs.iter().any(|p| p.1 == *m))
        .collect();
    let kernel = context
        .subcontext(&kernel_objects, &kernel_attributes)
        .expect("indices come from the context");
    ContranominalDecomposition {
        kernel,
        summand_size: peeled_pairs.len(),
        peeled_pairs,
        kernel_objects,
        kernel_attributes,
    }
}

/// Largest `j` such that `CN(j)` is a direct summand.
pub fn contranominal_summand_size(context: &FormalContext) -> usize {
    splitting_pairs(context).len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NopCase {
    /// The kernel has no objects or no attributes.
    #[serde(rename = "fixed-point")]
    FixedPoint,
    /// `op^{g,m}` on a kernel non-incidence.
    #[serde(rename = "op-case")]
    Op,
    /// The kernel is full and loses one incidence.
    #[serde(rename = "incidence-removal-case")]
    IncidenceRemoval,
}

impl NopCase {
    pub fn label(self) -> &'static str {
        match self {
            NopCase::FixedPoint => "fixed-point",
            NopCase::Op => "op-case",
            NopCase::IncidenceRemoval => "incidence-removal-case",
        }
    }
}

#[derive(Debug, Clone)]
pub struct NopStep {
    pub context: FormalContext,
    pub case: NopCase,
    /// The pair acted on, in the indices of the input context.
    pub pair: Option<(usize, usize)>,
}

/// One `nop` step. Among admissible pairs the least `(g, m)` by index is
/// taken: in the op case, `(g, m)` ranges over kernel non-incidences where
/// `g` satisfies the `|B| ≥ |C^{¬R}|` selection for `m` within the kernel.
pub fn nop_step(context: &FormalContext) -> Result<NopStep> {
    let split = noncontranominal_kernel(context);
    let kernel = &split.kernel;
    if kernel.num_objects() == 0 || kernel.num_attributes() == 0 {
        return Ok(NopStep {
            context: context.clone(),
            case: NopCase::FixedPoint,
            pair: None,
        });
    }
    let lift = |(g, m): (usize, usize)| (split.kernel_objects[g], split.kernel_attributes[m]);
    if kernel.has_non_incidence() {
        let mut best: Option<(usize, usize)> = None;
        for m in (0..kernel.num_attributes()).filter(|&m| !kernel.is_full_column(m)) {
            let system = build_complete_system(kernel, m)?;
            let report = select_object_theorem2(kernel, m, &system)?;
            let first = report.qualifying().next();
            if let Some(g) = first {
                if best.is_none_or(|b| (g, m) < b) {
                    best = Some((g, m));
                }
            }
        }
        let (g, m) = lift(best.ok_or_else(|| {
            Error::Invariant("kernel with a non-incidence has no admissible pair".into())
        })?);
        return Ok(NopStep {
            context: context.apply_op(g, m)?,
            case: NopCase::Op,
            pair: Some((g, m)),
        });
    }
    let (g, m) = lift((0, 0));
    Ok(NopStep {
        context: context.remove_incidence(g, m)?,
        case: NopCase::IncidenceRemoval,
        pair: Some((g, m)),
    })
}

/// One context along a `nop` walk together with the step applied to it.
#[derive(Debug, Clone)]
pub struct NopEntry {
    pub context: FormalContext,
    pub case: NopCase,
    pub pair: Option<(usize, usize)>,
    pub concepts: usize,
    pub summand_size: usize,
    pub contrast: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NopOutcome {
    #[serde(rename = "fixed-point")]
    FixedPoint,
    /// The next step would create the forbidden contranominal scale.
    #[serde(rename = "left-class")]
    LeftClass,
    #[serde(rename = "step-limit")]
    StepLimit,
}

#[derive(Debug, Clone)]
pub struct NopTrace {
    pub entries: Vec<NopEntry>,
    /// Result of the last recorded step (the last context itself at a fixed point).
    pub end: FormalContext,
    pub outcome: NopOutcome,
}

impl NopTrace {
    /// The last context that was kept in the walk.
    pub fn last_kept(&self) -> &FormalContext {
        &self.entries.last().expect("trace is never empty").context
    }
}

fn entry(context: FormalContext, step: &NopStep) -> NopEntry {
    NopEntry {
        concepts: count_concepts(&context),
        summand_size: contranominal_summand_size(&context),
        contrast: contrast(&context),
        context,
        case: step.case,
        pair: step.pair,
    }
}

/// Applies `nop` at most `max_steps` times, stopping early at a fixed point.
pub fn nop_run(context: &FormalContext, max_steps: usize) -> Result<NopTrace> {
    let mut current = context.clone();
    let mut entries = Vec::new();
    for _ in 0..max_steps {
        let step = nop_step(&current)?;
        let fixed = step.case == NopCase::FixedPoint;
        let next = step.context.clone();
        entries.push(entry(current, &step));
        current = next;
        if fixed {
            return Ok(NopTrace {
                entries,
                end: current,
                outcome: NopOutcome::FixedPoint,
            });
        }
    }
    if entries.is_empty() {
        let step = nop_step(&current)?;
        entries.push(entry(current.clone(), &step));
    }
    Ok(NopTrace {
        entries,
        end: current,
        outcome: NopOutcome::StepLimit,
    })
}

/// Walks `K, nop(K), nop(nop(K)), ...` until a fixed point or until the
/// next step would create `CN(c)`. A context that already contains `CN(c)`
/// cannot leave the class, so its walk runs to the fixed point.
pub fn nop_sequence(context: &FormalContext, c: usize) -> Result<NopTrace> {
    let limit = context.num_objects().min(context.num_attributes()) + 1;
    if c == 0 || c > limit {
        return Err(Error::domain(format!("c must lie in 1..={limit}, got {c}")));
    }
    let mut current = context.clone();
    let mut entries = Vec::new();
    // ℭ* grows with every non-fixed step and is bounded by min(|G|, |M|).
    for _ in 0..=limit {
        let step = nop_step(&current)?;
        let next = step.context.clone();
        let case = step.case;
        let e = entry(current, &step);
        let inside = e.contrast < c;
        entries.push(e);
        if case == NopCase::FixedPoint {
            return Ok(NopTrace {
                entries,
                end: next,
                outcome: NopOutcome::FixedPoint,
            });
        }
        if inside && contrast(&next) >= c {
            return Ok(NopTrace {
                entries,
                end: next,
                outcome: NopOutcome::LeftClass,
            });
        }
        current = next;
    }
    Err(Error::Invariant("nop walk did not terminate".into()))
}

/// `|B|` and `|C^{¬R}|` for the decomposition at `g`, computed directly.
pub fn class_sizes_at(system: &MixgenSystem, g: usize) -> Result<(usize, usize)> {
    let d = decompose(system, g)?;
    Ok((d.class(MixgenClass::B).len(), d.class(MixgenClass::CnotR).len()))
}
