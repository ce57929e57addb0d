//! The individual checks a campaign runs on every context of its scope.
//! Each returns `Err` with a human-readable reason on the first violation.

use crate::concepts::{count_concepts, enumerate_concepts};
use crate::context::{FormalContext, ObjectSet};
use crate::decomposition::{check_stability, decompose, stability_violation, verify_theorem1, MixgenClass};
use crate::edit::{
    class_sizes_at, contranominal_summand_size, contranominal_witness, contrast, find_rich_pair,
    is_rich_pair, noncontranominal_kernel, nop_step, select_object_theorem2, NopCase,
};
use crate::mixgen::{build_complete_system, chi, chi_bar, is_mixed_generator, lex_min_mixgen};
use crate::samples;

use super::oracle::{oracle_concept_count, oracle_contrast, oracle_lex_min_mixgen, MaskContext};

pub type Outcome = std::result::Result<(), String>;
pub type Check = fn(&FormalContext) -> Outcome;

/// A named check.
#[derive(Clone, Copy)]
pub struct Property {
    pub name: &'static str,
    pub check: Check,
}

/// Every property of the standard campaign, sorted by name.
pub const PROPERTIES: &[Property] = &[
    Property { name: "chi", check: chi_matches_definition },
    Property { name: "closure-operator", check: closure_operator },
    Property { name: "contranominal", check: contranominal_structure },
    Property { name: "direct-sum", check: direct_sum_multiplies },
    Property { name: "doubling", check: doubling },
    Property { name: "mixgen", check: mixgen_propositions },
    Property { name: "nop", check: nop_monotone },
    Property { name: "op-locality", check: op_locality },
    Property { name: "oracle-count", check: oracle_count },
    Property { name: "rich-pair", check: rich_pair },
    Property { name: "semi-downset", check: lexicographic_system },
    Property { name: "stability", check: stability },
    Property { name: "image-bound", check: image_bound },
    Property { name: "object-selection", check: object_selection },
];

pub fn property(name: &str) -> Option<Property> {
    PROPERTIES.iter().copied().find(|p| p.name == name)
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: crate::error::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn oracle(k: &FormalContext) -> std::result::Result<usize, String> {
    lib(oracle_concept_count(k))
}

fn masks(k: &FormalContext) -> std::result::Result<MaskContext, String> {
    lib(MaskContext::new(k))
}

fn set_of(k: &FormalContext, mask: u64) -> ObjectSet {
    k.object_set((0..k.num_objects()).filter(|g| mask >> g & 1 == 1))
        .expect("mask fits the context")
}

fn mask_of(set: &ObjectSet) -> u64 {
    set.iter().fold(0, |acc, g| acc | 1 << g)
}

fn non_full_attributes(k: &FormalContext) -> impl Iterator<Item = usize> + '_ {
    (0..k.num_attributes()).filter(|&m| !k.is_full_column(m))
}

fn oracle_count(k: &FormalContext) -> Outcome {
    let fast = count_concepts(k);
    let slow = oracle(k)?;
    ensure!(fast == slow, "count_concepts = {fast}, oracle = {slow}");
    ensure!(enumerate_concepts(k).len() == fast, "enumeration and count disagree");
    let mut names = k.attribute_names().to_vec();
    names.push(format!("{}+", names.join("")));
    let b = k.num_attributes();
    let widened = lib(FormalContext::from_fn(k.object_names().to_vec(), names, |g, m| {
        m == b || k.incident(g, m)
    }))?;
    ensure!(count_concepts(&widened) == fast, "a full column changed the count");
    Ok(())
}

fn closure_operator(k: &FormalContext) -> Outcome {
    let a = k.num_objects();
    if a > 10 {
        return Ok(());
    }
    for mask in 0..1u64 << a {
        let s = set_of(k, mask);
        let closed = lib(k.close_objects(&s))?;
        ensure!(s.is_subset(&closed), "closure of {} is not extensive", k.format_objects(&s));
        ensure!(lib(k.close_objects(&closed))? == closed, "closure of {} is not idempotent", k.format_objects(&s));
        ensure!(lib(k.is_extent(&closed))?, "closure of {} is not an extent", k.format_objects(&s));
        let intent = lib(k.derive_objects(&s))?;
        ensure!(lib(k.close_attributes(&intent))? == intent, "derived set is not an intent");
        for g in (0..a).filter(|g| !s.contains(*g)) {
            let bigger = s.with(g);
            ensure!(
                closed.is_subset(&lib(k.close_objects(&bigger))?),
                "closure is not monotone at {}",
                k.format_objects(&s)
            );
            ensure!(
                lib(k.derive_objects(&bigger))?.is_subset(&intent),
                "derivation is not antitone at {}",
                k.format_objects(&s)
            );
        }
    }
    Ok(())
}

fn op_locality(k: &FormalContext) -> Outcome {
    for (g, m) in k.non_incident_pairs() {
        let l = lib(k.apply_op(g, m))?;
        for h in 0..k.num_objects() {
            for n in 0..k.num_attributes() {
                let expected = if h == g {
                    n != m
                } else if n == m {
                    true
                } else {
                    k.incident(h, n)
                };
                ensure!(l.incident(h, n) == expected, "op at ({g},{m}) wrong at ({h},{n})");
            }
        }
        let d = lib(k.delete_pair(g, m))?;
        ensure!(
            d.num_objects() + 1 == k.num_objects() && d.num_attributes() + 1 == k.num_attributes(),
            "delete_pair has the wrong shape"
        );
    }
    Ok(())
}

fn doubling(k: &FormalContext) -> Outcome {
    for (g, m) in k.non_incident_pairs() {
        let op = oracle(&lib(k.apply_op(g, m))?)?;
        let deleted = oracle(&lib(k.delete_pair(g, m))?)?;
        ensure!(op == 2 * deleted, "pair ({g},{m}): |B(op)| = {op}, |B(deleted)| = {deleted}");
    }
    Ok(())
}

fn rich_pair(k: &FormalContext) -> Outcome {
    let total = oracle(k)?;
    for (g, m) in k.non_incident_pairs() {
        let rich = lib(is_rich_pair(k, g, m))?;
        let op = oracle(&lib(k.apply_op(g, m))?)?;
        ensure!(rich == (op >= total), "richness of ({g},{m}) disagrees with the op route");
    }
    match lib(find_rich_pair(k))? {
        None => ensure!(!k.has_non_incidence(), "no rich pair found despite a non-incidence"),
        Some(p) => {
            ensure!(!k.incident(p.object, p.attribute), "returned pair is incident");
            let after = oracle(&lib(k.delete_pair(p.object, p.attribute))?)?;
            ensure!(
                2 * after >= total && after == p.count_after_deletion,
                "pair ({},{}) keeps {after} of {total}",
                p.object,
                p.attribute
            );
        }
    }
    Ok(())
}

fn object_selection(k: &FormalContext) -> Outcome {
    let total = oracle(k)?;
    for m in non_full_attributes(k) {
        let system = lib(build_complete_system(k, m))?;
        let report = lib(select_object_theorem2(k, m, &system))?;
        for c in &report.counts {
            let (b, cnr) = lib(class_sizes_at(&system, c.object))?;
            ensure!(
                (b, cnr) == (c.omitting, c.containing),
                "m = {m}, g = {}: stable-part counts ({}, {}) but classes ({b}, {cnr})",
                c.object,
                c.omitting,
                c.containing
            );
        }
        let g = report.selected;
        let (b, cnr) = lib(class_sizes_at(&system, g))?;
        ensure!(b >= cnr, "selected g = {g} for m = {m} has |B| = {b} < |CnotR| = {cnr}");
        let op = oracle(&lib(k.apply_op(g, m))?)?;
        ensure!(op >= total, "op at ({g},{m}) loses concepts: {op} < {total}");
    }
    Ok(())
}

fn stability(k: &FormalContext) -> Outcome {
    for m in non_full_attributes(k) {
        let system = lib(build_complete_system(k, m))?;
        if let Some(v) = lib(stability_violation(&system))? {
            return Err(format!("m = {m}: {v}"));
        }
        ensure!(lib(check_stability(&system))?, "m = {m}: stability check disagrees");
    }
    Ok(())
}

fn chi_mask(km: &MaskContext, m: usize, r: u64, s: u64) -> u64 {
    (0..km.objects)
        .filter(|&h| r >> h & 1 == 1 && km.strongly_avoids(m, s, h))
        .fold(0, |acc, h| acc | 1 << h)
}

fn image_bound(k: &FormalContext) -> Outcome {
    let km = masks(k)?;
    for m in non_full_attributes(k) {
        let system = lib(build_complete_system(k, m))?;
        let r = km.co_extent(m);
        for g in system.r().iter() {
            let d = lib(decompose(&system, g))?;
            let report = verify_theorem1(&d);
            if let Some(v) = &report.violation {
                return Err(format!("m = {m}, g = {g}: {v}"));
            }
            let lm = masks(d.op_context())?;
            let mut restrictions = std::collections::HashSet::new();
            for (s, &class) in system.generators().iter().zip(d.labels()) {
                let s = mask_of(s);
                let chi_res = chi_mask(&km, m, r, s & !r);
                match class {
                    MixgenClass::N => {
                        ensure!(restrictions.insert(s & !r), "restriction is not injective on N");
                        ensure!(chi_res != r, "N member {s:b} has chi(S \\ R) = R");
                    }
                    MixgenClass::CR => {
                        ensure!(chi_res == r, "CR member {s:b} has chi(S \\ R) != R");
                        ensure!(
                            km.closure(s) == s && lm.closure(s) == s,
                            "CR member {s:b} is not closed in both contexts"
                        );
                    }
                    _ => {}
                }
                if class != MixgenClass::CnotR {
                    let bar = r & !chi_mask(&km, m, r, s);
                    let (ck, cl) = (km.closure(s), lm.closure(s));
                    ensure!((cl & !ck) & !bar == 0, "m = {m}, g = {g}: S^JJ \\ S^II escapes chi-bar for {s:b}");
                    ensure!((ck & !s) & !bar == 0, "m = {m}, g = {g}: S^II \\ S escapes chi-bar for {s:b}");
                }
            }
            let b = d.class(MixgenClass::B).len();
            let cnr = d.class(MixgenClass::CnotR).len();
            if b >= cnr {
                ensure!(report.count_op >= report.count_original, "m = {m}, g = {g}: |B| >= |CnotR| but concepts lost");
            }
        }
    }
    Ok(())
}

fn mixgen_propositions(k: &FormalContext) -> Outcome {
    let a = k.num_objects();
    if a > 8 {
        return Ok(());
    }
    let km = masks(k)?;
    for m in 0..k.num_attributes() {
        let r = km.co_extent(m);
        let r_set = set_of(k, r);
        let mut mixgens = Vec::new();
        for s in 0..1u64 << a {
            let lib_says = lib(is_mixed_generator(k, &r_set, &set_of(k, s)))?;
            let def_says = km.is_mixgen(r, s);
            ensure!(lib_says == def_says, "m = {m}: mixed-generator test disagrees on {s:b}");
            let closed = km.closure(s);
            if def_says {
                mixgens.push(s);
                ensure!(
                    (closed == s) == ((closed & !s) & r == 0),
                    "m = {m}: extent criterion fails on {s:b}"
                );
            }
            if s & r == 0 {
                ensure!(def_says == (closed == s), "m = {m}: S outside R, mixgen != extent for {s:b}");
            }
        }
        for &s in &mixgens {
            if km.closure(s) == s {
                ensure!(
                    mixgens.iter().all(|&t| t == s || km.closure(t) != s),
                    "m = {m}: extent {s:b} is not its unique mixed generator"
                );
            }
        }
        for g in (0..a).filter(|g| r >> g & 1 == 1) {
            let l = lib(k.apply_op(g, m))?;
            let lm = masks(&l)?;
            for &s in &mixgens {
                for h in (0..a).filter(|h| (s | r) >> h & 1 == 0) {
                    ensure!(
                        lm.closure(s | 1 << h) != lm.closure(s),
                        "m = {m}, g = {g}: adding {h} to {s:b} keeps its closure in L"
                    );
                }
                if s & r == 0 {
                    ensure!(lm.is_mixgen(r, s), "m = {m}, g = {g}: {s:b} outside R is no mixgen in L");
                }
            }
            for s in (0..1u64 << a).filter(|s| s >> g & 1 == 0 && lm.is_mixgen(r, *s)) {
                let with_g = s | 1 << g;
                if lm.closure(with_g) == lm.closure(s) | 1 << g {
                    ensure!(lm.is_mixgen(r, with_g), "m = {m}, g = {g}: {s:b} plus g is no mixgen in L");
                }
            }
        }
    }
    Ok(())
}

fn chi_matches_definition(k: &FormalContext) -> Outcome {
    let a = k.num_objects();
    if a > 8 {
        return Ok(());
    }
    let km = masks(k)?;
    for m in 0..k.num_attributes() {
        let r = km.co_extent(m);
        for s in 0..1u64 << a {
            let set = set_of(k, s);
            let expected = chi_mask(&km, m, r, s);
            ensure!(mask_of(&lib(chi(k, m, &set))?) == expected, "m = {m}: chi wrong at {s:b}");
            ensure!(mask_of(&lib(chi_bar(k, m, &set))?) == r & !expected, "m = {m}: chi-bar wrong at {s:b}");
        }
    }
    Ok(())
}

fn lexicographic_system(k: &FormalContext) -> Outcome {
    let km = masks(k)?;
    for m in 0..k.num_attributes() {
        let system = lib(build_complete_system(k, m))?;
        ensure!(system.is_complete() && system.has_semi_downset(), "m = {m}: system not complete/semi-downset");
        let r = km.co_extent(m);
        for (extent, generator) in enumerate_concepts(k).extents().zip(system.generators()) {
            let e = mask_of(extent);
            let expected = oracle_lex_min_mixgen(&km, r, e);
            ensure!(
                expected == Some(mask_of(generator)),
                "m = {m}: least generator of {e:b} is {expected:?}, system has {:b}",
                mask_of(generator)
            );
            ensure!(
                lib(lex_min_mixgen(k, system.r(), extent))? == *generator,
                "m = {m}: lex_min_mixgen disagrees with the system"
            );
        }
    }
    Ok(())
}

fn contranominal_structure(k: &FormalContext) -> Outcome {
    let c = contrast(k);
    if k.num_objects() <= 6 && k.num_attributes() <= 6 {
        let brute = lib(oracle_contrast(k))?;
        ensure!(c == brute, "contrast {c}, brute force {brute}");
    }
    let witness = contranominal_witness(k);
    for &(g, _) in &witness {
        for &(h, n) in &witness {
            ensure!(k.incident(g, n) == (g != h), "witness is not a contranominal scale");
        }
    }
    let split = noncontranominal_kernel(k);
    let j = split.summand_size;
    ensure!(j <= c, "summand {j} exceeds contrast {c}");
    ensure!(contranominal_summand_size(&split.kernel) == 0, "kernel still has a splitting pair");
    ensure!(
        count_concepts(k) == count_concepts(&split.kernel) << j,
        "count is not kernel count times 2^{j}"
    );
    let rebuilt = split.kernel.direct_sum(&FormalContext::contranominal(j));
    ensure!(count_concepts(&rebuilt) == count_concepts(k), "kernel plus summand changes the count");
    let extended = k.direct_sum(&FormalContext::contranominal(1));
    ensure!(
        contranominal_summand_size(&extended) == j + 1,
        "adding CN(1) does not raise the summand by one"
    );
    Ok(())
}

fn nop_monotone(k: &FormalContext) -> Outcome {
    let step = lib(nop_step(k))?;
    let before = count_concepts(k);
    let after = count_concepts(&step.context);
    ensure!(after >= before, "nop lost concepts: {before} -> {after}");
    let (c0, c1) = (contrast(k), contrast(&step.context));
    ensure!(c0 <= c1 && c1 <= c0 + 1, "contrast moved {c0} -> {c1}");
    let kernel = noncontranominal_kernel(k).kernel;
    let degenerate = kernel.num_objects() == 0 || kernel.num_attributes() == 0;
    ensure!(degenerate == (step.case == NopCase::FixedPoint), "fixed point does not match the kernel shape");
    if step.case != NopCase::FixedPoint {
        let (s0, s1) = (contranominal_summand_size(k), contranominal_summand_size(&step.context));
        ensure!(s1 > s0, "summand did not grow: {s0} -> {s1}");
    }
    Ok(())
}

fn direct_sum_multiplies(k: &FormalContext) -> Outcome {
    let base = oracle(k)?;
    for other in [samples::three_chain(), FormalContext::contranominal(2), FormalContext::empty(1, 0)] {
        let sum = k.direct_sum(&other);
        let got = oracle(&sum)?;
        let expected = base * oracle(&other)?;
        ensure!(got == expected, "direct sum has {got} concepts, product is {expected}");
    }
    Ok(())
}

/// The resistant context keeps its 22 concepts under every op.
pub fn resistance_holds() -> Outcome {
    let k = samples::resistant_context();
    let total = count_concepts(&k);
    ensure!(total == 22, "resistant context has {total} concepts, expected 22");
    for (g, m) in k.non_incident_pairs() {
        let after = count_concepts(&lib(k.apply_op(g, m))?);
        ensure!(
            after == total,
            "op at ({}, {}) gives {after}",
            k.object_name(g),
            k.attribute_name(m)
        );
    }
    Ok(())
}
