use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use richctx::edit::{contranominal_witness, nop_run, NopTrace};
use richctx::verifier::{
    self, check_albano_bound, extremal_search, resistance_report, run_named,
    run_property_suite, summary_table, Scope, VerificationReport,
};
use richctx::{
    build_complete_system, contrast, count_concepts, decompose, enumerate_concepts,
    find_rich_pair, noncontranominal_kernel, read_cxt, verify_theorem1, Error, FormalContext,
    MixgenClass, MixgenSystem, ObjectSet,
};

#[derive(Parser)]
#[command(name = "richctx", version, about = "Rich subcontexts of formal contexts")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for `verify` (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for sampled verification.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Count or list the concepts of a context.
    Concepts {
        /// Burmeister .cxt file, or "-" for standard input.
        file: String,
        #[arg(long, conflicts_with = "list")]
        count: bool,
        #[arg(long)]
        list: bool,
    },
    /// Find a non-incident pair whose deletion keeps half of the concepts.
    RichPair { file: String },
    /// Split a mixed-generator system into its seven classes for one object.
    Decompose {
        file: String,
        #[arg(long)]
        attr: String,
        #[arg(long)]
        obj: String,
        /// Use this family instead of the lexicographic system, e.g. "{};{g};{g,h}".
        #[arg(long)]
        system: Option<String>,
    },
    /// Show the lexicographic mixed-generator system of an attribute, or
    /// validate a given family.
    Mixgens {
        file: String,
        #[arg(long)]
        attr: String,
        #[arg(long)]
        system: Option<String>,
    },
    /// Run verification campaigns.
    Verify {
        /// Exhaustive bounds, or the sample shape together with --samples.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        max_size: Option<Vec<usize>>,
        /// Number of random samples instead of exhaustive enumeration.
        #[arg(long)]
        samples: Option<usize>,
        /// properties, fig7-resistance, extremal, albano, or one property name.
        #[arg(long, default_value = "properties")]
        suite: String,
        /// Size c of the forbidden contranominal scale (extremal, albano).
        #[arg(long, default_value_t = 3)]
        contranominal: usize,
    },
    /// Contrast, contranominal summand, kernel and an optional nop trace.
    Analyze {
        file: String,
        #[arg(long, default_value_t = 0)]
        nop_steps: usize,
    },
}

enum Failure {
    /// Exit 1.
    Property(String),
    /// Exit 2.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Property(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<Output, Failure>;

/// Rendered payload plus whether the command reports a failure (exit 1).
struct Output {
    text: String,
    json: Value,
    failed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, failed: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { .. } => {
            let threads = cli.jobs.unwrap_or(0);
            match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
                Ok(pool) => pool.install(|| run(&cli)),
                Err(e) => Err(Failure::Usage(e.to_string())),
            }
        }
        _ => run(&cli),
    };
    match result {
        Ok(out) => {
            let payload = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).unwrap() + "\n",
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(payload.as_bytes());
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Property(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Concepts { file, list, .. } => concepts(&load(file)?, *list),
        Command::RichPair { file } => rich_pair(&load(file)?),
        Command::Decompose { file, attr, obj, system } => {
            decompose_cmd(&load(file)?, attr, obj, system.as_deref())
        }
        Command::Mixgens { file, attr, system } => mixgens(&load(file)?, attr, system.as_deref()),
        Command::Verify {
            max_size,
            samples,
            suite,
            contranominal,
        } => verify(max_size.as_deref(), *samples, cli.seed, suite, *contranominal),
        Command::Analyze { file, nop_steps } => analyze(&load(file)?, *nop_steps),
    }
}

fn load(path: &str) -> Result<FormalContext, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?
    };
    read_cxt(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn names(k: &FormalContext, set: &ObjectSet) -> Vec<String> {
    k.object_labels(set)
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(","))
}

fn concepts(k: &FormalContext, list: bool) -> Outcome {
    if !list {
        let n = count_concepts(k);
        return Ok(Output::ok(format!("{n}\n"), json!({ "count": n })));
    }
    let set = enumerate_concepts(k);
    let mut text = String::new();
    let mut items = Vec::new();
    for c in &set {
        let extent = k.object_labels(&c.extent);
        let intent = k.attribute_labels(&c.intent);
        text += &format!("{} {}\n", braces(&extent), braces(&intent));
        items.push(json!({ "extent": extent, "intent": intent }));
    }
    text += &format!("{} concepts\n", set.len());
    Ok(Output::ok(text, json!({ "count": set.len(), "concepts": items })))
}

fn rich_pair(k: &FormalContext) -> Outcome {
    match find_rich_pair(k)? {
        None => Err(Failure::Property("full context".into())),
        Some(p) => {
            let (g, m) = (k.object_name(p.object), k.attribute_name(p.attribute));
            Ok(Output::ok(
                format!(
                    "pair: ({g}, {m})\nconcepts: {}\nafter deletion: {}\n",
                    p.count, p.count_after_deletion
                ),
                json!({
                    "object": g,
                    "attribute": m,
                    "count": p.count,
                    "count_after_deletion": p.count_after_deletion,
                }),
            ))
        }
    }
}

/// Parses "{};{g};{g,h}" into object sets.
fn parse_family(k: &FormalContext, spec: &str) -> Result<Vec<ObjectSet>, Failure> {
    spec.split(';')
        .map(|item| {
            let item = item.trim();
            let inner = item
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(|| Failure::Usage(format!("family member {item:?} is not of the form {{a,b}}")))?;
            let members: Vec<&str> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            Ok(k.objects_named(&members)?)
        })
        .collect()
}

fn system_for(k: &FormalContext, m: usize, family: Option<&str>) -> Result<MixgenSystem, Failure> {
    match family {
        Some(spec) => Ok(MixgenSystem::from_family(k, m, parse_family(k, spec)?)?),
        None => Ok(build_complete_system(k, m)?),
    }
}

fn decompose_cmd(k: &FormalContext, attr: &str, obj: &str, family: Option<&str>) -> Outcome {
    let m = k.attribute_index(attr)?;
    let g = k.object_index(obj)?;
    if k.is_full_column(m) {
        return Err(Failure::Usage(format!("attribute {attr} is a full column")));
    }
    if k.incident(g, m) {
        return Err(Failure::Usage(format!("{obj} has {attr}, so it is not in the co-extent")));
    }
    let system = system_for(k, m, family)?;
    if !(system.is_complete() && system.has_semi_downset()) {
        return Err(Failure::Usage(
            "the family must be complete and have the semi-downset property".into(),
        ));
    }
    let d = decompose(&system, g)?;
    let report = verify_theorem1(&d);
    let mut classes = serde_json::Map::new();
    let mut text = String::new();
    for label in MixgenClass::ALL {
        let sets: Vec<Vec<String>> = d.class(label).iter().map(|s| names(k, s)).collect();
        let shown: Vec<String> = sets.iter().map(|s| braces(s)).collect();
        text += &format!("{:<8} {}\n", label.label(), shown.join(" "));
        classes.insert(label.label().to_string(), json!(sets));
    }
    text += &format!(
        "bound: |B(L)| = {} >= |B(K)| + |B| - |CnotR| = {} + {} - {} = {} ({})\n",
        report.count_op,
        report.count_original,
        report.b_size,
        report.c_not_r_size,
        report.bound(),
        if report.bound_holds() { "holds" } else { "VIOLATED" }
    );
    if let Some(v) = &report.violation {
        text += &format!("violation: {v}\n");
    }
    let json = json!({
        "attribute": attr,
        "object": obj,
        "classes": classes,
        "count_original": report.count_original,
        "count_op": report.count_op,
        "b": report.b_size,
        "c_not_r": report.c_not_r_size,
        "bound": report.bound(),
        "bound_holds": report.bound_holds(),
        "violation": report.violation,
    });
    Ok(Output {
        text,
        json,
        failed: !report.passed(),
    })
}

fn mixgens(k: &FormalContext, attr: &str, family: Option<&str>) -> Outcome {
    let m = k.attribute_index(attr)?;
    let system = system_for(k, m, family)?;
    let r = names(k, system.r());
    let mut text = format!("R = {}\n", braces(&r));
    let mut members = Vec::new();
    for s in system.generators() {
        let closure = k.close_objects(s)?;
        let (gen, ext) = (names(k, s), names(k, &closure));
        text += &format!("{} -> {}\n", braces(&gen), braces(&ext));
        members.push(json!({ "generator": gen, "extent": ext }));
    }
    text += &format!(
        "{} members, complete: {}, semi-downset: {}\n",
        system.len(),
        system.is_complete(),
        system.has_semi_downset()
    );
    Ok(Output::ok(
        text,
        json!({
            "attribute": attr,
            "r": r,
            "members": members,
            "complete": system.is_complete(),
            "semi_downset": system.has_semi_downset(),
        }),
    ))
}

fn reports_output(suite: &str, reports: Vec<VerificationReport>, extra: Option<Value>) -> Output {
    let failed = reports.iter().any(|r| !r.passed);
    let mut text = summary_table(&reports);
    if let Some(Value::Object(map)) = &extra {
        for (k, v) in map.iter().filter(|(k, _)| *k != "witness") {
            text += &format!("{k}: {v}\n");
        }
    }
    let mut json = json!({ "suite": suite, "passed": !failed, "reports": reports });
    if let Some(extra) = extra {
        json["extremal"] = extra;
    }
    Output { text, json, failed }
}

fn verify(
    max_size: Option<&[usize]>,
    samples: Option<usize>,
    seed: u64,
    suite: &str,
    c: usize,
) -> Outcome {
    let size = max_size.map(|v| (v[0], v[1]));
    match suite {
        "fig7-resistance" => Ok(reports_output(suite, vec![resistance_report()], None)),
        "extremal" => {
            let (a, b) = size.unwrap_or((3, 3));
            let r = extremal_search(a, b, c)?;
            let witness = r.witness.to_string();
            let extra = json!({
                "objects": a,
                "attributes": b,
                "c": c,
                "class_size": r.class_size,
                "max_count": r.max_count,
                "extremal_count": r.extremal_count,
                "contains_cn_c_minus_1": r.contains_cn_c_minus_1,
                "witness": richctx::write_cxt(&r.witness),
            });
            let property = format!("extremal a={a} b={b} c={c}");
            let universe = format!("exhaustive {a}x{b}, contrast < {c}");
            let report = if r.contains_cn_c_minus_1 {
                VerificationReport::pass(property, universe, None, r.class_size)
            } else {
                VerificationReport::fail(
                    property,
                    universe,
                    None,
                    r.class_size,
                    format!("no extremal context contains CN({})", c - 1),
                    &r.witness,
                )
            };
            let mut out = reports_output(suite, vec![report], Some(extra));
            out.text += &format!("witness:\n{witness}");
            Ok(out)
        }
        "albano" => {
            let (a_max, _) = size.unwrap_or((4, 4));
            let mut reports = Vec::new();
            for a in 0..=a_max {
                for cc in 1..=c {
                    reports.push(check_albano_bound(a, cc)?);
                }
            }
            Ok(reports_output(suite, reports, None))
        }
        _ => {
            let scope = match samples {
                Some(n) => {
                    let (a, b) = size.unwrap_or((5, 5));
                    Scope::sampled(a, b, n, seed)?
                }
                None => {
                    let (a, b) = size.unwrap_or((3, 3));
                    Scope::exhaustive(a, b)?
                }
            };
            let reports = if suite == "properties" {
                run_property_suite(&scope)
            } else if verifier::property(suite).is_some() {
                run_named(&scope, &[suite])?
            } else {
                return Err(Failure::Usage(format!("unknown suite {suite:?}")));
            };
            Ok(reports_output(suite, reports, None))
        }
    }
}

fn trace_json(trace: &NopTrace) -> (String, Value) {
    let mut text = String::new();
    let mut steps = Vec::new();
    for (i, e) in trace.entries.iter().enumerate() {
        let pair = e
            .pair
            .map(|(g, m)| (e.context.object_name(g).to_string(), e.context.attribute_name(m).to_string()));
        let shown = pair.as_ref().map(|(g, m)| format!(" ({g}, {m})")).unwrap_or_default();
        text += &format!(
            "step {i}: {}{shown}, concepts {}, summand {}, contrast {}\n",
            e.case.label(),
            e.concepts,
            e.summand_size,
            e.contrast
        );
        steps.push(json!({
            "case": e.case.label(),
            "pair": pair.map(|(g, m)| json!([g, m])),
            "concepts": e.concepts,
            "summand": e.summand_size,
            "contrast": e.contrast,
        }));
    }
    let end = count_concepts(&trace.end);
    text += &format!("end: concepts {end}\n");
    (text, json!({ "steps": steps, "end_concepts": end, "outcome": trace.outcome }))
}

fn analyze(k: &FormalContext, nop_steps: usize) -> Outcome {
    let ct = contrast(k);
    let witness: Vec<[String; 2]> = contranominal_witness(k)
        .into_iter()
        .map(|(g, m)| [k.object_name(g).to_string(), k.attribute_name(m).to_string()])
        .collect();
    let split = noncontranominal_kernel(k);
    let kernel = &split.kernel;
    let peeled: Vec<[String; 2]> = split
        .peeled_pairs
        .iter()
        .map(|&(g, m)| [k.object_name(g).to_string(), k.attribute_name(m).to_string()])
        .collect();
    let mut text = format!(
        "concepts: {}\ncontrast: {ct}\ncontranominal summand: {}\nkernel: {}x{}\n",
        count_concepts(k),
        split.summand_size,
        kernel.num_objects(),
        kernel.num_attributes()
    );
    let mut json = json!({
        "concepts": count_concepts(k),
        "contrast": ct,
        "contrast_witness": witness,
        "summand": split.summand_size,
        "peeled_pairs": peeled,
        "kernel": {
            "objects": kernel.object_names(),
            "attributes": kernel.attribute_names(),
        },
    });
    if nop_steps > 0 {
        let trace = nop_run(k, nop_steps)?;
        let (t, j) = trace_json(&trace);
        text += &t;
        json["nop"] = j;
    }
    Ok(Output::ok(text, json))
}
