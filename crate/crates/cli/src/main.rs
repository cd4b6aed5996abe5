use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use dimon_core::congruence::{
    enumerate, verify_forms_set, verify_presentation, EnumerationCaps, Verdict,
};
use dimon_core::monoid::{
    build_named, cardinality_formula, closure_with_cap, green_classes, MonoidFamily,
    DEFAULT_CLOSURE_CAP,
};
use dimon_core::presentation::{
    build_assignment, build_forms, build_relations, check_relations_hold, elimination_chain,
    relation_count_formula, Check, Presentation, RelationFamilyId, TietzeChain,
};

/// Dihedral inverse monoid workbench.
#[derive(Parser)]
#[command(name = "dimon", version, about)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(flatten)]
    caps: CapArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CapArgs {
    /// Largest number of live rows an enumeration may hold.
    #[arg(
        long,
        global = true,
        env = "DIMON_MAX_CLASSES",
        default_value_t = 1_000_000
    )]
    max_classes: usize,

    /// Largest number of enumeration steps.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    max_steps: u64,
}

impl CapArgs {
    fn caps(&self) -> EnumerationCaps {
        EnumerationCaps {
            max_classes: self.max_classes,
            max_steps: self.max_steps,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a monoid by closure and report its size.
    Build {
        #[arg(long)]
        family: MonoidFamily,
        #[arg(long)]
        n: u32,
        /// Write elements and Cayley tables as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the right Cayley graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        max_elements: usize,
    },
    /// Check that a relation family presents its monoid.
    VerifyPresentation {
        #[arg(long)]
        family: RelationFamilyId,
        #[arg(long)]
        n: u32,
    },
    /// Enumerate the classes of a presentation file.
    Enumerate {
        #[arg(long)]
        presentation: PathBuf,
        /// Include the class table in the report.
        #[arg(long)]
        dump_table: bool,
    },
    /// Evaluate both sides of every relation of a family.
    CheckRelations {
        #[arg(long)]
        family: RelationFamilyId,
        #[arg(long)]
        n: u32,
    },
    /// Build and verify the explicit set of forms of R, Vbar or Q.
    Forms {
        #[arg(long)]
        family: RelationFamilyId,
        #[arg(long)]
        n: u32,
        /// List the words.
        #[arg(long)]
        print: bool,
    },
    /// Replay an elimination chain and enumerate every stage.
    Tietze {
        #[arg(long)]
        chain: TietzeChain,
        #[arg(long)]
        n: u32,
    },
    /// Count Green's classes of a monoid.
    Green {
        #[arg(long)]
        family: MonoidFamily,
        #[arg(long)]
        n: u32,
    },
    /// Cross-check every closed-form count over a range of degrees.
    Formulas {
        /// Inclusive range such as `4..10`.
        #[arg(long, default_value = "4..10")]
        n_range: String,
    },
    /// Write a relation family as a presentation file.
    Export {
        #[arg(long)]
        family: RelationFamilyId,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Report {
    verdict: Verdict,
    text: String,
    json: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                let mut v = report.json;
                v["verdict"] = json!(report.verdict);
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                print!("{}", report.text);
            }
            match report.verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                Verdict::Fail => ExitCode::from(1),
                Verdict::Indeterminate => ExitCode::from(3),
            }
        }
        Err(e) => {
            if cli.json {
                println!(
                    "{}",
                    json!({ "verdict": "ERROR", "error": format!("{e:#}") })
                );
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let caps = cli.caps.caps();
    match &cli.command {
        Command::Build {
            family,
            n,
            out,
            dot,
            max_elements,
        } => {
            let gens = family.generators(*n)?;
            let m = closure_with_cap(*n, &gens, *max_elements)?;
            if let Some(path) = out {
                fs::write(path, serde_json::to_string(&m.to_json())?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = dot {
                fs::write(path, m.to_dot())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(Report {
                verdict: Verdict::Pass,
                text: format!("{family}_{n}: {} elements\n", m.size()),
                json: json!({ "verb": "build", "family": family.to_string(), "n": n, "size": m.size() }),
            })
        }
        Command::VerifyPresentation { family, n } => {
            let p = build_relations(*family, *n)?;
            let a = build_assignment(*family, *n)?;
            let target = family.target();
            let m = build_named(target, *n)?;
            let r = verify_presentation(&p, &a, &m, caps)?;
            let classes = r.class_count();
            let mut text = match classes {
                Some(c) => format!(
                    "{}: {} ({c} classes, |{target}_{n}| = {}; {c} {} {})\n",
                    p.label,
                    r.verdict,
                    m.size(),
                    if c == m.size() { "=" } else { "!=" },
                    m.size()
                ),
                None => format!("{}: {} (enumeration capped)\n", p.label, r.verdict),
            };
            for (tag, rel) in &r.relations.failing {
                text += &format!("  relation fails: ({tag}) {rel}\n");
            }
            Ok(Report {
                verdict: r.verdict,
                text,
                json: json!({
                    "verb": "verify-presentation",
                    "family": family.to_string(),
                    "n": n,
                    "relations": p.relations.len(),
                    "relations_hold": r.relations.all_hold(),
                    "failing": r.relations.failing.iter().map(|(t, s)| json!({"tag": t, "relation": s})).collect::<Vec<_>>(),
                    "enumeration": r.enumeration.status_json(),
                    "monoid": target.to_string(),
                    "monoid_size": m.size(),
                }),
            })
        }
        Command::Enumerate {
            presentation,
            dump_table,
        } => {
            let text = fs::read_to_string(presentation)
                .with_context(|| format!("reading {}", presentation.display()))?;
            let p = Presentation::from_json(&text)?;
            let r = enumerate(&p, caps);
            let mut json = r.status_json();
            json["verb"] = json!("enumerate");
            json["label"] = json!(p.label);
            if *dump_table {
                if let Some(t) = r.table_json() {
                    json["table"] = t;
                }
            }
            let text = match r.class_count() {
                Some(c) => format!("{}: complete, {c} classes\n", p.label),
                None => format!("{}: capped at {} live rows\n", p.label, caps.max_classes),
            };
            Ok(Report {
                verdict: if r.is_complete() {
                    Verdict::Pass
                } else {
                    Verdict::Indeterminate
                },
                text,
                json,
            })
        }
        Command::CheckRelations { family, n } => {
            let p = build_relations(*family, *n)?;
            let a = build_assignment(*family, *n)?;
            let r = check_relations_hold(&p, &a)?;
            let verdict = pass_if(r.all_hold());
            let mut text = format!(
                "{}: {verdict} ({} of {} relations hold)\n",
                p.label,
                r.checked - r.failing.len(),
                r.checked
            );
            for (tag, rel) in &r.failing {
                text += &format!("  ({tag}) {rel}\n");
            }
            Ok(Report {
                verdict,
                text,
                json: json!({
                    "verb": "check-relations",
                    "family": family.to_string(),
                    "n": n,
                    "checked": r.checked,
                    "failing": r.failing.iter().map(|(t, s)| json!({"tag": t, "relation": s})).collect::<Vec<_>>(),
                }),
            })
        }
        Command::Forms { family, n, print } => {
            let base = match family {
                RelationFamilyId::R => RelationFamilyId::U,
                RelationFamilyId::Vbar => RelationFamilyId::V,
                RelationFamilyId::Q => RelationFamilyId::Q0,
                other => bail!("no explicit forms for {other}; use R, Vbar or Q"),
            };
            let base_enum = enumerate(&build_relations(base, *n)?, caps);
            let forms = build_forms(*family, *n, &base_enum)?;
            let p = build_relations(*family, *n)?;
            let a = build_assignment(*family, *n)?;
            let m = build_named(family.target(), *n)?;
            let r = verify_forms_set(&p, &forms, &a, &m, caps)?;
            let mut text = format!(
                "{} forms: {} ({} words, {} distinct classes, {} distinct images, |{}_{n}| = {})\n",
                p.label,
                r.verdict,
                r.forms,
                r.distinct_classes,
                r.distinct_images,
                family.target(),
                r.monoid_size
            );
            if *print {
                for w in forms.render() {
                    text += &format!("  {w}\n");
                }
            }
            Ok(Report {
                verdict: r.verdict,
                text,
                json: json!({
                    "verb": "forms",
                    "family": family.to_string(),
                    "n": n,
                    "forms": r.forms,
                    "distinct_classes": r.distinct_classes,
                    "class_count": r.class_count,
                    "distinct_images": r.distinct_images,
                    "monoid_size": r.monoid_size,
                    "words": if *print { json!(forms.render()) } else { Value::Null },
                }),
            })
        }
        Command::Tietze { chain, n } => {
            let stages = elimination_chain(*chain, *n, Check::Checked(caps))?;
            let want = build_named(chain.start().target(), *n)?.size();
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut verdict = Verdict::Pass;
            for s in &stages {
                let r = enumerate(s, caps);
                let c = r.class_count();
                verdict = match (verdict, c) {
                    (Verdict::Fail, _) => Verdict::Fail,
                    (_, Some(c)) if c != want => Verdict::Fail,
                    (_, None) => Verdict::Indeterminate,
                    (v, _) => v,
                };
                text += &format!(
                    "{}: {} letters, {} relations, {}\n",
                    s.label,
                    s.alphabet.len(),
                    s.relations.len(),
                    c.map_or("capped".to_string(), |c| format!("{c} classes"))
                );
                rows.push(json!({
                    "label": s.label,
                    "letters": s.alphabet.names(),
                    "relations": s.relations.len(),
                    "enumeration": r.status_json(),
                }));
            }
            text += &format!("{verdict}: every stage presents a monoid of size {want}\n");
            Ok(Report {
                verdict,
                text,
                json: json!({ "verb": "tietze", "chain": chain.to_string(), "n": n, "expected": want, "stages": rows }),
            })
        }
        Command::Green { family, n } => {
            let m = build_named(*family, *n)?;
            let g = green_classes(&m);
            let units = g.group_of_units().len();
            Ok(Report {
                verdict: Verdict::Pass,
                text: format!(
                    "{family}_{n}: {} elements, {} R-classes, {} L-classes, {} H-classes, {} D-classes, group of units of size {units}\n",
                    m.size(),
                    g.r.len(),
                    g.l.len(),
                    g.h.len(),
                    g.d.len()
                ),
                json: json!({
                    "verb": "green",
                    "family": family.to_string(),
                    "n": n,
                    "size": m.size(),
                    "r_classes": g.r.len(),
                    "l_classes": g.l.len(),
                    "h_classes": g.h.len(),
                    "d_classes": g.d.len(),
                    "group_of_units": units,
                }),
            })
        }
        Command::Formulas { n_range } => formulas(n_range),
        Command::Export { family, n, out } => {
            let p = build_relations(*family, *n)?;
            let text = p.to_json();
            match out {
                Some(path) => {
                    fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?
                }
                None => println!("{text}"),
            }
            Ok(Report {
                verdict: Verdict::Pass,
                text: String::new(),
                json: json!({ "verb": "export", "family": family.to_string(), "n": n, "relations": p.relations.len() }),
            })
        }
    }
}

fn parse_range(s: &str) -> Result<(u32, u32)> {
    let (a, b) = s
        .split_once("..")
        .with_context(|| format!("expected a range like 4..10, got {s:?}"))?;
    let lo: u32 = a.trim().parse().context("range start")?;
    let hi: u32 = b
        .trim_start_matches('=')
        .trim()
        .parse()
        .context("range end")?;
    if lo < 4 || hi < lo {
        bail!("range {s:?} must satisfy 4 <= start <= end");
    }
    Ok((lo, hi))
}

const TABLE_ORDER: [RelationFamilyId; 8] = [
    RelationFamilyId::R,
    RelationFamilyId::V,
    RelationFamilyId::Vbar,
    RelationFamilyId::VbarPrime,
    RelationFamilyId::Q,
    RelationFamilyId::QPrime,
    RelationFamilyId::U,
    RelationFamilyId::Q0,
];

/// Each cell shows the closed form, followed by `(built k)` when the builder
/// disagrees.
fn formulas(range: &str) -> Result<Report> {
    let (lo, hi) = parse_range(range)?;
    let monoids = [MonoidFamily::ODI, MonoidFamily::MDI, MonoidFamily::OCI];
    let mut text = String::from("n");
    for f in monoids {
        text += &format!("\t|{f}|");
    }
    for f in TABLE_ORDER {
        text += &format!("\t|{f}|");
    }
    text.push('\n');
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for n in lo..=hi {
        let mut line = n.to_string();
        let mut row = json!({ "n": n });
        for f in monoids {
            let formula = cardinality_formula(f, n)?;
            let built = build_named(f, n)?.size() as u64;
            line += &cell(formula, built);
            row[format!("{f}")] = json!({ "formula": formula, "built": built });
            if formula != built {
                mismatches.push(format!("|{f}_{n}|: formula {formula}, built {built}"));
            }
        }
        for f in TABLE_ORDER {
            let formula = relation_count_formula(f, n)?;
            let built = build_relations(f, n)?.relations.len() as u64;
            line += &cell(formula, built);
            row[format!("{f}")] = json!({ "formula": formula, "built": built });
            if formula != built {
                mismatches.push(format!("{f}(n={n}): formula {formula}, built {built}"));
            }
        }
        text += &line;
        text.push('\n');
        rows.push(row);
    }
    let verdict = pass_if(mismatches.is_empty());
    for m in &mismatches {
        text += &format!("mismatch: {m}\n");
    }
    text += &format!("{verdict}\n");
    Ok(Report {
        verdict,
        text,
        json: json!({ "verb": "formulas", "rows": rows, "mismatches": mismatches }),
    })
}

fn cell(formula: u64, built: u64) -> String {
    if formula == built {
        format!("\t{formula}")
    } else {
        format!("\t{formula} (built {built})")
    }
}
