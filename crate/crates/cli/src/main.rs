use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lsgsb_core::gsb::{check_gsb, enumerate_irr, step_cap_for, GsbOptions, GsbReport};
use lsgsb_core::lyndon::{bracketing_of, enumerate_depth0, enumerate_lsbw, is_lsbw};
use lsgsb_core::opi::{catalog, check_differential_type, check_rb_type, parse_system, Family, TypeReport};
use lsgsb_core::rewrite::{RewriteStep, Strategy};
use lsgsb_core::words::parse_assoc;
use lsgsb_core::{Alphabet, Error, LieAlgebra, OrderKind};

#[derive(Parser)]
#[command(name = "lsgsb", version, about = "Lyndon-Shirshov words and Gröbner-Shirshov checks for operated Lie algebras")]
struct Cli {
    /// Comma-separated letters, largest first.
    #[arg(long, global = true, default_value = "x,y,z")]
    alphabet: String,
    /// dl or dt; defaults to the order the system needs.
    #[arg(long, global = true)]
    order: Option<OrderKind>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lyndon-Shirshov bracketed words.
    Lyndon {
        #[command(subcommand)]
        cmd: LyndonCmd,
    },
    /// Straighten a bracket polynomial into the basis and expand it.
    Expand { poly: String },
    /// Normal form of a polynomial modulo a system.
    Nf {
        #[arg(long)]
        system: String,
        #[arg(long)]
        poly: String,
        /// Print the rewrite steps; `json` forces JSON output.
        #[arg(long)]
        trace: Option<TraceFormat>,
        #[arg(long)]
        step_cap: Option<usize>,
    },
    /// Check every composition up to a degree bound.
    GsbCheck {
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = 4)]
        bound: u32,
        #[arg(long)]
        no_crosschecks: bool,
        #[arg(long)]
        step_cap: Option<usize>,
    },
    /// Type conditions and composition check for an identity family.
    Classify {
        #[arg(long)]
        family: String,
        /// Catalog entry within the family, e.g. `average`.
        #[arg(long)]
        entry: Option<String>,
        /// `b=1,c=0,e=0` or `λ=1`.
        #[arg(long, default_value = "")]
        params: String,
        /// Identity in `x, y` for the raw family.
        #[arg(long)]
        identity: Option<String>,
        #[arg(long, default_value_t = 4)]
        bound: u32,
        #[arg(long)]
        no_crosschecks: bool,
        #[arg(long)]
        step_cap: Option<usize>,
    },
    /// Irreducible Lyndon-Shirshov words of a system.
    Irr {
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = 4)]
        bound: u32,
    },
    /// Built-in identities.
    Catalog,
}

#[derive(Subcommand)]
enum LyndonCmd {
    /// All Lyndon-Shirshov words up to a degree.
    List {
        #[arg(long, default_value_t = 4)]
        bound: u32,
        /// Operator-free words only.
        #[arg(long)]
        depth0: bool,
        /// Print counts only.
        #[arg(long)]
        count: bool,
    },
    /// Shirshov bracketing of a word such as `x x y y x y` or `P(x) y`.
    Bracket { word: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TraceFormat {
    Text,
    Json,
}

/// Result of a subcommand: what to print and whether the verdict is positive.
struct Outcome {
    text: String,
    positive: bool,
}

fn ok(text: String) -> Outcome {
    Outcome { text, positive: true }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            println!("{}", o.text);
            if o.positive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let a = Alphabet::parse_list(&cli.alphabet)?;
    let as_json = cli.format == Format::Json;
    match &cli.cmd {
        Cmd::Lyndon { cmd: LyndonCmd::List { bound, depth0, count } } => {
            let ord = cli.order.unwrap_or(OrderKind::Dl);
            let words = if *depth0 { enumerate_depth0(&a, &ord, *bound) } else { enumerate_lsbw(&a, &ord, *bound) };
            let counts: Vec<usize> = words.iter().skip(1).map(Vec::len).collect();
            if *count {
                return Ok(ok(if as_json { json(&counts) } else { format!("{counts:?}") }));
            }
            #[derive(Serialize)]
            struct Entry {
                degree: u32,
                word: String,
                bracketing: String,
            }
            let mut entries = Vec::new();
            for w in words.iter().flatten() {
                entries.push(Entry { degree: w.degree(), word: w.to_text(&a), bracketing: bracketing_of(w, &ord)?.to_text(&a) });
            }
            if as_json {
                return Ok(ok(json(&entries)));
            }
            let lines: Vec<String> = entries.iter().map(|e| format!("{}\t{}\t{}", e.degree, e.word, e.bracketing)).collect();
            Ok(ok(format!("{}\ncounts by degree: {counts:?}", lines.join("\n"))))
        }
        Cmd::Lyndon { cmd: LyndonCmd::Bracket { word } } => {
            let ord = cli.order.unwrap_or(OrderKind::Dl);
            let w = parse_assoc(word, &a)?;
            if !is_lsbw(&w, &ord) {
                let text = format!("{} is not a Lyndon-Shirshov word under {ord}", w.to_text(&a));
                return Ok(Outcome { text, positive: false });
            }
            let t = bracketing_of(&w, &ord)?.to_text(&a);
            Ok(ok(if as_json { json(&serde_json::json!({ "word": w.to_text(&a), "bracketing": t })) } else { t }))
        }
        Cmd::Expand { poly } => {
            let ord = cli.order.unwrap_or(OrderKind::Dl);
            let alg = LieAlgebra::new(ord);
            let lie = alg.parse(poly, &a)?;
            let assoc = alg.expand(&lie);
            if as_json {
                return Ok(ok(json(&serde_json::json!({ "lie": lie.to_json(&a), "expansion": assoc.to_json(&a) }))));
            }
            Ok(ok(format!("lie: {}\nexpansion: {}", lie.to_text(&a), assoc.to_text(&a))))
        }
        Cmd::Nf { system, poly, trace, step_cap } => {
            let spec = parse_system(system, &a, cli.order)?;
            let sys = &spec.system;
            let f = sys.algebra().parse(poly, &a)?;
            let cap = step_cap.unwrap_or_else(|| step_cap_for(f.len(), f.words().map(|w| w.degree()).max().unwrap_or(1)));
            let mut steps: Vec<RewriteStep> = Vec::new();
            let g = sys.normal_form_with(&f, Strategy::LargestFirst, cap, trace.map(|_| &mut steps), Some(&a))?;
            if as_json || *trace == Some(TraceFormat::Json) {
                #[derive(Serialize)]
                struct NfOut {
                    input: String,
                    normal_form: String,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    steps: Option<Vec<RewriteStep>>,
                }
                let out = NfOut { input: f.to_text(&a), normal_form: g.to_text(&a), steps: trace.map(|_| steps) };
                return Ok(ok(json(&out)));
            }
            let mut text = String::new();
            for s in &steps {
                text.push_str(&format!("{} * {} at {} by {} -> {}\n", s.coefficient, s.word, s.context, s.relation, s.replacement));
            }
            text.push_str(&g.to_text(&a));
            Ok(ok(text))
        }
        Cmd::GsbCheck { system, bound, no_crosschecks, step_cap } => {
            let spec = parse_system(system, &a, cli.order)?;
            let opts = options(*bound, *no_crosschecks, *step_cap);
            let report = check_gsb(&spec.system, &a, &opts)?;
            let positive = report.is_gsb();
            let text = if as_json { json(&report) } else { gsb_text(&report) };
            Ok(Outcome { text, positive })
        }
        Cmd::Classify { family, entry, params, identity, bound, no_crosschecks, step_cap } => {
            let fam = Family::parse(family)?;
            let ord = cli.order.or(fam.required_order()).unwrap_or(OrderKind::Dl);
            let spec = match (fam, identity) {
                (Family::Raw, Some(id)) => format!("raw:{id}"),
                (Family::Raw, None) => return Err(Error::Invalid("the raw family needs --identity".into())),
                (_, _) => {
                    let e = entry.as_ref().map(|e| format!("/{e}")).unwrap_or_default();
                    format!("{}{e}:{params}", fam.name())
                }
            };
            let spec = parse_system(&spec, &a, Some(ord))?;
            let olpi = spec.olpi.clone().expect("identity systems carry their identity");
            let opts = options(*bound, *no_crosschecks, *step_cap);
            let report = check_gsb(&spec.system, &a, &opts)?;
            let type_check = match fam {
                Family::Diff => Some(check_differential_type(&spec.system, &olpi, &a, *bound, report.step_cap)?),
                Family::Rb => Some(check_rb_type(&spec.system, &olpi, &a, *bound, report.step_cap)?),
                Family::Modrb | Family::Raw => None,
            };
            #[derive(Serialize)]
            struct ClassifyOut<'r> {
                #[serde(flatten)]
                certificate: &'r GsbReport,
                family: Family,
                identity: String,
                params: Vec<String>,
                #[serde(skip_serializing_if = "Option::is_none")]
                type_check: Option<TypeReport>,
            }
            let positive = report.is_gsb();
            let out = ClassifyOut {
                certificate: &report,
                family: fam,
                identity: olpi.to_text(),
                params: olpi.params.iter().map(|(k, v)| format!("{k}={v}")).collect(),
                type_check,
            };
            if as_json {
                return Ok(Outcome { text: json(&out), positive });
            }
            let mut text = format!("family: {}\nidentity: {}\n", fam.name(), out.identity);
            if !out.params.is_empty() {
                text.push_str(&format!("params: {}\n", out.params.join(", ")));
            }
            if let Some(t) = &out.type_check {
                let bad = t.triples.iter().filter(|c| c.residue.is_some()).count();
                text.push_str(&format!(
                    "type conditions: multilinear {}, core reduced {}, terminating {}, triples {}/{} vanish -> {}\n",
                    t.multilinear,
                    t.core_reduced,
                    t.terminating,
                    t.triples.len() - bad,
                    t.triples.len(),
                    if t.verdict { "type" } else { "not type" }
                ));
            }
            text.push_str(&gsb_text(&report));
            Ok(Outcome { text, positive })
        }
        Cmd::Irr { system, bound } => {
            let spec = parse_system(system, &a, cli.order)?;
            let ord = spec.system.order();
            let irr = enumerate_irr(&spec.system, &a, *bound)?;
            let words: Vec<Vec<String>> = irr
                .iter()
                .map(|ws| ws.iter().map(|w| bracketing_of(w, &ord).map(|t| t.to_text(&a))).collect::<Result<_, _>>())
                .collect::<Result<_, _>>()?;
            if as_json {
                return Ok(ok(json(&words)));
            }
            let mut text = String::new();
            for (d, ws) in words.iter().enumerate().skip(1) {
                text.push_str(&format!("degree {d} ({}): {}\n", ws.len(), ws.join(" ")));
            }
            Ok(ok(text.trim_end().to_string()))
        }
        Cmd::Catalog => {
            let c = catalog();
            if as_json {
                return Ok(ok(json(&c)));
            }
            let lines: Vec<String> = c
                .iter()
                .map(|e| {
                    let ps = if e.params.is_empty() { String::new() } else { format!(" [{}]", e.params.join(", ")) };
                    format!("{:<26} {:<3} {}{ps}", e.spec, e.order, e.identity)
                })
                .collect();
            Ok(ok(lines.join("\n")))
        }
    }
}

fn options(bound: u32, no_crosschecks: bool, step_cap: Option<usize>) -> GsbOptions {
    let mut o = GsbOptions::new(bound).threads_from_env();
    o.crosschecks = !no_crosschecks;
    o.step_cap = step_cap;
    o
}

fn gsb_text(r: &GsbReport) -> String {
    let including = r.compositions.iter().filter(|c| c.kind == lsgsb_core::gsb::CompositionKind::Including).count();
    let nontrivial: Vec<_> = r.compositions.iter().filter(|c| c.residue.is_some()).collect();
    let mut s = format!(
        "system: {}\norder: {}  alphabet: {}  bound: {}\nrelations: {}  compositions: {} ({} including, {} intersection)  nontrivial: {}\n",
        r.opi,
        r.order,
        r.alphabet.join(","),
        r.degree_bound,
        r.relations,
        r.compositions.len(),
        including,
        r.compositions.len() - including,
        nontrivial.len()
    );
    for c in nontrivial.iter().take(3) {
        s.push_str(&format!(
            "  {} at {} ({} vs {}): residue {}\n",
            serde_json::to_value(c.kind).expect("kind").as_str().unwrap_or(""),
            c.w,
            c.f,
            c.g,
            c.residue.as_deref().unwrap_or("")
        ));
    }
    if let Some(x) = &r.equivalence_crosschecks {
        let cd = x.cd_identity.as_ref().map_or("skipped".to_string(), |c| c.verdict.to_string());
        s.push_str(&format!(
            "cross-checks: forks {} ({}), strategy {} ({}), dimension identity {}, associative {} ({}) -> agree {}\n",
            x.forks_joinable.verdict,
            x.forks_joinable.checked,
            x.strategy_independent.verdict,
            x.strategy_independent.checked,
            cd,
            x.associative.verdict,
            x.associative.checked,
            x.agree
        ));
    }
    if r.repeated_tail_factors > 0 {
        s.push_str(&format!("repeated tail factors: {}\n", r.repeated_tail_factors));
    }
    s.push_str(&format!("verdict: {}", r.verdict));
    s
}
