use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use braidkit::garside::conjugating_element;
use braidkit::invariants::soundness::jones_any_length;
use braidkit::invariants::{alexander_polynomial, template_soundness_check};
use braidkit::moves::{self, DEFAULT_DESTAB_DEPTH};
use braidkit::search::{connect, MoveSet, SearchBounds, SearchOutcome};
use braidkit::sequence::{MoveKind, MoveParams, MoveSequence, MoveStep};
use braidkit::templates::Template;
use braidkit::transverse::component_invariants;
use braidkit::verify::{verify_with, VerifyOptions};
use braidkit::{left_normal_form, super_summit_set, BraidWord, Error};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "braidkit",
    version,
    about = "Closed braids, Markov moves and transverse invariants"
)]
struct Cli {
    /// Strand count for braid words. Inferred from the largest generator when omitted.
    #[arg(short = 'n', long = "strands", global = true)]
    strands: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for parallel evaluation.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Left normal form.
    Normalize { word: String },
    /// Decide conjugacy; exit 1 when not conjugate.
    Conjugate { first: String, second: String },
    /// Self-linking numbers, linking numbers and polynomials.
    Invariants { word: String },
    /// Apply one move, or replay a move sequence file.
    Move(MoveArgs),
    /// Bounded search for a move sequence; exit 1 when exhausted.
    Search(SearchArgs),
    /// Template utilities.
    #[command(subcommand)]
    Template(TemplateCommand),
    /// Iterates P σ Q' σ⁻¹ with Q wound around the last strand.
    Winding { p: String, q: String, count: usize },
    /// Run the flype-pair computations.
    VerifyPaper {
        /// Random cases for the self-linking checks.
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 100_000)]
        max_nodes: usize,
    },
}

#[derive(Args, Debug)]
struct MoveArgs {
    /// stab+, stab-, destab, destab+, destab-, exchange, flype, flype+, flype-, conjugation.
    #[arg(required_unless_present = "replay")]
    kind: Option<String>,
    /// The word to move; with --replay, the source word.
    word: Option<String>,
    /// Rotation for exchange and flype.
    #[arg(long)]
    rotation: Option<usize>,
    /// Conjugator g for `conjugation` (result g⁻¹ w g).
    #[arg(long = "by")]
    by: Option<String>,
    /// Conjugation depth for `destab`.
    #[arg(long, default_value_t = DEFAULT_DESTAB_DEPTH)]
    depth: usize,
    /// Move sequence JSON file to replay.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["rotation", "by"])]
    replay: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    source: String,
    target: String,
    #[arg(long)]
    transverse: bool,
    #[arg(long, default_value_t = 5)]
    max_strands: usize,
    #[arg(long, default_value_t = 24)]
    max_length: usize,
    #[arg(long, default_value_t = 10_000)]
    max_nodes: usize,
    /// Layers of simple-element conjugates tried as extra move sites.
    #[arg(long, default_value_t = 0)]
    view_depth: usize,
}

#[derive(Subcommand, Debug)]
enum TemplateCommand {
    /// Fuzz a built-in template or a template JSON file.
    Check {
        template: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// List built-in templates.
    List,
}

/// What a command reports back.
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx {
    strands: Option<usize>,
    json: bool,
    seed: Option<u64>,
}

impl Ctx {
    fn word(&self, text: &str) -> Result<BraidWord, Failure> {
        let word = match self.strands {
            Some(n) => BraidWord::parse(text, n)?,
            None => BraidWord::parse_minimal(text)?,
        };
        Ok(word)
    }

    /// Two words on a common strand count.
    fn pair(&self, a: &str, b: &str) -> Result<(BraidWord, BraidWord), Failure> {
        let (a, b) = (self.word(a)?, self.word(b)?);
        let n = a.n_strands().max(b.n_strands());
        Ok((a.widened(n)?, b.widened(n)?))
    }

    fn emit(&self, value: Value, text: impl FnOnce() -> String) {
        if self.json {
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("json values serialize")
            );
        } else {
            println!("{}", text());
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx {
        strands: cli.strands,
        json: cli.json,
        seed: cli.seed,
    };
    match run(&ctx, cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Outcome {
    match command {
        Command::Normalize { word } => normalize(ctx, &word),
        Command::Conjugate { first, second } => conjugate(ctx, &first, &second),
        Command::Invariants { word } => invariants(ctx, &word),
        Command::Move(args) => apply_move(ctx, args),
        Command::Search(args) => search(ctx, args),
        Command::Template(TemplateCommand::Check {
            template,
            trials,
            max_len,
        }) => template_check(ctx, &template, trials, max_len),
        Command::Template(TemplateCommand::List) => {
            let names: Vec<&str> = Template::BUILTIN_NAMES.to_vec();
            ctx.emit(json!(names), || names.join("\n"));
            Ok(true)
        }
        Command::Winding { p, q, count } => winding(ctx, &p, &q, count),
        Command::VerifyPaper { cases, max_nodes } => verify_paper(ctx, cases, max_nodes),
    }
}

fn normalize(ctx: &Ctx, text: &str) -> Outcome {
    let word = ctx.word(text)?;
    let nf = left_normal_form(&word);
    ctx.emit(
        json!({
            "word": word,
            "normal_form": nf,
            "display": nf.to_string(),
            "inf": nf.inf(),
            "sup": nf.sup(),
            "canonical_length": nf.canonical_length(),
        }),
        || nf.to_string(),
    );
    Ok(true)
}

fn conjugate(ctx: &Ctx, a: &str, b: &str) -> Outcome {
    let (u, v) = ctx.pair(a, b)?;
    let g = conjugating_element(&u, &v)?;
    ctx.emit(
        json!({ "conjugate": g.is_some(), "conjugator": g }),
        || match &g {
            Some(g) => format!("conjugate\nconjugator: {g}"),
            None => "not conjugate".into(),
        },
    );
    Ok(g.is_some())
}

fn invariants(ctx: &Ctx, text: &str) -> Outcome {
    let word = ctx.word(text)?;
    let transverse = component_invariants(&word)?;
    let components = word.closure_components();
    let jones = jones_any_length(&word)?;
    let alexander = alexander_polynomial(&word)?;
    ctx.emit(
        json!({
            "word": word,
            "strands": word.n_strands(),
            "exponent_sum": word.exponent_sum(),
            "components": components.count(),
            "component_strands": components.cycles(),
            "beta": transverse.beta_total,
            "per_component_beta": transverse.per_component,
            "linking": transverse.pairwise_linking,
            "jones": jones,
            "jones_display": jones.display_with("q"),
            "alexander": alexander.polynomial,
            "alexander_display": alexander.polynomial.display_with("t"),
        }),
        || {
            let mut lines = vec![
                format!("strands: {}", word.n_strands()),
                format!("exponent sum: {}", word.exponent_sum()),
                format!("components: {}", components.count()),
                format!("beta: {}", transverse.beta_total),
            ];
            if components.count() > 1 {
                for (c, beta) in &transverse.per_component {
                    lines.push(format!(
                        "beta(L{c}): {beta}  strands {:?}",
                        components.cycles()[c - 1]
                    ));
                }
                for p in &transverse.pairwise_linking {
                    lines.push(format!(
                        "lk(L{}, L{}): {}",
                        p.components.0, p.components.1, p.linking
                    ));
                }
            }
            lines.push(format!("jones: {}", jones.display_with("q")));
            lines.push(format!(
                "alexander: {}",
                alexander.polynomial.display_with("t")
            ));
            lines.join("\n")
        },
    );
    Ok(true)
}

fn print_sequence(ctx: &Ctx, source: &BraidWord, seq: &MoveSequence) {
    ctx.emit(
        serde_json::to_value(seq).expect("sequences serialize"),
        || {
            let mut lines = vec![format!("start: {source} ({} strands)", source.n_strands())];
            for (i, step) in seq.steps().iter().enumerate() {
                let mut extra = String::new();
                if let Some(g) = &step.params.conjugator {
                    let g = BraidWord::from_signed(step.result.n_strands(), g)
                        .map(|g| g.to_string())
                        .unwrap_or_default();
                    extra = format!(" by [{g}]");
                }
                if let Some(r) = step.params.rotation {
                    extra = format!(" at rotation {r}");
                }
                lines.push(format!(
                    "{:>3}. {}{extra} -> {} ({} strands)",
                    i + 1,
                    step.kind,
                    step.result,
                    step.result.n_strands()
                ));
            }
            lines.join("\n")
        },
    );
}

fn apply_move(ctx: &Ctx, args: MoveArgs) -> Outcome {
    if let Some(path) = &args.replay {
        let source = match (&args.kind, &args.word) {
            (Some(w), None) | (None, Some(w)) => ctx.word(w)?,
            _ => {
                return Err(Failure::Usage(
                    "--replay takes exactly one source word".into(),
                ))
            }
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let seq = MoveSequence::from_json(&text)?;
        return match seq.replay(&source) {
            Ok(end) => {
                ctx.emit(
                    json!({ "valid": true, "steps": seq.len(), "final_word": end }),
                    || {
                        format!(
                            "valid: {} steps\nfinal: {end} ({} strands)",
                            seq.len(),
                            end.n_strands()
                        )
                    },
                );
                Ok(true)
            }
            Err(e) => {
                ctx.emit(json!({ "valid": false, "error": e.to_string() }), || {
                    format!("invalid: {e}")
                });
                Ok(false)
            }
        };
    }
    let kind = args.kind.as_deref().expect("clap requires a kind");
    let text = args
        .word
        .as_deref()
        .ok_or_else(|| Failure::Usage(format!("{kind} needs a word")))?;
    let word = ctx.word(text)?;
    let mut seq = MoveSequence::new();
    match kind {
        "destab" => {
            let Some(d) = moves::try_destabilize(&word, args.depth) else {
                ctx.emit(json!(null), || "no destabilization found".into());
                return Ok(false);
            };
            let lowered = moves::stabilize(&d.word, d.sign);
            if lowered != word {
                seq.push(MoveStep {
                    kind: MoveKind::Conjugation,
                    params: MoveParams {
                        conjugator: Some(d.conjugator.signed()),
                        rotation: None,
                    },
                    result: lowered.clone(),
                });
            }
            seq.push(MoveStep::apply(
                MoveKind::destab(d.sign),
                MoveParams::default(),
                &lowered,
            )?);
        }
        "exchange" | "flype" | "flype+" | "flype-" | "flype−" => {
            let rotation = match args.rotation {
                Some(r) => r,
                None => {
                    let found = if kind == "exchange" {
                        moves::find_exchange_decompositions(&word)
                            .first()
                            .map(|d| d.rotation)
                    } else {
                        let want = kind.strip_prefix("flype").map(|s| s.replace('−', "-"));
                        moves::find_flypes(&word)
                            .into_iter()
                            .find(|f| match want.as_deref() {
                                Some("+") => f.epsilon > 0,
                                Some("-") => f.epsilon < 0,
                                _ => true,
                            })
                            .map(|f| f.rotation)
                    };
                    let Some(r) = found else {
                        ctx.emit(json!(null), || format!("no {kind} decomposition found"));
                        return Ok(false);
                    };
                    r
                }
            };
            let kind = match kind {
                "exchange" => MoveKind::Exchange,
                "flype" => MoveKind::flype(moves::flype_at(&word, rotation)?.epsilon),
                signed => signed.replace('−', "-").parse()?,
            };
            match MoveStep::with_rotation(kind, rotation, &word) {
                Ok(step) => seq.push(step),
                Err(Error::InvalidDecomposition(reason)) => {
                    ctx.emit(json!(null), || reason.clone());
                    return Ok(false);
                }
                Err(e) => return Err(e.into()),
            }
        }
        "conjugation" => {
            let g = args
                .by
                .as_deref()
                .ok_or_else(|| Failure::Usage("conjugation needs --by <word>".into()))?;
            let g = BraidWord::parse(g, word.n_strands())?;
            seq.push(MoveStep::conjugation(&word, &g)?);
        }
        other => {
            let kind: MoveKind = other.parse()?;
            match MoveStep::apply(kind, MoveParams::default(), &word) {
                Ok(step) => seq.push(step),
                Err(Error::InvalidDecomposition(reason)) => {
                    ctx.emit(json!(null), || reason.clone());
                    return Ok(false);
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    print_sequence(ctx, &word, &seq);
    Ok(true)
}

fn search(ctx: &Ctx, args: SearchArgs) -> Outcome {
    let source = ctx.word(&args.source)?;
    let target = ctx.word(&args.target)?;
    let set = if args.transverse {
        MoveSet::Transverse
    } else {
        MoveSet::Topological
    };
    let mut bounds = SearchBounds::new(args.max_strands, args.max_length, args.max_nodes, set);
    bounds.view_depth = args.view_depth;
    let result = connect(&source, &target, &bounds)?;
    let s = &result.stats;
    let stats = format!(
        "nodes expanded: {}\nfrontier peak: {}\ndedup hits: {}\nnode limit hit: {}\nweakly deduplicated: {}",
        s.nodes_expanded, s.frontier_peak, s.dedup_hits, s.node_limit_hit, s.weak_dedup_count
    );
    if ctx.json {
        ctx.emit(
            serde_json::to_value(&result).expect("results serialize"),
            String::new,
        );
    } else {
        match &result.outcome {
            SearchOutcome::Found(seq) => {
                println!("found: {} moves", seq.len());
                print_sequence(ctx, &source, seq);
            }
            SearchOutcome::Exhausted => println!("exhausted"),
        }
        println!("{stats}");
    }
    Ok(matches!(result.outcome, SearchOutcome::Found(_)))
}

fn template_check(ctx: &Ctx, name: &str, trials: usize, max_len: usize) -> Outcome {
    let seed = ctx
        .seed
        .ok_or_else(|| Failure::Usage("template check needs --seed".into()))?;
    let template = match Template::builtin(name) {
        Some(t) => t,
        None => {
            let text = std::fs::read_to_string(name).map_err(|e| {
                Failure::Usage(format!(
                    "{name} is not a built-in template or readable file: {e}"
                ))
            })?;
            Template::from_json(&text)?
        }
    };
    let report = template_soundness_check(&template, trials, max_len, seed);
    ctx.emit(
        serde_json::to_value(&report).expect("reports serialize"),
        || {
            let mut lines = vec![format!(
                "{}: {} trials, block length <= {}, seed {}: {}",
                report.template,
                report.trials,
                report.max_len,
                report.seed,
                if report.passed() { "passed" } else { "FAILED" }
            )];
            for f in report.failures.iter().take(5) {
                lines.push(format!(
                    "  trial {}: {} ({:?})",
                    f.trial, f.reason, f.assignment
                ));
            }
            if report.failures.len() > 5 {
                lines.push(format!("  ... {} failures in total", report.failures.len()));
            }
            lines.join("\n")
        },
    );
    Ok(report.passed())
}

fn winding(ctx: &Ctx, p: &str, q: &str, count: usize) -> Outcome {
    let (p, q) = ctx.pair(p, q)?;
    let iterates = moves::winding_iterates(&p, &q, count)?;
    let mut rows = Vec::new();
    let mut classes = BTreeSet::new();
    for (k, w) in iterates.iter().enumerate() {
        let key = super_summit_set(w)?;
        let jones = jones_any_length(w)?;
        let new_class = classes.insert(key);
        rows.push(json!({
            "k": k,
            "word": w,
            "display": w.to_string(),
            "jones": jones.display_with("q"),
            "new_class": new_class,
        }));
    }
    ctx.emit(
        json!({ "iterates": rows, "distinct_classes": classes.len() }),
        || {
            let mut lines: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "w{}: {}  jones {}{}",
                        r["k"],
                        r["display"].as_str().unwrap_or_default(),
                        r["jones"].as_str().unwrap_or_default(),
                        if r["new_class"] == json!(true) {
                            "  (new class)"
                        } else {
                            ""
                        }
                    )
                })
                .collect();
            lines.push(format!("distinct conjugacy classes: {}", classes.len()));
            lines.join("\n")
        },
    );
    Ok(true)
}

fn verify_paper(ctx: &Ctx, cases: usize, max_nodes: usize) -> Outcome {
    let options = VerifyOptions {
        seed: ctx.seed.unwrap_or(0),
        random_cases: cases,
        search_nodes: max_nodes,
    };
    let report = verify_with(&options);
    ctx.emit(
        serde_json::to_value(&report).expect("reports serialize"),
        || {
            report
                .items
                .iter()
                .map(|i| {
                    format!(
                        "({}) {} {}: {}",
                        i.id,
                        if i.passed { "PASS" } else { "FAIL" },
                        i.claim,
                        i.detail
                    )
                })
                .collect::<Vec<_>>()
                .join("\n")
        },
    );
    match report.first_failure() {
        None => Ok(true),
        Some(item) => Err(Failure::Internal(format!(
            "item ({}) failed: {}",
            item.id, item.claim
        ))),
    }
}
