use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use msemi_core::cover::{covers, DEFAULT_SEARCH_BUDGET};
use msemi_core::harness::{mine, verify_property, Claim, Corpus, CorpusSpec, GenConfig, Remark};
use msemi_core::io::{read_topology_file, topology_to_json_string, LoadedFile};
use msemi_core::mset::{family_text, DEFAULT_ENUMERATION_BUDGET};
use msemi_core::{
    check_fip_scl, check_fip_scm, condition_checklist, decide_compactness, find_subcover, has_fip,
    is_semi_closed, is_semi_open, is_semi_open_cover, topology_from_basis, validate_basis, Cover, Error, Exec,
    MSet, MTopology, SemiAlgorithm, SemiFamily, SubcoverFilter, Variant,
};

const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "msemi", version, about = "Finite multiset topology: semi-open M-sets and semi compactness")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Enumeration and search budget; defaults depend on the operation.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for random corpora.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Omit wall-clock timings from reports.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Run corpus sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check a file's tau against the M-topology axioms.
    Validate { file: PathBuf },
    /// Interior of an M-set.
    Interior { file: PathBuf, set: String },
    /// Closure of an M-set.
    Closure { file: PathBuf, set: String },
    /// The subspace topology on a sub-M-set.
    Subspace { file: PathBuf, set: String },
    /// Check a file's basis and print the topology it generates.
    Basis { file: PathBuf },
    /// Semi-open M-sets.
    Som {
        #[command(subcommand)]
        action: SemiAction,
    },
    /// Semi-closed M-sets.
    Scm {
        #[command(subcommand)]
        action: SemiAction,
    },
    /// Semi interior: union of the semi-open M-sets inside the given one.
    Sint { file: PathBuf, set: String },
    /// Semi closure: intersection of the semi-closed M-sets containing it.
    Scl { file: PathBuf, set: String },
    /// Evaluate the sufficient conditions for semi-openness and semi-closedness.
    Checklist { file: PathBuf, set: String },
    /// Covers of the ground M-set.
    Cover {
        #[command(subcommand)]
        action: CoverAction,
    },
    /// Smallest subcover of a semi-open cover whose members pass a filter.
    Subcover {
        file: PathBuf,
        #[arg(long, default_value = "any")]
        filter: SubcoverFilter,
        #[arg(required = true)]
        members: Vec<String>,
    },
    /// Decide a semi-compactness variant (all four when omitted).
    Compact {
        file: PathBuf,
        #[arg(long)]
        variant: Option<Variant>,
    },
    /// Finite intersection property of the given family, or the FIP
    /// characterizations of semi compactness when no family is given.
    Fip { file: PathBuf, members: Vec<String> },
    /// Check a catalogued claim over a corpus.
    Verify {
        /// Claim id (T3.6, T3.9, T3.10, T3.11, T3.12, SCM-intersection, T4.11, T4.12, T4.15) or `all`.
        #[arg(long)]
        claim: String,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Search a corpus for a witness to a remark (3.7, 3.8, 3.13).
    Mine {
        #[arg(long)]
        remark: Remark,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
}

#[derive(Subcommand)]
enum SemiAction {
    /// Every member, in canonical order.
    List { file: PathBuf },
    /// Membership of one M-set.
    Check {
        file: PathBuf,
        set: String,
        #[arg(long, value_enum, default_value_t = Algorithm::Both)]
        algorithm: Algorithm,
    },
}

#[derive(Subcommand)]
enum CoverAction {
    /// Is the family a semi-open cover of M.
    Check {
        file: PathBuf,
        #[arg(required = true)]
        members: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Witness,
    Criterion,
    Both,
}

impl From<Algorithm> for SemiAlgorithm {
    fn from(a: Algorithm) -> Self {
        match a {
            Algorithm::Witness => SemiAlgorithm::Witness,
            Algorithm::Criterion => SemiAlgorithm::Criterion,
            Algorithm::Both => SemiAlgorithm::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusKind {
    /// All topologies over |X|=2, w=1 and |X|=1, w=2.
    ExhaustiveSmall,
    /// All topologies over |X| ≤ 2, w ≤ 2.
    Exhaustive,
    /// Seeded random topologies.
    Random,
    /// Exhaustive small spaces plus random |X| ≤ 3, w ≤ 5.
    Mining,
    /// The topology files given with --file.
    Files,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, value_enum)]
    corpus: Option<CorpusKind>,
    /// Topology files; implies --corpus files.
    #[arg(long = "file")]
    files: Vec<PathBuf>,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 3)]
    max_domain: usize,
    #[arg(long, default_value_t = 3)]
    max_w: u32,
    #[arg(long, default_value_t = 0.3)]
    density: f64,
}

/// What a command produced: an exit status and a report in both forms.
struct Report {
    status: u8,
    text: String,
    json: Value,
}

impl Report {
    fn new(status: bool, text: impl Into<String>, json: Value) -> Self {
        Report {
            status: if status { 0 } else { 1 },
            text: text.into(),
            json,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            match cli.output {
                Output::Text => print!("{}", with_newline(report.text)),
                Output::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("json")),
            }
            ExitCode::from(report.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 2 } else { EXIT_INPUT })
        }
    }
}

fn with_newline(mut s: String) -> String {
    if !s.is_empty() && !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn load(path: &Path) -> Result<LoadedFile, Error> {
    read_topology_file(path).map_err(|e| match e {
        Error::Io(msg) => Error::Io(format!("{}: {msg}", path.display())),
        Error::Parse { line, column, message } => Error::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

fn topology(path: &Path) -> Result<MTopology, Error> {
    load(path)?.topology()
}

fn parse_set(t: &MTopology, text: &str) -> Result<MSet, Error> {
    MSet::parse(t.ground().space(), text)
}

fn parse_sets(t: &MTopology, texts: &[String]) -> Result<Vec<MSet>, Error> {
    texts.iter().map(|s| parse_set(t, s)).collect()
}

fn lines(family: &[MSet]) -> String {
    family.iter().map(|s| s.to_text() + "\n").collect()
}

fn texts(family: &[MSet]) -> Vec<String> {
    family.iter().map(MSet::to_text).collect()
}

impl Cli {
    fn enumeration_budget(&self) -> u64 {
        self.budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET)
    }

    fn search_budget(&self) -> u64 {
        self.budget.unwrap_or(DEFAULT_SEARCH_BUDGET)
    }

    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }

    fn semi(&self, path: &Path) -> Result<SemiFamily, Error> {
        SemiFamily::new(&topology(path)?, self.enumeration_budget())
    }

    fn corpus(&self, args: &CorpusArgs, default: CorpusKind) -> Result<Corpus, Error> {
        let kind = match (args.corpus, args.files.is_empty()) {
            (Some(k), _) => k,
            (None, false) => CorpusKind::Files,
            (None, true) => default,
        };
        let spec = match kind {
            CorpusKind::ExhaustiveSmall => CorpusSpec::exhaustive_small(),
            CorpusKind::Exhaustive => CorpusSpec::exhaustive_default(),
            CorpusKind::Mining => CorpusSpec::mining_default(self.seed),
            CorpusKind::Random => CorpusSpec::Random(GenConfig {
                max_domain: args.max_domain,
                max_w: args.max_w,
                seed: self.seed,
                density: args.density,
                trials: args.trials,
            }),
            CorpusKind::Files => {
                if args.files.is_empty() {
                    return Err(Error::Io("--corpus files needs at least one --file".into()));
                }
                let specs = args
                    .files
                    .iter()
                    .map(|p| Ok(CorpusSpec::fixture(p.display().to_string(), topology(p)?)))
                    .collect::<Result<Vec<_>, Error>>()?;
                CorpusSpec::Union(specs)
            }
        };
        spec.materialize(self.exec())
    }
}

fn run(cli: &Cli) -> Result<Report, Error> {
    Ok(match &cli.command {
        Command::Validate { file } => {
            let report = load(file)?.validate()?;
            let mut text = String::new();
            if report.is_valid() {
                text.push_str(&format!("valid M-topology on {} with {} members\n", report.ground, report.members));
            } else {
                text.push_str("not an M-topology\n");
                for v in &report.violations {
                    text.push_str(&format!("  {v}\n"));
                }
            }
            if report.duplicates > 0 {
                text.push_str(&format!("{} duplicate members ignored\n", report.duplicates));
            }
            Report::new(report.is_valid(), text, json!(report))
        }
        Command::Interior { file, set } | Command::Closure { file, set } => {
            let t = topology(file)?;
            let a = parse_set(&t, set)?;
            let r = match cli.command {
                Command::Interior { .. } => t.interior(&a)?,
                _ => t.closure(&a)?,
            };
            Report::new(true, r.to_text(), json!(r.to_text()))
        }
        Command::Subspace { file, set } => {
            let t = topology(file)?;
            let sub = t.subspace(&parse_set(&t, set)?)?;
            Report::new(
                true,
                lines(sub.open_sets()),
                serde_json::from_str(&topology_to_json_string(&sub)).expect("json"),
            )
        }
        Command::Basis { file } => {
            let loaded = load(file)?;
            let basis = loaded
                .basis
                .as_ref()
                .ok_or_else(|| Error::MalformedFamily("file has no `basis` list".into()))?;
            let report = validate_basis(&loaded.ground, basis)?;
            if !report.is_valid() {
                let text: String = std::iter::once("not an M-basis\n".to_string())
                    .chain(report.violations.iter().map(|v| format!("  {v}\n")))
                    .collect();
                return Ok(Report::new(false, text, json!({ "basis": report })));
            }
            let t = topology_from_basis(&loaded.ground, basis)?;
            let topology: Value = serde_json::from_str(&topology_to_json_string(&t)).expect("json");
            Report::new(true, lines(t.open_sets()), json!({ "basis": report, "topology": topology }))
        }
        Command::Som { action } | Command::Scm { action } => {
            let open = matches!(cli.command, Command::Som { .. });
            match action {
                SemiAction::List { file } => {
                    let sf = cli.semi(file)?;
                    let family = if open { sf.som() } else { sf.scm() };
                    Report::new(true, lines(family), json!(texts(family)))
                }
                SemiAction::Check { file, set, algorithm } => {
                    let t = topology(file)?;
                    let s = parse_set(&t, set)?;
                    let v = if open {
                        is_semi_open(&t, &s, (*algorithm).into())?
                    } else {
                        is_semi_closed(&t, &s, (*algorithm).into())?
                    };
                    let (name, kind) = if open {
                        ("semi-open", "open")
                    } else {
                        ("semi-closed", "closed")
                    };
                    let mut text = format!("{s} is {}{name}\n", if v.holds { "" } else { "not " });
                    if let Some(w) = &v.witness {
                        text.push_str(&format!("witness {kind} M-set: {w}\n"));
                    }
                    let witness = v.witness.as_ref().map(MSet::to_text);
                    Report::new(v.holds, text, json!({ "set": s.to_text(), "holds": v.holds, "witness": witness }))
                }
            }
        }
        Command::Sint { file, set } | Command::Scl { file, set } => {
            let sf = cli.semi(file)?;
            let a = parse_set(sf.topology(), set)?;
            let r = match cli.command {
                Command::Sint { .. } => sf.semi_interior(&a)?,
                _ => sf.semi_closure(&a)?,
            };
            Report::new(true, r.to_text(), json!(r.to_text()))
        }
        Command::Checklist { file, set } => {
            let sf = cli.semi(file)?;
            let a = parse_set(sf.topology(), set)?;
            let r = condition_checklist(&sf, &a)?;
            let mut text = format!("{}: semi-open {}, semi-closed {}\n", r.set, r.is_som, r.is_scm);
            for (label, conds) in [("SOM", &r.som_conditions), ("SCM", &r.scm_conditions)] {
                for (name, holds) in conds.iter() {
                    text.push_str(&format!("  {label} [{}] {name}\n", if *holds { "x" } else { " " }));
                }
            }
            Report::new(r.sound, text, json!(r))
        }
        Command::Cover {
            action: CoverAction::Check { file, members },
        } => {
            let sf = cli.semi(file)?;
            let t = sf.topology();
            let family = parse_sets(t, members)?;
            let covering = covers(t.ground(), &family);
            let semi_open = is_semi_open_cover(&sf, &family)?;
            let non_som: Vec<String> = family.iter().filter(|s| !sf.is_som(s)).map(MSet::to_text).collect();
            let mut text = format!(
                "{} {} a semi-open cover of {}\n",
                family_text(&family),
                if semi_open { "is" } else { "is not" },
                t.ground()
            );
            if !covering {
                text.push_str("  the members do not dominate M\n");
            }
            for s in &non_som {
                text.push_str(&format!("  {s} is not semi-open\n"));
            }
            Report::new(
                semi_open,
                text,
                json!({ "cover": texts(&family), "covers": covering, "semi_open_cover": semi_open, "not_semi_open": non_som }),
            )
        }
        Command::Subcover { file, filter, members } => {
            let sf = cli.semi(file)?;
            let t = sf.topology();
            let cover = Cover::new(t.ground().clone(), parse_sets(t, members)?)?;
            let found = find_subcover(&sf, &cover, *filter, cli.search_budget())?;
            let text = match &found {
                Some(sub) => format!("subcover: {}\n", family_text(sub)),
                None => "no qualifying subcover\n".to_string(),
            };
            let sub = found.as_ref().map(|s| texts(s));
            Report::new(found.is_some(), text, json!({ "filter": filter, "subcover": sub }))
        }
        Command::Compact { file, variant } => {
            let sf = cli.semi(file)?;
            let variants: Vec<Variant> = variant.map_or(Variant::ALL.to_vec(), |v| vec![v]);
            let mut text = String::new();
            let mut all = true;
            let mut verdicts = Vec::new();
            for v in variants {
                let verdict = decide_compactness(&sf, v, cli.search_budget())?;
                all &= verdict.holds;
                text.push_str(&format!(
                    "{}: {} ({} covers examined)\n",
                    v,
                    if verdict.holds { "holds" } else { "fails" },
                    verdict.certificate.covers_examined
                ));
                if let Some(w) = &verdict.witness {
                    text.push_str(&format!("  witness cover: {}\n", family_text(w)));
                }
                verdicts.push(json!(verdict));
            }
            let json = if verdicts.len() == 1 { verdicts.pop().unwrap() } else { json!(verdicts) };
            Report::new(all, text, json)
        }
        Command::Fip { file, members } => {
            let sf = cli.semi(file)?;
            if !members.is_empty() {
                let family = parse_sets(sf.topology(), members)?;
                let fip = has_fip(&family);
                let text = format!("{} {} the finite intersection property\n", family_text(&family), if fip { "has" } else { "lacks" });
                return Ok(Report::new(fip, text, json!({ "family": texts(&family), "fip": fip })));
            }
            let mut text = String::new();
            let mut reports = Vec::new();
            let mut agree = true;
            for result in [check_fip_scm(&sf), check_fip_scl(&sf)] {
                match result {
                    Ok(r) => {
                        agree &= r.agree;
                        text.push_str(&format!(
                            "{}: semi compact {}, FIP side {}, {} ({} collections)\n",
                            r.theorem,
                            r.left,
                            r.right,
                            if r.agree { "agree" } else { "disagree" },
                            r.collections_checked
                        ));
                        reports.push(json!(r));
                    }
                    Err(e) if e.is_budget() => {
                        text.push_str(&format!("skipped: {e}\n"));
                        reports.push(json!({ "skipped": e.to_string() }));
                    }
                    Err(e) => return Err(e),
                }
            }
            Report::new(agree, text, json!(reports))
        }
        Command::Verify { claim, corpus } => {
            let claims: Vec<Claim> = if claim.eq_ignore_ascii_case("all") {
                Claim::ALL.to_vec()
            } else {
                vec![claim.parse()?]
            };
            let corpus = cli.corpus(corpus, CorpusKind::ExhaustiveSmall)?;
            let mut text = format!(
                "corpus {} ({} members, fingerprint {})\n",
                corpus.info.kind,
                corpus.info.members,
                &corpus.info.fingerprint[..16]
            );
            let mut ok = true;
            let mut reports = Vec::new();
            for c in claims {
                let mut r = verify_property(c, &corpus, cli.exec())?;
                if cli.no_timing {
                    r = r.without_timing();
                }
                ok &= r.passed();
                text.push_str(&format!(
                    "{}: {} ({} trials, {} skipped, {} checks, {} violations, {} findings)\n",
                    r.claim,
                    if r.passed() { "holds" } else { "VIOLATED" },
                    r.trials,
                    r.skipped,
                    r.checks,
                    r.violations.len(),
                    r.findings.len()
                ));
                if let Some(t) = &r.table {
                    text.push_str(&format!(
                        "  agreement: both {}, left only {}, right only {}, neither {}\n",
                        t.both_true, t.left_only, t.right_only, t.both_false
                    ));
                }
                for v in r.violations.iter().chain(&r.findings) {
                    text.push_str(&format!("  {}: {}\n", v.recheck, v.detail));
                }
                reports.push(serde_json::to_value(&r).expect("json"));
            }
            let json = if reports.len() == 1 { reports.pop().unwrap() } else { json!(reports) };
            Report::new(ok, text, json)
        }
        Command::Mine { remark, corpus } => {
            let corpus = cli.corpus(corpus, CorpusKind::Mining)?;
            let mut r = mine(*remark, &corpus, cli.exec())?;
            if cli.no_timing {
                r = r.without_timing();
            }
            let mut text = format!(
                "remark {}: searched {} topologies ({} skipped)\n",
                r.remark, r.searched, r.skipped
            );
            match &r.witness {
                Some(w) => {
                    text.push_str(&format!("witness: {}\n", w.detail));
                    for group in &w.offending {
                        text.push_str(&format!("  {}\n", group.join(", ")));
                    }
                    text.push_str(&format!("  in {}\n", serde_json::to_string(&w.fixture).expect("json")));
                }
                None => text.push_str("no witness found\n"),
            }
            if let Some(t) = &r.table {
                text.push_str(&format!(
                    "closures-of-opens condition vs som is a topology: both {}, condition only {}, topology only {}, neither {}\n",
                    t.both_true, t.left_only, t.right_only, t.both_false
                ));
                text.push_str(&format!("{} surprises\n", r.surprises.len()));
            }
            Report::new(r.found(), text, serde_json::to_value(&r).expect("json"))
        }
    })
}
