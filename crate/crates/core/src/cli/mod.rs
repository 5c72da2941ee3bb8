//! Command-line dispatch. [`execute`] returns the exit code and the report text,
//! so the binary, the C interface and the tests all share one code path.

mod format;
mod selftest;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::arith::Integer;
use crate::genus::{check_cor23_fastpath, check_para, check_tau_monomorphism, thm34_hirsch_check, annihilator_polynomials, HirschMode, DEFAULT_DEPTH};
use crate::nilpotent::{isolator, lower_central_series, subgroup_lower_central_terms, tau, PrimeSet, Subgroup};
use crate::pcgroup::check_consistency;
use crate::report::{CheckReport, Verdict, Witness};

pub use format::{parse_file, parse_matrix, parse_word, write_group, write_hom, GroupFile, NamedGroup, NamedHom, ParseError};

#[derive(Parser, Debug)]
#[command(name = "paranil", version, about = "Polycyclic group computations and nilpotent-genus certificates")]
struct Cli {
    /// Seed for `selftest`
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print the report as JSON
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    I,
    Ii,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the overlap tests on a presentation
    Consistency {
        file: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// Lower central series with the invariants of each step
    Lcs {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long)]
        group: Option<String>,
    },
    /// Primes occurring as torsion in lower central steps
    Tau {
        file: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// Hirsch length
    Hirsch {
        file: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// The isolator I_P(gamma_K)
    Isolator {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        primes: String,
        #[arg(long)]
        group: Option<String>,
    },
    /// Write the file's groups and homomorphisms as plain sections
    Build {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check that a homomorphism induces isomorphisms on lower central quotients
    CheckPara {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long)]
        hom: Option<String>,
    },
    /// Check a lower central tau-monomorphism
    CheckTau {
        file: PathBuf,
        #[arg(long)]
        tau: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long)]
        hom: Option<String>,
    },
    /// Single-layer para certificate when H' has class at most 2
    CheckCor23 {
        file: PathBuf,
        #[arg(long)]
        hom: Option<String>,
    },
    /// Compare Hirsch lengths of the domain and codomain of a homomorphism
    CheckThm34 {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        hom: Option<String>,
    },
    /// Annihilating polynomials of an abelian normal subgroup under an element
    Annihilator {
        file: PathBuf,
        /// comma-separated generator words
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        group: Option<String>,
    },
    /// Randomized checks against independent oracles
    Selftest,
}

/// Rendered output of one invocation.
struct Output {
    text: String,
    report: Option<CheckReport>,
    code: i32,
}

impl Output {
    fn info(text: String) -> Self {
        Output { text, report: None, code: 0 }
    }

    fn report(r: CheckReport) -> Self {
        Output { text: r.render(), code: r.verdict.exit_code(), report: Some(r) }
    }
}

enum Failure {
    Usage(String),
    Parse(PathBuf, ParseError),
    Io(PathBuf, std::io::Error),
    Semantic(String),
    Compute(crate::Error),
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Compute(e)
    }
}

/// Runs one command line (`args[0]` is the program name). Exit codes: 0 pass,
/// 1 fail, 2 error.
pub fn execute<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                (out.code, to_json(&out))
            } else {
                (out.code, out.text)
            }
        }
        Err(f) => {
            let msg = match f {
                Failure::Usage(m) | Failure::Semantic(m) => m,
                Failure::Parse(path, e) => format!("{}: {e}", path.display()),
                Failure::Io(path, e) => format!("{}: {e}", path.display()),
                Failure::Compute(e) => e.to_string(),
            };
            (2, format!("error: {msg}\n"))
        }
    }
}

fn to_json(out: &Output) -> String {
    let value = match &out.report {
        Some(r) => {
            let witnesses: serde_json::Map<String, serde_json::Value> =
                r.witnesses.iter().map(|(k, v)| (k.clone(), serde_json::Value::String(v.to_string()))).collect();
            serde_json::json!({
                "verdict": r.verdict.to_string(),
                "summary": r.summary,
                "depth_checked": r.depth_checked,
                "witnesses": witnesses,
            })
        }
        None => serde_json::json!({ "verdict": "pass", "summary": out.text.trim_end() }),
    };
    let mut s = serde_json::to_string_pretty(&value).expect("json of strings");
    s.push('\n');
    s
}

fn load(path: &PathBuf) -> Result<GroupFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.clone(), e))?;
    parse_file(&text).map_err(|e| Failure::Parse(path.clone(), e))
}

fn pick_group<'a>(file: &'a GroupFile, name: &Option<String>) -> Result<&'a NamedGroup, Failure> {
    match name {
        Some(n) => file.group(n).ok_or_else(|| Failure::Semantic(format!("no group named '{n}'"))),
        None => file.last_group().ok_or_else(|| Failure::Semantic("file defines no group".into())),
    }
}

fn pick_hom<'a>(file: &'a GroupFile, name: &Option<String>) -> Result<&'a NamedHom, Failure> {
    match name {
        Some(n) => file.hom(n).ok_or_else(|| Failure::Semantic(format!("no homomorphism named '{n}'"))),
        None => file.last_hom().ok_or_else(|| Failure::Semantic("file defines no homomorphism".into())),
    }
}

/// `{}`, `{2, 3}`, `2,3` or empty.
fn parse_primes(s: &str) -> Result<PrimeSet, Failure> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    let mut out = Vec::new();
    for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let p: u64 = tok.parse().map_err(|_| Failure::Usage(format!("invalid prime '{tok}'")))?;
        out.push(p);
    }
    PrimeSet::finite(out).map_err(|e| Failure::Usage(e.to_string()))
}

fn words(sub: &Subgroup) -> String {
    let names = sub.ambient().names();
    let gens: Vec<String> = sub.gens().iter().map(|g| g.to_word(names)).collect();
    format!("<{}>", gens.join(", "))
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Consistency { file, group } => {
            let f = load(&file)?;
            let g = pick_group(&f, &group)?;
            Ok(Output::report(check_consistency(&g.presentation)))
        }
        Command::Lcs { file, depth, group } => {
            let f = load(&file)?;
            let g = pick_group(&f, &group)?;
            let t = lower_central_series(&g.presentation, depth)?;
            let mut text = String::new();
            let mut steps = Vec::new();
            for i in 1..=t.depth() {
                let s = t.step(i).to_string();
                text.push_str(&format!("gamma_{}/gamma_{}: {s}\n", i, i + 1));
                steps.push(s);
            }
            let hirsch: Vec<Integer> = t.terms.iter().map(|u| Integer::from(u.hirsch_length())).collect();
            let hs: Vec<String> = hirsch.iter().map(|h| h.to_string()).collect();
            text.push_str(&format!("hirsch: {}\n", hs.join(" ")));
            let class = match t.first_trivial() {
                Some(k) => (k - 1).to_string(),
                None => format!("> {depth}"),
            };
            text.push_str(&format!("class: {class}\n"));
            if let Some(k) = t.stabilized_at {
                text.push_str(&format!("stabilized at k={k}\n"));
            }
            let mut r = CheckReport::pass(format!("lower central series of {} to depth {depth}", g.name))
                .with("steps", Witness::Texts(steps))
                .with("hirsch", Witness::Ints(hirsch))
                .with("class", Witness::Text(class))
                .with_depth(depth);
            if let Some(k) = t.stabilized_at {
                r.insert("stabilized_at", Witness::Int(Integer::from(k)));
            }
            Ok(Output { text, report: Some(r), code: 0 })
        }
        Command::Tau { file, group } => {
            let f = load(&file)?;
            let g = pick_group(&f, &group)?;
            let t = tau(&g.presentation)?;
            Ok(Output::report(CheckReport::pass(format!("tau = {t}"))))
        }
        Command::Hirsch { file, group } => {
            let f = load(&file)?;
            let g = pick_group(&f, &group)?;
            Ok(Output::report(CheckReport::pass(format!("h = {}", g.presentation.hirsch_length()))))
        }
        Command::Isolator { file, k, primes, group } => {
            let f = load(&file)?;
            let g = pick_group(&f, &group)?;
            let pi = parse_primes(&primes)?;
            if k == 0 {
                return Err(Failure::Usage("--k must be at least 1".into()));
            }
            let whole = Subgroup::whole(&g.presentation);
            let gk = subgroup_lower_central_terms(&whole, k)?.pop().expect("term");
            let iso = isolator(&gk, &pi)?;
            let index = match iso.index() {
                Some(n) => n.to_string(),
                None => "infinite".into(),
            };
            let r = CheckReport::pass(format!("I_{pi}(gamma_{k}) = {}", words(&iso)))
                .with("hirsch", Witness::Int(Integer::from(iso.hirsch_length())))
                .with("index", Witness::Text(index))
                .with("gamma_k", Witness::Text(words(&gk)));
            Ok(Output::report(r))
        }
        Command::Build { file, out } => {
            let f = load(&file)?;
            if f.last_construct.is_none() {
                return Err(Failure::Semantic("file has no [construct] section".into()));
            }
            let mut text = format!("# generated by paranil build from {}\n", file.display());
            for g in &f.groups {
                text.push('\n');
                text.push_str(&write_group(&g.name, &g.presentation));
            }
            for h in &f.homs {
                text.push('\n');
                text.push_str(&write_hom(h));
            }
            std::fs::write(&out, text).map_err(|e| Failure::Io(out.clone(), e))?;
            let built = f.last_construct.expect("checked");
            Ok(Output::info(format!("wrote {built} to {}\n", out.display())))
        }
        Command::CheckPara { file, depth, hom } => {
            let f = load(&file)?;
            let h = pick_hom(&f, &hom)?;
            Ok(Output::report(check_para(&h.hom, depth)?))
        }
        Command::CheckTau { file, tau, depth, hom } => {
            let f = load(&file)?;
            let h = pick_hom(&f, &hom)?;
            let t = parse_primes(&tau)?;
            Ok(Output::report(check_tau_monomorphism(&h.hom, &t, depth)?))
        }
        Command::CheckCor23 { file, hom } => {
            let f = load(&file)?;
            let h = pick_hom(&f, &hom)?;
            Ok(Output::report(check_cor23_fastpath(&h.hom)?))
        }
        Command::CheckThm34 { file, mode, hom } => {
            let f = load(&file)?;
            let h = pick_hom(&f, &hom)?;
            let mode = match mode {
                Mode::I => HirschMode::MetabelianQuotient,
                Mode::Ii => HirschMode::FiniteCenterIndex,
            };
            Ok(Output::report(thm34_hirsch_check(&h.hom, mode)?))
        }
        Command::Annihilator { file, subgroup, element, group } => {
            let f = load(&file)?;
            let g = pick_group(&f, &group)?;
            let p = &g.presentation;
            let mut gens = Vec::new();
            for part in subgroup.split(',') {
                let w = parse_word(part, p.names(), 1, 1).map_err(|e| Failure::Usage(format!("--subgroup: {}", e.message)))?;
                gens.push(p.collect(&w)?);
            }
            let w = parse_word(&element, p.names(), 1, 1).map_err(|e| Failure::Usage(format!("--element: {}", e.message)))?;
            let x = p.collect(&w)?;
            let a = Subgroup::generated(p, &gens)?;
            Ok(Output::report(annihilator_polynomials(&a, &x)?.report))
        }
        Command::Selftest => {
            let (lines, ok) = selftest::run(cli.seed)?;
            let mut r = CheckReport::new(
                if ok { Verdict::Pass } else { Verdict::Fail },
                format!("selftest seed {}: {}", cli.seed, if ok { "pass" } else { "fail" }),
            );
            r.insert("checks", Witness::Texts(lines));
            Ok(Output::report(r))
        }
    }
}
