//! Command-line frontend: construct loops, print invariants, run
//! verification sweeps.
//!
//! Exit codes: 0 success, 1 internal invariant breach, 2 usage error,
//! 3 at least one claim failed.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};

use burnloops_core::iso::isomorphic;
use burnloops_core::loops::{check_identities, core_group, nuclei, Loop};
use burnloops_core::models::{burn_section, make_reference, Family, GroupModel};
use burnloops_core::net::NetError;

use crate::cayley;
use crate::report::{emit, Format, Report};
use crate::verify::{full_report, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CLAIM_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "burnloops",
    version,
    about = "Construct the Burn loop families, compute their group invariants, \
             and machine-check the structural theorems about them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a loop and write its Cayley table
    Construct(InstanceArgs),
    /// Print the group invariants of one instance
    Invariants(InstanceArgs),
    /// Run the verification suite over an instance range
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct InstanceArgs {
    /// Loop family: B or C
    #[arg(long)]
    pub family: String,
    /// Construction parameter n (single value, n >= 2; family C needs even n)
    #[arg(long)]
    pub n: String,
    /// Output format: text, json or csv
    #[arg(long, default_value = "text")]
    pub format: String,
    /// Write output to this path instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Order bound for automorphism searches
    #[arg(long, default_value_t = 256)]
    pub aut_bound: usize,
    /// Tuple budget for the commutator filtration
    #[arg(long, default_value_t = 8_000_000)]
    pub tuple_budget: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Seed for the sampled congruence checks
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn parse_family(s: &str) -> Result<Family, String> {
    match s {
        "B" | "b" => Ok(Family::B),
        "C" | "c" => Ok(Family::C),
        other => Err(format!("unknown family `{other}` (expected B or C)")),
    }
}

/// `a..b` inclusive, or a single value.
fn parse_n_range(s: &str) -> Result<(u32, u32), String> {
    if let Some((a, b)) = s.split_once("..") {
        let lo: u32 = a.trim().parse().map_err(|e| format!("range start: {e}"))?;
        let hi: u32 = b.trim().parse().map_err(|e| format!("range end: {e}"))?;
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok((lo, hi))
    } else {
        let v: u32 = s.trim().parse().map_err(|e| format!("n: {e}"))?;
        Ok((v, v))
    }
}

fn validate_single(family: Family, n: u32) -> Result<(), String> {
    if n < 2 {
        return Err(format!("n must be at least 2, got {n}"));
    }
    if family == Family::C && n % 2 != 0 {
        return Err(format!("family C requires even n, got {n}"));
    }
    Ok(())
}

fn validate_bounds(args: &InstanceArgs) -> Result<(), String> {
    if args.aut_bound == 0 {
        return Err("--aut-bound must be positive".into());
    }
    if args.tuple_budget == 0 {
        return Err("--tuple-budget must be positive".into());
    }
    Ok(())
}

/// The instances of a range; odd n is silently skipped for family C inside a
/// proper range but rejected for an explicit single value.
fn expand_jobs(family: Family, spec: &str) -> Result<Vec<(Family, u32)>, String> {
    let (lo, hi) = parse_n_range(spec)?;
    if lo == hi {
        validate_single(family, lo)?;
        return Ok(vec![(family, lo)]);
    }
    if lo < 2 {
        return Err(format!("range must start at 2 or above, got {lo}"));
    }
    let jobs: Vec<(Family, u32)> = (lo..=hi)
        .filter(|n| family == Family::B || n % 2 == 0)
        .map(|n| (family, n))
        .collect();
    if jobs.is_empty() {
        return Err(format!("range {lo}..{hi} contains no valid n for family {family}"));
    }
    Ok(jobs)
}

fn write_out(out: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

struct Invariants {
    entries: Vec<(&'static str, String)>,
}

impl Invariants {
    fn text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }

    fn json(&self) -> String {
        let map: BTreeMap<&str, &str> = self
            .entries
            .iter()
            .map(|(k, v)| (*k, v.as_str()))
            .collect();
        let mut s = serde_json::to_string_pretty(&map).expect("string map");
        s.push('\n');
        s
    }

    fn csv(&self) -> String {
        let header: Vec<&str> = self.entries.iter().map(|(k, _)| *k).collect();
        let row: Vec<String> = self
            .entries
            .iter()
            .map(|(_, v)| format!("\"{}\"", v.replace('"', "\"\"")))
            .collect();
        format!("{}\n{}\n", header.join(","), row.join(","))
    }
}

fn run_construct(args: &InstanceArgs) -> Result<i32, String> {
    let family = parse_family(&args.family)?;
    let (lo, hi) = parse_n_range(&args.n)?;
    if lo != hi {
        return Err("construct takes a single n, not a range".into());
    }
    validate_single(family, lo)?;
    validate_bounds(args)?;
    let format: Format = args.format.parse()?;
    let model = GroupModel::new(family, lo).map_err(|e| e.to_string())?;
    let section = burn_section(&model).map_err(|e| e.to_string())?;
    let l = Loop::from_section(&section).map_err(|e| e.to_string())?;
    let props = check_identities(&l);
    let nuc = nuclei(&l);
    let content = match format {
        Format::Text => {
            let mut out = cayley::write_table(&l);
            let _ = writeln!(out, "# family: {family}, n = {lo}, order {}", l.order());
            let _ = writeln!(
                out,
                "# left_bol: {}  moufang: {}  left_conjugacy_closed: {}  left_inverse_property: {}",
                props.left_bol, props.moufang, props.left_conjugacy_closed, props.left_inverse_property
            );
            let _ = writeln!(
                out,
                "# nuclei: left {}, middle {}, right {}",
                nuc.left.len(),
                nuc.middle.len(),
                nuc.right.len()
            );
            out
        }
        Format::Json => {
            let value = serde_json::json!({
                "family": family.to_string(),
                "n": lo,
                "order": l.order(),
                "identity": l.identity(),
                "labels": l.labels.clone().unwrap_or_default(),
                "table": l.rows(),
                "flags": {
                    "left_bol": props.left_bol,
                    "moufang": props.moufang,
                    "left_conjugacy_closed": props.left_conjugacy_closed,
                    "left_inverse_property": props.left_inverse_property,
                },
                "nuclei": {
                    "left": nuc.left.len(),
                    "middle": nuc.middle.len(),
                    "right": nuc.right.len(),
                },
            });
            let mut s = serde_json::to_string_pretty(&value).expect("json value");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::new();
            for row in l.rows() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "{}", cells.join(","));
            }
            out
        }
    };
    write_out(&args.out, &content).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn run_invariants(args: &InstanceArgs) -> Result<i32, String> {
    let family = parse_family(&args.family)?;
    let (lo, hi) = parse_n_range(&args.n)?;
    if lo != hi {
        return Err("invariants takes a single n, not a range".into());
    }
    validate_single(family, lo)?;
    validate_bounds(args)?;
    let format: Format = args.format.parse()?;
    let opts = VerifyOptions {
        seed: 0,
        aut_bound: args.aut_bound,
        tuple_budget: args.tuple_budget,
    };
    let inv = compute_invariants(family, lo, opts).map_err(|e| e.to_string())?;
    let content = match format {
        Format::Text => inv.text(),
        Format::Json => inv.json(),
        Format::Csv => inv.csv(),
    };
    write_out(&args.out, &content).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn compute_invariants(family: Family, n: u32, opts: VerifyOptions) -> Result<Invariants, NetError> {
    use burnloops_core::models::ReferenceSpec;
    let net = burnloops_core::net::BurnNet::new(family, n)?;
    let sp = net.special_subgroups(opts.aut_bound)?;
    let gd = net.build_gamma(&sp)?;
    let ker = net.n_group.ker_phi()?;
    let ker_name = {
        let want = ReferenceSpec::Cyclic(ker.order() as u32);
        match isomorphic(&ker, &make_reference(&want).expect("cyclic")) {
            Some(_) => want.to_string(),
            None => format!("order {}", ker.order()),
        }
    };
    let znplus = net.nplus.group.center();
    let gcore = core_group(&net.loop_)?;
    let aut_desc = match sp.loop_aut.abelian_invariants() {
        Ok(inv) => format!("abelian {inv:?}"),
        Err(_) => String::from("nonabelian"),
    };
    let entries = vec![
        ("family", family.to_string()),
        ("n", n.to_string()),
        ("order", net.loop_.order().to_string()),
        ("g_order", net.g_left.order().to_string()),
        ("n_order", net.n_group.order().to_string()),
        ("nplus_order", net.nplus.order().to_string()),
        ("kerphi", ker_name),
        ("yaxis_orbit", net.y_axis_orbit().len().to_string()),
        ("znplus_order", znplus.order().to_string()),
        ("gcore_order", gcore.order().to_string()),
        ("aut_order", format!("{} ({aut_desc})", sp.loop_aut.order())),
        ("gamma_order", gd.gamma.order().to_string()),
        ("p_size", gd.origin_orbit.len().to_string()),
    ];
    Ok(Invariants { entries })
}

fn worker_count(jobs: usize) -> usize {
    let available = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1);
    let cap = std::env::var("BURNLOOPS_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(available);
    cap.min(jobs).max(1)
}

fn run_verify(args: &VerifyArgs) -> Result<i32, String> {
    let family = parse_family(&args.instance.family)?;
    validate_bounds(&args.instance)?;
    let jobs = expand_jobs(family, &args.instance.n)?;
    let format: Format = args.instance.format.parse()?;
    let opts = VerifyOptions {
        seed: args.seed,
        aut_bound: args.instance.aut_bound,
        tuple_budget: args.instance.tuple_budget,
    };

    // fan out over instances; results are re-ordered by job index
    let workers = worker_count(jobs.len());
    let queue: Mutex<Vec<(usize, Family, u32)>> = Mutex::new(
        jobs.iter()
            .enumerate()
            .map(|(i, &(f, n))| (i, f, n))
            .rev()
            .collect(),
    );
    let results: Mutex<Vec<Option<Result<Report, NetError>>>> =
        Mutex::new((0..jobs.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let job = queue.lock().expect("queue lock").pop();
                match job {
                    Some((idx, f, n)) => {
                        let r = full_report(f, n, opts);
                        results.lock().expect("results lock")[idx] = Some(r);
                    }
                    None => break,
                }
            });
        }
    });
    let results = results.into_inner().expect("threads joined");

    let mut any_fail = false;
    let multi = jobs.len() > 1;
    if multi {
        if let Some(dir) = &args.instance.out {
            std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
        }
    }
    for ((f, n), slot) in jobs.iter().zip(results) {
        let report = slot
            .expect("every job ran")
            .map_err(|e| format!("internal failure on {f}{}: {e}", 4 * n))?;
        any_fail |= report.failures() > 0;
        let content = emit(&report, format);
        match (&args.instance.out, multi) {
            (Some(dir), true) => {
                let ext = match format {
                    Format::Json => "json",
                    Format::Csv => "csv",
                    Format::Text => "txt",
                };
                let path = dir.join(format!("{f}_n{n}.{ext}"));
                std::fs::write(path, &content).map_err(|e| e.to_string())?;
                // keep a one-line summary on stdout for sweeps
                println!(
                    "{f}{}: {} claims, {} failures",
                    4 * n,
                    report.claims.len(),
                    report.failures()
                );
            }
            (Some(path), false) => {
                std::fs::write(path, &content).map_err(|e| e.to_string())?;
            }
            (None, _) => print!("{content}"),
        }
    }
    Ok(if any_fail { EXIT_CLAIM_FAILED } else { EXIT_OK })
}


/// Dispatches a parsed command line; the result is the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Construct(args) => run_construct(args),
        Command::Invariants(args) => run_invariants(args),
        Command::Verify(args) => run_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            // domain errors (bad parameters) are usage errors; anything that
            // begins with "internal" signals a broken invariant
            eprintln!("error: {msg}");
            if msg.starts_with("internal") {
                EXIT_INTERNAL
            } else {
                EXIT_USAGE
            }
        }
    }
}
