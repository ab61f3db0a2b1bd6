//! Thin command-line front end: parses flags into library documents and
//! tasks, runs the analysis, prints reports. Exit codes: 0 success,
//! 2 validation error, 3 precondition or hypothesis not met, 4 resource cap.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use abelian_covers::enumerate::{
    enumerate_families, star_scan, verify_bounds, Canonicalization, EnumerationTask, SweepMode,
};
use abelian_covers::error::{Error, Result};
use abelian_covers::modular::ModularVector;
use abelian_covers::report::{
    cmd_analyze, cmd_prym, parse_rational, render_analyze, render_prym, to_json, CoverDocument,
    Format, RationalValue,
};
use abelian_covers::{exact, prym, torelli, SpecializedOracle};

#[derive(Parser)]
#[command(name = "covers", version, about = "Exact invariants of families of abelian covers of the projective line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Torelli,
    Prym,
}

#[derive(Clone, Copy, ValueEnum)]
enum CanonArg {
    /// Columns sorted; no automorphism reduction.
    Perm,
    /// Orbit minimum over column permutations and group automorphisms.
    Auto,
}

#[derive(Args)]
struct DocumentArgs {
    /// JSON document file ("-" for stdin); alternative to --N/--rows.
    #[arg(long)]
    input: Option<String>,
    /// Modulus N of the monodromy matrix.
    #[arg(long = "N")]
    modulus: Option<u64>,
    /// Inline matrix, rows separated by ';', entries by ',':
    /// e.g. "2,2,2,2,0,0,0,0;0,0,0,0,1,1,1,1".
    #[arg(long)]
    rows: Option<String>,
    /// Involution as comma-separated entries, e.g. "1,1".
    #[arg(long)]
    sigma: Option<String>,
    /// Branch-point values, comma-separated rationals, e.g. "0,1,-1,9/2".
    #[arg(long)]
    t: Option<String>,
    /// Seed for random branch-point specialization.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of independent specializations for rank certificates.
    #[arg(long)]
    specializations: Option<u32>,
}

impl DocumentArgs {
    fn document(&self) -> Result<CoverDocument> {
        let mut doc = match (&self.input, self.modulus, &self.rows) {
            (Some(path), _, _) => {
                let json = if path == "-" {
                    let mut buf = String::new();
                    std::io::stdin()
                        .read_to_string(&mut buf)
                        .map_err(|e| Error::Structure(format!("cannot read stdin: {e}")))?;
                    buf
                } else {
                    std::fs::read_to_string(path)
                        .map_err(|e| Error::Structure(format!("cannot read {path}: {e}")))?
                };
                CoverDocument::from_json(&json)?
            }
            (None, Some(n), Some(rows)) => {
                let rows = rows
                    .split(';')
                    .map(|row| {
                        row.split(',')
                            .map(|e| {
                                e.trim().parse::<i64>().map_err(|_| {
                                    Error::Structure(format!("bad matrix entry {e:?}"))
                                })
                            })
                            .collect::<Result<Vec<i64>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                CoverDocument::new(n, rows)
            }
            _ => {
                return Err(Error::Structure(
                    "provide --input FILE or both --N and --rows".into(),
                ))
            }
        };
        if let Some(sigma) = &self.sigma {
            doc.sigma = Some(
                sigma
                    .split(',')
                    .map(|e| {
                        e.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::Structure(format!("bad sigma entry {e:?}")))
                    })
                    .collect::<Result<_>>()?,
            );
        }
        if let Some(t) = &self.t {
            doc.t = Some(
                t.split(',')
                    .map(|e| parse_rational(e.trim()).map(RationalValue))
                    .collect::<Result<_>>()?,
            );
        }
        if self.seed.is_some() {
            doc.seed = self.seed;
        }
        if self.specializations.is_some() {
            doc.specializations = self.specializations;
        }
        Ok(doc)
    }
}

#[derive(Args)]
struct TaskArgs {
    /// Modulus N.
    #[arg(long = "N")]
    modulus: u64,
    /// Ambient dimension m.
    #[arg(long)]
    m: usize,
    /// Largest branch count to enumerate.
    #[arg(long)]
    rmax: usize,
    /// Smallest branch count (default 3).
    #[arg(long, default_value_t = 3)]
    rmin: usize,
    /// Canonicalization mode.
    #[arg(long, value_enum, default_value_t = CanonArg::Auto)]
    canon: CanonArg,
    /// Cap on raw admissible candidates; exceeding it prints a resume token.
    #[arg(long)]
    cap: Option<u64>,
    /// Resume token from a capped run.
    #[arg(long)]
    resume: Option<String>,
    /// Keep only families whose group contains an involution.
    #[arg(long)]
    require_involution: bool,
    /// Also emit families whose columns generate a proper subgroup.
    #[arg(long)]
    allow_nongenerating: bool,
    /// Genus filter, lower end.
    #[arg(long)]
    gmin: Option<u64>,
    /// Genus filter, upper end.
    #[arg(long)]
    gmax: Option<u64>,
}

impl TaskArgs {
    fn task(&self) -> EnumerationTask {
        let mut task = EnumerationTask::new(self.modulus, self.m, self.rmax);
        task.r_min = self.rmin;
        task.canonicalization = match self.canon {
            CanonArg::Perm => Canonicalization::PermutationOnly,
            CanonArg::Auto => Canonicalization::PermutationAndAutomorphism,
        };
        task.raw_cap = self.cap;
        task.resume = self.resume.clone();
        task.require_involution = self.require_involution;
        task.require_generating = !self.allow_nongenerating;
        task.genus_min = self.gmin;
        task.genus_max = self.gmax;
        task
    }
}

#[derive(Subcommand)]
enum Command {
    /// Genus, character table, condition check and witnesses for one family.
    Analyze {
        #[command(flatten)]
        doc: DocumentArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Double-cover data, anti-invariant dimensions and Prym classification.
    Prym {
        #[command(flatten)]
        doc: DocumentArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// List canonical family representatives for a task.
    Enumerate {
        #[command(flatten)]
        task: TaskArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Exhaustive sweep asserting the corollary bounds on witness-free families.
    VerifyBounds {
        #[command(flatten)]
        task: TaskArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Torelli)]
        mode: ModeArg,
        /// Involution for Prym mode (defaults to (N/2, ..., N/2)).
        #[arg(long)]
        sigma: Option<String>,
        /// Seed for the rank oracle in Prym mode.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// List families satisfying the invariant-dimension equality.
    StarScan {
        #[command(flatten)]
        task: TaskArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Print the closed-form bound tables for given parameters.
    Bounds {
        #[arg(long = "N")]
        modulus: u64,
        #[arg(long)]
        m: usize,
        /// Group order d (defaults to N^m).
        #[arg(long)]
        d: Option<u128>,
        /// Use the elementary p-group bounds for this odd prime.
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

#[derive(serde::Serialize)]
struct FamilyRecord {
    rows: Vec<Vec<u64>>,
    r: usize,
    genus: u64,
    group_order: usize,
}

#[derive(serde::Serialize)]
struct EnumerationReport {
    task: EnumerationTask,
    total_candidates: u64,
    automorphism_reduction: bool,
    families: Vec<FamilyRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    resume_token: Option<String>,
}

#[derive(serde::Serialize)]
struct StarHitRecord {
    rows: Vec<Vec<u64>>,
    genus: u64,
    sym2_invariant_dim: usize,
    invariant_quadratic_dim: usize,
}

#[derive(serde::Serialize)]
struct StarScanReport {
    task: EnumerationTask,
    hits: Vec<StarHitRecord>,
}

fn join_rows(rows: &[Vec<u64>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(";")
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { doc, format } => {
            let report = cmd_analyze(&doc.document()?)?;
            println!("{}", render_analyze(&report, format.into()));
        }
        Command::Prym { doc, format } => {
            let report = cmd_prym(&doc.document()?)?;
            println!("{}", render_prym(&report, format.into()));
        }
        Command::Enumerate { task, format } => {
            let task = task.task();
            let outcome = enumerate_families(&task)?;
            eprintln!(
                "enumerated {} classes from {} candidates",
                outcome.families.len(),
                outcome.raw_candidates
            );
            let families = outcome
                .families
                .iter()
                .map(|f| {
                    Ok(FamilyRecord {
                        rows: f.row_entries(),
                        r: f.column_count(),
                        genus: f.genus()?,
                        group_order: f.group().order(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let resume_token = outcome.resume_token.clone();
            let report = EnumerationReport {
                total_candidates: outcome.raw_candidates,
                automorphism_reduction: outcome.automorphism_reduction,
                resume_token: resume_token.clone(),
                families,
                task,
            };
            match Format::from(format) {
                Format::Csv => {
                    println!("rows,r,genus,group_order");
                    for f in &report.families {
                        println!("{},{},{},{}", join_rows(&f.rows), f.r, f.genus, f.group_order);
                    }
                }
                Format::Text => {
                    for f in &report.families {
                        println!(
                            "r={} genus={} d={} rows={}",
                            f.r,
                            f.genus,
                            f.group_order,
                            join_rows(&f.rows)
                        );
                    }
                }
                Format::Json => println!("{}", to_json(&report)),
            }
            if let Some(token) = resume_token {
                eprintln!("candidate cap exceeded; resume with --resume '{token}'");
                return Ok(4);
            }
        }
        Command::VerifyBounds { task, mode, sigma, seed, format } => {
            let task = task.task();
            let mode = match mode {
                ModeArg::Torelli => SweepMode::Torelli,
                ModeArg::Prym => SweepMode::Prym,
            };
            let sigma = sigma
                .map(|s| {
                    let entries = s
                        .split(',')
                        .map(|e| {
                            e.trim()
                                .parse::<i64>()
                                .map_err(|_| Error::Structure(format!("bad sigma entry {e:?}")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    ModularVector::from_signed(task.modulus, &entries)
                })
                .transpose()?;
            let oracle = SpecializedOracle {
                seed: seed.unwrap_or(exact::DEFAULT_SEED),
                attempts: exact::DEFAULT_SPECIALIZATIONS,
            };
            let oracle_ref: Option<&dyn prym::RankOracle> = match mode {
                SweepMode::Prym => Some(&oracle),
                SweepMode::Torelli => None,
            };
            eprintln!(
                "sweeping N={} m={} r<={} ...",
                task.modulus, task.ambient_dim, task.r_max
            );
            let report = verify_bounds(&task, mode, sigma, oracle_ref)?;
            eprintln!(
                "{} classes, {} violations",
                report.equivalence_classes,
                report.violations.len()
            );
            match Format::from(format) {
                Format::Csv => {
                    println!("status,count");
                    for (k, v) in &report.status_counts {
                        println!("{k},{v}");
                    }
                    println!("violations,{}", report.violations.len());
                }
                Format::Text => {
                    println!(
                        "classes {}  candidates {}  violations {}",
                        report.equivalence_classes,
                        report.total_candidates,
                        report.violations.len()
                    );
                    for (k, v) in &report.status_counts {
                        println!("  {k}: {v}");
                    }
                }
                Format::Json => println!("{}", to_json(&report)),
            }
        }
        Command::StarScan { task, format } => {
            let task = task.task();
            let hits = star_scan(&task)?;
            eprintln!("{} candidates satisfy the dimension equality", hits.len());
            let report = StarScanReport {
                hits: hits
                    .iter()
                    .map(|h| StarHitRecord {
                        rows: h.cover.row_entries(),
                        genus: h.genus,
                        sym2_invariant_dim: h.sym2_dim,
                        invariant_quadratic_dim: h.quadratic_dim,
                    })
                    .collect(),
                task,
            };
            match Format::from(format) {
                Format::Csv => {
                    println!("rows,genus,sym2,quadratic");
                    for h in &report.hits {
                        println!(
                            "{},{},{},{}",
                            join_rows(&h.rows),
                            h.genus,
                            h.sym2_invariant_dim,
                            h.invariant_quadratic_dim
                        );
                    }
                }
                Format::Text => {
                    for h in &report.hits {
                        println!(
                            "genus={} dims {}={} rows={}",
                            h.genus,
                            h.sym2_invariant_dim,
                            h.invariant_quadratic_dim,
                            join_rows(&h.rows)
                        );
                    }
                }
                Format::Json => println!("{}", to_json(&report)),
            }
        }
        Command::Bounds { modulus, m, d, prime, format } => {
            let d = d.unwrap_or_else(|| (modulus as u128).pow(m as u32));
            let torelli_bounds = torelli::bound_report(modulus, m, d, prime)?;
            let prym_bounds =
                if modulus % 2 == 0 { Some(prym::prym_bound_report(modulus, m)?) } else { None };
            #[derive(serde::Serialize)]
            struct BoundTables {
                torelli: torelli::BoundReport,
                #[serde(skip_serializing_if = "Option::is_none")]
                prym: Option<torelli::BoundReport>,
            }
            let tables = BoundTables { torelli: torelli_bounds, prym: prym_bounds };
            match Format::from(format) {
                Format::Json => println!("{}", to_json(&tables)),
                Format::Csv | Format::Text => {
                    println!(
                        "torelli: r_max={} genus_max={} m_max={:?}",
                        tables.torelli.r_max, tables.torelli.genus_max, tables.torelli.m_max
                    );
                    if let Some(p) = &tables.prym {
                        println!("prym:    r_max={} cover_genus_max={}", p.r_max, p.genus_max);
                    }
                }
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
