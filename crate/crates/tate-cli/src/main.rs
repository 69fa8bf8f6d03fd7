//! Command-line front end: Coxeter pipelines, Bianchi class-count formulae,
//! Poincaré series, ring summands, the table-verification harness, and the
//! asymptotics CSV.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tate::bianchi::{
    asymptotics_rows, cohomology_ring, conjugacy_classes_graph3, counts_with_overrides,
    expand_series, kraemer_counts, poincare_series, rows_to_csv, verify_against_paper_tables,
    ClassCounts, Dataset, Verdict,
};
use tate::complex::{classify_components, ComponentType};
use tate::coxeter::{tetrahedral_homology, triangle_group_homology};

#[derive(Parser)]
#[command(
    name = "tate",
    version,
    about = "Farrell-Tate cohomology data via torsion sub-complex reduction"
)]
struct Cli {
    /// Directory with the table fixtures (default: bundled)
    #[arg(long, global = true, env = "TATE_DATA_DIR")]
    data_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Mod-ℓ homology of a Coxeter tetrahedral group
    CoxeterCt {
        /// Group id 1..=32; omit to list all
        #[arg(long)]
        id: Option<usize>,
        /// Odd torsion prime
        #[arg(long, default_value_t = 3)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Mod-ℓ homology of a Coxeter triangle group
    CoxeterTriangle {
        #[arg(short)]
        p: u32,
        #[arg(short)]
        q: u32,
        #[arg(short)]
        r: u32,
        #[arg(long, default_value_t = 3)]
        prime: u64,
    },
    /// Conjugacy-class counts of PSL2(O_-m)
    BianchiCounts {
        #[arg(short)]
        m: u64,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Resolve published insertions through the override file
        #[arg(long)]
        use_overrides: bool,
    },
    /// The 3-conjugacy-classes graph of PSL2(O_-m)
    BianchiGraph {
        #[arg(short)]
        m: u64,
        #[arg(long, default_value_t = 3)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        use_overrides: bool,
    },
    /// Poincaré series of the mod-ℓ homology above the vcd
    BianchiPoincare {
        #[arg(short)]
        m: u64,
        #[arg(long)]
        prime: u64,
        /// Expand coefficients up to this degree
        #[arg(long, default_value_t = 20)]
        qmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        use_overrides: bool,
    },
    /// Cohomology-ring summands above the vcd
    BianchiRing {
        #[arg(short)]
        m: u64,
        #[arg(long)]
        prime: u64,
        /// Component multiset for 2-torsion, e.g. "circle:2,edge:1"
        #[arg(long)]
        components: Option<String>,
        #[arg(long)]
        use_overrides: bool,
    },
    /// Replay the published evaluation tables
    BianchiTable {
        #[arg(long)]
        prime: u64,
        /// Exit nonzero if any non-skipped row mismatches
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The covolume ratio statistic as CSV
    BianchiAsymptotics {
        #[arg(long, default_value_t = 2003)]
        mmax: u64,
    },
}

fn load_dataset(dir: &Option<PathBuf>) -> Result<Dataset, String> {
    match dir {
        Some(d) => Dataset::from_dir(d).map_err(|e| e.to_string()),
        None => Ok(Dataset::bundled()),
    }
}

fn counts_for(
    m: u64,
    ell: u64,
    use_overrides: bool,
    dir: &Option<PathBuf>,
) -> Result<ClassCounts, String> {
    if ell != 2 && ell != 3 {
        return Err("the torsion primes of the Bianchi groups are 2 and 3".into());
    }
    if use_overrides {
        let dataset = load_dataset(dir)?;
        counts_with_overrides(m, ell, &dataset).map_err(|e| e.to_string())
    } else {
        kraemer_counts(m, ell).map_err(|e| e.to_string())
    }
}

fn counts_json(c: &ClassCounts) -> serde_json::Value {
    fn flat(c: &ClassCounts) -> serde_json::Value {
        if c.ell == 3 {
            serde_json::json!({
                "lambda6": c.lambda6,
                "lambda6_star": c.lambda6_star,
                "mu3": c.mu3,
            })
        } else {
            serde_json::json!({
                "lambda4": c.lambda4,
                "lambda4_star": c.lambda4_star,
                "lambda4_t": c.lambda4_t,
                "mu2": c.mu2,
                "mu2_minus": c.mu2_minus,
                "mu_t": c.mu_t,
            })
        }
    }
    let mut v = flat(c);
    if c.is_ambiguous() {
        v["ambiguity"] = serde_json::Value::Array(c.ambiguity.iter().map(flat).collect());
    }
    v
}

fn counts_text(c: &ClassCounts) -> String {
    if c.is_ambiguous() {
        let alts: Vec<String> = c
            .ambiguity
            .iter()
            .map(|a| {
                counts_text(&ClassCounts {
                    ambiguity: vec![],
                    ..a.clone()
                })
            })
            .collect();
        return format!("ambiguous between:\n  {}", alts.join("\n  "));
    }
    if c.ell == 3 {
        format!(
            "lambda6={} lambda6*={} mu3={}",
            c.lambda6, c.lambda6_star, c.mu3
        )
    } else {
        format!(
            "lambda4={} lambda4*={} lambda4^T={} mu2={} mu2^-={} mu_T={}",
            c.lambda4, c.lambda4_star, c.lambda4_t, c.mu2, c.mu2_minus, c.mu_t
        )
    }
}

fn poly_coeffs(p: &tate::bianchi::Poly) -> Vec<serde_json::Value> {
    p.0.iter()
        .map(|c| {
            // normalized rational functions have integer coefficients
            serde_json::json!(c
                .numer()
                .to_string()
                .parse::<i64>()
                .expect("small coefficient"))
        })
        .collect()
}

fn parse_components(s: &str) -> Result<Vec<ComponentType>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let (name, count) = part
            .split_once(':')
            .ok_or_else(|| format!("bad component spec '{part}' (want name:count)"))?;
        let count: usize = count
            .parse()
            .map_err(|_| format!("bad count in '{part}'"))?;
        let t = match name.trim() {
            "circle" => ComponentType::Circle,
            "edge" => ComponentType::Edge,
            "graph2" => ComponentType::GraphTwo,
            "graph5" => ComponentType::GraphFive,
            other => return Err(format!("unknown component type '{other}'")),
        };
        for _ in 0..count {
            out.push(t.clone());
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::CoxeterCt { id, prime, format } => {
            if prime <= 2 {
                return Err("coxeter pipelines require an odd prime".into());
            }
            let ids: Vec<usize> = match id {
                Some(i) => vec![i],
                None => (1..=32).collect(),
            };
            let mut rows = Vec::new();
            for i in ids {
                let (m, graph) = tetrahedral_homology(i, prime).map_err(|e| e.to_string())?;
                rows.push((i, m, graph));
            }
            match format {
                Format::Json => {
                    let v: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(i, m, g)| {
                            serde_json::json!({
                                "id": i, "prime": prime, "m": m,
                                "reduced": g.to_json(),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
                _ => {
                    for (i, m, g) in &rows {
                        let labels = g.vertex_label_multiset().join(" ");
                        if *m == 0 {
                            println!("CT({i}) at ell={prime}: m=0, trivial mod-{prime} homology");
                        } else {
                            println!(
                                "CT({i}) at ell={prime}: m={m}, reduced graph [{labels}], \
                                 H_q = (H_q(D{prime}; F{prime}))^{m}"
                            );
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CoxeterTriangle { p, q, r, prime } => {
            if prime <= 2 {
                return Err("coxeter pipelines require an odd prime".into());
            }
            let summands = triangle_group_homology(p, q, r, prime);
            if summands.is_empty() {
                println!("({p},{q},{r}) at ell={prime}: trivial mod-{prime} homology");
            } else {
                let names: Vec<String> = summands.iter().map(|k| format!("H_q(D{k})")).collect();
                println!("({p},{q},{r}) at ell={prime}: H_q = {}", names.join(" + "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::BianchiCounts {
            m,
            prime,
            format,
            use_overrides,
        } => {
            let c = counts_for(m, prime, use_overrides, &cli.data_dir)?;
            match format {
                Format::Json => {
                    let mut v = serde_json::json!({"m": m, "ell": prime});
                    if let serde_json::Value::Object(counts) = counts_json(&c) {
                        for (k, val) in counts {
                            v[k] = val;
                        }
                    }
                    println!("{v}");
                }
                _ => println!("m={m} ell={prime}: {}", counts_text(&c)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::BianchiGraph {
            m,
            prime,
            format,
            use_overrides,
        } => {
            if prime != 3 {
                return Err("conjugacy-classes graphs are constructed at prime 3".into());
            }
            let c = counts_for(m, prime, use_overrides, &cli.data_dir)?;
            let g = conjugacy_classes_graph3(&c).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!("{}", g.to_json()),
                _ => {
                    let comps = classify_components(&g);
                    let names: Vec<String> = comps.iter().map(|t| t.to_string()).collect();
                    println!("m={m}: 3-conjugacy-classes graph: {}", names.join(" + "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::BianchiPoincare {
            m,
            prime,
            qmax,
            format,
            use_overrides,
        } => {
            let c = counts_for(m, prime, use_overrides, &cli.data_dir)?;
            let f = poincare_series(&c, prime).map_err(|e| e.to_string())?;
            let coeffs = expand_series(&f, qmax).map_err(|e| e.to_string())?;
            match format {
                Format::Json => {
                    let v = serde_json::json!({
                        "m": m, "ell": prime,
                        "counts": counts_json(&c),
                        "series": {"num": poly_coeffs(&f.num), "den": poly_coeffs(&f.den)},
                        "coeffs": coeffs.iter().map(|c| c.to_string().parse::<i64>().unwrap()).collect::<Vec<_>>(),
                    });
                    println!("{v}");
                }
                _ => {
                    println!("m={m} ell={prime}: P(t) = {f}");
                    let shown: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                    println!("dim H_q for q=3..{qmax}: {}", shown.join(", "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::BianchiRing {
            m,
            prime,
            components,
            use_overrides,
        } => {
            let c = counts_for(m, prime, use_overrides, &cli.data_dir)?;
            let comps = components.as_deref().map(parse_components).transpose()?;
            let summands =
                cohomology_ring(&c, prime, comps.as_deref()).map_err(|e| e.to_string())?;
            println!("m={m} ell={prime}: ring summands above the vcd:");
            for s in summands {
                println!("  {} x{}", s.descriptor, s.multiplicity);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::BianchiTable {
            prime,
            check,
            format,
        } => {
            if prime != 2 && prime != 3 {
                return Err("tables exist for primes 2 and 3".into());
            }
            let dataset = load_dataset(&cli.data_dir)?;
            let report = verify_against_paper_tables(prime, &dataset).map_err(|e| e.to_string())?;
            match format {
                Format::Csv => {
                    println!("m,expected,got,verdict");
                    for r in &report.rows {
                        println!("{},{},{},{:?}", r.m, r.expected, r.got, r.verdict);
                    }
                }
                Format::Json => {
                    let v: Vec<serde_json::Value> = report
                        .rows
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "m": r.m, "expected": r.expected,
                                "got": r.got, "verdict": format!("{:?}", r.verdict),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
                Format::Text => {
                    for r in &report.rows {
                        if r.verdict == Verdict::Mismatch {
                            println!("MISMATCH m={}: expected {}, got {}", r.m, r.expected, r.got);
                        }
                    }
                    println!("{}", report.summary());
                }
            }
            if check && !report.mismatched().is_empty() {
                return Ok(ExitCode::FAILURE);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::BianchiAsymptotics { mmax } => {
            let dataset = load_dataset(&cli.data_dir)?;
            let rows = asymptotics_rows(mmax, &dataset).map_err(|e| e.to_string())?;
            print!("{}", rows_to_csv(&rows));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
