use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::Value;

use solvforge_core::arith::poly::IntPoly;
use solvforge_core::arith::rational::{self, Rational};
use solvforge_core::report::{self, cohomology_block, construct, verify_report, ForgeConfig};

const EXIT_USAGE: u8 = 1;
const EXIT_CONSTRUCTION: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "solvforge", version, about = "Exact data for solvmanifolds from totally real fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and emit the JSON report.
    Construct(ConstructArgs),
    /// Re-derive a report from its stored config and compare.
    Verify {
        report: PathBuf,
    },
    /// Emit the units block only.
    Units(ConstructArgs),
    /// Betti numbers of X from the Kunneth formula, optionally cross-checked.
    Cohomology {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Human-readable rendering of a report.
    Report {
        /// Render an existing report instead of constructing one.
        #[arg(long, conflicts_with_all = ["p_coeffs", "shift"])]
        from: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
    },
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ConfigArgs {
    /// Seed coefficients, constant term first, e.g. "-2,0,1".
    #[arg(long, allow_hyphen_values = true, value_parser = parse_poly)]
    p_coeffs: Option<IntPoly>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_int)]
    shift: Option<BigInt>,
    #[arg(long, default_value_t = 3)]
    unit_bound: u32,
    /// Root interval width, e.g. "2^-64" or "1/1000".
    #[arg(long, default_value = "2^-64", value_parser = parse_width)]
    width: Rational,
    #[arg(long, default_value_t = 8)]
    degree_cap: usize,
}

fn parse_poly(s: &str) -> Result<IntPoly, String> {
    let p = IntPoly::parse(s).map_err(|e| e.to_string())?;
    match p.degree() {
        Some(d) if d >= 1 => Ok(p),
        _ => Err("seed polynomial must have degree at least 1".into()),
    }
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    s.trim().parse().map_err(|_| format!("not an integer: {s}"))
}

fn parse_width(s: &str) -> Result<Rational, String> {
    let w = rational::parse(s).map_err(|e| e.to_string())?;
    if w <= Rational::from_integer(0.into()) {
        return Err("width must be positive".into());
    }
    Ok(w)
}

impl ConfigArgs {
    fn to_config(&self) -> Result<ForgeConfig, String> {
        let p = self.p_coeffs.clone().ok_or("--p-coeffs is required")?;
        let shift = self.shift.clone().ok_or("--shift is required")?;
        let mut cfg = ForgeConfig::new(p, shift);
        cfg.unit_bound = self.unit_bound;
        cfg.width = self.width.clone();
        cfg.degree_cap = self.degree_cap;
        Ok(cfg)
    }
}

enum Failure {
    Usage(String),
    Construction(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Construction(_) => EXIT_CONSTRUCTION,
            Failure::Verify(_) => EXIT_VERIFY,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Construction(m) | Failure::Verify(m) => m,
        }
    }
}

fn emit(json: &str, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, format!("{json}\n"))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn build(args: &ConfigArgs) -> Result<report::Report, Failure> {
    let cfg = args.to_config().map_err(Failure::Usage)?;
    construct(&cfg).map_err(|e| Failure::Construction(e.to_string()))
}

fn betti_text(v: &Value) -> String {
    match v.as_array() {
        Some(a) => {
            let parts: Vec<String> = a.iter().map(Value::to_string).collect();
            format!("({})", parts.join(","))
        }
        None => "not computed".into(),
    }
}

fn cohomology_text(c: &Value) -> Vec<String> {
    let mut out = vec![
        format!("kunneth: {}", betti_text(&c["kunneth"])),
        format!("ce:      {}", betti_text(&c["ce"])),
        format!("euler:   {}", c["euler"]),
    ];
    out.push(match c["match"].as_bool() {
        Some(true) => "MATCH".into(),
        Some(false) => "MISMATCH".into(),
        None => "oracle not run".into(),
    });
    out
}

fn str_list(v: &Value) -> String {
    v.as_array()
        .map(|a| a.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(", "))
        .unwrap_or_default()
}

fn unit_line(u: &Value) -> String {
    let mut line = format!("[{}] norm {}", str_list(&u["coords"]), u["norm"].as_str().unwrap_or("?"));
    if u["totally_positive"].as_bool() == Some(true) {
        line.push_str(" totally positive");
        if let Some(g) = u["in_gamma_A"].as_bool() {
            line.push_str(if g { ", in Gamma_A" } else { ", outside Gamma_A" });
        }
        if let Some(a) = u["anosov"].as_str() {
            line.push_str(&format!(", {a}"));
        }
    }
    if let Some(o) = u.get("origin").and_then(Value::as_str) {
        line.push_str(&format!(" ({o})"));
    }
    line
}

fn render(r: &Value) -> String {
    let mut out = Vec::new();
    let f = &r["field"];
    out.push(format!("Q = [{}] (constant term first), d = {}", str_list(&f["Q"]), f["d"]));
    out.push(format!(
        "irreducible: {}, palindromic: {}, order: {}",
        f["irreducible"], f["palindromic"], f["order"].as_str().unwrap_or("")
    ));
    for (i, root) in f["roots"].as_array().into_iter().flatten().enumerate() {
        let approx = |k: &str| {
            root[k]
                .as_str()
                .and_then(|t| rational::parse(t).ok())
                .map(|x| rational::to_f64(&x))
                .unwrap_or(f64::NAN)
        };
        out.push(format!("  root {i}: {:.12}", (approx("lo") + approx("hi")) / 2.0));
    }
    let s = &r["splitting"];
    out.push(format!("W: dim {}, W1 dim {}, W2 dim {}", s["w_dim"], s["w1_dim"], s["w2_dim"]));
    let n = &r["nilalgebra"];
    out.push(format!(
        "n: dim {}, center {}, [n,n] = center: {}",
        n["dim"], n["heisenberg"]["center_dim"], n["heisenberg"]["derived_equals_center"]
    ));
    out.push(format!("Gamma_N: {} generators, denominator D = {}",
        r["gamma_n"]["generators"].as_array().map_or(0, Vec::len),
        r["gamma_n"]["denominator"].as_str().unwrap_or("?")));
    let u = &r["units"];
    out.push(format!("units ({})", u["completeness"].as_str().unwrap_or("")));
    for e in u["searched"].as_array().into_iter().flatten().chain(u["derived"].as_array().into_iter().flatten()) {
        out.push(format!("  {}", unit_line(e)));
    }
    out.push(format!("log rank lower bound: {}", u["log_rank"]["rank_lower_bound"]));
    out.push(format!("anosov: {}", u["anosov_summary"]["status"].as_str().unwrap_or("")));
    if let Some(q) = u.get("open_question").and_then(Value::as_str) {
        out.push(format!("note: {q}"));
    }
    out.extend(cohomology_text(&r["cohomology"]));
    out.join("\n")
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct(a) => emit(&build(&a.config)?.to_json(), a.json.as_deref()),
        Command::Units(a) => {
            let r = build(&a.config)?;
            let json = serde_json::to_string_pretty(&r.units).expect("units serialize");
            emit(&json, a.json.as_deref())
        }
        Command::Verify { report } => {
            let text = std::fs::read_to_string(&report)
                .map_err(|e| Failure::Verify(format!("cannot read {}: {e}", report.display())))?;
            verify_report(&text).map_err(|e| Failure::Verify(e.to_string()))?;
            println!("OK");
            Ok(())
        }
        Command::Cohomology { d, oracle, json } => {
            if d == 0 {
                return Err(Failure::Usage("--d must be at least 1".into()));
            }
            let block = cohomology_block(d, oracle).map_err(|e| Failure::Construction(e.to_string()))?;
            let value = serde_json::json!({
                "kunneth": block.kunneth,
                "ce": block.ce,
                "euler": block.euler,
                "match": block.matches,
            });
            println!("{}", cohomology_text(&value).join("\n"));
            if let Some(p) = json {
                emit(&serde_json::to_string_pretty(&value).expect("json"), Some(&p))?;
            }
            Ok(())
        }
        Command::Report { from, config } => {
            let value = match from {
                Some(p) => {
                    let text = std::fs::read_to_string(&p)
                        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?;
                    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid report: {e}")))?
                }
                None => build(&config)?.to_value(),
            };
            println!("{}", render(&value));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
