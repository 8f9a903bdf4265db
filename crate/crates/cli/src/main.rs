mod code;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use lmec::channel::{apply, sample_error_with, seeded_rng, WeightProfile};
use lmec::distance::{is_aec, is_uec, is_ued};
use lmec::format::write_codebook;
use lmec::oracle::{bound_report, max_code_exact_capped, verify_correction, DEFAULT_VERTEX_CAP};
use lmec::vt::{self, LinearCode, PowerCodeSpec};
use lmec::{ued, CodeMode, CodeParams, Codebook, Direction, Error, Word};
use rand::Rng;
use serde_json::{json, Value};

use crate::code::{uec_code, Code};

const EXIT_USAGE: u8 = 2;
const EXIT_DECODE: u8 = 3;
const EXIT_CAP: u8 = 4;
const EXIT_VERIFY: u8 = 5;

const CAP_ENV: &str = "LMEC_ORACLE_CAP";

#[derive(Parser)]
#[command(
    name = "lmec",
    version,
    about = "Codes against limited-magnitude asymmetric and unidirectional errors"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(long)]
    q: u32,
    #[arg(long, visible_alias = "l")]
    ell: u32,
    #[arg(long)]
    n: usize,
}

impl ParamArgs {
    fn params(&self) -> lmec::Result<CodeParams> {
        CodeParams::new(self.q, self.ell, self.n)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructMode {
    Aec,
    Uec,
    Ued,
    Vt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleMode {
    Aec,
    Uec,
    Ued,
}

impl From<OracleMode> for CodeMode {
    fn from(m: OracleMode) -> Self {
        match m {
            OracleMode::Aec => CodeMode::Aec,
            OracleMode::Uec => CodeMode::Uec,
            OracleMode::Ued => CodeMode::Ued,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    Up,
    Down,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write it as a codebook file.
    Construct {
        #[arg(long, value_enum)]
        mode: ConstructMode,
        #[command(flatten)]
        params: ParamArgs,
        /// constant-sum, two-level or tail (uec only)
        #[arg(long)]
        construction: Option<String>,
        /// Digit sum for the constant-sum construction.
        #[arg(long)]
        j: Option<u64>,
        /// Offset from the centre constant (vt).
        #[arg(long, allow_hyphen_values = true)]
        r: Option<i64>,
        /// Equation constant (vt) or residue (ued).
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        /// Comma-separated coefficients for a general equation (vt).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Option<Vec<i64>>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Refuse codebooks with more words than this.
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Correct a received word.
    Decode {
        /// Codebook file or spec such as vt:q=4,l=1,n=3,a=7.
        #[arg(long)]
        code: String,
        #[arg(long)]
        received: String,
    },
    /// Sizes of the power-coefficient codes.
    Count {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "max")]
        r: Option<i64>,
        /// Report the largest size and every offset attaining it.
        #[arg(long)]
        max: bool,
    },
    /// Full size table for the power-coefficient codes, or the layer table
    /// for detection codes.
    Table {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        ued: bool,
    },
    /// Offsets on which the power-coefficient code is provably optimal.
    Window {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Best constant for fixed coefficients.
    Scan {
        #[command(flatten)]
        params: ParamArgs,
        /// Defaults to powers of l+1.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Option<Vec<i64>>,
    },
    /// Check a code against its mode, pairwise and through the channel.
    Verify {
        #[arg(long)]
        code: String,
        #[arg(long, value_enum)]
        mode: Option<OracleMode>,
    },
    /// Exact maximum code size by exhaustive search.
    Oracle {
        #[arg(long, value_enum)]
        mode: OracleMode,
        #[command(flatten)]
        params: ParamArgs,
        /// Vertex cap; defaults to LMEC_ORACLE_CAP or 20000.
        #[arg(long)]
        cap: Option<usize>,
        /// Also print the canonical maximum code.
        #[arg(long)]
        witness: bool,
    },
    /// Send random codewords through the channel and decode them.
    Simulate {
        #[arg(long)]
        code: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, value_enum)]
        direction: Option<DirectionArg>,
        /// Largest error magnitude drawn; defaults to l.
        #[arg(long)]
        level: Option<u32>,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Bounds, construction sizes and exact values for one parameter set.
    Report {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        cap: Option<usize>,
    },
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Error::InvalidArgument(msg.into()).into()
}

fn oracle_cap(flag: Option<usize>) -> anyhow::Result<usize> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{CAP_ENV} must be a number, got {v:?}"))),
        Err(_) => Ok(DEFAULT_VERTEX_CAP),
    }
}

fn print_json(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("json values serialise")
    );
}

fn joined<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn validity(book: &Codebook) -> bool {
    match book.mode() {
        CodeMode::Aec => is_aec(book),
        CodeMode::Uec => is_uec(book),
        CodeMode::Ued => is_ued(book),
    }
}

#[allow(clippy::too_many_arguments)]
fn construct(
    mode: ConstructMode,
    params: CodeParams,
    construction: Option<String>,
    j: Option<u64>,
    r: Option<i64>,
    a: Option<i64>,
    coeffs: Option<Vec<i64>>,
    cap: usize,
) -> anyhow::Result<Codebook> {
    let reject = |flag: &str, set: bool| -> anyhow::Result<()> {
        if set {
            Err(usage(format!("--{flag} does not apply here")))
        } else {
            Ok(())
        }
    };
    if mode != ConstructMode::Uec {
        reject("construction", construction.is_some())?;
        reject("j", j.is_some())?;
    }
    if mode != ConstructMode::Vt {
        reject("r", r.is_some())?;
        reject("coeffs", coeffs.is_some())?;
    }
    let code = match mode {
        ConstructMode::Aec => {
            reject("a", a.is_some())?;
            Code::Aec(lmec::aec::AecCode::new(params))
        }
        ConstructMode::Uec => {
            reject("a", a.is_some())?;
            Code::Uec(uec_code(
                params,
                construction.as_deref().unwrap_or("constant-sum"),
                j,
            )?)
        }
        ConstructMode::Ued => {
            let a = match a {
                Some(a) => u64::try_from(a).map_err(|_| usage("--a must be non-negative"))?,
                None => ued::best_ca(&params)?.0,
            };
            Code::Ued { params, a }
        }
        ConstructMode::Vt => {
            if let Some(coeffs) = coeffs {
                if r.is_some() {
                    return Err(usage("--coeffs takes --a, not --r"));
                }
                let a = a.ok_or_else(|| usage("--coeffs needs --a"))?;
                let book = LinearCode::new(params, coeffs, a)?.enumerate();
                if book.len() > cap {
                    return Err(Error::ResourceCap {
                        what: "codebook size",
                        requested: book.len() as u128,
                        cap: cap as u128,
                    }
                    .into());
                }
                return Ok(book);
            }
            match (r, a) {
                (Some(_), Some(_)) => return Err(usage("give either --r or --a")),
                (_, Some(a)) => Code::Vt(PowerCodeSpec::with_constant(params, a)?),
                (r, None) => Code::Vt(PowerCodeSpec::new(params, r.unwrap_or(0))?),
            }
        }
    };
    code.codebook(cap)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let json = cli.format == Format::Json;
    match cli.command {
        Command::Construct {
            mode,
            params,
            construction,
            j,
            r,
            a,
            coeffs,
            out,
            cap,
        } => {
            let book = construct(mode, params.params()?, construction, j, r, a, coeffs, cap)?;
            let valid = validity(&book);
            let text = write_codebook(&book);
            if let Some(path) = &out {
                std::fs::write(path, &text)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if json {
                let mut v = json!({
                    "params": book.params(),
                    "mode": book.mode(),
                    "size": book.len().to_string(),
                    "valid": valid,
                });
                if out.is_none() {
                    v["words"] = book.iter().map(|w| Value::from(w.to_string())).collect();
                }
                print_json(&v);
            } else if out.is_some() {
                println!("size {}", book.len());
                println!("valid {valid}");
            } else {
                print!("{text}");
                eprintln!("size {} valid {valid}", book.len());
            }
            Ok(0)
        }
        Command::Decode { code, received } => {
            let code = Code::parse(&code)?;
            let y: Word = received.parse()?;
            let (x, e) = code.decode(&y)?;
            if json {
                print_json(&json!({
                    "decoded": x.to_string(),
                    "error": Word::from(e.magnitudes.clone()).to_string(),
                    "direction": e.direction,
                }));
            } else {
                println!("decoded {x}");
                println!("error {e}");
            }
            Ok(0)
        }
        Command::Count { params, r, max } => {
            let params = params.params()?;
            if max {
                let m = vt::gamma_max(&params)?;
                if json {
                    print_json(&json!({"max": m.max.to_string(), "offsets": m.offsets}));
                } else {
                    println!("{} at offsets {}", m.max, joined(&m.offsets));
                }
            } else {
                let r = r.unwrap_or(0);
                let count = vt::gamma(&params, r)?;
                if json {
                    print_json(&json!({"r": r, "count": count.to_string()}));
                } else {
                    println!("{count}");
                }
            }
            Ok(0)
        }
        Command::Table {
            params,
            ued: detect,
        } => {
            let params = params.params()?;
            if detect {
                let layers = ued::layer_sizes(&params)?;
                let unions = (0..=u64::from(params.ell()) * params.n() as u64)
                    .map(|a| ued::count_ca(&params, a))
                    .collect::<lmec::Result<Vec<_>>>()?;
                if json {
                    print_json(&json!({
                        "layers": layers.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "unions": unions.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    }));
                } else {
                    for (i, c) in layers.iter().enumerate() {
                        println!("P {i} {c}");
                    }
                    for (a, c) in unions.iter().enumerate() {
                        println!("C {a} {c}");
                    }
                }
            } else {
                let table = vt::gamma_table(&params)?;
                let shift = vt::alpha(&params) * vt::s_n(&params)?;
                let rows: Vec<(i64, String)> = table
                    .iter()
                    .map(|(e, c)| (e as i64 - shift, c.to_string()))
                    .collect();
                if json {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|(r, c)| json!({"r": r, "count": c}))
                        .collect();
                    print_json(&json!({"offset": -shift, "rows": rows}));
                } else {
                    for (r, c) in rows {
                        println!("{r} {c}");
                    }
                }
            }
            Ok(0)
        }
        Command::Window { params } => {
            let params = params.params()?;
            match vt::optimal_window(&params) {
                Some(w) => {
                    if json {
                        print_json(&serde_json::to_value(w)?);
                    } else {
                        let rule = match w.rule {
                            vt::WindowRule::Divisible => "divisible".to_string(),
                            vt::WindowRule::Decomposed { m, c, delta } => {
                                format!("decomposed m={m} c={c} delta={delta}")
                            }
                        };
                        println!("[{}, {}] {rule}", w.u, w.v);
                    }
                }
                None => {
                    if json {
                        print_json(&json!({"rule": "none"}));
                    } else {
                        println!("not applicable");
                    }
                }
            }
            Ok(0)
        }
        Command::Scan { params, coeffs } => {
            let params = params.params()?;
            let coeffs = match coeffs {
                Some(c) => c,
                None => vt::power_coeffs(&params)?,
            };
            let scan = vt::best_constant_scan(&params, &coeffs)?;
            if json {
                print_json(
                    &json!({"constant": scan.constant.to_string(), "size": scan.size.to_string()}),
                );
            } else {
                println!("best constant {} size {}", scan.constant, scan.size);
            }
            Ok(0)
        }
        Command::Verify { code, mode } => {
            let code = Code::parse(&code)?;
            let mut book = code.codebook(usize::MAX)?;
            if let Some(m) = mode {
                book = book.with_mode(m.into());
            }
            let pairwise = validity(&book);
            let operational = match book.mode() {
                CodeMode::Aec => verify_correction(&book, lmec::ChannelMode::Asymmetric),
                CodeMode::Uec => verify_correction(&book, lmec::ChannelMode::Unidirectional),
                CodeMode::Ued => ued::detects_all(&book),
            };
            let ok = pairwise && operational;
            if json {
                print_json(&json!({
                    "mode": book.mode(),
                    "size": book.len().to_string(),
                    "checks": [
                        {"name": "pairwise", "pass": pairwise},
                        {"name": "operational", "pass": operational},
                    ],
                }));
            } else {
                println!("pairwise {}", if pairwise { "pass" } else { "FAIL" });
                println!("operational {}", if operational { "pass" } else { "FAIL" });
                println!("{}", if ok { "valid" } else { "invalid" });
            }
            Ok(if ok { 0 } else { EXIT_VERIFY })
        }
        Command::Oracle {
            mode,
            params,
            cap,
            witness,
        } => {
            let params = params.params()?;
            let (size, book) = max_code_exact_capped(&params, mode.into(), oracle_cap(cap)?)?;
            if json {
                let mut v = json!({"params": params, "mode": CodeMode::from(mode), "size": size.to_string()});
                if witness {
                    v["witness"] = book.iter().map(|w| Value::from(w.to_string())).collect();
                }
                print_json(&v);
            } else {
                println!("{size}");
                if witness {
                    print!("{}", write_codebook(&book));
                }
            }
            Ok(0)
        }
        Command::Simulate {
            code,
            seed,
            trials,
            direction,
            level,
            cap,
        } => {
            let code = Code::parse(&code)?;
            let params = code.params();
            let book = code.codebook(cap)?;
            if book.is_empty() {
                return Err(usage("the code is empty"));
            }
            let direction = direction.unwrap_or(match code.mode() {
                CodeMode::Aec => DirectionArg::Up,
                _ => DirectionArg::Both,
            });
            if code.mode() == CodeMode::Aec && direction != DirectionArg::Up {
                return Err(usage("asymmetric codes only see upward errors"));
            }
            let profile = match level {
                Some(l) => WeightProfile::UpTo(l),
                None => WeightProfile::Uniform,
            };
            let mut rng = seeded_rng(seed);
            let (mut corrected, mut failed, mut skipped) = (0u64, 0u64, 0u64);
            for _ in 0..trials {
                let x = &book.words()[rng.random_range(0..book.len())];
                let dir = match direction {
                    DirectionArg::Up => Direction::Up,
                    DirectionArg::Down => Direction::Down,
                    DirectionArg::Both => {
                        if rng.random_bool(0.5) {
                            Direction::Up
                        } else {
                            Direction::Down
                        }
                    }
                };
                let e = sample_error_with(&mut rng, &params, dir, &profile)?;
                let Ok(y) = apply(x, &e, &params) else {
                    skipped += 1;
                    continue;
                };
                match code.decode(&y) {
                    Ok((d, _)) if &d == x => corrected += 1,
                    _ => failed += 1,
                }
            }
            if json {
                print_json(&json!({
                    "seed": seed,
                    "trials": trials,
                    "corrected": corrected,
                    "failed": failed,
                    "skipped": skipped,
                }));
            } else {
                println!("trials {trials}");
                println!("corrected {corrected}");
                println!("failed {failed}");
                println!("skipped {skipped}");
            }
            Ok(if failed == 0 { 0 } else { EXIT_VERIFY })
        }
        Command::Report { params, cap } => {
            let params = params.params()?;
            let report = bound_report(&params, oracle_cap(cap)?)?;
            if json {
                print_json(&serde_json::to_value(&report)?);
            } else {
                println!("params {params}");
                for (k, v) in &report.bounds {
                    println!("bound {k} {v}");
                }
                for (k, v) in &report.sizes {
                    println!("size {k} {v}");
                }
                for c in &report.checks {
                    println!("check {} {}", c.name, if c.pass { "pass" } else { "FAIL" });
                }
            }
            Ok(if report.all_pass() { 0 } else { EXIT_VERIFY })
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::DecodeFailure(_)) => EXIT_DECODE,
        Some(Error::ResourceCap { .. }) => EXIT_CAP,
        Some(_) => EXIT_USAGE,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
