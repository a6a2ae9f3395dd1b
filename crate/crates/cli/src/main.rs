use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use qloop::modules::{
    borel_from_asymptotic, build_sl2_kr, build_sl2_lplus, build_sl2_vinf, build_sl2_winf, build_sl3_kr,
    build_sl3_lplus, build_sl3_vinf, build_sl3_winf, dualize, tensor_sl2, verify_kappa_zero, AlgebraKind, Direction, Gen, Param,
    RepModule, Window,
};
use qloop::relations::{verify_asymptotic_relations, verify_borel_relations, CheckWindow};
use qloop::{
    char_formula, compare_formula_vs_module, limit_stabilize, CartanData, CartanType, Error, ExponentReading,
    FormulaParams, QChar,
};

#[derive(Parser)]
#[command(name = "qloop", version, about = "q-characters, explicit modules and relation checks for quantum loop algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Kr,
    Vinf,
    Lplus,
    Winf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Sl2Kr,
    Sl3Kr,
    Sl2Vinf,
    Sl3Vinf,
    Sl2Lplus,
    Sl3Lplus,
    Sl2Winf,
    Sl3Winf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Exponent {
    /// `[ᾱ_j]^{-k N_k^{(j)}}`
    Summed,
    /// `[ᾱ_j]^{-k N_k^{(i)}}`
    Outer,
}

#[derive(Subcommand)]
enum Cmd {
    /// q-character of a stored module
    Qchar {
        #[arg(long, value_enum)]
        source: Source,
        #[arg(long = "type", default_value = "A1")]
        ty: String,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Spectral exponent of the lowest factor `Y_{i,q^shift}` (KR only); defaults to `1 - 2k`
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<i64>,
        #[arg(long, default_value_t = 8)]
        depth: u32,
        #[arg(long)]
        normalized: bool,
        #[arg(long)]
        json: bool,
    },
    /// Relation check on a stored module
    Verify {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 8)]
        depth: u32,
        #[arg(long = "R", default_value_t = 2)]
        r: i64,
        #[arg(long = "M", default_value_t = 3)]
        m: u32,
        /// Also require `κ_i = 0`
        #[arg(long)]
        kappa_zero: bool,
    },
    /// Compare χ(L⁺) with χ(L⁻) (via V∞)
    ComparePm {
        #[arg(long = "type", default_value = "A1")]
        ty: String,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 8)]
        depth: u32,
    },
    /// The closed character formula, optionally compared with V∞
    CharFormula {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 8)]
        depth: u32,
        #[arg(long, value_enum, default_value = "summed")]
        exponent: Exponent,
        /// Compare against the character of the stored V∞ module (A1, A2)
        #[arg(long)]
        compare: bool,
        #[arg(long)]
        json: bool,
    },
    /// Stabilization of normalized KR q-characters and comparison with V∞
    Limit {
        #[arg(long = "type", default_value = "A1")]
        ty: String,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 5)]
        k_min: u32,
        #[arg(long, default_value_t = 9)]
        k_max: u32,
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
    /// Graded dual of a Borel module
    Dual {
        #[arg(long, value_enum)]
        source: Source,
        #[arg(long = "type", default_value = "A1")]
        ty: String,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
    /// Tensor product of two sl2 KR modules
    Tensor {
        #[arg(long, default_value_t = 1)]
        k1: u32,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        shift1: i64,
        #[arg(long, default_value_t = 1)]
        k2: u32,
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        shift2: i64,
    },
}

enum Failure {
    Usage(String),
    Mismatch(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Small types only: the stored explicit modules exist for sl2 and sl3.
fn rank_of(ty: &str) -> Result<usize, Failure> {
    match CartanData::parse(ty)?.cartan_type() {
        CartanType::A(n) if n <= 2 => Ok(n),
        _ => Err(Failure::Usage(format!("no stored modules for type {ty}; use A1 or A2"))),
    }
}

fn check_node(rank: usize, i: usize) -> Result<(), Failure> {
    if i == 0 || i > rank {
        return Err(Failure::Usage(format!("node {i} out of range 1..={rank}")));
    }
    Ok(())
}

fn kr(rank: usize, i: usize, k: u32, s: i64, w: Window) -> RepModule {
    if rank == 1 {
        build_sl2_kr(k, s, w)
    } else {
        build_sl3_kr(k, i, s, w)
    }
}

fn build(source: Source, rank: usize, i: usize, k: u32, s: i64, depth: u32, w: Window) -> Result<RepModule, Failure> {
    check_node(rank, i)?;
    Ok(match (source, rank) {
        (Source::Kr, _) => kr(rank, i, k, s, w),
        (Source::Vinf, 1) => build_sl2_vinf(depth, w),
        (Source::Vinf, _) => build_sl3_vinf(depth, i, w),
        (Source::Lplus, 1) => build_sl2_lplus(depth, w),
        (Source::Lplus, _) => build_sl3_lplus(depth, i, w),
        (Source::Winf, 1) => build_sl2_winf(depth, w),
        (Source::Winf, _) => {
            if i != 1 {
                return Err(Failure::Usage("the sl3 W∞ module is stored for node 1 only".into()));
            }
            build_sl3_winf(depth, w)
        }
    })
}

/// The relative shift `s` of a KR builder whose lowest factor is `Y_{i,q^r}`.
fn relative_shift(k: u32, r: Option<i64>) -> i64 {
    r.map_or(0, |r| r + 2 * k as i64 - 1)
}

fn run(cmd: Cmd) -> Result<Value, Failure> {
    match cmd {
        Cmd::Qchar { source, ty, i, k, shift, depth, normalized, json: _ } => {
            let rank = rank_of(&ty)?;
            let m = build(source, rank, i, k, relative_shift(k, shift), depth, Window::default())?;
            let mut qc = m.qchar()?;
            if normalized {
                qc = qc.normalize()?;
            }
            Ok(to_value(&qc))
        }
        Cmd::Verify { target, i, k, depth, r, m: mm, kappa_zero } => {
            if r < 0 {
                return Err(Failure::Usage("--R must be nonnegative".into()));
            }
            let w = Window::for_check(r, mm);
            let (source, rank) = match target {
                Target::Sl2Kr => (Source::Kr, 1),
                Target::Sl3Kr => (Source::Kr, 2),
                Target::Sl2Vinf => (Source::Vinf, 1),
                Target::Sl3Vinf => (Source::Vinf, 2),
                Target::Sl2Lplus => (Source::Lplus, 1),
                Target::Sl3Lplus => (Source::Lplus, 2),
                Target::Sl2Winf => (Source::Winf, 1),
                Target::Sl3Winf => (Source::Winf, 2),
            };
            let module = build(source, rank, i, k, 0, depth, w)?;
            let report = match module.kind() {
                AlgebraKind::Borel => verify_borel_relations(&module)?,
                AlgebraKind::Asymptotic(_) => verify_asymptotic_relations(&module, CheckWindow { r, m: mm })?,
            };
            let mut out = json!({ "relations": to_value(&report) });
            let mut pass = report.pass();
            if kappa_zero {
                let kc = verify_kappa_zero(&module, i)?;
                pass &= kc.pass;
                out["kappa_zero"] = to_value(&kc);
            }
            out["pass"] = json!(pass);
            if pass {
                Ok(out)
            } else {
                Err(Failure::Mismatch(out))
            }
        }
        Cmd::ComparePm { ty, i, depth } => {
            let rank = rank_of(&ty)?;
            let minus = build(Source::Vinf, rank, i, 0, 0, depth, Window::default())?.char()?;
            let plus = build(Source::Lplus, rank, i, 0, 0, depth, Window::default())?.char()?;
            let top = minus.top().ok_or(Error::NoUniqueTop)?;
            let plus = plus.truncate(depth)?;
            let plus_top = plus.top().ok_or(Error::NoUniqueTop)?;
            // compare normalized characters
            let shift = |c: &qloop::Char, t: &[i64]| -> qloop::Char {
                let terms = c.terms().iter().map(|(w, m)| (w.iter().zip(t).map(|(a, b)| a - b).collect(), *m)).collect();
                qloop::Char::new(c.cartan().clone(), terms, c.depth())
            };
            let (a, b) = (shift(&minus, &top), shift(&plus, &plus_top));
            let zero = vec![0; rank];
            let diff = a.first_difference(&b, &zero, depth);
            let out = json!({
                "depth": depth,
                "equal": diff.is_none(),
                "first_difference": diff.clone().map(|(w, x, y)| json!({ "weight": w, "minus": x, "plus": y })),
                "char": to_value(&a.truncate_below(&zero, depth)),
            });
            if diff.is_none() {
                Ok(out)
            } else {
                Err(Failure::Mismatch(out))
            }
        }
        Cmd::CharFormula { ty, i, depth, exponent, compare, json: _ } => {
            let cd = CartanData::parse(&ty)?;
            cd.check_node(i)?;
            let reading = match exponent {
                Exponent::Summed => ExponentReading::SummedIndex,
                Exponent::Outer => ExponentReading::OuterIndex,
            };
            let p = FormulaParams { cd, i, depth, reading };
            let c = char_formula(&p)?;
            if !compare {
                return Ok(to_value(&c));
            }
            let m = build(Source::Vinf, rank_of(&ty)?, i, 0, 0, depth, Window::default())?;
            let diff = compare_formula_vs_module(&p, &m)?;
            let out = json!({
                "char": to_value(&c),
                "agrees_with_module": diff.is_none(),
                "first_difference": diff.clone().map(|(w, x, y)| json!({ "weight": w, "formula": x, "module": y })),
            });
            if diff.is_none() {
                Ok(out)
            } else {
                Err(Failure::Mismatch(out))
            }
        }
        Cmd::Limit { ty, i, k_min, k_max, depth } => {
            let rank = rank_of(&ty)?;
            check_node(rank, i)?;
            if k_min > k_max {
                return Err(Failure::Usage("--k-min exceeds --k-max".into()));
            }
            let w = Window::default();
            let seq: Vec<QChar> = (k_min..=k_max).map(|k| kr(rank, i, k, 0, w).qchar()?.normalize()).collect::<Result<_, _>>()?;
            let vinf = build(Source::Vinf, rank, i, 0, 0, depth, w)?.qchar()?.normalize()?.truncate(depth)?;
            match limit_stabilize(&seq, depth) {
                Ok(lim) => {
                    let agrees = lim.terms() == vinf.terms();
                    let out = json!({ "limit": to_value(&lim), "agrees_with_vinf": agrees });
                    if agrees {
                        Ok(out)
                    } else {
                        Err(Failure::Mismatch(out))
                    }
                }
                Err(f) => Err(Failure::Mismatch(json!({ "stabilized": false, "reason": f.to_string() }))),
            }
        }
        Cmd::Dual { source, ty, i, k, depth } => {
            let rank = rank_of(&ty)?;
            let w = Window::default();
            let borel = match source {
                Source::Kr => borel_from_asymptotic(&kr(rank, i, k, 0, w), &vec![0; rank])?,
                Source::Vinf => {
                    // σ-route: V∞ read over the opposite parameter
                    let v = build(Source::Vinf, rank, i, 0, 0, depth, w)?.reparametrize(Param::QInv)?;
                    borel_from_asymptotic(&v, &vec![0; rank])?
                }
                s => build(s, rank, i, k, 0, depth, w)?,
            };
            let d = dualize(&borel)?;
            // a dual of a highest-truncated module is truncated from below and has no truncated character
            let chi = if d.truncation().depth.is_some() && d.truncation().direction == Direction::Lowest {
                Value::Null
            } else {
                to_value(&d.char()?)
            };
            Ok(json!({ "module": to_value(&d), "char": chi }))
        }
        Cmd::Tensor { k1, shift1, k2, shift2 } => {
            let w = Window::default();
            let a = build_sl2_kr(k1, relative_shift(k1, Some(shift1)), w);
            let b = build_sl2_kr(k2, relative_shift(k2, Some(shift2)), w);
            let t = tensor_sl2(&a, &b)?;
            let top = t.char()?.top().ok_or(Error::NoUniqueTop)?;
            let idx = (0..t.dim()).find(|&b| t.weight_of(b) == &top).unwrap();
            let phi = t.actions()[&Gen::PhiPlus(1, 1)].entry(idx, idx);
            Ok(json!({ "module": to_value(&t), "top": t.basis()[idx], "phi_plus_1_on_top": phi.map(|c| to_value(&c)) }))
        }
    }
}

fn emit(v: &Value) {
    // serde_json's map is ordered by key, so this is canonical
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("QLOOP_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(v)) => {
            emit(&v);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
