//! `miquel`: JSON front end for the finite Möbius plane library.
//!
//! Exit codes: 0 agreement (or plain success), 1 prediction/oracle
//! mismatch, 2 usage, parse or domain error.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use miquel::chains::{construct_chains, predict};
use miquel::gf::{Field, Fq2};
use miquel::oracle::{chain_census_bruteforce, compare};
use miquel::plane::{circle_through, Circle, MobiusMap, Point};
use miquel::position::capacitance;
use miquel::record::{
    census_record, chain_record, comparison_record, field_record, fq_value, position_record,
    prediction_record,
};
use miquel::sweep::{sweep, SweepMode};
use miquel::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "miquel", version, about = "Steiner chains in finite Miquelian Möbius planes M(q)")]
struct Cli {
    /// Characteristic of GF(q).
    #[arg(long, global = true, default_value_t = 7)]
    p: u32,
    /// Degree of GF(q) over GF(p).
    #[arg(long, global = true, default_value_t = 1)]
    m: u32,
    /// Monic modulus, coefficients low degree first: "a0,a1,...,1".
    #[arg(long, global = true)]
    modulus: Option<String>,
    /// Nonsquare α of GF(q) in element form ("30", or "a0,a1,..." for m > 1).
    #[arg(long, global = true)]
    alpha: Option<String>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest chain length tried for disjoint carriers (default q + 1).
    #[arg(long, global = true)]
    kmax: Option<u64>,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the JSON here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Point and circle counts of M(q).
    Info,
    /// Mutual position of two circles.
    Classify { circle1: String, circle2: String },
    /// Capacitance of two circles.
    Cap { circle1: String, circle2: String },
    /// Closed-form chain prediction.
    Predict { circle1: String, circle2: String },
    /// Explicit chains for tangent or intersecting carriers.
    Construct { circle1: String, circle2: String },
    /// Brute-force chain census.
    Census { circle1: String, circle2: String },
    /// Prediction against census; exit 1 on disagreement.
    Verify { circle1: String, circle2: String },
    /// Prediction against census over every carrier pair of a mode, per q.
    /// Uses the default modulus and α of each field.
    Sweep {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(required = true)]
        q: Vec<u32>,
    },
    /// Seeded random checks that capacitance is Möbius invariant.
    Invariance {
        #[arg(long, default_value_t = 1000)]
        trials: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Tangent,
    Intersecting,
    Disjoint,
}

impl From<Mode> for SweepMode {
    fn from(m: Mode) -> SweepMode {
        match m {
            Mode::Tangent => SweepMode::Tangent,
            Mode::Intersecting => SweepMode::Intersecting,
            Mode::Disjoint => SweepMode::Disjoint,
        }
    }
}

fn coefficients(text: &str, what: &str) -> Result<Vec<u32>, Error> {
    text.split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad {what}: {text:?}"))))
        .collect()
}

fn build_field(cli: &Cli) -> Result<Field, Error> {
    let modulus = cli.modulus.as_deref().map(|s| coefficients(s, "modulus")).transpose()?;
    let alpha = cli.alpha.as_deref().map(|s| coefficients(s, "alpha")).transpose()?;
    Field::with_options(cli.p, cli.m, modulus, alpha)
}

fn pair<'f>(f: &'f Field, a: &str, b: &str) -> Result<(Circle<'f>, Circle<'f>), Error> {
    Ok((Circle::parse(f, a)?, Circle::parse(f, b)?))
}

struct Output {
    json: Value,
    code: u8,
}

impl Output {
    fn ok(json: Value) -> Output {
        Output { json, code: 0 }
    }
}

fn point_at<'f>(f: &'f Field, n: u64) -> Point<'f> {
    let q = f.q() as u64;
    let n = n % (q * q + 1);
    if n == q * q {
        return Point::Infinity;
    }
    let x = f.elem((n / q) as u32).expect("code below q");
    let y = f.elem((n % q) as u32).expect("code below q");
    Point::Finite(Fq2::new(x, y))
}

fn triple<'f>(f: &'f Field, rng: &mut ChaCha8Rng) -> [Point<'f>; 3] {
    loop {
        let t = [point_at(f, rng.gen()), point_at(f, rng.gen()), point_at(f, rng.gen())];
        if t[0] != t[1] && t[0] != t[2] && t[1] != t[2] {
            return t;
        }
    }
}

fn invariance(f: &Field, seed: u64, trials: u32) -> Result<Output, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut done = 0;
    while done < trials {
        let [a, b, c] = triple(f, &mut rng);
        let c1 = circle_through(a, b, c)?;
        let [a, b, c] = triple(f, &mut rng);
        let c2 = circle_through(a, b, c)?;
        if c1 == c2 {
            continue;
        }
        let t = MobiusMap::from_three_points(triple(f, &mut rng), triple(f, &mut rng))?;
        let before = capacitance(&c1, &c2)?;
        let after = capacitance(&t.apply_circle(&c1), &t.apply_circle(&c2))?;
        if before != after {
            failures.push(json!({
                "circle1": c1.to_string(),
                "circle2": c2.to_string(),
                "map": t.matrix().map(|x| x.to_string()),
                "before": fq_value(before),
                "after": fq_value(after),
            }));
        }
        done += 1;
    }
    let code = u8::from(!failures.is_empty());
    Ok(Output {
        json: json!({ "seed": seed, "trials": trials, "failures": failures }),
        code,
    })
}

fn run(cli: &Cli) -> Result<Output, Error> {
    if let Command::Sweep { mode, q } = &cli.command {
        let rows = q
            .iter()
            .map(|&q| sweep(q, (*mode).into(), cli.kmax))
            .collect::<Result<Vec<_>, _>>()?;
        let agree = rows.iter().all(|r| r.all_agree());
        return Ok(Output {
            json: json!({ "mode": SweepMode::from(*mode).name(), "agree": agree, "rows": rows }),
            code: u8::from(!agree),
        });
    }
    let f = build_field(cli)?;
    let field = serde_json::to_value(field_record(&f)).expect("serializable");
    let body = match &cli.command {
        Command::Info => {
            let q = f.q() as u64;
            Output::ok(json!({
                "points": q * q + 1,
                "circles": { "first": q * q * (q - 1), "second": q * (q + 1) },
                "points_per_circle": q + 1,
            }))
        }
        Command::Classify { circle1, circle2 } => {
            let (c1, c2) = pair(&f, circle1, circle2)?;
            Output::ok(serde_json::to_value(position_record(&c1, &c2)?).expect("serializable"))
        }
        Command::Cap { circle1, circle2 } => {
            let (c1, c2) = pair(&f, circle1, circle2)?;
            Output::ok(json!({
                "circle1": c1.to_string(),
                "circle2": c2.to_string(),
                "kappa": fq_value(capacitance(&c1, &c2)?),
            }))
        }
        Command::Predict { circle1, circle2 } => {
            let (c1, c2) = pair(&f, circle1, circle2)?;
            let pred = predict(&c1, &c2, cli.kmax)?;
            Output::ok(json!({
                "position": position_record(&c1, &c2)?,
                "prediction": prediction_record(&pred),
            }))
        }
        Command::Construct { circle1, circle2 } => {
            let (c1, c2) = pair(&f, circle1, circle2)?;
            let chains = match construct_chains(&c1, &c2) {
                Ok(chains) => chains,
                Err(Error::NoChains) => Vec::new(),
                Err(e) => return Err(e),
            };
            let records: Vec<_> = chains.iter().map(chain_record).collect();
            Output::ok(json!({ "position": position_record(&c1, &c2)?, "chains": records }))
        }
        Command::Census { circle1, circle2 } => {
            let (c1, c2) = pair(&f, circle1, circle2)?;
            let census = chain_census_bruteforce(&c1, &c2)?;
            Output::ok(json!({
                "position": position_record(&c1, &c2)?,
                "census": census_record(&census),
            }))
        }
        Command::Verify { circle1, circle2 } => {
            let (c1, c2) = pair(&f, circle1, circle2)?;
            let pred = predict(&c1, &c2, cli.kmax)?;
            let census = chain_census_bruteforce(&c1, &c2)?;
            let cmp = compare(&pred, &census);
            Output {
                json: json!({
                    "position": position_record(&c1, &c2)?,
                    "prediction": prediction_record(&pred),
                    "census": census_record(&census),
                    "comparison": comparison_record(&cmp),
                }),
                code: u8::from(!cmp.agree()),
            }
        }
        Command::Invariance { trials } => invariance(&f, cli.seed, *trials)?,
        Command::Sweep { .. } => unreachable!("handled above"),
    };
    let mut json = json!({ "field": field });
    json.as_object_mut()
        .expect("object")
        .extend(body.json.as_object().cloned().unwrap_or_default());
    Ok(Output { json, code: body.code })
}

fn emit(cli: &Cli, json: &Value) -> io::Result<()> {
    let mut text = if cli.pretty {
        serde_json::to_string_pretty(json)
    } else {
        serde_json::to_string(json)
    }
    .expect("serializable");
    text.push('\n');
    match &cli.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
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
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.json) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
