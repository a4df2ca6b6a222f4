mod plot;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bipers::bigraded::{parse_bpm_with_default, to_bpm};
use bipers::decomposition::{decompose_oracle, hook_profile, DEFAULT_ENDOMORPHISM_THRESHOLD};
use bipers::generators::{gallery, random_hook_sum, random_module, RandomMode, RandomSpec, GALLERY};
use bipers::resolution::verify_exactness;
use bipers::{
    betti_table, check_implications, classify, hook_decompose, minimal_free_resolution, BettiTable, Error,
    GridBox, GridModule, Matrix, Presentation, PrimeField,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bipers", version, about = "Classify finitely presented biparameter persistence modules")]
struct Cli {
    /// Default field for inputs without a `field` line.
    #[arg(long, global = true, env = "BIPERS_FIELD", default_value_t = 2)]
    field: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Free / hook-decomposable / projective dimension report.
    Classify {
        input: String,
        #[arg(long)]
        json: bool,
        /// Include per-stage timings (JSON only).
        #[arg(long)]
        timings: bool,
    },
    /// Graded Betti numbers.
    Betti {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Minimal free resolution.
    Resolve {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Hook decomposition, or the idempotent-search oracle with `--oracle`.
    Decompose {
        input: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_ENDOMORPHISM_THRESHOLD)]
        threshold: usize,
    },
    /// List gallery modules, or print one as `.bpm`.
    Gallery { name: Option<String> },
    /// Print a seeded random module as `.bpm`.
    Random(RandomArgs),
    /// Classify many modules, one JSON line each.
    Corpus {
        /// `.bpm` files, directories of them, or `gallery:<name>`.
        inputs: Vec<String>,
        /// Also classify this many random modules (seeds from `--seed`).
        #[arg(long, default_value_t = 0)]
        random: u64,
        #[command(flatten)]
        spec: RandomArgs,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        timings: bool,
    },
    /// ASCII grid of pointwise dimensions.
    Plot {
        input: String,
        #[arg(long)]
        nx: Option<u32>,
        #[arg(long)]
        ny: Option<u32>,
    },
}

#[derive(Args, Clone)]
struct RandomArgs {
    #[arg(long, value_enum, default_value_t = Mode::Arbitrary)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    max_gens: usize,
    #[arg(long, default_value_t = 4)]
    max_rels: usize,
    #[arg(long, default_value_t = 6)]
    max_degree: u32,
    #[arg(long, default_value_t = 5)]
    max_hooks: usize,
}

#[derive(ValueEnum, Clone, Copy)]
enum Mode {
    Arbitrary,
    Free,
    HookSum,
}

impl RandomArgs {
    fn spec(&self, seed: u64, field: PrimeField) -> Result<RandomSpec, Failure> {
        if self.max_gens == 0 || self.max_hooks == 0 {
            return Err(Failure::Usage("random bounds must be positive".into()));
        }
        Ok(RandomSpec {
            mode: match self.mode {
                Mode::Arbitrary => RandomMode::Arbitrary,
                Mode::Free => RandomMode::Free,
                Mode::HookSum => RandomMode::HookSumScrambled,
            },
            max_gens: self.max_gens,
            max_rels: self.max_rels,
            max_degree: self.max_degree,
            max_hooks: self.max_hooks,
            seed,
            field,
        })
    }
}

enum Failure {
    Implications,
    Usage(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Implications => 1,
            Failure::Usage(_) => 2,
            Failure::Invariant(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) | Error::ThresholdExceeded { .. } => Failure::Invariant(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn load(input: &str, field: PrimeField) -> Result<Presentation, Failure> {
    if let Some(name) = input.strip_prefix("gallery:") {
        return Ok(gallery(name)?);
    }
    let text = std::fs::read_to_string(input).map_err(|e| Failure::Usage(format!("{input}: {e}")))?;
    parse_bpm_with_default(&text, field).map_err(|e| Failure::Usage(format!("{input}:{e}")))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn betti_text(t: &BettiTable) -> String {
    (0..3)
        .map(|i| {
            let terms: Vec<String> = t.beta[i]
                .iter()
                .map(|(d, m)| if *m == 1 { d.to_string() } else { format!("{d}^{m}") })
                .collect();
            format!("β{i}: {}", if terms.is_empty() { "-".into() } else { terms.join(" ") })
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    let field = PrimeField::new(cli.field).map_err(|e| Failure::Usage(e.to_string()))?;
    match cli.command {
        Command::Classify { input, json, timings } => {
            let pres = load(&input, field)?;
            let r = classify(&pres)?;
            if !check_implications(&r) {
                return Err(Failure::Invariant("report violates the implication diagram".into()));
            }
            if json || timings {
                print_json(&r.to_json(timings));
            } else {
                println!("free                {}", r.free);
                println!("hook-decomposable   {}", r.hook_decomposable);
                println!("structure theorem   {}", r.structure_theorem);
                println!("gamma product       {}", r.gamma_product);
                println!("projective dim      {}", r.projective_dimension);
                println!("{}", betti_text(&r.betti));
                if let Some(c) = &r.certificate {
                    for h in &c.hooks {
                        println!("  {h}");
                    }
                }
            }
        }
        Command::Betti { input, json } => {
            let t = betti_table(&load(&input, field)?)?;
            if json {
                print_json(&serde_json::to_value(&t).expect("json"));
            } else {
                println!("{}", betti_text(&t));
            }
        }
        Command::Resolve { input, json } => {
            let pres = load(&input, field)?;
            let res = minimal_free_resolution(&pres)?;
            let exact = verify_exactness(&res, pres.classification_box());
            if !exact {
                return Err(Failure::Invariant("resolution is not exact".into()));
            }
            if json {
                print_json(&json!({
                    "degrees": res.degrees,
                    "d1": matrix_rows(&res.d1),
                    "d2": matrix_rows(&res.d2),
                    "exact": exact,
                }));
            } else {
                let ranks: Vec<String> = res.degrees.iter().map(|d| d.len().to_string()).collect();
                println!("0 -> F^{} -> F^{} -> F^{} -> M -> 0", ranks[2], ranks[1], ranks[0]);
                println!("{}", betti_text(&res.betti()));
                println!("d1 = {:?}\nd2 = {:?}", res.d1, res.d2);
            }
        }
        Command::Decompose { input, json, oracle, threshold } => {
            let pres = load(&input, field)?;
            let v = if oracle {
                let m = GridModule::for_classification(&pres)?;
                let parts = decompose_oracle(&m, threshold)?;
                let summands: Vec<Value> = parts
                    .iter()
                    .map(|s| {
                        let support: Vec<[u32; 3]> = s
                            .grid()
                            .points()
                            .filter(|&d| s.dim(d) > 0)
                            .map(|d| [d.x, d.y, s.dim(d) as u32])
                            .collect();
                        json!({ "hook": hook_profile(s), "support": support })
                    })
                    .collect();
                json!({ "summands": summands })
            } else {
                let cert = hook_decompose(&pres)?;
                json!({
                    "hook_decomposable": cert.is_some(),
                    "hooks": cert.map(|c| c.hooks),
                })
            };
            if json {
                print_json(&v);
            } else {
                println!("{}", serde_json::to_string(&v).expect("json"));
            }
        }
        Command::Gallery { name: None } => {
            for name in GALLERY {
                println!("{name}");
            }
        }
        Command::Gallery { name: Some(name) } => print!("{}", to_bpm(&gallery(&name)?)),
        Command::Random(args) => {
            let spec = args.spec(args.seed, field)?;
            if spec.mode == RandomMode::HookSumScrambled {
                let (pres, hooks) = random_hook_sum(&spec);
                let list: Vec<String> = hooks.iter().map(|h| h.to_string()).collect();
                println!("# {}", list.join(" + "));
                print!("{}", to_bpm(&pres));
            } else {
                print!("{}", to_bpm(&random_module(&spec)));
            }
        }
        Command::Corpus { inputs, random, spec, jobs, timings } => {
            corpus(&inputs, random, &spec, jobs, timings, field)?;
        }
        Command::Plot { input, nx, ny } => {
            let pres = load(&input, field)?;
            let m = match (nx, ny) {
                (None, None) => GridModule::for_classification(&pres)?,
                _ => {
                    let b = pres.classification_box();
                    GridModule::from_presentation(&pres, GridBox::new(nx.unwrap_or(b.nx), ny.unwrap_or(b.ny)))?
                }
            };
            let hooks = hook_decompose(&pres)?.map(|c| c.hooks);
            print!("{}", plot::render(&m, hooks.as_deref()));
            if hooks.is_none() {
                println!("not hook-decomposable");
            }
        }
    }
    Ok(())
}

enum Item {
    File(PathBuf),
    Named(String),
    Seed(u64),
}

fn expand(inputs: &[String]) -> Result<Vec<Item>, Failure> {
    let mut items = Vec::new();
    for input in inputs {
        let path = Path::new(input);
        if input.starts_with("gallery:") {
            items.push(Item::Named(input.clone()));
        } else if path.is_dir() {
            let mut files: Vec<PathBuf> = std::fs::read_dir(path)
                .map_err(|e| Failure::Usage(format!("{input}: {e}")))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "bpm"))
                .collect();
            files.sort();
            items.extend(files.into_iter().map(Item::File));
        } else {
            items.push(Item::File(path.to_path_buf()));
        }
    }
    Ok(items)
}

fn corpus(
    inputs: &[String],
    random: u64,
    args: &RandomArgs,
    jobs: usize,
    timings: bool,
    field: PrimeField,
) -> Result<(), Failure> {
    let mut items = expand(inputs)?;
    items.extend((0..random).map(|k| Item::Seed(args.seed + k)));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;

    let results: Vec<(Value, u8)> = pool.install(|| {
        items
            .par_iter()
            .map(|item| {
                let (name, pres) = match item {
                    Item::File(p) => (p.display().to_string(), load(&p.to_string_lossy(), field)),
                    Item::Named(n) => (n.clone(), load(n, field)),
                    Item::Seed(s) => (
                        format!("seed:{s}"),
                        args.spec(*s, field).map(|spec| random_module(&spec)),
                    ),
                };
                match pres.and_then(|p| classify(&p).map_err(Failure::from)) {
                    Ok(r) => {
                        let ok = check_implications(&r);
                        let line = json!({ "input": name, "implications": ok, "report": r.to_json(timings) });
                        (line, if ok { 0 } else { Failure::Implications.code() })
                    }
                    Err(f) => {
                        let msg = match &f {
                            Failure::Usage(m) | Failure::Invariant(m) => m.clone(),
                            Failure::Implications => unreachable!(),
                        };
                        (json!({ "input": name, "error": msg }), f.code())
                    }
                }
            })
            .collect()
    });

    let mut worst = 0;
    for (line, code) in &results {
        println!("{line}");
        worst = worst.max(*code);
    }
    match worst {
        0 => Ok(()),
        1 => Err(Failure::Implications),
        2 => Err(Failure::Usage("some inputs could not be read".into())),
        _ => Err(Failure::Invariant("some inputs violated an internal invariant".into())),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Implications => eprintln!("bipers: implication check failed"),
                Failure::Usage(m) => eprintln!("bipers: {m}"),
                Failure::Invariant(m) => eprintln!("bipers: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
