use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use cliquetop::certificates::{certify_pi1_nontrivial, is_full, is_sparse, Certification};
use cliquetop::cx2::{parse_cell_complex, parse_complex, write_cell_complex, write_complex};
use cliquetop::experiments::{
    p_of_alpha, parse_rational, run_sweep, summarize, write_csv, ExperimentConfig, Model, SparsityParams, SummaryRow,
};
use cliquetop::spectral::{garland_scan, GARLAND_THRESHOLD};
use cliquetop::wedge::{classify, wedge_signature, WedgeOutcome};
use cliquetop::{
    density_brute, density_flow, homology_integral, sample_k4np, sample_knp, CellComplex2, Complex2,
    Error, Rational, RootSet, Seed,
};

/// Random clique 2-complexes: sampling, density, homology and certificates.
#[derive(Parser)]
#[command(name = "cliquetop", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a complex and write it as cx2.
    Gen(GenArgs),
    /// Print invariants of a cx2 file.
    Analyze(AnalyzeArgs),
    /// Try to certify that the rooted 6-cycle is not contractible.
    Certify {
        file: PathBuf,
    },
    /// Run a Monte Carlo sweep and write CSV.
    Sweep(SweepArgs),
    /// Cross-check flow and enumeration densities on a cx2 file.
    Oracle {
        file: PathBuf,
        /// Roots {1..r}.
        #[arg(long, default_value_t = 0)]
        r: u32,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, conflicts_with = "alpha", required_unless_present = "alpha")]
    p: Option<f64>,
    /// Use p = n^-alpha.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "knp")]
    model: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    /// With --m and --r, also report sparsity and fullness.
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    r: u32,
}

#[derive(Args)]
struct SweepArgs {
    /// TOML file with the fields of the sweep; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<u32>,
    /// Comma-separated exponents, each `a/b` or a decimal.
    #[arg(long, value_delimiter = ',')]
    alphas: Vec<String>,
    /// Raw edge probabilities, comma-separated.
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    model: Option<String>,
    /// homology, density, certificate, sparsity or spectral; repeatable.
    #[arg(long = "toggle", value_delimiter = ',')]
    toggles: Vec<String>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Outcome {
    Done,
    Refused,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Refused) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Gen(args) => gen(args),
        Command::Analyze(args) => analyze(args),
        Command::Certify { file } => certify(&file),
        Command::Sweep(args) => sweep(args),
        Command::Oracle { file, r } => oracle(&file, r),
    }
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn gen(args: GenArgs) -> anyhow::Result<Outcome> {
    let p = match (&args.p, &args.alpha) {
        (Some(p), _) => *p,
        (None, Some(a)) => {
            let alpha = parse_rational(a)?;
            if alpha <= Rational::from_integer(0) {
                bail!("alpha must be positive");
            }
            p_of_alpha(args.n, alpha)
        }
        (None, None) => unreachable!("clap requires one of --p and --alpha"),
    };
    let seed = Seed(args.seed);
    let text = match args.model.parse::<Model>()? {
        Model::Knp => write_complex(&sample_knp(args.n, p, seed)?),
        Model::K4np => write_cell_complex(&sample_k4np(args.n, p, seed)?),
    };
    emit(&text, args.out.as_deref())?;
    Ok(Outcome::Done)
}

enum Loaded {
    Simplicial(Complex2),
    Cells(CellComplex2),
}

fn load(path: &Path) -> anyhow::Result<Loaded> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let has_cells = text.lines().any(|l| l.trim_start().starts_with("c "));
    Ok(if has_cells {
        Loaded::Cells(parse_cell_complex(&text).with_context(|| format!("parsing {}", path.display()))?)
    } else {
        Loaded::Simplicial(parse_complex(&text).with_context(|| format!("parsing {}", path.display()))?)
    })
}

fn load_simplicial(path: &Path) -> anyhow::Result<Complex2> {
    match load(path)? {
        Loaded::Simplicial(x) => Ok(x),
        Loaded::Cells(_) => bail!("{} has square cells; a simplicial complex is needed", path.display()),
    }
}

fn analyze(args: AnalyzeArgs) -> anyhow::Result<Outcome> {
    let x = match load(&args.file)? {
        Loaded::Simplicial(x) => x,
        Loaded::Cells(c) => {
            let fv = c.f_vector();
            println!("f-vector: ({}, {}, {})", fv.f0, fv.f1, fv.f2);
            println!("chi: {}", fv.euler_characteristic());
            let h = homology_integral(&c);
            println!("betti F2: {:?}", h.betti_f2);
            println!("betti Q: {:?}", h.betti_q);
            println!("torsion: {{{}}}", h.torsion_string());
            return Ok(Outcome::Done);
        }
    };
    let fv = x.f_vector();
    println!("f-vector: ({}, {}, {})", fv.f0, fv.f1, fv.f2);
    println!("chi: {}", fv.euler_characteristic());
    println!("L: {}", fv.l_functional());
    println!("components: {}", x.component_count());
    let d = density_flow(&x, &RootSet::none())?;
    println!("e01: {} (witness size {})", d.value, d.witness.len());
    if x.vertex_count() >= 3 {
        println!("e01 rooted at 1,2,3: {}", density_flow(&x, &RootSet::first(3))?.value);
    }
    let h = homology_integral(&x);
    println!("betti F2: {:?}", h.betti_f2);
    println!("betti Q: {:?}", h.betti_q);
    println!("torsion: {{{}}}", h.torsion_string());
    match wedge_signature(&x) {
        Ok(WedgeOutcome::Consistent(s)) => println!("signature: {s}"),
        Ok(WedgeOutcome::Inconsistent(r)) => print!("signature: {}\n{r}", r.signature),
        Err(e @ (Error::NotConnected { .. } | Error::DensityAtMostOneThird { .. })) => {
            let s = classify(&x).signature();
            println!("signature: {s} (hypothesis not met: {e})");
        }
        Err(e) => return Err(e.into()),
    }
    println!("normal: {}", x.is_normal());
    println!("2-normal: {}", x.is_two_normal());
    let spectral = garland_scan(&x, GARLAND_THRESHOLD);
    match spectral.min_gap {
        Some(g) => println!("min link gap: {g:.12}"),
        None => println!("min link gap: none"),
    }
    println!("all links connected: {}", spectral.all_links_connected);
    println!("links passing: {}/{}", spectral.links_passing, spectral.gaps.len());
    println!("garland: {}", if spectral.pass { "pass" } else { "fail" });
    if let (Some(eps), Some(m)) = (&args.eps, args.m) {
        let eps = parse_rational(eps)?;
        let sparse = is_sparse(&x, eps, m, args.r)?;
        match &sparse.witness {
            Some(w) => println!(
                "sparse: false (ratio {}/{} on {:?})",
                w.ratio.numer(),
                w.ratio.denom(),
                w.vertices
            ),
            None => println!("sparse: true"),
        }
        match is_full(&x, eps, m, args.r) {
            Ok(full) => println!("full: {full}"),
            Err(e) => println!("full: not computed ({e})"),
        }
    }
    Ok(Outcome::Done)
}

fn certify(file: &Path) -> anyhow::Result<Outcome> {
    let x = load_simplicial(file)?;
    match certify_pi1_nontrivial(&x)? {
        Certification::Certified(cert) => {
            print!("{}", cert.to_text());
            Ok(Outcome::Done)
        }
        Certification::Refused(reason) => {
            println!("refused: {reason}");
            Ok(Outcome::Refused)
        }
    }
}

fn sweep(args: SweepArgs) -> anyhow::Result<Outcome> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            toml::from_str::<ExperimentConfig>(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => ExperimentConfig {
            n: args.n.context("--n is required without --config")?,
            alphas: Vec::new(),
            ps: Vec::new(),
            trials: 1,
            seed: 0,
            model: Model::Knp,
            toggles: Default::default(),
            out: None,
        },
    };
    if let Some(n) = args.n {
        config.n = n;
    }
    if !args.alphas.is_empty() {
        config.alphas = args.alphas.iter().map(|a| parse_rational(a)).collect::<Result<_, _>>()?;
    }
    if !args.p.is_empty() {
        config.ps = args.p.clone();
    }
    if let Some(t) = args.trials {
        config.trials = t;
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(m) = &args.model {
        config.model = m.parse()?;
    }
    for t in &args.toggles {
        match t.as_str() {
            "homology" => config.toggles.homology = true,
            "density" => config.toggles.density = true,
            "certificate" => config.toggles.certificate = true,
            "spectral" => config.toggles.spectral = true,
            "sparsity" => {
                config.toggles.sparsity.get_or_insert(SparsityParams {
                    eps: Rational::new(7, 20),
                    m: 8,
                    r: 0,
                });
            }
            other => bail!("unknown toggle `{other}`"),
        }
    }
    if args.eps.is_some() || args.m.is_some() || args.r.is_some() {
        let s = config.toggles.sparsity.get_or_insert(SparsityParams {
            eps: Rational::new(7, 20),
            m: 8,
            r: 0,
        });
        if let Some(eps) = &args.eps {
            s.eps = parse_rational(eps)?;
        }
        if let Some(m) = args.m {
            s.m = m;
        }
        if let Some(r) = args.r {
            s.r = r;
        }
    }
    if args.out.is_some() {
        config.out = args.out.clone();
    }

    let rows = run_sweep(&config)?;
    match &config.out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(&rows, io::BufWriter::new(file))?;
            println!("{}", SummaryRow::HEADER);
            for s in summarize(&rows)? {
                println!("{}", s.to_csv_line());
            }
        }
        None => write_csv(&rows, io::stdout().lock())?,
    }
    Ok(Outcome::Done)
}

fn oracle(file: &Path, r: u32) -> anyhow::Result<Outcome> {
    let x = load_simplicial(file)?;
    let roots = RootSet::first(r);
    let flow = density_flow(&x, &roots)?;
    let brute = density_brute(&x, &roots)?;
    println!("flow: {} (witness {:?})", flow.value, flow.witness);
    println!("brute: {} (witness {:?})", brute.value, brute.witness);
    if flow.value != brute.value {
        bail!("density mismatch: flow {} vs brute {}", flow.value, brute.value);
    }
    println!("match");
    Ok(Outcome::Done)
}
