use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use lpdecode::channel::RNG_ALGORITHM;
use lpdecode::decode::{fda, DecodeResult, Decoder};
use lpdecode::gf2::{random_regular_ldpc, save_alist, LinearCode};
use lpdecode::lp::solve;
use lpdecode::relax::{matrix_adaptation_cut_search, row_fs_cuts, rpc_cycle_cut_search, FormulationKind, FsInequality};
use lpdecode::sim::{simulate_into, ChannelKind, CodeSource, CsvLog, PointChannel, SimConfig};
use lpdecode::trellis::{lagrangian_turbo_decode, tclpd_decode, Fsm, TurboCode};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "lpdecode", version, about = "LP-based decoding of binary linear codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decode one frame and print the result as key=value pairs.
    Decode {
        #[command(flatten)]
        code: CodeArg,
        #[command(flatten)]
        input: FrameInput,
        /// Decoder name, e.g. blpd, alpd, cp, bb, ocdd:8,2.
        #[arg(long, default_value = "blpd")]
        decoder: String,
    },
    /// Run a simulation campaign and append records to a CSV file.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fractional distance of a code.
    Fdist {
        #[command(flatten)]
        code: CodeArg,
        /// Relaxation to use.
        #[arg(long, default_value = "blpd2")]
        formulation: String,
    },
    /// Minimum distance by enumerating codewords.
    Mindist {
        #[command(flatten)]
        code: CodeArg,
    },
    /// Generate a random regular LDPC code and write it as alist.
    Gencode {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dv: usize,
        #[arg(long)]
        dc: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the LP relaxation and list the violated cuts each search finds.
    Cuts {
        #[command(flatten)]
        code: CodeArg,
        #[command(flatten)]
        input: FrameInput,
    },
    /// Decode one frame of a two-encoder turbo-like code with the flow LP.
    Turbo {
        /// FSM file, or `accumulator` / `rsc75`.
        #[arg(long)]
        fsm: String,
        /// Interleaver as a comma-separated permutation of 0..k.
        #[arg(long, conflicts_with = "k")]
        interleaver: Option<String>,
        /// Block length with a random interleaver drawn from the seed.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        input: FrameInput,
        /// Also run this many Lagrangian iterations.
        #[arg(long)]
        lagrangian: Option<usize>,
    },
}

#[derive(clap::Args)]
struct CodeArg {
    /// Alist file or generator: regular:n,dv,dc,seed | spc:d1,d2 | hamming:r | array:p,rows,cols.
    #[arg(long)]
    code: String,
}

impl CodeArg {
    fn load(&self) -> Result<LinearCode> {
        let src: CodeSource = self.code.parse().map_err(anyhow::Error::msg)?;
        src.load(None).with_context(|| format!("loading code {}", self.code))
    }
}

#[derive(clap::Args)]
struct FrameInput {
    /// Comma-separated LLRs (positive favors 0).
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["llr_file", "channel"])]
    llr: Option<String>,
    /// File of whitespace- or comma-separated LLRs.
    #[arg(long, conflicts_with = "channel")]
    llr_file: Option<PathBuf>,
    /// Send the all-zero word over bsc:<p> or biawgn:<Eb/N0 dB>.
    #[arg(long)]
    channel: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl FrameInput {
    fn llr(&self, n: usize, rate: f64) -> Result<Vec<f64>> {
        let parse = |text: &str| -> Result<Vec<f64>> {
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<f64>().with_context(|| format!("bad LLR {t:?}")))
                .collect()
        };
        let llr = if let Some(l) = &self.llr {
            parse(l)?
        } else if let Some(p) = &self.llr_file {
            parse(&std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?)?
        } else if let Some(ch) = &self.channel {
            let (kind, point) = ch.split_once(':').context("channel must look like bsc:0.05 or biawgn:3")?;
            let point: f64 = point.parse().with_context(|| format!("bad channel point {point:?}"))?;
            let kind: ChannelKind = kind.parse().map_err(anyhow::Error::msg)?;
            let channel = PointChannel::new(kind, point, rate)?;
            channel.sample_llr(n, &mut ChaCha8Rng::seed_from_u64(self.seed))
        } else {
            bail!("one of --llr, --llr-file or --channel is required");
        };
        if llr.len() != n {
            bail!("got {} LLRs for a code of length {n}", llr.len());
        }
        Ok(llr)
    }
}

fn bits(point: &[f64]) -> String {
    point
        .iter()
        .map(|&v| match v {
            v if v.abs() < 1e-6 => "0".to_string(),
            v if (v - 1.0).abs() < 1e-6 => "1".to_string(),
            v => format!("({v:.4})"),
        })
        .collect()
}

fn result_line(r: &DecodeResult) -> String {
    let mut s = format!(
        "status={} value={:.9} lp_solves={} cuts={} iterations={} pivots={} nodes={} time_ms={:.3} word={}",
        r.status,
        r.value,
        r.stats.lp_solves,
        r.stats.cuts_added,
        r.stats.iterations,
        r.stats.simplex_pivots,
        r.stats.branch_nodes,
        r.stats.wall_time.as_secs_f64() * 1e3,
        bits(&r.point)
    );
    if let Some(e) = &r.error {
        let _ = write!(s, " error={e:?}");
    }
    s
}

fn cut_line(searcher: &str, cut: &FsInequality, x: &[f64]) -> String {
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    format!(
        "searcher={searcher} support={} odd={} violation={:.6}",
        join(cut.support()),
        join(cut.odd_subset()),
        cut.violation(x)
    )
}

fn load_fsm(name: &str) -> Result<Fsm> {
    Ok(match name {
        "accumulator" => Fsm::accumulator(),
        "rsc75" => Fsm::rsc_7_5(),
        path => std::fs::read_to_string(Path::new(path))
            .with_context(|| format!("reading {path}"))?
            .parse()?,
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Decode { code, input, decoder } => {
            let code = code.load()?;
            let decoder: Decoder = decoder.parse()?;
            let llr = input.llr(code.n(), code.rate())?;
            let r = decoder.decode(&code, &llr, input.seed)?;
            println!("decoder={decoder} {}", result_line(&r));
        }
        Command::Simulate { config, out } => {
            let cfg = SimConfig::from_file(&config).with_context(|| format!("reading {}", config.display()))?;
            let code = cfg.code.load(config.parent())?;
            println!(
                "# code n={} k={} channel={} rng={RNG_ALGORITHM} seed={}",
                code.n(),
                code.k(),
                cfg.channel,
                cfg.seed
            );
            let mut log = CsvLog::open(&out)?;
            let new = simulate_into(&cfg, &code, &mut log, |r| {
                let (lo, hi) = r.fer_confidence();
                println!(
                    "{} point={} frames={} errors={} fer={:.3e} ci95=[{:.3e},{:.3e}]",
                    r.decoder,
                    r.point,
                    r.frames,
                    r.frame_errors,
                    r.fer(),
                    lo,
                    hi
                );
            })?;
            println!("# {} new records written to {}", new.len(), out.display());
        }
        Command::Fdist { code, formulation } => {
            let code = code.load()?;
            let kind: FormulationKind = formulation.parse()?;
            println!("{}", fda(&code, kind)?);
        }
        Command::Mindist { code } => {
            println!("{}", code.load()?.min_distance()?);
        }
        Command::Gencode { n, dv, dc, seed, out } => {
            let text = save_alist(&random_regular_ldpc(n, dv, dc, seed)?);
            match out {
                Some(p) => std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{text}"),
            }
        }
        Command::Cuts { code, input } => {
            let code = code.load()?;
            let llr = input.llr(code.n(), code.rate())?;
            let form = FormulationKind::Blpd2.build(&code)?.with_llr(&llr)?;
            let sol = solve(&form.lp)?;
            let x = form.project(&sol.x);
            println!("# value={:.9} point={}", sol.value, bits(&x));
            let h = code.parity_check();
            for cut in row_fs_cuts(h, &x) {
                println!("{}", cut_line("rows", &cut, &x));
            }
            for cut in rpc_cycle_cut_search(h, &x, input.seed, None) {
                println!("{}", cut_line("cycle", &cut, &x));
            }
            for cut in matrix_adaptation_cut_search(h, &x) {
                println!("{}", cut_line("adaptation", &cut, &x));
            }
        }
        Command::Turbo {
            fsm,
            interleaver,
            k,
            input,
            lagrangian,
        } => {
            let fsm = load_fsm(&fsm)?;
            let pi: Vec<usize> = match (interleaver, k) {
                (Some(text), _) => text
                    .split(',')
                    .map(|t| t.trim().parse().with_context(|| format!("bad interleaver entry {t:?}")))
                    .collect::<Result<_>>()?,
                (None, Some(k)) => {
                    let mut p: Vec<usize> = (0..k).collect();
                    p.shuffle(&mut ChaCha8Rng::seed_from_u64(input.seed ^ 0x5eed));
                    p
                }
                (None, None) => bail!("one of --interleaver or --k is required"),
            };
            let code = TurboCode::new(fsm, pi)?;
            let rate = code.k() as f64 / code.n() as f64;
            let llr = input.llr(code.n(), rate)?;
            let r = tclpd_decode(&code, &llr)?;
            println!("decoder=tclpd {}", result_line(&r));
            if let Some(iters) = lagrangian {
                let l = lagrangian_turbo_decode(&code, &llr, iters)?;
                let word = l.codeword.as_ref().map_or("none".to_string(), |w| {
                    w.iter().map(|b| char::from(b'0' + b)).collect()
                });
                println!(
                    "decoder=lagrangian lower_bound={:.9} iterations={} codeword={word}",
                    l.lower_bound, l.iterations
                );
            }
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
