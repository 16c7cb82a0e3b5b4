use clap::{Args, Parser, Subcommand};
use jg_cli::{
    cmd_adjacent, cmd_arith, cmd_farey, cmd_pm_check, cmd_render, cmd_scan, cmd_seq, parse_ext,
    parse_rat, CmdOutput, GroupFlags,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "jg",
    version,
    about = "Exact computations with Weierstrass and jigsaw groups"
)]
struct Cli {
    /// Emit line-delimited JSON records instead of human-readable text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Group {
    /// Diamond jigsaw S(m, n)
    #[arg(long, num_args = 2, value_names = ["M", "N"])]
    diamond: Option<Vec<u64>>,
    /// Star jigsaw S(1^3, n)
    #[arg(long, value_name = "N")]
    star: Option<u64>,
    /// Integral Weierstrass group with parameters (1, 1/n, n)
    #[arg(long, value_name = "N")]
    weierstrass: Option<u64>,
    /// Weierstrass parameters k1 k2 k3 (rationals with product 1)
    #[arg(long, num_args = 3, value_names = ["K1", "K2", "K3"])]
    params: Option<Vec<String>>,
    /// Jigsaw blueprint file (see README for the format)
    #[arg(long, value_name = "FILE")]
    blueprint: Option<PathBuf>,
}

impl Group {
    fn flags(&self) -> anyhow::Result<GroupFlags> {
        let params = match &self.params {
            None => None,
            Some(v) => Some((parse_rat(&v[0])?, parse_rat(&v[1])?, parse_rat(&v[2])?)),
        };
        Ok(GroupFlags {
            diamond: self.diamond.as_ref().map(|v| (v[0], v[1])),
            star: self.star,
            weierstrass_n: self.weierstrass,
            params,
            blueprint: self
                .blueprint
                .as_ref()
                .map(|p| p.display().to_string()),
        })
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the level-n generalized Farey list F_n
    Farey {
        k1: String,
        k2: String,
        k3: String,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Print the neighbors of an ideal triangle of the tessellation
    Adjacent {
        k1: String,
        k2: String,
        k3: String,
        /// Triangle vertices a b c (rationals or inf), in orientation order
        #[arg(long, num_args = 3, value_names = ["A", "B", "C"], allow_hyphen_values = true)]
        triangle: Vec<String>,
        /// Only the neighbor across this side (1, 2 or 3)
        #[arg(long)]
        side: Option<u8>,
    },
    /// Arithmeticity verdict via the integral trace test
    Arith {
        #[command(flatten)]
        group: Group,
        /// Also print the subset-word trace table
        #[arg(long)]
        emit_table: bool,
    },
    /// Scan diamonds S(m, n) with m <= n <= bound for integral l = (m+n+4)^2/mn
    Scan {
        #[arg(long)]
        bound: u64,
        /// Worker threads (default: all cores)
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Certify pseudomodularity by killer-interval coverage
    PmCheck {
        #[command(flatten)]
        group: Group,
        /// Word-search budget for the fallback cover search
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
        /// Write the full certificate to this file
        #[arg(long, value_name = "FILE")]
        cert: Option<PathBuf>,
    },
    /// Run a cutting-sequence / continued-fraction algorithm on a boundary point
    Seq {
        #[command(flatten)]
        group: Group,
        /// Boundary point, e.g. "22/7", "sqrt(7)", "(-1+sqrt(5))/2"
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// naive | translation | cf | pseudo-euclid
        algorithm: String,
        /// Step budget before giving up on period detection
        #[arg(long)]
        max: Option<usize>,
    },
    /// Render the tessellation as an SVG picture
    Render {
        #[command(flatten)]
        group: Group,
        #[arg(long, default_value_t = 0)]
        depth: u32,
        /// Rational x-range lo hi
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        window: Vec<String>,
        #[arg(short, long, value_name = "FILE")]
        out: PathBuf,
    },
}

fn run(cli: &Cli) -> anyhow::Result<CmdOutput> {
    match &cli.cmd {
        Cmd::Farey { k1, k2, k3, level } => {
            cmd_farey(&parse_rat(k1)?, &parse_rat(k2)?, &parse_rat(k3)?, *level)
        }
        Cmd::Adjacent {
            k1,
            k2,
            k3,
            triangle,
            side,
        } => {
            if triangle.len() != 3 {
                anyhow::bail!("--triangle needs three vertices");
            }
            let a = parse_ext(&triangle[0])?;
            let b = parse_ext(&triangle[1])?;
            let c = parse_ext(&triangle[2])?;
            cmd_adjacent(
                (&parse_rat(k1)?, &parse_rat(k2)?, &parse_rat(k3)?),
                (&a, &b, &c),
                *side,
            )
        }
        Cmd::Arith { group, emit_table } => cmd_arith(&group.flags()?, *emit_table),
        Cmd::Scan { bound, workers } => cmd_scan(*bound, *workers),
        Cmd::PmCheck {
            group,
            budget,
            cert,
        } => cmd_pm_check(&group.flags()?, *budget, cert.as_deref()),
        Cmd::Seq {
            group,
            alpha,
            algorithm,
            max,
        } => cmd_seq(&group.flags()?, alpha, algorithm, *max),
        Cmd::Render {
            group,
            depth,
            window,
            out,
        } => {
            if window.len() != 2 {
                anyhow::bail!("--window needs lo and hi");
            }
            let lo = parse_rat(&window[0])?;
            let hi = parse_rat(&window[1])?;
            cmd_render(&group.flags()?, *depth, (&lo, &hi), out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version are not usage errors
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                for r in &out.records {
                    println!("{r}");
                }
            } else {
                for l in &out.lines {
                    println!("{l}");
                }
            }
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
