use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use kakeya_core::bounds::{
    best_m, c_alpha, c_alpha_monte_carlo, format_rational, lemma_bound, preset_half,
    preset_quarter, AsymptoticReport, BoundReport,
};
use kakeya_core::io::{PointSetFile, PolyFile, VerifyFile};
use kakeya_core::kakeya::{construct, upper_bound_size, verify, Variant, Verdict};
use kakeya_core::polymethod::find_vanishing_poly;
use kakeya_core::search::{min_kakeya, sandwich, MAX_SEARCH_Q};
use kakeya_core::{Error, Field, Space};

#[derive(Parser)]
#[command(name = "kakeya", version, about = "Kakeya sets over finite fields")]
struct Cli {
    /// Worker threads for parallel sections.
    #[arg(long, global = true, env = "KAKEYA_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a Kakeya set and write it as JSON.
    Construct {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "odd")]
        variant: Variant,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the Kakeya property of a point-set file. Exit 0 if Kakeya, 2 if not.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the verification result, with one witness per direction.
        #[arg(long)]
        witnesses: Option<PathBuf>,
    },
    /// Lower bound N_q(n,m) / C(m+n-1,n) on the size of a Kakeya set.
    Bound(BoundArgs),
    /// Find a polynomial vanishing to order m on a point set. Exit 2 when
    /// C(m+n-1,n)·|S| >= N_q(n,m).
    Vanish {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        points: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact minimum Kakeya set in the plane.
    Minsearch {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Write the minimum set with its witness lines.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Asymptotic constant c_alpha from the volume of {x in [0,1]^n : sum x <= alpha·n}.
    Asym {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 64)]
        n_probe: usize,
        /// Also estimate the volumes by Monte Carlo with this many samples per rung.
        #[arg(long)]
        mc_samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Table of preset bounds, the n=3 check and construction sizes.
    Report {
        /// Largest q in the preset table.
        #[arg(long, default_value_t = 31)]
        q_max: u32,
        /// Largest n in the preset table.
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    n: usize,
    #[arg(
        long,
        conflicts_with = "optimize",
        required_unless_present = "optimize"
    )]
    m: Option<u32>,
    /// Scan m = 1..=m-cap and report the best (ties keep the smaller m).
    #[arg(long)]
    optimize: bool,
    #[arg(long, requires = "optimize")]
    m_cap: Option<u32>,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

/// Exit status for a negative mathematical answer.
const NEGATIVE: u8 = 2;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn cmd_construct(q: u64, n: usize, variant: Variant, out: Option<PathBuf>) -> Result<u8> {
    let field = Field::new(q)?;
    let set = construct(&field, n, variant)?;
    write_json(out.as_deref(), &PointSetFile::from_set(&set))?;
    if let Some(p) = out {
        println!(
            "{variant} q={q} n={n}: {} points written to {}",
            set.len(),
            p.display()
        );
    }
    Ok(0)
}

fn cmd_verify(input: &Path, witnesses: Option<PathBuf>) -> Result<u8> {
    let file: PointSetFile = read_json(input)?;
    let set = file.to_set()?;
    let verdict = verify(&set);
    if let Some(p) = witnesses {
        write_json(Some(&p), &VerifyFile::from_verdict(&set, &verdict))?;
    }
    match verdict {
        Verdict::Kakeya { witnesses } => {
            println!(
                "kakeya: q={} n={} |K|={} all {} directions covered",
                set.field().q(),
                set.dim(),
                set.len(),
                witnesses.len()
            );
            Ok(0)
        }
        Verdict::NotKakeya { direction } => {
            println!(
                "not kakeya: q={} n={} |K|={} no line in direction {:?}",
                set.field().q(),
                set.dim(),
                set.len(),
                direction.0
            );
            Ok(NEGATIVE)
        }
    }
}

const CSV_HEADER: &str = "q,n,m,N,denom,bound_ceiling";

fn csv_row(r: &BoundReport) -> String {
    format!("{},{},{},{},{},{}", r.q, r.n, r.m, r.nq, r.denom, r.ceiling)
}

fn text_row(r: &BoundReport) -> String {
    format!(
        "q={} n={} m={}: N={} denom={} bound={} ceiling={}",
        r.q,
        r.n,
        r.m,
        r.nq,
        r.denom,
        format_rational(&r.bound),
        r.ceiling
    )
}

#[derive(Serialize)]
struct ScanJson<'a> {
    best: &'a BoundReport,
    scan: &'a [BoundReport],
}

fn cmd_bound(args: BoundArgs) -> Result<u8> {
    let (q, n) = (args.q, args.n);
    if q < 2 {
        bail!("q must be at least 2");
    }
    let rows: Vec<BoundReport>;
    let best: BoundReport;
    if args.optimize {
        let cap = args.m_cap.unwrap_or(2 * n as u32);
        rows = (1..=cap)
            .map(|m| lemma_bound(n, q, m))
            .collect::<std::result::Result<_, _>>()?;
        best = best_m(n, q, cap)?;
    } else {
        let m = args.m.expect("clap enforces --m or --optimize");
        best = lemma_bound(n, q, m)?;
        rows = vec![best.clone()];
    }
    if args.csv {
        println!("{CSV_HEADER}");
        for r in &rows {
            println!("{}", csv_row(r));
        }
    } else if args.json {
        let mut text = if args.optimize {
            serde_json::to_string_pretty(&ScanJson {
                best: &best,
                scan: &rows,
            })?
        } else {
            serde_json::to_string_pretty(&best)?
        };
        text.push('\n');
        print!("{text}");
    } else {
        for r in &rows {
            println!("{}", text_row(r));
        }
        if args.optimize {
            println!(
                "best m={} (ties keep the smaller m): |K| >= {}",
                best.m, best.ceiling
            );
        }
    }
    Ok(0)
}

fn cmd_vanish(q: u64, n: usize, m: u32, points: &Path, out: Option<PathBuf>) -> Result<u8> {
    let file: PointSetFile = read_json(points)?;
    if file.q as u64 != q || file.n != n {
        bail!(
            "{} holds points of F_{}^{}, expected F_{q}^{n}",
            points.display(),
            file.q,
            file.n
        );
    }
    let set = file.to_set()?;
    let space = Space::new(Field::new(q)?, n)?;
    match find_vanishing_poly(&space, set.points(), m) {
        Ok(g) => {
            write_json(out.as_deref(), &PolyFile::from_poly(&g, Some(m)))?;
            if let Some(p) = out {
                println!(
                    "{} terms, total degree {} < {}, written to {}",
                    g.len(),
                    g.total_degree().unwrap_or(0),
                    m as u64 * q,
                    p.display()
                );
            }
            Ok(0)
        }
        Err(Error::BoundNotSatisfied {
            constraints,
            unknowns,
        }) => {
            println!(
                "precondition unmet: {constraints} constraints >= {unknowns} unknowns, no polynomial guaranteed"
            );
            Ok(NEGATIVE)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_minsearch(q: u64, n: usize, out: Option<PathBuf>) -> Result<u8> {
    let field = Field::new(q)?;
    let result = min_kakeya(&field, n)?;
    let s = sandwich(&field, n, 2 * n as u32)?;
    println!("q={q} n={n}: minimum |K| = {}", result.size);
    println!(
        "lower bound {} (m={}) <= {} <= {} ({})",
        s.lower, s.lower_m, result.size, s.upper, s.upper_variant
    );
    println!("search nodes: {}", result.nodes);
    if let Some(p) = out {
        write_json(Some(&p), &PointSetFile::from_set(&result.witness))?;
        println!("witness written to {}", p.display());
    }
    Ok(0)
}

fn print_asym(r: &AsymptoticReport) {
    println!(
        "alpha={} n_probe={} method={:?}",
        r.alpha, r.n_probe, r.method
    );
    for rung in &r.ladder {
        println!(
            "  n={:>4}: tau_n={:.6} c_n={:.6} (1/{:.4})",
            rung.n,
            rung.tau,
            rung.c_alpha,
            1.0 / rung.c_alpha
        );
    }
    println!(
        "  probe: tau={:.6} c_alpha={:.6} (1/{:.4})",
        r.probe_tau,
        r.probe_c_alpha,
        1.0 / r.probe_c_alpha
    );
    println!(
        "  fit:   tau={:.6} c_alpha={:.6} (1/{:.4}) log-coefficient={:.4}",
        r.tau,
        r.c_alpha,
        1.0 / r.c_alpha,
        r.log_correction
    );
    println!(
        "  entropy factor={:.6} monotone={}",
        r.entropy_factor, r.monotone
    );
}

fn cmd_asym(
    alpha: f64,
    n_probe: usize,
    mc_samples: Option<u64>,
    seed: u64,
    json: bool,
) -> Result<u8> {
    let exact = c_alpha(alpha, n_probe)?;
    let mc = mc_samples
        .map(|s| c_alpha_monte_carlo(alpha, n_probe, s, seed))
        .transpose()?;
    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            exact: &'a AsymptoticReport,
            #[serde(skip_serializing_if = "Option::is_none")]
            monte_carlo: Option<&'a AsymptoticReport>,
        }
        write_json(
            None,
            &Out {
                exact: &exact,
                monte_carlo: mc.as_ref(),
            },
        )?;
    } else {
        print_asym(&exact);
        if let Some(r) = &mc {
            print_asym(r);
        }
    }
    Ok(0)
}

fn prime_powers(lo: u32, hi: u32) -> Vec<u32> {
    (lo..=hi)
        .filter(|&q| Field::new(q as u64).is_ok())
        .collect()
}

fn cmd_report(q_max: u32, n_max: usize) -> Result<u8> {
    if q_max < 2 || n_max < 1 {
        bail!("need q-max >= 2 and n-max >= 1");
    }
    let qs = prime_powers(2, q_max);

    println!("# Preset lower bounds");
    println!("c1=1/4 preset: m=n, |K| >= (q/4)^n");
    println!("c1=1/2.6 preset: m=ceil(n/2), |K| >= 1/2 (q/2.6)^n");
    println!(
        "{:>3} {:>2} | {:>14} {:>14} {:>4} | {:>14} {:>14} {:>4}",
        "q", "n", "m=n bound", "(q/4)^n", "ok", "m=n/2 bound", "(q/2.6)^n/2", "ok"
    );
    let mut all = true;
    for &q in &qs {
        for n in 1..=n_max {
            let a = preset_quarter(n, q)?;
            let b = preset_half(n, q)?;
            all &= a.holds && b.holds;
            println!(
                "{:>3} {:>2} | {:>14.3} {:>14.3} {:>4} | {:>14.3} {:>14.3} {:>4}",
                q,
                n,
                a.report.bound_f64(),
                kakeya_core::bounds::rational_to_f64(&a.target),
                if a.holds { "yes" } else { "NO" },
                b.report.bound_f64(),
                kakeya_core::bounds::rational_to_f64(&b.target),
                if b.holds { "yes" } else { "NO" },
            );
        }
    }
    println!("all presets hold: {}", if all { "yes" } else { "no" });

    println!();
    println!("# n=3: 5/24·q³ (m=2, odd q)");
    println!("{:>3} | {:>12} {:>12} {:>4}", "q", "bound", "5q^3/24", "ok");
    for q in (3..=q_max.max(3)).step_by(2) {
        let r = lemma_bound(3, q, 2)?;
        let target = num_rational::BigRational::new((5 * (q as i64).pow(3)).into(), 24.into());
        println!(
            "{:>3} | {:>12} {:>12} {:>4}",
            q,
            format_rational(&r.bound),
            format_rational(&target),
            if r.bound >= target { "yes" } else { "NO" }
        );
    }

    println!();
    println!("# Construction sizes: |K| = q^n/2^(n-1) + C·q^(n-1)");
    println!(
        "{:>3} {:>2} {:>15} | {:>8} {:>12} {:>8} {:>12}",
        "q", "n", "variant", "|K|", "q^n/2^(n-1)", "C", "source"
    );
    for q in prime_powers(2, 9) {
        let field = Field::new(q as u64)?;
        for n in 2..=4 {
            for v in Variant::ALL.into_iter().filter(|v| v.supports(&field)) {
                let r = upper_bound_size(&field, n, v)?;
                println!(
                    "{:>3} {:>2} {:>15} | {:>8} {:>12} {:>8.4} {:>12}",
                    q,
                    n,
                    v.name(),
                    r.exact,
                    format_rational(&r.leading),
                    r.constant_f64(),
                    r.source
                );
            }
        }
    }

    println!();
    println!("# Planar minimum: lower bound <= min <= construction");
    println!(
        "{:>3} | {:>5} {:>3} {:>5} {:>5}",
        "q", "lower", "m", "min", "upper"
    );
    for q in prime_powers(2, MAX_SEARCH_Q) {
        let s = sandwich(&Field::new(q as u64)?, 2, 4)?;
        println!(
            "{:>3} | {:>5} {:>3} {:>5} {:>5}",
            q,
            s.lower,
            s.lower_m,
            s.exact.map_or("-".to_string(), |e| e.to_string()),
            s.upper
        );
    }

    println!();
    println!("# Asymptotic constant c_alpha");
    for (alpha, n_probe) in [(0.398, 64), (1.0, 256)] {
        let r = c_alpha(alpha, n_probe)?;
        println!(
            "alpha={alpha} n_probe={n_probe}: c_alpha={:.6} (1/{:.4}), probe 1/{:.4}",
            r.c_alpha,
            1.0 / r.c_alpha,
            1.0 / r.probe_c_alpha
        );
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(t) = cli.threads {
        if t == 0 {
            bail!("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match cli.command {
        Command::Construct { q, n, variant, out } => cmd_construct(q, n, variant, out),
        Command::Verify { input, witnesses } => cmd_verify(&input, witnesses),
        Command::Bound(args) => cmd_bound(args),
        Command::Vanish {
            q,
            n,
            m,
            points,
            out,
        } => cmd_vanish(q, n, m, &points, out),
        Command::Minsearch { q, n, out } => cmd_minsearch(q, n, out),
        Command::Asym {
            alpha,
            n_probe,
            mc_samples,
            seed,
            json,
        } => cmd_asym(alpha, n_probe, mc_samples, seed, json),
        Command::Report { q_max, n_max } => cmd_report(q_max, n_max),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn csv_row_matches_header() {
        let r = lemma_bound(3, 5, 2).unwrap();
        assert_eq!(csv_row(&r), "5,3,2,115,4,29");
        assert_eq!(
            CSV_HEADER.split(',').count(),
            csv_row(&r).split(',').count()
        );
    }

    #[test]
    fn variant_flag_parses_all_names() {
        for v in Variant::ALL {
            let cli = Cli::try_parse_from([
                "kakeya",
                "construct",
                "--q",
                "3",
                "--n",
                "2",
                "--variant",
                v.name(),
            ]);
            assert!(cli.is_ok(), "{v}");
        }
    }
}
