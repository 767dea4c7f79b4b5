use crate::commands::emit;
use crate::{CliError, RunConfig};
use clap::{Args, ValueEnum};
use hcol_core::graph::make_random_with_density;
use hcol_core::kernels::{combinatorial_kernel_with, combinatorial_vertex_bound, random_cover_instance};
use hcol_core::witness::witness_number_with;
use std::fmt::Write as _;

pub const RANDOM_Q_HEADER: &str = "n,trials,bound,within_bound,fraction,mean_q,max_q";
pub const KERNEL_GROWTH_HEADER: &str =
    "k,q,trials,n,mean_vertices,max_vertices,vertex_bound,max_ratio";

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    /// Witness numbers of G(n, p) against the bound 2·log2(n).
    RandomQ,
    /// Combinatorial kernel sizes against the closed-form vertex bound.
    KernelGrowth,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    experiment: Experiment,
    /// Graph sizes for `random-q`, as `a,b,c` or an inclusive range `a..b`.
    #[arg(long, default_value = "16,24,32")]
    n: String,
    /// Cover sizes for `kernel-growth`, same syntax as `--n`.
    #[arg(long, default_value = "2..8")]
    k: String,
    /// Samples per row.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Edge probability.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Subset size bound for `kernel-growth`.
    #[arg(long, default_value_t = 2)]
    q: usize,
    /// Vertices per instance in `kernel-growth`, as a multiple of `k`.
    #[arg(long, default_value_t = 3)]
    n_per_k: usize,
}

pub fn parse_range(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("cannot parse range `{text}`; use a,b,c or a..b"));
    if let Some((a, b)) = text.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        return Ok((a..=b).collect());
    }
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect()
}

/// SplitMix64 finalizer, used to derive independent per-sample seeds.
fn mix(seed: u64, a: u64, b: u64) -> u64 {
    let mut z = seed ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ b.wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn sweep(cfg: &RunConfig, args: &SweepArgs) -> Result<(), CliError> {
    if !(0.0..=1.0).contains(&args.p) {
        return Err(CliError::Usage("--p must lie in [0, 1]".into()));
    }
    let ceilings = cfg.ceilings();
    let mut out = String::new();
    match args.experiment {
        Experiment::RandomQ => {
            out.push_str(RANDOM_Q_HEADER);
            out.push('\n');
            if args.trials == 0 {
                return emit(cfg, &out);
            }
            for n in parse_range(&args.n)? {
                let bound = 2.0 * (n.max(1) as f64).log2();
                let mut qs = Vec::with_capacity(args.trials);
                for t in 0..args.trials {
                    let g = make_random_with_density(n, args.p, mix(cfg.seed, n as u64, t as u64));
                    qs.push(witness_number_with(&g, &ceilings)?.q);
                }
                let within = qs.iter().filter(|&&q| q as f64 <= bound).count();
                let mean = qs.iter().sum::<usize>() as f64 / qs.len() as f64;
                let _ = writeln!(
                    out,
                    "{n},{},{bound:.4},{within},{:.4},{mean:.4},{}",
                    args.trials,
                    within as f64 / args.trials as f64,
                    qs.iter().max().unwrap(),
                );
            }
        }
        Experiment::KernelGrowth => {
            out.push_str(KERNEL_GROWTH_HEADER);
            out.push('\n');
            if args.trials == 0 {
                return emit(cfg, &out);
            }
            if args.q == 0 {
                return Err(CliError::Usage("--q must be positive".into()));
            }
            for k in parse_range(&args.k)? {
                let n = (k * args.n_per_k).max(k + 1);
                let bound = combinatorial_vertex_bound(k, args.q);
                let mut sizes = Vec::with_capacity(args.trials);
                for t in 0..args.trials {
                    let inst = random_cover_instance(n, k, args.p, mix(cfg.seed, k as u64, t as u64));
                    sizes.push(combinatorial_kernel_with(&inst, args.q, &ceilings)?.stats.vertices);
                }
                let max = *sizes.iter().max().unwrap();
                let mean = sizes.iter().sum::<usize>() as f64 / sizes.len() as f64;
                let _ = writeln!(
                    out,
                    "{k},{},{},{n},{mean:.4},{max},{bound},{:.4}",
                    args.q,
                    args.trials,
                    max as f64 / bound as f64,
                );
            }
        }
    }
    emit(cfg, &out)
}
