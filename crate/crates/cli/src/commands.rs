use crate::format;
use crate::{AnalyzeArgs, GenArgs, GenKind, InnerKind, ModeArg, RunArgs, SweepArgs, Task, VerifyArgs};
use anyhow::{anyhow, bail, Context};
use serde_json::json;
use std::process::ExitCode;
use tourpow::certificate::{Certificate, CertificatePayload};
use tourpow::extremal::{self, ChainOutcome};
use tourpow::median::{self, MedianMode, RemainderAlign};
use tourpow::oracle::{self, OracleBudget};
use tourpow::pipeline::{self, PipelineConfig};
use tourpow::sequencing::{self, PathPowerParams};
use tourpow::{absorber, construct, Error, Rational, RunMode, Tournament, VertexSet};

/// Maps core errors onto the documented exit codes. Unknown (anyhow-only)
/// errors count as usage errors.
pub fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Infeasible(_)) => 3,
        Some(Error::NotFound(_)) => 4,
        Some(Error::Internal(_)) => 5,
        Some(_) => 2,
        None => 2,
    }
}

fn read_tournament(path: &str) -> anyhow::Result<Tournament> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    format::parse(&text)
}

fn write_output(path: Option<&str>, content: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, content).with_context(|| format!("writing {p}")),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_blocks(spec: &str) -> anyhow::Result<Vec<usize>> {
    // either "3x7" (three blocks of seven) or a comma list "3,4,5"
    if let Some((count, size)) = spec.split_once('x') {
        let count: usize = count.trim().parse().context("block count")?;
        let size: usize = size.trim().parse().context("block size")?;
        if count == 0 || size == 0 {
            bail!("blocks spec must be positive");
        }
        return Ok(vec![size; count]);
    }
    spec.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| anyhow!("bad block size: {e}")))
        .collect()
}

fn parse_rational(s: &str) -> anyhow::Result<Rational> {
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().context("rational numerator")?;
        let den: i64 = den.trim().parse().context("rational denominator")?;
        if den == 0 {
            bail!("zero denominator");
        }
        Ok(Rational::new(num, den))
    } else {
        let v: i64 = s.trim().parse().context("rational value")?;
        Ok(Rational::new(v, 1))
    }
}

fn rational_str(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn gen(args: GenArgs) -> anyhow::Result<ExitCode> {
    let need_n = || args.n.ok_or_else(|| anyhow!("--n is required for this generator"));
    let t = match args.kind {
        GenKind::Transitive => construct::transitive_tournament(need_n()?)?,
        GenKind::Random => construct::random_tournament(need_n()?, args.seed)?,
        GenKind::Reversal => {
            let p = args.p.ok_or_else(|| anyhow!("--p is required for --type reversal"))?;
            construct::random_reversal(need_n()?, p, args.seed)?
        }
        GenKind::Paley => {
            let q = args.q.ok_or_else(|| anyhow!("--q is required for --type paley"))?;
            construct::paley(q)?
        }
        GenKind::NoTt => {
            let k = args.k.ok_or_else(|| anyhow!("--k is required for --type no-tt"))?;
            construct::no_tt_block(k, args.seed)?
        }
        GenKind::Blowup => {
            let spec = args
                .blocks
                .as_deref()
                .ok_or_else(|| anyhow!("--blocks is required for --type blowup"))?;
            let sizes = parse_blocks(spec)?;
            let inner = match args.inner {
                InnerKind::Transitive => construct::InnerGenerator::Transitive,
                InnerKind::Random => construct::InnerGenerator::Random,
                InnerKind::Paley => construct::InnerGenerator::Paley,
            };
            construct::blowup(&sizes, inner, args.seed)?.0
        }
    };
    write_output(args.out.as_deref(), &format::render(&t))?;
    Ok(ExitCode::SUCCESS)
}

pub fn analyze(args: AnalyzeArgs) -> anyhow::Result<ExitCode> {
    let t = read_tournament(&args.file)?;
    let n = t.n();
    let budget = OracleBudget::default().with_ordering_limit(args.budget);
    let local = median::median_order(&t, MedianMode::Local, args.seed)?;
    let exact = oracle::exact_min_backward(&t, &budget).ok();
    let max_trans = oracle::max_transitive(&t, &budget).ok();
    let greedy = extremal::greedy_transitive(&t, &t.vertices());
    let report = json!({
        "n": n,
        "min_backward_exact": exact.as_ref().map(|(c, _)| *c),
        "eps_exact": exact.as_ref().map(|(c, _)| rational_str(Rational::new(*c as i64, (n * n) as i64))),
        "local_backward": local.backward_count(),
        // any ordering's backward count upper-bounds eps(T)
        "eps_upper_bound": rational_str(Rational::new(local.backward_count() as i64, (n * n) as i64)),
        "local_forward": local.forward_count,
        "max_transitive_exact": max_trans.as_ref().map(|w| w.len()),
        "greedy_transitive": greedy.len(),
        "exact_available": exact.is_some(),
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(ExitCode::SUCCESS)
}

fn resolve_eps(spec: &str, t: &Tournament, seed: u64, budget: &OracleBudget) -> anyhow::Result<(Rational, bool)> {
    if spec != "auto" {
        return Ok((parse_rational(spec)?, true));
    }
    let n = t.n();
    if n <= budget.max_n_exact_ordering {
        let (count, _) = oracle::exact_min_backward(t, budget)?;
        if count == 0 {
            bail!(Error::not_found("tournament is transitive: eps(T) = 0"));
        }
        Ok((Rational::new(count as i64, (n * n) as i64), true))
    } else {
        let local = median::median_order(t, MedianMode::Local, seed)?;
        let count = local.backward_count();
        if count == 0 {
            bail!(Error::not_found("tournament is transitive: eps(T) = 0"));
        }
        // heuristic upper bound on eps(T); capped to the open interval
        let eps = Rational::new(count as i64, (n * n) as i64).min(Rational::new(245, 1000));
        Ok((eps, false))
    }
}

pub fn run(args: RunArgs) -> anyhow::Result<ExitCode> {
    let t = read_tournament(&args.file)?;
    let n = t.n();
    let mode = match args.mode {
        ModeArg::Strict => RunMode::Strict,
        ModeArg::Opportunistic => RunMode::Opportunistic,
    };
    let budget = OracleBudget::default().with_ordering_limit(args.budget);
    let cfg = PipelineConfig {
        mode,
        block_size: args.m,
        stride: args.stride,
        retries: args.retries,
        seed: args.seed,
        budget: budget.clone(),
        ..Default::default()
    };
    let (cert, stats_json) = match args.task {
        Task::Partition => {
            let (parts, stats) = pipeline::partition_path_powers(&t, args.k, &cfg)?;
            let cert = Certificate::new(
                CertificatePayload::Partition { parts },
                args.k,
                format!("partition pipeline; stages: [{}]", stats.stage_log.join(" | ")),
            );
            let sj = json!({
                "parts": stats.part_count,
                "absorbers": stats.absorber_count,
                "singletons": stats.singleton_count,
                "scaled": stats.scaled,
                "stage_log": stats.stage_log,
            });
            (cert, sj)
        }
        Task::PathPower => {
            let target = args.target_len.unwrap_or(n);
            let params = PathPowerParams { block_size: args.m, mode, ..Default::default() };
            let found = sequencing::find_path_power(
                &t,
                &t.vertices(),
                args.k,
                target,
                args.seed,
                &params,
            )?;
            let sj = json!({
                "length": found.seq.len(),
                "target": target,
                "target_met": found.target_met,
            });
            let cert = Certificate::new(
                CertificatePayload::PathPower { seq: found.seq },
                args.k,
                format!("path-power search (target {target})"),
            );
            (cert, sj)
        }
        Task::CyclePower => {
            let (eps, eps_exact) = resolve_eps(&args.eps, &t, args.seed, &budget)?;
            let (cyc, stats) = pipeline::find_cycle_power(&t, args.k, eps, &cfg)?;
            let sj = json!({
                "length": stats.achieved_len,
                "target_length": stats.target_len,
                "eps": rational_str(eps),
                "eps_is_exact": eps_exact,
                "eps_tilde": stats.eps_tilde.map(rational_str),
                "route": stats.route,
                "stage_log": stats.stage_log,
            });
            let cert = Certificate::new(
                CertificatePayload::CyclePower { cycle: cyc },
                args.k,
                format!("cycle pipeline via {}", stats.route),
            );
            (cert, sj)
        }
        Task::Absorber => {
            let (h, log) = discover_absorber(&t, args.k, &cfg)?;
            let sj = json!({
                "r": h.r(),
                "r_prime": h.r_prime,
                "vertices": h.total_vertices(),
                "absorbing_capacity": h.absorbing_capacity(),
                "stage_log": log,
            });
            let cert = Certificate::new(
                CertificatePayload::Absorber {
                    s_blocks: h.s_blocks,
                    q: h.q,
                    r_prime: h.r_prime,
                },
                args.k,
                "absorber discovery over median-split backward witnesses",
            );
            (cert, sj)
        }
    };
    // re-verify in process before anything is written; a failure here is
    // a bug, not bad input
    let check = cert.check(&t)?;
    if !check.valid {
        bail!(Error::internal(format!("emitted certificate failed verification: {}", check.detail)));
    }
    let cert_json = serde_json::to_string_pretty(&cert)?;
    write_output(args.out.as_deref(), &cert_json)?;
    match args.stats.as_deref() {
        Some(p) => std::fs::write(p, serde_json::to_string_pretty(&stats_json)?)?,
        None => eprintln!("{stats_json}"),
    }
    Ok(ExitCode::SUCCESS)
}

/// Absorber discovery for `run absorber`: scan the median split for a
/// backward transitive-pair witness at stride distance, then build.
fn discover_absorber(
    t: &Tournament,
    k: usize,
    cfg: &PipelineConfig,
) -> anyhow::Result<(absorber::Absorber, Vec<String>)> {
    let n = t.n();
    let mut log = Vec::new();
    let m_eff = cfg.block_size.unwrap_or_else(|| (n / 16).clamp(8 * k, 256).max(1));
    let ord = median::median_order(t, MedianMode::Local, cfg.seed)?;
    let split = median::split_intervals(&ord, m_eff, RemainderAlign::First)?;
    let full: Vec<usize> =
        (0..split.block_count()).filter(|&i| split.block_len(i) == m_eff).collect();
    let sigma = cfg.stride.min(full.len().saturating_sub(1).max(1));
    if sigma < 11 {
        bail!(Error::not_found(format!(
            "needs at least 11 stride-spaced blocks for the internal interval, have {sigma}"
        )));
    }
    for w in 0..sigma {
        let idxs: Vec<usize> = full.iter().skip(w).step_by(sigma).copied().collect();
        if idxs.len() < 2 {
            continue;
        }
        let blocks: Vec<VertexSet> = idxs.iter().map(|&b| split.block_set(n, b)).collect();
        match extremal::transitive_chain(
            t,
            &blocks,
            8 * k,
            cfg.seed ^ (w as u64),
            cfg.retries,
            RunMode::Opportunistic,
        ) {
            Ok(ChainOutcome::Witness { index, b, b_prime }) => {
                log.push(format!("witness at blocks ({}, {})", idxs[index], idxs[index + 1]));
                let sub_split = split.slice(idxs[index], idxs[index + 1]);
                let params = absorber::AbsorberParams {
                    r_prime_cap: cfg.r_prime_cap,
                    retries: cfg.retries,
                    mode: cfg.mode,
                };
                let b_set = VertexSet::from_iter(n, b.iter().copied());
                let bp_set = VertexSet::from_iter(n, b_prime.iter().copied());
                match absorber::find_absorber(t, &sub_split, &b_set, &bp_set, k, cfg.seed, &params)
                {
                    Ok(h) => return Ok((h, log)),
                    Err(e) => log.push(format!("witness did not yield an absorber: {e}")),
                }
            }
            Ok(_) => {}
            Err(e) => log.push(format!("residue {w}: {e}")),
        }
    }
    bail!(Error::not_found(format!(
        "no absorber found; log: [{}]",
        log.join(" | ")
    )))
}

pub fn verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let t = read_tournament(&args.file)?;
    let text = std::fs::read_to_string(&args.certificate)
        .with_context(|| format!("reading {}", args.certificate))?;
    let cert: Certificate = serde_json::from_str(&text).context("parsing certificate JSON")?;
    let report = cert.check(&t)?;
    let out = json!({
        "kind": cert.payload.kind_name(),
        "k": cert.k,
        "valid": report.valid,
        "detail": report.detail,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    if report.valid {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::FAILURE)
    }
}

pub fn sweep(args: SweepArgs) -> anyhow::Result<ExitCode> {
    let budget = OracleBudget::default().with_ordering_limit(args.budget);
    let mut rows = Vec::new();
    let mut eps_sum = Rational::new(0, 1);
    let mut exact_count = 0usize;
    let mut backward_sum: u64 = 0;
    for seed in 0..args.seeds {
        let t = match args.kind {
            GenKind::Random => construct::random_tournament(args.n, seed)?,
            GenKind::Reversal => {
                let p = args.p.ok_or_else(|| anyhow!("--p is required for reversal sweeps"))?;
                construct::random_reversal(args.n, p, seed)?
            }
            _ => bail!("sweep supports --type random and --type reversal"),
        };
        let identity: Vec<usize> = (0..args.n).collect();
        let backward = tourpow::tournament::backward_edges(&t, &identity)?.len();
        backward_sum += backward as u64;
        let exact = oracle::exact_min_backward(&t, &budget).ok();
        if let Some((count, _)) = exact {
            eps_sum += Rational::new(count as i64, (args.n * args.n) as i64);
            exact_count += 1;
        }
        rows.push(json!({
            "seed": seed,
            "identity_backward": backward,
            "min_backward": exact.map(|(c, _)| c),
        }));
    }
    let mean_eps = if exact_count > 0 {
        Some(rational_str(eps_sum / Rational::new(exact_count as i64, 1)))
    } else {
        None
    };
    let out = json!({
        "n": args.n,
        "seeds": args.seeds,
        "mean_eps_exact": mean_eps,
        "exact_solved": exact_count,
        "mean_identity_backward": backward_sum as f64 / args.seeds as f64,
        "rows": rows,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(ExitCode::SUCCESS)
}
