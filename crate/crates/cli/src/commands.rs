use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use seqrecon::ball::{ball_members, count_ball, intersection_size};
use seqrecon::codes::{greedy_codebook, vt_codebook, vt_decode, vt_encode, BruteDecoder, VtDecoder};
use seqrecon::construct::{construct_ab, construct_extremal_pair};
use seqrecon::distance::{deletion_distance, deletion_distance_with_witness};
use seqrecon::recon::{certify_read_count, run_trials, summarize, TrialCode, TrialConfig, MAX_CERTIFY_LEN};
use seqrecon::search::{formula_entry, Method, NQuery, NTable, SearchOptions, Searcher};
use seqrecon::{binomial, DecodeOutcome, Word};

use crate::{
    BallArgs, Cli, CodeChoice, Command, ComputeNArgs, ConjectureArgs, ConstructPairArgs, DistArgs,
    Format, SimulateArgs, TableArgs, VerifyBoundsArgs, VtAction,
};

const VIOLATION: u8 = 1;

pub fn run(cli: Cli) -> Result<ExitCode> {
    let jobs = cli.jobs;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match cli.command {
        Command::Ball(a) => ball(a, &mut out)?,
        Command::Dist(a) => dist(a, &mut out)?,
        Command::ComputeN(a) => compute_n(a, jobs, &mut out)?,
        Command::VerifyBounds(a) => verify_bounds(a, jobs, &mut out)?,
        Command::Conjecture(a) => conjecture(a, jobs, &mut out)?,
        Command::Table(a) => table(a, jobs, &mut out)?,
        Command::Vt(a) => vt(a.action, &mut out)?,
        Command::Simulate(a) => simulate(a, jobs, &mut out)?,
        Command::ConstructPair(a) => construct_pair(a, &mut out)?,
    };
    out.flush()?;
    Ok(code)
}

fn searcher(jobs: Option<usize>, symmetry: bool) -> Result<Searcher> {
    Ok(Searcher::new(SearchOptions {
        symmetry,
        jobs,
        ..SearchOptions::default()
    })?)
}

fn json_line<T: Serialize>(out: &mut impl Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn ball(a: BallArgs, out: &mut impl Write) -> Result<ExitCode> {
    if a.count_only {
        let count = count_ball(&a.word, a.t)?;
        if a.json {
            json_line(out, &serde_json::json!({ "word": a.word, "t": a.t, "count": count }))?;
        } else {
            writeln!(out, "{count}")?;
        }
        return Ok(ExitCode::SUCCESS);
    }
    let members = ball_members(&a.word, a.t)?;
    if a.json {
        json_line(
            out,
            &serde_json::json!({
                "word": a.word,
                "t": a.t,
                "count": members.len(),
                "members": members,
            }),
        )?;
    } else {
        for m in &members {
            writeln!(out, "{m}")?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn dist(a: DistArgs, out: &mut impl Write) -> Result<ExitCode> {
    if a.witness {
        let r = deletion_distance_with_witness(&a.x, &a.y);
        writeln!(out, "{}", r.value)?;
        writeln!(out, "{}", r.witness.unwrap_or(Word::EMPTY))?;
    } else {
        writeln!(out, "{}", deletion_distance(&a.x, &a.y).value)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn compute_n(a: ComputeNArgs, jobs: Option<usize>, out: &mut impl Write) -> Result<ExitCode> {
    let s = searcher(jobs, !a.no_symmetry)?;
    let r = s.compute_n(NQuery::new(a.n, a.ell, a.t).with_gap(a.gap))?;
    if a.json {
        json_line(out, &r)?;
    } else {
        writeln!(out, "{}", r.value)?;
    }
    if a.gap == 0 {
        if let Some(expected) = formula_entry(a.n, a.ell, a.t) {
            if expected != r.value {
                eprintln!(
                    "violation: closed form gives N({}, {}, {}) = {expected}, search found {}",
                    a.n, a.ell, a.t, r.value
                );
                return Ok(ExitCode::from(VIOLATION));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_bounds(a: VerifyBoundsArgs, jobs: Option<usize>, out: &mut impl Write) -> Result<ExitCode> {
    let s = searcher(jobs, true)?;
    let report = s.verify_s(a.ell, a.t, a.k, a.n_max)?;
    json_line(out, &report)?;
    if report.holds() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("violation: {} pairs exceed the upper bound", report.violations.len());
        Ok(ExitCode::from(VIOLATION))
    }
}

fn conjecture(a: ConjectureArgs, jobs: Option<usize>, out: &mut impl Write) -> Result<ExitCode> {
    let s = searcher(jobs, true)?;
    let n_min = a.n_min.unwrap_or(a.t + 2);
    let report = s.check_conjecture(a.ell, a.t, n_min, a.n_max)?;
    match a.format {
        Format::Json => json_line(out, &report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["ell", "t", "n", "N", "N_prev", "N_prev2", "rhs", "equal"])?;
            for r in &report.rows {
                w.write_record([
                    a.ell.to_string(),
                    a.t.to_string(),
                    r.n.to_string(),
                    r.lhs.to_string(),
                    r.prev.to_string(),
                    r.prev2.to_string(),
                    r.rhs.to_string(),
                    r.equal.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    eprintln!(
        "recurrence holds on {} of {} rows",
        report.rows.iter().filter(|r| r.equal).count(),
        report.rows.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn write_to(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn table(a: TableArgs, jobs: Option<usize>, out: &mut impl Write) -> Result<ExitCode> {
    let s = searcher(jobs, true)?;
    eprintln!(
        "building N table: n <= {}, t <= {}, search up to n = {}",
        a.n_max, a.t_max, a.exhaustive_max
    );
    let table = NTable::build(&s, a.n_max, a.t_max, a.exhaustive_max)?;
    match &a.out {
        Some(path) => {
            let mut f = write_to(path)?;
            table.write_csv(&mut f)?;
            f.flush()?;
        }
        None => table.write_csv(&mut *out)?,
    }
    eprintln!("{} entries", table.len());

    let mut bad = table.inconsistent_entries();
    for (&(n, ell, t), e) in &table.entries {
        if e.method == Method::Exhaustive && formula_entry(n, ell, t).is_some_and(|f| f != e.value) {
            bad.push((n, ell, t));
        }
    }
    if bad.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for (n, ell, t) in bad {
            eprintln!("violation: entry N({n}, {ell}, {t}) disagrees with its witness or closed form");
        }
        Ok(ExitCode::from(VIOLATION))
    }
}

fn vt(action: VtAction, out: &mut impl Write) -> Result<ExitCode> {
    match action {
        VtAction::Encode { n, a, index } => writeln!(out, "{}", vt_encode(n, a, index)?)?,
        VtAction::Decode { n, a, y } => match vt_decode(&y, n, a)? {
            DecodeOutcome::Codeword(x) => writeln!(out, "{x}")?,
            DecodeOutcome::Failure => writeln!(out, "FAILURE")?,
        },
        VtAction::Codebook { n, a, out: path } => {
            let cb = vt_codebook(n, a)?;
            match path {
                Some(p) => {
                    let mut f = write_to(&p)?;
                    f.write_all(cb.to_lines().as_bytes())?;
                    f.flush()?;
                }
                None => out.write_all(cb.to_lines().as_bytes())?,
            }
            eprintln!("{} codewords", cb.len());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn simulate(a: SimulateArgs, jobs: Option<usize>, out: &mut impl Write) -> Result<ExitCode> {
    if a.t == 0 {
        bail!("t must be at least 1");
    }
    let m = a.m.unwrap_or(binomial(2 * a.t as u64, a.t as u64) as usize + 1);
    let (code, codebook) = match a.code {
        CodeChoice::Vt => {
            if a.t != 2 {
                bail!("the VT code corrects one deletion, so it pairs with t = 2 (got t = {})", a.t);
            }
            let cb = (a.n <= MAX_CERTIFY_LEN).then(|| vt_codebook(a.n, 0)).transpose()?;
            (TrialCode::Vt(VtDecoder { n: a.n, a: 0 }), cb)
        }
        CodeChoice::Greedy => {
            let cb = greedy_codebook(a.n, a.t)?;
            (TrialCode::Explicit(BruteDecoder { codebook: cb.clone() }), Some(cb))
        }
    };
    if let Some(cb) = codebook.filter(|cb| cb.n <= MAX_CERTIFY_LEN) {
        let shared = certify_read_count(&cb, a.t)?;
        if shared >= m as u64 {
            eprintln!("warning: two codewords share {shared} reads, so {m} reads may not identify the codeword");
        } else {
            eprintln!("certified: codewords share at most {shared} < {m} reads");
        }
    }
    let cfg = TrialConfig {
        t: a.t,
        m,
        trials: a.trials,
        seed: a.seed,
        max_draws: None,
        timing: !a.no_timing,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        pool = pool.num_threads(j);
    }
    let records = pool.build()?.install(|| run_trials(&code, &cfg));
    for r in &records {
        json_line(out, r)?;
    }
    let summary = summarize(&records);
    json_line(out, &serde_json::json!({ "summary": summary }))?;
    let failed = records.iter().filter(|r| r.codeword.is_some() && !r.ok).count();
    if failed > 0 {
        eprintln!("violation: {failed} feasible trials did not recover the codeword");
        return Ok(ExitCode::from(VIOLATION));
    }
    Ok(ExitCode::SUCCESS)
}

fn construct_pair(a: ConstructPairArgs, out: &mut impl Write) -> Result<ExitCode> {
    let (pa, pb) = construct_ab(a.ell)?;
    let n = a.n.unwrap_or(pa.len());
    let (x, y) = construct_extremal_pair(n, a.ell)?;
    let t = a.t.unwrap_or(a.ell);
    let delta = |u: &Word, v: &Word| -> Result<u64> {
        if t > u.len() {
            return Ok(0);
        }
        Ok(intersection_size(u, v, t, t)?.size)
    };
    writeln!(out, "A={pa}")?;
    writeln!(out, "B={pb}")?;
    writeln!(out, "X={x}")?;
    writeln!(out, "Y={y}")?;
    writeln!(out, "d_L(A,B)={}", deletion_distance(&pa, &pb).value)?;
    writeln!(out, "d_L(X,Y)={}", deletion_distance(&x, &y).value)?;
    writeln!(out, "Delta(A,B,{t},{t})={}", delta(&pa, &pb)?)?;
    writeln!(out, "Delta(X,Y,{t},{t})={}", delta(&x, &y)?)?;
    Ok(ExitCode::SUCCESS)
}
