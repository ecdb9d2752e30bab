use std::fmt::Write as _;
use std::path::Path;

use lcdcodes::build::{
    build_hermitian, build_orbit, build_orbit_skew, build_plain, build_skew, build_skew_hadamard, BuildResult,
    DesignInput, Variant,
};
use lcdcodes::code::{CodeReport, ReportOptions};
use lcdcodes::construct::{
    infer_design, paley_conference, paley_type_one, skew_core, validate_design, validate_fq_weighing,
    validate_weighing, WeighingMatrix,
};
use lcdcodes::decode::{DecodeMode, DecodeOutcome, DecoderContext};
use lcdcodes::distance::{DistanceStatus, EnumerationPolicy};
use lcdcodes::format::{
    format_word, parse_word, read_group, read_matrix, write_fq_matrix, write_group, write_int_matrix,
};
use lcdcodes::orbit::{
    fq_row_orbit_matrix, orbit_structure, paut_search, skew_orbit_check, verify_delta_identity,
    verify_inverse_relation, verify_weighted_orthogonality,
};
use lcdcodes::tables::{reproduce_row, table_spec, HarnessOptions, RowReport, RowStatus};
use lcdcodes::{Error, FqMatrix, IntMatrix, Matrix};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::*;
use crate::Failure;

type Outcome = Result<(), Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Paley(a) => emit(&write_int_matrix(paley_type_one(a.pi)?.matrix()), a.out.as_deref()),
        Command::Conference(a) => emit(&write_int_matrix(paley_conference(a.pi)?.matrix()), a.out.as_deref()),
        Command::Validate(a) => validate(a),
        Command::Build(a) => build(a),
        Command::Report(a) => report(a, g),
        Command::Orbit(a) => orbit(a),
        Command::Paut(a) => paut(a),
        Command::Decode(a) => decode(a, g),
        Command::Reproduce(a) => reproduce(a, g),
    }
}

fn policy(g: &GlobalOpts) -> EnumerationPolicy {
    EnumerationPolicy {
        cap: g.enum_cap,
        max_weight: g.max_weight,
    }
}

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_int(path: &Path) -> Result<IntMatrix, Failure> {
    match read_matrix(path)? {
        Matrix::Int(m) => Ok(m),
        Matrix::Fq(_) => Err(Failure::Usage(format!("{}: expected an integer (Z) matrix", path.display()))),
    }
}

fn read_fq(path: &Path) -> Result<FqMatrix, Failure> {
    match read_matrix(path)? {
        Matrix::Fq(m) => Ok(m),
        Matrix::Int(_) => Err(Failure::Usage(format!("{}: expected a matrix over GF(q) (F<q>)", path.display()))),
    }
}

/// Validation errors become check failures; anything else stays a usage error.
fn check_err(e: Error) -> Failure {
    match e {
        Error::Validation(_) | Error::NotSquare(..) => Failure::Check(format!("INVALID: {e}")),
        e => Failure::Usage(e.to_string()),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn validate(a: &ValidateArgs) -> Outcome {
    match a.kind {
        ValidateKind::Weighing => {
            let w = validate_weighing(&read_int(&a.file)?, a.m).map_err(check_err)?;
            println!(
                "valid W({},{}) skew={} hadamard={} skew_hadamard={} conference={}",
                w.order(),
                w.weight(),
                yes_no(w.is_skew()),
                yes_no(w.is_hadamard()),
                yes_no(w.is_skew_type_hadamard()),
                yes_no(w.is_conference())
            );
        }
        ValidateKind::Fq => {
            let m = a.m.map(|m| m as usize);
            let w = validate_fq_weighing(&read_fq(&a.file)?, m).map_err(check_err)?;
            println!("valid W({},{};F{})", w.order(), w.weight(), w.matrix().field().order());
        }
        ValidateKind::Design => {
            let b = read_int(&a.file)?;
            let d = match (a.r, a.lambda) {
                (Some(r), Some(l)) => validate_design(&b, r, l),
                (None, None) => infer_design(&b),
                _ => return Err(Failure::Usage("--r and --lambda go together".into())),
            }
            .map_err(check_err)?;
            println!(
                "valid design points={} blocks={} r={} lambda={}",
                d.points(),
                d.blocks(),
                d.r(),
                d.lambda()
            );
        }
    }
    Ok(())
}

fn weighing_source(a: &BuildArgs) -> Result<WeighingMatrix, Failure> {
    match (&a.w, a.pi) {
        (Some(p), None) => Ok(validate_weighing(&read_int(p)?, None)?),
        (None, Some(pi)) if a.conference => Ok(paley_conference(pi)?),
        (None, Some(pi)) => Ok(paley_type_one(pi)?),
        _ => Err(Failure::Usage("give exactly one of --w and --pi".into())),
    }
}

/// `R` for the orbit variants: the row orbit matrix under `--group`, else `W`.
fn orbit_source(a: &BuildArgs, w: &WeighingMatrix) -> Result<IntMatrix, Failure> {
    let Some(gp) = &a.group else {
        return Ok(w.matrix().clone());
    };
    let s = orbit_structure(w.matrix(), &read_group(gp)?)?;
    if !s.has_equal_orbit_lengths() {
        return Err(Failure::Usage("the group does not act with orbits of equal length".into()));
    }
    Ok(s.row_matrix().clone())
}

fn build_one(a: &BuildArgs, b: &DesignInput, alpha: u8) -> Result<BuildResult, Failure> {
    let q = a.q;
    Ok(match a.variant {
        Variant::Plain => build_plain(&weighing_source(a)?, b, q)?,
        Variant::Skew => {
            let w = weighing_source(a)?;
            let w = if a.w.is_none() && w.is_skew_type_hadamard() { skew_core(&w)? } else { w };
            build_skew(&w, b, alpha, q)?
        }
        Variant::SkewHadamard => build_skew_hadamard(&weighing_source(a)?, b, alpha, q)?,
        Variant::Orbit => {
            let w = weighing_source(a)?;
            build_orbit(&orbit_source(a, &w)?, b, q)?
        }
        Variant::OrbitSkew => {
            let w = weighing_source(a)?;
            let w = if a.w.is_none() && w.is_skew_type_hadamard() { skew_core(&w)? } else { w };
            build_orbit_skew(&orbit_source(a, &w)?, b, alpha, q)?
        }
        Variant::Hermitian => {
            let path = a.w.as_deref().ok_or_else(|| Failure::Usage("hermitian variant needs --w".into()))?;
            let w = read_fq(path)?;
            if w.field().order() != q {
                return Err(Failure::Usage(format!("{} is over GF({}), not GF({q})", path.display(), w.field().order())));
            }
            let r = match &a.group {
                Some(gp) => fq_row_orbit_matrix(&w, &read_group(gp)?)?.0,
                None => w,
            };
            build_hermitian(&r, b)?
        }
    })
}

fn build(a: &BuildArgs) -> Outcome {
    let b = match (&a.b, a.identity) {
        (Some(p), false) => DesignInput::Design(infer_design(&read_int(p)?)?),
        (None, true) => DesignInput::Identity,
        _ => return Err(Failure::Usage("give exactly one of --identity and --b".into())),
    };
    if a.alpha == "all" {
        if a.out_g.is_some() || a.out_gbar.is_some() {
            return Err(Failure::Usage("--out-g/--out-gbar need a single α".into()));
        }
        let alphas: Vec<u8> = if a.variant.uses_alpha() { (0..a.q.min(256)).map(|x| x as u8).collect() } else { vec![0] };
        for alpha in alphas {
            let res = build_one(a, &b, alpha)?;
            println!("alpha={alpha}: {}", res.trace_line());
        }
        return Ok(());
    }
    let alpha: u8 = a
        .alpha
        .parse()
        .map_err(|_| Failure::Usage(format!("--alpha must be a field element or `all`, got {:?}", a.alpha)))?;
    if alpha != 0 && !a.variant.uses_alpha() {
        return Err(Failure::Usage(format!("variant {} takes no α", a.variant.name())));
    }
    let res = build_one(a, &b, alpha)?;
    println!("{}", res.trace_line());
    let (k, n) = res.generator.shape();
    println!("G: {k}x{n} over GF({}) rank {}", a.q, res.rank);
    if let (Some(beta), Some(rank)) = (res.beta, res.dual_generator_rank) {
        println!("Gbar: beta={beta} rank {rank}");
    }
    if let Some(p) = &a.out_g {
        emit(&write_fq_matrix(&res.generator), Some(p))?;
    }
    if let Some(p) = &a.out_gbar {
        let gbar = res
            .dual_generator
            .as_ref()
            .ok_or_else(|| Failure::Usage("no dual generator for a design right block".into()))?;
        emit(&write_fq_matrix(gbar), Some(p))?;
    }
    Ok(())
}

fn report(a: &ReportArgs, g: &GlobalOpts) -> Outcome {
    let gen = read_fq(&a.g)?;
    let opts = ReportOptions {
        distance: a.distance,
        weight_distribution: a.wdist,
        hermitian: a.hermitian,
        policy: policy(g),
    };
    let rep = CodeReport::new(&gen, &opts)?;
    println!("{rep}");
    if g.require_exact {
        if let Some(d) = rep.distance.as_ref().filter(|d| d.status == DistanceStatus::LowerBound) {
            return Err(Failure::Check(format!("distance is only a lower bound ({})", d.lower)));
        }
    }
    Ok(())
}

fn orbit(a: &OrbitArgs) -> Outcome {
    let w = validate_weighing(&read_int(&a.w)?, None)?;
    let s = orbit_structure(w.matrix(), &read_group(&a.group)?)?;
    let r = s.row_matrix();
    let sizes = |v: Vec<usize>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let rrt = r.rows() == r.cols() && r.gram() == IntMatrix::identity(r.rows()).scale(w.weight());
    let checks = [
        ("delta identity", verify_delta_identity(w.matrix(), &s)?),
        ("weighted orthogonality", verify_weighted_orthogonality(&w, &s)?),
        ("R nonsingular with inverse from the column orbit matrix", verify_inverse_relation(w.matrix(), &s)?),
    ];
    let mut text = String::new();
    let _ = writeln!(text, "# row orbit sizes: {}", sizes(s.row_orbit_sizes()));
    let _ = writeln!(text, "# column orbit sizes: {}", sizes(s.col_orbit_sizes()));
    let _ = writeln!(text, "# equal orbit lengths: {}", yes_no(s.has_equal_orbit_lengths()));
    let _ = writeln!(text, "# R R^T = {} I: {}", w.weight(), yes_no(rrt));
    for (name, ok) in checks {
        let _ = writeln!(text, "# {name}: {}", yes_no(ok));
    }
    let skew = if w.is_skew() && s.is_aligned() && s.has_equal_orbit_lengths() {
        Some(skew_orbit_check(&w, &s)?)
    } else {
        None
    };
    let _ = writeln!(text, "# skew R: {}", skew.map_or("n/a", yes_no));
    match &a.out {
        Some(p) => {
            print!("{text}");
            emit(&write_int_matrix(r), Some(p))?;
        }
        None => {
            text.push_str(&write_int_matrix(r));
            print!("{text}");
        }
    }
    let equal = s.has_equal_orbit_lengths();
    if checks.iter().any(|(_, ok)| !ok) || skew == Some(false) || (equal && !rrt) {
        return Err(Failure::Check("FAIL: an orbit identity does not hold".into()));
    }
    Ok(())
}

fn paut(a: &PautArgs) -> Outcome {
    let w = read_int(&a.w)?;
    let all = paut_search(&w, a.max_n)?;
    let text = format!("# {} permutation automorphisms\n{}", all.len(), write_group(&all, w.rows()));
    emit(&text, a.out.as_deref())
}

fn decode(a: &DecodeArgs, g: &GlobalOpts) -> Outcome {
    let gen = read_fq(&a.g)?;
    let gbar = read_fq(&a.gbar)?;
    let ctx = DecoderContext::new(&gen, &gbar, a.d)?;
    let mode = if a.complete { DecodeMode::Complete } else { DecodeMode::Strict };
    let q = gen.field().order();
    if let Some(count) = a.sample {
        return sample_decode(&ctx, mode, count, a.errors.unwrap_or(ctx.radius()), g.seed);
    }
    let words: Vec<String> = match (&a.word, &a.words) {
        (Some(w), None) => vec![w.clone()],
        (None, Some(p)) => std::fs::read_to_string(p)
            .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect(),
        _ => return Err(Failure::Usage("give --word, --words or --sample".into())),
    };
    let mut failures = 0;
    for w in &words {
        match ctx.decode_with(&parse_word(w, q)?, mode)? {
            DecodeOutcome::Decoded(c) => println!("{}", format_word(&c)),
            DecodeOutcome::BeyondRadius { .. } => {
                failures += 1;
                println!("FAIL beyond-radius");
            }
        }
    }
    if failures > 0 {
        return Err(Failure::Check(format!("{failures} of {} words not decoded", words.len())));
    }
    Ok(())
}

fn sample_decode(ctx: &DecoderContext, mode: DecodeMode, count: usize, errors: usize, seed: u64) -> Outcome {
    let f = ctx.generator().field().clone();
    let q = f.order();
    let (k, n) = (ctx.dimension(), ctx.length());
    if errors > n {
        return Err(Failure::Usage(format!("--errors {errors} exceeds the length {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut ok, mut beyond, mut wrong) = (0, 0, 0);
    for _ in 0..count {
        let msg: Vec<u8> = (0..k).map(|_| rng.gen_range(0..q) as u8).collect();
        let c = ctx.generator().vec_mul(&msg)?;
        let mut w = c.clone();
        for pos in sample(&mut rng, n, errors) {
            w[pos] = f.add_u8(w[pos], rng.gen_range(1..q) as u8);
        }
        match ctx.decode_with(&w, mode)? {
            DecodeOutcome::Decoded(x) if x == c => ok += 1,
            DecodeOutcome::Decoded(_) => wrong += 1,
            DecodeOutcome::BeyondRadius { .. } => beyond += 1,
        }
    }
    println!("sampled {count} words with {errors} errors (t={}): {ok} correct, {beyond} beyond-radius, {wrong} wrong", ctx.radius());
    if ok < count {
        return Err(Failure::Check(format!("{} of {count} words not recovered", count - ok)));
    }
    Ok(())
}

fn reproduce(a: &ReproduceArgs, g: &GlobalOpts) -> Outcome {
    let opts = HarnessOptions {
        policy: policy(g),
        fsd_cap: a.fsd_cap.unwrap_or(g.enum_cap),
    };
    let specs = table_spec(a.table);
    let dir = a.data_dir.as_deref();
    let workers = g.workers.clamp(1, specs.len().max(1));
    let mut rows: Vec<(usize, RowReport)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let specs = &specs;
                let opts = &opts;
                scope.spawn(move || {
                    specs
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(i, s)| (i, reproduce_row(s, dir, opts)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    rows.sort_by_key(|(i, _)| *i);
    let (mut pass, mut partial, mut skipped, mut fail) = (0, 0, 0, 0);
    for (_, r) in &rows {
        println!("{r}");
        match r.status {
            RowStatus::Pass => pass += 1,
            RowStatus::Partial(_) => partial += 1,
            RowStatus::Skipped(_) => skipped += 1,
            RowStatus::Fail(_) => fail += 1,
        }
    }
    println!(
        "table {}: {} rows, {pass} PASS, {partial} PARTIAL, {skipped} SKIPPED, {fail} FAIL",
        a.table,
        rows.len()
    );
    if fail > 0 || (a.strict && skipped > 0) || (g.require_exact && partial > 0) {
        return Err(Failure::Check(format!("table {} did not fully reproduce", a.table)));
    }
    Ok(())
}
