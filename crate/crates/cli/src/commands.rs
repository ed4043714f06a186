use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use unibraid::cabling::ChainDocument;
use unibraid::henon::{Cell, ContinuationOptions, IsotracalPath, ScatterSpec};
use unibraid::perm::{self, from_itinerary, parse_cyclic, to_itinerary};
use unibraid::quad::{superattracting_parameter, superattracting_parameter_in, QuadError, QuadParam, FULL_BRACKET};
use unibraid::{continue_isotracal, generate_chain, plot, verify_pair, EquivalencePair, Itinerary, Relation};

use crate::config::{positive, FileConfig};
use crate::{Failure, Heads};

pub const DEFAULT_HEADS: [&str; 5] = ["1001C", "10011C", "100111C", "1001111C", "10011001C"];
const DEFAULT_DEPTH: usize = 3;

fn input<E: std::fmt::Display>(context: impl std::fmt::Display) -> impl FnOnce(E) -> Failure {
    move |e| Failure::Input(format!("{context}: {e}"))
}

fn out_dir(out: Option<PathBuf>, file: &FileConfig) -> Result<PathBuf, Failure> {
    let dir = out.or_else(|| file.out.clone()).unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).map_err(input(dir.display()))?;
    Ok(dir)
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(input(path.display()))
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_path(path).map_err(input(path.display()))?;
    w.write_record(header).map_err(input(path.display()))?;
    for row in rows {
        w.write_record(row).map_err(input(path.display()))?;
    }
    w.flush().map_err(input(path.display()))
}

fn parse_head(text: &str) -> Result<unibraid::UnimodalPermutation, Failure> {
    let parsed = if text.contains(',') {
        parse_cyclic(text)
    } else {
        text.parse::<Itinerary>().and_then(|w| from_itinerary(&w))
    };
    parsed.map_err(input(format!("head `{text}`")))
}

fn chains_for(heads: &Heads, file: &FileConfig) -> Result<Vec<ChainDocument>, Failure> {
    let names: Vec<String> = if !heads.heads.is_empty() {
        heads.heads.clone()
    } else if let Some(h) = &file.heads {
        h.clone()
    } else {
        DEFAULT_HEADS.iter().map(|s| s.to_string()).collect()
    };
    let depth = heads.depth.or(file.depth).unwrap_or(DEFAULT_DEPTH);
    names
        .iter()
        .map(|name| {
            let head = parse_head(name)?;
            let chain = generate_chain(&head, depth).map_err(input(format!("head `{name}`")))?;
            chain.to_document().map_err(input(format!("head `{name}`")))
        })
        .collect()
}

fn read_documents(path: &Path) -> Result<Vec<ChainDocument>, Failure> {
    let text = fs::read_to_string(path).map_err(input(path.display()))?;
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let value: serde_json::Value = serde_json::from_str(&text).map_err(input(path.display()))?;
    let docs = if value.is_array() {
        serde_json::from_value(value)
    } else {
        serde_json::from_value(value).map(|d| vec![d])
    };
    docs.map_err(input(path.display()))
}

fn itinerary_of(cyclic: &str) -> perm::Result<Itinerary> {
    to_itinerary(&parse_cyclic(cyclic)?)
}

// ----------------------------------------------------------------------------
// chain

pub fn chain(heads: &Heads, out: Option<PathBuf>, file: &FileConfig) -> Result<(), Failure> {
    let docs = chains_for(heads, file)?;
    let dir = out_dir(out, file)?;
    let json = serde_json::to_string_pretty(&docs).expect("chain documents serialise");
    write(&dir.join("chains.json"), &(json + "\n"))?;

    let mut table = String::from("head\tlevel\titinerary\tcyclic\n");
    for doc in &docs {
        for (level, rec) in doc.levels.iter().enumerate() {
            for cyclic in [&rec.minus, &rec.plus] {
                let it = itinerary_of(cyclic).expect("generated permutations are cyclic");
                table += &format!("{}\t{level}\t{it}\t{cyclic}\n", doc.head);
            }
        }
    }
    write(&dir.join("chains.txt"), &table)?;
    print!("{table}");
    Ok(())
}

// ----------------------------------------------------------------------------
// verify

#[derive(Serialize)]
struct VerifyRow {
    file: String,
    head: String,
    level: usize,
    period: usize,
    relation: Option<Relation>,
    central_power: Option<i64>,
    error: Option<String>,
}

fn rebuild(doc: &ChainDocument, level: usize) -> Result<EquivalencePair, String> {
    let rec = &doc.levels[level];
    let minus = parse_cyclic(&rec.minus).map_err(|e| format!("minus: {e}"))?;
    let plus = parse_cyclic(&rec.plus).map_err(|e| format!("plus: {e}"))?;
    let distinguishing_time = perm::distinguishing_time(&minus, &plus).map_err(|e| e.to_string())?;
    Ok(EquivalencePair { minus, plus, distinguishing_time, relation: rec.relation, level, head: doc.head.clone() })
}

pub fn verify(files: &[PathBuf], out: Option<PathBuf>) -> Result<(), Failure> {
    let mut jobs = Vec::new();
    for path in files {
        for doc in read_documents(path)? {
            for level in 0..doc.levels.len() {
                jobs.push((path.display().to_string(), doc.clone(), level));
            }
        }
    }
    let rows: Vec<VerifyRow> = jobs
        .par_iter()
        .map(|(file, doc, level)| {
            let checked = rebuild(doc, *level).and_then(|pair| verify_pair(&pair).map_err(|e| e.to_string()));
            let (relation, central_power, error) = match checked {
                Ok(r) => (Some(r.relation), Some(r.central_power), None),
                Err(e) => (None, None, Some(e)),
            };
            VerifyRow {
                file: file.clone(),
                head: doc.head.to_string(),
                level: *level,
                period: doc.levels[*level].period,
                relation,
                central_power,
                error,
            }
        })
        .collect();

    for r in &rows {
        match (&r.relation, &r.error) {
            (Some(rel), _) => println!(
                "ok    {} level {} period {}: {:?}, central power {}",
                r.head,
                r.level,
                r.period,
                rel,
                r.central_power.unwrap_or(0)
            ),
            (None, err) => println!("FAIL  {} level {} period {}: {}", r.head, r.level, r.period, err.as_deref().unwrap_or("")),
        }
    }
    let failed: Vec<String> =
        rows.iter().filter(|r| r.error.is_some()).map(|r| format!("{} {} level {}", r.file, r.head, r.level)).collect();
    println!("{} pairs checked, {} failed", rows.len(), failed.len());
    if let Some(dir) = out {
        fs::create_dir_all(&dir).map_err(input(dir.display()))?;
        let json = serde_json::to_string_pretty(&rows).expect("report serialises");
        write(&dir.join("verify.json"), &(json + "\n"))?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failed.join(", ")))
    }
}

// ----------------------------------------------------------------------------
// params

fn solve(word: &Itinerary) -> Result<QuadParam, Failure> {
    let result = match superattracting_parameter(word) {
        Err(QuadError::NoBracket { .. }) => superattracting_parameter_in(word, FULL_BRACKET),
        other => other,
    };
    result.map_err(|e| match e {
        QuadError::NotPeriodic(_) | QuadError::Inadmissible(_) => Failure::Input(e.to_string()),
        _ => Failure::Numeric(e.to_string()),
    })
}

/// `(head, itinerary)` for both members of every pair, in order.
fn pair_words(docs: &[ChainDocument]) -> Result<Vec<(String, Itinerary, Itinerary)>, Failure> {
    let mut out = Vec::new();
    for doc in docs {
        for rec in &doc.levels {
            let m = itinerary_of(&rec.minus).map_err(input(&rec.minus))?;
            let p = itinerary_of(&rec.plus).map_err(input(&rec.plus))?;
            out.push((doc.head.to_string(), m, p));
        }
    }
    Ok(out)
}

fn sources(heads: &Heads, chains: &[PathBuf], extra_given: bool, file: &FileConfig) -> Result<Vec<ChainDocument>, Failure> {
    let mut docs = Vec::new();
    for path in chains {
        docs.extend(read_documents(path)?);
    }
    if !heads.heads.is_empty() || (chains.is_empty() && !extra_given) {
        docs.extend(chains_for(heads, file)?);
    }
    Ok(docs)
}

pub fn params(
    heads: &Heads,
    chains: &[PathBuf],
    itineraries: &[String],
    out: Option<PathBuf>,
    file: &FileConfig,
) -> Result<(), Failure> {
    let docs = sources(heads, chains, !itineraries.is_empty(), file)?;
    let mut words: Vec<(String, Itinerary)> = Vec::new();
    for (head, m, p) in pair_words(&docs)? {
        words.push((head.clone(), m));
        words.push((head, p));
    }
    for w in itineraries {
        words.push((String::new(), w.parse().map_err(input(w))?));
    }
    let solved: Vec<QuadParam> = words.par_iter().map(|(_, w)| solve(w)).collect::<Result<_, _>>()?;
    let rows: Vec<Vec<String>> = words
        .iter()
        .zip(&solved)
        .map(|((head, w), q)| vec![head.clone(), q.period.to_string(), w.to_string(), format!("{:.11}", q.a)])
        .collect();
    let dir = out_dir(out, file)?;
    let path = dir.join("params.csv");
    write_csv(&path, &["head", "period", "itinerary", "a"], &rows)?;
    for r in &rows {
        println!("{}", r.join(","));
    }
    Ok(())
}

// ----------------------------------------------------------------------------
// isotracal

pub fn continuation_options(file: &FileConfig, flags: [Option<f64>; 5]) -> Result<ContinuationOptions, Failure> {
    let d = ContinuationOptions::default();
    let [tol, initial, min, max, b_max] = flags;
    let opts = ContinuationOptions {
        meet_tol: positive("--tol-meet", tol.or(file.tol_meet).unwrap_or(d.meet_tol))?,
        initial_step: positive("--initial-step", initial.or(file.initial_step).unwrap_or(d.initial_step))?,
        min_step: positive("--min-step", min.or(file.min_step).unwrap_or(d.min_step))?,
        max_step: positive("--max-step", max.or(file.max_step).unwrap_or(d.max_step))?,
        b_max: positive("--b-max", b_max.or(file.b_max).unwrap_or(d.b_max))?,
        ..d
    };
    if opts.min_step > opts.initial_step || opts.initial_step > opts.max_step {
        return Err(Failure::Input("need min-step <= initial-step <= max-step".into()));
    }
    Ok(opts)
}

fn path_rows(path: &IsotracalPath) -> impl Iterator<Item = Vec<String>> + '_ {
    path.samples.iter().map(|s| {
        vec![
            s.b.to_string(),
            s.a.to_string(),
            s.x.to_string(),
            s.y.to_string(),
            format!("{:e}", s.res_fp),
            format!("{:e}", s.res_tr),
            path.branch.as_str().to_string(),
            path.period.to_string(),
        ]
    })
}

pub fn isotracal(
    heads: &Heads,
    chains: &[PathBuf],
    periods: &[usize],
    opts: &ContinuationOptions,
    out: Option<PathBuf>,
    file: &FileConfig,
) -> Result<(), Failure> {
    let docs = sources(heads, chains, false, file)?;
    let wanted: Vec<usize> = if periods.is_empty() { file.periods.clone().unwrap_or_default() } else { periods.to_vec() };
    let jobs: Vec<(String, Itinerary, Itinerary)> = pair_words(&docs)?
        .into_iter()
        .filter(|(_, m, _)| wanted.is_empty() || wanted.contains(&m.len()))
        .collect();
    let results: Vec<(f64, f64, IsotracalPath, IsotracalPath)> = jobs
        .par_iter()
        .map(|(_, m, p)| {
            let (am, ap) = (solve(m)?.a, solve(p)?.a);
            let (minus, plus) = continue_isotracal(am, ap, m.len(), opts)
                .map_err(|e| Failure::Numeric(format!("period {}: {e}", m.len())))?;
            Ok((am, ap, minus, plus))
        })
        .collect::<Result<_, Failure>>()?;

    let dir = out_dir(out, file)?;
    let header = ["b", "a", "x", "y", "res_fp", "res_tr", "branch", "period"];
    let mut summary = Vec::new();
    let mut heads_seen: Vec<String> = jobs.iter().map(|j| j.0.clone()).collect();
    heads_seen.dedup();
    for head in &heads_seen {
        let mut rows = Vec::new();
        let mut paths = Vec::new();
        for ((h, _, _), (am, ap, minus, plus)) in jobs.iter().zip(&results) {
            if h != head {
                continue;
            }
            rows.extend(path_rows(minus));
            rows.extend(path_rows(plus));
            paths.push(minus.clone());
            paths.push(plus.clone());
            let last = minus.samples.last().expect("paths start with a sample");
            let meet = minus.meet_b.map(|b| b.to_string()).unwrap_or_default();
            match minus.meet_b {
                Some(b) => println!("{head} period {}: met at b = {b}", minus.period),
                None => {
                    println!("{head} period {}: stopped ({:?}) at b = {}", minus.period, minus.stop, last.b);
                    eprintln!("warning: {head} period {} did not meet", minus.period);
                }
            }
            summary.push(vec![
                head.clone(),
                minus.period.to_string(),
                am.to_string(),
                ap.to_string(),
                minus.met.to_string(),
                meet,
                format!("{:?}", minus.stop),
                (minus.samples.len() + plus.samples.len()).to_string(),
            ]);
        }
        write_csv(&dir.join(format!("isotracal_{head}.csv")), &header, &rows)?;
        write(&dir.join(format!("isotracal_{head}.svg")), &plot::paths_svg(&paths, &format!("head {head}")))?;
    }
    write_csv(
        &dir.join("isotracal_summary.csv"),
        &["head", "period", "a_minus", "a_plus", "met", "meet_b", "stop", "samples"],
        &summary,
    )
}

// ----------------------------------------------------------------------------
// scatter

#[allow(clippy::too_many_arguments)]
pub fn scatter_spec(
    file: &FileConfig,
    period: Option<(usize, usize)>,
    a_range: Option<(f64, f64)>,
    b_range: Option<(f64, f64)>,
    res: Option<(usize, usize)>,
    transient: Option<usize>,
    escape_radius: Option<f64>,
    tol_period: Option<f64>,
) -> Result<ScatterSpec, Failure> {
    let d = ScatterSpec::default();
    let (period_min, period_max) = period.unwrap_or((
        file.period_min.unwrap_or(d.period_min),
        file.period_max.or(file.period_min).unwrap_or(d.period_max),
    ));
    let (a_res, b_res) = res.or(file.res).unwrap_or((d.a_res, d.b_res));
    let spec = ScatterSpec {
        a_range: a_range.or(file.a_range).unwrap_or(d.a_range),
        b_range: b_range.or(file.b_range).unwrap_or(d.b_range),
        a_res,
        b_res,
        period_min,
        period_max,
        transient: transient.or(file.transient).unwrap_or(d.transient),
        escape_radius: positive("--escape-radius", escape_radius.or(file.escape_radius).unwrap_or(d.escape_radius))?,
        period_tol: positive("--tol-period", tol_period.or(file.tol_period).unwrap_or(d.period_tol))?,
    };
    if spec.a_res < 2 || spec.b_res < 2 {
        return Err(Failure::Input("resolution must be at least 2 per axis".into()));
    }
    if spec.period_min == 0 || spec.period_min > spec.period_max {
        return Err(Failure::Input(format!("bad period range {}..{}", spec.period_min, spec.period_max)));
    }
    for (lo, hi) in [spec.a_range, spec.b_range] {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Failure::Input(format!("bad range {lo},{hi}")));
        }
    }
    Ok(spec)
}

pub fn scatter(spec: &ScatterSpec, out: Option<PathBuf>, file: &FileConfig) -> Result<(), Failure> {
    let grid = unibraid::scatter(spec);
    let name = if spec.period_min == spec.period_max {
        format!("scatter_p{}", spec.period_min)
    } else {
        format!("scatter_p{}-{}", spec.period_min, spec.period_max)
    };
    let rows: Vec<Vec<String>> = grid
        .iter()
        .map(|(a, b, cell)| {
            let period = match cell {
                Cell::Period(q) => q.to_string(),
                Cell::Escape => "escape".to_string(),
                Cell::None => "none".to_string(),
            };
            vec![a.to_string(), b.to_string(), period]
        })
        .collect();
    let dir = out_dir(out, file)?;
    write_csv(&dir.join(format!("{name}.csv")), &["a", "b", "period"], &rows)?;
    let title = if spec.period_min == spec.period_max {
        format!("period {}", spec.period_min)
    } else {
        format!("periods {}..{}", spec.period_min, spec.period_max)
    };
    write(&dir.join(format!("{name}.svg")), &plot::scatter_svg(&grid, &[], &title))?;
    let periodic = grid.cells.iter().filter(|c| matches!(c, Cell::Period(_))).count();
    println!("{periodic} of {} cells periodic; wrote {}", grid.cells.len(), dir.join(format!("{name}.csv")).display());
    Ok(())
}
