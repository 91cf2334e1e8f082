//! Implementations of the six subcommands. Each returns the process exit
//! code on success; `Err` means a usage or input error (exit 2).

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde_json::json;

use fewdist::bounds::{best_bounds, theorem1_bound, theorem2_bound};
use fewdist::code::{Code, DistanceSet, Word};
use fewdist::combinatorics::{binomial, BigInt, BigRational};
use fewdist::constructions::{constant_weight_code, golay_block_code};
use fewdist::error::Error;
use fewdist::polymethod::{
    evaluation_matrix, even_formula_agreement, even_permutation_symmetry, expand_separator,
    linear_independence, ExponentVector,
};
use fewdist::search::{max_code, SearchOptions};

use crate::output::{to_csv, to_table, OutputFormat};

pub type CmdResult = Result<i32, String>;

fn parse_distances(arg: &str, n: Option<usize>) -> Result<DistanceSet, String> {
    let values: Result<Vec<usize>, _> = arg.split(',').map(|p| p.trim().parse()).collect();
    let values = values.map_err(|_| format!("cannot parse distance list {arg:?}"))?;
    let distances = DistanceSet::new(values).map_err(|e| e.to_string())?;
    if let Some(n) = n {
        if distances.max_distance() > n {
            return Err(format!(
                "distance {} exceeds length {n}",
                distances.max_distance()
            ));
        }
    }
    Ok(distances)
}

fn distances_json(distances: &DistanceSet) -> serde_json::Value {
    json!(distances.distances())
}

// ---------------------------------------------------------------- bound

pub fn bound(n: usize, distances: &str, format: OutputFormat) -> CmdResult {
    let distances = parse_distances(distances, Some(n))?;
    let summary = best_bounds(n, &distances).map_err(|e| e.to_string())?;

    match format {
        OutputFormat::Json => {
            let bounds: Vec<serde_json::Value> = summary
                .reports
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name.as_str(),
                        "applicable": r.applicable,
                        "value": r.value.as_ref().map(|v| v.to_string()),
                        "notes": r.notes,
                    })
                })
                .collect();
            let doc = json!({
                "command": "bound",
                "n": n,
                "distances": distances_json(&distances),
                "bounds": bounds,
                "min": summary.min_value.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        OutputFormat::Csv | OutputFormat::Table => {
            let header = ["name", "applicable", "value", "notes"];
            let mut rows: Vec<Vec<String>> = summary
                .reports
                .iter()
                .map(|r| {
                    vec![
                        r.name.to_string(),
                        r.applicable.to_string(),
                        r.value.as_ref().map(|v| v.to_string()).unwrap_or_default(),
                        r.notes.clone(),
                    ]
                })
                .collect();
            rows.push(vec![
                "min".into(),
                String::new(),
                summary.min_value.to_string(),
                String::new(),
            ]);
            let rendered = if format == OutputFormat::Csv {
                to_csv(&header, &rows)
            } else {
                to_table(&header, &rows)
            };
            print!("{rendered}");
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------- table

fn parse_length_range(arg: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = match arg.split_once("..") {
        Some((a, b)) => (
            a.parse().map_err(|_| format!("bad range start {a:?}"))?,
            b.parse().map_err(|_| format!("bad range end {b:?}"))?,
        ),
        None => {
            let n: usize = arg
                .parse()
                .map_err(|_| format!("cannot parse length {arg:?}"))?;
            (n, n)
        }
    };
    if lo < 1 || lo > hi {
        return Err(format!("invalid length range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

pub fn table(length: &str, s: usize, format: OutputFormat) -> CmdResult {
    let (lo, hi) = parse_length_range(length)?;
    if s < 1 || s > lo {
        return Err(format!(
            "need 1 <= s <= {lo} (the smallest length), got s={s}"
        ));
    }

    struct Row {
        n: usize,
        theorem1: BigInt,
        theorem2: BigInt,
        two_distance: Option<BigInt>,
    }
    let rows: Vec<Row> = (lo..=hi)
        .map(|n| {
            let two_distance = (s == 2 && n >= 6).then(|| binomial(n, 2) + BigInt::from(1));
            Ok(Row {
                n,
                theorem1: theorem1_bound(n, s).map_err(|e| e.to_string())?,
                theorem2: theorem2_bound(n, s).map_err(|e| e.to_string())?,
                two_distance,
            })
        })
        .collect::<Result<_, String>>()?;

    match format {
        OutputFormat::Json => {
            let json_rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "theorem1": r.theorem1.to_string(),
                        "theorem2": r.theorem2.to_string(),
                        "two_distance": r.two_distance.as_ref().map(|v| v.to_string()),
                    })
                })
                .collect();
            let doc = json!({
                "command": "table",
                "s": s,
                "n_from": lo,
                "n_to": hi,
                "rows": json_rows,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        OutputFormat::Csv | OutputFormat::Table => {
            let header = ["n", "theorem1", "theorem2", "two_distance"];
            let text_rows: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.theorem1.to_string(),
                        r.theorem2.to_string(),
                        r.two_distance
                            .as_ref()
                            .map(|v| v.to_string())
                            .unwrap_or_default(),
                    ]
                })
                .collect();
            let rendered = if format == OutputFormat::Csv {
                to_csv(&header, &text_rows)
            } else {
                to_table(&header, &text_rows)
            };
            print!("{rendered}");
        }
    }
    Ok(0)
}

// --------------------------------------------------------------- search

#[allow(clippy::too_many_arguments)]
pub fn search(
    n: usize,
    distances: &str,
    time_limit: Option<f64>,
    threads: usize,
    emit_witness: bool,
    format: OutputFormat,
) -> CmdResult {
    let distances = parse_distances(distances, Some(n))?;
    let time_limit = match time_limit {
        Some(seconds) if seconds.is_finite() && seconds > 0.0 => {
            Some(Duration::from_secs_f64(seconds))
        }
        Some(other) => return Err(format!("time limit must be positive, got {other}")),
        None => None,
    };
    let opts = SearchOptions {
        time_limit,
        threads,
        ..Default::default()
    };
    let result = max_code(n, &distances, &opts).map_err(|e| e.to_string())?;
    let elapsed_ms = result.elapsed.as_millis() as u64;

    match format {
        OutputFormat::Json => {
            let witness = emit_witness.then(|| {
                result
                    .witness
                    .words()
                    .iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()
            });
            let doc = json!({
                "command": "search",
                "n": n,
                "distances": distances_json(&distances),
                "value": result.value,
                "complete": result.complete,
                "nodes": result.nodes,
                "elapsed_ms": elapsed_ms,
                "witness": witness,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        OutputFormat::Csv => {
            let header = [
                "n",
                "distances",
                "value",
                "complete",
                "nodes",
                "elapsed_ms",
                "witness",
            ];
            let witness = if emit_witness {
                result
                    .witness
                    .words()
                    .iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            } else {
                String::new()
            };
            let row = vec![
                n.to_string(),
                distances
                    .distances()
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                result.value.to_string(),
                result.complete.to_string(),
                result.nodes.to_string(),
                elapsed_ms.to_string(),
                witness,
            ];
            print!("{}", to_csv(&header, &[row]));
        }
        OutputFormat::Table => {
            println!("n: {n}");
            println!("distances: {distances}");
            println!("value: {}", result.value);
            println!("complete: {}", result.complete);
            println!("nodes: {}", result.nodes);
            println!("elapsed_ms: {elapsed_ms}");
            if emit_witness {
                println!("witness:");
                print!("{}", result.witness.serialize());
            }
        }
    }
    Ok(if result.complete { 0 } else { 3 })
}

// ------------------------------------------------------------ construct

pub fn construct(
    kind: &str,
    n: Option<usize>,
    s: Option<usize>,
    adjoin_zero: bool,
    output: Option<PathBuf>,
    format: OutputFormat,
) -> CmdResult {
    let mut notes: Vec<String> = Vec::new();
    let code = match kind {
        "golay23" => {
            if n.is_some() || s.is_some() || adjoin_zero {
                return Err("golay23 takes no -n, -s, or --adjoin-zero".into());
            }
            golay_block_code()
        }
        "constant-weight" => {
            let n = n.ok_or("constant-weight requires -n/--length")?;
            let s = s.ok_or("constant-weight requires -s/--num-distances")?;
            if n < 2 * s {
                notes.push(format!(
                    "n={n} < 2s={}: the distance set truncates below {{2,4,...,2s}}",
                    2 * s
                ));
            }
            constant_weight_code(n, s, adjoin_zero).map_err(|e| e.to_string())?
        }
        other => return Err(format!("unknown construction kind {other:?}")),
    };

    let distance_set = (code.len() >= 2).then(|| code.distance_set().unwrap());
    let serialized = code.serialize();
    if let Some(path) = &output {
        fs::write(path, &serialized).map_err(|e| format!("writing {}: {e}", path.display()))?;
    }

    let summary = render_construct_summary(kind, &code, &distance_set, &output, &notes, format);
    if output.is_some() {
        print!("{summary}");
    } else {
        // the code file itself owns stdout
        eprint!("{summary}");
        print!("{serialized}");
    }
    Ok(0)
}

fn render_construct_summary(
    kind: &str,
    code: &Code,
    distance_set: &Option<DistanceSet>,
    output: &Option<PathBuf>,
    notes: &[String],
    format: OutputFormat,
) -> String {
    let dist_text = distance_set
        .as_ref()
        .map(|d| d.to_string())
        .unwrap_or_else(|| "{}".into());
    match format {
        OutputFormat::Json => {
            let doc = json!({
                "command": "construct",
                "kind": kind,
                "n": code.n(),
                "size": code.len(),
                "distance_set": distance_set.as_ref().map(|d| d.distances()),
                "output": output.as_ref().map(|p| p.display().to_string()),
                "notes": notes,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
        OutputFormat::Csv => to_csv(
            &["kind", "n", "size", "distance_set", "output", "notes"],
            &[vec![
                kind.into(),
                code.n().to_string(),
                code.len().to_string(),
                dist_text,
                output
                    .as_ref()
                    .map(|p| p.display().to_string())
                    .unwrap_or_default(),
                notes.join("; "),
            ]],
        ),
        OutputFormat::Table => {
            let mut out = format!(
                "kind: {kind}\nn: {}\nsize: {}\ndistance_set: {dist_text}\n",
                code.n(),
                code.len()
            );
            if let Some(path) = output {
                out.push_str(&format!("output: {}\n", path.display()));
            }
            for note in notes {
                out.push_str(&format!("note: {note}\n"));
            }
            out
        }
    }
}

// --------------------------------------------------------------- verify

#[derive(Clone, Copy, PartialEq, Eq)]
enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }
}

struct Check {
    name: &'static str,
    status: CheckStatus,
    detail: String,
}

impl Check {
    fn new(name: &'static str, status: CheckStatus, detail: impl Into<String>) -> Self {
        Check {
            name,
            status,
            detail: detail.into(),
        }
    }
}

pub fn verify(
    path: &Path,
    distances: Option<&str>,
    max_terms: usize,
    format: OutputFormat,
) -> CmdResult {
    let bytes = fs::read(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    let code = Code::parse(&bytes).map_err(|e| format!("{}: {e}", path.display()))?;
    let n = code.n();

    let given = match distances {
        Some(arg) => Some(parse_distances(arg, Some(n))?),
        None => None,
    };
    let computed = (code.len() >= 2).then(|| code.distance_set().unwrap());
    // distance set the checks run against: the user's claim if present,
    // otherwise what the file realizes
    let effective = given.clone().or_else(|| computed.clone());

    let mut checks = Vec::new();

    match (&given, &computed) {
        (Some(given), Some(computed)) => {
            if computed.is_subset_of(given) {
                checks.push(Check::new(
                    "containment",
                    CheckStatus::Pass,
                    format!("realized distance set {computed} within {given}"),
                ));
            } else {
                let detail = first_outside_pair(&code, given);
                checks.push(Check::new("containment", CheckStatus::Fail, detail));
            }
        }
        (Some(_), None) => checks.push(Check::new(
            "containment",
            CheckStatus::Pass,
            "fewer than two words, nothing to contain",
        )),
        (None, _) => checks.push(Check::new(
            "containment",
            CheckStatus::Skipped,
            "no distance set given",
        )),
    }

    match &effective {
        Some(distances) => {
            checks.push(diagonal_check(&code, distances));
            checks.push(rank_check(&code, distances, max_terms));
            checks.push(size_check(&code, distances));
        }
        None => {
            for name in [
                "evaluation_diagonal",
                "linear_independence",
                "size_within_bounds",
            ] {
                checks.push(Check::new(
                    name,
                    CheckStatus::Skipped,
                    "single-word code with no distance set given",
                ));
            }
        }
    }

    let passed = checks.iter().all(|c| c.status != CheckStatus::Fail);
    render_verify(path, &code, &computed, &checks, passed, format);
    Ok(if passed { 0 } else { 4 })
}

fn first_outside_pair(code: &Code, distances: &DistanceSet) -> String {
    let words = code.words();
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            let d = u.distance(v).unwrap();
            if !distances.contains(d) {
                return format!("pair {u} / {v} at distance {d} outside {distances}");
            }
        }
    }
    "no offending pair".into()
}

fn diagonal_check(code: &Code, distances: &DistanceSet) -> Check {
    let name = "evaluation_diagonal";
    let product: BigRational = distances
        .distances()
        .iter()
        .map(|&d| BigRational::from(BigInt::from(d)))
        .product();
    match evaluation_matrix(code, distances) {
        Ok(matrix) => {
            for (i, row) in matrix.iter().enumerate() {
                for (j, entry) in row.iter().enumerate() {
                    let ok = if i == j {
                        *entry == product
                    } else {
                        *entry == BigRational::from(BigInt::from(0))
                    };
                    if !ok {
                        return Check::new(
                            name,
                            CheckStatus::Fail,
                            format!(
                                "entry ({i},{j}) is {entry}, expected {}",
                                if i == j {
                                    product.to_string()
                                } else {
                                    "0".into()
                                }
                            ),
                        );
                    }
                }
            }
            Check::new(
                name,
                CheckStatus::Pass,
                format!("matrix is {product} times the identity"),
            )
        }
        Err(e) => Check::new(name, CheckStatus::Fail, e.to_string()),
    }
}

fn rank_check(code: &Code, distances: &DistanceSet, max_terms: usize) -> Check {
    let name = "linear_independence";
    match linear_independence(code, distances, max_terms) {
        Ok(report) => {
            if report.independent {
                Check::new(name, CheckStatus::Pass, format!("rank {}", report.rank))
            } else {
                Check::new(
                    name,
                    CheckStatus::Fail,
                    format!("rank {} below the {} words", report.rank, code.len()),
                )
            }
        }
        Err(Error::ResourceLimit {
            required, limit, ..
        }) => Check::new(
            name,
            CheckStatus::Skipped,
            format!("expansion needs {required} monomials, guard is {limit}"),
        ),
        Err(e) => Check::new(name, CheckStatus::Fail, e.to_string()),
    }
}

fn size_check(code: &Code, distances: &DistanceSet) -> Check {
    let name = "size_within_bounds";
    match best_bounds(code.n(), distances) {
        Ok(summary) => {
            let size = BigInt::from(code.len());
            for report in &summary.reports {
                if let Some(value) = &report.value {
                    if size > *value {
                        return Check::new(
                            name,
                            CheckStatus::Fail,
                            format!("size {size} exceeds {} bound {value}", report.name),
                        );
                    }
                }
            }
            Check::new(
                name,
                CheckStatus::Pass,
                format!("size {size} <= min bound {}", summary.min_value),
            )
        }
        Err(e) => Check::new(name, CheckStatus::Fail, e.to_string()),
    }
}

fn render_verify(
    path: &Path,
    code: &Code,
    computed: &Option<DistanceSet>,
    checks: &[Check],
    passed: bool,
    format: OutputFormat,
) {
    let dist_text = computed
        .as_ref()
        .map(|d| d.to_string())
        .unwrap_or_else(|| "{}".into());
    match format {
        OutputFormat::Json => {
            let json_checks: Vec<serde_json::Value> = checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "status": c.status.as_str(),
                        "detail": c.detail,
                    })
                })
                .collect();
            let doc = json!({
                "command": "verify",
                "path": path.display().to_string(),
                "n": code.n(),
                "size": code.len(),
                "distance_set": computed.as_ref().map(|d| d.distances()),
                "checks": json_checks,
                "passed": passed,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.to_string(),
                        c.status.as_str().to_string(),
                        c.detail.clone(),
                    ]
                })
                .collect();
            print!("{}", to_csv(&["check", "status", "detail"], &rows));
        }
        OutputFormat::Table => {
            println!("path: {}", path.display());
            println!("n: {}", code.n());
            println!("size: {}", code.len());
            println!("distance_set: {dist_text}");
            for c in checks {
                println!("{}: {} ({})", c.name, c.status.as_str(), c.detail);
            }
            println!("result: {}", if passed { "pass" } else { "fail" });
        }
    }
}

// --------------------------------------------------------------- expand

pub fn expand(
    n: Option<usize>,
    distances: &str,
    word: &str,
    max_terms: usize,
    format: OutputFormat,
) -> CmdResult {
    let word: Word = word.parse().map_err(|e: Error| e.to_string())?;
    if let Some(n) = n {
        if n != word.len() {
            return Err(format!("-n {n} disagrees with the {}-bit word", word.len()));
        }
    }
    let n = word.len();
    let distances = parse_distances(distances, Some(n))?;

    let poly = expand_separator(&word, &distances, max_terms).map_err(|e| e.to_string())?;
    let symmetry =
        even_permutation_symmetry(&word, &distances, max_terms).map_err(|e| e.to_string())?;
    let agreement =
        even_formula_agreement(&word, &distances, max_terms).map_err(|e| e.to_string())?;

    // graded order: total degree ascending, exponents lexicographically
    // descending within a degree (x1^2 before x1 x2 before x2^2)
    let mut terms: Vec<(&ExponentVector, &BigRational)> = poly.terms().collect();
    terms.sort_by(|(a, _), (b, _)| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| b.exponents().cmp(a.exponents()))
    });
    let exps_text = |e: &ExponentVector| {
        let parts: Vec<String> = e.exponents().iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    };

    match format {
        OutputFormat::Json => {
            let json_terms: Vec<serde_json::Value> = terms
                .iter()
                .map(|(e, c)| {
                    json!({
                        "exponents": e.exponents(),
                        "coefficient": c.to_string(),
                    })
                })
                .collect();
            let doc = json!({
                "command": "expand",
                "n": n,
                "distances": distances_json(&distances),
                "word": word.to_string(),
                "terms": json_terms,
                "permutation_symmetry": symmetry,
                "formula_agreement": agreement,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        OutputFormat::Csv => {
            let mut rows: Vec<Vec<String>> = terms
                .iter()
                .map(|(e, c)| vec!["term".to_string(), exps_text(e), c.to_string()])
                .collect();
            rows.push(vec![
                "permutation_symmetry".into(),
                String::new(),
                symmetry.to_string(),
            ]);
            rows.push(vec![
                "formula_agreement".into(),
                String::new(),
                agreement.to_string(),
            ]);
            print!("{}", to_csv(&["row", "exponents", "coefficient"], &rows));
        }
        OutputFormat::Table => {
            println!("word: {word}");
            println!("distances: {distances}");
            for (e, c) in &terms {
                println!("{} {}", exps_text(e), c);
            }
            println!("permutation_symmetry: {symmetry}");
            println!("formula_agreement: {agreement}");
        }
    }
    Ok(0)
}
