//! The `symsplit` command line.
//!
//! Every command prints one JSON document with `"schema": 1`. Numbers are
//! exact strings (`"-1/24*sqrt(6)"`); `--float` adds a float next to each.
//! Permutations use the split labelling: `S_m` on `1..=m`, straddling `(m,m+1)`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cg::{composite_cg, fundamental_cg_patterns, fundamental_pattern};
use crate::corrections::{first_order_corrections, two_row_convergence, two_row_exact_states, Symbol};
use crate::error::{Error, Result};
use crate::gt::{dim_unitary, enumerate_gt_patterns, DeltaWeight, GtPattern};
use crate::matrix::CoeffMatrix;
use crate::oracle::{convergence_report, exact_restricted_trace, skew_is_column_disjoint, Quantity, SplitOracle, TwoRowFamily};
use crate::perm::Permutation;
use crate::rep::{
    element_matrix, restricted_trace_straddling, straddling_block, two_row_closed_forms, Mode, Sector, TwoRowParams,
    DEFAULT_SECTOR_BUDGET,
};
use crate::splitbasis::{enumerate_split_labels, sub_diagrams, transformation_matrix};
use crate::surd::SurdSum;
use crate::tableaux::{enumerate_standard_tableaux, StandardTableau, YoungDiagram};

#[derive(Parser, Debug)]
#[command(name = "symsplit", version, about = "Split-basis representations of symmetric groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add float renderings next to exact values.
    #[arg(long, global = true)]
    pub float: bool,
    /// Largest sector (number of states) to build.
    #[arg(long, global = true, default_value_t = DEFAULT_SECTOR_BUDGET)]
    pub budget: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Limit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Published worked examples.
    Paper,
    Convergence,
    Dims,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Subduction coefficients from Young-Yamanouchi states to split states.
    Subduce {
        /// Big diagram, inline JSON or a file holding it.
        #[arg(long = "R")]
        big: String,
        #[arg(long)]
        m: usize,
        /// The r_n shape; all of them when omitted.
        #[arg(long)]
        sector: Option<String>,
    },
    /// Matrix of a permutation on a sector.
    Matrix {
        #[arg(long = "R")]
        big: String,
        #[arg(long)]
        m: usize,
        /// Core diagram: R minus the m + h window boxes.
        #[arg(long)]
        sector: String,
        /// Cycle notation, e.g. "(4,5)" or "(1,2,3)(4,5)".
        #[arg(long, default_value = "()")]
        sigma: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
    },
    /// Restricted trace of the straddling two-cycle for two-row diagrams.
    Trace {
        /// q1 q2 n1 r1
        #[arg(long = "two-row", num_args = 4, value_names = ["Q1", "Q2", "N1", "R1"])]
        two_row: Vec<usize>,
        #[arg(long)]
        m: usize,
    },
    /// Clebsch-Gordan coefficients.
    Cg {
        /// Parent pattern for a fundamental coupling.
        #[arg(long)]
        parent: Option<String>,
        /// Row index of the fundamental.
        #[arg(long)]
        a: Option<usize>,
        /// Child pattern.
        #[arg(long)]
        child: String,
        /// Tableau for a composite coefficient.
        #[arg(long)]
        tableau: Option<String>,
        /// Slot rows (a_m, ..., a_1) for a composite coefficient.
        #[arg(long)]
        slots: Option<String>,
    },
    /// List patterns, tableaux or split labels.
    Enumerate {
        /// Top row of the patterns.
        #[arg(long)]
        gt: Option<String>,
        #[arg(long)]
        delta: Option<String>,
        /// Shape whose standard tableaux to list.
        #[arg(long)]
        tableaux: Option<String>,
        /// Big diagram whose split labels to list (with --m).
        #[arg(long)]
        split: Option<String>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// First-order corrections.
    Correct {
        /// The two-row m = 2 example.
        #[arg(long = "two-row")]
        two_row: bool,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long = "R")]
        big: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        sector: Option<String>,
    },
    /// Run a verification suite.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

/// Process exit code for a library error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidShape(_)
        | Error::InvalidTableau(_)
        | Error::InvalidPattern(_)
        | Error::InvalidQuery(_)
        | Error::InvalidPermutation(_)
        | Error::Parse(_)
        | Error::Straddles(_) => 2,
        Error::BudgetExceeded(_) => 3,
        _ => 1,
    }
}

fn read_json_arg<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T> {
    let text = if arg.trim_start().starts_with('[') || arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")))
}

fn shape_arg(arg: &str) -> Result<YoungDiagram> {
    let rows: Vec<usize> = read_json_arg(arg)?;
    YoungDiagram::new(rows)
}

fn num(x: &SurdSum, float: bool) -> Value {
    if float {
        json!({"exact": x.to_string(), "float": x.to_f64()})
    } else {
        json!({"exact": x.to_string()})
    }
}

fn matrix_json(mat: &CoeffMatrix, float: bool) -> Value {
    let entries: Vec<Vec<Value>> =
        (0..mat.nrows()).map(|i| (0..mat.ncols()).map(|j| num(mat.get(i, j), float)).collect()).collect();
    json!({"rows": mat.row_labels, "cols": mat.col_labels, "entries": entries})
}

fn envelope(command: &str, input: Value, result: Value, warnings: Vec<String>) -> Value {
    json!({
        "schema": 1,
        "command": command,
        "input": input,
        "approx": !warnings.is_empty(),
        "warnings": warnings,
        "result": result,
    })
}

/// Run one command and return its JSON document.
pub fn run(cli: &Cli) -> Result<Value> {
    let float = cli.float;
    match &cli.command {
        Command::Subduce { big, m, sector } => {
            let big = shape_arg(big)?;
            let rns = match sector {
                Some(s) => vec![shape_arg(s)?],
                None => {
                    if *m > big.size() {
                        return Err(Error::InvalidQuery(format!("m = {m} exceeds |R|")));
                    }
                    sub_diagrams(&big, *m)
                }
            };
            let mut blocks = Vec::new();
            let mut warnings = Vec::new();
            for rn in &rns {
                let tm = transformation_matrix(&big, *m, rn)?;
                warnings.extend(tm.warnings.iter().cloned());
                let rows: Vec<Value> = tm
                    .rows
                    .iter()
                    .map(|r| json!({"rm_tableau": r.rm_tableau, "pattern": r.pattern, "multiplicity_index": r.multiplicity_index}))
                    .collect();
                let cols: Vec<String> = tm.cols.iter().map(|c| c.to_string()).collect();
                blocks.push(json!({
                    "rn": rn,
                    "rn_tableau": tm.rn_tableau,
                    "split_states": rows,
                    "tensor_states": cols,
                    "matrix": matrix_json(&tm.matrix, float),
                    "orthogonal": tm.matrix.is_orthogonal()?,
                }));
            }
            warnings.dedup();
            Ok(envelope("subduce", json!({"R": big, "m": m}), json!({"blocks": blocks}), warnings))
        }
        Command::Matrix { big, m, sector, sigma, mode } => {
            let big = shape_arg(big)?;
            let core = shape_arg(sector)?;
            let sec = Sector::with_budget(&big, *m, &core, cli.budget)?;
            let w = sec.m + sec.window;
            let parsed = Permutation::from_cycles(w, sigma)?;
            let mode = match mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Limit => Mode::Limit,
            };
            let mat = element_matrix(&sec, &parsed, mode)?;
            let states: Vec<Value> = sec
                .states
                .iter()
                .map(|s| {
                    json!({
                        "window": s.window,
                        "rn_tableau": s.rn_tableau,
                        "rm_tableau": s.rm.tableau,
                        "pattern": s.rm.pattern,
                        "multiplicity_index": s.multiplicity_index,
                    })
                })
                .collect();
            Ok(envelope(
                "matrix",
                json!({"R": big, "m": m, "core": core, "window": sec.window, "sigma": parsed.to_cycle_string(), "mode": format!("{mode:?}")}),
                json!({"states": states, "matrix": matrix_json(&mat, float)}),
                sec.warnings.clone(),
            ))
        }
        Command::Trace { two_row, m } => {
            let [q1, q2, n1, r1] = two_row[..] else {
                return Err(Error::InvalidQuery("--two-row takes q1 q2 n1 r1".into()));
            };
            let r2 = m.checked_sub(r1).ok_or_else(|| Error::InvalidShape(format!("r1 = {r1} exceeds m = {m}")))?;
            let p = TwoRowParams::new(q1, q2, n1, r1, r2)?;
            let cf = two_row_closed_forms(&p)?;
            let limit = restricted_trace_straddling(&p.big(), &p.rn(), &p.rm())?;
            let disjoint = skew_is_column_disjoint(&p.big(), &p.rn());
            let oracle = exact_restricted_trace(&p.big(), &p.rn(), &p.rm())?;
            let r = |x: crate::surd::Rational| num(&SurdSum::from_rational(x), float);
            let mut warnings = crate::splitbasis::regime_warnings(&p.big(), *m);
            if !disjoint {
                warnings.push("two removed boxes share a column; the closed forms do not apply".into());
            }
            Ok(envelope(
                "trace",
                json!({"q1": q1, "q2": q2, "n1": n1, "n2": p.n2, "r1": r1, "r2": r2, "m": m, "d": p.d()}),
                json!({
                    "leading": r(cf.leading),
                    "exact": r(cf.exact),
                    "exact_as_printed": r(cf.exact_as_printed),
                    "bound": cf.bound.map(r),
                    "lambda_m": cf.lambda_m,
                    "limit_trace": num(&limit, float),
                    "oracle_trace": num(&oracle, float),
                    "column_disjoint": disjoint,
                }),
                warnings,
            ))
        }
        Command::Cg { parent, a, child, tableau, slots } => {
            let child_p: GtPattern = read_json_arg(child)?;
            if let (Some(parent), Some(a)) = (parent, a) {
                let parent_p: GtPattern = read_json_arg(parent)?;
                let v = fundamental_cg_patterns(&parent_p, *a, &child_p)?;
                return Ok(envelope(
                    "cg",
                    json!({"parent": parent_p, "a": a, "fundamental": fundamental_pattern(parent_p.p(), *a)?, "child": child_p}),
                    json!({"value": num(&v, float)}),
                    vec![],
                ));
            }
            if let (Some(t), Some(s)) = (tableau, slots) {
                let rows: Vec<Vec<usize>> = read_json_arg(t)?;
                let tab = StandardTableau::from_rows(rows)?;
                let slots: Vec<usize> = read_json_arg(s)?;
                let v = composite_cg(&tab, &child_p, &slots)?;
                return Ok(envelope("cg", json!({"tableau": tab, "pattern": child_p, "slots_am_to_a1": slots}), json!({"value": num(&v, float)}), vec![]));
            }
            Err(Error::InvalidQuery("give --parent and --a, or --tableau and --slots".into()))
        }
        Command::Enumerate { gt, delta, tableaux, split, m } => {
            if let Some(w) = gt {
                let weight: Vec<i64> = read_json_arg(w)?;
                let mut pats = enumerate_gt_patterns(&weight)?;
                if let Some(dl) = delta {
                    let dw = DeltaWeight(read_json_arg(dl)?);
                    pats.retain(|p| crate::gt::delta_weight(p) == dw);
                }
                return Ok(envelope("enumerate", json!({"gt": weight, "delta": delta}), json!({"count": pats.len(), "patterns": pats}), vec![]));
            }
            if let Some(s) = tableaux {
                let shape = shape_arg(s)?;
                let tabs = enumerate_standard_tableaux(&shape);
                return Ok(envelope("enumerate", json!({"tableaux": shape}), json!({"count": tabs.len(), "tableaux": tabs}), vec![]));
            }
            if let Some(s) = split {
                let big = shape_arg(s)?;
                let m = m.ok_or_else(|| Error::InvalidQuery("--split needs --m".into()))?;
                let classes = enumerate_split_labels(&big, m)?;
                let out: Vec<Value> = classes
                    .iter()
                    .map(|c| json!({"rn": c.rn, "rm": c.rm, "removed": c.removed, "multiplicity": c.multiplicity, "patterns": c.patterns}))
                    .collect();
                return Ok(envelope("enumerate", json!({"split": big, "m": m}), json!({"classes": out}), crate::splitbasis::regime_warnings(&big, m)));
            }
            Err(Error::InvalidQuery("give one of --gt, --tableaux, --split".into()))
        }
        Command::Correct { two_row, d, big, m, sector } => {
            if *two_row {
                let d = d.ok_or_else(|| Error::InvalidQuery("--two-row needs --d".into()))?;
                let big = YoungDiagram::new(vec![5, 2])?;
                let corr = first_order_corrections(&big, 2, &YoungDiagram::new(vec![4, 1])?)?;
                let exact = two_row_exact_states(d)?;
                let conv = two_row_convergence(&[d, 2 * d])?;
                let states = |v: &[(crate::splitbasis::TensorSlotState, SurdSum)]| -> Vec<Value> {
                    v.iter().map(|(t, c)| json!({"tensor_state": t.to_string(), "coeff": num(c, float)})).collect()
                };
                return Ok(envelope(
                    "correct",
                    json!({"two_row": true, "d": d}),
                    json!({
                        "infinite_states": matrix_json(&corr.transform.clone().with_labels(
                            corr.terms[0].split.row_labels.clone(),
                            corr.tensor_states.iter().map(|t| t.to_string()).collect()), float),
                        "corrections": corrections_json(&corr, float),
                        "exact_states": {"symmetric": states(&exact.symmetric), "antisymmetric": states(&exact.antisymmetric)},
                        "deviation": conv.points[0],
                    }),
                    vec![],
                ));
            }
            let (Some(big), Some(m), Some(sector)) = (big, m, sector) else {
                return Err(Error::InvalidQuery("give --two-row --d, or --R --m --sector".into()));
            };
            let big = shape_arg(big)?;
            let rn = shape_arg(sector)?;
            let corr = first_order_corrections(&big, *m, &rn)?;
            let axial: Vec<Value> = corr.terms.iter().map(|t| json!({"symbol": t.symbol.to_string(), "axial_distance": t.symbol.axial_distance(&big)})).collect();
            Ok(envelope(
                "correct",
                json!({"R": big, "m": m, "rn": rn}),
                json!({"corrections": corrections_json(&corr, float), "symbols": axial}),
                crate::splitbasis::regime_warnings(&big, *m),
            ))
        }
        Command::Check { suite } => {
            let checks = match suite {
                Suite::Paper => worked_examples_suite(),
                Suite::Convergence => convergence_suite(),
                Suite::Dims => dims_suite(),
            };
            let all = checks.iter().all(|c| c.pass);
            let list: Vec<Value> = checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect();
            Ok(envelope("check", json!({"suite": format!("{suite:?}").to_lowercase()}), json!({"pass": all, "checks": list}), vec![]))
        }
    }
}

fn corrections_json(corr: &crate::corrections::FirstOrderCorrections, float: bool) -> Value {
    let per_state: Vec<Value> = (0..corr.rows.len())
        .map(|r| {
            let terms: Vec<Value> = corr
                .correction_of(r)
                .into_iter()
                .map(|(t, f)| {
                    let coeffs: Vec<Value> = f.0.iter().map(|(s, c)| json!({"symbol": s.to_string(), "coeff": num(c, float)})).collect();
                    json!({"state": corr.terms[0].split.row_labels[t], "terms": coeffs})
                })
                .collect();
            json!({"state": corr.terms.first().map(|t| t.split.row_labels[r].clone()), "delta": terms})
        })
        .collect();
    let nullspace: Vec<Value> = corr.nullspace.iter().map(|n| matrix_json(n, float)).collect();
    json!({"per_state": per_state, "residual_dof": corr.residual_dof, "nullspace": nullspace})
}

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, r: Result<(bool, String)>) -> Check {
    match r {
        Ok((pass, detail)) => Check { name: name.into(), pass, detail },
        Err(e) => Check { name: name.into(), pass: false, detail: format!("error: {e}") },
    }
}

fn y(v: &[usize]) -> Result<YoungDiagram> {
    YoungDiagram::new(v.to_vec())
}

pub fn worked_examples_suite() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("worked example patterns", (|| {
        let pats: Vec<GtPattern> = enumerate_gt_patterns(&[3, 1, 0, 0])?
            .into_iter()
            .filter(|p| crate::gt::delta_weight(p) == DeltaWeight(vec![1, 1, 1, 1]))
            .collect();
        Ok((pats.len() == 3, format!("{pats:?}")))
    })()));
    out.push(check("worked example CG values", (|| {
        let g = |r: Vec<Vec<i64>>| GtPattern::new(r);
        let sp1 = g(vec![vec![2, 1, 0, 0], vec![2, 0, 0], vec![1, 0], vec![0]])?;
        let sp2 = g(vec![vec![2, 1, 0, 0], vec![1, 1, 0], vec![1, 0], vec![0]])?;
        let m1 = g(vec![vec![3, 1, 0, 0], vec![3, 0, 0], vec![2, 0], vec![1]])?;
        let m2 = g(vec![vec![3, 1, 0, 0], vec![2, 1, 0], vec![2, 0], vec![1]])?;
        let m3 = g(vec![vec![3, 1, 0, 0], vec![2, 1, 0], vec![1, 1], vec![1]])?;
        let got = [
            fundamental_cg_patterns(&sp1, 1, &m1)?,
            fundamental_cg_patterns(&sp1, 1, &m2)?,
            fundamental_cg_patterns(&sp2, 1, &m2)?,
            fundamental_cg_patterns(&sp1, 1, &m3)?,
            fundamental_cg_patterns(&sp2, 1, &m3)?,
        ];
        let want = ["1/3*sqrt(3)", "-1/24*sqrt(6)", "3/8*sqrt(2)", "-1/8*sqrt(2)", "-1/8*sqrt(6)"];
        let ok = got.iter().zip(want).all(|(g, w)| g.to_string() == w);
        Ok((ok, got.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")))
    })()));
    out.push(check("worked example straddling block", (|| {
        let sec = Sector::new(&y(&[10, 7, 5, 3])?, 4, &y(&[8, 6, 4, 2])?)?;
        let blk = straddling_block(&sec)?;
        let b = StandardTableau::from_rows(vec![vec![1, 2, 4], vec![3]])?;
        let idx: Vec<usize> = (0..sec.dim()).filter(|&k| sec.states[k].window == [1] && sec.states[k].rm.tableau == b).collect();
        let sub = blk.submatrix(&idx, &idx);
        let vals = [sub.get(0, 0), sub.get(1, 1), sub.get(2, 2), sub.get(0, 1), sub.get(0, 2), sub.get(1, 2)];
        let want = ["1/3", "7/24", "1/8", "-1/24*sqrt(2)", "-1/24*sqrt(6)", "-1/12*sqrt(3)"];
        let ok = vals.iter().zip(want).all(|(v, w)| v.to_string() == w);
        Ok((ok, vals.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")))
    })()));
    out.push(check("two-row first-order corrections", (|| {
        let corr = first_order_corrections(&y(&[5, 2])?, 2, &y(&[4, 1])?)?;
        let x = &corr.terms[0].split;
        let ok = corr.terms[0].symbol == Symbol::new(1, 2)?
            && x.get(0, 1).to_string() == "1/2"
            && x.get(1, 0).to_string() == "-1/2"
            && x.get(0, 0).is_zero()
            && x.get(1, 1).is_zero();
        Ok((ok, format!("d[2] = {} [1,1]/d, d[1,1] = {} [2]/d", x.get(0, 1), x.get(1, 0))))
    })()));
    out
}

pub fn convergence_suite() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("trace within bound along q2=2, n1=1, r_m=[1,1]", (|| {
        let rep = convergence_report(Quantity::Trace, TwoRowFamily { q2: 2, n1: 1, r1: 1, r2: 1 }, &[4, 8, 16, 32])?;
        let ok = rep.rows.iter().all(|r| r.within_bound == Some(true) && r.closed_form_agrees == Some(true));
        Ok((ok, format!("exponent {:?}", rep.exponent)))
    })()));
    out.push(check("block angle decays like 1/d", (|| {
        let rep = convergence_report(Quantity::Block, TwoRowFamily { q2: 2, n1: 1, r1: 1, r2: 1 }, &[8, 16, 32, 64])?;
        let e = rep.exponent.unwrap_or(0.0);
        Ok((e >= 0.8, format!("exponent {e:.3}")))
    })()));
    out.push(check("first-order states converge like 1/d^2", (|| {
        let c = two_row_convergence(&[4, 8, 16, 32])?;
        Ok(((1.8..=2.2).contains(&c.first_order_exponent), format!("exponent {:.3}", c.first_order_exponent)))
    })()));
    out
}

pub fn dims_suite() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("p^m = sum Dim(s) d_s, p <= 4, m <= 5", (|| {
        for p in 1..=4usize {
            for m in 1..=5usize {
                let mut total: u128 = 0;
                for s in YoungDiagram::partitions(m, p) {
                    let top: Vec<i64> = s.padded(p)?.into_iter().map(|x| x as i64).collect();
                    total += dim_unitary(&top)? * s.dimension()?;
                }
                if total != (p as u128).pow(m as u32) {
                    return Ok((false, format!("p={p}, m={m}: {total}")));
                }
            }
        }
        Ok((true, "20 cases".into()))
    })()));
    out.push(check("hook lengths count tableaux, N <= 7", (|| {
        for n in 1..=7 {
            for s in YoungDiagram::partitions(n, n) {
                if s.dimension()? != enumerate_standard_tableaux(&s).len() as u128 {
                    return Ok((false, format!("{s}")));
                }
            }
        }
        Ok((true, "all partitions".into()))
    })()));
    out.push(check("oracle ranks, R with <= 5 boxes, column-disjoint", (|| {
        let mut n_checked = 0;
        for n in 2..=5 {
            for big in YoungDiagram::partitions(n, 3) {
                for m in 1..n.min(4) {
                    let mut o = SplitOracle::new(&big, m)?;
                    for rn in sub_diagrams(&big, m) {
                        if !skew_is_column_disjoint(&big, &rn) {
                            continue;
                        }
                        for rm in YoungDiagram::partitions(m, m) {
                            let got = o.multiplicity(&rn, &rm)?;
                            let want = crate::oracle::predicted_multiplicity(&big, &rn, &rm)?;
                            if got != want {
                                return Ok((false, format!("{big} {rn} {rm}: {got} vs {want}")));
                            }
                            n_checked += 1;
                        }
                    }
                }
            }
        }
        Ok((true, format!("{n_checked} triples")))
    })()));
    out
}

/// Parse arguments, run, print, and map errors to exit codes.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            let text = serde_json::to_string_pretty(&v).expect("JSON values serialize");
            let failed = matches!(cli.command, Command::Check { .. }) && v["result"]["pass"] == Value::Bool(false);
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text + "\n") {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => {
                    use std::io::Write;
                    let _ = writeln!(std::io::stdout().lock(), "{text}");
                }
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Value> {
        let cli = Cli::try_parse_from(std::iter::once("symsplit").chain(args.iter().copied())).expect("parses");
        run(&cli)
    }

    #[test]
    fn enumerate_worked_patterns() {
        let v = run_args(&["enumerate", "--gt", "[3,1,0,0]", "--delta", "[1,1,1,1]"]).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["result"]["count"], 3);
    }

    #[test]
    fn subduce_m0_is_identity() {
        let v = run_args(&["subduce", "--R", "[3,1]", "--m", "0"]).unwrap();
        let e = &v["result"]["blocks"][0]["matrix"]["entries"];
        assert_eq!(e[0][0]["exact"], "1");
    }

    #[test]
    fn invalid_shape_maps_to_exit_2() {
        let e = run_args(&["enumerate", "--tableaux", "[1,3]"]).unwrap_err();
        assert_eq!(exit_code(&e), 2);
        let e = run_args(&["matrix", "--R", "[10,7,5,3]", "--m", "4", "--sector", "[8,6,4,2]", "--budget", "3"]).unwrap_err();
        assert_eq!(exit_code(&e), 3);
    }

    #[test]
    fn matrix_output_is_deterministic() {
        let args = ["matrix", "--R", "[8,5]", "--m", "2", "--sector", "[6,4]", "--sigma", "(2,3)", "--float"];
        let a = serde_json::to_string(&run_args(&args).unwrap()).unwrap();
        let b = serde_json::to_string(&run_args(&args).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"approx\":true"));
    }
}
