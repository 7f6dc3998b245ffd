//! Command-line front end. `run` parses arguments, dispatches and renders;
//! the binary only prints what it returns.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::adele::{
    class_group_report, divide_class_with_witness, factor_prime, finite::DEFAULT_DENOMINATOR_CAP, is_global,
    strong_approx_reduce, ClassGroupConfig, FiniteAdele, NumberField,
};
use crate::derived::{
    dualizing_homology, dualizing_homology_labeled, i_shriek, j_shriek_homology, pi0_adjunction_check, FiniteComplexHomology,
    GradedExt,
};
use crate::error::{Error, Result};
use crate::monoid::{check_alpha_adjunction, monoid_ring, smash, AdjunctionCaps, CommMonoidWithZero, PointedSet};
use crate::simplicial::{
    basepoint_lift, dold_kan_gamma, em_homotopy_groups, normalized_chains, normalized_complex, reduced_chains,
    PointedSimplicialSet, SimplicialPointedSet,
};
use crate::verify::{self, Status, VerifyCorpus};
use crate::znf::{hyper_ext, hyper_ext_support, smith_normal_form, ChainComplex, FgAbelianGroup, GradedGroups, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "homalg", version, about = "Exact homological algebra at desk scale")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

/// JSON inputs are a file path, inline JSON, or `-` for stdin.
type Input = String;

#[derive(Debug, Args)]
pub struct AdeleArgs {
    #[arg(long)]
    field: Input,
    #[arg(long)]
    adele: Input,
    /// Overrides the precision recorded in the adele.
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_DENOMINATOR_CAP)]
    cap_denominator: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smith normal form `u·a·v = d` of an integer matrix.
    Snf {
        #[arg(long)]
        matrix: Input,
    },
    /// Homology of a chain complex.
    Homology {
        #[arg(long)]
        complex: Input,
    },
    /// `hyperExt^n(C, D)` for one degree or across the support.
    HyperExt {
        #[arg(long)]
        source: Input,
        #[arg(long)]
        target: Input,
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
    /// Smash product of two pointed sets.
    Smash {
        #[arg(long)]
        left: Input,
        #[arg(long)]
        right: Input,
    },
    /// Natural bijection `Hom(α s, a) ≅ Hom(s, α* a)`.
    AdjunctionCheck {
        #[arg(long)]
        set: Input,
        #[arg(long)]
        group: Input,
        #[arg(long, default_value_t = 5)]
        max_set_size: usize,
        #[arg(long, default_value_t = 8)]
        max_group_order: usize,
    },
    /// Monoid ring `ℤ[M]/(𝟎)` with its ring axioms checked.
    MonoidRing {
        #[arg(long)]
        monoid: Input,
    },
    /// Checks every simplicial identity of a truncated simplicial set.
    SimplicialValidate {
        #[arg(long)]
        input: Input,
    },
    /// Lifts a simplicial set with a chosen vertex to a simplicial pointed set.
    BasepointLift {
        #[arg(long)]
        input: Input,
    },
    /// `Γ C` together with the check `N Γ C = C`.
    DoldKan {
        #[arg(long)]
        complex: Input,
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Normalized chains of a pointed simplicial set and their homology.
    ReducedChains {
        #[arg(long)]
        input: Input,
        /// Keep the basepoint simplices (ordinary normalized chains).
        #[arg(long)]
        unreduced: bool,
    },
    /// Homotopy groups of the Eilenberg–MacLane object of a complex.
    EmPi {
        #[arg(long)]
        complex: Input,
    },
    /// Homology of the dualizing complex.
    Dualizing {
        #[arg(long)]
        homology: Input,
        #[arg(long)]
        field: Option<Input>,
    },
    /// `H_* j^! X` at a prime.
    JShriek {
        #[arg(long)]
        p: String,
        #[arg(long)]
        homology: Input,
    },
    /// `i^! X`.
    IShriek {
        #[arg(long)]
        homology: Input,
    },
    /// `Hom(H_0 C, a)` against `Ext⁰(C, a[0])`.
    Pi0Check {
        #[arg(long)]
        complex: Input,
        #[arg(long)]
        group: Input,
    },
    /// Splitting of a rational prime in a monogenic field.
    FactorPrime {
        #[arg(long)]
        field: Input,
        #[arg(long)]
        p: u64,
    },
    /// Strong approximation `x = λ + y` with `y` integral.
    Reduce {
        #[command(flatten)]
        adele: AdeleArgs,
    },
    /// `y` with `n·y ≡ x` modulo `K`.
    Divide {
        #[command(flatten)]
        adele: AdeleArgs,
        #[arg(long)]
        n: u64,
    },
    /// Searches for a global element matching the adele.
    IsGlobal {
        #[command(flatten)]
        adele: AdeleArgs,
        #[arg(long)]
        bound: String,
    },
    /// Ideal class group by enumeration up to the bound.
    ClassGroup {
        #[arg(long)]
        field: Input,
        /// Defaults to the Minkowski bound rounded up.
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, default_value_t = ClassGroupConfig::default().box_radius)]
        box_radius: i64,
    },
    /// Runs every acceptance criterion on the bundled corpus.
    CorpusVerify {
        /// Directory of `<name>.json` simplicial models replacing the bundled ones.
        #[arg(long)]
        corpus_dir: Option<PathBuf>,
        /// Class-group enumeration bound.
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Exit status and rendered streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok((code, stdout)) => Output { code, stdout, stderr: String::new() },
        Err(e) => Output { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read_input(input: &str) -> Result<String> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(input.to_string());
    }
    if input == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| Error::Schema(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(input).map_err(|e| Error::Schema(format!("{input}: {e}")))
}

fn parse_value(input: &str) -> Result<Value> {
    serde_json::from_str(&read_input(input)?).map_err(|e| Error::Schema(format!("{input}: {e}")))
}

/// Deserializes, keeping structural errors (bad tables, non-complexes) apart
/// from schema errors.
fn parse<T: DeserializeOwned>(input: &str) -> Result<T> {
    from_value(parse_value(input)?)
}

fn from_value<T: DeserializeOwned>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| {
        let msg = e.to_string();
        for (prefix, make) in [
            ("not a chain complex: ", Error::NotAComplex as fn(String) -> Error),
            ("invalid structure: ", Error::Invalid),
            ("dimension mismatch: ", Error::Dimension),
        ] {
            if let Some(rest) = msg.strip_prefix(prefix) {
                return make(rest.to_string());
            }
        }
        Error::Schema(msg)
    })
}

fn parse_field(input: &str) -> Result<NumberField> {
    let t = input.trim();
    if !t.is_empty() && t.chars().all(|c| c.is_ascii_digit() || c == '-' || c == ',' || c == ' ') && !Path::new(t).exists() {
        let coeffs = t
            .split(',')
            .map(|c| c.trim().parse::<BigInt>().map_err(|_| Error::Schema(format!("bad coefficient {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        return NumberField::new(coeffs);
    }
    parse(input)
}

/// Accepts `{"0": group, …}` or the output of `homology`.
fn parse_homology(input: &str) -> Result<FiniteComplexHomology> {
    let v = parse_value(input)?;
    if v.get("window").is_some() {
        let g: GradedGroups = from_value(v)?;
        return FiniteComplexHomology::from_pairs(g.nonzero().map(|(n, g)| (n, g.clone())));
    }
    from_value(v)
}

fn parse_simplicial(input: &str) -> Result<PointedSimplicialSet> {
    let v = parse_value(input)?;
    if v.get("basepoints").is_some() {
        let x: SimplicialPointedSet = from_value(v)?;
        return Ok(x.forget());
    }
    from_value(v)
}

fn parse_adele(a: &AdeleArgs) -> Result<(NumberField, FiniteAdele)> {
    let k = parse_field(&a.field)?;
    let mut v = parse_value(&a.adele)?;
    if let Some(n) = a.precision {
        match v.as_object_mut() {
            Some(o) => {
                o.insert("precision".into(), json!(n));
            }
            None => return Err(Error::Schema("adele must be a JSON object".into())),
        }
    }
    let x = FiniteAdele::from_json_with_cap(&k, &v, a.cap_denominator)?;
    Ok((k, x))
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn table(rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..rows.iter().map(Vec::len).max().unwrap_or(0))
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}

fn matrix_text(m: &IntMatrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("({}×{} empty)\n", m.rows(), m.cols());
    }
    let rows: Vec<Vec<String>> = (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect();
    table(&rows)
}

fn graded_rows(g: &GradedGroups) -> String {
    let mut rows = vec![vec!["degree".to_string(), "group".to_string()]];
    let (lo, hi) = g.window;
    for n in lo..=hi {
        rows.push(vec![n.to_string(), g.get(n).to_string()]);
    }
    table(&rows)
}

fn ext_rows(g: &GradedExt) -> String {
    let mut rows = vec![vec!["degree".to_string(), "rank".to_string(), "value".to_string()]];
    for (n, v) in &g.values {
        rows.push(vec![n.to_string(), v.rank.to_string(), v.to_string()]);
    }
    if g.values.is_empty() {
        rows.push(vec!["*".into(), "0".into(), "0".into()]);
    }
    table(&rows)
}

fn emit(format: Format, json: impl FnOnce() -> String, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => json(),
        Format::Table => text(),
    }
}

fn dispatch(cli: &Cli) -> Result<(i32, String)> {
    let f = cli.format;
    let ok = |s: String| Ok((0, s));
    match &cli.command {
        Command::Snf { matrix } => {
            let a: IntMatrix = parse(matrix)?;
            let s = smith_normal_form(&a);
            ok(emit(
                f,
                || pretty(&s),
                || {
                    let diag: Vec<String> = s.diagonal().iter().map(|d| d.to_string()).collect();
                    format!(
                        "diagonal: [{}]\nu:\n{}d:\n{}v:\n{}",
                        diag.join(", "),
                        matrix_text(&s.u),
                        matrix_text(&s.d),
                        matrix_text(&s.v)
                    )
                },
            ))
        }
        Command::Homology { complex } => {
            let c: ChainComplex = parse(complex)?;
            let h = c.homology();
            ok(emit(f, || pretty(&h), || graded_rows(&h)))
        }
        Command::HyperExt { source, target, degree } => {
            let c: ChainComplex = parse(source)?;
            let d: ChainComplex = parse(target)?;
            let degrees: Vec<i64> = match (degree, hyper_ext_support(&c, &d)) {
                (Some(n), _) => vec![*n],
                (None, Some((lo, hi))) => (lo..=hi).collect(),
                (None, None) => Vec::new(),
            };
            let values: BTreeMap<i64, FgAbelianGroup> = degrees.iter().map(|&n| (n, hyper_ext(&c, &d, n))).collect();
            ok(emit(
                f,
                || pretty(&values),
                || {
                    let mut rows = vec![vec!["degree".to_string(), "hyperExt".to_string()]];
                    rows.extend(values.iter().map(|(n, g)| vec![n.to_string(), g.to_string()]));
                    table(&rows)
                },
            ))
        }
        Command::Smash { left, right } => {
            let x: PointedSet = parse(left)?;
            let y: PointedSet = parse(right)?;
            let s = smash(&x, &y);
            ok(emit(
                f,
                || pretty(&s),
                || {
                    let labels: Vec<String> = (0..s.size()).map(|i| s.label(i)).collect();
                    format!("size: {}\nelements: {}\n", s.size(), labels.join(", "))
                },
            ))
        }
        Command::AdjunctionCheck { set, group, max_set_size, max_group_order } => {
            let s: PointedSet = parse(set)?;
            let a: FgAbelianGroup = parse(group)?;
            let caps = AdjunctionCaps { max_set_size: *max_set_size, max_group_order: *max_group_order };
            let w = check_alpha_adjunction(&s, &a, caps)?;
            ok(emit(
                f,
                || pretty(&w),
                || {
                    table(&[
                        vec!["|s|".into(), w.set_size.to_string()],
                        vec!["a".into(), w.group.to_string()],
                        vec!["#Hom_Ab(α s, a)".into(), w.hom_ab_count.to_string()],
                        vec!["#Hom_*(s, α* a)".into(), w.hom_pointed_count.to_string()],
                        vec!["naturality squares (set side)".into(), w.naturality_squares_in_set.to_string()],
                        vec!["naturality squares (group side)".into(), w.naturality_squares_in_group.to_string()],
                    ])
                },
            ))
        }
        Command::MonoidRing { monoid } => {
            let m: CommMonoidWithZero = parse(monoid)?;
            let r = monoid_ring(&m);
            r.check_ring_axioms()?;
            ok(emit(
                f,
                || pretty(&r),
                || {
                    let mut rows =
                        vec![std::iter::once("·".to_string()).chain(r.basis.iter().map(|b| format!("e{b}"))).collect::<Vec<_>>()];
                    for (i, row) in r.structure.iter().enumerate() {
                        let cells = row.iter().map(|c| c.map_or("0".to_string(), |k| format!("e{}", r.basis[k])));
                        rows.push(std::iter::once(format!("e{}", r.basis[i])).chain(cells).collect());
                    }
                    format!(
                        "rank {} (unit {})\n{}",
                        r.rank(),
                        r.unit.map_or("none".into(), |u| format!("e{}", r.basis[u])),
                        table(&rows)
                    )
                },
            ))
        }
        Command::SimplicialValidate { input } => {
            let x = parse_simplicial(input)?;
            let report = x.validate();
            let code = if report.is_valid() { 0 } else { 1 };
            let out = emit(
                f,
                || pretty(&json!({"valid": report.is_valid(), "violations": report.violations})),
                || {
                    if report.is_valid() {
                        "valid\n".into()
                    } else {
                        report.violations.iter().map(|v| format!("{v}\n")).collect()
                    }
                },
            );
            Ok((code, out))
        }
        Command::BasepointLift { input } => {
            let x = parse_simplicial(input)?;
            let lifted = basepoint_lift(&x)?;
            ok(emit(
                f,
                || pretty(&lifted),
                || {
                    let rows: Vec<Vec<String>> = std::iter::once(vec!["n".into(), "|X_n|".into(), "basepoint".into()])
                        .chain(
                            (0..=lifted.truncation())
                                .map(|n| vec![n.to_string(), lifted.data.sets[n].to_string(), lifted.basepoints[n].to_string()]),
                        )
                        .collect();
                    table(&rows)
                },
            ))
        }
        Command::DoldKan { complex, truncation } => {
            let c: ChainComplex = parse(complex)?;
            let top = truncation.unwrap_or_else(|| c.trimmed().highest_degree().max(0) as usize);
            let gamma = dold_kan_gamma(&c, top)?;
            let back = normalized_complex(&gamma)?;
            let roundtrip = back == c.padded(0, top as i64)?;
            let code = if roundtrip { 0 } else { 1 };
            let out = emit(
                f,
                || pretty(&json!({"gamma": gamma, "normalized": back, "roundtrip": roundtrip})),
                || {
                    let rows: Vec<Vec<String>> = std::iter::once(vec!["n".into(), "rank Γ_n".into(), "rank (NΓ)_n".into()])
                        .chain(
                            (0..=top)
                                .map(|n| vec![n.to_string(), gamma.ranks[n].to_string(), back.rank_at(n as i64).to_string()]),
                        )
                        .collect();
                    format!("{}N∘Γ = id: {roundtrip}\n", table(&rows))
                },
            );
            Ok((code, out))
        }
        Command::ReducedChains { input, unreduced } => {
            let x = basepoint_lift(&parse_simplicial(input)?)?;
            let c = if *unreduced { normalized_chains(&x)? } else { reduced_chains(&x)? };
            let h = c.homology();
            ok(emit(
                f,
                || pretty(&json!({"chains": c, "homology": h})),
                || {
                    let rows: Vec<Vec<String>> = std::iter::once(vec!["degree".into(), "rank".into(), "homology".into()])
                        .chain(
                            (0..c.levels().len())
                                .map(|n| vec![n.to_string(), c.levels()[n].to_string(), h.get(n as i64).to_string()]),
                        )
                        .collect();
                    table(&rows)
                },
            ))
        }
        Command::EmPi { complex } => {
            let c: ChainComplex = parse(complex)?;
            let pi = em_homotopy_groups(&c)?;
            ok(emit(f, || pretty(&pi), || graded_rows(&pi)))
        }
        Command::Dualizing { homology, field } => {
            let x = parse_homology(homology)?;
            match field {
                None => {
                    let d = dualizing_homology(&x);
                    ok(emit(f, || pretty(&d), || ext_rows(&d)))
                }
                Some(field) => {
                    let k = parse_field(field)?;
                    let d = dualizing_homology_labeled(&x, "𝒪_K");
                    ok(emit(
                        f,
                        || pretty(&json!({"field": k, "values": d})),
                        || format!("K = {k}, disc {}\n{}", k.disc(), ext_rows(&d)),
                    ))
                }
            }
        }
        Command::JShriek { p, homology } => {
            let p: BigInt = p.parse().map_err(|_| Error::Schema(format!("bad prime {p:?}")))?;
            let d = j_shriek_homology(&p, &parse_homology(homology)?)?;
            ok(emit(f, || pretty(&d), || ext_rows(&d)))
        }
        Command::IShriek { homology } => {
            let v = i_shriek(&parse_homology(homology)?);
            ok(emit(f, || pretty(&v), || format!("{v} (rank {})\n", v.rank)))
        }
        Command::Pi0Check { complex, group } => {
            let c: ChainComplex = parse(complex)?;
            let a: FgAbelianGroup = parse(group)?;
            let w = pi0_adjunction_check(&c, &a)?;
            let code = if w.agrees { 0 } else { 1 };
            let out = emit(
                f,
                || pretty(&w),
                || {
                    table(&[
                        vec!["H_0".into(), w.h0.to_string()],
                        vec!["Hom(H_0, a)".into(), w.hom_side.to_string()],
                        vec!["Ext⁰(C, a[0])".into(), w.hyper_ext_side.to_string()],
                        vec!["agrees".into(), w.agrees.to_string()],
                    ])
                },
            );
            Ok((code, out))
        }
        Command::FactorPrime { field, p } => {
            let k = parse_field(field)?;
            let s = factor_prime(&k, *p)?;
            ok(emit(
                f,
                || pretty(&s),
                || {
                    let mut rows = vec![vec!["factor".to_string(), "e".to_string(), "f".to_string()]];
                    for pf in &s.factors {
                        let one =
                            crate::adele::PrimeSplit { p: s.p, factors: vec![crate::adele::PrimeFactor { e: 1, ..pf.clone() }] };
                        rows.push(vec![one.to_string(), pf.e.to_string(), pf.f.to_string()]);
                    }
                    format!("{} mod {}: {s}\n{}", k.poly_string(), s.p, table(&rows))
                },
            ))
        }
        Command::Reduce { adele } => {
            let (_, x) = parse_adele(adele)?;
            let (lambda, y) = strong_approx_reduce(&x)?;
            ok(emit(f, || pretty(&json!({"lambda": lambda, "y": y.to_json()})), || format!("λ = {lambda}\ny = {y}\n")))
        }
        Command::Divide { adele, n } => {
            let (_, x) = parse_adele(adele)?;
            let (y, mu) = divide_class_with_witness(&x, *n)?;
            ok(emit(f, || pretty(&json!({"y": y.to_json(), "witness": mu})), || format!("y = {y}\n{n}·y - x = {mu}\n")))
        }
        Command::IsGlobal { adele, bound } => {
            let (_, x) = parse_adele(adele)?;
            let d: BigInt = bound.parse().map_err(|_| Error::Schema(format!("bad bound {bound:?}")))?;
            let found = is_global(&x, &d);
            ok(emit(
                f,
                || pretty(&json!({"global": found})),
                || match &found {
                    Some(l) => format!("global: λ = {l}\n"),
                    None => format!("no global element with denominator dividing {d}\n"),
                },
            ))
        }
        Command::ClassGroup { field, bound, box_radius } => {
            let k = parse_field(field)?;
            let b = bound.unwrap_or_else(|| (k.minkowski_bound().ceil() as u64).max(1));
            let config = ClassGroupConfig { box_radius: *box_radius, ..ClassGroupConfig::default() };
            let r = class_group_report(&k, b, &config)?;
            ok(emit(
                f,
                || pretty(&r),
                || {
                    let factors: Vec<String> = r.group.invariant_factors().iter().map(|d| d.to_string()).collect();
                    format!(
                    "K = {k}\nMinkowski bound: {:.4}\nbound: {}\ngenerators: {}\nrelations: {}\nCl(K) = {} (invariant factors [{}])\n",
                    r.minkowski_bound,
                    r.bound,
                    r.generators.len(),
                    r.relations,
                    r.group,
                    factors.join(", ")
                )
                },
            ))
        }
        Command::CorpusVerify { corpus_dir, bound, seed } => {
            let mut corpus = VerifyCorpus::bundled()?;
            if let Some(dir) = corpus_dir {
                for (name, model) in corpus.simplicial.iter_mut() {
                    let path = dir.join(format!("{name}.json"));
                    if path.exists() {
                        *model = parse_simplicial(path.to_str().ok_or_else(|| Error::Schema("non-UTF-8 path".into()))?)?;
                    }
                }
            }
            corpus.class_group_bound = *bound;
            if let Some(s) = seed {
                corpus.seed = *s;
            }
            let reports = verify::run_all(&corpus);
            let code = if reports.iter().any(|r| r.status == Status::Fail) {
                1
            } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
                3
            } else {
                0
            };
            // timings vary between runs, so JSON reports omit them
            let out = emit(
                f,
                || {
                    let v: Vec<Value> = reports
                        .iter()
                        .map(|r| json!({"id": r.id, "title": r.title, "status": r.status, "detail": r.detail}))
                        .collect();
                    pretty(&v)
                },
                || {
                    reports
                        .iter()
                        .map(|r| {
                            format!(
                                "[{}] {:>2}. {}{}\n",
                                match r.status {
                                    Status::Pass => "PASS",
                                    Status::Fail => "FAIL",
                                    Status::Inconclusive => "INCONCLUSIVE",
                                },
                                r.id,
                                r.title,
                                if r.detail.is_empty() { String::new() } else { format!(": {}", r.detail) }
                            )
                        })
                        .collect()
                },
            );
            Ok((code, out))
        }
    }
}
