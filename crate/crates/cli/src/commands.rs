//! Subcommand definitions and their implementations.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use qmix_core::criteria::{coset_report, dual_condition, one_generator_verdict, q1_scan, tau, two_generator_verdict};
use qmix_core::dense::{is_uniform_mixing_dense, Adjacency};
use qmix_core::limits::DENSE_CAP;
use qmix_core::scheme::{enumerate_families, KrawtchoukTable, SchemeGraphSpec};
use qmix_core::stars::{global_star_check, local_mixing_times, star_transition};
use qmix_core::times::mixing_time_report;
use qmix_core::walk::{mullin_verdict, scheme_transition_class};
use qmix_core::zq::{all_vectors, minimum_distance, Submodule, ZqVector};
use qmix_core::{cayley::CayleyGraph, WalkTime};

use crate::error::{CliError, CliResult};
use crate::graph::{load_generators, run_check, Graph, Report};
use crate::output::{object, Format, Output};
use crate::spec::{Generators, GraphSpec};

#[derive(Debug, Parser)]
#[command(name = "qmix", version, about = "Uniform mixing of continuous-time quantum walks")]
pub struct Cli {
    /// Output format; defaults to a table on a terminal and JSON otherwise.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Worker threads for parallel work (defaults to all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for sampled surveys.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Include wall-clock times in reports (makes output run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StarMode {
    Global,
    Local,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether U(t) is flat for one graph.
    Check {
        #[arg(long)]
        graph: GraphSpec,
        #[arg(long)]
        time: WalkTime,
        /// Also run the dense oracle when the graph has at most 1024 vertices.
        #[arg(long)]
        cross_check: bool,
    },
    /// Run a catalog or a sampled scan.
    Survey(SurveyArgs),
    /// Mixing times of a linear Cayley graph from the gcd of its F_g polynomials.
    Times {
        #[arg(long)]
        graph: GraphSpec,
        #[arg(long = "scan-n", default_value_t = 50)]
        scan_n: u32,
    },
    /// Tabulate the binomial-condition families of distance graphs.
    Families {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
    },
    /// Emit the Krawtchouk eigenmatrix of H(d, q).
    Krawtchouk {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: u32,
    },
    /// Closed-form, brute-force and coset verdicts for H(d, q)/Γ.
    Characterize {
        #[arg(long)]
        q: u32,
        /// File with one generator per line.
        #[arg(long, conflicts_with = "gens", required_unless_present = "gens")]
        generators: Option<String>,
        /// Inline generators, `;`-separated.
        #[arg(long)]
        gens: Option<String>,
        /// Defaults to the earliest mixing time of K_q.
        #[arg(long)]
        time: Option<WalkTime>,
    },
    /// Global or local mixing times of the star K_{1,n}.
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = StarMode::Global)]
        mode: StarMode,
        #[arg(long, default_value_t = 4)]
        count: usize,
    },
    /// Dense check of the m-th Cartesian power of K_{1,3}.
    ClawPower {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        time: WalkTime,
    },
}

#[derive(Debug, Args)]
#[group(skip)]
pub struct SurveyArgs {
    #[command(flatten)]
    pub mode: SurveyMode,
    /// Dimension of the ambient space Z_q^d.
    #[arg(long, default_value_t = 6)]
    pub d: usize,
    /// Modulus (one-generator survey and scan).
    #[arg(long, default_value_t = 3)]
    pub q: u32,
    /// Random submodules drawn by the scan.
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    /// Largest generator count drawn by the scan.
    #[arg(long, default_value_t = 2)]
    pub max_rank: usize,
}

#[derive(Debug, Args)]
#[group(id = "mode", required = true, multiple = false)]
pub struct SurveyMode {
    /// Complete graphs, Hamming graphs and claw powers at their known times.
    #[arg(long)]
    pub known_examples: bool,
    /// Every rank-2 ⟨a,b⟩ ⊂ Z_3^d (up to coordinate order): closed form vs oracle.
    #[arg(long)]
    pub two_gen: bool,
    /// Every ⟨a⟩ ⊂ Z_q^d of weight ≥ 3: closed form vs oracle.
    #[arg(long)]
    pub one_gen: bool,
    /// Random submodules: does Γ's own weight identity decide every coset?
    #[arg(long)]
    pub q1_scan: bool,
}

fn report_value(r: &Report) -> CliResult<Value> {
    Ok(serde_json::to_value(r)?)
}

fn big_value(x: &BigInt) -> Value {
    x.to_i64().map(Value::from).unwrap_or_else(|| Value::String(x.to_string()))
}

fn summary_row(instances: usize, pass: usize) -> Value {
    object([
        ("summary", json!("total")),
        ("instances", json!(instances)),
        ("pass", json!(pass)),
        ("fail", json!(instances - pass)),
    ])
}

fn with_summary(rows: Vec<Value>, pass: usize) -> Output {
    let summary = summary_row(rows.len(), pass);
    let document = object([("reports", Value::Array(rows.clone())), ("summary", summary.clone())]);
    let mut all = rows;
    all.push(summary);
    Output { document, rows: all }
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Check { graph, time, cross_check } => {
            Ok(Output::single(report_value(&run_check(graph, time, *cross_check, cli.timings)?)?))
        }
        Command::Survey(args) => survey(args, cli),
        Command::Times { graph, scan_n } => times(graph, *scan_n),
        Command::Families { q, kmax } => families(*q, *kmax),
        Command::Krawtchouk { d, q } => krawtchouk(*d, *q),
        Command::Characterize { q, generators, gens, time } => {
            let source = match (generators, gens) {
                (Some(path), _) => Generators::File(path.clone()),
                (None, Some(list)) => match format!("quotient q{q} gens={list}").parse::<GraphSpec>()? {
                    GraphSpec::Quotient { generators, .. } => generators,
                    _ => unreachable!("quotient spec"),
                },
                (None, None) => return Err(CliError::Usage("give --generators or --gens".into())),
            };
            characterize(*q, source, time.as_ref())
        }
        Command::Star { n, mode, count } => star(*n, *mode, *count),
        Command::ClawPower { m, time } => {
            let report = run_check(&GraphSpec::ClawPower { m: *m }, time, false, cli.timings)?;
            Ok(Output::single(report_value(&report)?))
        }
    }
}

// ---------------------------------------------------------------------------

fn known_examples() -> Vec<(GraphSpec, WalkTime)> {
    let mut out = Vec::new();
    for (q, d_max) in [(2u32, 8usize), (3, 5), (4, 4)] {
        for d in 1..=d_max {
            out.push((GraphSpec::Hamming { d, q }, tau(q).expect("q in {2,3,4}")));
        }
    }
    let claw: WalkTime = "2pi/sqrt27".parse().expect("valid time");
    out.push((GraphSpec::Star { n: 3 }, claw));
    out.push((GraphSpec::ClawPower { m: 2 }, claw));
    out
}

/// Nondecreasing sequences of length `len` over `0..base`.
fn multisets(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; len];
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..len).rev().find(|&i| cur[i] + 1 < base) else { return out };
        let v = cur[pos] + 1;
        for c in &mut cur[pos..] {
            *c = v;
        }
    }
}

/// Oracle verdict at `t` for `H(d,q)/Γ`: dense when small, Mullin otherwise.
fn quotient_oracle(gamma: &Submodule, t: &WalkTime) -> CliResult<(bool, &'static str)> {
    let order = Graph::Quotient(gamma.clone()).order()?;
    if order <= DENSE_CAP as u128 {
        let adj = Adjacency::hamming_quotient(gamma)?;
        Ok((adj.spectrum().local_verdict(0, t.value()).flat, "dense-oracle"))
    } else {
        Ok((mullin_verdict(gamma, t)?.flat, "mullin"))
    }
}

fn two_gen_rows(d: usize) -> CliResult<Vec<Value>> {
    let t = tau(3)?;
    let pairs: Vec<(ZqVector, ZqVector)> = multisets(9, d)
        .into_iter()
        .map(|rows| {
            let a = ZqVector::from_residues(3, rows.iter().map(|&r| (r / 3) as u32).collect())?;
            let b = ZqVector::from_residues(3, rows.iter().map(|&r| (r % 3) as u32).collect())?;
            Ok((a, b))
        })
        .collect::<qmix_core::Result<_>>()?;
    let rows: Vec<Option<Value>> = pairs
        .into_par_iter()
        .map(|(a, b)| -> CliResult<Option<Value>> {
            let gamma = Submodule::new(3, d, vec![a.clone(), b.clone()])?;
            if gamma.rank()? != 2 || minimum_distance(&gamma)? < 3 {
                return Ok(None);
            }
            let symbolic = two_generator_verdict(&a, &b)?;
            let (oracle, method) = quotient_oracle(&gamma, &t)?;
            Ok(Some(object([
                ("a", json!(a.to_string())),
                ("b", json!(b.to_string())),
                ("symbolic", json!(symbolic)),
                ("oracle", json!(oracle)),
                ("oracle_method", json!(method)),
                ("agree", json!(symbolic == oracle)),
            ])))
        })
        .collect::<CliResult<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

fn one_gen_rows(q: u32, d: usize) -> CliResult<Vec<Value>> {
    let t = tau(q)?;
    let vectors: Vec<ZqVector> = all_vectors(q, d).filter(|a| a.weight() >= 3).collect();
    let rows: Vec<Option<Value>> = vectors
        .into_par_iter()
        .map(|a| -> CliResult<Option<Value>> {
            let gamma = Submodule::cyclic(a.clone());
            if minimum_distance(&gamma)? < 3 {
                return Ok(None);
            }
            let symbolic = one_generator_verdict(&a, q)?;
            let (oracle, method) = match quotient_oracle(&gamma, &t) {
                Ok(v) => v,
                Err(CliError::Core(qmix_core::Error::NoUnitPivot(_))) => return Ok(None),
                Err(e) => return Err(e),
            };
            Ok(Some(object([
                ("a", json!(a.to_string())),
                ("symbolic", json!(symbolic)),
                ("oracle", json!(oracle)),
                ("oracle_method", json!(method)),
                ("agree", json!(symbolic == oracle)),
            ])))
        })
        .collect::<CliResult<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

fn count_agreeing(rows: &[Value], key: &str) -> usize {
    rows.iter().filter(|r| r[key] == json!(true)).count()
}

fn survey(args: &SurveyArgs, cli: &Cli) -> CliResult<Output> {
    if args.mode.known_examples {
        let reports: Vec<Value> = known_examples()
            .par_iter()
            .map(|(spec, t)| report_value(&run_check(spec, t, false, cli.timings)?))
            .collect::<CliResult<_>>()?;
        let pass = count_agreeing(&reports, "flat");
        Ok(with_summary(reports, pass))
    } else if args.mode.two_gen {
        let rows = two_gen_rows(args.d)?;
        let pass = count_agreeing(&rows, "agree");
        Ok(with_summary(rows, pass))
    } else if args.mode.one_gen {
        let rows = one_gen_rows(args.q, args.d)?;
        let pass = count_agreeing(&rows, "agree");
        Ok(with_summary(rows, pass))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let report = q1_scan(args.q, args.d, args.max_rank, args.samples, &mut rng)?;
        let rows: Vec<Value> = report
            .counterexamples
            .iter()
            .map(|c| {
                let gens: Vec<String> = c.generators.iter().map(|g| g.to_string()).collect();
                object([
                    ("generators", json!(gens.join(";"))),
                    ("own_identity", json!(c.own_identity)),
                    ("all_cosets", json!(c.all_cosets)),
                ])
            })
            .collect();
        let document = object([
            ("q", json!(report.q)),
            ("d", json!(report.d)),
            ("seed", json!(cli.seed)),
            ("samples", json!(report.samples)),
            ("examined", json!(report.examined)),
            ("counterexamples", Value::Array(rows.clone())),
        ]);
        let summary = object([
            ("summary", json!("q1-scan")),
            ("examined", json!(report.examined)),
            ("counterexamples", json!(rows.len())),
        ]);
        let mut all = rows;
        all.push(summary);
        Ok(Output { document, rows: all })
    }
}

// ---------------------------------------------------------------------------

fn times(spec: &GraphSpec, scan_n: u32) -> CliResult<Output> {
    let graph = Graph::build(spec)?;
    let set = graph
        .connection_set()?
        .ok_or_else(|| CliError::Usage(format!("'{spec}' is not a Cayley graph on Z_q^d")))?;
    let report = mixing_time_report(&CayleyGraph::new(set)?, scan_n)?;
    let rows: Vec<Value> = report
        .cyclotomic_times
        .iter()
        .map(|c| object([("n", json!(c.n)), ("multiplicity", json!(c.multiplicity)), ("time", json!(c.time.to_string()))]))
        .collect();
    let roots: Vec<Value> = report
        .real_roots_z
        .iter()
        .map(|r| object([("lower", json!(r.lower)), ("upper", json!(r.upper)), ("exact", json!(r.exact))]))
        .collect();
    let document = object([
        ("graph", json!(spec.to_string())),
        ("q", json!(report.q)),
        ("d", json!(report.d)),
        ("scan_n", json!(scan_n)),
        ("gcd_degree", json!(report.gcd_degree)),
        ("gcd", Value::Array(report.gcd.coeffs().iter().map(big_value).collect())),
        ("cyclotomic_times", Value::Array(rows.clone())),
        ("real_roots_z", Value::Array(roots)),
        ("multiplicity_at_one", json!(report.multiplicity_at_one)),
        ("multiplicity_at_minus_one", json!(report.multiplicity_at_minus_one)),
    ]);
    Ok(Output { document, rows })
}

fn families(q: u32, kmax: u32) -> CliResult<Output> {
    let rows = enumerate_families(kmax, q)?
        .into_iter()
        .map(|inst| -> CliResult<Value> {
            let spec = SchemeGraphSpec::new(inst.d, q, &[inst.r])?;
            let verdict = scheme_transition_class(inst.d, q, &spec.eigenvalues()?, &inst.time)?.verdict();
            Ok(object([
                ("q", json!(q)),
                ("k", json!(inst.k)),
                ("d", json!(inst.d)),
                ("r", json!(inst.r)),
                ("time", json!(inst.time.to_string())),
                ("condition", json!(inst.condition.satisfied)),
                ("epsilon", json!(inst.condition.epsilon)),
                ("flat", json!(verdict.flat)),
                ("method", serde_json::to_value(verdict.method)?),
            ]))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Output::from_rows(rows))
}

fn krawtchouk(d: usize, q: u32) -> CliResult<Output> {
    let table = KrawtchoukTable::new(d, q)?;
    let matrix: Vec<Vec<Value>> = (0..=d).map(|s| (0..=d).map(|r| big_value(table.get(r, s))).collect()).collect();
    let rows: Vec<Value> = matrix
        .iter()
        .enumerate()
        .map(|(s, row)| {
            let mut map = serde_json::Map::new();
            map.insert("s".into(), json!(s));
            for (r, v) in row.iter().enumerate() {
                map.insert(format!("p{r}"), v.clone());
            }
            Value::Object(map)
        })
        .collect();
    let document = object([
        ("d", json!(d)),
        ("q", json!(q)),
        ("layout", json!("matrix[s][r] = p_r(s)")),
        ("matrix", json!(matrix)),
    ]);
    Ok(Output { document, rows })
}

fn characterize(q: u32, source: Generators, time: Option<&WalkTime>) -> CliResult<Output> {
    let gens = load_generators(q, &source)?;
    let d = gens[0].dim();
    let gamma = Submodule::new(q, d, gens.clone())?;
    let t = match time {
        Some(t) => *t,
        None => tau(q)?,
    };
    let distance = minimum_distance(&gamma)?;
    if distance < 3 {
        return Err(qmix_core::Error::DistanceTooSmall(distance).into());
    }
    let rank = gamma.systematic_form().map(|s| s.rank()).ok();
    let symbolic = if tau(q).ok() == Some(t) {
        match (rank, q) {
            (Some(1), 2..=4) => Some(one_generator_verdict(&gens[0], q)?),
            (Some(2), 3) if gens.len() == 2 => Some(two_generator_verdict(&gens[0], &gens[1])?),
            _ => None,
        }
    } else {
        None
    };
    let graph = Graph::Quotient(gamma.clone());
    let brute = if graph.order()? <= DENSE_CAP as u128 {
        let v = is_uniform_mixing_dense(&graph.adjacency()?, t.value());
        Some(json!({"flat": v.flat, "method": v.method, "max_deviation": v.max_deviation}))
    } else if rank.is_some() && t.as_rational().is_some() {
        let v = mullin_verdict(&gamma, &t)?;
        Some(json!({"flat": v.flat, "method": v.method, "max_deviation": v.max_deviation}))
    } else {
        None
    };
    let cosets = if matches!(q, 2..=4) && rank.is_some() {
        let rep = coset_report(&gamma)?;
        let failures: Vec<String> = rep.failures.iter().map(|f| f.to_string()).collect();
        Some(json!({
            "cosets": rep.cosets,
            "distinct_enumerators": rep.distinct_enumerators,
            "satisfied": rep.satisfied,
            "failures": failures,
        }))
    } else {
        None
    };
    let dual = if rank.is_some() && t.as_rational().is_some() { Some(dual_condition(&gamma, &t)?) } else { None };
    let gens_text: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    let row = object([
        ("graph", json!(format!("quotient q{q} gens={}", gens_text.join(";")))),
        ("time", json!(t.to_string())),
        ("minimum_distance", json!(distance)),
        ("verdict_symbolic", json!(symbolic)),
        ("verdict_bruteforce", brute.unwrap_or(Value::Null)),
        ("dual_condition", json!(dual)),
        ("coset_report", cosets.unwrap_or(Value::Null)),
    ]);
    Ok(Output::single(row))
}

fn star(n: usize, mode: StarMode, count: usize) -> CliResult<Output> {
    let (label, times) = match mode {
        StarMode::Global => ("global", global_star_check(n, count)?),
        StarMode::Local => ("local", local_mixing_times(n, count)?),
    };
    let rows = times
        .into_iter()
        .map(|t| -> CliResult<Value> {
            let st = star_transition(n, t)?;
            let v = if mode == StarMode::Global { st.verdict() } else { st.centre_verdict() };
            Ok(object([
                ("n", json!(n)),
                ("mode", json!(label)),
                ("time", json!(t)),
                ("flat", json!(v.flat)),
                ("max_deviation", json!(v.max_deviation)),
                ("method", serde_json::to_value(v.method)?),
            ]))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Output::from_rows(rows))
}
