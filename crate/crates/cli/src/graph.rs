//! Building graphs from specs and deciding flatness with the cheapest method.

use std::fs;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use qmix_core::cayley::{quotient_connection_set, CayleyGraph, ConnectionSet};
use qmix_core::criteria::{one_generator_verdict, tau, two_generator_verdict};
use qmix_core::dense::{is_uniform_mixing_dense, Adjacency};
use qmix_core::limits::{pow_saturating, DENSE_CAP};
use qmix_core::scheme::{union_class_graph_in, SchemeGraphSpec};
use qmix_core::stars::star_transition;
use qmix_core::walk::{coset_enumerators, mullin_verdict, scheme_transition_class, transition_row, MullinEvaluator};
use qmix_core::zq::{minimum_distance, parse_vectors, Submodule, ZqVector};
use qmix_core::{Method, MixingVerdict, WalkTime};

use crate::error::{CliError, CliResult};
use crate::spec::{Generators, GraphSpec};

/// A graph ready for checking.
#[derive(Clone, Debug)]
pub enum Graph {
    /// Union of distance classes of `H(d, q)` (Hamming graphs included).
    Scheme(SchemeGraphSpec),
    Cayley(ConnectionSet),
    Quotient(Submodule),
    Star(usize),
    ClawPower(usize),
    Cartesian(Box<Graph>, Box<Graph>),
}

/// Connection-set file contents.
#[derive(Debug, Deserialize)]
struct ConnectionFile {
    q: u32,
    d: usize,
    elements: Vec<Vec<i64>>,
}

fn read(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })
}

pub fn load_generators(q: u32, generators: &Generators) -> CliResult<Vec<ZqVector>> {
    let vectors = match generators {
        Generators::Inline(vs) => vs.clone(),
        Generators::File(path) => parse_vectors(q, &read(path)?)?,
    };
    if vectors.is_empty() {
        return Err(CliError::Spec("no generators given".into()));
    }
    Ok(vectors)
}

impl Graph {
    pub fn build(spec: &GraphSpec) -> CliResult<Graph> {
        Ok(match spec {
            GraphSpec::Hamming { d, q } => Graph::Scheme(SchemeGraphSpec::new(*d, *q, &[1])?),
            GraphSpec::Distance { d, q, classes } => Graph::Scheme(SchemeGraphSpec::new(*d, *q, classes)?),
            GraphSpec::Union3 { k, i, d } => {
                let dim = d.unwrap_or(2 * *k as usize + 1);
                Graph::Scheme(union_class_graph_in(dim, *k, *i)?.spec)
            }
            GraphSpec::Quotient { q, generators } => {
                let gens = load_generators(*q, generators)?;
                let d = gens[0].dim();
                Graph::Quotient(Submodule::new(*q, d, gens)?)
            }
            GraphSpec::Star { n } => Graph::Star(*n),
            GraphSpec::ClawPower { m } => Graph::ClawPower(*m),
            GraphSpec::CayleyFromFile { path } => {
                let file: ConnectionFile = serde_json::from_str(&read(path)?)?;
                let elements = file
                    .elements
                    .iter()
                    .map(|c| ZqVector::new(file.q, c))
                    .collect::<Result<Vec<_>, _>>()?;
                let set = ConnectionSet::new(file.q, file.d, elements)?;
                let report = set.validate();
                if !report.is_ok() {
                    return Err(CliError::Spec(format!("{path}: connection set must be inverse-closed and avoid 0")));
                }
                Graph::Cayley(set)
            }
            GraphSpec::Cartesian(a, b) => Graph::Cartesian(Box::new(Graph::build(a)?), Box::new(Graph::build(b)?)),
        })
    }

    /// Number of vertices, saturating.
    pub fn order(&self) -> CliResult<u128> {
        Ok(match self {
            Graph::Scheme(s) => pow_saturating(s.q(), s.dim()),
            Graph::Cayley(c) => pow_saturating(c.q(), c.dim()),
            Graph::Quotient(g) => pow_saturating(g.q(), g.dim()) / g.size()? as u128,
            Graph::Star(n) => *n as u128 + 1,
            Graph::ClawPower(m) => pow_saturating(4, *m),
            Graph::Cartesian(a, b) => a.order()?.saturating_mul(b.order()?),
        })
    }

    /// The connection set when the graph is a Cayley graph on `Z_q^d`.
    pub fn connection_set(&self) -> CliResult<Option<ConnectionSet>> {
        Ok(match self {
            Graph::Scheme(s) => Some(s.connection_set()?),
            Graph::Cayley(c) => Some(c.clone()),
            Graph::Quotient(g) => Some(quotient_connection_set(g)?),
            _ => None,
        })
    }

    pub fn adjacency(&self) -> CliResult<Adjacency> {
        let order = self.order()?;
        if order > DENSE_CAP as u128 {
            return Err(qmix_core::Error::MatrixTooLarge { n: order.min(usize::MAX as u128) as usize, cap: DENSE_CAP }.into());
        }
        Ok(match self {
            Graph::Scheme(s) => Adjacency::distance_graph(s.dim(), s.q(), s.classes())?,
            Graph::Cayley(c) => Adjacency::cayley(c)?,
            Graph::Quotient(g) => Adjacency::hamming_quotient(g)?,
            Graph::Star(n) => Adjacency::star(*n)?,
            Graph::ClawPower(m) => Adjacency::star(3)?.cartesian_power(*m)?,
            Graph::Cartesian(a, b) => a.adjacency()?.cartesian_product(&b.adjacency()?)?,
        })
    }
}

/// The dense-oracle comparison attached to a report by `--cross-check`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheck {
    pub method: Method,
    pub flat: bool,
    pub max_deviation: f64,
    pub agrees: bool,
}

/// One verdict, ready for emission.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub graph: String,
    pub time: String,
    pub vertices: String,
    pub flat: bool,
    pub method: Method,
    /// `max |n|U_uv|^2 - 1|`; absent for closed-form criteria that do not quantify it.
    pub max_deviation: Option<f64>,
    pub suspect: bool,
    /// An offending entry, class or coset when the verdict is not flat.
    pub witness: Option<String>,
    pub cross_check: Option<CrossCheck>,
    pub wall_time_ms: Option<f64>,
}

/// Index of the entry furthest from `1/n` in squared modulus.
fn worst_entry(amplitudes: &[Complex64]) -> Option<usize> {
    let n = amplitudes.len() as f64;
    amplitudes
        .iter()
        .map(|z| (z.norm_sqr() * n - 1.0).abs())
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i)
}

struct Decision {
    verdict: MixingVerdict,
    quantified: bool,
    witness: Option<String>,
}

impl Decision {
    fn quantified(verdict: MixingVerdict, witness: Option<String>) -> Self {
        Decision { verdict, quantified: true, witness }
    }
}

fn character_sum(set: ConnectionSet, t: &WalkTime) -> CliResult<Decision> {
    let (q, d) = (set.q(), set.dim());
    let x = CayleyGraph::new(set)?;
    let row = transition_row(&x, t)?;
    let verdict = row.verdict();
    let witness = (!verdict.flat)
        .then(|| worst_entry(&row.amplitudes()).map(|g| format!("entry (0, {})", ZqVector::from_index(q, d, g))))
        .flatten();
    Ok(Decision::quantified(verdict, witness))
}

fn dense(graph: &Graph, t: &WalkTime) -> CliResult<Decision> {
    let adj = graph.adjacency()?;
    let walk = adj.spectrum();
    let u = walk.transition(t.value());
    let n = walk.order();
    let verdict = MixingVerdict::from_entries(u.iter().copied(), n, Method::DenseOracle);
    let witness = (!verdict.flat)
        .then(|| worst_entry(u.as_slice()).map(|k| format!("entry ({}, {})", k % n, k / n)))
        .flatten();
    Ok(Decision::quantified(verdict, witness))
}

fn first_failing_coset(gamma: &Submodule, t: &WalkTime) -> CliResult<Option<String>> {
    let evaluator = MullinEvaluator::new(gamma.q(), gamma.dim(), t)?;
    let reps = gamma.coset_transversal()?;
    for (rep, w) in reps.iter().zip(coset_enumerators(gamma)?) {
        if !evaluator.coset_is_flat(&w)?.0 {
            return Ok(Some(format!("coset {rep} + Γ")));
        }
    }
    Ok(None)
}

/// Closed-form verdict for one- and two-generator quotients at `τ_q`, when applicable.
fn symbolic(gamma: &Submodule, t: &WalkTime) -> CliResult<Option<bool>> {
    let q = gamma.q();
    if tau(q).ok().as_ref() != Some(t) || gamma.size()? == 1 {
        return Ok(None);
    }
    let Ok(sys) = gamma.systematic_form() else { return Ok(None) };
    let verdict = match sys.rank() {
        1 if gamma.generators().len() == 1 => one_generator_verdict(&gamma.generators()[0], q)?,
        1 => one_generator_verdict(&sys.basis[0], q)?,
        2 if q == 3 => two_generator_verdict(&sys.basis[0], &sys.basis[1])?,
        _ => return Ok(None),
    };
    Ok(Some(verdict))
}

fn decide(graph: &Graph, t: &WalkTime) -> CliResult<Decision> {
    match graph {
        Graph::Star(n) => {
            let verdict = star_transition(*n, t.value())?.verdict();
            Ok(Decision::quantified(verdict, None))
        }
        Graph::ClawPower(1) => decide(&Graph::Star(3), t),
        Graph::ClawPower(_) | Graph::Cartesian(..) => dense(graph, t),
        Graph::Quotient(gamma) => {
            let md = minimum_distance(gamma)?;
            if md < 3 {
                return Err(qmix_core::Error::DistanceTooSmall(md).into());
            }
            if let Some(flat) = symbolic(gamma, t)? {
                return Ok(Decision {
                    verdict: MixingVerdict::exact(flat, f64::NAN, Method::Symbolic),
                    quantified: false,
                    witness: None,
                });
            }
            if t.as_rational().is_some() && gamma.systematic_form().is_ok() {
                let verdict = mullin_verdict(gamma, t)?;
                let witness = if verdict.flat { None } else { first_failing_coset(gamma, t)? };
                return Ok(Decision::quantified(verdict, witness));
            }
            match graph.connection_set() {
                Ok(Some(set)) => character_sum(set, t),
                _ => dense(graph, t),
            }
        }
        Graph::Scheme(spec) if t.as_rational().is_some() => {
            let row = scheme_transition_class(spec.dim(), spec.q(), &spec.eigenvalues()?, t)?;
            let verdict = row.verdict();
            let witness = (!verdict.flat)
                .then(|| {
                    let n = (spec.q() as f64).powi(spec.dim() as i32);
                    (0..=spec.dim())
                        .map(|w| (w, (row.amplitude(w).norm_sqr() * n - 1.0).abs()))
                        .max_by(|a, b| a.1.total_cmp(&b.1))
                        .map(|(w, _)| format!("weight class {w}"))
                })
                .flatten();
            Ok(Decision::quantified(verdict, witness))
        }
        Graph::Scheme(_) | Graph::Cayley(_) => {
            let set = graph.connection_set()?.expect("Cayley graph");
            character_sum(set, t)
        }
    }
}

/// Decides flatness of `U(t)` with the cheapest applicable method, and
/// against the dense oracle as well when `cross_check` is set and the graph
/// is small enough.
pub fn run_check(spec: &GraphSpec, t: &WalkTime, cross_check: bool, timings: bool) -> CliResult<Report> {
    let start = Instant::now();
    let graph = Graph::build(spec)?;
    let decision = decide(&graph, t)?;
    let cross = if cross_check && graph.order()? <= DENSE_CAP as u128 {
        let oracle = is_uniform_mixing_dense(&graph.adjacency()?, t.value());
        Some(CrossCheck {
            method: oracle.method,
            flat: oracle.flat,
            max_deviation: oracle.max_deviation,
            agrees: oracle.flat == decision.verdict.flat,
        })
    } else {
        None
    };
    let v = decision.verdict;
    Ok(Report {
        graph: spec.to_string(),
        time: t.to_string(),
        vertices: graph.order()?.to_string(),
        flat: v.flat,
        method: v.method,
        max_deviation: decision.quantified.then_some(v.max_deviation),
        suspect: v.suspect,
        witness: decision.witness,
        cross_check: cross,
        wall_time_ms: timings.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}
