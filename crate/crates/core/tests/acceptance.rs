//! Acceptance suite: thirteen end-to-end criteria, each reported on its own
//! line as `PASS` or `FAIL`.  The binary exits non-zero when any criterion
//! fails, after every criterion has been run and reported.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qmix_core::arith::{binomial, p_adic_valuation};
use qmix_core::cayley::{CayleyGraph, ConnectionSet};
use qmix_core::criteria::{
    coset_report, one_generator_verdict, one_generator_weight_parity, tau, two_generator_verdict,
};
use qmix_core::dense::{is_local_uniform_mixing, Adjacency, DenseWalk};
use qmix_core::scheme::{
    enumerate_families, kummer_carries, union_class_graph_in, verify_recurrences, SchemeGraphSpec,
};
use qmix_core::stars::{claw_power_check, claw_time, global_star_check, local_mixing_times, star_transition};
use qmix_core::times::{
    folded_connection_set, folded_verdict, mixing_time_report, totient_bound, TimeFamily,
};
use qmix_core::walk::{
    coset_enumerators, is_uniform_mixing, mullin_verdict, scheme_transition_class, transition_row,
};
use qmix_core::zq::{
    all_vectors, macwilliams_transform, minimum_distance, qr17_code, weight_class_triple, weight_enumerator,
    Submodule, ZqVector,
};
use qmix_core::{Result, WalkTime};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

/// A graph verified flat at `2π/(q·n)`, collected for the totient bound.
struct FlatRecord {
    label: String,
    q: u32,
    valency: BigInt,
    n: u64,
}

#[derive(Default)]
struct Context {
    flats: Vec<FlatRecord>,
}

impl Context {
    /// Records `label` when `t = 2π/(q·n)` for an integer `n`.
    fn record(&mut self, label: &str, q: u32, valency: BigInt, t: &WalkTime) {
        if let Some((1, den)) = t.as_rational() {
            if den % q as u64 == 0 {
                self.flats.push(FlatRecord { label: label.to_string(), q, valency, n: den / q as u64 });
            }
        }
    }
}

fn dense_row_flat(walk: &DenseWalk, t: f64) -> bool {
    walk.local_verdict(0, t).flat
}

fn hamming_label(d: usize, q: u32) -> String {
    if d == 1 {
        format!("K_{q}")
    } else {
        format!("H({d},{q})")
    }
}

// ---------------------------------------------------------------------------

fn known_catalog(ctx: &mut Context) -> Result<Outcome> {
    let start = Instant::now();
    let mut cases = Vec::new();
    for (q, d_max) in [(2u32, 8usize), (3, 5), (4, 4)] {
        for d in 1..=d_max {
            cases.push((q, d));
        }
    }
    let mut failures = Vec::new();
    let mut worst_float = 0.0f64;
    for &(q, d) in &cases {
        let x = CayleyGraph::hamming(d, q)?;
        let t = tau(q)?;
        let exact = is_uniform_mixing(&x, &t)?;
        let float = transition_row(&x, &WalkTime::real(t.value()))?.verdict();
        worst_float = worst_float.max(float.max_deviation);
        if !(exact.flat && exact.max_deviation == 0.0 && float.max_deviation <= 1e-9) {
            failures.push(hamming_label(d, q));
        } else {
            ctx.record(&hamming_label(d, q), q, BigInt::from(x.valency()), &t);
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(30);
    Ok(Outcome::new(
        pass,
        format!(
            "{} graphs exact-flat with deviation 0, worst float deviation {worst_float:.1e}, failures {failures:?}, {:.2}s",
            cases.len(),
            elapsed.as_secs_f64()
        ),
    ))
}

// ---------------------------------------------------------------------------

/// Coordinates up to monomial equivalence: for `q = 4` units and `2`s are
/// counted separately, otherwise only the weight matters.
fn monomial_class(a: &ZqVector) -> (usize, usize) {
    if a.q() == 4 {
        let twos = a.coords().iter().filter(|&&c| c == 2).count();
        (a.weight() - twos, twos)
    } else {
        (a.weight(), 0)
    }
}

fn one_generator(ctx: &mut Context) -> Result<Outcome> {
    let start = Instant::now();
    // (q, d, class) -> (dense verdict, Mullin verdict where defined)
    let mut oracle: HashMap<(u32, usize, (usize, usize)), (bool, Option<bool>)> = HashMap::new();
    let (mut checked, mut disagreements, mut small_distance, mut too_large, mut parity_differs) = (0, 0, 0, 0, 0);
    for q in [2u32, 3, 4] {
        let t = tau(q)?;
        for d in 3..=6usize {
            for a in all_vectors(q, d).filter(|a| a.weight() >= 3) {
                let gamma = Submodule::cyclic(a.clone());
                if minimum_distance(&gamma)? < 3 {
                    small_distance += 1;
                    continue;
                }
                let order = q.pow(d as u32) as usize / gamma.size()?;
                if order > 1024 {
                    too_large += 1;
                    continue;
                }
                let key = (q, d, monomial_class(&a));
                if let std::collections::hash_map::Entry::Vacant(e) = oracle.entry(key) {
                    let walk = DenseWalk::new(&Adjacency::hamming_quotient(&gamma)?);
                    let dense = dense_row_flat(&walk, t.value());
                    let mullin = mullin_verdict(&gamma, &t).ok().map(|v| v.flat);
                    if dense {
                        let label = format!("H({d},{q})/<{a}>");
                        ctx.record(&label, q, BigInt::from(d * (q as usize - 1)), &t);
                    }
                    e.insert((dense, mullin));
                }
                let (dense, mullin) = oracle[&key];
                let symbolic = one_generator_verdict(&a, q)?;
                checked += 1;
                if symbolic != dense || mullin.is_some_and(|m| m != dense) {
                    disagreements += 1;
                }
                if q == 4 && one_generator_weight_parity(&a) != symbolic {
                    parity_differs += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    Ok(Outcome::new(
        disagreements == 0 && elapsed < Duration::from_secs(300),
        format!(
            "{checked} vectors over {} monomial classes, {disagreements} disagreements with the dense oracle; \
             excluded: {small_distance} with min distance < 3, {too_large} with quotient > 1024; \
             plain weight parity would differ on {parity_differs} q=4 vectors; {:.1}s",
            oracle.len(),
            elapsed.as_secs_f64()
        ),
    ))
}

// ---------------------------------------------------------------------------

/// Nondecreasing sequences of length `len` over `0..base`.
fn multisets(base: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(base: usize, len: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in from..base {
            cur.push(i);
            go(base, len, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(base, len, 0, &mut Vec::new(), &mut out);
    out
}

fn admissible_pair(a: &ZqVector, b: &ZqVector) -> Result<Option<Submodule>> {
    let gamma = Submodule::new(3, a.dim(), vec![a.clone(), b.clone()])?;
    if gamma.rank()? != 2 || minimum_distance(&gamma)? < 3 {
        return Ok(None);
    }
    Ok(Some(gamma))
}

fn two_generator(passing: &mut Vec<Submodule>) -> Result<Outcome> {
    let start = Instant::now();
    let t = tau(3)?;
    let (mut exhaustive, mut random, mut disagreements, mut flat) = (0usize, 0usize, 0usize, 0usize);
    for d in 3..=6usize {
        for rows in multisets(9, d) {
            let a = ZqVector::from_residues(3, rows.iter().map(|&r| (r / 3) as u32).collect())?;
            let b = ZqVector::from_residues(3, rows.iter().map(|&r| (r % 3) as u32).collect())?;
            let Some(gamma) = admissible_pair(&a, &b)? else { continue };
            exhaustive += 1;
            let symbolic = two_generator_verdict(&a, &b)?;
            let walk = DenseWalk::new(&Adjacency::hamming_quotient(&gamma)?);
            let dense = dense_row_flat(&walk, t.value());
            let mullin = mullin_verdict(&gamma, &t)?.flat;
            if symbolic != dense || mullin != dense {
                disagreements += 1;
            }
            if dense {
                flat += 1;
                passing.push(gamma);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for d in [7usize, 8] {
        let mut found = 0;
        while found < 500 {
            let a = ZqVector::from_residues(3, (0..d).map(|_| rng.gen_range(0..3)).collect())?;
            let b = ZqVector::from_residues(3, (0..d).map(|_| rng.gen_range(0..3)).collect())?;
            let Some(gamma) = admissible_pair(&a, &b)? else { continue };
            found += 1;
            random += 1;
            let symbolic = two_generator_verdict(&a, &b)?;
            let mullin = mullin_verdict(&gamma, &t)?.flat;
            if symbolic != mullin {
                disagreements += 1;
            }
            if mullin {
                flat += 1;
                passing.push(gamma);
            }
        }
    }
    Ok(Outcome::new(
        disagreements == 0,
        format!(
            "{exhaustive} exhaustive instances (d ≤ 6, dense + Mullin) and {random} seeded random instances \
             (d = 7, 8, Mullin); {flat} mix; {disagreements} disagreements; {:.1}s",
            start.elapsed().as_secs_f64()
        ),
    ))
}

// ---------------------------------------------------------------------------

fn weight_structures(passing: &[Submodule]) -> Result<Outcome> {
    let allowed = [[1u64, 4, 4], [2, 2, 5]];
    let (mut outside, mut differs, mut cosets) = (0usize, 0usize, 0usize);
    let mut seen: BTreeMap<[u64; 3], usize> = BTreeMap::new();
    for gamma in passing {
        let own = weight_class_triple(gamma)?.sorted();
        *seen.entry(own).or_default() += 1;
        for w in coset_enumerators(gamma)? {
            cosets += 1;
            let s = w.class_triple().sorted();
            if !allowed.contains(&s) {
                outside += 1;
            }
            if s != own {
                differs += 1;
            }
        }
    }
    Ok(Outcome::new(
        outside == 0 && differs == 0 && !passing.is_empty(),
        format!(
            "{} passing modules, {cosets} cosets: {outside} outside {{(1,4,4),(2,2,5)}}, {differs} differing from W(Γ); \
             structures of Γ: {seen:?}",
            passing.len()
        ),
    ))
}

// ---------------------------------------------------------------------------

fn qr_code() -> Result<Outcome> {
    let start = Instant::now();
    let code = qr17_code()?;
    let dist = minimum_distance(&code)?;
    let report = coset_report(&code)?;
    let size = code.size()?;
    let elapsed = start.elapsed();
    Ok(Outcome::new(
        dist == 5 && size == 512 && report.cosets == 256 && report.satisfied && elapsed < Duration::from_secs(10),
        format!(
            "|Γ| = {size}, minimum distance {dist}, {} cosets ({} distinct enumerators), {} failing |W(i,1)|² = 512; {:.2}s",
            report.cosets,
            report.distinct_enumerators,
            report.failures.len(),
            elapsed.as_secs_f64()
        ),
    ))
}

// ---------------------------------------------------------------------------

fn krawtchouk_identities() -> Result<Outcome> {
    let (mut cases, mut failures, mut unshifted_fail) = (0, Vec::new(), 0);
    for q in [2u32, 3, 4] {
        for d in 1..=30usize {
            let r = verify_recurrences(d, q)?;
            cases += 1;
            if !r.all_pass() {
                failures.push((d, q));
            }
            if !r.matrix_form_unshifted {
                unshifted_fail += 1;
            }
        }
    }
    Ok(Outcome::new(
        failures.is_empty(),
        format!(
            "{cases} (d, q) cases, failures {failures:?}; the matrix recurrence without the column shift fails in \
             {unshifted_fail} cases and is not required"
        ),
    ))
}

// ---------------------------------------------------------------------------

fn class_valency(d: usize, q: u32, classes: &[usize]) -> BigInt {
    classes.iter().map(|&r| binomial(d, r) * BigInt::from(q - 1).pow(r as u32)).sum()
}

fn family_q3(ctx: &mut Context) -> Result<Outcome> {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut pass = true;
    for inst in enumerate_families(4, 3)? {
        let spec = SchemeGraphSpec::new(inst.d, 3, &[inst.r])?;
        let row = scheme_transition_class(inst.d, 3, &spec.eigenvalues()?, &inst.time)?;
        let flat = row.verdict().flat;
        let mut ok = flat && inst.condition.satisfied;
        let mut note = String::new();
        if inst.k == 2 {
            let x = CayleyGraph::new(spec.connection_set()?)?;
            let cross = is_uniform_mixing(&x, &inst.time)?.flat;
            ok &= cross;
            note = format!(", character sum {}", if cross { "flat" } else { "not flat" });
        }
        if ok {
            let label = format!("A_{} in H({},3)", inst.r, inst.d);
            ctx.record(&label, 3, class_valency(inst.d, 3, &[inst.r]), &inst.time);
        }
        pass &= ok;
        lines.push(format!("k={} d={} r={}: {}{note}", inst.k, inst.d, inst.r, if flat { "flat" } else { "not flat" }));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(120);
    Ok(Outcome::new(pass, format!("{}; {:.1}s", lines.join("; "), elapsed.as_secs_f64())))
}

fn family_q4(ctx: &mut Context) -> Result<Outcome> {
    let mut lines = Vec::new();
    let mut pass = true;
    for inst in enumerate_families(4, 4)? {
        let spec = SchemeGraphSpec::new(inst.d, 4, &[inst.r])?;
        let flat = scheme_transition_class(inst.d, 4, &spec.eigenvalues()?, &inst.time)?.verdict().flat;
        let mut ok = flat && inst.condition.satisfied;
        let mut note = String::new();
        if inst.k == 2 {
            let adj = Adjacency::distance_graph(inst.d, 4, &[inst.r])?;
            let dense = adj.spectrum().verdict(inst.time.value());
            ok &= dense.flat;
            note = format!(", dense deviation {:.1e}", dense.max_deviation);
        }
        if ok {
            let label = format!("A_{} in H({},4)", inst.r, inst.d);
            ctx.record(&label, 4, class_valency(inst.d, 4, &[inst.r]), &inst.time);
        }
        pass &= ok;
        lines.push(format!("k={} d={} r={}: {}{note}", inst.k, inst.d, inst.r, if flat { "flat" } else { "not flat" }));
    }
    Ok(Outcome::new(pass, lines.join("; ")))
}

// ---------------------------------------------------------------------------

fn union_graphs(ctx: &mut Context) -> Result<Outcome> {
    let mut pass = true;
    let mut lines = Vec::new();
    for d in [5usize, 4] {
        for i in 0..3usize {
            let u = union_class_graph_in(d, 2, i)?;
            let classes = u.spec.classes().to_vec();
            let theta = u.spec.eigenvalues()?;
            let walk = DenseWalk::new(&Adjacency::distance_graph(d, 3, &classes)?);
            let mut cells = Vec::new();
            for t in [WalkTime::two_pi_over(9), WalkTime::two_pi_over(27)] {
                let exact = scheme_transition_class(d, 3, &theta, &t)?.verdict().flat;
                let dense = walk.local_verdict(0, t.value());
                if exact != dense.flat {
                    pass = false;
                }
                if exact {
                    let label = format!("classes {classes:?} in H({d},3)");
                    ctx.record(&label, 3, class_valency(d, 3, &classes), &t);
                }
                let (_, den) = t.as_rational().expect("rational");
                cells.push(format!("2π/{den} {}", if dense.flat { "flat" } else { "not flat" }));
                if d == 5 && den == 9 && !dense.flat {
                    pass = false;
                }
            }
            lines.push(format!("H({d},3) i={i} {classes:?}: {}", cells.join(", ")));
        }
    }
    Ok(Outcome::new(pass, format!("required: H(5,3) flat at 2π/9 for every i. {}", lines.join("; "))))
}

// ---------------------------------------------------------------------------

fn subsets(d: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << d)).map(|mask| (1..=d).filter(|r| mask & (1 << (r - 1)) != 0).collect()).collect()
}

fn gcd_catalog() -> Result<Vec<(String, ConnectionSet)>> {
    let mut out = Vec::new();
    for q in [2u32, 3, 4, 5, 7] {
        let mut d = 1;
        while (q as u64).pow(d as u32) <= 243 {
            out.push((hamming_label(d, q), ConnectionSet::hamming(d, q)?));
            if d >= 2 {
                out.push((format!("folded H({},{q})", d + 1), folded_connection_set(q, d)?));
            }
            d += 1;
        }
    }
    for (q, d_max) in [(2u32, 7usize), (3, 5), (4, 3)] {
        for d in 2..=d_max {
            for classes in subsets(d).into_iter().filter(|c| c != &[1]) {
                let c = ConnectionSet::distance_classes(d, q, &classes)?;
                if c.is_linear() {
                    out.push((format!("classes {classes:?} in H({d},{q})"), c));
                }
            }
        }
    }
    Ok(out)
}

fn grid_min_deviation(walk: &DenseWalk) -> f64 {
    (1..=200).map(|j| walk.local_verdict(0, 2.0 * PI * j as f64 / 200.0).max_deviation).fold(f64::INFINITY, f64::min)
}

fn mixing_times(ctx: &mut Context) -> Result<Outcome> {
    let start = Instant::now();
    let catalog = gcd_catalog()?;
    let (mut comparisons, mut mismatches, mut positives, mut unconfirmed) = (0usize, Vec::new(), 0usize, 0usize);
    for (label, c) in &catalog {
        let x = CayleyGraph::new(c.clone())?;
        let q = x.q();
        let report = mixing_time_report(&x, 36)?;
        let predicted: Vec<u32> = if report.gcd.is_zero() {
            (1..=36).collect()
        } else {
            report.cyclotomic_times.iter().map(|c| c.n).collect()
        };
        let mut walk = None;
        for n in 1..=36u32 {
            let t = WalkTime::two_pi_over(q as u64 * n as u64);
            let flat = is_uniform_mixing(&x, &t)?.flat;
            comparisons += 1;
            if flat != predicted.contains(&n) {
                mismatches.push(format!("{label} N={n}"));
            }
            if flat {
                positives += 1;
                let walk = walk.get_or_insert_with(|| DenseWalk::new(&Adjacency::cayley(c).expect("desk scale")));
                if !dense_row_flat(walk, t.value()) {
                    unconfirmed += 1;
                }
                ctx.record(label, q, BigInt::from(c.len()), &t);
            }
        }
    }

    let mut folded_fail = Vec::new();
    let mut folded_cases = 0;
    for q in [2u32, 3, 4] {
        let mut d = 1;
        while (q as u64).pow(d as u32) <= 729 {
            let fv = folded_verdict(q, d)?;
            let walk = DenseWalk::new(&Adjacency::cayley(&folded_connection_set(q, d)?)?);
            let times: Vec<WalkTime> = match fv.family {
                TimeFamily::OddQuarterPi => [1, 3, 5, 7].iter().map(|&k| WalkTime::pi_times(k, 4)).collect(),
                TimeFamily::TwoNinthsPi => [1, 2, 4, 5].iter().map(|&k| WalkTime::rational(k, 9)).collect::<Result<_>>()?,
                TimeFamily::Empty => Vec::new(),
            };
            folded_cases += 1;
            let first_ok = fv.family.first().is_some_and(|t| times.contains(&t));
            if !first_ok || times.iter().any(|t| dense_row_flat(&walk, t.value()) != fv.mixes) {
                folded_fail.push(format!("H({},{q})/<1>", d + 1));
            }
            d += 1;
        }
    }

    let mut empty_fail = Vec::new();
    let mut smallest = f64::INFINITY;
    for (q, d_max) in [(5u32, 3usize), (7, 2)] {
        for d in 1..=d_max {
            let fv = folded_verdict(q, d)?;
            let walk = DenseWalk::new(&Adjacency::cayley(&folded_connection_set(q, d)?)?);
            let dev = grid_min_deviation(&walk);
            smallest = smallest.min(dev);
            if fv.family != TimeFamily::Empty || fv.mixes || dev <= 1e-3 {
                empty_fail.push(format!("q={q} d={d}"));
            }
        }
    }
    let pass = mismatches.is_empty() && unconfirmed == 0 && folded_fail.is_empty() && empty_fail.is_empty();
    Ok(Outcome::new(
        pass,
        format!(
            "{} graphs, {comparisons} (graph, N) comparisons, mismatches {:?}; {positives} flat times, {unconfirmed} \
             unconfirmed by the dense oracle; folded verdicts: {folded_cases} cases, failures {folded_fail:?}; \
             q = 5, 7 grid scans: smallest deviation {smallest:.3}, failures {empty_fail:?}; {:.1}s",
            catalog.len(),
            mismatches.iter().take(5).collect::<Vec<_>>(),
            start.elapsed().as_secs_f64()
        ),
    ))
}

// ---------------------------------------------------------------------------

fn totient(ctx: &Context) -> Result<Outcome> {
    let mut failures: BTreeMap<String, String> = BTreeMap::new();
    for rec in &ctx.flats {
        let bound = totient_bound(rec.q, rec.n)?;
        if &rec.valency * BigInt::from(*bound.denom()) < BigInt::from(*bound.numer()) {
            failures.insert(rec.label.clone(), format!("|C| = {} < {bound} (n = {})", rec.valency, rec.n));
        }
    }
    let witness = totient_bound(3, 3)?;
    let h23 = CayleyGraph::hamming(2, 3)?;
    let witness_flat = is_uniform_mixing(&h23, &WalkTime::two_pi_over(9))?.flat;
    let tight = witness_flat && witness == num_rational::Ratio::from_integer(h23.valency() as u64);
    Ok(Outcome::new(
        failures.is_empty() && tight,
        format!(
            "{} flat instances checked, {} violate the bound: {:?}; witness H(2,3): |C| = {}, bound {witness}, {}",
            ctx.flats.len(),
            failures.len(),
            failures,
            h23.valency(),
            if tight { "tight" } else { "not tight" }
        ),
    ))
}

// ---------------------------------------------------------------------------

fn stars() -> Result<Outcome> {
    let t = claw_time();
    let closed = star_transition(3, t)?.verdict();
    let dense = Adjacency::star(3)?.spectrum().verdict(t);
    let square = claw_power_check(2, t)?;
    let mut pass = closed.max_deviation <= 1e-10 && dense.max_deviation <= 1e-10 && square.flat;
    let nonempty: Vec<usize> = [2usize, 4, 5, 6, 7, 8, 9, 10]
        .into_iter()
        .filter(|&n| !global_star_check(n, 4).map(|v| v.is_empty()).unwrap_or(false))
        .collect();
    pass &= nonempty.is_empty();
    let (mut local_checked, mut local_fail) = (0, Vec::new());
    for n in 1..=10usize {
        let adj = Adjacency::star(n)?;
        for s in local_mixing_times(n, 3)? {
            local_checked += 1;
            if !is_local_uniform_mixing(&adj, s, 0)?.flat {
                local_fail.push((n, s));
            }
        }
    }
    pass &= local_fail.is_empty();
    Ok(Outcome::new(
        pass,
        format!(
            "K_1,3 at 2π/√27: closed-form deviation {:.1e}, dense {:.1e}; K_1,3□K_1,3 deviation {:.1e}; \
             global mixing found for n in {nonempty:?}; {local_checked} local times, failures {local_fail:?}",
            closed.max_deviation, dense.max_deviation, square.max_deviation
        ),
    ))
}

// ---------------------------------------------------------------------------

fn unitarity() -> Result<(usize, usize)> {
    let (mut cases, mut failures) = (0, 0);
    let times = [(1i64, 5u64), (2, 7), (1, 8), (1, 9), (5, 12)];
    for q in [2u32, 3, 4, 5] {
        let mut d = 1;
        while (q as u64).pow(d as u32) <= 729 {
            let x = CayleyGraph::hamming(d, q)?;
            for &(m, den) in &times {
                cases += 1;
                if transition_row(&x, &WalkTime::rational(m, den)?)?.exact_unit_norm() != Some(true) {
                    failures += 1;
                }
            }
            d += 1;
        }
    }
    for q in [2u32, 3, 4] {
        for d in 1..=20usize {
            for classes in [vec![1], vec![1, d.min(2)], vec![d]] {
                let spec = SchemeGraphSpec::new(d, q, &classes)?;
                let theta = spec.eigenvalues()?;
                for &(m, den) in &times {
                    cases += 1;
                    if !scheme_transition_class(d, q, &theta, &WalkTime::rational(m, den)?)?.is_unit() {
                        failures += 1;
                    }
                }
            }
        }
    }
    let graphs = [
        Adjacency::star(5)?,
        Adjacency::star(3)?.cartesian_power(2)?,
        Adjacency::cayley(&ConnectionSet::hamming(3, 3)?)?,
        Adjacency::cayley(&folded_connection_set(3, 3)?)?,
    ];
    for a in &graphs {
        let walk = a.spectrum();
        for t in [0.37, 1.9, 12.5] {
            cases += 1;
            let u = walk.transition(t);
            let prod = &u * u.adjoint();
            let dev = prod
                .iter()
                .enumerate()
                .map(|(k, z)| {
                    let (i, j) = (k % a.order(), k / a.order());
                    let target = if i == j { Complex64::one() } else { Complex64::new(0.0, 0.0) };
                    (z - target).norm()
                })
                .fold(0.0, f64::max);
            if dev > 1e-9 {
                failures += 1;
            }
        }
    }
    Ok((cases, failures))
}

fn macwilliams_involution() -> Result<(usize, usize)> {
    let (mut cases, mut failures) = (0, 0);
    for (q, d_max) in [(2u32, 8usize), (3, 5), (4, 4)] {
        for d in 1..=d_max {
            for a in all_vectors(q, d).filter(|a| !a.is_zero()) {
                let gamma = Submodule::cyclic(a);
                let w = weight_enumerator(&gamma)?;
                let size = gamma.size()? as u64;
                let dual = macwilliams_transform(&w, size, q, d)?;
                let direct = weight_enumerator(&gamma.dual()?)?;
                let back = macwilliams_transform(&dual, (q as u64).pow(d as u32) / size, q, d)?;
                cases += 1;
                if dual != direct || back != w {
                    failures += 1;
                }
            }
        }
    }
    Ok((cases, failures))
}

fn spectra() -> Result<(usize, usize)> {
    let mut sets = Vec::new();
    for (q, d_max) in [(2u32, 10usize), (3, 6), (4, 5), (5, 4)] {
        for d in 1..=d_max {
            sets.push(ConnectionSet::hamming(d, q)?);
        }
    }
    for (q, d_max) in [(2u32, 9usize), (3, 5), (4, 4)] {
        for d in 2..=d_max {
            sets.push(folded_connection_set(q, d)?);
        }
    }
    for classes in subsets(4) {
        sets.push(ConnectionSet::distance_classes(4, 3, &classes)?);
    }
    let z5 = |c: &[i64]| ZqVector::new(5, c);
    sets.push(ConnectionSet::new(5, 2, vec![z5(&[1, 0])?, z5(&[4, 0])?, z5(&[1, 2])?, z5(&[4, 3])?])?);
    let (mut cases, mut failures) = (0, 0);
    for c in sets {
        let x = CayleyGraph::new(c.clone())?;
        let mut character = x.eigenvalues()?.real_values();
        character.sort_by(f64::total_cmp);
        let dense = DenseWalk::new(&Adjacency::cayley(&c)?).sorted_eigenvalues();
        cases += 1;
        let dev = character.iter().zip(&dense).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if character.len() != dense.len() || dev > 1e-8 {
            failures += 1;
        }
    }
    Ok((cases, failures))
}

fn kummer() -> Result<(usize, usize)> {
    let (mut cases, mut failures) = (0, 0);
    let mut row = vec![BigInt::one()];
    for n in 0..=2000u64 {
        for (m, c) in row.iter().enumerate() {
            for p in [2u64, 3] {
                cases += 1;
                if Some(kummer_carries(n, m as u64, p)?) != p_adic_valuation(c, p) {
                    failures += 1;
                }
            }
        }
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;
    }
    Ok((cases, failures))
}

fn properties() -> Result<Outcome> {
    let start = Instant::now();
    let parts = [
        ("unitarity", unitarity()?),
        ("MacWilliams involution", macwilliams_involution()?),
        ("character vs dense spectra", spectra()?),
        ("Kummer vs valuation", kummer()?),
    ];
    let pass = parts.iter().all(|(_, (_, f))| *f == 0);
    let text: Vec<String> = parts.iter().map(|(name, (c, f))| format!("{name}: {c} cases, {f} failures")).collect();
    Ok(Outcome::new(pass, format!("{}; {:.1}s", text.join("; "), start.elapsed().as_secs_f64())))
}

// ---------------------------------------------------------------------------

fn report(number: usize, title: &str, outcome: Result<Outcome>) -> bool {
    let outcome = outcome.unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
    println!(
        "{} criterion {number:>2} ({title}): {}",
        if outcome.pass { "PASS" } else { "FAIL" },
        outcome.detail
    );
    outcome.pass
}

fn main() -> ExitCode {
    let mut ctx = Context::default();
    let mut passing = Vec::new();
    let results = [
        report(1, "known examples", known_catalog(&mut ctx)),
        report(2, "one-generator quotients", one_generator(&mut ctx)),
        report(3, "two-generator quotients", two_generator(&mut passing)),
        report(4, "coset weight structures", weight_structures(&passing)),
        report(5, "quadratic-residue code", qr_code()),
        report(6, "Krawtchouk identities", krawtchouk_identities()),
        report(7, "q = 3 binomial family", family_q3(&mut ctx)),
        report(8, "q = 4 binomial family", family_q4(&mut ctx)),
        report(9, "union-of-classes graphs", union_graphs(&mut ctx)),
        report(10, "mixing-time polynomials", mixing_times(&mut ctx)),
        report(11, "totient bound", totient(&ctx)),
        report(12, "stars", stars()),
        report(13, "property suites", properties()),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
