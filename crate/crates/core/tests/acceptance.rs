//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails or overruns its time budget.

mod common;

use std::panic;
use std::thread;
use std::time::{Duration, Instant};

use common::*;
use geostream::geometry::{intervals_intersect, Coord, GeomObject, Interval, UnitRect};
use geostream::hardness::{
    chain_structure_report, clique_segments_from_disjointness, clique_unit_intervals_from_disjointness, gen_chain,
    gen_disjointness, interval_representation, max_coordinate_bits, segments_from_disjointness,
    two_intervals_from_chain,
};
use geostream::interval_clique::IntervalClique;
use geostream::interval_selection::IntervalSelector;
use geostream::oracle::{intersection_graph, AdjacencyMatrix};
use geostream::rect_selection::{window_of, RectSelector};
use geostream::streamkit::{bit_width, run_stream, Encode, ObjectStream};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

fn graph(objects: &[GeomObject]) -> AdjacencyMatrix {
    intersection_graph(objects).expect("instances stay within the oracle cap")
}

fn to_objects<T: Clone + Into<GeomObject>>(v: &[T]) -> Vec<GeomObject> {
    v.iter().cloned().map(Into::into).collect()
}

fn check_interval_stream(stream: &[Interval]) -> Result<(usize, usize), String> {
    let g = graph(&to_objects(stream));
    let mut sel = IntervalSelector::<()>::new();
    for (k, i) in stream.iter().enumerate() {
        sel.insert(i.clone(), ());
        let out = sel.selected_intervals();
        let prefix_alpha = g.induced_prefix(k + 1).independence_number();
        ensure!(
            out.len() <= prefix_alpha,
            "{stream:?}: {} selected > α = {prefix_alpha} after {} items",
            out.len(),
            k + 1
        );
        ensure!(
            out.iter().enumerate().all(|(a, x)| out[a + 1..].iter().all(|y| !intervals_intersect(x, y))),
            "{stream:?}: selection {out:?} not disjoint"
        );
    }
    let alpha = g.independence_number();
    let got = sel.len();
    ensure!(2 * got >= alpha, "{stream:?}: selected {got}, α = {alpha}");
    Ok((got, alpha))
}

fn interval_selection_factor() -> Result<String, String> {
    let pool: Vec<Interval> = (1..=5).flat_map(|a| (a..=5).map(move |b| iv(a, b))).collect();
    ensure!(pool.len() == 15, "pool has {} intervals", pool.len());

    // Every ordered sequence of distinct pool members of length ≤ 4.
    let mut exhaustive = 0usize;
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(seq) = stack.pop() {
        let stream: Vec<Interval> = seq.iter().map(|&k| pool[k].clone()).collect();
        check_interval_stream(&stream)?;
        exhaustive += 1;
        if seq.len() < 4 {
            for k in 0..pool.len() {
                if !seq.contains(&k) {
                    let mut next = seq.clone();
                    next.push(k);
                    stack.push(next);
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x1a7e);
    let mut worst: f64 = 1.0;
    for _ in 0..100_000 {
        let n = rng.gen_range(1..=20);
        let stream = random_intervals(&mut rng, n, 30);
        let (got, alpha) = check_interval_stream(&stream)?;
        worst = worst.max(alpha as f64 / got as f64);
    }
    Ok(format!("{exhaustive} exhaustive + 100000 random streams, worst α/|output| = {worst:.3}"))
}

fn rectangle_factor() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2ec7);
    let mut worst: f64 = 1.0;
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=18);
        let rects = random_rects(&mut rng, n);
        for r in &rects {
            let span = r.y_span();
            let base = r.y_bottom.floor();
            let holders: Vec<BigInt> = (-2i64..=2)
                .map(|d| &base + d)
                .filter(|ell| {
                    let lo = Coord::from(ell.clone());
                    let hi = Coord::from(ell + 2);
                    &lo <= span.lo() && span.hi() < &hi
                })
                .collect();
            ensure!(holders == vec![window_of(r).ell], "{r:?} fits windows {holders:?}");
        }
        let objects = to_objects(&rects);
        let (out, _) =
            run_stream(&mut RectSelector::new(), &ObjectStream::new(objects.clone()), 1).map_err(|e| e.to_string())?;
        let alpha = graph(&objects).independence_number();
        ensure!(independent(&to_objects::<UnitRect>(&out)), "{rects:?}: output {out:?} not independent");
        ensure!(4 * out.len() >= alpha, "{rects:?}: output {} vs α {alpha}", out.len());
        worst = worst.max(alpha as f64 / out.len() as f64);
    }
    Ok(format!("10000 random streams, worst α/|output| = {worst:.3}"))
}

fn clique_exactness() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc119);
    let mut max_ratio: f64 = 0.0;
    for _ in 0..10_000 {
        let universe = rng.gen_range(1..=40u64);
        let n = rng.gen_range(0..=20);
        let stream = random_intervals(&mut rng, n, universe as i64);
        let objects = to_objects(&stream);
        let s = ObjectStream::new(objects.clone());
        let omega = graph(&objects).clique_number() as u64;

        let mut one = IntervalClique::new(universe);
        let (first, stats) = run_stream(&mut one, &s, 1).map_err(|e| e.to_string())?;
        ensure!(first.omega == omega, "{stream:?}: counted {} vs ω {omega}", first.omega);
        let bound = 4 * universe * bit_width(omega) as u64 + 64;
        let counters = one.counters().encoded_bits();
        ensure!(stats.peak_state_bits <= bound, "pass-1 state {} bits > {bound}", stats.peak_state_bits);
        max_ratio = max_ratio.max(counters as f64 / bound as f64);

        let (two, _) = run_stream(&mut IntervalClique::new(universe), &s, 2).map_err(|e| e.to_string())?;
        let clique_set = two.clique.ok_or("no witness after two passes")?;
        ensure!(clique_set.len() as u64 == omega, "{stream:?}: witness has {} members, ω = {omega}", clique_set.len());
        ensure!(clique(&to_objects(&clique_set)), "{stream:?}: witness is not a clique");
    }
    Ok(format!("10000 random streams exact, largest counter state / bound = {max_ratio:.3}"))
}

const SEGMENT_GRID: [(usize, usize); 3] = [(8, 2), (24, 4), (60, 6)];

fn segment_gap() -> Result<String, String> {
    let mut count = 0;
    for &(n, t) in &SEGMENT_GRID {
        for answer in [false, true] {
            let expect = if answer { t } else { 1 };
            for seed in 0..20 {
                let inst = gen_disjointness(n, t, answer, seed).map_err(|e| e.to_string())?;
                ensure!(inst.validate().passed(), "instance ({n},{t},{answer},{seed}) invalid");
                let a = graph(segments_from_disjointness(&inst).objects()).independence_number();
                let c = graph(clique_segments_from_disjointness(&inst).objects()).clique_number();
                let u = graph(clique_unit_intervals_from_disjointness(&inst).objects()).clique_number();
                ensure!(
                    (a, c, u) == (expect, expect, expect),
                    "({n},{t},{answer},{seed}): α={a}, ω segments={c}, ω unit intervals={u}, expected {expect}"
                );
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances, α and both ω exactly 1 or t"))
}

fn two_interval_gap() -> Result<String, String> {
    let mut count = 0;
    let mut max_bits = 0;
    for &(big_n, t) in &[(4, 2), (4, 3), (6, 3)] {
        for z in [false, true] {
            let expect = if z { t } else { 1 };
            for seed in 0..20 {
                let inst = gen_chain(big_n, t, z, seed).map_err(|e| e.to_string())?;
                let alpha = graph(two_intervals_from_chain(&inst).objects()).independence_number();
                ensure!(alpha == expect, "(N={big_n},t={t},z={z},seed={seed}): α = {alpha}, expected {expect}");
                let report = chain_structure_report(&inst);
                ensure!(report.passed(), "(N={big_n},t={t},z={z},seed={seed}): {:?}", report.failures());
                let bits = max_coordinate_bits(&inst);
                let limit = 4.0 * t as f64 * ((big_n + 2) as f64).log2();
                let within = bits as f64 <= limit;
                ensure!(within, "{bits} coordinate bits > {limit:.1}");
                max_bits = max_bits.max(bits);
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances, α matches z, nesting holds, max coordinate {max_bits} bits"))
}

/// Constant in the state bound `peak ≤ C · α · (bits of one interval)`.
const STATE_CONSTANT: u64 = 4;

fn discrepancy_demo() -> Result<String, String> {
    let mut compared = 0;
    let mut runs = 0;
    let mut worst: f64 = 0.0;
    for &(n, t) in &SEGMENT_GRID {
        for answer in [false, true] {
            for seed in 0..20 {
                let inst = gen_disjointness(n, t, answer, seed).map_err(|e| e.to_string())?;
                let segs = graph(segments_from_disjointness(&inst).objects());
                let rep = interval_representation(&inst).map_err(|e| e.to_string())?;
                let ints = graph(rep.objects());
                ensure!(ints.same_edges(&segs), "({n},{t},{answer},{seed}): adjacency differs");
                compared += 1;
                if !(answer && t >= 4) {
                    continue;
                }
                let (out, stats) = run_stream(&mut IntervalSelector::new(), &rep, 1).map_err(|e| e.to_string())?;
                ensure!(out.len() * 2 >= t && out.len() >= 2, "({n},{t},{seed}): selected {} of α = {t}", out.len());
                let alpha = ints.independence_number() as u64;
                let item_bits = rep.objects().iter().map(|o| o.as_interval().unwrap().encoded_bits()).max().unwrap();
                let bound = STATE_CONSTANT * alpha * item_bits;
                ensure!(stats.peak_state_bits <= bound, "peak {} bits > {bound}", stats.peak_state_bits);
                worst = worst.max(stats.peak_state_bits as f64 / (alpha * item_bits) as f64);
                runs += 1;
            }
        }
    }
    Ok(format!(
        "{compared} adjacency comparisons, {runs} selector runs, peak ≤ {worst:.2}·α·interval bits (limit {STATE_CONSTANT})"
    ))
}

fn oracle_self_check() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0ac1e);
    for trial in 0..1000 {
        let n = rng.gen_range(0..=15);
        let objects = random_objects(&mut rng, n, trial);
        let g = graph(&objects);
        let (a, w) = (exhaustive_alpha(&objects), exhaustive_omega(&objects));
        ensure!(g.independence_number() == a, "trial {trial}: α {} vs exhaustive {a}", g.independence_number());
        ensure!(g.clique_number() == w, "trial {trial}: ω {} vs exhaustive {w}", g.clique_number());
        let mis = g.max_independent_set();
        let picked: Vec<GeomObject> = mis.witness.iter().map(|&k| objects[k].clone()).collect();
        ensure!(mis.size == a && picked.len() == a && independent(&picked), "trial {trial}: bad independent witness");
        let mc = g.max_clique();
        let picked: Vec<GeomObject> = mc.witness.iter().map(|&k| objects[k].clone()).collect();
        ensure!(mc.size == w && picked.len() == w && clique(&picked), "trial {trial}: bad clique witness");
    }
    Ok("1000 instances over all four kinds agree with subset enumeration".into())
}

fn main() {
    let criteria: [(&str, Duration, Check); 7] = [
        ("interval selection factor", Duration::from_secs(120), interval_selection_factor),
        ("rectangle factor", Duration::from_secs(300), rectangle_factor),
        ("clique exactness", Duration::from_secs(120), clique_exactness),
        ("segment gap", Duration::from_secs(600), segment_gap),
        ("2-interval gap", Duration::from_secs(600), two_interval_gap),
        ("interval/segment discrepancy", Duration::from_secs(600), discrepancy_demo),
        ("oracle self-check", Duration::from_secs(600), oracle_self_check),
    ];
    panic::set_hook(Box::new(|_| {}));
    let outcomes: Vec<(Result<String, String>, Duration)> = thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, _, check)| {
                s.spawn(move || {
                    let start = Instant::now();
                    let r = panic::catch_unwind(check).unwrap_or_else(|e| {
                        let msg = e
                            .downcast_ref::<String>()
                            .cloned()
                            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                            .unwrap_or_default();
                        Err(format!("panicked: {msg}"))
                    });
                    (r, start.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("panics are caught")).collect()
    });

    let mut failed = 0;
    for ((name, limit, _), (result, elapsed)) in criteria.iter().zip(outcomes) {
        let result = result.and_then(|detail| {
            if elapsed <= *limit {
                Ok(detail)
            } else {
                Err(format!("took {:.1}s, budget {}s ({detail})", elapsed.as_secs_f64(), limit.as_secs()))
            }
        });
        match result {
            Ok(detail) => println!("PASS  {name} [{:.1}s]: {detail}", elapsed.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name} [{:.1}s]: {detail}", elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
