#![allow(dead_code)]

use geostream::geometry::{Coord, GeomObject, Interval, PermSegment, TwoInterval, UnitRect};
use rand::Rng;

pub fn iv(lo: i64, hi: i64) -> Interval {
    Interval::closed(lo, hi)
}

pub fn random_intervals(rng: &mut impl Rng, n: usize, max: i64) -> Vec<Interval> {
    (0..n)
        .map(|_| {
            let a = rng.gen_range(1..=max);
            let b = rng.gen_range(1..=max);
            iv(a.min(b), a.max(b))
        })
        .collect()
}

/// Rectangles with integer x in `0..=40` and rational bottom in `[-3, 3]`.
pub fn random_rects(rng: &mut impl Rng, n: usize) -> Vec<UnitRect> {
    (0..n)
        .map(|_| {
            let lo = rng.gen_range(0..=40);
            let hi = (lo + rng.gen_range(0..=8)).min(40);
            let d = rng.gen_range(1..=6i64);
            let y = Coord::ratio(rng.gen_range(-3 * d..=3 * d), d).unwrap();
            UnitRect::new(iv(lo, hi), y)
        })
        .collect()
}

pub fn random_segments(rng: &mut impl Rng, n: usize) -> Vec<PermSegment> {
    (0..n).map(|_| PermSegment::new(rng.gen_range(0..20i64), rng.gen_range(0..20i64))).collect()
}

pub fn random_two_intervals(rng: &mut impl Rng, n: usize) -> Vec<TwoInterval> {
    (0..n)
        .map(|_| {
            let a = rng.gen_range(0..30i64);
            let b = a + rng.gen_range(0..4);
            let c = b + rng.gen_range(1..10);
            let d = c + rng.gen_range(0..4);
            TwoInterval::new(iv(a, b), iv(c, d)).unwrap()
        })
        .collect()
}

/// A random small instance of a kind chosen by `pick`.
pub fn random_objects(rng: &mut impl Rng, n: usize, pick: usize) -> Vec<GeomObject> {
    match pick % 4 {
        0 => random_intervals(rng, n, 25).into_iter().map(Into::into).collect(),
        1 => random_segments(rng, n).into_iter().map(Into::into).collect(),
        2 => random_rects(rng, n).into_iter().map(Into::into).collect(),
        _ => random_two_intervals(rng, n).into_iter().map(Into::into).collect(),
    }
}

fn pairwise(objects: &[GeomObject], want: bool) -> bool {
    objects.iter().enumerate().all(|(i, a)| objects[i + 1..].iter().all(|b| a.intersects(b) == Some(want)))
}

pub fn independent(objects: &[GeomObject]) -> bool {
    pairwise(objects, false)
}

pub fn clique(objects: &[GeomObject]) -> bool {
    pairwise(objects, true)
}

/// Largest subset satisfying `ok`, by scanning all `2^n` subsets.
fn exhaustive(objects: &[GeomObject], want: bool) -> usize {
    let n = objects.len();
    assert!(n <= 20, "exhaustive scan limited to 20 objects");
    let mut adj = vec![0u32; n];
    for u in 0..n {
        for v in 0..n {
            if u != v && objects[u].intersects(&objects[v]).unwrap() == want {
                adj[u] |= 1 << v;
            }
        }
    }
    // adj holds the pairs that are allowed together; a subset is valid when
    // every member allows all others.
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size > best && (0..n).all(|v| mask & (1 << v) == 0 || (mask & !(1 << v)) & !adj[v] == 0) {
            best = size;
        }
    }
    best
}

pub fn exhaustive_alpha(objects: &[GeomObject]) -> usize {
    exhaustive(objects, false)
}

pub fn exhaustive_omega(objects: &[GeomObject]) -> usize {
    exhaustive(objects, true)
}
