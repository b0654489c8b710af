//! One-pass 2-approximation of the maximum independent set of an interval
//! stream.
//!
//! The line is cut into windows that partition it. Every window remembers two
//! of the intervals that fell inside it: `first`, the one with the smallest
//! right endpoint (ties: largest left endpoint), and `last`, the one with the
//! largest left endpoint (ties: smallest right endpoint). The invariant is that
//! all intervals seen inside a window pairwise intersect, so a window holds a
//! clique of the input and `first` is a safe representative for it.
//!
//! A new interval that crosses a window border is dropped. One that lies
//! inside a window either keeps the window a clique, or misses `first` on the
//! right or `last` on the left; in the latter two cases the window is split
//! at that representative's endpoint and the newcomer starts a fresh window.
//! Any independent set has at most `2w - 1` members, where `w` is the number
//! of windows, while the returned `first` representatives are pairwise
//! disjoint, which gives the factor 2.
//!
//! Windows live in an ordered map keyed by their lower end, so each item costs
//! `O(log w)` comparisons and the state holds at most `2w ≤ 2α` intervals.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::geometry::{Coord, GeomObject, Interval, ObjectKind};
use crate::streamkit::{BitReader, BitWriter, Decode, DecodeError, Encode, StreamAlgorithm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SelectionError {
    #[error("interval selection received a {0}")]
    WrongKind(ObjectKind),
}

/// Lower end of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Lower {
    Unbounded,
    Inclusive(Coord),
    Exclusive(Coord),
}

impl Lower {
    fn rank(&self) -> u8 {
        match self {
            Lower::Unbounded => 0,
            Lower::Inclusive(_) => 1,
            Lower::Exclusive(_) => 2,
        }
    }

    fn admits(&self, p: &Coord) -> bool {
        match self {
            Lower::Unbounded => true,
            Lower::Inclusive(c) => c <= p,
            Lower::Exclusive(c) => c < p,
        }
    }
}

// At equal coordinates `[c` starts before `(c`.
impl Ord for Lower {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Lower::Unbounded, Lower::Unbounded) => Ordering::Equal,
            (Lower::Unbounded, _) => Ordering::Less,
            (_, Lower::Unbounded) => Ordering::Greater,
            (Lower::Inclusive(a) | Lower::Exclusive(a), Lower::Inclusive(b) | Lower::Exclusive(b)) => {
                a.cmp(b).then(self.rank().cmp(&other.rank()))
            }
        }
    }
}

impl PartialOrd for Lower {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Upper end of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Upper {
    Inclusive(Coord),
    Exclusive(Coord),
    Unbounded,
}

impl Upper {
    fn admits(&self, p: &Coord) -> bool {
        match self {
            Upper::Unbounded => true,
            Upper::Inclusive(c) => p <= c,
            Upper::Exclusive(c) => p < c,
        }
    }
}

/// An interval together with its caller-supplied tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tagged<P> {
    pub interval: Interval,
    pub payload: P,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Window<P> {
    upper: Upper,
    first: Tagged<P>,
    last: Tagged<P>,
}

/// Streaming interval selector; `P` is an opaque tag carried with each
/// interval (rectangle selection uses it for the source rectangle's y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSelector<P = ()> {
    windows: BTreeMap<Lower, Window<P>>,
}

impl<P> Default for IntervalSelector<P> {
    fn default() -> Self {
        IntervalSelector { windows: BTreeMap::new() }
    }
}

impl<P: Clone> IntervalSelector<P> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, interval: Interval, payload: P) {
        let item = Tagged { interval, payload };
        if self.windows.is_empty() {
            self.windows.insert(Lower::Unbounded, Window { upper: Upper::Unbounded, first: item.clone(), last: item });
            return;
        }
        // Windows partition the line, so the one holding `lo` is the last
        // whose lower end admits it.
        let probe = Lower::Inclusive(item.interval.lo().clone());
        let (lower, window) = self.windows.range_mut(..=probe).next_back().expect("windows cover the line");
        debug_assert!(lower.admits(item.interval.lo()));
        if !window.upper.admits(item.interval.hi()) {
            return;
        }
        let (lo, hi) = (item.interval.lo(), item.interval.hi());
        if lo > window.first.interval.hi() {
            let cut = window.first.interval.hi().clone();
            let upper = std::mem::replace(&mut window.upper, Upper::Inclusive(cut.clone()));
            window.last = window.first.clone();
            self.windows.insert(Lower::Exclusive(cut), Window { upper, first: item.clone(), last: item });
        } else if hi < window.last.interval.lo() {
            let cut = window.last.interval.lo().clone();
            let upper = std::mem::replace(&mut window.upper, Upper::Exclusive(cut.clone()));
            let kept = std::mem::replace(&mut window.last, item.clone());
            window.first = item;
            self.windows.insert(Lower::Inclusive(cut), Window { upper, first: kept.clone(), last: kept });
        } else {
            let f = &window.first.interval;
            if hi < f.hi() || (hi == f.hi() && lo > f.lo()) {
                window.first = item.clone();
            }
            let l = &window.last.interval;
            if lo > l.lo() || (lo == l.lo() && hi < l.hi()) {
                window.last = item;
            }
        }
    }

    /// The current selection, pairwise disjoint and ordered left to right.
    pub fn selected(&self) -> Vec<Tagged<P>> {
        self.windows.values().map(|w| w.first.clone()).collect()
    }

    pub fn selected_intervals(&self) -> Vec<Interval> {
        self.windows.values().map(|w| w.first.interval.clone()).collect()
    }

    /// Size of the current selection.
    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    /// Number of distinct intervals held in memory, at most `2 * len()`.
    pub fn stored_count(&self) -> usize {
        self.windows.values().map(|w| if w.first.interval == w.last.interval { 1 } else { 2 }).sum()
    }
}

fn encode_lower(lower: &Lower, out: &mut BitWriter) {
    out.write_bits(lower.rank() as u64, 2);
    if let Lower::Inclusive(c) | Lower::Exclusive(c) = lower {
        out.write_coord(c);
    }
}

fn encode_upper(upper: &Upper, out: &mut BitWriter) {
    match upper {
        Upper::Inclusive(c) => {
            out.write_bits(0, 2);
            out.write_coord(c);
        }
        Upper::Exclusive(c) => {
            out.write_bits(1, 2);
            out.write_coord(c);
        }
        Upper::Unbounded => out.write_bits(2, 2),
    }
}

fn decode_lower(input: &mut BitReader<'_>) -> Result<Lower, DecodeError> {
    let at = input.position();
    match input.read_bits(2)? {
        0 => Ok(Lower::Unbounded),
        1 => Ok(Lower::Inclusive(input.read_coord()?)),
        2 => Ok(Lower::Exclusive(input.read_coord()?)),
        _ => Err(DecodeError::Malformed { at, what: "window lower tag" }),
    }
}

fn decode_upper(input: &mut BitReader<'_>) -> Result<Upper, DecodeError> {
    let at = input.position();
    match input.read_bits(2)? {
        0 => Ok(Upper::Inclusive(input.read_coord()?)),
        1 => Ok(Upper::Exclusive(input.read_coord()?)),
        2 => Ok(Upper::Unbounded),
        _ => Err(DecodeError::Malformed { at, what: "window upper tag" }),
    }
}

fn encode_tagged<P: Encode>(t: &Tagged<P>, out: &mut BitWriter) {
    t.interval.encode(out);
    t.payload.encode(out);
}

fn decode_tagged<P: Decode>(input: &mut BitReader<'_>) -> Result<Tagged<P>, DecodeError> {
    Ok(Tagged { interval: Interval::decode(input)?, payload: P::decode(input)? })
}

// Layout: window count, then per window its bounds, `first`, and `last`
// unless it coincides with `first`.
impl<P: Encode + PartialEq> Encode for IntervalSelector<P> {
    fn encode(&self, out: &mut BitWriter) {
        out.write_varint(self.windows.len() as u64);
        for (lower, w) in &self.windows {
            encode_lower(lower, out);
            encode_upper(&w.upper, out);
            encode_tagged(&w.first, out);
            let same = w.first == w.last;
            out.write_bit(same);
            if !same {
                encode_tagged(&w.last, out);
            }
        }
    }
}

impl<P: Decode + Clone> Decode for IntervalSelector<P> {
    fn decode(input: &mut BitReader<'_>) -> Result<Self, DecodeError> {
        let count = input.read_varint()?;
        let mut windows = BTreeMap::new();
        for _ in 0..count {
            let lower = decode_lower(input)?;
            let upper = decode_upper(input)?;
            let first: Tagged<P> = decode_tagged(input)?;
            let last = if input.read_bit()? { first.clone() } else { decode_tagged(input)? };
            windows.insert(lower, Window { upper, first, last });
        }
        Ok(IntervalSelector { windows })
    }
}

impl StreamAlgorithm for IntervalSelector<()> {
    type Output = Vec<Interval>;
    type Error = SelectionError;

    fn kind(&self) -> ObjectKind {
        ObjectKind::Interval
    }

    fn process(&mut self, object: &GeomObject) -> Result<(), SelectionError> {
        let GeomObject::Interval(i) = object else {
            return Err(SelectionError::WrongKind(object.kind()));
        };
        self.insert(i.clone(), ());
        Ok(())
    }

    fn result(&self) -> Vec<Interval> {
        self.selected_intervals()
    }

    fn encode_state(&self, out: &mut BitWriter) {
        self.encode(out);
    }
}
