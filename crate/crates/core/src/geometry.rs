//! Exact geometric primitives: intervals, segments between two parallel
//! lines, unit-height rectangles and 2-intervals.
//!
//! All objects are closed, so touching counts as intersecting. Coordinates are
//! exact rationals and every predicate is decided without rounding.

#![allow(clippy::result_large_err)]

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("invalid coordinate {0:?}: expected a decimal integer or \"p/q\"")]
    BadCoord(String),
    #[error("zero denominator in coordinate")]
    ZeroDenominator,
    #[error("interval lower endpoint {lo} exceeds upper endpoint {hi}")]
    InvertedInterval { lo: Coord, hi: Coord },
    #[error("2-interval members overlap or are out of order: left ends at {left_hi}, right starts at {right_lo}")]
    UnorderedTwoInterval { left_hi: Coord, right_lo: Coord },
}

/// Exact rational coordinate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord(BigRational);

impl Coord {
    pub fn zero() -> Self {
        Coord(BigRational::zero())
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Coord(BigRational::from_integer(value.into()))
    }

    pub fn ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, GeometryError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(GeometryError::ZeroDenominator);
        }
        Ok(Coord(BigRational::new(numer.into(), denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive; 1 for integers.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn abs(&self) -> Coord {
        Coord(self.0.abs())
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Coord {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GeometryError::BadCoord(s.to_owned());
        let parse_int = |part: &str| -> Result<BigInt, GeometryError> {
            let digits = part.strip_prefix('-').unwrap_or(part);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            part.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(Coord::from_integer(parse_int(s)?)),
            Some((p, q)) => Coord::ratio(parse_int(p)?, parse_int(q)?),
        }
    }
}

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Coord {
    fn from(v: i64) -> Self {
        Coord::from_integer(v)
    }
}

impl From<i32> for Coord {
    fn from(v: i32) -> Self {
        Coord::from_integer(v)
    }
}

impl From<u64> for Coord {
    fn from(v: u64) -> Self {
        Coord::from_integer(v)
    }
}

impl From<BigInt> for Coord {
    fn from(v: BigInt) -> Self {
        Coord::from_integer(v)
    }
}

impl From<BigRational> for Coord {
    fn from(v: BigRational) -> Self {
        Coord(v)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Coord> for &Coord {
            type Output = Coord;
            fn $method(self, rhs: &Coord) -> Coord {
                Coord($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Coord> for Coord {
            type Output = Coord;
            fn $method(self, rhs: Coord) -> Coord {
                Coord($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Coord> for Coord {
            type Output = Coord;
            fn $method(self, rhs: &Coord) -> Coord {
                Coord($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        Coord(-self.0)
    }
}

/// Closed interval `[lo, hi]`, possibly a single point.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInterval")]
pub struct Interval {
    lo: Coord,
    hi: Coord,
}

#[derive(Deserialize)]
struct RawInterval {
    lo: Coord,
    hi: Coord,
}

impl TryFrom<RawInterval> for Interval {
    type Error = GeometryError;
    fn try_from(raw: RawInterval) -> Result<Self, Self::Error> {
        Interval::new(raw.lo, raw.hi)
    }
}

impl Interval {
    pub fn new(lo: impl Into<Coord>, hi: impl Into<Coord>) -> Result<Self, GeometryError> {
        let (lo, hi) = (lo.into(), hi.into());
        if lo > hi {
            return Err(GeometryError::InvertedInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// Panicking constructor for literals in tests and generators whose
    /// endpoints are ordered by construction.
    pub fn closed(lo: impl Into<Coord>, hi: impl Into<Coord>) -> Self {
        Interval::new(lo, hi).expect("interval endpoints out of order")
    }

    pub fn lo(&self) -> &Coord {
        &self.lo
    }

    pub fn hi(&self) -> &Coord {
        &self.hi
    }

    pub fn contains_point(&self, p: &Coord) -> bool {
        &self.lo <= p && p <= &self.hi
    }

    /// `self ⊆ outer`.
    pub fn is_within(&self, outer: &Interval) -> bool {
        outer.lo <= self.lo && self.hi <= outer.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        intervals_intersect(self, other)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Segment from `(top_x, 1)` to `(bottom_x, 0)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct PermSegment {
    pub top: Coord,
    pub bottom: Coord,
}

impl PermSegment {
    pub fn new(top: impl Into<Coord>, bottom: impl Into<Coord>) -> Self {
        PermSegment { top: top.into(), bottom: bottom.into() }
    }
}

/// Closed rectangle `x × [y_bottom, y_bottom + 1]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct UnitRect {
    pub x: Interval,
    pub y_bottom: Coord,
}

impl UnitRect {
    pub fn new(x: Interval, y_bottom: impl Into<Coord>) -> Self {
        UnitRect { x, y_bottom: y_bottom.into() }
    }

    pub fn y_span(&self) -> Interval {
        Interval { lo: self.y_bottom.clone(), hi: &self.y_bottom + &Coord::from(1) }
    }
}

/// Pair of disjoint intervals; `left` lies strictly before `right`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawTwoInterval")]
pub struct TwoInterval {
    left: Interval,
    right: Interval,
}

#[derive(Deserialize)]
struct RawTwoInterval {
    left: Interval,
    right: Interval,
}

impl TryFrom<RawTwoInterval> for TwoInterval {
    type Error = GeometryError;
    fn try_from(raw: RawTwoInterval) -> Result<Self, Self::Error> {
        TwoInterval::new(raw.left, raw.right)
    }
}

impl TwoInterval {
    pub fn new(left: Interval, right: Interval) -> Result<Self, GeometryError> {
        if left.hi >= right.lo {
            return Err(GeometryError::UnorderedTwoInterval { left_hi: left.hi.clone(), right_lo: right.lo.clone() });
        }
        Ok(TwoInterval { left, right })
    }

    pub fn left(&self) -> &Interval {
        &self.left
    }

    pub fn right(&self) -> &Interval {
        &self.right
    }
}

pub fn intervals_intersect(a: &Interval, b: &Interval) -> bool {
    a.lo <= b.hi && b.lo <= a.hi
}

/// Two segments between the lines y=1 and y=0 meet iff their order on the
/// top line is not the same as their order on the bottom line.
pub fn segments_intersect(a: &PermSegment, b: &PermSegment) -> bool {
    let top = a.top.cmp(&b.top);
    let bottom = a.bottom.cmp(&b.bottom);
    top == Ordering::Equal || bottom == Ordering::Equal || top != bottom
}

pub fn rects_intersect(a: &UnitRect, b: &UnitRect) -> bool {
    intervals_intersect(&a.x, &b.x) && (&a.y_bottom - &b.y_bottom).abs() <= Coord::from(1)
}

pub fn two_intervals_intersect(a: &TwoInterval, b: &TwoInterval) -> bool {
    [&a.left, &a.right].into_iter().any(|x| intervals_intersect(x, &b.left) || intervals_intersect(x, &b.right))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum ObjectKind {
    Interval,
    Segment,
    UnitRect,
    TwoInterval,
}

impl ObjectKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ObjectKind::Interval => "interval",
            ObjectKind::Segment => "segment",
            ObjectKind::UnitRect => "unit_rect",
            ObjectKind::TwoInterval => "two_interval",
        }
    }
}

impl fmt::Display for ObjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ObjectKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "interval" => Ok(ObjectKind::Interval),
            "segment" => Ok(ObjectKind::Segment),
            "unit_rect" => Ok(ObjectKind::UnitRect),
            "two_interval" => Ok(ObjectKind::TwoInterval),
            other => Err(format!("unknown object kind {other:?}")),
        }
    }
}

/// Any object that can appear in a stream.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeomObject {
    Interval(Interval),
    Segment(PermSegment),
    UnitRect(UnitRect),
    TwoInterval(TwoInterval),
}

impl GeomObject {
    pub fn kind(&self) -> ObjectKind {
        match self {
            GeomObject::Interval(_) => ObjectKind::Interval,
            GeomObject::Segment(_) => ObjectKind::Segment,
            GeomObject::UnitRect(_) => ObjectKind::UnitRect,
            GeomObject::TwoInterval(_) => ObjectKind::TwoInterval,
        }
    }

    /// `None` when the two objects are of different kinds.
    pub fn intersects(&self, other: &GeomObject) -> Option<bool> {
        use GeomObject::*;
        match (self, other) {
            (Interval(a), Interval(b)) => Some(intervals_intersect(a, b)),
            (Segment(a), Segment(b)) => Some(segments_intersect(a, b)),
            (UnitRect(a), UnitRect(b)) => Some(rects_intersect(a, b)),
            (TwoInterval(a), TwoInterval(b)) => Some(two_intervals_intersect(a, b)),
            _ => None,
        }
    }

    pub fn as_interval(&self) -> Option<&Interval> {
        match self {
            GeomObject::Interval(i) => Some(i),
            _ => None,
        }
    }

    pub fn as_segment(&self) -> Option<&PermSegment> {
        match self {
            GeomObject::Segment(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_unit_rect(&self) -> Option<&UnitRect> {
        match self {
            GeomObject::UnitRect(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_two_interval(&self) -> Option<&TwoInterval> {
        match self {
            GeomObject::TwoInterval(t) => Some(t),
            _ => None,
        }
    }
}

impl From<Interval> for GeomObject {
    fn from(v: Interval) -> Self {
        GeomObject::Interval(v)
    }
}

impl From<PermSegment> for GeomObject {
    fn from(v: PermSegment) -> Self {
        GeomObject::Segment(v)
    }
}

impl From<UnitRect> for GeomObject {
    fn from(v: UnitRect) -> Self {
        GeomObject::UnitRect(v)
    }
}

impl From<TwoInterval> for GeomObject {
    fn from(v: TwoInterval) -> Self {
        GeomObject::TwoInterval(v)
    }
}
