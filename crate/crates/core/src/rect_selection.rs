//! One-pass 4-approximation for independent sets of unit-height rectangles.
//!
//! The y-axis is tiled twice by half-open windows `[ℓ, ℓ+2)`, once with even
//! and once with odd `ℓ`. A rectangle with bottom `y` sits in exactly one of
//! them, namely `ℓ = floor(y)`. All rectangles of one window share a horizontal
//! line, so within a window independence is independence of x-projections and
//! the interval selector applies. Same-parity windows are disjoint, so the
//! union of their selections stays independent; the better parity keeps at
//! least half of a 2-approximation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::geometry::{Coord, GeomObject, ObjectKind, UnitRect};
use crate::interval_selection::IntervalSelector;
use crate::streamkit::{BitWriter, Encode, StreamAlgorithm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RectSelectionError {
    #[error("rectangle selection received a {0}")]
    WrongKind(ObjectKind),
}

/// Window `[ell, ell + 2)` of the tiling with the given parity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WindowKey {
    pub parity: u8,
    pub ell: BigInt,
}

impl WindowKey {
    pub fn contains_y(&self, y: &Coord) -> bool {
        let lo = Coord::from_integer(self.ell.clone());
        let hi = Coord::from_integer(&self.ell + 2);
        &lo <= y && y < &hi
    }
}

pub fn window_of(r: &UnitRect) -> WindowKey {
    let ell = r.y_bottom.floor();
    let parity = if ell.is_even() { 0 } else { 1 };
    WindowKey { parity, ell }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RectSelector {
    windows: BTreeMap<WindowKey, IntervalSelector<Coord>>,
}

impl RectSelector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, r: &UnitRect) {
        self.windows.entry(window_of(r)).or_default().insert(r.x.clone(), r.y_bottom.clone());
    }

    /// Union of the selections of all windows with the given parity.
    pub fn parity_selection(&self, parity: u8) -> Vec<UnitRect> {
        self.windows
            .iter()
            .filter(|(k, _)| k.parity == parity)
            .flat_map(|(_, sel)| sel.selected())
            .map(|t| UnitRect::new(t.interval, t.payload))
            .collect()
    }

    /// The larger of the two parity selections; ties go to even.
    pub fn selection(&self) -> Vec<UnitRect> {
        let even = self.parity_selection(0);
        let odd = self.parity_selection(1);
        if odd.len() > even.len() {
            odd
        } else {
            even
        }
    }

    pub fn window_count(&self) -> usize {
        self.windows.len()
    }

    pub fn windows(&self) -> impl Iterator<Item = (&WindowKey, &IntervalSelector<Coord>)> {
        self.windows.iter()
    }
}

// Layout: window count, then per window its base and the selector state. The
// parity is implied by the base.
impl Encode for RectSelector {
    fn encode(&self, out: &mut BitWriter) {
        out.write_varint(self.windows.len() as u64);
        for (key, sel) in &self.windows {
            out.write_bigint(&key.ell);
            sel.encode(out);
        }
    }
}

impl StreamAlgorithm for RectSelector {
    type Output = Vec<UnitRect>;
    type Error = RectSelectionError;

    fn kind(&self) -> ObjectKind {
        ObjectKind::UnitRect
    }

    fn process(&mut self, object: &GeomObject) -> Result<(), RectSelectionError> {
        let GeomObject::UnitRect(r) = object else {
            return Err(RectSelectionError::WrongKind(object.kind()));
        };
        self.insert(r);
        Ok(())
    }

    fn result(&self) -> Vec<UnitRect> {
        self.selection()
    }

    fn encode_state(&self, out: &mut BitWriter) {
        self.encode(out);
    }
}
