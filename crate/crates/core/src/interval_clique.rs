//! Exact maximum clique of an interval stream over the integer universe
//! `1..=U`, in two passes.
//!
//! Intervals on a line have the Helly property, so a maximum clique is the set
//! of intervals through a deepest point, and depth only changes at integer
//! endpoints. Pass one keeps a depth counter per coordinate; pass two emits the
//! intervals through the smallest deepest coordinate.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{Coord, GeomObject, Interval, ObjectKind};
use crate::streamkit::{bit_width, BitWriter, Encode, StreamAlgorithm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliqueError {
    #[error("endpoint {coord} is not an integer in 1..={universe}")]
    UniverseViolation { coord: Coord, universe: u64 },
    #[error("{0}")]
    Phase(&'static str),
    #[error("interval clique received a {0}")]
    WrongKind(ObjectKind),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Counting,
    Filtering,
}

/// One depth counter per coordinate of `1..=universe`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterArray {
    universe: u64,
    counts: Vec<u32>,
    phase: Phase,
    witness: Option<u64>,
}

impl CounterArray {
    pub fn new(universe: u64) -> Self {
        CounterArray { universe, counts: vec![0; universe as usize], phase: Phase::Counting, witness: None }
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Counter values for coordinates `1..=universe`.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    fn index_of(&self, c: &Coord) -> Result<u64, CliqueError> {
        let violation = || CliqueError::UniverseViolation { coord: c.clone(), universe: self.universe };
        let v = c.to_integer().as_ref().and_then(BigInt::to_u64).ok_or_else(violation)?;
        if (1..=self.universe).contains(&v) {
            Ok(v)
        } else {
            Err(violation())
        }
    }

    pub fn pass1_process(&mut self, i: &Interval) -> Result<(), CliqueError> {
        if self.phase != Phase::Counting {
            return Err(CliqueError::Phase("counting is over; the stream is in its filtering pass"));
        }
        let lo = self.index_of(i.lo())?;
        let hi = self.index_of(i.hi())?;
        for c in &mut self.counts[(lo - 1) as usize..hi as usize] {
            *c += 1;
        }
        Ok(())
    }

    /// Clique size of the intervals counted so far and the smallest
    /// coordinate of maximum depth.
    pub fn omega(&self) -> (u64, Option<u64>) {
        let mut best = (0u32, None);
        for (idx, &c) in self.counts.iter().enumerate() {
            if c > best.0 {
                best = (c, Some(idx as u64 + 1));
            }
        }
        (best.0 as u64, best.1)
    }

    /// Ends counting and fixes the witness coordinate for filtering.
    pub fn start_filtering(&mut self) {
        self.witness = self.omega().1;
        self.phase = Phase::Filtering;
    }

    pub fn witness(&self) -> Option<u64> {
        self.witness
    }

    pub fn pass2_filter(&self, i: &Interval) -> Result<bool, CliqueError> {
        if self.phase != Phase::Filtering {
            return Err(CliqueError::Phase("filtering requested before counting finished"));
        }
        Ok(self.witness.is_some_and(|w| i.contains_point(&Coord::from(w))))
    }
}

// Layout: universe, phase bit, optional witness, counter width, then the
// counters at that uniform width.
impl Encode for CounterArray {
    fn encode(&self, out: &mut BitWriter) {
        out.write_varint(self.universe);
        out.write_bit(self.phase == Phase::Filtering);
        out.write_bit(self.witness.is_some());
        if let Some(w) = self.witness {
            out.write_varint(w);
        }
        let max = self.counts.iter().copied().max().unwrap_or(0);
        let width = bit_width(max as u64);
        out.write_varint(width as u64);
        for &c in &self.counts {
            out.write_bits(c as u64, width);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueOutcome {
    pub omega: u64,
    pub witness: Option<u64>,
    /// Intervals through the witness; present once the filtering pass ran.
    pub clique: Option<Vec<Interval>>,
}

/// Two-pass streaming wrapper around [`CounterArray`].
#[derive(Clone, Debug)]
pub struct IntervalClique {
    counters: CounterArray,
    passes_done: u32,
    clique: Vec<Interval>,
}

impl IntervalClique {
    pub fn new(universe: u64) -> Self {
        IntervalClique { counters: CounterArray::new(universe), passes_done: 0, clique: Vec::new() }
    }

    pub fn counters(&self) -> &CounterArray {
        &self.counters
    }
}

impl StreamAlgorithm for IntervalClique {
    type Output = CliqueOutcome;
    type Error = CliqueError;

    fn kind(&self) -> ObjectKind {
        ObjectKind::Interval
    }

    fn process(&mut self, object: &GeomObject) -> Result<(), CliqueError> {
        let GeomObject::Interval(i) = object else {
            return Err(CliqueError::WrongKind(object.kind()));
        };
        match self.passes_done {
            0 => self.counters.pass1_process(i),
            1 => {
                if self.counters.pass2_filter(i)? {
                    self.clique.push(i.clone());
                }
                Ok(())
            }
            _ => Err(CliqueError::Phase("only two passes are defined")),
        }
    }

    fn finish_pass(&mut self) -> Result<(), CliqueError> {
        if self.passes_done == 0 {
            self.counters.start_filtering();
        }
        self.passes_done += 1;
        Ok(())
    }

    fn result(&self) -> CliqueOutcome {
        let (omega, witness) = self.counters.omega();
        CliqueOutcome { omega, witness, clique: (self.passes_done >= 2).then(|| self.clique.clone()) }
    }

    fn encode_state(&self, out: &mut BitWriter) {
        self.counters.encode(out);
        out.write_varint(self.clique.len() as u64);
        for i in &self.clique {
            i.encode(out);
        }
    }
}
