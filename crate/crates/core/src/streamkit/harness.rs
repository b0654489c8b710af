use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::bits::BitWriter;
use super::stream::ObjectStream;
use crate::geometry::{GeomObject, ObjectKind};

/// A one-object-at-a-time algorithm whose retained state has a canonical
/// binary encoding. The harness measures memory as the bit length of that
/// encoding.
pub trait StreamAlgorithm {
    type Output;
    type Error: std::error::Error + Send + Sync + 'static;

    /// The only object kind the algorithm accepts.
    fn kind(&self) -> ObjectKind;

    fn process(&mut self, object: &GeomObject) -> Result<(), Self::Error>;

    /// Called at the end of every pass.
    fn finish_pass(&mut self) -> Result<(), Self::Error> {
        Ok(())
    }

    fn result(&self) -> Self::Output;

    fn encode_state(&self, out: &mut BitWriter);

    fn state_size_bits(&self) -> u64 {
        let mut w = BitWriter::new();
        self.encode_state(&mut w);
        w.len_bits()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StreamStats {
    /// Number of `process` calls over all passes.
    pub items: u64,
    pub passes: u32,
    pub peak_state_bits: u64,
    /// State size at each player handoff, in stream order, pass after pass.
    pub handoff_bits: Vec<u64>,
}

impl StreamStats {
    pub fn max_handoff_bits(&self) -> Option<u64> {
        self.handoff_bits.iter().copied().max()
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("at least one pass is required")]
    ZeroPasses,
    #[error("object {position} has kind {found}, algorithm expects {expected}")]
    KindMismatch { position: usize, expected: ObjectKind, found: ObjectKind },
    #[error("algorithm failed on object {position} in pass {pass}: {source}")]
    Process { position: usize, pass: u32, source: Box<dyn std::error::Error + Send + Sync> },
    #[error("algorithm failed to finish pass {pass}: {source}")]
    FinishPass { pass: u32, source: Box<dyn std::error::Error + Send + Sync> },
    #[error("stream has no player boundaries")]
    MissingPlayers,
}

pub fn run_stream<A: StreamAlgorithm>(
    alg: &mut A,
    stream: &ObjectStream,
    passes: u32,
) -> Result<(A::Output, StreamStats), HarnessError> {
    drive(alg, stream, passes, None)
}

/// Single pass that also records the state size at every player handoff.
pub fn run_player_partitioned<A: StreamAlgorithm>(
    alg: &mut A,
    stream: &ObjectStream,
) -> Result<(A::Output, StreamStats), HarnessError> {
    let players = stream.players().ok_or(HarnessError::MissingPlayers)?;
    // A handoff happens after every player but the last.
    let handoffs: Vec<usize> = players.iter().take(players.len().saturating_sub(1)).map(|p| p.end).collect();
    drive(alg, stream, 1, Some(&handoffs))
}

fn drive<A: StreamAlgorithm>(
    alg: &mut A,
    stream: &ObjectStream,
    passes: u32,
    handoffs: Option<&[usize]>,
) -> Result<(A::Output, StreamStats), HarnessError> {
    if passes == 0 {
        return Err(HarnessError::ZeroPasses);
    }
    let expected = alg.kind();
    if let Some((position, obj)) = stream.objects().iter().enumerate().find(|(_, o)| o.kind() != expected) {
        return Err(HarnessError::KindMismatch { position, expected, found: obj.kind() });
    }

    let mut stats = StreamStats { passes, peak_state_bits: alg.state_size_bits(), ..Default::default() };
    for pass in 1..=passes {
        let mut pending = handoffs.unwrap_or(&[]).iter().peekable();
        // Handoffs from players that contributed nothing sit at position 0.
        while pending.next_if(|&&at| at == 0).is_some() {
            stats.handoff_bits.push(alg.state_size_bits());
        }
        for (position, obj) in stream.objects().iter().enumerate() {
            alg.process(obj).map_err(|e| HarnessError::Process { position, pass, source: Box::new(e) })?;
            stats.items += 1;
            let bits = alg.state_size_bits();
            stats.peak_state_bits = stats.peak_state_bits.max(bits);
            while pending.next_if(|&&at| at == position + 1).is_some() {
                stats.handoff_bits.push(bits);
            }
        }
        alg.finish_pass().map_err(|e| HarnessError::FinishPass { pass, source: Box::new(e) })?;
        stats.peak_state_bits = stats.peak_state_bits.max(alg.state_size_bits());
    }
    Ok((alg.result(), stats))
}
