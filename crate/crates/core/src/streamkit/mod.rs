//! Stream harness: replayable object streams, multi-pass execution,
//! player-handoff simulation and bit-level memory accounting.

mod bits;
mod harness;
mod stream;

pub use bits::{bit_width, BitReader, BitWriter, Decode, DecodeError, Encode};
pub use harness::{run_player_partitioned, run_stream, HarnessError, StreamAlgorithm, StreamStats};
pub use stream::{codec_roundtrip, CodecError, ObjectStream, PlayerRange, PlayersError};
