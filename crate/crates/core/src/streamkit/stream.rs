//! Replayable object streams and the JSONL instance format.
//!
//! An instance file starts with a header line
//! `{"kind": "<object kind>|mixed|empty", "count": n, "players": [...]}`
//! followed by exactly `count` object lines.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{GeomObject, ObjectKind};

/// Contiguous slice `start..end` of the stream contributed by one player.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayerRange {
    pub player: u32,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("header announces {expected} objects but the file holds {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("line {line}: object of kind {found} in a stream of kind {expected}")]
    KindMismatch { line: usize, expected: String, found: ObjectKind },
    #[error("invalid player boundaries: {0}")]
    Players(#[from] PlayersError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlayersError {
    #[error("player {found} appears where player {expected} was expected")]
    OutOfOrder { expected: u32, found: u32 },
    #[error("player {player} starts at {start}, expected {expected}")]
    Gap { player: u32, start: usize, expected: usize },
    #[error("player {player} has start {start} after end {end}")]
    Inverted { player: u32, start: usize, end: usize },
    #[error("boundaries cover {covered} objects but the stream holds {len}")]
    Coverage { covered: usize, len: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ObjectStream {
    objects: Vec<GeomObject>,
    players: Option<Vec<PlayerRange>>,
}

#[derive(Serialize, Deserialize)]
struct Header {
    kind: String,
    count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    players: Option<Vec<PlayerRange>>,
}

impl ObjectStream {
    pub fn new(objects: Vec<GeomObject>) -> Self {
        ObjectStream { objects, players: None }
    }

    pub fn with_players(objects: Vec<GeomObject>, players: Vec<PlayerRange>) -> Result<Self, PlayersError> {
        validate_players(&players, objects.len())?;
        Ok(ObjectStream { objects, players: Some(players) })
    }

    /// Player `i + 1` contributes `chunks[i]`; empty chunks are allowed.
    pub fn from_player_chunks(chunks: Vec<Vec<GeomObject>>) -> Self {
        let mut objects = Vec::new();
        let mut players = Vec::with_capacity(chunks.len());
        for (i, chunk) in chunks.into_iter().enumerate() {
            let start = objects.len();
            objects.extend(chunk);
            players.push(PlayerRange { player: i as u32 + 1, start, end: objects.len() });
        }
        ObjectStream { objects, players: Some(players) }
    }

    pub fn objects(&self) -> &[GeomObject] {
        &self.objects
    }

    pub fn into_objects(self) -> Vec<GeomObject> {
        self.objects
    }

    pub fn players(&self) -> Option<&[PlayerRange]> {
        self.players.as_deref()
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// The common kind of all objects, `None` for empty or mixed streams.
    pub fn uniform_kind(&self) -> Option<ObjectKind> {
        let first = self.objects.first()?.kind();
        self.objects.iter().all(|o| o.kind() == first).then_some(first)
    }

    fn header_kind(&self) -> String {
        match (self.objects.first(), self.uniform_kind()) {
            (None, _) => "empty".to_owned(),
            (Some(_), Some(kind)) => kind.to_string(),
            (Some(_), None) => "mixed".to_owned(),
        }
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        let header = Header { kind: self.header_kind(), count: self.objects.len(), players: self.players.clone() };
        serde_json::to_writer(&mut out, &header)?;
        out.write_all(b"\n")?;
        for obj in &self.objects {
            serde_json::to_writer(&mut out, obj)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("serde_json emits UTF-8")
    }

    /// Blank lines are skipped; line numbers in errors are 1-based.
    pub fn read_jsonl<R: BufRead>(input: R) -> Result<Self, CodecError> {
        let mut lines = input.lines().enumerate().filter_map(|(i, line)| match line {
            Ok(l) if l.trim().is_empty() => None,
            other => Some((i + 1, other)),
        });
        let (line_no, header_line) = match lines.next() {
            Some((n, line)) => (n, line?),
            None => return Err(CodecError::Parse { line: 1, message: "missing header line".into() }),
        };
        let header: Header = serde_json::from_str(&header_line)
            .map_err(|e| CodecError::Parse { line: line_no, message: format!("bad header: {e}") })?;
        let expected_kind = match header.kind.as_str() {
            "mixed" | "empty" => None,
            k => Some(k.parse::<ObjectKind>().map_err(|message| CodecError::Parse { line: line_no, message })?),
        };

        let mut objects = Vec::with_capacity(header.count);
        for (n, line) in lines {
            let obj: GeomObject =
                serde_json::from_str(&line?).map_err(|e| CodecError::Parse { line: n, message: e.to_string() })?;
            if let Some(k) = expected_kind {
                if obj.kind() != k {
                    return Err(CodecError::KindMismatch { line: n, expected: header.kind.clone(), found: obj.kind() });
                }
            }
            objects.push(obj);
        }
        if objects.len() != header.count {
            return Err(CodecError::CountMismatch { expected: header.count, found: objects.len() });
        }
        match header.players {
            Some(players) => Ok(ObjectStream::with_players(objects, players)?),
            None => Ok(ObjectStream::new(objects)),
        }
    }

    pub fn from_jsonl_str(text: &str) -> Result<Self, CodecError> {
        Self::read_jsonl(text.as_bytes())
    }
}

fn validate_players(players: &[PlayerRange], len: usize) -> Result<(), PlayersError> {
    let mut cursor = 0;
    for (i, p) in players.iter().enumerate() {
        let expected = i as u32 + 1;
        if p.player != expected {
            return Err(PlayersError::OutOfOrder { expected, found: p.player });
        }
        if p.start != cursor {
            return Err(PlayersError::Gap { player: p.player, start: p.start, expected: cursor });
        }
        if p.end < p.start {
            return Err(PlayersError::Inverted { player: p.player, start: p.start, end: p.end });
        }
        cursor = p.end;
    }
    if cursor != len {
        return Err(PlayersError::Coverage { covered: cursor, len });
    }
    Ok(())
}

/// Serializes to JSONL and parses the text back.
pub fn codec_roundtrip(stream: &ObjectStream) -> Result<ObjectStream, CodecError> {
    ObjectStream::from_jsonl_str(&stream.to_jsonl())
}
