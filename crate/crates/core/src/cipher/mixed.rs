//! Alternating stream and block encryption driven by a digit schedule.
//!
//! Digit `d` of the schedule sends the next `d` plaintext symbols through the
//! current engine, then the engine switches. Engines alternate starting with
//! the stream cipher and the schedule repeats until the message is consumed.
//! The stream keeps its chaining state across its own segments; block
//! segments are padded independently and do not touch that state.

use std::fmt;
use std::str::FromStr;

use super::block::{padded_len, BlockCipher};
use super::stream::{NaryStream, StreamState};
use crate::error::{Error, Result};
use crate::table::check_symbols;
use crate::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixSchedule {
    digits: Vec<usize>,
}

impl MixSchedule {
    pub fn new(digits: Vec<usize>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::InvalidSchedule("schedule is empty".into()));
        }
        if digits.contains(&0) {
            return Err(Error::InvalidSchedule(
                "segment lengths must be at least 1".into(),
            ));
        }
        Ok(Self { digits })
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }
}

/// Accepts `4 5`, `4,5`, or a bare digit string such as `45`.
impl FromStr for MixSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |t: &str| Error::InvalidSchedule(format!("bad segment length {t:?}"));
        let digits = if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| bad(t)))
                .collect::<Result<Vec<usize>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| bad(&c.to_string()))
                })
                .collect::<Result<Vec<usize>>>()?
        };
        Self::new(digits)
    }
}

impl fmt::Display for MixSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.digits.iter().map(ToString::to_string).collect();
        f.write_str(&d.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentEngine {
    Stream,
    Block,
}

/// One schedule step as applied to a message.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub engine: SegmentEngine,
    pub plain_len: usize,
    pub cipher_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedCipher {
    stream: NaryStream,
    block: BlockCipher,
    schedule: MixSchedule,
}

impl MixedCipher {
    pub fn new(stream: NaryStream, block: BlockCipher, schedule: MixSchedule) -> Result<Self> {
        if stream.arity() != block.arity() || stream.order() != block.order() {
            return Err(Error::Incompatible(format!(
                "stream key has arity {} over {} symbols, block system has arity {} over {}",
                stream.arity(),
                stream.order(),
                block.arity(),
                block.order()
            )));
        }
        Ok(Self {
            stream,
            block,
            schedule,
        })
    }

    pub fn schedule(&self) -> &MixSchedule {
        &self.schedule
    }

    pub fn order(&self) -> usize {
        self.stream.order()
    }

    /// Segment layout for a plaintext of `plain_len` symbols.
    pub fn layout(&self, plain_len: usize) -> Vec<Segment> {
        let n = self.block.arity();
        let mut segments = Vec::new();
        let mut left = plain_len;
        for (i, &d) in self.schedule.digits.iter().cycle().enumerate() {
            if left == 0 {
                break;
            }
            let take = d.min(left);
            left -= take;
            let engine = if i % 2 == 0 {
                SegmentEngine::Stream
            } else {
                SegmentEngine::Block
            };
            let cipher_len = match engine {
                SegmentEngine::Stream => take,
                SegmentEngine::Block => padded_len(take, n),
            };
            segments.push(Segment {
                engine,
                plain_len: take,
                cipher_len,
            });
        }
        segments
    }

    pub fn cipher_len(&self, plain_len: usize) -> usize {
        self.layout(plain_len).iter().map(|s| s.cipher_len).sum()
    }

    /// Returns the ciphertext and the segment trace.
    pub fn encrypt(&self, plain: &[Symbol]) -> Result<(Vec<Symbol>, Vec<Segment>)> {
        check_symbols(plain, self.order())?;
        let trace = self.layout(plain.len());
        let mut state = StreamState::new();
        let mut out = Vec::new();
        let mut pos = 0;
        for seg in &trace {
            let part = &plain[pos..pos + seg.plain_len];
            pos += seg.plain_len;
            match seg.engine {
                SegmentEngine::Stream => out.extend(self.stream.encrypt_with(&mut state, part)?),
                SegmentEngine::Block => out.extend(self.block.encrypt_padded(part)?),
            }
        }
        Ok((out, trace))
    }

    pub fn decrypt(&self, cipher: &[Symbol], plain_len: usize) -> Result<Vec<Symbol>> {
        check_symbols(cipher, self.order())?;
        let trace = self.layout(plain_len);
        let expected: usize = trace.iter().map(|s| s.cipher_len).sum();
        if cipher.len() != expected {
            return Err(Error::MalformedCiphertext(format!(
                "expected {expected} symbols for {plain_len} plaintext symbols, got {}",
                cipher.len()
            )));
        }
        let mut state = StreamState::new();
        let mut out = Vec::with_capacity(plain_len);
        let mut pos = 0;
        for seg in &trace {
            let part = &cipher[pos..pos + seg.cipher_len];
            pos += seg.cipher_len;
            match seg.engine {
                SegmentEngine::Stream => out.extend(self.stream.decrypt_with(&mut state, part)?),
                SegmentEngine::Block => out.extend(self.block.decrypt_padded(part, seg.plain_len)?),
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cipher::stream::LeaderBlock;
    use crate::fixtures;

    fn mixed(digits: Vec<usize>) -> MixedCipher {
        let sys = fixtures::order4_system();
        let stream = NaryStream::new(
            fixtures::ternary_quasigroup(),
            LeaderBlock::new(3, vec![0, 1, 2, 3]).unwrap(),
        )
        .unwrap();
        MixedCipher::new(
            stream,
            BlockCipher::new(sys, 1).unwrap(),
            MixSchedule::new(digits).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn schedule_parsing() {
        assert_eq!("4 5".parse::<MixSchedule>().unwrap().digits(), &[4, 5]);
        assert_eq!("4,5,1".parse::<MixSchedule>().unwrap().digits(), &[4, 5, 1]);
        assert_eq!(
            "31415".parse::<MixSchedule>().unwrap().digits(),
            &[3, 1, 4, 1, 5]
        );
        assert!("".parse::<MixSchedule>().is_err());
        assert!("305".parse::<MixSchedule>().is_err());
        assert!("4 x".parse::<MixSchedule>().is_err());
    }

    #[test]
    fn four_then_five() {
        let m = mixed(vec![4, 5]);
        let layout = m.layout(20);
        let engines: Vec<_> = layout.iter().map(|s| (s.engine, s.plain_len)).collect();
        use SegmentEngine::*;
        assert_eq!(
            engines,
            vec![
                (Stream, 4),
                (Block, 5),
                (Stream, 4),
                (Block, 5),
                (Stream, 2)
            ]
        );
        assert_eq!(layout[1].cipher_len, 6);

        let plain: Vec<Symbol> = (0..20).map(|i| (i * 5 + 3) % 4).collect();
        let (cipher, trace) = m.encrypt(&plain).unwrap();
        assert_eq!(trace, layout);
        assert_eq!(cipher.len(), m.cipher_len(20));
        // The first four symbols are plain stream output.
        let stream_only = mixed(vec![100]);
        assert_eq!(cipher[..4], stream_only.encrypt(&plain).unwrap().0[..4]);
        assert_eq!(m.decrypt(&cipher, 20).unwrap(), plain);
        assert!(m.decrypt(&cipher[1..], 20).is_err());
    }

    #[test]
    fn single_long_segment_is_the_stream_cipher() {
        let m = mixed(vec![usize::MAX]);
        let plain = vec![0, 0, 0, 0];
        let (cipher, _) = m.encrypt(&plain).unwrap();
        let leaders = LeaderBlock::new(3, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(
            cipher,
            crate::cipher::stream::encrypt_nary(&fixtures::ternary_quasigroup(), &leaders, &plain)
                .unwrap()
        );
    }

    #[test]
    fn stream_chain_skips_block_segments() {
        let m = mixed(vec![2, 3]);
        let plain: Vec<Symbol> = vec![1, 2, 3, 0, 1, 2, 3];
        let (cipher, trace) = m.encrypt(&plain).unwrap();
        // stream: plain[0..2] and plain[5..7] as one continuous chain
        let stream_only = mixed(vec![usize::MAX]);
        let chained = stream_only.encrypt(&[1, 2, 2, 3]).unwrap().0;
        let block_len = trace[1].cipher_len;
        assert_eq!(cipher[..2], chained[..2]);
        assert_eq!(cipher[2 + block_len..], chained[2..]);
    }
}
