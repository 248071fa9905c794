//! The ciphers: chained quasigroup streams, orthogonal-system blocks, the
//! leader-fan variant, the mixed schedule, and the text ciphertext format.

pub mod block;
pub mod mixed;
pub mod stream;
pub mod vector;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::table::{check_symbols, Alphabet};
use crate::Symbol;

pub use block::{
    decrypt_block, encrypt_block, encrypt_block_rounds, encrypt_with_leaders, padded_len,
    BlockCipher, LeaderFan,
};
pub use mixed::{MixSchedule, MixedCipher, Segment, SegmentEngine};
pub use stream::{
    decrypt_binary, decrypt_nary, encrypt_binary, encrypt_nary, LeaderBlock, NaryStream,
    StreamState,
};
pub use vector::{devectorize, digits_per_byte, vectorize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    Plain,
    Cipher,
}

/// A sequence of alphabet symbols tagged with where it came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Message {
    pub origin: Origin,
    pub symbols: Vec<Symbol>,
}

impl Message {
    pub fn plain(symbols: Vec<Symbol>) -> Self {
        Self {
            origin: Origin::Plain,
            symbols,
        }
    }

    pub fn cipher(symbols: Vec<Symbol>) -> Self {
        Self {
            origin: Origin::Cipher,
            symbols,
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Binary,
    Nary,
    Block,
    LeaderFan,
    Mixed,
}

impl Engine {
    pub const ALL: [Engine; 5] = [
        Engine::Binary,
        Engine::Nary,
        Engine::Block,
        Engine::LeaderFan,
        Engine::Mixed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Binary => "binary",
            Engine::Nary => "nary",
            Engine::Block => "block",
            Engine::LeaderFan => "leaderfan",
            Engine::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown engine {s:?}")))
    }
}

pub const CIPHERTEXT_MAGIC: &str = "QC1";
const SYMBOLS_PER_LINE: usize = 32;

/// Ciphertext file: a header line `QC1 <engine> <n> <q> <msg-len>` followed
/// by the ciphertext symbols, whitespace separated. `msg-len` is the
/// plaintext length in symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiphertextFile {
    pub engine: Engine,
    pub arity: usize,
    pub order: usize,
    pub msg_len: usize,
    pub symbols: Vec<Symbol>,
}

impl CiphertextFile {
    /// Renders the file; symbols use `alphabet` names when given.
    pub fn render(&self, alphabet: Option<&Alphabet>) -> String {
        let mut out = format!(
            "{CIPHERTEXT_MAGIC} {} {} {} {}\n",
            self.engine, self.arity, self.order, self.msg_len
        );
        for line in self.symbols.chunks(SYMBOLS_PER_LINE) {
            let tokens: Vec<String> = line
                .iter()
                .map(|&s| alphabet.map_or_else(|| s.to_string(), |a| a.name(s)))
                .collect();
            out.push_str(&tokens.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str, alphabet: Option<&Alphabet>) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::MalformedCiphertext("empty ciphertext".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 || fields[0] != CIPHERTEXT_MAGIC {
            return Err(Error::MalformedCiphertext(format!("bad header {header:?}")));
        }
        let num = |i: usize, what: &str| -> Result<usize> {
            fields[i]
                .parse()
                .map_err(|_| Error::MalformedCiphertext(format!("bad {what} {:?}", fields[i])))
        };
        let engine: Engine = fields[1].parse()?;
        let (arity, order, msg_len) = (num(2, "arity")?, num(3, "order")?, num(4, "length")?);
        let mut symbols = Vec::new();
        for (no, line) in lines {
            for tok in line.split_whitespace() {
                let s = match alphabet {
                    Some(a) => a.encode(tok),
                    None => tok.parse().ok(),
                }
                .ok_or_else(|| Error::Parse {
                    line: no + 1,
                    message: format!("bad ciphertext symbol {tok:?}"),
                })?;
                symbols.push(s);
            }
        }
        check_symbols(&symbols, order)?;
        Ok(Self {
            engine,
            arity,
            order,
            msg_len,
            symbols,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ciphertext_file_round_trip() {
        let f = CiphertextFile {
            engine: Engine::Nary,
            arity: 3,
            order: 4,
            msg_len: 40,
            symbols: (0..40).map(|i| i % 4).collect(),
        };
        let text = f.render(None);
        assert!(text.starts_with("QC1 nary 3 4 40\n"));
        assert_eq!(CiphertextFile::parse(&text, None).unwrap(), f);
    }

    #[test]
    fn ciphertext_with_alphabet() {
        let abc = crate::fixtures::abc();
        let f = CiphertextFile {
            engine: Engine::Binary,
            arity: 2,
            order: 3,
            msg_len: 3,
            symbols: vec![2, 1, 0],
        };
        let text = f.render(Some(&abc));
        assert_eq!(text, "QC1 binary 2 3 3\nc b a\n");
        assert_eq!(CiphertextFile::parse(&text, Some(&abc)).unwrap(), f);
    }

    #[test]
    fn malformed_ciphertexts() {
        assert!(CiphertextFile::parse("", None).is_err());
        assert!(CiphertextFile::parse("QC2 nary 3 4 1\n0\n", None).is_err());
        assert!(CiphertextFile::parse("QC1 foo 3 4 1\n0\n", None).is_err());
        assert!(CiphertextFile::parse("QC1 nary 3 4 1\n9\n", None).is_err());
        assert!(matches!(
            CiphertextFile::parse("QC1 nary 3 4 1\n0 x\n", None),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn engine_names() {
        for e in Engine::ALL {
            assert_eq!(e.name().parse::<Engine>().unwrap(), e);
        }
    }
}
