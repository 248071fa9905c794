//! Chained quasigroup stream ciphers.
//!
//! With an n-ary quasigroup `A` and `(n-1)²` leader symbols split into
//! `n-1` prefixes of length `n-1`:
//!
//! ```text
//! v_j = A(prefix_j, u_j)                  j = 1..n-1
//! v_t = A(v_{t-n+1}, …, v_{t-1}, u_t)     t ≥ n
//! ```
//!
//! and decryption applies the `n`-th inverse operation to the same
//! arguments. With `n = 2` there is one leader and this is the classic
//! binary chain `v_1 = l·u_1`, `v_i = v_{i-1}·u_i`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::quasigroup::{inverse_op, QuasigroupKey};
use crate::table::check_symbols;
use crate::Symbol;

/// The `(n-1)²` leader symbols of an n-ary stream cipher.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeaderBlock {
    arity: usize,
    leaders: Vec<Symbol>,
}

impl LeaderBlock {
    pub fn new(arity: usize, leaders: Vec<Symbol>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidArity {
                min: 2,
                found: arity,
            });
        }
        let expected = (arity - 1) * (arity - 1);
        if leaders.len() != expected {
            return Err(Error::LeaderCount {
                expected,
                found: leaders.len(),
            });
        }
        Ok(Self { arity, leaders })
    }

    /// The single leader of a binary chain.
    pub fn single(leader: Symbol) -> Self {
        Self {
            arity: 2,
            leaders: vec![leader],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn leaders(&self) -> &[Symbol] {
        &self.leaders
    }

    /// Prefix used for output position `slot` (0-based, `slot < n-1`).
    pub fn prefix(&self, slot: usize) -> &[Symbol] {
        let w = self.arity - 1;
        &self.leaders[slot * w..(slot + 1) * w]
    }

    pub fn prefixes(&self) -> impl Iterator<Item = &[Symbol]> {
        self.leaders.chunks(self.arity - 1)
    }
}

/// Chaining state of a stream: symbols processed so far and the last `n-1`
/// ciphertext symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StreamState {
    position: usize,
    window: VecDeque<Symbol>,
}

impl StreamState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn position(&self) -> usize {
        self.position
    }
}

/// An n-ary stream cipher key: quasigroup, its `n`-th inverse, and leaders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaryStream {
    key: QuasigroupKey,
    inverse: QuasigroupKey,
    leaders: LeaderBlock,
}

impl NaryStream {
    pub fn new(key: QuasigroupKey, leaders: LeaderBlock) -> Result<Self> {
        if leaders.arity() != key.arity() {
            return Err(Error::LeaderCount {
                expected: (key.arity() - 1).pow(2),
                found: leaders.leaders().len(),
            });
        }
        check_symbols(leaders.leaders(), key.order())?;
        let inverse = inverse_op(&key, key.arity())?;
        Ok(Self {
            key,
            inverse,
            leaders,
        })
    }

    pub fn key(&self) -> &QuasigroupKey {
        &self.key
    }

    pub fn inverse(&self) -> &QuasigroupKey {
        &self.inverse
    }

    pub fn leaders(&self) -> &LeaderBlock {
        &self.leaders
    }

    pub fn arity(&self) -> usize {
        self.key.arity()
    }

    pub fn order(&self) -> usize {
        self.key.order()
    }

    pub fn encrypt(&self, plain: &[Symbol]) -> Result<Vec<Symbol>> {
        self.encrypt_with(&mut StreamState::new(), plain)
    }

    pub fn decrypt(&self, cipher: &[Symbol]) -> Result<Vec<Symbol>> {
        self.decrypt_with(&mut StreamState::new(), cipher)
    }

    /// Encrypts a segment, continuing from `state`.
    pub fn encrypt_with(&self, state: &mut StreamState, plain: &[Symbol]) -> Result<Vec<Symbol>> {
        check_symbols(plain, self.order())?;
        Ok(plain
            .iter()
            .map(|&u| {
                let v = self.step(&self.key, state, u);
                self.push(state, v);
                v
            })
            .collect())
    }

    /// Decrypts a segment, continuing from `state`.
    pub fn decrypt_with(&self, state: &mut StreamState, cipher: &[Symbol]) -> Result<Vec<Symbol>> {
        check_symbols(cipher, self.order())?;
        Ok(cipher
            .iter()
            .map(|&v| {
                let u = self.step(&self.inverse, state, v);
                self.push(state, v);
                u
            })
            .collect())
    }

    fn step(&self, op: &QuasigroupKey, state: &StreamState, last: Symbol) -> Symbol {
        let n = self.arity();
        let q = self.order();
        let prefix_rank = if state.position < n - 1 {
            op.rank(self.leaders.prefix(state.position))
        } else {
            state.window.iter().fold(0, |acc, &v| acc * q + v)
        };
        op.at(prefix_rank * q + last)
    }

    fn push(&self, state: &mut StreamState, v: Symbol) {
        state.position += 1;
        state.window.push_back(v);
        if state.window.len() > self.arity() - 1 {
            state.window.pop_front();
        }
    }
}

/// Binary chain encryption with a single leader.
pub fn encrypt_binary(
    key: &QuasigroupKey,
    leader: Symbol,
    plain: &[Symbol],
) -> Result<Vec<Symbol>> {
    binary_stream(key, leader)?.encrypt(plain)
}

pub fn decrypt_binary(
    key: &QuasigroupKey,
    leader: Symbol,
    cipher: &[Symbol],
) -> Result<Vec<Symbol>> {
    binary_stream(key, leader)?.decrypt(cipher)
}

fn binary_stream(key: &QuasigroupKey, leader: Symbol) -> Result<NaryStream> {
    if key.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: key.arity(),
        });
    }
    NaryStream::new(key.clone(), LeaderBlock::single(leader))
}

pub fn encrypt_nary(
    key: &QuasigroupKey,
    leaders: &LeaderBlock,
    plain: &[Symbol],
) -> Result<Vec<Symbol>> {
    NaryStream::new(key.clone(), leaders.clone())?.encrypt(plain)
}

pub fn decrypt_nary(
    key: &QuasigroupKey,
    leaders: &LeaderBlock,
    cipher: &[Symbol],
) -> Result<Vec<Symbol>> {
    NaryStream::new(key.clone(), leaders.clone())?.decrypt(cipher)
}
