//! Chosen-ciphertext and chosen-plaintext attacks on the chained stream
//! ciphers, plus the table-lookup attack on a single block-cipher round.
//!
//! The attacker talks to an [`Oracle`]: a device loaded with an unknown key
//! that encrypts or decrypts whole messages. Every query is counted and
//! recorded in a [`Transcript`].
//!
//! For a stream cipher of arity `n`, every output at position `t ≥ n` is a
//! single table entry whose first `n-1` arguments are the previous `n-1`
//! ciphertext symbols:
//!
//! * decryption gives `u_t = ^(n,n+1)A(v_{t-n+1}, …, v_t)`, and the attacker
//!   chooses every `v`. One query whose length-`n` windows run through all of
//!   `Q^n` (a de Bruijn sequence) fills the whole inverse table;
//! * encryption gives `v_t = A(v_{t-n+1}, …, v_{t-1}, u_t)`, where only `u_t`
//!   is chosen and the arguments are ciphertext produced so far. The attack
//!   routes each fresh message through entries it already knows to reach a
//!   state with an unknown entry, learning one new entry per query.
//!
//! The first `n-1` outputs depend on the secret leaders through translations
//! `x ↦ A(prefix_j, x)`; `q` queries of the form `x x … x` reveal all of
//! them at once.

use std::collections::VecDeque;
use std::fmt;

use crate::cipher::{BlockCipher, NaryStream};
use crate::error::{Error, Result};
use crate::orthogonality::{
    inverse_system, system_from_permutation, OrthogonalSystem, TuplePermutation,
};
use crate::quasigroup::{inverse_op, prefixes_with_translation, QuasigroupKey};
use crate::table::{table_size, OperationTable};
use crate::Symbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Encrypt,
    Decrypt,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Encrypt => "encrypt",
            Direction::Decrypt => "decrypt",
        })
    }
}

/// A keyed encryption or decryption device.
pub trait Oracle {
    fn direction(&self) -> Direction;
    fn arity(&self) -> usize;
    fn order(&self) -> usize;
    fn query(&mut self, input: &[Symbol]) -> Result<Vec<Symbol>>;
    fn query_count(&self) -> usize;
    fn symbols_submitted(&self) -> usize;
}

/// Cipher that an oracle can be built around.
pub trait Device {
    fn arity(&self) -> usize;
    fn order(&self) -> usize;
    fn encrypt(&self, input: &[Symbol]) -> Result<Vec<Symbol>>;
    fn decrypt(&self, input: &[Symbol]) -> Result<Vec<Symbol>>;
}

impl Device for NaryStream {
    fn arity(&self) -> usize {
        NaryStream::arity(self)
    }

    fn order(&self) -> usize {
        NaryStream::order(self)
    }

    fn encrypt(&self, input: &[Symbol]) -> Result<Vec<Symbol>> {
        NaryStream::encrypt(self, input)
    }

    fn decrypt(&self, input: &[Symbol]) -> Result<Vec<Symbol>> {
        NaryStream::decrypt(self, input)
    }
}

/// Whole blocks only; a query must be a multiple of the block length.
impl Device for BlockCipher {
    fn arity(&self) -> usize {
        BlockCipher::arity(self)
    }

    fn order(&self) -> usize {
        BlockCipher::order(self)
    }

    fn encrypt(&self, input: &[Symbol]) -> Result<Vec<Symbol>> {
        if !input.len().is_multiple_of(self.arity()) {
            return Err(Error::OracleRefused(format!(
                "{} symbols is not a whole number of blocks",
                input.len()
            )));
        }
        self.encrypt_padded(input)
    }

    fn decrypt(&self, input: &[Symbol]) -> Result<Vec<Symbol>> {
        if !input.len().is_multiple_of(self.arity()) {
            return Err(Error::OracleRefused(format!(
                "{} symbols is not a whole number of blocks",
                input.len()
            )));
        }
        self.decrypt_padded(input, input.len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptEntry {
    pub direction: Direction,
    pub input: Vec<Symbol>,
    pub output: Vec<Symbol>,
}

/// Every query an oracle answered, in order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    pub entries: Vec<TranscriptEntry>,
}

/// One line per query: `<direction> | <input symbols> | <output symbols>`.
impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &[Symbol]| {
            s.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        for e in &self.entries {
            writeln!(
                f,
                "{} | {} | {}",
                e.direction,
                join(&e.input),
                join(&e.output)
            )?;
        }
        Ok(())
    }
}

/// An oracle wrapping a cipher whose key the attacker never sees.
#[derive(Debug, Clone)]
pub struct CipherOracle<D> {
    device: D,
    direction: Direction,
    queries: usize,
    symbols: usize,
    max_query_len: Option<usize>,
    transcript: Transcript,
}

impl<D: Device> CipherOracle<D> {
    pub fn new(device: D, direction: Direction) -> Self {
        Self {
            device,
            direction,
            queries: 0,
            symbols: 0,
            max_query_len: None,
            transcript: Transcript::default(),
        }
    }

    pub fn decrypting(device: D) -> Self {
        Self::new(device, Direction::Decrypt)
    }

    pub fn encrypting(device: D) -> Self {
        Self::new(device, Direction::Encrypt)
    }

    /// Refuse queries longer than `len` symbols.
    pub fn with_max_query_len(mut self, len: usize) -> Self {
        self.max_query_len = Some(len);
        self
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }
}

impl<D: Device> Oracle for CipherOracle<D> {
    fn direction(&self) -> Direction {
        self.direction
    }

    fn arity(&self) -> usize {
        self.device.arity()
    }

    fn order(&self) -> usize {
        self.device.order()
    }

    fn query(&mut self, input: &[Symbol]) -> Result<Vec<Symbol>> {
        if let Some(max) = self.max_query_len {
            if input.len() > max {
                return Err(Error::OracleRefused(format!(
                    "query of {} symbols exceeds limit {max}",
                    input.len()
                )));
            }
        }
        let output = match self.direction {
            Direction::Encrypt => self.device.encrypt(input)?,
            Direction::Decrypt => self.device.decrypt(input)?,
        };
        self.queries += 1;
        self.symbols += input.len();
        self.transcript.entries.push(TranscriptEntry {
            direction: self.direction,
            input: input.to_vec(),
            output: output.clone(),
        });
        Ok(output)
    }

    fn query_count(&self) -> usize {
        self.queries
    }

    fn symbols_submitted(&self) -> usize {
        self.symbols
    }
}

/// Recovered behaviour of the leaders feeding output position `slot`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeaderTranslation {
    /// 1-based output position.
    pub slot: usize,
    /// `x ↦ A(prefix_slot, x)`.
    pub map: Vec<Symbol>,
    /// Every prefix of the recovered table with this translation; the true
    /// leaders are one of them and all are interchangeable.
    pub equivalent_prefixes: Vec<Vec<Symbol>>,
}

impl LeaderTranslation {
    pub fn inverse_map(&self) -> Vec<Symbol> {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        inv
    }
}

/// Key material extracted from an oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredKey {
    /// The operation `A`.
    pub table: QuasigroupKey,
    /// `^(n,n+1)A`, used for decryption.
    pub inverse: QuasigroupKey,
    pub query_count: usize,
    pub symbols_submitted: usize,
    pub leader_translations: Option<Vec<LeaderTranslation>>,
}

/// `(queries, symbols)` spent by [`cca_recover`]: one query of `q^n + n - 1` symbols.
pub fn cca_budget(order: usize, arity: usize) -> (usize, usize) {
    (1, order.pow(arity as u32) + arity - 1)
}

/// Queries spent by [`cpa_recover`]: exactly one per table entry.
pub fn cpa_query_budget(order: usize, arity: usize) -> usize {
    order.pow(arity as u32)
}

/// Cyclic de Bruijn sequence over `0..order` in which every length-`arity`
/// word occurs once (Fredricksen–Kessler–Maiorana construction). It starts
/// with `arity` zeros followed by `0…01`.
pub fn de_bruijn(order: usize, arity: usize) -> Vec<Symbol> {
    fn visit(t: usize, p: usize, k: usize, n: usize, a: &mut [usize], out: &mut Vec<usize>) {
        if t > n {
            if n.is_multiple_of(p) {
                out.extend_from_slice(&a[1..=p]);
            }
            return;
        }
        a[t] = a[t - p];
        visit(t + 1, p, k, n, a, out);
        for j in a[t - p] + 1..k {
            a[t] = j;
            visit(t + 1, t, k, n, a, out);
        }
    }
    let mut a = vec![0; arity + 1];
    let mut out = Vec::with_capacity(order.pow(arity as u32));
    visit(1, 1, order, arity, &mut a, &mut out);
    out
}

fn check_oracle(
    oracle: &dyn Oracle,
    direction: Direction,
    order: usize,
    arity: usize,
) -> Result<()> {
    if oracle.direction() != direction {
        return Err(Error::InvalidArgument(format!(
            "attack needs a {direction}ing oracle, got a {}ing one",
            oracle.direction()
        )));
    }
    if oracle.order() != order || oracle.arity() != arity {
        return Err(Error::InvalidArgument(format!(
            "oracle works on arity {} over {} symbols, attack configured for arity {arity} over {order}",
            oracle.arity(),
            oracle.order()
        )));
    }
    if arity < 2 {
        return Err(Error::InvalidArity {
            min: 2,
            found: arity,
        });
    }
    table_size(order, arity)?;
    Ok(())
}

fn expect_len(out: &[Symbol], len: usize) -> Result<()> {
    if out.len() != len {
        return Err(Error::InconsistentOracle(format!(
            "sent {len} symbols, got {} back",
            out.len()
        )));
    }
    Ok(())
}

fn record(cells: &mut [Option<Symbol>], rank: usize, value: Symbol) -> Result<()> {
    match cells[rank] {
        Some(prev) if prev != value => Err(Error::InconsistentOracle(format!(
            "table cell {rank} read as both {prev} and {value}"
        ))),
        _ => {
            cells[rank] = Some(value);
            Ok(())
        }
    }
}

fn into_quasigroup(
    arity: usize,
    order: usize,
    cells: Vec<Option<Symbol>>,
) -> Result<QuasigroupKey> {
    let values = cells
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InconsistentOracle("table not fully covered".into()))?;
    let table = OperationTable::new(arity, order, values)
        .map_err(|e| Error::InconsistentOracle(e.to_string()))?;
    QuasigroupKey::new(table).map_err(|e| Error::InconsistentOracle(e.to_string()))
}

/// Chosen-ciphertext recovery of the stream key.
///
/// Submits the linearised de Bruijn sequence of order `n` (`q^n + n - 1`
/// symbols); the plaintext at each position `t ≥ n` is the inverse-table
/// entry at the window ending there.
pub fn cca_recover(oracle: &mut dyn Oracle, order: usize, arity: usize) -> Result<RecoveredKey> {
    check_oracle(oracle, Direction::Decrypt, order, arity)?;
    let start = (oracle.query_count(), oracle.symbols_submitted());
    let mut query = de_bruijn(order, arity);
    query.extend_from_within(..arity - 1);
    let plain = oracle.query(&query)?;
    expect_len(&plain, query.len())?;

    let mut cells = vec![None; order.pow(arity as u32)];
    for t in arity - 1..query.len() {
        let window = &query[t + 1 - arity..=t];
        let rank = window.iter().fold(0, |acc, &v| acc * order + v);
        record(&mut cells, rank, plain[t])?;
    }
    let inverse = into_quasigroup(arity, order, cells)?;
    let table = inverse_op(&inverse, arity)?;
    Ok(RecoveredKey {
        table,
        inverse,
        query_count: oracle.query_count() - start.0,
        symbols_submitted: oracle.symbols_submitted() - start.1,
        leader_translations: None,
    })
}

/// Adaptive chosen-plaintext recovery of the stream key.
///
/// Each query is a fresh message: `n-1` zeros to pass the leader positions,
/// then a route through already-known entries to the nearest chaining state
/// with an unknown entry, then one unexplored plaintext symbol. Every query
/// reveals exactly one new entry, so the attack spends exactly `q^n` queries.
pub fn cpa_recover(oracle: &mut dyn Oracle, order: usize, arity: usize) -> Result<RecoveredKey> {
    check_oracle(oracle, Direction::Encrypt, order, arity)?;
    let start = (oracle.query_count(), oracle.symbols_submitted());
    let q = order;
    let states = q.pow((arity - 1) as u32);
    let mut cells: Vec<Option<Symbol>> = vec![None; states * q];
    let pad = vec![0; arity - 1];
    let mut initial: Option<usize> = None;

    loop {
        let route = match initial {
            None => Some(vec![0]),
            Some(s0) => route_to_unknown(&cells, s0, q, states),
        };
        let Some(route) = route else { break };
        let mut msg = pad.clone();
        msg.extend_from_slice(&route);
        let out = oracle.query(&msg)?;
        expect_len(&out, msg.len())?;

        let s0 = out[..arity - 1].iter().fold(0, |acc, &v| acc * q + v);
        if initial.is_some_and(|prev| prev != s0) {
            return Err(Error::InconsistentOracle(
                "identical leader-position inputs gave different outputs".into(),
            ));
        }
        initial = Some(s0);
        let mut state = s0;
        for (&u, &v) in msg[arity - 1..].iter().zip(&out[arity - 1..]) {
            record(&mut cells, state * q + u, v)?;
            state = (state * q + v) % states;
        }
    }

    let table = into_quasigroup(arity, order, cells)?;
    let inverse = inverse_op(&table, arity)?;
    Ok(RecoveredKey {
        table,
        inverse,
        query_count: oracle.query_count() - start.0,
        symbols_submitted: oracle.symbols_submitted() - start.1,
        leader_translations: None,
    })
}

/// Breadth-first search over known transitions from `from` to the nearest
/// state with an unknown entry. Returns the plaintext symbols to send,
/// ending with the unexplored one, or `None` when every entry is known.
fn route_to_unknown(
    cells: &[Option<Symbol>],
    from: usize,
    q: usize,
    states: usize,
) -> Option<Vec<Symbol>> {
    let mut parent: Vec<Option<(usize, Symbol)>> = vec![None; states];
    let mut visited = vec![false; states];
    let mut queue = VecDeque::from([from]);
    visited[from] = true;
    while let Some(s) = queue.pop_front() {
        if let Some(u) = (0..q).find(|&u| cells[s * q + u].is_none()) {
            let mut path = vec![u];
            let mut cur = s;
            while let Some((prev, via)) = parent[cur] {
                path.push(via);
                cur = prev;
            }
            path.reverse();
            return Some(path);
        }
        for u in 0..q {
            let v = cells[s * q + u].expect("all entries of this state are known");
            let next = (s * q + v) % states;
            if !visited[next] {
                visited[next] = true;
                parent[next] = Some((s, u));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Recovers the translation of every leader prefix with `q` queries
/// `x x … x` of length `n-1`, one per symbol `x`.
///
/// A decrypting oracle returns `T_j⁻¹(x)` at position `j`, an encrypting one
/// returns `T_j(x)`. Each translation is matched against the recovered table
/// to list the prefixes that act identically.
pub fn recover_leader_translations(
    oracle: &mut dyn Oracle,
    recovered: &RecoveredKey,
) -> Result<Vec<LeaderTranslation>> {
    let q = recovered.table.order();
    let n = recovered.table.arity();
    check_oracle(oracle, oracle.direction(), q, n)?;
    let slots = n - 1;
    let mut outputs = Vec::with_capacity(q);
    for x in 0..q {
        let out = oracle.query(&vec![x; slots])?;
        expect_len(&out, slots)?;
        outputs.push(out);
    }
    (0..slots)
        .map(|j| {
            let resp: Vec<Symbol> = outputs.iter().map(|out| out[j]).collect();
            let map = match oracle.direction() {
                Direction::Encrypt => resp,
                Direction::Decrypt => invert(&resp).ok_or_else(|| {
                    Error::InconsistentOracle(format!(
                        "slot {} responses are not a permutation",
                        j + 1
                    ))
                })?,
            };
            let equivalent_prefixes = prefixes_with_translation(recovered.table.table(), &map);
            if equivalent_prefixes.is_empty() {
                return Err(Error::InconsistentOracle(format!(
                    "slot {} translation {map:?} matches no prefix of the recovered table",
                    j + 1
                )));
            }
            Ok(LeaderTranslation {
                slot: j + 1,
                map,
                equivalent_prefixes,
            })
        })
        .collect()
}

fn invert(map: &[Symbol]) -> Option<Vec<Symbol>> {
    let mut inv = vec![None; map.len()];
    for (x, &y) in map.iter().enumerate() {
        if y >= map.len() || inv[y].replace(x).is_some() {
            return None;
        }
    }
    inv.into_iter().collect()
}

/// Decrypts an intercepted ciphertext with recovered material only: leader
/// positions through the inverse translations, everything after through the
/// recovered inverse table.
pub fn break_end_to_end(
    recovered: &RecoveredKey,
    translations: &[LeaderTranslation],
    cipher: &[Symbol],
) -> Result<Vec<Symbol>> {
    let n = recovered.table.arity();
    let q = recovered.table.order();
    if translations.len() != n - 1 {
        return Err(Error::LeaderCount {
            expected: n - 1,
            found: translations.len(),
        });
    }
    crate::table::check_symbols(cipher, q)?;
    let inverses: Vec<Vec<Symbol>> = translations
        .iter()
        .map(LeaderTranslation::inverse_map)
        .collect();
    Ok(cipher
        .iter()
        .enumerate()
        .map(|(t, &v)| {
            if t < n - 1 {
                inverses[t][v]
            } else {
                recovered.inverse.apply(&cipher[t + 1 - n..=t])
            }
        })
        .collect())
}

/// Outcome of [`break_stream`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakReport {
    pub plaintext: Vec<Symbol>,
    pub recovered: RecoveredKey,
    pub query_count: usize,
}

/// Full attack through a single oracle: table recovery (chosen ciphertext
/// or chosen plaintext, by the oracle's direction), leader translations,
/// then decryption of `intercepted`.
pub fn break_stream(oracle: &mut dyn Oracle, intercepted: &[Symbol]) -> Result<BreakReport> {
    let (q, n) = (oracle.order(), oracle.arity());
    let start = oracle.query_count();
    let mut recovered = match oracle.direction() {
        Direction::Decrypt => cca_recover(oracle, q, n)?,
        Direction::Encrypt => cpa_recover(oracle, q, n)?,
    };
    let translations = recover_leader_translations(oracle, &recovered)?;
    let plaintext = break_end_to_end(&recovered, &translations, intercepted)?;
    recovered.leader_translations = Some(translations);
    recovered.query_count = oracle.query_count() - start;
    Ok(BreakReport {
        plaintext,
        recovered,
        query_count: oracle.query_count() - start,
    })
}

/// A single-round block system read off an oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredSystem {
    pub system: OrthogonalSystem,
    pub inverse: OrthogonalSystem,
    pub query_count: usize,
}

/// Tabulates a one-round block oracle on all `q^n` blocks, sent as one
/// message of `n·q^n` symbols.
pub fn recover_block_system(
    oracle: &mut dyn Oracle,
    order: usize,
    arity: usize,
) -> Result<RecoveredSystem> {
    check_oracle(oracle, oracle.direction(), order, arity)?;
    let start = oracle.query_count();
    let size = order.pow(arity as u32);
    let query: Vec<Symbol> = (0..size)
        .flat_map(|r| crate::table::tuple_of(order, arity, r))
        .collect();
    let out = oracle.query(&query)?;
    expect_len(&out, query.len())?;
    let image: Vec<usize> = out
        .chunks(arity)
        .map(|b| b.iter().fold(0, |acc, &v| acc * order + v))
        .collect();
    let perm = TuplePermutation::new(arity, order, image)
        .map_err(|e| Error::InconsistentOracle(e.to_string()))?;
    let tabulated = system_from_permutation(&perm);
    let (system, inverse) = match oracle.direction() {
        Direction::Encrypt => {
            let inv = inverse_system(&tabulated);
            (tabulated, inv)
        }
        Direction::Decrypt => (inverse_system(&tabulated), tabulated),
    };
    Ok(RecoveredSystem {
        system,
        inverse,
        query_count: oracle.query_count() - start,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cipher::LeaderBlock;
    use crate::fixtures;
    use crate::quasigroup::random_quasigroup;
    use crate::rng::SplitMix64;

    fn stream(key: QuasigroupKey, leaders: Vec<Symbol>) -> NaryStream {
        let n = key.arity();
        NaryStream::new(key, LeaderBlock::new(n, leaders).unwrap()).unwrap()
    }

    #[test]
    fn de_bruijn_covers_every_word_once() {
        for (q, n) in [(2, 3), (3, 2), (4, 3), (5, 2), (3, 4)] {
            let seq = de_bruijn(q, n);
            assert_eq!(seq.len(), q.pow(n as u32));
            let mut seen = std::collections::HashSet::new();
            for i in 0..seq.len() {
                let w: Vec<_> = (0..n).map(|j| seq[(i + j) % seq.len()]).collect();
                assert!(seen.insert(w));
            }
        }
        assert_eq!(de_bruijn(2, 3), vec![0, 0, 0, 1, 0, 1, 1, 1]);
    }

    #[test]
    fn cca_on_abc_key() {
        let mut oracle = CipherOracle::decrypting(stream(fixtures::abc_quasigroup(), vec![0]));
        let rec = cca_recover(&mut oracle, 3, 2).unwrap();
        assert_eq!(rec.inverse, fixtures::abc_left_division());
        assert_eq!(rec.table, fixtures::abc_quasigroup());
        assert_eq!((rec.query_count, rec.symbols_submitted), cca_budget(3, 2));
        assert_eq!(oracle.transcript().entries.len(), 1);
    }

    #[test]
    fn cca_on_ternary_key() {
        let mut oracle =
            CipherOracle::decrypting(stream(fixtures::ternary_quasigroup(), vec![3, 1, 0, 2]));
        let rec = cca_recover(&mut oracle, 4, 3).unwrap();
        assert_eq!(rec.table, fixtures::ternary_quasigroup());
        assert_eq!(rec.symbols_submitted, 64 + 2);
    }

    #[test]
    fn cpa_on_small_keys() {
        let mut oracle = CipherOracle::encrypting(stream(fixtures::abc_quasigroup(), vec![2]));
        let rec = cpa_recover(&mut oracle, 3, 2).unwrap();
        assert_eq!(rec.table, fixtures::abc_quasigroup());
        assert_eq!(rec.query_count, cpa_query_budget(3, 2));

        let mut oracle =
            CipherOracle::encrypting(stream(fixtures::ternary_quasigroup(), vec![0, 1, 2, 3]));
        let rec = cpa_recover(&mut oracle, 4, 3).unwrap();
        assert_eq!(rec.table, fixtures::ternary_quasigroup());
        assert_eq!(rec.query_count, 64);
    }

    #[test]
    fn wrong_direction_or_shape() {
        let mut enc = CipherOracle::encrypting(stream(fixtures::abc_quasigroup(), vec![0]));
        assert!(cca_recover(&mut enc, 3, 2).is_err());
        let mut dec = CipherOracle::decrypting(stream(fixtures::abc_quasigroup(), vec![0]));
        assert!(cpa_recover(&mut dec, 3, 2).is_err());
        assert!(cca_recover(&mut dec, 4, 2).is_err());
    }

    #[test]
    fn refusing_oracle() {
        let mut dec = CipherOracle::decrypting(stream(fixtures::abc_quasigroup(), vec![0]))
            .with_max_query_len(5);
        assert!(matches!(
            cca_recover(&mut dec, 3, 2),
            Err(Error::OracleRefused(_))
        ));
    }

    /// A device that ignores its chaining and returns garbage.
    struct Broken;

    impl Device for Broken {
        fn arity(&self) -> usize {
            2
        }
        fn order(&self) -> usize {
            3
        }
        fn encrypt(&self, input: &[Symbol]) -> Result<Vec<Symbol>> {
            Ok(vec![0; input.len()])
        }
        fn decrypt(&self, input: &[Symbol]) -> Result<Vec<Symbol>> {
            Ok(vec![1; input.len()])
        }
    }

    #[test]
    fn inconsistent_devices_are_detected() {
        let mut dec = CipherOracle::decrypting(Broken);
        assert!(matches!(
            cca_recover(&mut dec, 3, 2),
            Err(Error::InconsistentOracle(_))
        ));
        let mut enc = CipherOracle::encrypting(Broken);
        assert!(matches!(
            cpa_recover(&mut enc, 3, 2),
            Err(Error::InconsistentOracle(_))
        ));
    }

    #[test]
    fn leader_translation_of_abc_key() {
        let mut oracle = CipherOracle::decrypting(stream(fixtures::abc_quasigroup(), vec![0]));
        let rec = cca_recover(&mut oracle, 3, 2).unwrap();
        let t = recover_leader_translations(&mut oracle, &rec).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].map, vec![1, 2, 0]);
        assert_eq!(t[0].equivalent_prefixes, vec![vec![0]]);
    }

    #[test]
    fn leader_translation_of_ternary_key() {
        let mut oracle =
            CipherOracle::decrypting(stream(fixtures::ternary_quasigroup(), vec![0, 1, 2, 3]));
        let rec = cca_recover(&mut oracle, 4, 3).unwrap();
        let t = recover_leader_translations(&mut oracle, &rec).unwrap();
        assert_eq!(t[0].map, vec![1, 2, 3, 0]);
        assert!(t[0].equivalent_prefixes.contains(&vec![0, 1]));
        assert!(t[0].equivalent_prefixes.contains(&vec![2, 3]));
        assert_eq!(oracle.query_count(), 1 + 4);
    }

    #[test]
    fn end_to_end_against_random_keys() {
        let mut rng = SplitMix64::new(99);
        for (q, n) in [(5, 2), (4, 3), (3, 3)] {
            let key = random_quasigroup(q, n, rng.next_u64()).unwrap();
            let leaders = rng.symbols(q, (n - 1) * (n - 1));
            let honest = stream(key, leaders);
            let plain = rng.symbols(q, 50);
            let cipher = honest.encrypt(&plain).unwrap();
            for direction in [Direction::Decrypt, Direction::Encrypt] {
                let mut oracle = CipherOracle::new(honest.clone(), direction);
                let report = break_stream(&mut oracle, &cipher).unwrap();
                assert_eq!(report.plaintext, plain);
            }
        }
    }

    #[test]
    fn block_round_is_tabulated() {
        let sys = fixtures::order4_system();
        let cipher = BlockCipher::new(sys.clone(), 1).unwrap();
        let mut oracle = CipherOracle::decrypting(cipher.clone());
        let rec = recover_block_system(&mut oracle, 4, 3).unwrap();
        assert_eq!(rec.system, sys);
        assert_eq!(rec.query_count, 1);
        let c = cipher.encrypt_block(&[2, 0, 1]).unwrap();
        assert_eq!(rec.inverse.joint(&c), vec![2, 0, 1]);

        let mut enc = CipherOracle::encrypting(cipher);
        assert_eq!(recover_block_system(&mut enc, 4, 3).unwrap().system, sys);
    }

    #[test]
    fn transcript_lines() {
        let mut oracle = CipherOracle::decrypting(stream(fixtures::abc_quasigroup(), vec![0]));
        oracle.query(&[2, 1, 1]).unwrap();
        assert_eq!(oracle.transcript().to_string(), "decrypt | 2 1 1 | 1 1 2\n");
    }
}
