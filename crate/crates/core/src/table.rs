//! Finite n-ary operations stored as explicit value tables.
//!
//! An [`OperationTable`] of arity `n` over an alphabet of order `q` keeps its
//! `q^n` values in lexicographic order of the argument tuple, with the first
//! argument most significant. For a binary table this is the usual Cayley
//! table read row by row (row = first argument).
//!
//! Text format:
//!
//! ```text
//! # comment lines start with '#'
//! n q
//! v0 v1 v2 ...          (q^n whitespace-separated values, any line breaks)
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::Symbol;

/// Upper bound on `q^n` for tables this crate will allocate.
pub const MAX_TABLE_SIZE: usize = 1 << 24;

/// The carrier set `{0..q-1}`, optionally with printable symbol names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    order: usize,
    names: Option<Vec<String>>,
}

impl Alphabet {
    pub fn new(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder(order));
        }
        Ok(Self { order, names: None })
    }

    /// Alphabet whose codes are the positions of `names`.
    pub fn with_names<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() < 2 {
            return Err(Error::InvalidOrder(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::InvalidArgument(format!(
                    "bad alphabet symbol {name:?}"
                )));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate alphabet symbol {name:?}"
                )));
            }
        }
        Ok(Self {
            order: names.len(),
            names: Some(names),
        })
    }

    /// Parses an alphabet file: one line of distinct whitespace-separated tokens.
    pub fn parse(text: &str) -> Result<Self> {
        let line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .ok_or(Error::Parse {
                line: 1,
                message: "empty alphabet file".into(),
            })?;
        Self::with_names(line.split_whitespace())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn encode(&self, token: &str) -> Option<Symbol> {
        match &self.names {
            Some(names) => names.iter().position(|n| n == token),
            None => token.parse::<Symbol>().ok().filter(|&s| s < self.order),
        }
    }

    pub fn name(&self, symbol: Symbol) -> String {
        match &self.names {
            Some(names) => names
                .get(symbol)
                .cloned()
                .unwrap_or_else(|| format!("?{symbol}")),
            None => symbol.to_string(),
        }
    }

    /// True when every symbol name is a single character, so words can be
    /// written without separators.
    pub fn is_single_char(&self) -> bool {
        self.names
            .as_ref()
            .is_some_and(|names| names.iter().all(|n| n.chars().count() == 1))
    }

    /// Encodes a text. Whitespace-separated tokens are looked up whole; a token
    /// that is not a symbol is split into characters when the alphabet is made
    /// of single characters.
    pub fn encode_text(&self, text: &str) -> Result<Vec<Symbol>> {
        let mut out = Vec::new();
        for token in text.split_whitespace() {
            if let Some(s) = self.encode(token) {
                out.push(s);
                continue;
            }
            if !self.is_single_char() {
                return Err(Error::InvalidArgument(format!("unknown symbol {token:?}")));
            }
            for c in token.chars() {
                let s = self
                    .encode(c.encode_utf8(&mut [0; 4]))
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown symbol {c:?}")))?;
                out.push(s);
            }
        }
        Ok(out)
    }

    /// Renders symbols; single-character alphabets are written as one word.
    pub fn decode_text(&self, symbols: &[Symbol]) -> String {
        let sep = if self.is_single_char() { "" } else { " " };
        symbols
            .iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// `q^n` with an overflow/size guard.
pub fn table_size(order: usize, arity: usize) -> Result<usize> {
    let too_large = || Error::TooLarge {
        size: format!("{order}^{arity}"),
    };
    let size = order
        .checked_pow(u32::try_from(arity).map_err(|_| too_large())?)
        .ok_or_else(too_large)?;
    if size > MAX_TABLE_SIZE {
        return Err(too_large());
    }
    Ok(size)
}

/// Lexicographic rank of `args` (first argument most significant).
pub fn rank_of(order: usize, args: &[Symbol]) -> usize {
    args.iter().fold(0, |acc, &x| acc * order + x)
}

/// Inverse of [`rank_of`] for tuples of length `arity`.
pub fn tuple_of(order: usize, arity: usize, mut rank: usize) -> Vec<Symbol> {
    let mut t = vec![0; arity];
    for slot in t.iter_mut().rev() {
        *slot = rank % order;
        rank /= order;
    }
    t
}

/// Iterates all tuples of `Q^arity` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Tuples {
    order: usize,
    current: Option<Vec<Symbol>>,
}

impl Tuples {
    pub fn new(order: usize, arity: usize) -> Self {
        Self {
            order,
            current: (order > 0).then(|| vec![0; arity]),
        }
    }
}

impl Iterator for Tuples {
    type Item = Vec<Symbol>;

    fn next(&mut self) -> Option<Vec<Symbol>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.order {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// An n-ary operation on `{0..q-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperationTable {
    arity: usize,
    order: usize,
    values: Vec<Symbol>,
}

impl OperationTable {
    pub fn new(arity: usize, order: usize, values: Vec<Symbol>) -> Result<Self> {
        if arity < 1 {
            return Err(Error::InvalidArity {
                min: 1,
                found: arity,
            });
        }
        if order < 2 {
            return Err(Error::InvalidOrder(order));
        }
        let expected = table_size(order, arity)?;
        if values.len() != expected {
            return Err(Error::TableLength {
                arity,
                order,
                expected,
                found: values.len(),
            });
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= order) {
            return Err(Error::SymbolOutOfRange { symbol: bad, order });
        }
        Ok(Self {
            arity,
            order,
            values,
        })
    }

    /// Builds a table by evaluating `f` on every argument tuple.
    pub fn from_fn(arity: usize, order: usize, f: impl FnMut(&[Symbol]) -> Symbol) -> Result<Self> {
        table_size(order, arity)?;
        let mut f = f;
        let values = Tuples::new(order, arity).map(|t| f(&t)).collect();
        Self::new(arity, order, values)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn values(&self) -> &[Symbol] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn rank(&self, args: &[Symbol]) -> usize {
        rank_of(self.order, args)
    }

    pub fn tuple(&self, rank: usize) -> Vec<Symbol> {
        tuple_of(self.order, self.arity, rank)
    }

    pub fn tuples(&self) -> Tuples {
        Tuples::new(self.order, self.arity)
    }

    /// Value at a lexicographic rank.
    pub fn at(&self, rank: usize) -> Symbol {
        self.values[rank]
    }

    /// Unchecked evaluation; panics on out-of-range arguments.
    pub fn apply(&self, args: &[Symbol]) -> Symbol {
        debug_assert_eq!(args.len(), self.arity);
        self.values[self.rank(args)]
    }

    /// Evaluates the operation, validating the argument tuple.
    pub fn evaluate(&self, args: &[Symbol]) -> Result<Symbol> {
        self.check_args(args)?;
        Ok(self.apply(args))
    }

    pub(crate) fn check_args(&self, args: &[Symbol]) -> Result<()> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        check_symbols(args, self.order)
    }

    /// Parses one table in the text format.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
        Self::parse_lines(&lines)
    }

    /// Parses a table from numbered lines; used by the system and key parsers.
    pub(crate) fn parse_lines(lines: &[(usize, &str)]) -> Result<Self> {
        let mut tokens = lines
            .iter()
            .flat_map(|&(no, line)| strip_comment(line).split_whitespace().map(move |t| (no, t)));
        let header_line = lines.first().map_or(1, |l| l.0);
        let mut header = |what: &str| -> Result<usize> {
            let (no, tok) = tokens.next().ok_or_else(|| Error::Parse {
                line: header_line,
                message: format!("missing {what}"),
            })?;
            tok.parse().map_err(|_| Error::Parse {
                line: no,
                message: format!("bad {what} {tok:?}"),
            })
        };
        let arity = header("arity")?;
        let order = header("order")?;
        let size = table_size(order, arity).map_err(|e| Error::Parse {
            line: header_line,
            message: e.to_string(),
        })?;
        let mut values = Vec::with_capacity(size);
        let mut last_line = header_line;
        for (no, tok) in tokens {
            last_line = no;
            let v: Symbol = tok.parse().map_err(|_| Error::Parse {
                line: no,
                message: format!("bad value {tok:?}"),
            })?;
            if v >= order {
                return Err(Error::Parse {
                    line: no,
                    message: format!("value {v} outside alphabet of order {order}"),
                });
            }
            values.push(v);
        }
        if values.len() != size {
            return Err(Error::Parse {
                line: last_line,
                message: format!("expected {size} values, found {}", values.len()),
            });
        }
        Self::new(arity, order, values).map_err(|e| Error::Parse {
            line: header_line,
            message: e.to_string(),
        })
    }
}

impl FromStr for OperationTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Writes the text format: header, then one line per fixed prefix of the
/// first `n-1` arguments.
impl fmt::Display for OperationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.arity, self.order)?;
        for row in self.values.chunks(self.order) {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

pub(crate) fn check_symbols(symbols: &[Symbol], order: usize) -> Result<()> {
    match symbols.iter().find(|&&s| s >= order) {
        Some(&symbol) => Err(Error::SymbolOutOfRange { symbol, order }),
        None => Ok(()),
    }
}
