//! Key files.
//!
//! A key file holds one operation table, or several separated by `---`
//! lines (an orthogonal system), in the table text format, plus optional
//! parameter lines anywhere in the file:
//!
//! ```text
//! leaders: 0 1 2 3      # (n-1)^2 stream leaders; leader-fan uses the first n-1
//! rounds: 2             # block rounds, default 1
//! schedule: 4 5         # mixed-engine segment lengths
//! ```
//!
//! Stream engines use the single table, or the first quasigroup table of a
//! system.

use std::fmt::{self, Write as _};

use crate::cipher::{BlockCipher, LeaderBlock, LeaderFan, MixSchedule, MixedCipher, NaryStream};
use crate::error::{Error, Result};
use crate::orthogonality::{parse_table_blocks_with, write_table_blocks, OrthogonalSystem};
use crate::quasigroup::QuasigroupKey;
use crate::table::OperationTable;
use crate::Symbol;

const LEADERS: &str = "leaders:";
const ROUNDS: &str = "rounds:";
const SCHEDULE: &str = "schedule:";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyFile {
    pub tables: Vec<OperationTable>,
    pub leaders: Option<Vec<Symbol>>,
    pub rounds: Option<usize>,
    pub schedule: Option<MixSchedule>,
}

impl KeyFile {
    pub fn from_tables(tables: Vec<OperationTable>) -> Self {
        Self {
            tables,
            leaders: None,
            rounds: None,
            schedule: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut leaders = None;
        let mut rounds = None;
        let mut schedule = None;
        for (i, line) in text.lines().enumerate() {
            let body = crate::table::strip_comment(line).trim();
            let err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            if let Some(rest) = body.strip_prefix(LEADERS) {
                let l = rest
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<Symbol>()
                            .map_err(|_| err(format!("bad leader {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                leaders = Some(l);
            } else if let Some(rest) = body.strip_prefix(ROUNDS) {
                let r = rest.trim();
                rounds = Some(r.parse().map_err(|_| err(format!("bad rounds {r:?}")))?);
            } else if let Some(rest) = body.strip_prefix(SCHEDULE) {
                schedule = Some(rest.parse().map_err(|e: Error| err(e.to_string()))?);
            }
        }
        let tables = parse_table_blocks_with(text, |body| {
            [LEADERS, ROUNDS, SCHEDULE]
                .iter()
                .any(|p| body.starts_with(p))
        })?;
        let first = &tables[0];
        if tables
            .iter()
            .any(|t| t.arity() != first.arity() || t.order() != first.order())
        {
            return Err(Error::Incompatible(
                "key tables differ in arity or order".into(),
            ));
        }
        Ok(Self {
            tables,
            leaders,
            rounds,
            schedule,
        })
    }

    pub fn arity(&self) -> usize {
        self.tables[0].arity()
    }

    pub fn order(&self) -> usize {
        self.tables[0].order()
    }

    fn leaders(&self) -> Result<&[Symbol]> {
        self.leaders
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument("key has no leaders: line".into()))
    }

    /// The quasigroup used by the stream engines.
    pub fn quasigroup(&self) -> Result<QuasigroupKey> {
        if self.tables.len() == 1 {
            return QuasigroupKey::new(self.tables[0].clone());
        }
        self.tables
            .iter()
            .find(|t| crate::quasigroup::is_quasigroup(t))
            .cloned()
            .map(QuasigroupKey::new)
            .unwrap_or_else(|| {
                Err(Error::NotQuasigroup(
                    "no table of the system is a quasigroup".into(),
                ))
            })
    }

    pub fn system(&self) -> Result<OrthogonalSystem> {
        OrthogonalSystem::new(self.tables.clone())
    }

    pub fn stream(&self) -> Result<NaryStream> {
        let key = self.quasigroup()?;
        let leaders = LeaderBlock::new(key.arity(), self.leaders()?.to_vec())?;
        NaryStream::new(key, leaders)
    }

    pub fn block_cipher(&self) -> Result<BlockCipher> {
        BlockCipher::new(self.system()?, self.rounds.unwrap_or(1))
    }

    pub fn leader_fan(&self) -> Result<LeaderFan> {
        let sys = self.system()?;
        let fixed = self.leaders()?;
        let n = sys.arity();
        if fixed.len() < n - 1 {
            return Err(Error::LeaderCount {
                expected: n - 1,
                found: fixed.len(),
            });
        }
        LeaderFan::new(sys, fixed[..n - 1].to_vec())
    }

    pub fn mixed(&self) -> Result<MixedCipher> {
        let schedule = self
            .schedule
            .clone()
            .ok_or_else(|| Error::InvalidSchedule("key has no schedule: line".into()))?;
        MixedCipher::new(self.stream()?, self.block_cipher()?, schedule)
    }
}

impl fmt::Display for KeyFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_table_blocks(&mut s, &self.tables)?;
        if let Some(l) = &self.leaders {
            let l: Vec<String> = l.iter().map(ToString::to_string).collect();
            writeln!(s, "{LEADERS} {}", l.join(" "))?;
        }
        if let Some(r) = self.rounds {
            writeln!(s, "{ROUNDS} {r}")?;
        }
        if let Some(sch) = &self.schedule {
            writeln!(s, "{SCHEDULE} {sch}")?;
        }
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_table_key() {
        let text = "# order-3 key\n2 3\n1 2 0\n2 0 1\n0 1 2\nleaders: 0\n";
        let key = KeyFile::parse(text).unwrap();
        assert_eq!(key.tables.len(), 1);
        assert_eq!(key.leaders, Some(vec![0]));
        assert_eq!(key.quasigroup().unwrap(), fixtures::abc_quasigroup());
        assert_eq!(KeyFile::parse(&key.to_string()).unwrap(), key);
        assert!(key.system().is_err());
    }

    #[test]
    fn system_key() {
        let mut key = KeyFile::from_tables(fixtures::order4_system_tables().to_vec());
        key.leaders = Some(vec![0, 1, 2, 3]);
        key.rounds = Some(3);
        key.schedule = Some("4 5".parse().unwrap());
        let parsed = KeyFile::parse(&key.to_string()).unwrap();
        assert_eq!(parsed, key);
        assert_eq!(parsed.quasigroup().unwrap(), fixtures::ternary_quasigroup());
        assert_eq!(parsed.block_cipher().unwrap().rounds(), 3);
        assert_eq!(parsed.leader_fan().unwrap().leaders(), &[0, 1]);
        assert!(parsed.mixed().is_ok());
    }

    #[test]
    fn key_errors() {
        assert!(matches!(
            KeyFile::parse("2 2\n0 1\n1 0\nleaders: x\n"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(
            KeyFile::parse("2 2\n0 1\n1 0\nrounds: -1\n"),
            Err(Error::Parse { line: 4, .. })
        ));
        let no_leaders = KeyFile::parse("2 2\n0 1\n1 0\n").unwrap();
        assert!(no_leaders.stream().is_err());
        assert!(KeyFile::parse("2 2\n0 1\n1 0\n---\n2 3\n0 1 2\n1 2 0\n2 0 1\n").is_err());
    }
}
