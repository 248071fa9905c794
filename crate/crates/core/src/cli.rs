//! The `qcipher` command line.
//!
//! Every command writes a human-readable report whose last line is `PASS`
//! or `FAIL`; the exit status is 0 exactly on `PASS`. When a command's main
//! output (a key, ciphertext, or plaintext) goes to standard output, the
//! report goes to standard error instead. Errors go to standard error and
//! exit with status 2.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::attack::{
    break_end_to_end, cca_recover, cpa_recover, recover_block_system, recover_leader_translations,
    CipherOracle, Direction, Oracle, RecoveredKey,
};
use crate::cipher::{devectorize, vectorize, CiphertextFile, Engine, MixSchedule};
use crate::error::Error;
use crate::keyfile::KeyFile;
use crate::orthogonality::{
    is_k_orthogonal, orthogonal_completion, orthogonality_collision, system_from_permutation,
    TuplePermutation,
};
use crate::quasigroup::{
    binary_parastrophe, inverse_op, latin_violation, random_quasigroup, QuasigroupKey,
};
use crate::rng::SplitMix64;
use crate::table::{tuple_of, Alphabet, OperationTable};
use crate::tquasigroup::{brute_force_report, materialize, t1_criterion, LinearQuasigroupSpec};
use crate::{Sigma, Symbol};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Cipher(#[from] Error),
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "qcipher",
    version,
    about = "Quasigroup ciphers and chosen-text attacks on them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a key file.
    Keygen(KeygenArgs),
    /// Encrypt a file.
    Encrypt(CryptArgs),
    /// Decrypt a ciphertext file.
    Decrypt(CryptArgs),
    /// Run an attack against an in-process oracle holding a key.
    Attack(AttackArgs),
    /// Report the algebraic properties of a key file or linear quasigroup.
    Verify(VerifyArgs),
    /// Pretty-print the tables of a key file.
    Tables(TablesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KeyKind {
    Quasigroup,
    Orthosystem,
    Tquasigroup,
}

#[derive(Debug, Args)]
pub struct KeygenArgs {
    #[arg(value_enum)]
    pub kind: KeyKind,
    /// Alphabet size.
    #[arg(short = 'q', long, default_value_t = 4)]
    pub order: usize,
    /// Arity.
    #[arg(short = 'n', long, default_value_t = 2)]
    pub arity: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Linear quasigroup `p:k:m:a` for `tquasigroup`.
    #[arg(long)]
    pub spec: Option<LinearQuasigroupSpec>,
    /// Make the first table of an orthogonal system a quasigroup, so the key
    /// also drives the stream engines.
    #[arg(long)]
    pub with_quasigroup: bool,
    /// Leader symbols; drawn from the seed when absent.
    #[arg(long, visible_alias = "leader")]
    pub leaders: Option<String>,
    #[arg(long)]
    pub rounds: Option<usize>,
    #[arg(long)]
    pub schedule: Option<MixSchedule>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CryptArgs {
    #[arg(long)]
    pub key: PathBuf,
    /// Defaults to `nary` for encryption and to the header's engine for decryption.
    #[arg(long)]
    pub engine: Option<Engine>,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Alphabet file: plaintext is text over these symbols instead of bytes.
    #[arg(long)]
    pub alphabet: Option<PathBuf>,
    /// Plaintext is whitespace-separated integer symbols instead of bytes.
    #[arg(long, conflicts_with = "alphabet")]
    pub symbols: bool,
    /// Overrides the key file's leaders.
    #[arg(long, visible_alias = "leader")]
    pub leaders: Option<String>,
    #[arg(long)]
    pub rounds: Option<usize>,
    #[arg(long)]
    pub schedule: Option<MixSchedule>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AttackMode {
    /// Chosen-ciphertext recovery of the stream key.
    Cca,
    /// Adaptive chosen-plaintext recovery of the stream key.
    Cpa,
    /// Table recovery followed by leader-translation recovery.
    Leaders,
    /// Full break of an intercepted message.
    Break,
    /// Tabulation of the block cipher.
    Block,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Decrypt,
    Encrypt,
}

impl From<OracleKind> for Direction {
    fn from(k: OracleKind) -> Self {
        match k {
            OracleKind::Decrypt => Direction::Decrypt,
            OracleKind::Encrypt => Direction::Encrypt,
        }
    }
}

#[derive(Debug, Args)]
pub struct AttackArgs {
    #[arg(long, value_enum)]
    pub mode: AttackMode,
    /// The key hidden inside the oracle.
    #[arg(long)]
    pub key: PathBuf,
    /// Oracle direction for `leaders`, `break`, and `block`.
    #[arg(long, value_enum, default_value_t = OracleKind::Decrypt)]
    pub oracle: OracleKind,
    /// Intercepted ciphertext file for `break`; a random message is used otherwise.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Length of the random message for `break`.
    #[arg(long, default_value_t = 50)]
    pub len: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, visible_alias = "leader")]
    pub leaders: Option<String>,
    #[arg(long)]
    pub rounds: Option<usize>,
    #[arg(long)]
    pub alphabet: Option<PathBuf>,
    /// Write the oracle transcript here.
    #[arg(long)]
    pub transcript: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Key or system file.
    #[arg(long, required_unless_present = "spec")]
    pub key: Option<PathBuf>,
    /// Linear quasigroup `p:k:m:a`: compare the coefficient criterion with brute force.
    #[arg(long, conflicts_with = "key")]
    pub spec: Option<LinearQuasigroupSpec>,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[arg(long)]
    pub key: PathBuf,
    #[arg(long)]
    pub alphabet: Option<PathBuf>,
    /// Also print the five parastrophes of a binary table.
    #[arg(long)]
    pub parastrophes: bool,
    /// Also print the inverse operations of a quasigroup.
    #[arg(long)]
    pub inverses: bool,
}

/// Runs a parsed command, writing its output and report, and returns the
/// exit status.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let outcome = match cli.command {
        Command::Keygen(a) => keygen(&a),
        Command::Encrypt(a) => encrypt(&a),
        Command::Decrypt(a) => decrypt(&a),
        Command::Attack(a) => attack(&a),
        Command::Verify(a) => verify(&a),
        Command::Tables(a) => tables(&a),
    };
    match outcome {
        Ok(out) => {
            let status = if out.pass { "PASS" } else { "FAIL" };
            let written = match &out.payload {
                Some(data) => stdout
                    .write_all(data)
                    .and_then(|_| writeln!(stderr, "{}{status}", out.report)),
                None => writeln!(stdout, "{}{status}", out.report),
            };
            match written {
                Ok(()) if out.pass => 0,
                Ok(()) => 1,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}\nFAIL");
            2
        }
    }
}

/// A command's result: report text, verdict, and optional data for stdout.
struct Outcome {
    report: String,
    pass: bool,
    payload: Option<Vec<u8>>,
}

impl Outcome {
    fn new(report: String, pass: bool) -> Self {
        Self {
            report,
            pass,
            payload: None,
        }
    }

    /// Writes `data` to `out`, or keeps it for stdout.
    fn emit(mut self, out: Option<&Path>, data: Vec<u8>) -> CliResult<Self> {
        match out {
            Some(path) => {
                std::fs::write(path, data).map_err(|source| CliError::Io {
                    path: path.to_path_buf(),
                    source,
                })?;
                let _ = writeln!(self.report, "wrote {}", path.display());
            }
            None => self.payload = Some(data),
        }
        Ok(self)
    }
}

fn read(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_text(path: &Path) -> CliResult<String> {
    String::from_utf8(read(path)?).map_err(|_| {
        CliError::Cipher(Error::InvalidArgument(format!(
            "{} is not UTF-8 text",
            path.display()
        )))
    })
}

fn load_key(path: &Path) -> CliResult<KeyFile> {
    Ok(KeyFile::parse(&read_text(path)?)?)
}

fn load_alphabet(path: Option<&Path>, order: usize) -> CliResult<Option<Alphabet>> {
    let Some(path) = path else { return Ok(None) };
    let alphabet = Alphabet::parse(&read_text(path)?)?;
    if alphabet.order() != order {
        return Err(Error::Incompatible(format!(
            "alphabet has {} symbols, key has order {order}",
            alphabet.order()
        ))
        .into());
    }
    Ok(Some(alphabet))
}

/// Leaders as whitespace- or comma-separated integers or alphabet names.
fn parse_leaders(text: &str, alphabet: Option<&Alphabet>) -> CliResult<Vec<Symbol>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            alphabet
                .and_then(|a| a.encode(t))
                .or_else(|| t.parse().ok())
                .ok_or_else(|| Error::InvalidArgument(format!("bad leader {t:?}")).into())
        })
        .collect()
}

fn apply_overrides(
    key: &mut KeyFile,
    leaders: Option<&str>,
    rounds: Option<usize>,
    schedule: Option<&MixSchedule>,
    alphabet: Option<&Alphabet>,
) -> CliResult<()> {
    if let Some(l) = leaders {
        key.leaders = Some(parse_leaders(l, alphabet)?);
    }
    if rounds.is_some() {
        key.rounds = rounds;
    }
    if let Some(s) = schedule {
        key.schedule = Some(s.clone());
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn keygen(a: &KeygenArgs) -> CliResult<Outcome> {
    let mut rng = SplitMix64::new(a.seed);
    let mut report = String::new();
    let (tables, pass) = match a.kind {
        KeyKind::Quasigroup => {
            let key = random_quasigroup(a.order, a.arity, rng.next_u64())?;
            let ok = latin_violation(key.table()).is_none();
            let _ = writeln!(
                report,
                "quasigroup of order {} and arity {}: {}",
                a.order,
                a.arity,
                yes_no(ok)
            );
            (vec![key.into_table()], ok)
        }
        KeyKind::Orthosystem => {
            let system = if a.with_quasigroup {
                let key = random_quasigroup(a.order, a.arity, rng.next_u64())?;
                orthogonal_completion(&key, rng.next_u64())
            } else {
                system_from_permutation(&TuplePermutation::random(
                    a.arity,
                    a.order,
                    rng.next_u64(),
                )?)
            };
            let ok = orthogonality_collision(system.tables())?.is_none();
            let _ = writeln!(
                report,
                "orthogonal system of {} operations of order {}: {}",
                a.arity,
                a.order,
                yes_no(ok)
            );
            (system.tables().to_vec(), ok)
        }
        KeyKind::Tquasigroup => {
            let spec = a
                .spec
                .ok_or_else(|| Error::InvalidArgument("tquasigroup needs --spec p:k:m:a".into()))?;
            let key = materialize(&spec)?;
            let criterion = t1_criterion(&spec);
            let _ = writeln!(
                report,
                "linear quasigroup {spec}: x*y = {}x + {}y + {} mod {}",
                spec.k(),
                spec.m(),
                spec.a(),
                spec.p()
            );
            for (name, value) in spec.conditions() {
                let _ = writeln!(report, "  {name} = {value}");
            }
            for (sigma, v) in criterion.verdicts {
                let _ = writeln!(report, "  orthogonal to ^{sigma}A: {}", yes_no(v));
            }
            let ok = latin_violation(key.table()).is_none();
            let _ = writeln!(report, "quasigroup: {}", yes_no(ok));
            (vec![key.into_table()], ok)
        }
    };
    let arity = tables[0].arity();
    let order = tables[0].order();
    let mut key = KeyFile::from_tables(tables);
    key.leaders = Some(match &a.leaders {
        Some(l) => parse_leaders(l, None)?,
        None => rng.symbols(order, (arity - 1) * (arity - 1)),
    });
    key.rounds = a.rounds;
    key.schedule = a.schedule.clone();
    Outcome::new(report, pass).emit(a.out.as_deref(), key.to_string().into_bytes())
}

/// How plaintext is read and written.
enum PlainFormat {
    Bytes,
    Symbols,
    Text(Alphabet),
}

impl PlainFormat {
    fn new(symbols: bool, alphabet: Option<Alphabet>) -> Self {
        match (symbols, alphabet) {
            (_, Some(a)) => PlainFormat::Text(a),
            (true, None) => PlainFormat::Symbols,
            (false, None) => PlainFormat::Bytes,
        }
    }

    fn read(&self, data: &[u8], order: usize) -> CliResult<Vec<Symbol>> {
        let text = || {
            std::str::from_utf8(data)
                .map_err(|_| Error::InvalidArgument("plaintext is not UTF-8 text".into()))
        };
        Ok(match self {
            PlainFormat::Bytes => vectorize(data, order),
            PlainFormat::Text(a) => a.encode_text(text()?)?,
            PlainFormat::Symbols => {
                let symbols = text()?
                    .split_whitespace()
                    .map(|t| {
                        t.parse()
                            .map_err(|_| Error::InvalidArgument(format!("bad symbol {t:?}")))
                    })
                    .collect::<Result<Vec<Symbol>, Error>>()?;
                crate::table::check_symbols(&symbols, order)?;
                symbols
            }
        })
    }

    fn write(&self, symbols: &[Symbol], order: usize) -> CliResult<Vec<u8>> {
        Ok(match self {
            PlainFormat::Bytes => devectorize(symbols, order)?,
            PlainFormat::Text(a) => format!("{}\n", a.decode_text(symbols)).into_bytes(),
            PlainFormat::Symbols => {
                let s: Vec<String> = symbols.iter().map(ToString::to_string).collect();
                format!("{}\n", s.join(" ")).into_bytes()
            }
        })
    }

    fn alphabet(&self) -> Option<&Alphabet> {
        match self {
            PlainFormat::Text(a) => Some(a),
            _ => None,
        }
    }
}

fn crypt_setup(a: &CryptArgs) -> CliResult<(KeyFile, PlainFormat)> {
    let mut key = load_key(&a.key)?;
    let alphabet = load_alphabet(a.alphabet.as_deref(), key.order())?;
    apply_overrides(
        &mut key,
        a.leaders.as_deref(),
        a.rounds,
        a.schedule.as_ref(),
        alphabet.as_ref(),
    )?;
    Ok((key, PlainFormat::new(a.symbols, alphabet)))
}

fn check_binary(engine: Engine, key: &KeyFile) -> CliResult<()> {
    if engine == Engine::Binary && key.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: key.arity(),
        }
        .into());
    }
    Ok(())
}

fn encrypt(a: &CryptArgs) -> CliResult<Outcome> {
    let (key, format) = crypt_setup(a)?;
    let engine = a.engine.unwrap_or(Engine::Nary);
    check_binary(engine, &key)?;
    let plain = format.read(&read(&a.input)?, key.order())?;
    let symbols = match engine {
        Engine::Binary | Engine::Nary => key.stream()?.encrypt(&plain)?,
        Engine::Block => key.block_cipher()?.encrypt_padded(&plain)?,
        Engine::LeaderFan => key.leader_fan()?.encrypt(&plain)?,
        Engine::Mixed => key.mixed()?.encrypt(&plain)?.0,
    };
    let file = CiphertextFile {
        engine,
        arity: key.arity(),
        order: key.order(),
        msg_len: plain.len(),
        symbols,
    };
    let report = format!(
        "encrypted {} plaintext symbols into {} ciphertext symbols with the {engine} engine\n",
        plain.len(),
        file.symbols.len()
    );
    Outcome::new(report, true).emit(
        a.out.as_deref(),
        file.render(format.alphabet()).into_bytes(),
    )
}

fn decrypt(a: &CryptArgs) -> CliResult<Outcome> {
    let (key, format) = crypt_setup(a)?;
    let file = CiphertextFile::parse(&read_text(&a.input)?, format.alphabet())?;
    let engine = a.engine.unwrap_or(file.engine);
    if engine != file.engine {
        return Err(Error::Incompatible(format!(
            "ciphertext was produced by the {} engine, not {engine}",
            file.engine
        ))
        .into());
    }
    if (file.arity, file.order) != (key.arity(), key.order()) {
        return Err(Error::Incompatible(format!(
            "ciphertext is for arity {} over {} symbols, key has arity {} over {}",
            file.arity,
            file.order,
            key.arity(),
            key.order()
        ))
        .into());
    }
    check_binary(engine, &key)?;
    let c = &file.symbols;
    let expected_len = match engine {
        Engine::Binary | Engine::Nary => file.msg_len,
        Engine::Block => crate::cipher::padded_len(file.msg_len, key.arity()),
        Engine::LeaderFan => file.msg_len * key.arity(),
        Engine::Mixed => key.mixed()?.cipher_len(file.msg_len),
    };
    if c.len() != expected_len {
        return Err(Error::MalformedCiphertext(format!(
            "header promises {} plaintext symbols, which needs {expected_len} ciphertext symbols; found {}",
            file.msg_len,
            c.len()
        ))
        .into());
    }
    let plain = match engine {
        Engine::Binary | Engine::Nary => key.stream()?.decrypt(c)?,
        Engine::Block => key.block_cipher()?.decrypt_padded(c, file.msg_len)?,
        Engine::LeaderFan => key.leader_fan()?.decrypt(c)?,
        Engine::Mixed => key.mixed()?.decrypt(c, file.msg_len)?,
    };
    let report = format!(
        "decrypted {} symbols with the {engine} engine\n",
        plain.len()
    );
    let data = format.write(&plain, key.order())?;
    Outcome::new(report, true).emit(a.out.as_deref(), data)
}

fn attack(a: &AttackArgs) -> CliResult<Outcome> {
    let mut key = load_key(&a.key)?;
    let alphabet = load_alphabet(a.alphabet.as_deref(), key.order())?;
    apply_overrides(
        &mut key,
        a.leaders.as_deref(),
        a.rounds,
        None,
        alphabet.as_ref(),
    )?;
    let (q, n) = (key.order(), key.arity());
    let mut report = String::new();

    if a.mode == AttackMode::Block {
        let cipher = key.block_cipher()?;
        let mut oracle = CipherOracle::new(cipher.clone(), a.oracle.into());
        let rec = recover_block_system(&mut oracle, q, n)?;
        let pass = crate::table::Tuples::new(q, n)
            .all(|b| rec.system.joint(&b) == cipher.encrypt_block(&b).unwrap());
        let _ = writeln!(
            report,
            "oracle: {} ({} round(s))",
            oracle.direction(),
            cipher.rounds()
        );
        let _ = writeln!(report, "queries: {}", rec.query_count);
        let _ = writeln!(
            report,
            "recovered system (one round as seen through the oracle):"
        );
        for (i, t) in rec.system.tables().iter().enumerate() {
            let _ = writeln!(report, "f{}:", i + 1);
            report.push_str(&pretty_table(t, alphabet.as_ref()));
        }
        let _ = writeln!(
            report,
            "matches the hidden cipher on all {} blocks: {}",
            q.pow(n as u32),
            yes_no(pass)
        );
        write_transcript(a.transcript.as_deref(), &oracle)?;
        return Ok(Outcome::new(report, pass));
    }

    let stream = key.stream()?;
    let hidden = stream.key().clone();
    let direction = match a.mode {
        AttackMode::Cca => Direction::Decrypt,
        AttackMode::Cpa => Direction::Encrypt,
        _ => a.oracle.into(),
    };
    let mut oracle = CipherOracle::new(stream.clone(), direction);
    let _ = writeln!(report, "oracle: {direction}, arity {n}, order {q}");

    let recover = |oracle: &mut CipherOracle<_>| -> CliResult<RecoveredKey> {
        Ok(match direction {
            Direction::Decrypt => cca_recover(oracle, q, n)?,
            Direction::Encrypt => cpa_recover(oracle, q, n)?,
        })
    };
    let rec = recover(&mut oracle)?;
    let table_ok = rec.table == hidden;
    let _ = writeln!(
        report,
        "table recovery: {} queries, {} symbols submitted",
        rec.query_count, rec.symbols_submitted
    );
    if n == 2 {
        let _ = writeln!(report, "recovered A:");
        report.push_str(&pretty_table(rec.table.table(), alphabet.as_ref()));
        let _ = writeln!(report, "recovered inverse ^(2,3)A:");
        report.push_str(&pretty_table(rec.inverse.table(), alphabet.as_ref()));
    } else {
        let _ = writeln!(report, "recovered A:");
        report.push_str(&pretty_table(rec.table.table(), alphabet.as_ref()));
    }
    let _ = writeln!(
        report,
        "recovered table equals hidden key: {}",
        yes_no(table_ok)
    );
    if matches!(a.mode, AttackMode::Cca | AttackMode::Cpa) {
        write_transcript(a.transcript.as_deref(), &oracle)?;
        return Ok(Outcome::new(report, table_ok));
    }

    let translations = recover_leader_translations(&mut oracle, &rec)?;
    let name = |s: Symbol| {
        alphabet
            .as_ref()
            .map_or_else(|| s.to_string(), |a| a.name(s))
    };
    let mut leaders_ok = true;
    for (t, true_prefix) in translations.iter().zip(stream.leaders().prefixes()) {
        let map: Vec<String> = t
            .map
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}->{}", name(x), name(y)))
            .collect();
        let prefixes: Vec<String> = t
            .equivalent_prefixes
            .iter()
            .map(|p| {
                format!(
                    "({})",
                    p.iter().map(|&s| name(s)).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        let _ = writeln!(report, "slot {}: T = {}", t.slot, map.join(" "));
        let _ = writeln!(report, "  equivalent prefixes: {}", prefixes.join(" "));
        leaders_ok &= t
            .equivalent_prefixes
            .iter()
            .any(|p| p.as_slice() == true_prefix);
    }
    let _ = writeln!(
        report,
        "true leaders lie in the recovered classes: {}",
        yes_no(leaders_ok)
    );
    let _ = writeln!(report, "total queries: {}", oracle.query_count());
    if a.mode == AttackMode::Leaders {
        write_transcript(a.transcript.as_deref(), &oracle)?;
        return Ok(Outcome::new(report, table_ok && leaders_ok));
    }

    let (intercepted, truth) = match &a.input {
        Some(path) => {
            let file = CiphertextFile::parse(&read_text(path)?, alphabet.as_ref())?;
            let truth = stream.decrypt(&file.symbols)?;
            (file.symbols, truth)
        }
        None => {
            let plain = SplitMix64::new(a.seed).symbols(q, a.len);
            (stream.encrypt(&plain)?, plain)
        }
    };
    let broken = break_end_to_end(&rec, &translations, &intercepted)?;
    let ok = broken == truth;
    let render = |s: &[Symbol]| match &alphabet {
        Some(al) => al.decode_text(s),
        None => s
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" "),
    };
    let _ = writeln!(report, "intercepted: {}", render(&intercepted));
    let _ = writeln!(report, "recovered plaintext: {}", render(&broken));
    let _ = writeln!(report, "matches the true plaintext: {}", yes_no(ok));
    write_transcript(a.transcript.as_deref(), &oracle)?;
    Ok(Outcome::new(report, table_ok && leaders_ok && ok))
}

fn write_transcript<D: crate::attack::Device>(
    path: Option<&Path>,
    oracle: &CipherOracle<D>,
) -> CliResult<()> {
    if let Some(path) = path {
        std::fs::write(path, oracle.transcript().to_string()).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    }
    Ok(())
}

fn verify(a: &VerifyArgs) -> CliResult<Outcome> {
    let mut report = String::new();
    if let Some(spec) = &a.spec {
        let key = materialize(spec)?;
        let criterion = t1_criterion(spec);
        let brute = brute_force_report(&key)?;
        let _ = writeln!(report, "linear quasigroup {spec}");
        for ((sigma, c), (_, b)) in criterion.verdicts.iter().zip(&brute.verdicts) {
            let _ = writeln!(
                report,
                "orthogonal to ^{sigma}A: criterion {}, brute force {}",
                yes_no(*c),
                yes_no(*b)
            );
        }
        let agree = criterion
            .verdicts
            .iter()
            .zip(&brute.verdicts)
            .all(|(x, y)| x.1 == y.1);
        let _ = writeln!(
            report,
            "criterion agrees with brute force: {}",
            yes_no(agree)
        );
        return Ok(Outcome::new(report, agree));
    }
    let path = a.key.as_deref().expect("clap requires --key or --spec");
    let key = load_key(path)?;
    let (q, n) = (key.order(), key.arity());
    let _ = writeln!(
        report,
        "{} table(s) of arity {n} over {q} symbols",
        key.tables.len()
    );
    let mut pass = true;

    for (i, t) in key.tables.iter().enumerate() {
        match latin_violation(t) {
            None => {
                let _ = writeln!(report, "table {} quasigroup: yes", i + 1);
            }
            Some(v) => {
                let _ = writeln!(report, "table {} quasigroup: no ({v})", i + 1);
            }
        }
    }
    if key.tables.len() == 1 {
        pass &= latin_violation(&key.tables[0]).is_none();
        if pass && n == 2 {
            let qk = QuasigroupKey::new(key.tables[0].clone())?;
            let brute = brute_force_report(&qk)?;
            for (sigma, v) in brute.verdicts {
                let _ = writeln!(report, "orthogonal to ^{sigma}A: {}", yes_no(v));
            }
        }
    } else if key.tables.len() == n {
        match orthogonality_collision(&key.tables)? {
            None => {
                let _ = writeln!(report, "orthogonal: yes");
            }
            Some((x, y)) => {
                pass = false;
                let _ = writeln!(
                    report,
                    "orthogonal: no ({x:?} and {y:?} have the same image)"
                );
            }
        }
    } else {
        let ok = is_k_orthogonal(&key.tables)?;
        pass &= ok;
        let _ = writeln!(report, "{}-orthogonal: {}", key.tables.len(), yes_no(ok));
    }
    if let Some(leaders) = &key.leaders {
        let ok = leaders.iter().all(|&l| l < q)
            && (leaders.len() == (n - 1) * (n - 1)
                || (key.tables.len() > 1 && leaders.len() >= n - 1));
        pass &= ok;
        let _ = writeln!(report, "leaders valid: {}", yes_no(ok));
    }
    Ok(Outcome::new(report, pass))
}

fn tables(a: &TablesArgs) -> CliResult<Outcome> {
    let key = load_key(&a.key)?;
    let alphabet = load_alphabet(a.alphabet.as_deref(), key.order())?;
    let mut report = String::new();
    let many = key.tables.len() > 1;
    for (i, t) in key.tables.iter().enumerate() {
        if many {
            let _ = writeln!(report, "f{}:", i + 1);
        }
        report.push_str(&pretty_table(t, alphabet.as_ref()));
        let Ok(qk) = QuasigroupKey::new(t.clone()) else {
            continue;
        };
        if a.parastrophes && t.arity() == 2 {
            for sigma in Sigma::PARASTROPHES {
                let _ = writeln!(report, "^{sigma}A:");
                report.push_str(&pretty_table(
                    binary_parastrophe(&qk, sigma)?.table(),
                    alphabet.as_ref(),
                ));
            }
        }
        if a.inverses {
            for pos in 1..=t.arity() {
                let _ = writeln!(report, "^({pos},{})A:", t.arity() + 1);
                report.push_str(&pretty_table(
                    inverse_op(&qk, pos)?.table(),
                    alphabet.as_ref(),
                ));
            }
        }
    }
    Ok(Outcome::new(report, true))
}

/// Binary tables as a Cayley square; n-ary tables as one square per value
/// of the first `n-2` arguments.
pub fn pretty_table(t: &OperationTable, alphabet: Option<&Alphabet>) -> String {
    let q = t.order();
    let n = t.arity();
    let name = |s: Symbol| alphabet.map_or_else(|| s.to_string(), |a| a.name(s));
    let width = (0..q).map(|s| name(s).chars().count()).max().unwrap_or(1);
    let cell = |s: String| format!("{s:>width$}");
    let mut out = String::new();
    if n == 1 {
        let row: Vec<String> = t.values().iter().map(|&v| cell(name(v))).collect();
        let _ = writeln!(out, "{}", row.join(" "));
        return out;
    }
    let square = q * q;
    for (b, block) in t.values().chunks(square).enumerate() {
        if n > 2 {
            let prefix: Vec<String> = tuple_of(q, n - 2, b).into_iter().map(name).collect();
            let _ = writeln!(out, "[{}, _, _]", prefix.join(", "));
        }
        let header: Vec<String> = (0..q).map(|s| cell(name(s))).collect();
        let _ = writeln!(out, "{} | {}", " ".repeat(width), header.join(" "));
        let _ = writeln!(
            out,
            "{}-+-{}",
            "-".repeat(width),
            "-".repeat(header.join(" ").len())
        );
        for (x, row) in block.chunks(q).enumerate() {
            let cells: Vec<String> = row.iter().map(|&v| cell(name(v))).collect();
            let _ = writeln!(out, "{} | {}", cell(name(x)), cells.join(" "));
        }
    }
    out
}
