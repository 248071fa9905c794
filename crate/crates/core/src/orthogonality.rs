//! Orthogonal systems of n-ary operations.
//!
//! `n` operations of arity `n` are orthogonal when their joint map
//! `x ↦ (f_1(x), …, f_n(x))` is a bijection of `Q^n`. A system is therefore
//! the same thing as a permutation of `Q^n`, and this module converts between
//! the two views.

use std::fmt;

use crate::error::{Error, Result};
use crate::quasigroup::QuasigroupKey;
use crate::rng::SplitMix64;
use crate::table::{rank_of, table_size, tuple_of, OperationTable};
use crate::Symbol;

/// Largest `q^n` for which [`count_orthogonal_systems`] enumerates every permutation.
pub const CENSUS_EXHAUSTIVE_LIMIT: usize = 8;
/// Largest `q^n` whose factorial fits the census counter.
pub const CENSUS_FORMULA_LIMIT: usize = 34;
/// Sampled permutations checked above the exhaustive limit.
pub const CENSUS_SAMPLES: u64 = 5000;

fn check_compatible(tables: &[OperationTable], count: Option<usize>) -> Result<(usize, usize)> {
    let first = tables
        .first()
        .ok_or_else(|| Error::Incompatible("empty system".into()))?;
    let (n, q) = (first.arity(), first.order());
    for (i, t) in tables.iter().enumerate() {
        if t.arity() != n || t.order() != q {
            return Err(Error::Incompatible(format!(
                "table {} has arity {} over {} symbols, table 1 has arity {n} over {q}",
                i + 1,
                t.arity(),
                t.order()
            )));
        }
    }
    if let Some(k) = count {
        if k != n {
            return Err(Error::Incompatible(format!(
                "{k} tables given for arity {n}"
            )));
        }
    }
    Ok((n, q))
}

fn joint_ranks(tables: &[OperationTable]) -> Vec<usize> {
    let q = tables[0].order();
    (0..tables[0].len())
        .map(|r| tables.iter().fold(0, |acc, t| acc * q + t.at(r)))
        .collect()
}

/// Two argument tuples with the same joint image, if any.
///
/// Errors unless there are exactly `n` tables of arity `n` over one alphabet.
pub fn orthogonality_collision(
    tables: &[OperationTable],
) -> Result<Option<(Vec<Symbol>, Vec<Symbol>)>> {
    let (n, q) = check_compatible(tables, Some(tables.len()))?;
    let mut seen: Vec<Option<usize>> = vec![None; tables[0].len()];
    for (rank, image) in joint_ranks(tables).into_iter().enumerate() {
        if let Some(prev) = seen[image] {
            return Ok(Some((tuple_of(q, n, prev), tuple_of(q, n, rank))));
        }
        seen[image] = Some(rank);
    }
    Ok(None)
}

pub fn is_orthogonal_system(tables: &[OperationTable]) -> Result<bool> {
    Ok(orthogonality_collision(tables)?.is_none())
}

/// k-orthogonality of `k ≤ n` operations of arity `n`: every target
/// `k`-tuple has exactly `q^(n-k)` preimages.
pub fn is_k_orthogonal(tables: &[OperationTable]) -> Result<bool> {
    let (n, q) = check_compatible(tables, None)?;
    let k = tables.len();
    if k < 2 || k > n {
        return Err(Error::InvalidArgument(format!(
            "k-orthogonality needs 2 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let mut counts = vec![0usize; table_size(q, k)?];
    for image in joint_ranks(tables) {
        counts[image] += 1;
    }
    let expected = q.pow((n - k) as u32);
    Ok(counts.iter().all(|&c| c == expected))
}

/// `n` operations of arity `n` whose joint map is a bijection of `Q^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalSystem {
    tables: Vec<OperationTable>,
}

impl OrthogonalSystem {
    pub fn new(tables: Vec<OperationTable>) -> Result<Self> {
        if let Some((a, b)) = orthogonality_collision(&tables)? {
            return Err(Error::NotOrthogonal(format!(
                "{a:?} and {b:?} have the same image"
            )));
        }
        Ok(Self { tables })
    }

    pub fn tables(&self) -> &[OperationTable] {
        &self.tables
    }

    pub fn arity(&self) -> usize {
        self.tables[0].arity()
    }

    pub fn order(&self) -> usize {
        self.tables[0].order()
    }

    /// `(f_1(x), …, f_n(x))`; panics on malformed input.
    pub fn joint(&self, args: &[Symbol]) -> Vec<Symbol> {
        let rank = self.tables[0].rank(args);
        self.tables.iter().map(|t| t.at(rank)).collect()
    }

    /// Validating form of [`joint`](Self::joint).
    pub fn evaluate(&self, args: &[Symbol]) -> Result<Vec<Symbol>> {
        self.tables[0].check_args(args)?;
        Ok(self.joint(args))
    }

    /// Joint map on tuple ranks.
    pub fn joint_rank(&self, rank: usize) -> usize {
        let q = self.order();
        self.tables.iter().fold(0, |acc, t| acc * q + t.at(rank))
    }

    /// Index of the first table that is a quasigroup.
    pub fn first_quasigroup(&self) -> Option<usize> {
        self.tables
            .iter()
            .position(crate::quasigroup::is_quasigroup)
    }

    /// Parses tables in the text format separated by lines reading `---`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_table_blocks(text)?)
    }
}

/// Writes each table in the text format, separated by `---` lines.
impl fmt::Display for OrthogonalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_table_blocks(f, &self.tables)
    }
}

pub(crate) fn write_table_blocks(
    f: &mut impl fmt::Write,
    tables: &[OperationTable],
) -> fmt::Result {
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            writeln!(f, "---")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

/// Splits text on `---` lines and parses every non-empty block as a table.
/// Lines for which `skip` returns true are ignored.
pub(crate) fn parse_table_blocks_with(
    text: &str,
    skip: impl Fn(&str) -> bool,
) -> Result<Vec<OperationTable>> {
    let mut blocks: Vec<Vec<(usize, &str)>> = vec![Vec::new()];
    for (i, line) in text.lines().enumerate() {
        let body = crate::table::strip_comment(line).trim();
        if body == "---" {
            blocks.push(Vec::new());
        } else if !body.is_empty() && !skip(body) {
            blocks.last_mut().unwrap().push((i + 1, line));
        }
    }
    let tables: Vec<OperationTable> = blocks
        .iter()
        .filter(|b| !b.is_empty())
        .map(|b| OperationTable::parse_lines(b))
        .collect::<Result<_>>()?;
    if tables.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "no table found".into(),
        });
    }
    Ok(tables)
}

pub fn parse_table_blocks(text: &str) -> Result<Vec<OperationTable>> {
    parse_table_blocks_with(text, |_| false)
}

/// A permutation of `Q^n`, stored as the image rank of every tuple rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TuplePermutation {
    arity: usize,
    order: usize,
    image: Vec<usize>,
}

impl TuplePermutation {
    pub fn new(arity: usize, order: usize, image: Vec<usize>) -> Result<Self> {
        let size = table_size(order, arity)?;
        if image.len() != size {
            return Err(Error::NotPermutation(format!(
                "expected {size} images, got {}",
                image.len()
            )));
        }
        let mut seen = vec![false; size];
        for &r in &image {
            if r >= size || std::mem::replace(&mut seen[r], true) {
                return Err(Error::NotPermutation(format!(
                    "rank {r} repeated or out of range"
                )));
            }
        }
        Ok(Self {
            arity,
            order,
            image,
        })
    }

    pub fn identity(arity: usize, order: usize) -> Result<Self> {
        let size = table_size(order, arity)?;
        Self::new(arity, order, (0..size).collect())
    }

    pub fn random(arity: usize, order: usize, seed: u64) -> Result<Self> {
        let size = table_size(order, arity)?;
        let mut rng = SplitMix64::new(seed);
        Self::new(arity, order, rng.permutation(size))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply_rank(&self, rank: usize) -> usize {
        self.image[rank]
    }

    pub fn apply(&self, tuple: &[Symbol]) -> Vec<Symbol> {
        tuple_of(
            self.order,
            self.arity,
            self.image[rank_of(self.order, tuple)],
        )
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (r, &s) in self.image.iter().enumerate() {
            inv[s] = r;
        }
        Self {
            image: inv,
            ..*self
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            image: other.image.iter().map(|&r| self.image[r]).collect(),
            ..*self
        }
    }

    /// Multiplicative order: the lcm of the cycle lengths.
    pub fn cycle_order(&self) -> u128 {
        let mut visited = vec![false; self.image.len()];
        let mut order: u128 = 1;
        for start in 0..self.image.len() {
            if visited[start] {
                continue;
            }
            let mut len: u128 = 0;
            let mut r = start;
            while !visited[r] {
                visited[r] = true;
                r = self.image[r];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

/// Table `i` at tuple `t` is coordinate `i` of `perm(t)`.
pub fn system_from_permutation(perm: &TuplePermutation) -> OrthogonalSystem {
    let (n, q) = (perm.arity, perm.order);
    let mut columns = vec![Vec::with_capacity(perm.image.len()); n];
    for &img in &perm.image {
        for (col, x) in columns.iter_mut().zip(tuple_of(q, n, img)) {
            col.push(x);
        }
    }
    let tables = columns
        .into_iter()
        .map(|values| OperationTable::new(n, q, values).expect("coordinates are in range"))
        .collect();
    OrthogonalSystem { tables }
}

pub fn permutation_from_system(sys: &OrthogonalSystem) -> TuplePermutation {
    TuplePermutation {
        arity: sys.arity(),
        order: sys.order(),
        image: joint_ranks(&sys.tables),
    }
}

/// The system `B` with `B(A(x)) = x` for every `x ∈ Q^n`.
pub fn inverse_system(sys: &OrthogonalSystem) -> OrthogonalSystem {
    system_from_permutation(&permutation_from_system(sys).inverse())
}

/// A seeded random orthogonal system whose first table is `key`.
///
/// Each fibre `{x : key(x) = a}` has `q^(n-1)` elements; the remaining `n-1`
/// coordinates send it bijectively onto `Q^(n-1)` in a random order.
pub fn orthogonal_completion(key: &QuasigroupKey, seed: u64) -> OrthogonalSystem {
    let (n, q) = (key.arity(), key.order());
    let fibre = q.pow((n - 1) as u32);
    let mut rng = SplitMix64::new(seed);
    let mut next_slot = vec![0usize; q];
    let orders: Vec<Vec<usize>> = (0..q).map(|_| rng.permutation(fibre)).collect();
    let image = key
        .values()
        .iter()
        .map(|&a| {
            let rest = orders[a][next_slot[a]];
            next_slot[a] += 1;
            a * fibre + rest
        })
        .collect();
    let perm = TuplePermutation {
        arity: n,
        order: q,
        image,
    };
    system_from_permutation(&perm)
}

/// Result of [`count_orthogonal_systems`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Census {
    /// `(q^n)!`
    pub systems: u128,
    /// Permutations actually converted and checked.
    pub checked: u64,
    /// Whether `checked` covers every permutation.
    pub exhaustive: bool,
}

pub fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

/// Counts orthogonal systems of `n` operations of arity `n` on `q` symbols.
///
/// For `q^n ≤ 8` every permutation of `Q^n` is converted to a system, checked
/// for orthogonality and converted back; the count is the number that pass.
/// Up to `q^n ≤ 34` the count is `(q^n)!` with a seeded sample of
/// [`CENSUS_SAMPLES`] permutations checked the same way.
pub fn count_orthogonal_systems(order: usize, arity: usize) -> Result<Census> {
    let size = table_size(order, arity)?;
    if size > CENSUS_FORMULA_LIMIT {
        return Err(Error::SizeGuard(format!(
            "q^n = {size} exceeds {CENSUS_FORMULA_LIMIT}"
        )));
    }
    let check = |image: &[usize]| -> bool {
        let perm = TuplePermutation {
            arity,
            order,
            image: image.to_vec(),
        };
        let sys = system_from_permutation(&perm);
        is_orthogonal_system(&sys.tables).unwrap_or(false) && permutation_from_system(&sys) == perm
    };
    if size <= CENSUS_EXHAUSTIVE_LIMIT {
        let mut passed: u128 = 0;
        let mut checked: u64 = 0;
        for_each_permutation(size, |p| {
            checked += 1;
            if check(p) {
                passed += 1;
            }
        });
        return Ok(Census {
            systems: passed,
            checked,
            exhaustive: true,
        });
    }
    let mut rng = SplitMix64::new(size as u64);
    for _ in 0..CENSUS_SAMPLES {
        let p = rng.permutation(size);
        if !check(&p) {
            return Err(Error::NotOrthogonal(format!(
                "sampled permutation {p:?} did not yield an orthogonal system"
            )));
        }
    }
    Ok(Census {
        systems: factorial(size).expect("guarded by CENSUS_FORMULA_LIMIT"),
        checked: CENSUS_SAMPLES,
        exhaustive: false,
    })
}

/// Heap's algorithm over permutations of `0..len`.
pub fn for_each_permutation(len: usize, mut visit: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..len).collect();
    let mut c = vec![0usize; len];
    visit(&p);
    let mut i = 1;
    while i < len {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            visit(&p);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
