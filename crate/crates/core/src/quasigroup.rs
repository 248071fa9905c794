//! n-ary quasigroups: validation, parastrophes, inverse operations,
//! translations, and seeded key generation.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::table::{check_symbols, tuple_of, OperationTable, Tuples};
use crate::Symbol;

/// Witness that a table is not a quasigroup.
///
/// Fixing every argument except `position` (1-based) to `fixed` and asking for
/// the result `result` gives `solutions.len() != 1` solutions in that slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinViolation {
    pub position: usize,
    /// The full argument tuple with the free slot set to `None`.
    pub fixed: Vec<Option<Symbol>>,
    pub result: Symbol,
    pub solutions: Vec<Symbol>,
}

impl fmt::Display for LatinViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self
            .fixed
            .iter()
            .map(|a| a.map_or_else(|| "_".to_string(), |s| s.to_string()))
            .collect();
        write!(
            f,
            "A({}) = {} has {} solutions in position {}",
            args.join(", "),
            self.result,
            self.solutions.len(),
            self.position
        )?;
        if !self.solutions.is_empty() {
            let s: Vec<String> = self.solutions.iter().map(ToString::to_string).collect();
            write!(f, " ({})", s.join(", "))?;
        }
        Ok(())
    }
}

/// Finds a line (one argument varying, the rest fixed) that is not a
/// permutation of the alphabet, checking every argument position.
pub fn latin_violation(table: &OperationTable) -> Option<LatinViolation> {
    let q = table.order();
    let n = table.arity();
    let mut seen: Vec<Option<Symbol>> = vec![None; q];
    for pos in 0..n {
        let stride = q.pow((n - 1 - pos) as u32);
        for others in Tuples::new(q, n - 1) {
            seen.iter_mut().for_each(|s| *s = None);
            let mut base = 0;
            for (i, &x) in others.iter().enumerate() {
                let slot = if i < pos { i } else { i + 1 };
                base += x * q.pow((n - 1 - slot) as u32);
            }
            for x in 0..q {
                let v = table.at(base + x * stride);
                if let Some(prev) = seen[v] {
                    let mut fixed: Vec<Option<Symbol>> = others.iter().copied().map(Some).collect();
                    fixed.insert(pos, None);
                    return Some(LatinViolation {
                        position: pos + 1,
                        fixed,
                        result: v,
                        solutions: vec![prev, x],
                    });
                }
                seen[v] = Some(x);
            }
        }
    }
    None
}

/// Whether every argument position is uniquely solvable.
pub fn is_quasigroup(table: &OperationTable) -> bool {
    latin_violation(table).is_none()
}

/// An operation table known to be an n-ary quasigroup (n ≥ 2).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuasigroupKey {
    table: OperationTable,
}

impl QuasigroupKey {
    pub fn new(table: OperationTable) -> Result<Self> {
        if table.arity() < 2 {
            return Err(Error::InvalidArity {
                min: 2,
                found: table.arity(),
            });
        }
        if let Some(v) = latin_violation(&table) {
            return Err(Error::NotQuasigroup(v.to_string()));
        }
        Ok(Self { table })
    }

    /// Wraps a table whose quasigroup property follows from construction.
    pub(crate) fn trusted(table: OperationTable) -> Self {
        debug_assert!(is_quasigroup(&table));
        Self { table }
    }

    pub fn table(&self) -> &OperationTable {
        &self.table
    }

    pub fn into_table(self) -> OperationTable {
        self.table
    }
}

impl Deref for QuasigroupKey {
    type Target = OperationTable;

    fn deref(&self) -> &OperationTable {
        &self.table
    }
}

impl TryFrom<OperationTable> for QuasigroupKey {
    type Error = Error;

    fn try_from(table: OperationTable) -> Result<Self> {
        Self::new(table)
    }
}

impl fmt::Display for QuasigroupKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.table.fmt(f)
    }
}

/// Permutation of the three slots of `A(x1, x2) = x3`, naming a parastrophe.
///
/// `(Q, ^σA)` is defined by `^σA(x_σ(1), x_σ(2)) = x_σ(3)` whenever
/// `A(x1, x2) = x3`. So `(23)` is left division `x \ y` and `(13)` is right
/// division `x / y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sigma {
    Identity,
    S12,
    S13,
    S23,
    S123,
    S132,
}

impl Sigma {
    /// The five non-trivial parastrophes.
    pub const PARASTROPHES: [Sigma; 5] =
        [Sigma::S12, Sigma::S13, Sigma::S23, Sigma::S123, Sigma::S132];
    pub const ALL: [Sigma; 6] = [
        Sigma::Identity,
        Sigma::S12,
        Sigma::S13,
        Sigma::S23,
        Sigma::S123,
        Sigma::S132,
    ];

    /// Images of the slots `0, 1, 2` (0-based).
    pub fn images(self) -> [usize; 3] {
        match self {
            Sigma::Identity => [0, 1, 2],
            Sigma::S12 => [1, 0, 2],
            Sigma::S13 => [2, 1, 0],
            Sigma::S23 => [0, 2, 1],
            Sigma::S123 => [1, 2, 0],
            Sigma::S132 => [2, 0, 1],
        }
    }

    pub fn from_images(images: [usize; 3]) -> Option<Sigma> {
        Sigma::ALL.into_iter().find(|s| s.images() == images)
    }

    /// `σ ∘ τ`, so that `^τ(^σA) = ^(σ∘τ)A`.
    pub fn compose(self, tau: Sigma) -> Sigma {
        let s = self.images();
        let t = tau.images();
        Sigma::from_images([s[t[0]], s[t[1]], s[t[2]]]).expect("S3 is closed")
    }

    pub fn inverse(self) -> Sigma {
        let s = self.images();
        let mut inv = [0; 3];
        for (i, &x) in s.iter().enumerate() {
            inv[x] = i;
        }
        Sigma::from_images(inv).expect("S3 is closed")
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sigma::Identity => "()",
            Sigma::S12 => "(12)",
            Sigma::S13 => "(13)",
            Sigma::S23 => "(23)",
            Sigma::S123 => "(123)",
            Sigma::S132 => "(132)",
        })
    }
}

impl std::str::FromStr for Sigma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        Ok(match t {
            "" | "id" | "e" => Sigma::Identity,
            "12" => Sigma::S12,
            "13" => Sigma::S13,
            "23" => Sigma::S23,
            "123" => Sigma::S123,
            "132" => Sigma::S132,
            _ => return Err(Error::InvalidArgument(format!("unknown parastrophe {s:?}"))),
        })
    }
}

/// General parastrophe of an n-ary quasigroup.
///
/// `images` is a permutation of the `n + 1` slots (arguments then result);
/// the new operation maps `(x_images[0], …, x_images[n-1])` to `x_images[n]`
/// for every `A(x_0, …, x_{n-1}) = x_n`.
pub fn parastrophe(key: &QuasigroupKey, images: &[usize]) -> Result<QuasigroupKey> {
    let n = key.arity();
    let q = key.order();
    let mut check = images.to_vec();
    check.sort_unstable();
    if check != (0..=n).collect::<Vec<_>>() {
        return Err(Error::NotPermutation(format!(
            "{images:?} is not a permutation of the {} slots",
            n + 1
        )));
    }
    let mut values = vec![0; key.len()];
    let mut full = vec![0; n + 1];
    let mut args = vec![0; n];
    for (rank, &result) in key.values().iter().enumerate() {
        full[..n].copy_from_slice(&tuple_of(q, n, rank));
        full[n] = result;
        for (a, &img) in args.iter_mut().zip(images) {
            *a = full[img];
        }
        values[key.rank(&args)] = full[images[n]];
    }
    Ok(QuasigroupKey::trusted(OperationTable::new(n, q, values)?))
}

/// `^σA` for a binary quasigroup.
pub fn binary_parastrophe(key: &QuasigroupKey, sigma: Sigma) -> Result<QuasigroupKey> {
    if key.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: key.arity(),
        });
    }
    parastrophe(key, &sigma.images())
}

/// The `i`-th inverse operation `^(i,n+1)A` (`i` is 1-based), solving for
/// argument `i` given the result:
/// `A(…, ^(i,n+1)A(x), …) = x_i` and `^(i,n+1)A(…, A(x), …) = x_i`.
pub fn inverse_op(key: &QuasigroupKey, i: usize) -> Result<QuasigroupKey> {
    let n = key.arity();
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!(
            "inverse position {i} outside 1..={n}"
        )));
    }
    let mut images: Vec<usize> = (0..=n).collect();
    images.swap(i - 1, n);
    parastrophe(key, &images)
}

/// Whether `^σA` coincides with `A` as a table.
pub fn check_parastrophe_equality(key: &QuasigroupKey, sigma: Sigma) -> Result<bool> {
    Ok(binary_parastrophe(key, sigma)?.table() == key.table())
}

/// The unary map `x ↦ A(prefix, x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Translation {
    pub prefix: Vec<Symbol>,
    pub map: Vec<Symbol>,
}

impl Translation {
    pub fn apply(&self, x: Symbol) -> Symbol {
        self.map[x]
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.map.len()];
        self.map
            .iter()
            .all(|&y| y < seen.len() && !std::mem::replace(&mut seen[y], true))
    }

    /// Inverse map; `None` unless the map is a bijection.
    pub fn inverse_map(&self) -> Option<Vec<Symbol>> {
        if !self.is_bijection() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(inv)
    }
}

/// Translation of `table` by an `(n-1)`-tuple prefix.
pub fn translation_of(table: &OperationTable, prefix: &[Symbol]) -> Result<Translation> {
    let n = table.arity();
    if prefix.len() + 1 != n {
        return Err(Error::ArityMismatch {
            expected: n - 1,
            found: prefix.len(),
        });
    }
    check_symbols(prefix, table.order())?;
    let q = table.order();
    let base = table.rank(prefix) * q;
    Ok(Translation {
        prefix: prefix.to_vec(),
        map: table.values()[base..base + q].to_vec(),
    })
}

/// Every prefix whose translation equals `map`, in lexicographic order.
pub fn prefixes_with_translation(table: &OperationTable, map: &[Symbol]) -> Vec<Vec<Symbol>> {
    let q = table.order();
    table
        .values()
        .chunks(q)
        .enumerate()
        .filter(|(_, row)| *row == map)
        .map(|(r, _)| tuple_of(q, table.arity() - 1, r))
        .collect()
}

/// Partition of all prefixes into classes with identical translations.
/// Classes are ordered by their smallest member.
pub fn leader_classes(table: &OperationTable) -> Vec<Vec<Vec<Symbol>>> {
    let q = table.order();
    let mut classes: Vec<(&[Symbol], Vec<Vec<Symbol>>)> = Vec::new();
    for (r, row) in table.values().chunks(q).enumerate() {
        let prefix = tuple_of(q, table.arity() - 1, r);
        match classes.iter_mut().find(|(m, _)| *m == row) {
            Some((_, members)) => members.push(prefix),
            None => classes.push((row, vec![prefix])),
        }
    }
    classes.into_iter().map(|(_, m)| m).collect()
}

/// A seeded random n-ary quasigroup: an isotope of `x1 + … + xn mod q`
/// under `n + 1` random permutations (one per argument, one on the result).
///
/// Not uniform over all quasigroups of the given size.
pub fn random_quasigroup(order: usize, arity: usize, seed: u64) -> Result<QuasigroupKey> {
    if order < 2 {
        return Err(Error::InvalidOrder(order));
    }
    if arity < 2 {
        return Err(Error::InvalidArity {
            min: 2,
            found: arity,
        });
    }
    let mut rng = SplitMix64::new(seed);
    let arg_perms: Vec<Vec<usize>> = (0..arity).map(|_| rng.permutation(order)).collect();
    let result_perm = rng.permutation(order);
    let table = OperationTable::from_fn(arity, order, |args| {
        let sum: usize = args.iter().zip(&arg_perms).map(|(&x, p)| p[x]).sum();
        result_perm[sum % order]
    })?;
    Ok(QuasigroupKey::trusted(table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn evaluate_reference_tables() {
        let dot = fixtures::abc_quasigroup();
        // row a, column b
        assert_eq!(dot.evaluate(&[0, 1]), Ok(2));
        let ternary = fixtures::ternary_quasigroup();
        assert_eq!(ternary.evaluate(&[0, 1, 2]), Ok(3));
        assert_eq!(ternary.evaluate(&[2, 3, 2]), Ok(3));
    }

    #[test]
    fn quasigroup_checks() {
        assert!(is_quasigroup(fixtures::abc_quasigroup().table()));
        assert!(is_quasigroup(fixtures::ternary_quasigroup().table()));

        let constant = OperationTable::new(2, 2, vec![0; 4]).unwrap();
        let w = latin_violation(&constant).unwrap();
        assert_eq!(w.solutions.len(), 2);
        assert_eq!(w.result, 0);

        let groupoid = &fixtures::order4_system_tables()[1];
        assert_eq!(groupoid.values()[..4], [3, 0, 1, 3]);
        assert!(!is_quasigroup(groupoid));
        assert!(QuasigroupKey::new(groupoid.clone()).is_err());
    }

    #[test]
    fn violation_only_in_later_position() {
        // Rows are permutations, columns are not: A(x, y) = y.
        let t = OperationTable::from_fn(2, 3, |a| a[1]).unwrap();
        let w = latin_violation(&t).unwrap();
        assert_eq!(w.position, 1);
        assert_eq!(w.fixed, vec![None, Some(0)]);
    }

    #[test]
    fn left_division_matches_reference_table() {
        let back = binary_parastrophe(&fixtures::abc_quasigroup(), Sigma::S23).unwrap();
        assert_eq!(back.table(), fixtures::abc_left_division().table());
    }

    #[test]
    fn involutive_parastrophes() {
        let key = random_quasigroup(5, 2, 3).unwrap();
        for s in [Sigma::S12, Sigma::S13, Sigma::S23] {
            let twice = binary_parastrophe(&binary_parastrophe(&key, s).unwrap(), s).unwrap();
            assert_eq!(twice, key);
        }
    }

    #[test]
    fn commutative_table_is_its_own_transpose() {
        let z3 = fixtures::cyclic_addition(3);
        assert_eq!(binary_parastrophe(&z3, Sigma::S12).unwrap(), z3);
    }

    #[test]
    fn inverse_op_examples() {
        let dot = fixtures::abc_quasigroup();
        assert_eq!(
            inverse_op(&dot, 2).unwrap(),
            binary_parastrophe(&dot, Sigma::S23).unwrap()
        );
        let ternary = fixtures::ternary_quasigroup();
        let inv = inverse_op(&ternary, 3).unwrap();
        assert_eq!(inv.apply(&[0, 1, 3]), 2);
        for i in 1..=3 {
            let back = inverse_op(&inverse_op(&ternary, i).unwrap(), i).unwrap();
            assert_eq!(back, ternary);
        }
        assert!(inverse_op(&ternary, 0).is_err());
        assert!(inverse_op(&ternary, 4).is_err());
    }

    #[test]
    fn parastrophe_equality() {
        // x - y over Z3
        let minus =
            QuasigroupKey::new(OperationTable::from_fn(2, 3, |a| (a[0] + 3 - a[1]) % 3).unwrap())
                .unwrap();
        assert!(check_parastrophe_equality(&minus, Sigma::S23).unwrap());
        let z3 = fixtures::cyclic_addition(3);
        assert!(!check_parastrophe_equality(&z3, Sigma::S23).unwrap());
        assert!(check_parastrophe_equality(&z3, Sigma::Identity).unwrap());
    }

    #[test]
    fn translations() {
        let ternary = fixtures::ternary_quasigroup();
        let t01 = translation_of(&ternary, &[0, 1]).unwrap();
        assert_eq!(t01.map, vec![1, 2, 3, 0]);
        let t23 = translation_of(&ternary, &[2, 3]).unwrap();
        assert_eq!(t23.map, t01.map);
        let dot = fixtures::abc_quasigroup();
        assert_eq!(translation_of(&dot, &[0]).unwrap().map, vec![1, 2, 0]);
        assert!(translation_of(&dot, &[0, 0]).is_err());
        assert!(translation_of(&dot, &[3]).is_err());
    }

    #[test]
    fn leader_classes_of_ternary_example() {
        let ternary = fixtures::ternary_quasigroup();
        let class = prefixes_with_translation(&ternary, &[1, 2, 3, 0]);
        assert!(class.contains(&vec![0, 1]));
        assert!(class.contains(&vec![2, 3]));
        let classes = leader_classes(&ternary);
        let total: usize = classes.iter().map(Vec::len).sum();
        assert_eq!(total, 16);
    }

    #[test]
    fn random_quasigroups_are_valid_and_deterministic() {
        for (q, n) in [(3, 2), (4, 3), (5, 2), (2, 4)] {
            let a = random_quasigroup(q, n, 11).unwrap();
            assert!(is_quasigroup(a.table()));
            assert_eq!(a, random_quasigroup(q, n, 11).unwrap());
        }
        assert!(random_quasigroup(1, 2, 0).is_err());
        assert!(random_quasigroup(3, 1, 0).is_err());
    }

    #[test]
    fn sigma_group_law() {
        for s in Sigma::ALL {
            assert_eq!(s.compose(s.inverse()), Sigma::Identity);
            assert_eq!(s.to_string().parse::<Sigma>().unwrap(), s);
        }
        let c = Sigma::S123;
        assert_eq!(c.compose(c).compose(c), Sigma::Identity);
    }
}
