//! Linear quasigroups `x ∘ y = k·x + m·y + a` over `Z_p` and the criteria
//! deciding when such a quasigroup is orthogonal to its parastrophes.
//!
//! Two routes are provided for every parastrophe `σ`:
//!
//! * [`t1_criterion`] reads the answer off the coefficients: `A ⊥ ^σA` iff a
//!   certain linear map of `Z_p` is a permutation, i.e. a non-zero scalar.
//! * [`th2_cancellation_check`] tests a cancellation law on the table.
//!
//! Both are checked against [`brute_force_ortho`], which builds `^σA` and
//! tests the pair map for injectivity.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quasigroup::{binary_parastrophe, QuasigroupKey, Sigma};
use crate::table::OperationTable;

/// `(p, k, m, a)` with `p` prime and `k, m` non-zero mod `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinearQuasigroupSpec {
    p: u64,
    k: u64,
    m: u64,
    a: u64,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

impl LinearQuasigroupSpec {
    /// Coefficients are reduced mod `p`.
    pub fn new(p: u64, k: u64, m: u64, a: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidSpec(format!("modulus {p} is not prime")));
        }
        let (k, m, a) = (k % p, m % p, a % p);
        if k == 0 || m == 0 {
            return Err(Error::InvalidSpec(format!(
                "coefficients must be non-zero mod {p} (k = {k}, m = {m})"
            )));
        }
        Ok(Self { p, k, m, a })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn apply(&self, x: u64, y: u64) -> u64 {
        (self.k * x + self.m * y + self.a) % self.p
    }

    /// The eight scalars that must be non-zero for the quasigroup to be
    /// orthogonal to all five parastrophes: `k, m, k+m, k-m, k+1, m+1, k²+m, k+m²`.
    pub fn conditions(&self) -> [(&'static str, u64); 8] {
        let (p, k, m) = (self.p, self.k, self.m);
        [
            ("k", k),
            ("m", m),
            ("k+m", (k + m) % p),
            ("k-m", (k + p - m) % p),
            ("k+1", (k + 1) % p),
            ("m+1", (m + 1) % p),
            ("k^2+m", (k * k + m) % p),
            ("k+m^2", (k + m * m) % p),
        ]
    }
}

/// Parses `p:k:m:a`.
impl FromStr for LinearQuasigroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        if parts.len() != 4 {
            return Err(Error::InvalidSpec(format!("expected p:k:m:a, got {s:?}")));
        }
        let mut nums = [0u64; 4];
        for (slot, part) in nums.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("bad number {part:?} in {s:?}")))?;
        }
        Self::new(nums[0], nums[1], nums[2], nums[3])
    }
}

impl fmt::Display for LinearQuasigroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.p, self.k, self.m, self.a)
    }
}

/// The table `k·x + m·y + a mod p`.
pub fn materialize(spec: &LinearQuasigroupSpec) -> Result<QuasigroupKey> {
    let p = usize::try_from(spec.p).map_err(|_| Error::InvalidSpec("modulus too large".into()))?;
    let table =
        OperationTable::from_fn(2, p, |xy| spec.apply(xy[0] as u64, xy[1] as u64) as usize)?;
    Ok(QuasigroupKey::trusted(table))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Criterion,
    BruteForce,
    Cancellation,
}

/// Orthogonality of a binary quasigroup to each of its five parastrophes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParastropheOrthoReport {
    pub verdicts: [(Sigma, bool); 5],
    pub method: Method,
}

impl ParastropheOrthoReport {
    pub fn get(&self, sigma: Sigma) -> Option<bool> {
        self.verdicts
            .iter()
            .find(|(s, _)| *s == sigma)
            .map(|&(_, v)| v)
    }

    pub fn all(&self) -> bool {
        self.verdicts.iter().all(|&(_, v)| v)
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.verdicts == other.verdicts
    }
}

impl fmt::Display for ParastropheOrthoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .verdicts
            .iter()
            .map(|(s, v)| format!("A⊥^{s}A: {}", if *v { "yes" } else { "no" }))
            .collect();
        write!(f, "{} [{:?}]", items.join(", "), self.method)
    }
}

/// Verdicts from the coefficients alone:
///
/// | σ     | orthogonal iff                  |
/// |-------|---------------------------------|
/// | (12)  | `k - m ≠ 0` and `k + m ≠ 0`     |
/// | (13)  | `1 + k ≠ 0`                     |
/// | (23)  | `1 + m ≠ 0`                     |
/// | (123) | `k + m² ≠ 0`                    |
/// | (132) | `k² + m ≠ 0`                    |
pub fn t1_criterion(spec: &LinearQuasigroupSpec) -> ParastropheOrthoReport {
    let (p, k, m) = (spec.p, spec.k, spec.m);
    let nz = |x: u64| !x.is_multiple_of(p);
    ParastropheOrthoReport {
        verdicts: [
            (Sigma::S12, nz(k + p - m) && nz(k + m)),
            (Sigma::S13, nz(1 + k)),
            (Sigma::S23, nz(1 + m)),
            (Sigma::S123, nz(k + m * m)),
            (Sigma::S132, nz(k * k + m)),
        ],
        method: Method::Criterion,
    }
}

/// Builds `^σA` and checks that `(x, y) ↦ (A(x, y), ^σA(x, y))` is injective.
pub fn brute_force_ortho(key: &QuasigroupKey, sigma: Sigma) -> Result<bool> {
    let other = binary_parastrophe(key, sigma)?;
    let q = key.order();
    let mut seen = vec![false; q * q];
    Ok(key
        .values()
        .iter()
        .zip(other.values())
        .all(|(&a, &b)| !std::mem::replace(&mut seen[a * q + b], true)))
}

pub fn brute_force_report(key: &QuasigroupKey) -> Result<ParastropheOrthoReport> {
    report(key, Method::BruteForce, brute_force_ortho)
}

/// Tests the cancellation law matching `σ` over all `(x, y, z)`:
///
/// | σ     | law: for all z, `L(x, z) = L(y, z)` implies `x = y` |
/// |-------|------------------------------------------------------|
/// | (12)  | `L = (x \ z)·x`                                      |
/// | (13)  | `L = zx·x`                                           |
/// | (23)  | `L = x·xz`                                           |
/// | (123) | `L = x·zx`                                           |
/// | (132) | `L = xz·x`                                           |
///
/// The identity is never orthogonal to itself, so it returns `false`.
pub fn th2_cancellation_check(key: &QuasigroupKey, sigma: Sigma) -> Result<bool> {
    if key.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: key.arity(),
        });
    }
    let q = key.order();
    let mul = |x: usize, y: usize| key.at(x * q + y);
    let law: Box<dyn Fn(usize, usize) -> usize> = match sigma {
        Sigma::Identity => return Ok(false),
        Sigma::S12 => {
            let ld = binary_parastrophe(key, Sigma::S23)?;
            Box::new(move |x, z| mul(ld.at(x * q + z), x))
        }
        Sigma::S13 => Box::new(move |x, z| mul(mul(z, x), x)),
        Sigma::S23 => Box::new(move |x, z| mul(x, mul(x, z))),
        Sigma::S123 => Box::new(move |x, z| mul(x, mul(z, x))),
        Sigma::S132 => Box::new(move |x, z| mul(mul(x, z), x)),
    };
    // The law holds iff x ↦ L(x, z) is injective for every z.
    let mut seen = vec![false; q];
    for z in 0..q {
        seen.iter_mut().for_each(|s| *s = false);
        for x in 0..q {
            if std::mem::replace(&mut seen[law(x, z)], true) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn th2_report(key: &QuasigroupKey) -> Result<ParastropheOrthoReport> {
    report(key, Method::Cancellation, th2_cancellation_check)
}

fn report(
    key: &QuasigroupKey,
    method: Method,
    check: fn(&QuasigroupKey, Sigma) -> Result<bool>,
) -> Result<ParastropheOrthoReport> {
    let mut verdicts = [(Sigma::Identity, false); 5];
    for (slot, sigma) in verdicts.iter_mut().zip(Sigma::PARASTROPHES) {
        *slot = (sigma, check(key, sigma)?);
    }
    Ok(ParastropheOrthoReport { verdicts, method })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quasigroup::is_quasigroup;

    fn spec(p: u64, k: u64, m: u64, a: u64) -> LinearQuasigroupSpec {
        LinearQuasigroupSpec::new(p, k, m, a).unwrap()
    }

    #[test]
    fn materialize_examples() {
        assert_eq!(
            materialize(&spec(3, 1, 1, 0)).unwrap(),
            fixtures::cyclic_addition(3)
        );
        let minus = materialize(&spec(3, 1, 2, 0)).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(minus.apply(&[x, y]), (x + 3 - y) % 3);
            }
        }
        assert!(is_quasigroup(
            materialize(&spec(5, 2, 3, 1)).unwrap().table()
        ));
    }

    #[test]
    fn invalid_specs() {
        assert!(LinearQuasigroupSpec::new(4, 1, 1, 0).is_err());
        assert!(LinearQuasigroupSpec::new(5, 5, 1, 0).is_err());
        assert!(LinearQuasigroupSpec::new(5, 1, 0, 0).is_err());
        assert!("5:1:1".parse::<LinearQuasigroupSpec>().is_err());
        assert!("5:x:1:0".parse::<LinearQuasigroupSpec>().is_err());
        assert_eq!(
            "257:2:3:5".parse::<LinearQuasigroupSpec>().unwrap(),
            spec(257, 2, 3, 5)
        );
    }

    #[test]
    fn criterion_mod_7() {
        let s = spec(7, 2, 3, 0);
        let r = t1_criterion(&s);
        assert_eq!(r.get(Sigma::S123), Some(true));
        assert_eq!(r.get(Sigma::S132), Some(false));
        let key = materialize(&s).unwrap();
        assert!(!brute_force_ortho(&key, Sigma::S132).unwrap());
        assert!(brute_force_ortho(&key, Sigma::S123).unwrap());
    }

    #[test]
    fn criterion_mod_257() {
        let s = spec(257, 2, 3, 5);
        assert!(s.conditions().iter().all(|&(_, v)| v != 0));
        assert_eq!(s.conditions().map(|(_, v)| v), [2, 3, 5, 256, 3, 4, 7, 11]);
        assert!(t1_criterion(&s).all());
    }

    #[test]
    fn commutative_is_not_orthogonal_to_transpose() {
        assert_eq!(t1_criterion(&spec(3, 1, 1, 0)).get(Sigma::S12), Some(false));
        assert!(!brute_force_ortho(&fixtures::cyclic_addition(3), Sigma::S12).unwrap());
    }

    #[test]
    fn brute_force_mod_5() {
        let key = materialize(&spec(5, 2, 3, 0)).unwrap();
        assert!(brute_force_ortho(&key, Sigma::S13).unwrap());
    }

    #[test]
    fn cancellation_examples() {
        let dot = fixtures::abc_quasigroup();
        assert_eq!(
            th2_cancellation_check(&dot, Sigma::S23).unwrap(),
            brute_force_ortho(&dot, Sigma::S23).unwrap()
        );
        let z4 = fixtures::cyclic_addition(4);
        assert!(!th2_cancellation_check(&z4, Sigma::S13).unwrap());
        assert!(!brute_force_ortho(&z4, Sigma::S13).unwrap());
        let z3 = fixtures::cyclic_addition(3);
        assert!(th2_cancellation_check(&z3, Sigma::S13).unwrap());
        assert!(brute_force_ortho(&z3, Sigma::S13).unwrap());
    }

    #[test]
    fn reports_ignore_constant_term() {
        for k in 1..5 {
            for m in 1..5 {
                let base = brute_force_report(&materialize(&spec(5, k, m, 0)).unwrap()).unwrap();
                for a in 1..5 {
                    let other =
                        brute_force_report(&materialize(&spec(5, k, m, a)).unwrap()).unwrap();
                    assert!(base.agrees_with(&other));
                }
                assert_eq!(
                    t1_criterion(&spec(5, k, m, 0)),
                    t1_criterion(&spec(5, k, m, 3))
                );
            }
        }
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(257));
    }
}
