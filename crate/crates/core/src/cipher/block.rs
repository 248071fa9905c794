//! Block ciphers from orthogonal systems.
//!
//! A block of `n` symbols `u` maps to `(f_1(u), …, f_n(u))`. Orthogonality
//! makes this a permutation of `Q^n`; decryption applies the inverse system.

use crate::error::{Error, Result};
use crate::orthogonality::{inverse_system, OrthogonalSystem};
use crate::table::check_symbols;
use crate::Symbol;

/// Orthogonal-system block cipher applied a fixed number of rounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCipher {
    system: OrthogonalSystem,
    inverse: OrthogonalSystem,
    rounds: usize,
}

impl BlockCipher {
    pub fn new(system: OrthogonalSystem, rounds: usize) -> Result<Self> {
        if rounds == 0 {
            return Err(Error::InvalidArgument("rounds must be at least 1".into()));
        }
        let inverse = inverse_system(&system);
        Ok(Self {
            system,
            inverse,
            rounds,
        })
    }

    pub fn system(&self) -> &OrthogonalSystem {
        &self.system
    }

    pub fn inverse(&self) -> &OrthogonalSystem {
        &self.inverse
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn arity(&self) -> usize {
        self.system.arity()
    }

    pub fn order(&self) -> usize {
        self.system.order()
    }

    pub fn encrypt_block(&self, block: &[Symbol]) -> Result<Vec<Symbol>> {
        self.system.tables()[0].check_args(block)?;
        Ok(iterate(&self.system, block, self.rounds))
    }

    pub fn decrypt_block(&self, block: &[Symbol]) -> Result<Vec<Symbol>> {
        self.system.tables()[0].check_args(block)?;
        Ok(iterate(&self.inverse, block, self.rounds))
    }

    /// Encrypts a message of any length. A short final block of `r < n`
    /// symbols is padded by repeating its own symbols cyclically, so the
    /// output length is `n·⌈len/n⌉`; the true length must travel separately.
    pub fn encrypt_padded(&self, plain: &[Symbol]) -> Result<Vec<Symbol>> {
        check_symbols(plain, self.order())?;
        let n = self.arity();
        let mut out = Vec::with_capacity(padded_len(plain.len(), n));
        for chunk in plain.chunks(n) {
            let block: Vec<Symbol> = (0..n).map(|i| chunk[i % chunk.len()]).collect();
            out.extend(iterate(&self.system, &block, self.rounds));
        }
        Ok(out)
    }

    /// Inverse of [`encrypt_padded`](Self::encrypt_padded) given the plaintext length.
    pub fn decrypt_padded(&self, cipher: &[Symbol], plain_len: usize) -> Result<Vec<Symbol>> {
        check_symbols(cipher, self.order())?;
        let n = self.arity();
        if cipher.len() != padded_len(plain_len, n) {
            return Err(Error::MalformedCiphertext(format!(
                "{} symbols cannot hold {plain_len} plaintext symbols in blocks of {n}",
                cipher.len()
            )));
        }
        let mut out: Vec<Symbol> = cipher
            .chunks(n)
            .flat_map(|b| iterate(&self.inverse, b, self.rounds))
            .collect();
        out.truncate(plain_len);
        Ok(out)
    }
}

pub fn padded_len(len: usize, arity: usize) -> usize {
    len.div_ceil(arity) * arity
}

fn iterate(system: &OrthogonalSystem, block: &[Symbol], rounds: usize) -> Vec<Symbol> {
    let q = system.order();
    let mut rank = system.tables()[0].rank(block);
    for _ in 0..rounds {
        rank = system.joint_rank(rank);
    }
    crate::table::tuple_of(q, system.arity(), rank)
}

/// One round of `v_i = f_i(block)`.
pub fn encrypt_block(system: &OrthogonalSystem, block: &[Symbol]) -> Result<Vec<Symbol>> {
    encrypt_block_rounds(system, block, 1)
}

/// Inverts [`encrypt_block`].
pub fn decrypt_block(system: &OrthogonalSystem, block: &[Symbol]) -> Result<Vec<Symbol>> {
    system.tables()[0].check_args(block)?;
    Ok(iterate(&inverse_system(system), block, 1))
}

pub fn encrypt_block_rounds(
    system: &OrthogonalSystem,
    block: &[Symbol],
    rounds: usize,
) -> Result<Vec<Symbol>> {
    if rounds == 0 {
        return Err(Error::InvalidArgument("rounds must be at least 1".into()));
    }
    system.tables()[0].check_args(block)?;
    Ok(iterate(system, block, rounds))
}

/// Orthogonal system with the first `n-1` variables fixed to leaders: each
/// plaintext symbol `u` becomes the `n` symbols `(f_1(l, u), …, f_n(l, u))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeaderFan {
    system: OrthogonalSystem,
    inverse: OrthogonalSystem,
    leaders: Vec<Symbol>,
}

impl LeaderFan {
    pub fn new(system: OrthogonalSystem, leaders: Vec<Symbol>) -> Result<Self> {
        let n = system.arity();
        if n < 2 {
            return Err(Error::InvalidArity { min: 2, found: n });
        }
        if leaders.len() != n - 1 {
            return Err(Error::LeaderCount {
                expected: n - 1,
                found: leaders.len(),
            });
        }
        check_symbols(&leaders, system.order())?;
        let inverse = inverse_system(&system);
        Ok(Self {
            system,
            inverse,
            leaders,
        })
    }

    pub fn leaders(&self) -> &[Symbol] {
        &self.leaders
    }

    pub fn arity(&self) -> usize {
        self.system.arity()
    }

    pub fn order(&self) -> usize {
        self.system.order()
    }

    pub fn encrypt_symbol(&self, u: Symbol) -> Result<Vec<Symbol>> {
        check_symbols(&[u], self.order())?;
        let mut args = self.leaders.clone();
        args.push(u);
        Ok(self.system.joint(&args))
    }

    /// Solves the system for the unique preimage of `block` and checks that
    /// its first `n-1` coordinates are the leaders.
    pub fn decrypt_chunk(&self, block: &[Symbol]) -> Result<Symbol> {
        self.decrypt_at(block, 0)
    }

    fn decrypt_at(&self, block: &[Symbol], index: usize) -> Result<Symbol> {
        let pre = self.inverse.evaluate(block)?;
        let (fixed, last) = pre.split_at(self.leaders.len());
        if fixed != self.leaders.as_slice() {
            return Err(Error::Tampered {
                block: index,
                recovered: fixed.to_vec(),
                expected: self.leaders.clone(),
            });
        }
        Ok(last[0])
    }

    pub fn encrypt(&self, plain: &[Symbol]) -> Result<Vec<Symbol>> {
        let mut out = Vec::with_capacity(plain.len() * self.arity());
        for &u in plain {
            out.extend(self.encrypt_symbol(u)?);
        }
        Ok(out)
    }

    pub fn decrypt(&self, cipher: &[Symbol]) -> Result<Vec<Symbol>> {
        let n = self.arity();
        if !cipher.len().is_multiple_of(n) {
            return Err(Error::MalformedCiphertext(format!(
                "length {} is not a multiple of {n}",
                cipher.len()
            )));
        }
        cipher
            .chunks(n)
            .enumerate()
            .map(|(i, b)| self.decrypt_at(b, i))
            .collect()
    }
}

/// `(f_1(fixed, u), …, f_n(fixed, u))` for `n-1` fixed leaders.
pub fn encrypt_with_leaders(
    system: &OrthogonalSystem,
    fixed: &[Symbol],
    u: Symbol,
) -> Result<Vec<Symbol>> {
    LeaderFan::new(system.clone(), fixed.to_vec())?.encrypt_symbol(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::orthogonality::{
        permutation_from_system, system_from_permutation, TuplePermutation,
    };
    use crate::table::Tuples;

    #[test]
    fn projections_are_the_identity_cipher() {
        let p = fixtures::projections(3, 3);
        for b in Tuples::new(3, 3) {
            assert_eq!(encrypt_block(&p, &b).unwrap(), b);
        }
    }

    #[test]
    fn order4_first_block() {
        let sys = fixtures::order4_system();
        let expected: Vec<Symbol> = sys.tables().iter().map(|t| t.values()[0]).collect();
        assert_eq!(expected, vec![0, 3, 3]);
        assert_eq!(encrypt_block(&sys, &[0, 0, 0]).unwrap(), expected);
        assert_eq!(decrypt_block(&sys, &expected).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn order4_blocks_form_a_permutation() {
        let cipher = BlockCipher::new(fixtures::order4_system(), 1).unwrap();
        let mut images = std::collections::HashSet::new();
        for b in Tuples::new(4, 3) {
            let c = cipher.encrypt_block(&b).unwrap();
            assert_eq!(cipher.decrypt_block(&c).unwrap(), b);
            images.insert(c);
        }
        assert_eq!(images.len(), 64);
    }

    #[test]
    fn rounds() {
        let sys = fixtures::order4_system();
        let b = [1, 2, 3];
        assert_eq!(
            encrypt_block_rounds(&sys, &b, 1).unwrap(),
            encrypt_block(&sys, &b).unwrap()
        );
        let order = permutation_from_system(&sys).cycle_order() as usize;
        for x in Tuples::new(4, 3) {
            assert_eq!(encrypt_block_rounds(&sys, &x, order).unwrap(), x);
        }
        let cipher = BlockCipher::new(sys, 7).unwrap();
        let c = cipher.encrypt_block(&b).unwrap();
        assert_eq!(cipher.decrypt_block(&c).unwrap(), b);
        assert!(BlockCipher::new(fixtures::projections(2, 2), 0).is_err());
    }

    #[test]
    fn padding() {
        let sys = system_from_permutation(&TuplePermutation::random(3, 5, 1).unwrap());
        let cipher = BlockCipher::new(sys, 2).unwrap();
        for len in 0..10 {
            let plain: Vec<Symbol> = (0..len).map(|i| (i * 3 + 1) % 5).collect();
            let c = cipher.encrypt_padded(&plain).unwrap();
            assert_eq!(c.len(), padded_len(len, 3));
            assert_eq!(cipher.decrypt_padded(&c, len).unwrap(), plain);
        }
        // A final block [a, b] is encrypted as [a, b, a].
        let c = cipher.encrypt_padded(&[4, 2]).unwrap();
        assert_eq!(c, cipher.encrypt_block(&[4, 2, 4]).unwrap());
        assert!(cipher.decrypt_padded(&c, 4).is_err());
    }

    #[test]
    fn leader_fan() {
        let p = fixtures::projections(4, 3);
        assert_eq!(encrypt_with_leaders(&p, &[2, 1], 3).unwrap(), vec![2, 1, 3]);

        let sys = fixtures::order4_system();
        let expected: Vec<Symbol> = sys.tables().iter().map(|t| t.apply(&[0, 1, 2])).collect();
        assert_eq!(expected, vec![3, 3, 1]);
        assert_eq!(encrypt_with_leaders(&sys, &[0, 1], 2).unwrap(), expected);

        let fan = LeaderFan::new(sys.clone(), vec![3, 0]).unwrap();
        for u in 0..4 {
            let c = fan.encrypt_symbol(u).unwrap();
            assert_eq!(fan.decrypt_chunk(&c).unwrap(), u);
        }
        let wrong = LeaderFan::new(sys, vec![0, 0]).unwrap();
        let c = fan.encrypt(&[1, 2]).unwrap();
        assert!(matches!(
            wrong.decrypt(&c),
            Err(Error::Tampered { block: 0, .. })
        ));
        assert!(fan.decrypt(&c[..4]).is_err());
        assert!(LeaderFan::new(fixtures::order4_system(), vec![0]).is_err());
    }
}
