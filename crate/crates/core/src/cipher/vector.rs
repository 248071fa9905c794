//! Byte ↔ symbol conversion: each byte becomes a fixed number of base-`q`
//! digits, most significant first.

use crate::error::{Error, Result};
use crate::Symbol;

/// Smallest `d` with `q^d ≥ 256`.
pub fn digits_per_byte(order: usize) -> usize {
    assert!(order >= 2, "alphabet order must be at least 2");
    let mut d = 0;
    let mut span = 1usize;
    while span < 256 {
        span = span.saturating_mul(order);
        d += 1;
    }
    d
}

pub fn vectorize(bytes: &[u8], order: usize) -> Vec<Symbol> {
    let d = digits_per_byte(order);
    let mut out = Vec::with_capacity(bytes.len() * d);
    for &b in bytes {
        let start = out.len();
        let mut v = b as usize;
        out.resize(start + d, 0);
        for slot in out[start..].iter_mut().rev() {
            *slot = v % order;
            v /= order;
        }
    }
    out
}

pub fn devectorize(symbols: &[Symbol], order: usize) -> Result<Vec<u8>> {
    if order < 2 {
        return Err(Error::InvalidOrder(order));
    }
    let d = digits_per_byte(order);
    if !symbols.len().is_multiple_of(d) {
        return Err(Error::MalformedDigits(format!(
            "{} digits do not split into groups of {d}",
            symbols.len()
        )));
    }
    symbols
        .chunks(d)
        .map(|group| {
            let mut v = 0usize;
            for &s in group {
                if s >= order {
                    return Err(Error::MalformedDigits(format!(
                        "digit {s} is not below {order}"
                    )));
                }
                v = v * order + s;
            }
            u8::try_from(v)
                .map_err(|_| Error::MalformedDigits(format!("group value {v} exceeds 255")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths() {
        assert_eq!(digits_per_byte(2), 8);
        assert_eq!(digits_per_byte(3), 6);
        assert_eq!(digits_per_byte(4), 4);
        assert_eq!(digits_per_byte(5), 4);
        assert_eq!(digits_per_byte(16), 2);
        assert_eq!(digits_per_byte(256), 1);
        assert_eq!(digits_per_byte(257), 1);
    }

    #[test]
    fn examples() {
        assert_eq!(vectorize(&[0], 3), vec![0; 6]);
        assert_eq!(vectorize(&[0xE2], 4), vec![3, 2, 0, 2]);
    }

    #[test]
    fn all_bytes_round_trip() {
        let bytes: Vec<u8> = (0..=255).collect();
        for q in [2, 3, 4, 5, 7, 257] {
            assert_eq!(devectorize(&vectorize(&bytes, q), q).unwrap(), bytes);
        }
    }

    #[test]
    fn malformed() {
        assert!(devectorize(&[1, 2, 3], 4).is_err());
        assert!(devectorize(&[4, 0, 0, 0], 4).is_err());
        // 3^6 - 1 = 728 > 255
        assert!(devectorize(&[2; 6], 3).is_err());
    }
}
