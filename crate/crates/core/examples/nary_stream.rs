//! Ternary chained encryption and equivalent leaders.
//!
//! Each of the first `n-1` ciphertext symbols is `A(prefix_j, u_j)` for a
//! leader prefix; afterwards the previous `n-1` ciphertext symbols take the
//! place of the prefix. Prefixes with the same translation are
//! interchangeable, so `(0,1)` and `(2,3)` give identical ciphertexts.

use quasigroup_cipher::cipher::{LeaderBlock, NaryStream};
use quasigroup_cipher::fixtures;
use quasigroup_cipher::quasigroup::{leader_classes, translation_of};
use quasigroup_cipher::rng::SplitMix64;

fn main() -> quasigroup_cipher::Result<()> {
    let key = fixtures::ternary_quasigroup();
    println!(
        "A(0,1,2) = {}, A(2,3,2) = {}",
        key.apply(&[0, 1, 2]),
        key.apply(&[2, 3, 2])
    );

    let stream = NaryStream::new(key.clone(), LeaderBlock::new(3, vec![0, 1, 2, 3])?)?;
    let plain = SplitMix64::new(42).symbols(4, 24);
    let cipher = stream.encrypt(&plain)?;
    println!("plaintext : {plain:?}");
    println!("ciphertext: {cipher:?}");
    assert_eq!(stream.decrypt(&cipher)?, plain);

    for prefix in [[0, 1], [2, 3]] {
        println!(
            "T{prefix:?} = {:?}",
            translation_of(key.table(), &prefix)?.map
        );
    }
    let swapped = NaryStream::new(key.clone(), LeaderBlock::new(3, vec![2, 3, 0, 1])?)?;
    assert_eq!(swapped.encrypt(&plain)?, cipher);
    println!("leaders (2,3),(0,1) give the same ciphertext as (0,1),(2,3)");

    println!("leader classes:");
    for class in leader_classes(key.table()) {
        println!("  {class:?}");
    }
    Ok(())
}
