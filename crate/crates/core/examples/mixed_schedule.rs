//! Alternating stream and block segments over bytes turned into base-q digits.

use quasigroup_cipher::cipher::{
    devectorize, digits_per_byte, vectorize, BlockCipher, LeaderBlock, MixSchedule, MixedCipher,
    NaryStream,
};
use quasigroup_cipher::fixtures;

fn main() -> quasigroup_cipher::Result<()> {
    let system = fixtures::order4_system();
    let stream = NaryStream::new(
        fixtures::ternary_quasigroup(),
        LeaderBlock::new(3, vec![1, 0, 3, 2])?,
    )?;
    let block = BlockCipher::new(system, 2)?;
    let mixed = MixedCipher::new(stream, block, "4 5".parse::<MixSchedule>()?)?;

    let message = b"orthogonal systems";
    let plain = vectorize(message, 4);
    println!(
        "{} bytes -> {} digits ({} per byte)",
        message.len(),
        plain.len(),
        digits_per_byte(4)
    );

    let (cipher, trace) = mixed.encrypt(&plain)?;
    for seg in trace.iter().take(6) {
        println!(
            "{:?}: {} -> {} symbols",
            seg.engine, seg.plain_len, seg.cipher_len
        );
    }
    println!(
        "... {} segments, {} ciphertext symbols",
        trace.len(),
        cipher.len()
    );

    let back = devectorize(&mixed.decrypt(&cipher, plain.len())?, 4)?;
    assert_eq!(back, message);
    println!("decrypted: {}", String::from_utf8_lossy(&back));
    Ok(())
}
