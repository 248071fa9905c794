//! Binary chained encryption over the alphabet `a b c` with leader `a`.
//!
//! Run with `cargo run --example binary_trace`.

use quasigroup_cipher::cipher::{decrypt_binary, encrypt_binary};
use quasigroup_cipher::cli::pretty_table;
use quasigroup_cipher::fixtures;
use quasigroup_cipher::quasigroup::binary_parastrophe;
use quasigroup_cipher::Sigma;

fn main() -> quasigroup_cipher::Result<()> {
    let abc = fixtures::abc();
    let key = fixtures::abc_quasigroup();
    let leader = abc.encode("a").expect("a is in the alphabet");

    println!("key (x·y):");
    print!("{}", pretty_table(key.table(), Some(&abc)));
    println!("left division x\\y, the (23)-parastrophe:");
    print!(
        "{}",
        pretty_table(binary_parastrophe(&key, Sigma::S23)?.table(), Some(&abc))
    );

    let plain = abc.encode_text("bbcaacba")?;
    let cipher = encrypt_binary(&key, leader, &plain)?;
    let back = decrypt_binary(&key, leader, &cipher)?;

    println!("plaintext : {}", abc.decode_text(&plain));
    println!("ciphertext: {}", abc.decode_text(&cipher));
    println!("decrypted : {}", abc.decode_text(&back));
    assert_eq!(abc.decode_text(&cipher), "cbbcaaca");
    assert_eq!(back, plain);
    Ok(())
}
