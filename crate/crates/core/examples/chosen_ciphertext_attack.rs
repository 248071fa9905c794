//! Recovers a ternary stream key through a decryption oracle with one
//! de Bruijn query, then the leader translations, then reads an intercepted
//! message.

use quasigroup_cipher::attack::{
    break_end_to_end, cca_budget, cca_recover, recover_leader_translations, CipherOracle,
};
use quasigroup_cipher::cipher::{LeaderBlock, NaryStream};
use quasigroup_cipher::quasigroup::random_quasigroup;
use quasigroup_cipher::rng::SplitMix64;

fn main() -> quasigroup_cipher::Result<()> {
    let (q, n) = (5, 3);
    let mut rng = SplitMix64::new(2024);
    let key = random_quasigroup(q, n, rng.next_u64())?;
    let leaders = LeaderBlock::new(n, rng.symbols(q, (n - 1) * (n - 1)))?;
    let device = NaryStream::new(key.clone(), leaders)?;

    let plain = rng.symbols(q, 40);
    let intercepted = device.encrypt(&plain)?;

    let mut oracle = CipherOracle::decrypting(device);
    let recovered = cca_recover(&mut oracle, q, n)?;
    println!(
        "table: {} query, {} symbols (budget {:?})",
        recovered.query_count,
        recovered.symbols_submitted,
        cca_budget(q, n)
    );
    assert_eq!(recovered.table, key);

    let translations = recover_leader_translations(&mut oracle, &recovered)?;
    for t in &translations {
        println!(
            "slot {}: T = {:?}, equivalent prefixes {:?}",
            t.slot, t.map, t.equivalent_prefixes
        );
    }
    let broken = break_end_to_end(&recovered, &translations, &intercepted)?;
    println!("intercepted: {intercepted:?}");
    println!("recovered  : {broken:?}");
    assert_eq!(broken, plain);
    println!(
        "total oracle queries: {}",
        oracle.transcript().entries.len()
    );
    Ok(())
}
