//! Recovers a binary stream key through an encryption oracle. Each query
//! steers the chain through known entries to an unknown one, so the attack
//! costs exactly `q^n` queries.

use quasigroup_cipher::attack::{cpa_query_budget, cpa_recover, CipherOracle, Oracle};
use quasigroup_cipher::cipher::{LeaderBlock, NaryStream};
use quasigroup_cipher::cli::pretty_table;
use quasigroup_cipher::quasigroup::random_quasigroup;

fn main() -> quasigroup_cipher::Result<()> {
    let (q, n) = (5, 2);
    let key = random_quasigroup(q, n, 11)?;
    let device = NaryStream::new(key.clone(), LeaderBlock::single(3))?;
    let mut oracle = CipherOracle::encrypting(device);

    let recovered = cpa_recover(&mut oracle, q, n)?;
    println!(
        "queries: {} (budget {})",
        oracle.query_count(),
        cpa_query_budget(q, n)
    );
    print!("{}", pretty_table(recovered.table.table(), None));
    assert_eq!(recovered.table, key);

    println!("first queries:");
    for line in oracle.transcript().to_string().lines().take(6) {
        println!("  {line}");
    }
    Ok(())
}
