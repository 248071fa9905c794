//! Orthogonality of linear quasigroups `k·x + m·y + a mod p` to their
//! parastrophes: coefficient criterion against brute force.

use quasigroup_cipher::quasigroup::random_quasigroup;
use quasigroup_cipher::tquasigroup::{
    brute_force_report, materialize, t1_criterion, th2_report, LinearQuasigroupSpec,
};

fn main() -> quasigroup_cipher::Result<()> {
    for text in ["7:2:3:0", "7:3:5:1", "257:2:3:5"] {
        let spec: LinearQuasigroupSpec = text.parse()?;
        let key = materialize(&spec)?;
        let criterion = t1_criterion(&spec);
        let brute = brute_force_report(&key)?;
        println!("{spec}");
        println!("  criterion  : {criterion}");
        println!("  brute force: {brute}");
        assert!(criterion.agrees_with(&brute));
    }

    let mut checked = 0;
    for seed in 0..50 {
        let key = random_quasigroup(2 + (seed as usize % 5), 2, seed)?;
        assert!(th2_report(&key)?.agrees_with(&brute_force_report(&key)?));
        checked += 1;
    }
    println!("cancellation laws agree with brute force on {checked} random quasigroups");
    Ok(())
}
