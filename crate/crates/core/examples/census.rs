//! Orthogonal systems correspond to permutations of `Q^n`; count them.

use quasigroup_cipher::orthogonality::{
    count_orthogonal_systems, permutation_from_system, system_from_permutation,
};
use quasigroup_cipher::TuplePermutation;

fn main() -> quasigroup_cipher::Result<()> {
    for (q, n) in [(2, 2), (2, 3), (3, 3)] {
        let census = count_orthogonal_systems(q, n)?;
        println!(
            "q={q} n={n}: {} systems, {} permutations checked{}",
            census.systems,
            census.checked,
            if census.exhaustive {
                " (exhaustive)"
            } else {
                " (sampled)"
            }
        );
    }

    let perm = TuplePermutation::random(2, 3, 9)?;
    let system = system_from_permutation(&perm);
    assert_eq!(permutation_from_system(&system), perm);
    println!("random permutation of Z3^2 as a system:\n{system}");
    Ok(())
}
