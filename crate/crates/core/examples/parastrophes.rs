//! Parastrophes and inverse operations of binary and ternary quasigroups.

use quasigroup_cipher::cli::pretty_table;
use quasigroup_cipher::fixtures;
use quasigroup_cipher::quasigroup::{binary_parastrophe, inverse_op, parastrophe};
use quasigroup_cipher::Sigma;

fn main() -> quasigroup_cipher::Result<()> {
    let abc = fixtures::abc();
    let key = fixtures::abc_quasigroup();
    for sigma in Sigma::ALL {
        println!("^{sigma}A:");
        print!(
            "{}",
            pretty_table(binary_parastrophe(&key, sigma)?.table(), Some(&abc))
        );
    }

    // Parastrophes compose like the permutations that label them.
    for s in Sigma::ALL {
        for t in Sigma::ALL {
            let twice = binary_parastrophe(&binary_parastrophe(&key, s)?, t)?;
            assert_eq!(twice, binary_parastrophe(&key, s.compose(t))?);
        }
    }

    let ternary = fixtures::ternary_quasigroup();
    let inv = inverse_op(&ternary, 3)?;
    for args in [[0, 1, 2], [2, 3, 2], [3, 0, 1]] {
        let v = ternary.apply(&args);
        println!(
            "A{args:?} = {v}, ^(3,4)A({}, {}, {v}) = {}",
            args[0],
            args[1],
            inv.apply(&[args[0], args[1], v])
        );
    }
    // Swapping slots 1 and 4 gives the first inverse.
    assert_eq!(
        parastrophe(&ternary, &[3, 1, 2, 0])?,
        inverse_op(&ternary, 1)?
    );
    Ok(())
}
