//! Block encryption with an orthogonal system of three ternary operations.

use quasigroup_cipher::cipher::{BlockCipher, LeaderFan};
use quasigroup_cipher::fixtures;
use quasigroup_cipher::orthogonality::{
    inverse_system, is_orthogonal_system, permutation_from_system,
};
use quasigroup_cipher::quasigroup::is_quasigroup;
use quasigroup_cipher::table::Tuples;

fn main() -> quasigroup_cipher::Result<()> {
    let system = fixtures::order4_system();
    println!("orthogonal: {}", is_orthogonal_system(system.tables())?);
    for (i, t) in system.tables().iter().enumerate() {
        println!("f{} quasigroup: {}", i + 1, is_quasigroup(t));
    }

    let inverse = inverse_system(&system);
    assert!(Tuples::new(4, 3).all(|b| inverse.joint(&system.joint(&b)) == b));
    println!("inverse system undoes the system on all 64 blocks");

    let one = BlockCipher::new(system.clone(), 1)?;
    println!("(0,0,0) -> {:?}", one.encrypt_block(&[0, 0, 0])?);
    let period = permutation_from_system(&system).cycle_order();
    println!("the block map has order {period}");

    let three = BlockCipher::new(system.clone(), 3)?;
    let plain = [3, 1, 0, 2, 2, 1, 3];
    let cipher = three.encrypt_padded(&plain)?;
    println!("3 rounds: {plain:?} -> {cipher:?}");
    assert_eq!(three.decrypt_padded(&cipher, plain.len())?, plain);

    let fan = LeaderFan::new(system, vec![0, 1])?;
    let cipher = fan.encrypt(&[2, 0, 3])?;
    println!("leaders (0,1): [2, 0, 3] -> {cipher:?}");
    assert_eq!(fan.decrypt(&cipher)?, vec![2, 0, 3]);
    Ok(())
}
