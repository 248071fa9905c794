//! Small hand-checked tables used by tests, examples, and the CLI.

use crate::orthogonality::OrthogonalSystem;
use crate::quasigroup::QuasigroupKey;
use crate::table::{Alphabet, OperationTable};

/// Alphabet `a b c` for [`abc_quasigroup`].
pub fn abc() -> Alphabet {
    Alphabet::with_names(["a", "b", "c"]).expect("valid alphabet")
}

/// Order-3 quasigroup over `a b c`:
///
/// ```text
///   · | a b c
///   --+------
///   a | b c a
///   b | c a b
///   c | a b c
/// ```
pub fn abc_quasigroup() -> QuasigroupKey {
    binary(3, &[1, 2, 0, 2, 0, 1, 0, 1, 2])
}

/// Left division `x \ y` of [`abc_quasigroup`]:
///
/// ```text
///   \ | a b c
///   --+------
///   a | c a b
///   b | b c a
///   c | a b c
/// ```
pub fn abc_left_division() -> QuasigroupKey {
    binary(3, &[2, 0, 1, 1, 2, 0, 0, 1, 2])
}

/// Ternary quasigroup of order 4 that is not an isotope of `x1 + x2 + x3`
/// over a group of order 4. Block `A_x1` holds `A(x1, x2, x3)` with `x2` as
/// row and `x3` as column.
pub fn ternary_quasigroup() -> QuasigroupKey {
    let values: Vec<usize> = [
        // A_0
        [0, 1, 2, 3, 1, 2, 3, 0, 2, 3, 0, 1, 3, 0, 1, 2],
        // A_1
        [1, 0, 3, 2, 0, 1, 2, 3, 3, 2, 1, 0, 2, 3, 0, 1],
        // A_2
        [2, 3, 0, 1, 3, 0, 1, 2, 0, 1, 2, 3, 1, 2, 3, 0],
        // A_3
        [3, 2, 1, 0, 2, 3, 0, 1, 1, 0, 3, 2, 0, 1, 2, 3],
    ]
    .concat();
    QuasigroupKey::new(OperationTable::new(3, 4, values).expect("valid table")).expect("quasigroup")
}

/// The three ternary operations on `{0,1,2,3}` forming an orthogonal system:
/// [`ternary_quasigroup`] followed by two groupoids that are not quasigroups.
pub fn order4_system_tables() -> [OperationTable; 3] {
    let second = [
        [3, 0, 1, 3, 0, 2, 3, 0, 1, 2, 1, 3, 1, 1, 2, 2],
        [2, 1, 1, 0, 2, 3, 3, 0, 0, 2, 1, 3, 0, 0, 3, 1],
        [1, 2, 0, 0, 2, 0, 3, 1, 0, 2, 3, 2, 3, 2, 1, 1],
        [3, 3, 2, 2, 0, 1, 2, 1, 0, 2, 0, 3, 3, 1, 0, 3],
    ]
    .concat();
    let third = [
        [3, 1, 2, 0, 2, 1, 1, 2, 0, 1, 0, 1, 3, 1, 2, 3],
        [1, 2, 1, 3, 1, 2, 3, 1, 0, 2, 2, 0, 1, 3, 1, 1],
        [3, 3, 0, 0, 2, 1, 0, 1, 3, 3, 2, 0, 3, 0, 2, 3],
        [2, 1, 0, 0, 2, 0, 2, 3, 3, 3, 2, 0, 2, 0, 0, 3],
    ]
    .concat();
    [
        ternary_quasigroup().into_table(),
        OperationTable::new(3, 4, second).expect("valid table"),
        OperationTable::new(3, 4, third).expect("valid table"),
    ]
}

pub fn order4_system() -> OrthogonalSystem {
    OrthogonalSystem::new(order4_system_tables().to_vec()).expect("orthogonal")
}

/// `x + y mod q`.
pub fn cyclic_addition(order: usize) -> QuasigroupKey {
    let t = OperationTable::from_fn(2, order, |a| (a[0] + a[1]) % order).expect("valid table");
    QuasigroupKey::new(t).expect("quasigroup")
}

/// The coordinate projections `f_i(x1, …, xn) = x_i`.
pub fn projections(order: usize, arity: usize) -> OrthogonalSystem {
    let tables = (0..arity)
        .map(|i| OperationTable::from_fn(arity, order, |a| a[i]).expect("valid table"))
        .collect();
    OrthogonalSystem::new(tables).expect("orthogonal")
}

fn binary(order: usize, values: &[usize]) -> QuasigroupKey {
    QuasigroupKey::new(OperationTable::new(2, order, values.to_vec()).expect("valid table"))
        .expect("quasigroup")
}
