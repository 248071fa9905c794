//! Quasigroup-based ciphers and the chosen-text attacks that break them.
//!
//! * [`table`] and [`quasigroup`]: n-ary operations as explicit tables,
//!   quasigroup validation, parastrophes, inverse operations, translations.
//! * [`orthogonality`]: orthogonal systems of n-ary operations and their
//!   correspondence with permutations of `Q^n`.
//! * [`tquasigroup`]: linear quasigroups over `Z_p` and criteria for
//!   orthogonality with their parastrophes.
//! * [`cipher`]: chained stream ciphers over binary and n-ary quasigroups,
//!   orthogonal-system block ciphers, and their combinations.
//! * [`attack`]: chosen-ciphertext and chosen-plaintext key recovery against
//!   oracles that hide the key.
//!
//! ```
//! use quasigroup_cipher::cipher::{decrypt_binary, encrypt_binary};
//! use quasigroup_cipher::fixtures;
//!
//! let abc = fixtures::abc();
//! let key = fixtures::abc_quasigroup();
//! let plain = abc.encode_text("bbcaacba").unwrap();
//! let cipher = encrypt_binary(&key, 0, &plain).unwrap();
//! assert_eq!(abc.decode_text(&cipher), "cbbcaaca");
//! assert_eq!(decrypt_binary(&key, 0, &cipher).unwrap(), plain);
//! ```

pub mod attack;
pub mod cipher;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod keyfile;
pub mod orthogonality;
pub mod quasigroup;
pub mod rng;
pub mod table;
pub mod tquasigroup;

/// An alphabet element, `0..q`.
pub type Symbol = usize;

pub use error::{Error, Result};
pub use orthogonality::{OrthogonalSystem, TuplePermutation};
pub use quasigroup::{QuasigroupKey, Sigma, Translation};
pub use table::{Alphabet, OperationTable};
