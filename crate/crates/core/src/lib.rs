//! Exact maximum quantum Fisher information (QFI) for k-body interacting
//! encoding Hamiltonians on `N` qubits.
//!
//! The generator `h_k^(N) = sum over k-subsets of sigma_z (x) ... (x) sigma_z`
//! is diagonal, so its spectrum is indexed by the number of up spins. The
//! crate computes that spectrum exactly, derives optimal and
//! symmetric-product QFIs, classifies the optimal probes, handles the
//! up-to-k-body generator and arbitrary local dimension, and fits the
//! resulting scaling laws.
//!
//! | module | contents |
//! |---|---|
//! | [`combinat`] | binomials, sector eigenvalues |
//! | [`oracle`] | brute-force spectra over all basis strings |
//! | [`qfi_optimal`] | optimum over all probes, closed forms, asymptotics |
//! | [`qfi_product`] | symmetric product probes |
//! | [`case_two`] | generators with all orders up to `k` |
//! | [`probes`] | optimal two-branch probes and their classification |
//! | [`highdim`] | arbitrary local dimension via extremal local eigenvalues |
//! | [`fit`] | log-log least-squares fits with Student-t intervals |
//! | [`cli`] | command-line front end used by the `qfi` binary |

pub mod bigint_serde;
pub mod case_two;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod fit;
pub mod highdim;
pub mod oracle;
pub mod probes;
pub mod qfi_optimal;
pub mod qfi_product;

pub use combinat::{binom, n0, sector_eigenvalue, BinomialCache, SectorSpectrum};
pub use error::{QfiError, Result};
pub use probes::{Classification, ProbeState, TieRule};
pub use qfi_optimal::{optimal_qfi, QfiReport};
