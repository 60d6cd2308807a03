pub mod cuts;
pub mod dpp;
pub mod error;
pub mod field;
pub mod format;
pub mod generate;
pub mod linalg;
pub mod pit;
pub mod pme;
pub mod structure;

pub use cuts::{
    brute_force_min_cut, cut_function_g, cut_transpose, is_cut, minimal_cut, rank_one_factors,
    CutBackend,
};
pub use error::{Error, Result};
pub use field::{arith, build_extension, ArithOp, FieldElement, FieldSpec, Scalar};
pub use linalg::{IndexSet, Label, Matrix, UnivariatePoly};
pub use structure::{
    diag_equivalent, diag_similar, irreducible_blocks, partition_compatible, BlockDecomposition,
    DiagonalWitness,
};
pub use pme::{
    apply_cut_sequence, brute_force_pme, cycle_weight_oracle, finding_cut_sequence, pme_check,
    pme_check_with, verify_certificate, BlockCertificate, Certificate, PmeOptions, Refutation,
    Verdict,
};
pub use pit::{brute_force_pit, pit_check, pit_general, pit_homogeneous, rank_one_decompose, RankOnePencil};
pub use dpp::{dpp_equivalent, subset_probability, Kernel};
