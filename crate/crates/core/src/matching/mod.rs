//! Graph matching: an exhaustive oracle for tiny instances, an exact linear
//! assignment solver, and the seeded Frank-Wolfe matcher.
//!
//! Throughout, a permutation `σ` matches vertex `i` of `A` to vertex `σ(i)`
//! of `B`, and the objective is `Tr(A P Bᵀ Pᵀ) = Σ_{i,j} A_{ij} B_{σ(i)σ(j)}`.

mod brute;
mod correctness;
mod lap;
mod seeds;
mod sgm;

pub use brute::{brute_force_gmp, BruteForceResult, MAX_BRUTE_FORCE_FREE};
pub use correctness::match_correctness;
pub use lap::{lap_solve, Assignment};
pub use seeds::SeedSet;
pub use sgm::{sgm_faq, sgm_faq_with, Init, MatchResult, SolverOptions};
