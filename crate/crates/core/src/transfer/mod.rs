//! Homotopy transfer: the Lie algebra perturbation lemma, the induced
//! contraction of CCE coalgebras and the sh-Lie transfer through the loop
//! Lie algebra.

mod inverse;
mod lie;
mod sh;

pub use inverse::{
    check_theta, homotopy_defect, homotopy_recursion, is_connected, theta_recursion,
    theta_restriction_failure, unit_map, ComplementTwo, HomotopyProblem, HomotopyResult, Theta,
};
pub use lie::{
    coalgebra_over, desuspended_projection, lie_transfer, lie_transfer_contraction,
    side_constraints, symmetric_contraction, unipotent_inverse, LieContraction, LieTransfer,
};
pub use sh::{sh_transfer, truncate, verify_sh_equivalence, ShEquivalenceReport, ShTransfer};

#[cfg(test)]
mod tests;
