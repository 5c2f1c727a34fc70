#pragma once

#include <utility>

#include "optpredict/op_core.hpp"

namespace optpredict::ham {

using core::ConstraintSet;
using core::LinearSystem;
using linalg::Matrix;
using linalg::SpdMatrix;

/// Second-order system q'' = -A0^2 q in block form, with separate
/// constraints on positions and momenta:
///   L = [0 I; -A0^2 0],  A = [A0^2 0; 0 I],  G = diag(Gq, Gp).
struct HamiltonianBlocks {
    SpdMatrix a0sq; // order s
    Matrix gq;      // s x nq
    Matrix gp;      // s x np
};

/// Assembles the 2s-dimensional system and its constraint set. The
/// invariance condition holds identically for this block structure;
/// M = diag(Gq^T A0^{-2} Gq, Gp^T Gp) and G^T K G = [0 Gq^T Gp; -Gp^T Gq 0].
std::pair<LinearSystem, ConstraintSet> assemble(const HamiltonianBlocks& hb);

/// Reduced generator of the constraint dynamics when Gq == Gp == G:
/// [0 I; -(G^T G)(G^T A0^{-2} G)^{-1} 0]. Throws BlocksDiffer otherwise.
Matrix reduced_system_matrix(const HamiltonianBlocks& hb);

/// The defect block F = -A0 G (G^T G)^{-1/2}
///                      + A0^{-1} G (G^T A0^{-2} G)^{-1} (G^T G)^{1/2},
/// the only nonzero block of A^{-1/2} E M^{-1/2}; |F| is the factor in the
/// energy-norm error bound. Requires Gq == Gp.
Matrix f_matrix(const HamiltonianBlocks& hb);

/// F^T F evaluated directly:
///   (G^T G)^{-1/2} (G^T A0^2 G) (G^T G)^{-1/2}
/// - (G^T G)^{1/2} (G^T A0^{-2} G)^{-1} (G^T G)^{1/2}.
Matrix ftf_matrix(const HamiltonianBlocks& hb);

} // namespace optpredict::ham
