#pragma once

#include <cstdint>

#include "optpredict/linalg.hpp"

namespace optpredict::core {

using linalg::Matrix;
using linalg::SpdMatrix;
using linalg::Vector;

namespace defaults {
inline constexpr double invariance_tol = 1e-10; // on ||L^T A + A L||
inline constexpr double rank_tol = 1e-10;       // on sigma_min(G)/sigma_max(G)
inline constexpr double skew_tol = 1e-12;       // on ||G^T K G + (G^T K G)^T||
} // namespace defaults

/// The pair (L, A) of du/dt = L u together with the Gaussian invariant
/// measure's precision matrix A. Construction verifies the invariance
/// condition L^T A + A L = 0 (relative to ||A||_2 ||L||_2) and caches
/// A^{1/2}, A^{-1/2} and K = L A^{-1}, which is skew-symmetric exactly when
/// the invariance condition holds. Immutable after construction.
class LinearSystem {
public:
    LinearSystem(Matrix l, SpdMatrix a,
                 double invariance_tol = defaults::invariance_tol);

    Eigen::Index dim() const { return l_.rows(); }
    const Matrix& l() const { return l_; }
    const SpdMatrix& a() const { return a_; }
    const Matrix& k() const { return k_; }
    const Matrix& a_sqrt() const { return a_sqrt_; }
    const Matrix& a_inv_sqrt() const { return a_inv_sqrt_; }

    /// Fundamental matrix S(t) = e^{tL}.
    Matrix propagator(double t) const { return linalg::expm(l_, t); }

    /// Hamiltonian h(u) = (1/2) u^T A u.
    double energy(const Vector& u) const;
    /// Energy norm |u|_A = |A^{1/2} u| = sqrt(2 h).
    double a_norm(const Vector& u) const;

private:
    Matrix l_;
    SpdMatrix a_;
    Matrix k_;
    Matrix a_sqrt_;
    Matrix a_inv_sqrt_;
};

/// Full-column-rank constraint matrix G with the derived quantities the
/// prediction formulas need: M = G^T A^{-1} G, A^{-1} G, G^T K G and the
/// reduced generator G^T K G M^{-1} of Eq. (6)-type dynamics.
class ConstraintSet {
public:
    ConstraintSet(const LinearSystem& sys, Matrix g,
                  double rank_tol = defaults::rank_tol);

    Eigen::Index n_constraints() const { return g_.cols(); }
    const Matrix& g() const { return g_; }
    const Matrix& a_inv_g() const { return a_inv_g_; }
    const SpdMatrix& m() const { return m_; }
    const Matrix& gkg() const { return gkg_; }
    const Matrix& reduced_generator() const { return reduced_generator_; }

private:
    Matrix g_;
    Matrix a_inv_g_;
    SpdMatrix m_;
    Matrix gkg_;
    Matrix reduced_generator_;
};

struct PredictionResult {
    double t = 0.0;
    Vector exact_mean;
    Vector approx_mean;
    double error_a_norm = 0.0; // |A^{1/2} (approx - exact)|
    double lemma1_bound = 0.0;
};

/// Conditional mean of the constrained measure: <u> = A^{-1} G M^{-1} v0.
Vector conditional_mean(const LinearSystem& sys, const ConstraintSet& c,
                        const Vector& v0);

/// Exact method: S(t) applied to the conditional mean.
Vector exact_mean(const LinearSystem& sys, const ConstraintSet& c,
                  const Vector& v0, double t);

/// Generator of the reduced constraint dynamics, G^T K G M^{-1}.
Matrix reduced_rhs(const ConstraintSet& c);

/// Reduced state v(t) = e^{t G^T K G M^{-1}} v0 (exact propagator, no
/// time-stepping error).
Vector reduced_state(const ConstraintSet& c, const Vector& v0, double t);

/// Approximate method: lift the reduced state, A^{-1} G M^{-1} v(t).
Vector approx_mean(const LinearSystem& sys, const ConstraintSet& c,
                   const Vector& v0, double t);

/// Defect matrix E = L^T G + G M^{-1} G^T K G; zero exactly when G spans a
/// left invariant subspace of L.
Matrix defect_matrix(const LinearSystem& sys, const ConstraintSet& c);

/// t * |A^{-1/2} E M^{-1/2}| * |M^{-1/2} v0|, the a-priori bound on
/// |A^{1/2} e(t)|.
double lemma1_bound(const LinearSystem& sys, const ConstraintSet& c,
                    const Vector& v0, double t);

/// e(t) = integral_0^t S(t-s) A^{-1} E M^{-1} v(s) ds by adaptive
/// Gauss-Legendre quadrature with fresh propagators at each node.
Vector error_integral(const LinearSystem& sys, const ConstraintSet& c,
                      const Vector& v0, double t, double tol);

/// Convenience bundle: both means, the energy-norm error and its bound.
PredictionResult predict(const LinearSystem& sys, const ConstraintSet& c,
                         const Vector& v0, double t);

/// Deterministic test-case generator: A = R^T R + I with standard normal R,
/// L = Ktilde A with Ktilde = (W - W^T)/2, so L^T A + A L = 0 by
/// construction and the invariant-measure hypothesis holds.
LinearSystem random_invariant_system(int m, std::uint64_t seed);

} // namespace optpredict::core
