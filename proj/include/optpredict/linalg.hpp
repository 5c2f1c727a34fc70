#pragma once

#include <functional>

#include <Eigen/Dense>

#include "optpredict/errors.hpp"

namespace optpredict::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default tolerances. Callers can override them through the corresponding
/// function parameters; the defaults leave a wide margin at the problem
/// sizes this library targets (dense, order <= ~300).
namespace defaults {
inline constexpr double spd_eig_cutoff = 1e-12; // relative to ||A||_2
inline constexpr int quad_order = 12;           // Gauss-Legendre points per panel
inline constexpr int quad_max_panels = 1 << 16;
} // namespace defaults

/// Symmetric positive definite matrix. The constructor symmetrizes the
/// input exactly (averages with the transpose) and factors it eagerly, so a
/// constructed SpdMatrix is immutable, thread-safe to share, and known to be
/// positive definite. Throws NotPositiveDefinite when the Cholesky
/// factorization hits a non-positive pivot.
class SpdMatrix {
public:
    explicit SpdMatrix(const Matrix& a);

    Eigen::Index dim() const { return a_.rows(); }
    const Matrix& dense() const { return a_; }

    /// Solves A X = B. One step of iterative refinement keeps the residual
    /// near machine precision for well-conditioned systems.
    Matrix solve(const Matrix& b) const;
    Vector solve(const Vector& b) const;

    struct SqrtPair {
        Matrix root;     // symmetric R with R R = A
        Matrix inv_root; // symmetric R^{-1}
    };

    /// Symmetric square root and its inverse via a full symmetric
    /// eigendecomposition. Throws NotPositiveDefinite when an eigenvalue
    /// falls at or below eig_cutoff * ||A||_2.
    SqrtPair sqrt_pair(double eig_cutoff = defaults::spd_eig_cutoff) const;

private:
    Matrix a_;
    Eigen::LLT<Matrix> llt_;
};

inline Matrix spd_solve(const SpdMatrix& a, const Matrix& b) { return a.solve(b); }
inline SpdMatrix::SqrtPair spd_sqrt(const SpdMatrix& a) { return a.sqrt_pair(); }

/// e^{tL} by scaling and squaring with a diagonal Pade core (degrees
/// 3/5/7/9/13 chosen from the 1-norm of tL).
Matrix expm(const Matrix& l, double t = 1.0);

/// Largest singular value (operator 2-norm).
double spectral_norm(const Matrix& b);

/// Integral of a smooth vector-valued curve over [a, b]. Composite
/// Gauss-Legendre of fixed order with adaptive panel bisection until the
/// componentwise error estimate drops below tol. Throws ToleranceNotMet
/// once the panel budget (2^16) is exhausted.
Vector integrate_curve(const std::function<Vector(double)>& f, double a, double b,
                       double tol);

} // namespace optpredict::linalg
