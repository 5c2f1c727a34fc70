#include "optpredict/op_core.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "optpredict/rng.hpp"

namespace optpredict::core {

namespace {

SpdMatrix checked_a(SpdMatrix a, const Matrix& l, double invariance_tol) {
    if (l.rows() != l.cols())
        throw DimensionMismatch("LinearSystem: L must be square");
    if (l.rows() != a.dim())
        throw DimensionMismatch("LinearSystem: L and A dimensions differ");
    const Matrix residual = l.transpose() * a.dense() + a.dense() * l;
    const double scale =
        linalg::spectral_norm(a.dense()) *
        (l.isZero(0.0) ? 1.0 : linalg::spectral_norm(l));
    if (linalg::spectral_norm(residual) > invariance_tol * scale)
        throw InvarianceViolated(
            "LinearSystem: L^T A + A L != 0 beyond tolerance " +
            std::to_string(invariance_tol));
    return a;
}

Matrix checked_g(const LinearSystem& sys, Matrix g, double rank_tol) {
    if (g.rows() != sys.dim())
        throw DimensionMismatch("ConstraintSet: G row count must equal system dim");
    if (g.cols() < 1 || g.cols() > g.rows())
        throw DimensionMismatch("ConstraintSet: need 1 <= n <= m constraint columns");
    Eigen::BDCSVD<Matrix> svd(g);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= rank_tol * sv(0))
        throw RankDeficient("ConstraintSet: G is rank deficient");
    return g;
}

SpdMatrix make_m(const Matrix& g, const Matrix& a_inv_g) {
    try {
        return SpdMatrix(g.transpose() * a_inv_g);
    } catch (const NotPositiveDefinite&) {
        throw SingularM("ConstraintSet: M = G^T A^{-1} G failed to factor");
    }
}

} // namespace

LinearSystem::LinearSystem(Matrix l, SpdMatrix a, double invariance_tol)
    : l_(std::move(l)), a_(checked_a(std::move(a), l_, invariance_tol)) {
    const auto sq = a_.sqrt_pair();
    a_sqrt_ = sq.root;
    a_inv_sqrt_ = sq.inv_root;
    k_ = a_.solve(l_.transpose()).transpose(); // K = L A^{-1}
}

double LinearSystem::energy(const Vector& u) const {
    if (u.size() != dim())
        throw DimensionMismatch("LinearSystem::energy: size mismatch");
    return 0.5 * u.dot(a_.dense() * u);
}

double LinearSystem::a_norm(const Vector& u) const {
    return (a_sqrt_ * u).norm();
}

ConstraintSet::ConstraintSet(const LinearSystem& sys, Matrix g, double rank_tol)
    : g_(checked_g(sys, std::move(g), rank_tol)),
      a_inv_g_(sys.a().solve(g_)),
      m_(make_m(g_, a_inv_g_)),
      gkg_(g_.transpose() * sys.k() * g_),
      reduced_generator_(m_.solve(gkg_.transpose()).transpose()) {
    if (!gkg_.isZero(0.0)) {
        const double scale = linalg::spectral_norm(gkg_);
        if (linalg::spectral_norm(gkg_ + gkg_.transpose()) > defaults::skew_tol * scale)
            throw Error("ConstraintSet: G^T K G is not skew-symmetric");
    }
}

Vector conditional_mean(const LinearSystem& sys, const ConstraintSet& c,
                        const Vector& v0) {
    if (v0.size() != c.n_constraints())
        throw DimensionMismatch("conditional_mean: v0 size mismatch");
    if (v0.isZero(0.0))
        return Vector::Zero(sys.dim());
    return c.a_inv_g() * c.m().solve(v0);
}

Vector exact_mean(const LinearSystem& sys, const ConstraintSet& c,
                  const Vector& v0, double t) {
    Vector u0 = conditional_mean(sys, c, v0);
    if (t == 0.0 || u0.isZero(0.0))
        return u0;
    return sys.propagator(t) * u0;
}

Matrix reduced_rhs(const ConstraintSet& c) { return c.reduced_generator(); }

Vector reduced_state(const ConstraintSet& c, const Vector& v0, double t) {
    if (v0.size() != c.n_constraints())
        throw DimensionMismatch("reduced_state: v0 size mismatch");
    if (t == 0.0 || v0.isZero(0.0))
        return v0;
    return linalg::expm(c.reduced_generator(), t) * v0;
}

Vector approx_mean(const LinearSystem& sys, const ConstraintSet& c,
                   const Vector& v0, double t) {
    const Vector vt = reduced_state(c, v0, t);
    if (vt.isZero(0.0))
        return Vector::Zero(sys.dim());
    return c.a_inv_g() * c.m().solve(vt);
}

Matrix defect_matrix(const LinearSystem& sys, const ConstraintSet& c) {
    return sys.l().transpose() * c.g() + c.g() * c.m().solve(c.gkg());
}

double lemma1_bound(const LinearSystem& sys, const ConstraintSet& c,
                    const Vector& v0, double t) {
    if (t < 0.0)
        throw InvalidParams("lemma1_bound: t must be >= 0");
    if (t == 0.0)
        return 0.0;
    const Matrix e = defect_matrix(sys, c);
    if (e.isZero(0.0))
        return 0.0;
    const auto m_sqrt = c.m().sqrt_pair();
    const double factor =
        linalg::spectral_norm(sys.a_inv_sqrt() * e * m_sqrt.inv_root);
    return t * factor * (m_sqrt.inv_root * v0).norm();
}

Vector error_integral(const LinearSystem& sys, const ConstraintSet& c,
                      const Vector& v0, double t, double tol) {
    if (t < 0.0)
        throw InvalidParams("error_integral: t must be >= 0");
    if (t == 0.0 || v0.isZero(0.0))
        return Vector::Zero(sys.dim());
    const Matrix e = defect_matrix(sys, c);
    if (e.isZero(0.0))
        return Vector::Zero(sys.dim());
    // A^{-1} E M^{-1}, fixed across quadrature nodes
    const Matrix a_inv_e = sys.a().solve(e);
    const Matrix kernel = c.m().solve(a_inv_e.transpose()).transpose();
    const Matrix rr = c.reduced_generator();
    auto integrand = [&](double s) -> Vector {
        const Vector vs = linalg::expm(rr, s) * v0;
        return linalg::expm(sys.l(), t - s) * (kernel * vs);
    };
    return linalg::integrate_curve(integrand, 0.0, t, tol);
}

PredictionResult predict(const LinearSystem& sys, const ConstraintSet& c,
                         const Vector& v0, double t) {
    PredictionResult r;
    r.t = t;
    r.exact_mean = exact_mean(sys, c, v0, t);
    r.approx_mean = approx_mean(sys, c, v0, t);
    r.error_a_norm = sys.a_norm(r.approx_mean - r.exact_mean);
    r.lemma1_bound = lemma1_bound(sys, c, v0, t);
    return r;
}

LinearSystem random_invariant_system(int m, std::uint64_t seed) {
    if (m < 2)
        throw InvalidParams("random_invariant_system: m >= 2 required");
    mc::RngStream rng(seed);
    Matrix r(m, m), w(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            r(i, j) = rng.normal();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            w(i, j) = rng.normal();
    const Matrix a = r.transpose() * r + Matrix::Identity(m, m);
    const Matrix ktilde = 0.5 * (w - w.transpose());
    return LinearSystem(ktilde * a, SpdMatrix(a));
}

} // namespace optpredict::core
