#include "optpredict/klein_gordon.hpp"

#include <cmath>
#include <numbers>

namespace optpredict::kg {

namespace {

constexpr double kPi = std::numbers::pi;

double hypothesis_slack(double lhs, double rhs) {
    // tolerate one-ulp rounding when callers sit exactly on the boundary
    return lhs - rhs * (1.0 - 1e-12) + 1e-12;
}

} // namespace

KgParams::KgParams(int n_, int r_, double sigma_) : n(n_), r(r_), sigma(sigma_) {
    if (n < 1)
        throw InvalidParams("KgParams: n >= 1 required");
    if (r < 0)
        throw InvalidParams("KgParams: r >= 0 required");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw InvalidParams("KgParams: sigma > 0 required");
}

bool KgParams::lemma2_hypothesis() const {
    return hypothesis_slack((2 * n + 1) * sigma * sigma, 2.0) >= 0.0;
}

bool KgParams::theorem1_hypothesis(double nu) const {
    return hypothesis_slack((2 * n + 1) * sigma * sigma,
                            6.0 * (nu + 1.0) * std::log(2.0 * n + 1.0)) >= 0.0;
}

KgSpectralSystem::KgSpectralSystem(KgParams params)
    : params_(params),
      omega_(Vector::Zero(params.coeff_count())),
      gt_(Matrix::Zero(params.grid_points(), params.coeff_count())),
      q_matrix_(Matrix::Zero(params.grid_points(), params.grid_points())),
      gamma_(Vector::Zero(params.coeff_count())),
      d1_(Vector::Zero(params.grid_points())),
      d2_(Vector::Zero(params.grid_points())),
      d3_(Vector::Zero(params.grid_points())),
      gtg_(Matrix::Identity(1, 1)),
      glm2g_(Matrix::Identity(1, 1)) {}

KgSpectralSystem build(const KgParams& params) {
    KgSpectralSystem sys(params);
    const int n = params.n;
    const int m = params.m();
    const int r = params.r;
    const int gp = params.grid_points();  // 2n+1
    const int nc = params.coeff_count();  // 2m+1
    const double sig2 = params.sigma * params.sigma;

    for (int i = 0; i < nc; ++i) {
        const int k = std::abs(i - m);
        sys.omega_(i) = std::sqrt(static_cast<double>(k) * k + 1.0);
    }

    for (int l = -m; l <= m; ++l)
        sys.gamma_(l + m) =
            std::sqrt((2.0 * n + 1.0) / (2.0 * kPi)) *
            std::exp(-static_cast<double>(l) * l * sig2 / 4.0);

    // G^T row alpha: integrals of g(x - x_alpha) against the real basis.
    for (int alpha = 0; alpha < gp; ++alpha) {
        const double x = 2.0 * kPi * alpha / gp;
        sys.gt_(alpha, idx_a(m, 0)) = 1.0 / std::sqrt(2.0 * kPi);
        for (int k = 1; k <= m; ++k) {
            const double damp = std::exp(-static_cast<double>(k) * k * sig2 / 4.0);
            sys.gt_(alpha, idx_a(m, k)) = damp * std::cos(k * x) / std::sqrt(kPi);
            sys.gt_(alpha, idx_b(m, k)) = damp * std::sin(k * x) / std::sqrt(kPi);
        }
    }

    // Orthonormal real DFT: row alpha of Q is
    // sqrt(2/(2n+1)) [cos(n x), ..., cos(x), 1/sqrt(2), sin(x), ..., sin(n x)].
    for (int alpha = 0; alpha < gp; ++alpha) {
        const double x = 2.0 * kPi * alpha / gp;
        const double scale = std::sqrt(2.0 / gp);
        for (int j = 0; j < gp; ++j) {
            if (j < n)
                sys.q_matrix_(alpha, j) = scale * std::cos((n - j) * x);
            else if (j == n)
                sys.q_matrix_(alpha, j) = 1.0 / std::sqrt(static_cast<double>(gp));
            else
                sys.q_matrix_(alpha, j) = scale * std::sin((j - n) * x);
        }
    }

    // Aliased diagonals over the mode family l = k + j(2n+1).
    for (int k = -n; k <= n; ++k) {
        double s1 = 0.0, s2 = 0.0, s3 = 0.0;
        for (int j = -r; j <= r; ++j) {
            const double l = static_cast<double>(k) + static_cast<double>(j) * gp;
            const double w = std::exp(-l * l * sig2 / 2.0);
            const double lam = l * l + 1.0;
            s1 += w;
            s2 += w * lam;
            s3 += w / lam;
        }
        const double pref = gp / (2.0 * kPi);
        sys.d1_(k + n) = pref * s1;
        sys.d2_(k + n) = pref * s2;
        sys.d3_(k + n) = pref * s3;
    }

    sys.gtg_ = SpdMatrix(sys.gt_ * sys.gt_.transpose());
    sys.glm2g_ = SpdMatrix(
        sys.gt_ * sys.omega_.array().square().inverse().matrix().asDiagonal() *
        sys.gt_.transpose());

    // Reduced generator [0 I; -(G^T G)(G^T Lambda^{-2} G)^{-1} 0].
    const Matrix lower_left = sys.glm2g_.solve(sys.gtg_.dense()).transpose();
    sys.reduced_generator_ = Matrix::Zero(2 * gp, 2 * gp);
    sys.reduced_generator_.topRightCorner(gp, gp).setIdentity();
    sys.reduced_generator_.bottomLeftCorner(gp, gp) = -lower_left;

    // Construction-time identities: Q orthonormal and G^T G = Q D1 Q^T with
    // D1 rearranged into Q's column ordering (|k| = n-j left of center,
    // j-n right of it).
    const double q_defect = linalg::spectral_norm(
        sys.q_matrix_.transpose() * sys.q_matrix_ - Matrix::Identity(gp, gp));
    if (q_defect > 1e-12)
        throw Error("KgSpectralSystem: Q lost orthonormality");
    Vector d1_q(gp);
    for (int j = 0; j < gp; ++j)
        d1_q(j) = sys.d1_(n + std::abs(n - j));
    const Matrix gtg_ref =
        sys.q_matrix_ * d1_q.asDiagonal() * sys.q_matrix_.transpose();
    const double gtg_defect = linalg::spectral_norm(sys.gtg_.dense() - gtg_ref);
    if (gtg_defect > 1e-10 * linalg::spectral_norm(sys.gtg_.dense()))
        throw Error("KgSpectralSystem: G^T G != Q D1 Q^T");

    return sys;
}

double exact_defect_norm(const KgSpectralSystem& sys) {
    if (sys.params().r == 0)
        return 0.0; // E = F = 0 identically
    double worst = 0.0;
    for (int i = 0; i < sys.params().grid_points(); ++i) {
        const double diff =
            sys.d2()(i) / sys.d1()(i) - sys.d1()(i) / sys.d3()(i);
        worst = std::max(worst, diff);
    }
    return std::sqrt(std::max(worst, 0.0));
}

double lemma2_bound(int n, double sigma, bool force) {
    if (n < 1)
        throw InvalidParams("lemma2_bound: n >= 1 required");
    const double prod = (2.0 * n + 1.0) * sigma * sigma;
    if (hypothesis_slack(prod, 2.0) < 0.0 && !force)
        throw HypothesisViolated("lemma2_bound: (2n+1) sigma^2 >= 2 required");
    return 1.6 * (2.0 * n + 1.0) * std::exp(-prod / 4.0);
}

double lemma2_bound(const KgParams& params, bool force) {
    return lemma2_bound(params.n, params.sigma, force);
}

namespace {

void check_state(const KgSpectralSystem& sys, const KgState& state) {
    if (state.q.size() != sys.params().coeff_count() ||
        state.p.size() != sys.params().coeff_count())
        throw DimensionMismatch("KgState: coefficient count mismatch");
}

void check_v0(const KgSpectralSystem& sys, const Vector& v0) {
    if (v0.size() != 2 * sys.params().grid_points())
        throw DimensionMismatch("v0 must have length 2(2n+1)");
}

} // namespace

KgState propagate(const KgSpectralSystem& sys, const KgState& state, double t) {
    check_state(sys, state);
    const Vector& w = sys.omega();
    const Vector c = (t * w.array()).cos().matrix();
    const Vector s = (t * w.array()).sin().matrix();
    KgState out;
    out.q = c.cwiseProduct(state.q) + s.cwiseQuotient(w).cwiseProduct(state.p);
    out.p = -w.cwiseProduct(s).cwiseProduct(state.q) + c.cwiseProduct(state.p);
    return out;
}

KgState kg_conditional_mean(const KgSpectralSystem& sys, const Vector& v0) {
    check_v0(sys, v0);
    const int gp = sys.params().grid_points();
    const Vector vq = v0.head(gp);
    const Vector vp = v0.tail(gp);
    KgState out;
    out.q = sys.omega().array().square().inverse().matrix().cwiseProduct(
        sys.gt().transpose() * sys.gt_lm2_g().solve(vq));
    out.p = sys.gt().transpose() * sys.gtg().solve(vp);
    return out;
}

KgState kg_exact_mean(const KgSpectralSystem& sys, const Vector& v0, double t) {
    KgState mean = kg_conditional_mean(sys, v0);
    if (t == 0.0)
        return mean;
    return propagate(sys, mean, t);
}

KgState kg_approx_mean(const KgSpectralSystem& sys, const Vector& v0, double t) {
    check_v0(sys, v0);
    Vector vt = v0;
    if (t != 0.0 && !v0.isZero(0.0))
        vt = linalg::expm(sys.reduced_generator(), t) * v0;
    return kg_conditional_mean(sys, vt);
}

KgState embed(const KgState& state, const KgParams& from, const KgParams& to) {
    if (to.n != from.n)
        throw InvalidParams("embed: same n required");
    if (to.r < from.r)
        throw ShrinkNotAllowed("embed: to.r must be >= from.r");
    if (state.q.size() != from.coeff_count() || state.p.size() != from.coeff_count())
        throw DimensionMismatch("embed: state does not match source params");
    const int mf = from.m();
    const int mt = to.m();
    KgState out;
    out.q = Vector::Zero(to.coeff_count());
    out.p = Vector::Zero(to.coeff_count());
    out.q.segment(mt - mf, mf + 1) = state.q.head(mf + 1); // a_mf..a_0
    out.p.segment(mt - mf, mf + 1) = state.p.head(mf + 1);
    if (mf > 0) {
        out.q.segment(mt + 1, mf) = state.q.tail(mf); // b_1..b_mf
        out.p.segment(mt + 1, mf) = state.p.tail(mf);
    }
    return out;
}

KgState restrict_modes(const KgState& state, const KgParams& from,
                       const KgParams& to) {
    if (to.n != from.n)
        throw InvalidParams("restrict_modes: same n required");
    if (to.r > from.r)
        throw InvalidParams("restrict_modes: to.r must be <= from.r");
    if (state.q.size() != from.coeff_count() || state.p.size() != from.coeff_count())
        throw DimensionMismatch("restrict_modes: state does not match source params");
    const int mf = from.m();
    const int mt = to.m();
    KgState out;
    out.q = Vector::Zero(to.coeff_count());
    out.p = Vector::Zero(to.coeff_count());
    out.q.head(mt + 1) = state.q.segment(mf - mt, mt + 1);
    out.p.head(mt + 1) = state.p.segment(mf - mt, mt + 1);
    if (mt > 0) {
        out.q.tail(mt) = state.q.segment(mf + 1, mt);
        out.p.tail(mt) = state.p.segment(mf + 1, mt);
    }
    return out;
}

double theorem2_epsilon(int n, double nu, int r) {
    if (n < 1 || nu < 0.0 || r < 0)
        throw InvalidParams("theorem2_epsilon: need n >= 1, nu >= 0, r >= 0");
    const double base = 2.0 * n + 1.0;
    const double exponent =
        (nu + 1.0) * (1.0 + r + static_cast<double>(r) * r * base);
    return 4.0 * std::pow(base, -exponent);
}

double a_norm_sq(const KgSpectralSystem& sys, const KgState& state) {
    check_state(sys, state);
    return sys.omega().cwiseProduct(state.q).squaredNorm() + state.p.squaredNorm();
}

double a_norm(const KgSpectralSystem& sys, const KgState& state) {
    return std::sqrt(a_norm_sq(sys, state));
}

double hamiltonian_energy(const KgSpectralSystem& sys, const KgState& state) {
    return 0.5 * a_norm_sq(sys, state);
}

Vector to_state_vector(const KgState& state) {
    Vector u(state.q.size() + state.p.size());
    u << state.q, state.p;
    return u;
}

KgState from_state_vector(const Vector& u) {
    if (u.size() % 2 != 0)
        throw DimensionMismatch("from_state_vector: odd length");
    KgState s;
    s.q = u.head(u.size() / 2);
    s.p = u.tail(u.size() / 2);
    return s;
}

ham::HamiltonianBlocks assembled_blocks(const KgSpectralSystem& sys) {
    const Matrix lambda_sq =
        sys.omega().array().square().matrix().asDiagonal();
    return ham::HamiltonianBlocks{SpdMatrix(lambda_sq), sys.gt().transpose(),
                                  sys.gt().transpose()};
}

} // namespace optpredict::kg
