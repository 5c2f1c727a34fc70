#include "optpredict/linalg.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace optpredict::linalg {

SpdMatrix::SpdMatrix(const Matrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw DimensionMismatch("SpdMatrix: square nonempty matrix required");
    if (!a.allFinite())
        throw InvalidParams("SpdMatrix: entries must be finite");
    a_ = 0.5 * (a + a.transpose());
    llt_.compute(a_);
    if (llt_.info() != Eigen::Success)
        throw NotPositiveDefinite("SpdMatrix: Cholesky factorization failed");
}

Matrix SpdMatrix::solve(const Matrix& b) const {
    if (b.rows() != dim())
        throw DimensionMismatch("SpdMatrix::solve: row count mismatch");
    Matrix x = llt_.solve(b);
    x += llt_.solve(b - a_ * x);
    return x;
}

Vector SpdMatrix::solve(const Vector& b) const {
    if (b.size() != dim())
        throw DimensionMismatch("SpdMatrix::solve: size mismatch");
    Vector x = llt_.solve(b);
    x += llt_.solve(b - a_ * x);
    return x;
}

SpdMatrix::SqrtPair SpdMatrix::sqrt_pair(double eig_cutoff) const {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(a_);
    if (eig.info() != Eigen::Success)
        throw Error("SpdMatrix::sqrt_pair: eigendecomposition failed");
    const Vector& lam = eig.eigenvalues();
    const double scale = std::max(std::abs(lam(0)), std::abs(lam(lam.size() - 1)));
    if (lam(0) <= eig_cutoff * scale)
        throw NotPositiveDefinite("SpdMatrix::sqrt_pair: eigenvalue at or below cutoff");
    const Matrix& v = eig.eigenvectors();
    Matrix root = v * lam.cwiseSqrt().asDiagonal() * v.transpose();
    Matrix inv_root = v * lam.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();
    root = 0.5 * (root + root.transpose()).eval();
    inv_root = 0.5 * (inv_root + inv_root.transpose()).eval();
    return {std::move(root), std::move(inv_root)};
}

double spectral_norm(const Matrix& b) {
    if (b.size() == 0)
        throw DimensionMismatch("spectral_norm: empty matrix");
    if (b.isZero(0.0))
        return 0.0;
    Eigen::BDCSVD<Matrix> svd(b);
    return svd.singularValues()(0);
}

// ---------------------------------------------------------------------------
// Matrix exponential: scaling and squaring with diagonal Pade approximants
// (degrees 3, 5, 7, 9, 13 selected from the 1-norm, as in Higham 2005).
// ---------------------------------------------------------------------------
namespace {

Matrix pade_solve(const Matrix& u, const Matrix& v) {
    // r = (v - u)^{-1} (v + u)
    return Eigen::PartialPivLU<Matrix>(v - u).solve(v + u);
}

Matrix pade_low(const Matrix& a, const std::initializer_list<double>& b) {
    const Eigen::Index n = a.rows();
    const Matrix a2 = a * a;
    Matrix usum = Matrix::Zero(n, n);
    Matrix v = Matrix::Zero(n, n);
    Matrix power = Matrix::Identity(n, n); // a2^k
    auto it = b.begin();
    const std::size_t m = b.size() - 1;
    for (std::size_t k = 0; 2 * k <= m; ++k) {
        v += it[2 * k] * power;
        if (2 * k + 1 <= m)
            usum += it[2 * k + 1] * power;
        if (2 * k + 2 <= m)
            power = (power * a2).eval();
    }
    return pade_solve(a * usum, v);
}

Matrix pade13(const Matrix& a) {
    static constexpr double b[] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    const Eigen::Index n = a.rows();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a2 * a4;
    Matrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                    b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
               b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    return pade_solve(u, v);
}

} // namespace

Matrix expm(const Matrix& l, double t) {
    if (l.rows() != l.cols() || l.rows() == 0)
        throw DimensionMismatch("expm: square nonempty matrix required");
    Matrix a = t * l;
    if (!a.allFinite())
        throw InvalidParams("expm: non-finite t*L");

    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();

    static constexpr double theta3 = 1.495585217958292e-2;
    static constexpr double theta5 = 2.539398330063230e-1;
    static constexpr double theta7 = 9.504178996162932e-1;
    static constexpr double theta9 = 2.097847961257068;
    static constexpr double theta13 = 5.371920351148152;

    if (norm1 <= theta3)
        return pade_low(a, {120.0, 60.0, 12.0, 1.0});
    if (norm1 <= theta5)
        return pade_low(a, {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0});
    if (norm1 <= theta7)
        return pade_low(a, {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0,
                            1512.0, 56.0, 1.0});
    if (norm1 <= theta9)
        return pade_low(a, {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                            30270240.0, 2162160.0, 110880.0, 3960.0, 90.0, 1.0});

    int squarings = 0;
    if (norm1 > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
        a /= std::ldexp(1.0, squarings);
    }
    Matrix f = pade13(a);
    for (int i = 0; i < squarings; ++i)
        f = (f * f).eval();
    return f;
}

// ---------------------------------------------------------------------------
// Composite adaptive Gauss-Legendre quadrature.
// ---------------------------------------------------------------------------
namespace {

struct GaussRule {
    std::array<double, defaults::quad_order> node;
    std::array<double, defaults::quad_order> weight;
};

GaussRule make_rule() {
    GaussRule r{};
    const int n = defaults::quad_order;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 64; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // one clean evaluation of the derivative at the converged node
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.node[i] = -x;
        r.node[n - 1 - i] = x;
        r.weight[i] = w;
        r.weight[n - 1 - i] = w;
    }
    return r;
}

const GaussRule& rule() {
    static const GaussRule r = make_rule();
    return r;
}

struct AdaptiveQuad {
    const std::function<Vector(double)>& f;
    int panels_used = 0;

    Vector panel(double a, double b) {
        if (++panels_used > defaults::quad_max_panels)
            throw ToleranceNotMet("integrate_curve: panel budget exhausted");
        const auto& r = rule();
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        Vector acc = r.weight[0] * f(mid + half * r.node[0]);
        for (int i = 1; i < defaults::quad_order; ++i)
            acc += r.weight[i] * f(mid + half * r.node[i]);
        return half * acc;
    }

    Vector refine(double a, double b, const Vector& whole, double tol) {
        const double mid = 0.5 * (a + b);
        const Vector left = panel(a, mid);
        const Vector right = panel(mid, b);
        Vector sum = left + right;
        if ((sum - whole).cwiseAbs().maxCoeff() <= tol)
            return sum;
        return refine(a, mid, left, 0.5 * tol) + refine(mid, b, right, 0.5 * tol);
    }
};

} // namespace

Vector integrate_curve(const std::function<Vector(double)>& f, double a, double b,
                       double tol) {
    if (!(a <= b))
        throw InvalidParams("integrate_curve: require a <= b");
    if (tol < 0.0)
        throw InvalidParams("integrate_curve: negative tolerance");
    if (a == b)
        return Vector::Zero(f(a).size());
    AdaptiveQuad q{f};
    const Vector whole = q.panel(a, b);
    return q.refine(a, b, whole, tol);
}

} // namespace optpredict::linalg
