#pragma once

#include "optpredict/hamiltonian.hpp"
#include "optpredict/op_core.hpp"

namespace optpredict::kg {

using linalg::Matrix;
using linalg::SpdMatrix;
using linalg::Vector;

/// Resolution and kernel-width parameters of the spectral Klein-Gordon
/// setup. The constraint grid has 2n+1 points x_alpha = 2 pi alpha/(2n+1);
/// the trial space carries Fourier modes |k| <= m with m = n + r(2n+1).
struct KgParams {
    int n;        // constraint resolution, n >= 1
    int r;        // spectral excess, r >= 0
    double sigma; // kernel width, > 0

    KgParams(int n_, int r_, double sigma_);

    int m() const { return n + r * (2 * n + 1); }
    int grid_points() const { return 2 * n + 1; }
    int coeff_count() const { return 2 * m() + 1; }

    /// (2n+1) sigma^2 >= 2, the error-bound hypothesis.
    bool lemma2_hypothesis() const;
    /// (2n+1) sigma^2 >= 6 (nu+1) log(2n+1), the probabilistic hypothesis.
    bool theorem1_hypothesis(double nu) const;
};

/// One field state in Fourier coefficients. Ordering follows
/// q = (a_m, ..., a_0, b_1, ..., b_m) and likewise for p; the frequency of
/// slot i is omega_{|i-m|} with omega_k = sqrt(k^2 + 1). Getting this
/// ordering wrong silently breaks the G^T G = Q D1 Q^T identity, so every
/// construction site goes through idx_a / idx_b below.
struct KgState {
    Vector q; // coefficients of u, length 2m+1
    Vector p; // coefficients of u_t, length 2m+1
};

inline int idx_a(int m, int k) { return m - k; } // a_k slot, 0 <= k <= m
inline int idx_b(int m, int k) { return m + k; } // b_k slot, 1 <= k <= m

/// Immutable spectral Klein-Gordon system: frequencies, the real constraint
/// matrix G^T (rows = grid points, columns = coefficients), the orthonormal
/// real DFT matrix Q, the Gamma weights, and the aliased diagonals D1/D2/D3
/// together with the factored Gram matrices G^T G and G^T Lambda^{-2} G.
class KgSpectralSystem {
public:
    const KgParams& params() const { return params_; }
    const Vector& omega() const { return omega_; }          // length 2m+1
    const Matrix& gt() const { return gt_; }                // (2n+1) x (2m+1)
    const Matrix& q_matrix() const { return q_matrix_; }    // (2n+1) x (2n+1)
    const Vector& gamma_scale() const { return gamma_; }    // length 2m+1, index l+m
    const Vector& d1() const { return d1_; }                // length 2n+1, index k+n
    const Vector& d2() const { return d2_; }
    const Vector& d3() const { return d3_; }
    const SpdMatrix& gtg() const { return gtg_; }           // G^T G
    const SpdMatrix& gt_lm2_g() const { return glm2g_; }    // G^T Lambda^{-2} G
    const Matrix& reduced_generator() const { return reduced_generator_; }

private:
    friend KgSpectralSystem build(const KgParams& params);
    KgSpectralSystem(KgParams params);

    KgParams params_;
    Vector omega_;
    Matrix gt_;
    Matrix q_matrix_;
    Vector gamma_;
    Vector d1_, d2_, d3_;
    SpdMatrix gtg_;
    SpdMatrix glm2g_;
    Matrix reduced_generator_;
};

KgSpectralSystem build(const KgParams& params);

/// sqrt(max_k (d2_k/d1_k - d1_k/d3_k)) = |F|, the exact defect norm.
/// Exactly zero when r = 0.
double exact_defect_norm(const KgSpectralSystem& sys);

/// 1.6 (2n+1) e^{-(2n+1) sigma^2 / 4}. Requires n >= 1 and
/// (2n+1) sigma^2 >= 2 unless force is set.
double lemma2_bound(int n, double sigma, bool force = false);
double lemma2_bound(const KgParams& params, bool force = false);

/// Closed-form flow of q'' = -Lambda^2 q:
///   q(t) =  cos(Lambda t) q + Lambda^{-1} sin(Lambda t) p
///   p(t) = -Lambda sin(Lambda t) q + cos(Lambda t) p.
KgState propagate(const KgSpectralSystem& sys, const KgState& state, double t);

/// Conditional mean at t = 0 for v0 = (v_q, v_p):
///   <q> = Lambda^{-2} G (G^T Lambda^{-2} G)^{-1} v_q,
///   <p> = G (G^T G)^{-1} v_p.
KgState kg_conditional_mean(const KgSpectralSystem& sys, const Vector& v0);

/// Exact method: conditional mean propagated by the closed-form flow.
KgState kg_exact_mean(const KgSpectralSystem& sys, const Vector& v0, double t);

/// Approximate method: the 2(2n+1)-dimensional reduced propagator applied
/// to v0, then lifted.
KgState kg_approx_mean(const KgSpectralSystem& sys, const Vector& v0, double t);

/// Zero-padding of Fourier coefficients into a finer space (same n,
/// to.r >= from.r); preserves |.|_A exactly. Throws ShrinkNotAllowed when
/// to.r < from.r.
KgState embed(const KgState& state, const KgParams& from, const KgParams& to);

/// Drops the modes above the coarser space's cutoff (same n, to.r <= from.r).
KgState restrict_modes(const KgState& state, const KgParams& from, const KgParams& to);

/// epsilon_r = 4 (2n+1)^{-(nu+1)[1 + r + r^2 (2n+1)]}.
double theorem2_epsilon(int n, double nu, int r);

/// |state|_A^2 = |Lambda q|^2 + |p|^2 and related quantities.
double a_norm_sq(const KgSpectralSystem& sys, const KgState& state);
double a_norm(const KgSpectralSystem& sys, const KgState& state);
/// h = (1/2)(|Lambda q|^2 + |p|^2); |state|_A^2 == 2h.
double hamiltonian_energy(const KgSpectralSystem& sys, const KgState& state);

Vector to_state_vector(const KgState& state);           // [q; p]
KgState from_state_vector(const Vector& u);             // inverse

/// Blocks for the generic path: A0^2 = Lambda^2 diagonal, Gq = Gp = G.
ham::HamiltonianBlocks assembled_blocks(const KgSpectralSystem& sys);

} // namespace optpredict::kg
