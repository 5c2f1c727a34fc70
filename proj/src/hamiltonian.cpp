#include "optpredict/hamiltonian.hpp"

namespace optpredict::ham {

namespace {

void check_blocks(const HamiltonianBlocks& hb) {
    const Eigen::Index s = hb.a0sq.dim();
    if (hb.gq.rows() != s || hb.gp.rows() != s)
        throw DimensionMismatch("HamiltonianBlocks: Gq/Gp rows must equal order of A0^2");
    if (hb.gq.cols() < 1 || hb.gp.cols() < 1)
        throw DimensionMismatch("HamiltonianBlocks: empty constraint block");
}

void require_equal_blocks(const HamiltonianBlocks& hb) {
    if (hb.gq.rows() != hb.gp.rows() || hb.gq.cols() != hb.gp.cols() ||
        hb.gq != hb.gp)
        throw BlocksDiffer("HamiltonianBlocks: operation requires Gq == Gp");
}

} // namespace

std::pair<LinearSystem, ConstraintSet> assemble(const HamiltonianBlocks& hb) {
    check_blocks(hb);
    const Eigen::Index s = hb.a0sq.dim();
    Matrix l = Matrix::Zero(2 * s, 2 * s);
    l.topRightCorner(s, s).setIdentity();
    l.bottomLeftCorner(s, s) = -hb.a0sq.dense();

    Matrix a = Matrix::Zero(2 * s, 2 * s);
    a.topLeftCorner(s, s) = hb.a0sq.dense();
    a.bottomRightCorner(s, s).setIdentity();

    Matrix g = Matrix::Zero(2 * s, hb.gq.cols() + hb.gp.cols());
    g.topLeftCorner(s, hb.gq.cols()) = hb.gq;
    g.bottomRightCorner(s, hb.gp.cols()) = hb.gp;

    LinearSystem sys(std::move(l), SpdMatrix(a));
    ConstraintSet c(sys, std::move(g));
    return {std::move(sys), std::move(c)};
}

Matrix reduced_system_matrix(const HamiltonianBlocks& hb) {
    check_blocks(hb);
    require_equal_blocks(hb);
    const Matrix& g = hb.gq;
    const Eigen::Index n = g.cols();
    const SpdMatrix gt_a0inv2_g(g.transpose() * hb.a0sq.solve(g));
    const Matrix gtg = g.transpose() * g;
    // (G^T G)(G^T A0^{-2} G)^{-1}, via the symmetric solve from the right
    const Matrix lower_left = gt_a0inv2_g.solve(gtg).transpose();
    Matrix r = Matrix::Zero(2 * n, 2 * n);
    r.topRightCorner(n, n).setIdentity();
    r.bottomLeftCorner(n, n) = -lower_left;
    return r;
}

Matrix f_matrix(const HamiltonianBlocks& hb) {
    check_blocks(hb);
    require_equal_blocks(hb);
    const Matrix& g = hb.gq;
    const auto a0 = hb.a0sq.sqrt_pair(); // A0 and A0^{-1}
    const auto gtg_sqrt = SpdMatrix(g.transpose() * g).sqrt_pair();
    const SpdMatrix gt_a0inv2_g(g.transpose() * hb.a0sq.solve(g));
    return -a0.root * g * gtg_sqrt.inv_root +
           a0.inv_root * g * gt_a0inv2_g.solve(gtg_sqrt.root);
}

Matrix ftf_matrix(const HamiltonianBlocks& hb) {
    check_blocks(hb);
    require_equal_blocks(hb);
    const Matrix& g = hb.gq;
    const auto gtg_sqrt = SpdMatrix(g.transpose() * g).sqrt_pair();
    const SpdMatrix gt_a0inv2_g(g.transpose() * hb.a0sq.solve(g));
    const Matrix gt_a0sq_g = g.transpose() * hb.a0sq.dense() * g;
    const Matrix first = gtg_sqrt.inv_root * gt_a0sq_g * gtg_sqrt.inv_root;
    const Matrix second = gtg_sqrt.root * gt_a0inv2_g.solve(gtg_sqrt.root);
    return first - second;
}

} // namespace optpredict::ham
