#include "eprnet/state_space.hpp"

#include "eprnet/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace eprnet {

namespace {

// Open-loop drift of one degenerately pumped NOPA in amplitude/phase
// quadratures (x1, p1, x2, p2): damping at (gamma+kappa)/2 plus the
// two-mode-squeezing cross coupling at epsilon/2.
RMat4 nopa_block(double gamma, double kappa, double epsilon) {
    const double d = -(gamma + kappa) / 2.0;
    const double e = epsilon / 2.0;
    RMat4 r = RMat4::Zero();
    r(0, 0) = d;
    r(1, 1) = d;
    r(2, 2) = d;
    r(3, 3) = d;
    r(0, 2) = e;
    r(2, 0) = e;
    r(1, 3) = -e;
    r(3, 1) = -e;
    return r;
}

StateSpace assemble(const RMat12& S, const NopaParams& params) {
    const NopaParams p = params.normalized();

    const RMat4 S11 = S.topLeftCorner<4, 4>();
    const Mat4x8 S12 = S.topRightCorner<4, 8>();
    const Mat8x4 S21 = S.bottomLeftCorner<8, 4>();
    const RMat8 S22 = S.bottomRightCorner<8, 8>();

    // Feedback well-posedness: the loop gain I - S22 must be invertible.
    const RMat8 loop = RMat8::Identity() - S22;
    Eigen::JacobiSVD<RMat8> svd(loop);
    if (svd.singularValues().minCoeff() < 1e-10) {
        throw IllPosedFeedback(
            "feedback interconnection is ill-posed: I - S22 is singular "
            "(smallest singular value " +
            std::to_string(svd.singularValues().minCoeff()) + ")");
    }

    StateSpace ss;
    ss.gamma_ref = params.gamma_ref;
    ss.X = loop.inverse();

    ss.R = RMat8::Zero();
    const RMat4 r4 = nopa_block(p.gamma, p.kappa, p.epsilon);
    ss.R.topLeftCorner<4, 4>() = r4;
    ss.R.bottomRightCorner<4, 4>() = r4;

    const double sg = std::sqrt(p.gamma);
    const double sk = std::sqrt(p.kappa);

    ss.A = ss.R - p.gamma * (ss.X - RMat8::Identity());
    ss.B.leftCols<4>() = -sg * ss.X * S21;
    ss.B.rightCols<8>() = -sk * RMat8::Identity();
    ss.C = sg * S12 * ss.X;
    ss.D.leftCols<4>() = S11 + S12 * ss.X * S21;
    ss.D.rightCols<8>().setZero();
    return ss;
}

} // namespace

StateSpace build_state_space(const PassiveNetwork& net,
                             const NopaParams& params) {
    validate(params);
    return assemble(quadrature_form(net).entries, params);
}

StateSpace build_state_space_raw(const CMat6& entries,
                                 const NopaParams& params) {
    validate(params);
    return assemble(quadrature_expand(entries), params);
}

StabilityReport stability_check(const StateSpace& ss) {
    StabilityReport rep;
    Eigen::EigenSolver<RMat8> es(ss.A, /*computeEigenvectors=*/false);
    rep.max_re_eig = es.eigenvalues().real().maxCoeff();
    rep.hurwitz = rep.max_re_eig < 0.0;
    Eigen::JacobiSVD<RMat8> svd(ss.A);
    const double smax = svd.singularValues().maxCoeff();
    const double smin = svd.singularValues().minCoeff();
    rep.a_invertible = smin > 1e-10 * smax;
    return rep;
}

} // namespace eprnet
