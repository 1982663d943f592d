#include "eprnet/optimizer.hpp"

#include "eprnet/errors.hpp"
#include "eprnet/spectra.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>

namespace eprnet {

const char* to_string(OptimizerStatus status) {
    switch (status) {
    case OptimizerStatus::Converged:
        return "converged";
    case OptimizerStatus::MaxIters:
        return "max-iters";
    case OptimizerStatus::StepUnderflow:
        return "step-underflow";
    }
    return "unknown";
}

double objective_v0(const PassiveNetwork& net, const NopaParams& params) {
    return two_mode_squeezing(build_state_space(net, params), 0.0).v_total;
}

GradientMatrix euclidean_gradient(const PassiveNetwork& net,
                                  const NopaParams& params) {
    StateSpace ss;
    try {
        ss = build_state_space(net, params);
    } catch (const IllPosedFeedback& e) {
        throw InfeasiblePoint(std::string("gradient undefined: ") + e.what());
    }

    Eigen::FullPivLU<RMat8> lu(ss.A);
    if (!lu.isInvertible()) {
        throw InfeasiblePoint(
            "gradient undefined: drift matrix A is singular");
    }
    const RMat8 a_inv = lu.inverse();

    const NopaParams p = params.normalized();
    const double sg = std::sqrt(p.gamma);
    const QuadratureNetwork S = quadrature_form(net);
    const Mat4x8 S12 = S.s12();
    const Mat8x4 S21 = S.s21();
    const RMat8& X = ss.X;

    // Zero-frequency transfer and the selector quadratic form
    // M12 = e1^T e1 + e2^T e2 at zero phases.
    const Mat4x12 H = ss.D - ss.C * a_inv * ss.B;
    RMat4 M12;
    M12 << 1, 0, 1, 0, //
        0, 1, 0, -1,   //
        1, 0, 1, 0,    //
        0, -1, 0, 1;
    const Eigen::Matrix<double, 12, 4> M = H.transpose() * M12;

    // The derivative of V(0) with respect to the 12x12 quadrature network
    // splits into a rank-structured product N = F1 F2, where F1 collects
    // the dependence of H through the direct port block and the feedback
    // resolvent X, and F2 collects the dependence through the output path.
    const RMat4 topM = M.topRows<4>();
    Eigen::Matrix<double, 12, 4> F1;
    F1.topRows<4>() = topM;
    F1.bottomRows<8>() = X * S21 * topM - sg * X * a_inv * ss.B * M;

    Eigen::Matrix<double, 4, 12> F2;
    F2.leftCols<4>() = RMat4::Identity();
    F2.rightCols<8>() = S12 * X + sg * ss.C * a_inv * X;

    const RMat12 N = F1 * F2;

    // Pull the quadrature-space derivative back to the complex network
    // matrix through the quadrature map.
    const CMat12x6& K = quadrature_map();
    GradientMatrix grad;
    grad.d = 2.0 * K.adjoint() * N.transpose().cast<Complex>() * K;
    Eigen::JacobiSVD<CMat6> svd(grad.d);
    grad.operator_norm = svd.singularValues().maxCoeff();
    return grad;
}

CMat6 descent_direction(const PassiveNetwork& net,
                        const GradientMatrix& grad) {
    const CMat6& St = net.entries;
    return St * grad.d.adjoint() * St - grad.d;
}

double inner_product(const PassiveNetwork& net, const CMat6& z1,
                     const CMat6& z2) {
    const CMat6& St = net.entries;
    const CMat6 mid = CMat6::Identity() - 0.5 * St * St.adjoint();
    return (z1.adjoint() * mid * z2).trace().real();
}

PassiveNetwork retract(const CMat6& x) {
    Eigen::JacobiSVD<CMat6> svd(x,
                                Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues().minCoeff() <= 1e-12) {
        throw RankDeficient(
            "cannot project a rank-deficient matrix onto the unitary group");
    }
    return make_network(svd.matrixU() * svd.matrixV().adjoint());
}

bool feasible(const PassiveNetwork& net, const NopaParams& params) {
    StateSpace ss;
    try {
        ss = build_state_space(net, params);
    } catch (const IllPosedFeedback&) {
        return false;
    }
    const StabilityReport rep = stability_check(ss);
    return rep.a_invertible && rep.max_re_eig < -1e-12;
}

namespace {

// Retraction that reports failure instead of throwing, for line-search
// candidates that may wander to rank-deficient points.
std::optional<PassiveNetwork> try_retract(const CMat6& x) {
    try {
        return retract(x);
    } catch (const RankDeficient&) {
        return std::nullopt;
    }
}

IterationRecord make_record(int iter, double v0, double z_norm, double rho,
                            int rejections) {
    IterationRecord rec;
    rec.iter = iter;
    rec.v0 = v0;
    rec.db = 10.0 * std::log10(v0);
    rec.z_norm = z_norm;
    rec.rho = rho;
    rec.feasibility_rejections = rejections;
    return rec;
}

} // namespace

OptimizationResult optimize(const PassiveNetwork& init,
                            const NopaParams& params,
                            const OptimizerConfig& cfg) {
    if (!(cfg.tol > 0.0) || !(cfg.rho0 > 0.0) || cfg.max_iters < 1 ||
        !(cfg.rho_min < cfg.rho0)) {
        throw std::invalid_argument(
            "optimizer config requires tol > 0, rho0 > 0, max_iters >= 1, "
            "rho_min < rho0");
    }
    if (!feasible(init, params)) {
        throw InfeasibleStart(
            "initial network fails the feasibility guard (ill-posed "
            "feedback, singular drift, or non-Hurwitz drift)");
    }

    OptimizationResult out;
    PassiveNetwork cur = init;
    double v_cur = objective_v0(cur, params);
    double rho = cfg.rho0;

    for (int it = 1; it <= cfg.max_iters; ++it) {
        const GradientMatrix grad = euclidean_gradient(cur, params);
        const CMat6 Z = descent_direction(cur, grad);
        const double zz = inner_product(cur, Z, Z);
        const double z_norm = std::sqrt(zz);

        if (it == 1) {
            out.trace.push_back(make_record(0, v_cur, z_norm, rho, 0));
        }
        if (z_norm < cfg.tol) {
            out.result = cur;
            out.result.label = "optimized";
            out.status = OptimizerStatus::Converged;
            return out;
        }

        // Expansion: keep doubling while the doubled step stays feasible
        // and achieves at least rho <Z,Z> of decrease.
        for (;;) {
            const auto cand = try_retract(cur.entries + 2.0 * rho * Z);
            if (!cand || !feasible(*cand, params)) {
                break;
            }
            if (v_cur - objective_v0(*cand, params) < rho * zz) {
                break;
            }
            rho *= 2.0;
        }

        // Contraction: halve until the step is feasible and achieves at
        // least 1/2 rho <Z,Z> of decrease.
        int rejections = 0;
        PassiveNetwork next;
        double v_next = 0.0;
        for (;;) {
            const auto cand = try_retract(cur.entries + rho * Z);
            if (cand && feasible(*cand, params)) {
                const double v_cand = objective_v0(*cand, params);
                if (v_cur - v_cand >= 0.5 * rho * zz) {
                    next = *cand;
                    v_next = v_cand;
                    break;
                }
            }
            ++rejections;
            rho *= 0.5;
            if (rho < cfg.rho_min) {
                out.result = cur;
                out.result.label = "optimized";
                out.status = OptimizerStatus::StepUnderflow;
                return out;
            }
        }

        cur = next;
        v_cur = v_next;
        out.trace.push_back(make_record(it, v_cur, z_norm, rho, rejections));
    }

    out.result = cur;
    out.result.label = "optimized";
    out.status = OptimizerStatus::MaxIters;
    return out;
}

} // namespace eprnet
