// Local minimization of the zero-frequency EPR variance V(0) over the
// manifold of 6x6 unitary interconnection matrices: Euclidean gradient,
// tangent descent direction, canonical inner product, SVD retraction,
// feasibility guard, and the modified steepest-descent loop with a
// doubling/halving line search.
#pragma once

#include "eprnet/network.hpp"
#include "eprnet/state_space.hpp"

#include <vector>

namespace eprnet {

// Euclidean derivative of V(0) with respect to the complex network matrix:
// V(S + Delta) - V(S) = Re Tr[Delta^* d] + O(||Delta||^2).
struct GradientMatrix {
    CMat6 d;
    double operator_norm = 0.0; // largest singular value of d
};

struct OptimizerConfig {
    double tol = 1e-3;      // stop when sqrt(<Z,Z>) drops below this
    double rho0 = 1.0;      // initial line-search step
    int max_iters = 10000;  // outer iteration cap
    double rho_min = 1e-15; // step-underflow floor
};

// One accepted iterate of the descent loop (iter 0 is the start point).
struct IterationRecord {
    int iter = 0;
    double v0 = 0.0;     // V(0) at this iterate
    double db = 0.0;     // 10 log10(v0)
    double z_norm = 0.0; // sqrt(<Z,Z>) of the step that produced it
    double rho = 0.0;    // step size accepted (initial rho for iter 0)
    int feasibility_rejections = 0; // halvings forced before acceptance
};

enum class OptimizerStatus { Converged, MaxIters, StepUnderflow };

const char* to_string(OptimizerStatus status);

struct OptimizationResult {
    PassiveNetwork result;
    std::vector<IterationRecord> trace;
    OptimizerStatus status = OptimizerStatus::Converged;
};

// V(0) at zero selector phases — the objective the optimizer minimizes.
double objective_v0(const PassiveNetwork& net, const NopaParams& params);

// Throws InfeasiblePoint if the closed loop cannot be built or the drift
// matrix is singular.
GradientMatrix euclidean_gradient(const PassiveNetwork& net,
                                  const NopaParams& params);

// Tangent descent direction Z = S d^* S - d. Moving along +Z decreases V
// to first order.
CMat6 descent_direction(const PassiveNetwork& net, const GradientMatrix& grad);

// Canonical inner product Re Tr[z1^* (I - 1/2 S S^*) z2]; equals
// 1/2 Re Tr[z1^* z2] when S is unitary.
double inner_product(const PassiveNetwork& net, const CMat6& z1,
                     const CMat6& z2);

// Nearest unitary to x in Frobenius norm (U V^* from the SVD of x).
// Throws RankDeficient if the smallest singular value is <= 1e-12.
PassiveNetwork retract(const CMat6& x);

// True iff the feedback loop is well posed, the drift matrix A is
// invertible, and A is strictly Hurwitz (max Re eig(A) < -1e-12; marginal
// stability is rejected because V(0) is meaningless there).
bool feasible(const PassiveNetwork& net, const NopaParams& params);

// Modified steepest descent:
//   step 2: gradient d and direction Z at the current point;
//   step 3: stop (Converged) when sqrt(<Z,Z>) < tol;
//   step 4: double rho while pi(S + 2 rho Z) is feasible and achieves
//           decrease V(S) - V(candidate) >= rho <Z,Z>;
//   step 5: halve rho until pi(S + rho Z) is feasible and achieves
//           decrease >= 1/2 rho <Z,Z> (StepUnderflow if rho < rho_min);
//   step 6: accept and repeat.
// rho carries over between outer iterations. Throws InfeasibleStart if the
// initial point fails the feasibility guard, std::invalid_argument on a
// bad config.
OptimizationResult optimize(const PassiveNetwork& init,
                            const NopaParams& params,
                            const OptimizerConfig& cfg = {});

} // namespace eprnet
