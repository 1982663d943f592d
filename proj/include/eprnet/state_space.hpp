// Closed-loop state-space assembly: the quadrature dynamics of two NOPAs
// interconnected through a passive network, and the associated stability
// checks.
#pragma once

#include "eprnet/network.hpp"

namespace eprnet {

// Real quadrature state-space model
//   dz = A z dt + B d[xi_in; xi_loss],   xi_out = C z + D [xi_in; xi_loss],
// built with all rates normalized by gamma_ref so A is O(1). Absolute
// frequencies are mapped through gamma_ref when evaluating transfer
// functions.
struct StateSpace {
    RMat8 A;      // closed-loop drift
    Mat8x12 B;    // input coupling [vacuum inputs | loss inputs]
    Mat4x8 C;     // output coupling
    Mat4x12 D;    // feedthrough
    RMat8 R;      // open-loop NOPA drift (two identical 4x4 blocks)
    RMat8 X;      // feedback resolvent, X = (I - S22)^-1
    double gamma_ref; // rad/s scale for frequency normalization
};

// Assembles the model. Rates are normalized internally by params.gamma_ref.
// Throws IllPosedFeedback if (I - S22) is singular (smallest singular value
// below 1e-10), std::invalid_argument for invalid rates, NonUnitaryInput if
// the network fails its invariant.
StateSpace build_state_space(const PassiveNetwork& net,
                             const NopaParams& params);

// Same assembly from a raw complex interconnection matrix, without the
// unitarity gate: the quadrature expansion is linear, so the closed loop
// is well defined whenever (I - S22) is invertible. Used to evaluate the
// variance functional at off-manifold points (finite-difference probes).
StateSpace build_state_space_raw(const CMat6& entries,
                                 const NopaParams& params);

struct StabilityReport {
    double max_re_eig;  // largest real part among eigenvalues of A
    bool hurwitz;       // max_re_eig < 0
    bool a_invertible;  // smallest singular value of A > 1e-10 * ||A||
};

StabilityReport stability_check(const StateSpace& ss);

} // namespace eprnet
