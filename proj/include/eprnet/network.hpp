// Passive-network types: the 6x6 complex scattering matrix of a static
// passive optical interconnection, its 12x12 real quadrature form, the
// fixed complex<->quadrature map, and the NOPA rate parameters.
#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "eprnet/errors.hpp"

namespace eprnet {

using Complex = std::complex<double>;

using CMat6 = Eigen::Matrix<Complex, 6, 6>;
using CMat2 = Eigen::Matrix2cd;
using RMat12 = Eigen::Matrix<double, 12, 12>;
using RMat8 = Eigen::Matrix<double, 8, 8>;
using RMat4 = Eigen::Matrix<double, 4, 4>;
using Mat4x8 = Eigen::Matrix<double, 4, 8>;
using Mat8x4 = Eigen::Matrix<double, 8, 4>;
using Mat8x12 = Eigen::Matrix<double, 8, 12>;
using Mat4x12 = Eigen::Matrix<double, 4, 12>;
using CMat4x12 = Eigen::Matrix<Complex, 4, 12>;
using CMat12x6 = Eigen::Matrix<Complex, 12, 6>;

// Unitarity handling: residual <= kUnitaryTol is accepted as-is; residuals
// in (kUnitaryTol, kUnitaryRepairTol] are polar-projected to the nearest
// unitary (file round-trips lose digits); larger residuals are rejected.
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kUnitaryRepairTol = 1e-6;

// A static passive optical interconnection, S~ in the complex mode basis.
struct PassiveNetwork {
    CMat6 entries;
    std::string label;
    double unitarity_residual = 0.0; // Frobenius norm of S~*S~ - I at construction
    bool reprojected = false;        // input was repaired to the nearest unitary
};

// Validates/repairs `entries` per the tolerance policy above.
// Throws NonUnitaryInput if the residual exceeds kUnitaryRepairTol.
PassiveNetwork make_network(const CMat6& entries, std::string label = "");

// The quadrature image of the network: a 12x12 real orthogonal symplectic
// matrix, partitioned into the feedthrough/feedback blocks used by the
// closed-loop model.
struct QuadratureNetwork {
    RMat12 entries;

    RMat4 s11() const { return entries.topLeftCorner<4, 4>(); }
    Mat4x8 s12() const { return entries.topRightCorner<4, 8>(); }
    Mat8x4 s21() const { return entries.bottomLeftCorner<8, 4>(); }
    RMat8 s22() const { return entries.bottomRightCorner<8, 8>(); }
};

// Fixed map between complex mode amplitudes and (q, p) quadratures:
// K = I6 (x) [1; -i], so K*K = 2*I6.
const CMat12x6& quadrature_map();

// Doubled symplectic form J = I6 (x) [[0, 1], [-1, 0]].
const RMat12& symplectic_form();

// The quadrature expansion 1/2 K S~ K* + 1/2 conj(K) conj(S~) K^T as a
// plain linear map: each complex entry s becomes the 2x2 block
// [[Re s, -Im s], [Im s, Re s]]. No unitarity gate — the expansion is
// defined for any matrix (needed to evaluate the variance functional at
// off-manifold points such as finite-difference probes).
RMat12 quadrature_expand(const CMat6& entries);

// Checked variant for networks: same expansion, but throws
// NonUnitaryInput if `net.entries` drifted past kUnitaryTol.
QuadratureNetwork quadrature_form(const PassiveNetwork& net);

// Inverse of quadrature_form: S~ = 1/4 K* S K. Checks the orthogonality and
// symplectic invariants first and throws NonSymplecticInput on failure.
PassiveNetwork complex_form(const QuadratureNetwork& qnet);

// NOPA rates. Values are in Hz; gamma_ref sets the scale used to normalize
// the closed-loop model (squeezing at a rate ratio is scale invariant).
struct NopaParams {
    double gamma = 7.2e7;          // mirror damping rate
    double kappa = 0.0;            // amplification loss rate
    double epsilon = 0.4 * 7.2e7;  // pump coupling
    double gamma_ref = 7.2e7;      // reference rate

    // Rates divided by gamma_ref (gamma_ref maps to 1).
    NopaParams normalized() const {
        return {gamma / gamma_ref, kappa / gamma_ref, epsilon / gamma_ref, 1.0};
    }
};

// Throws std::invalid_argument unless gamma > 0, kappa >= 0, epsilon >= 0,
// gamma_ref > 0.
void validate(const NopaParams& params);

// Built-in networks.
// "cfb": the dual-NOPA coherent feedback interconnection (a permutation).
PassiveNetwork cfb_network();
// "lm-paper": the published locally-optimal network, 15-decimal entries.
PassiveNetwork lm_paper_network();

} // namespace eprnet
