// Factorization of a 6x6 unitary into 15 two-level unitary factors (each
// acting on one pair of modes), classification of factors as optical
// devices, product reconstruction, and beamsplitter-coefficient
// quantization analysis.
#pragma once

#include "eprnet/network.hpp"
#include "eprnet/spectra.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace eprnet {

// Elimination order: stage s clears column p_s using mode pairs
// (p_t, p_t+1). Entries are 1-based mode indices.
struct PermutationVector {
    std::array<int, 6> p{6, 5, 4, 3, 2, 1};
};

// Throws std::invalid_argument unless p is a permutation of 1..6.
PermutationVector make_permutation(const std::array<int, 6>& p);

enum class FactorKind {
    Identity,     // block = I2
    SwapLike,     // antidiagonal with unit-modulus entries
    PhaseLike,    // diagonal with unit-modulus entries
    Beamsplitter, // real [[alpha, beta], [-beta, alpha]], alpha^2+beta^2 = 1
    General
};

const char* to_string(FactorKind kind);
FactorKind factor_kind_from_string(const std::string& name);

// A unitary differing from the identity only in the 2x2 principal
// submatrix on modes (i, j), stored in the sorted basis (i < j, 1-based).
struct TwoLevelFactor {
    int i = 1;
    int j = 2;
    CMat2 block = CMat2::Identity();
    FactorKind kind = FactorKind::Identity;
    std::optional<double> alpha; // transmission, beamsplitter factors only
    std::optional<double> beta;  // reflection, beamsplitter factors only
};

// The factor expanded to its full 6x6 matrix.
CMat6 embed_factor(const TwoLevelFactor& factor);

// Classification with precedence identity > swap_like > phase_like >
// beamsplitter > general (the simplest device that matches wins).
FactorKind classify(const CMat2& block);

struct SynthesisReport {
    std::vector<TwoLevelFactor> factors; // exactly 15 for 6 modes
    bool left_to_right = true; // product order of the factors array
    double reconstruction_error = 0.0; // Frobenius gap to the input
};

// Decomposes the network into 15 two-level factors whose left-to-right
// product reconstructs it. Identity factors are retained so every mode
// pair slot of the elimination schedule is represented.
SynthesisReport decompose(const PassiveNetwork& net,
                          const PermutationVector& perm = {});

// Ordered product of the factors: left-to-right multiplies the array
// front-to-back, right-to-left multiplies back-to-front.
PassiveNetwork reconstruct(const std::vector<TwoLevelFactor>& factors,
                           bool left_to_right);

// Rounds every beamsplitter transmission alpha to `digits` decimals
// (half-away-from-zero), recomputes beta = sqrt(1 - alpha^2) preserving
// its sign, and leaves other factors untouched. digits >= 16 is a no-op.
std::vector<TwoLevelFactor>
quantize_factors(const std::vector<TwoLevelFactor>& factors, int digits);

// Quantizes, reassembles the product under the report's order convention,
// and evaluates the EPR variances at omega = 0, zero selector phases.
SqueezingReport quantize_sensitivity(const SynthesisReport& report,
                                     int digits, const NopaParams& params);

} // namespace eprnet
