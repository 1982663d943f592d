#include "eprnet/synthesis.hpp"

#include "eprnet/errors.hpp"
#include "eprnet/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eprnet {

namespace {

constexpr double kIdentityTol = 1e-12;
constexpr double kKindTol = 1e-9;

CMat6 embed_block(const CMat2& g, int i, int j) {
    CMat6 out = CMat6::Identity();
    out(i, i) = g(0, 0);
    out(i, j) = g(0, 1);
    out(j, i) = g(1, 0);
    out(j, j) = g(1, 1);
    return out;
}

} // namespace

PermutationVector make_permutation(const std::array<int, 6>& p) {
    std::array<bool, 6> seen{};
    for (int v : p) {
        if (v < 1 || v > 6 || seen[static_cast<std::size_t>(v - 1)]) {
            throw std::invalid_argument(
                "permutation vector must contain each of 1..6 exactly once");
        }
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
    PermutationVector perm;
    perm.p = p;
    return perm;
}

const char* to_string(FactorKind kind) {
    switch (kind) {
    case FactorKind::Identity:
        return "identity";
    case FactorKind::SwapLike:
        return "swap_like";
    case FactorKind::PhaseLike:
        return "phase_like";
    case FactorKind::Beamsplitter:
        return "beamsplitter";
    case FactorKind::General:
        return "general";
    }
    return "unknown";
}

FactorKind factor_kind_from_string(const std::string& name) {
    if (name == "identity") return FactorKind::Identity;
    if (name == "swap_like") return FactorKind::SwapLike;
    if (name == "phase_like") return FactorKind::PhaseLike;
    if (name == "beamsplitter") return FactorKind::Beamsplitter;
    if (name == "general") return FactorKind::General;
    throw ParseError("unknown factor kind: " + name);
}

CMat6 embed_factor(const TwoLevelFactor& factor) {
    return embed_block(factor.block, factor.i - 1, factor.j - 1);
}

FactorKind classify(const CMat2& block) {
    if ((block - CMat2::Identity()).cwiseAbs().maxCoeff() <= kIdentityTol) {
        return FactorKind::Identity;
    }
    const double a00 = std::abs(block(0, 0)), a01 = std::abs(block(0, 1));
    const double a10 = std::abs(block(1, 0)), a11 = std::abs(block(1, 1));
    if (a00 <= kKindTol && a11 <= kKindTol &&
        std::abs(a01 - 1.0) <= kKindTol && std::abs(a10 - 1.0) <= kKindTol) {
        return FactorKind::SwapLike;
    }
    if (a01 <= kKindTol && a10 <= kKindTol &&
        std::abs(a00 - 1.0) <= kKindTol && std::abs(a11 - 1.0) <= kKindTol) {
        return FactorKind::PhaseLike;
    }
    const double imag_max = block.imag().cwiseAbs().maxCoeff();
    const double al = block(0, 0).real();
    const double be = block(0, 1).real();
    if (imag_max <= kKindTol && std::abs(block(1, 0).real() + be) <= kKindTol &&
        std::abs(block(1, 1).real() - al) <= kKindTol &&
        std::abs(al * al + be * be - 1.0) <= kKindTol) {
        return FactorKind::Beamsplitter;
    }
    return FactorKind::General;
}

namespace {

TwoLevelFactor make_factor(const CMat6& full, int i, int j) {
    TwoLevelFactor f;
    f.i = std::min(i, j) + 1;
    f.j = std::max(i, j) + 1;
    f.block << full(f.i - 1, f.i - 1), full(f.i - 1, f.j - 1),
        full(f.j - 1, f.i - 1), full(f.j - 1, f.j - 1);
    f.kind = classify(f.block);
    if (f.kind == FactorKind::Beamsplitter) {
        f.alpha = f.block(0, 0).real();
        f.beta = f.block(0, 1).real();
    }
    return f;
}

} // namespace

SynthesisReport decompose(const PassiveNetwork& net,
                          const PermutationVector& perm) {
    make_permutation(perm.p);

    std::array<int, 6> p{};
    for (std::size_t k = 0; k < 6; ++k) {
        p[k] = perm.p[k] - 1;
    }

    // Elimination: stage s zeroes the off-pivot entries of column p_s of
    // the working matrix, one mode pair (p_t, p_t+1) at a time, with a
    // Givens-style 2x2 unitary; the final slot absorbs the remaining
    // trailing 2x2 block. Each applied G contributes the factor G^*.
    CMat6 work = net.entries;
    SynthesisReport report;
    report.left_to_right = true;
    report.factors.reserve(15);

    for (int s = 0; s < 5; ++s) {
        for (int t = 4; t >= s; --t) {
            const int i = p[static_cast<std::size_t>(t)];
            const int j = p[static_cast<std::size_t>(t + 1)];
            CMat2 g;
            if (s == 4) {
                CMat2 blk;
                blk << work(i, i), work(i, j), work(j, i), work(j, j);
                g = blk.adjoint();
            } else {
                const Complex ai = work(i, p[static_cast<std::size_t>(s)]);
                const Complex aj = work(j, p[static_cast<std::size_t>(s)]);
                const double r = std::hypot(std::abs(ai), std::abs(aj));
                if (r < 1e-300 ||
                    (std::abs(aj) == 0.0 && ai == Complex(1.0, 0.0))) {
                    g = CMat2::Identity();
                } else {
                    g << std::conj(ai) / r, std::conj(aj) / r, -aj / r,
                        ai / r;
                }
            }
            const CMat6 G = embed_block(g, i, j);
            work = G * work;
            report.factors.push_back(make_factor(G.adjoint(), i, j));
        }
    }

    PassiveNetwork rebuilt = reconstruct(report.factors, true);
    report.reconstruction_error = (rebuilt.entries - net.entries).norm();
    return report;
}

PassiveNetwork reconstruct(const std::vector<TwoLevelFactor>& factors,
                           bool left_to_right) {
    CMat6 u = CMat6::Identity();
    if (left_to_right) {
        for (const TwoLevelFactor& f : factors) {
            u = u * embed_factor(f);
        }
    } else {
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
            u = u * embed_factor(*it);
        }
    }
    return make_network(u, "reconstructed");
}

std::vector<TwoLevelFactor>
quantize_factors(const std::vector<TwoLevelFactor>& factors, int digits) {
    if (digits < 0) {
        throw std::invalid_argument("digits must be nonnegative");
    }
    if (digits >= 16) {
        return factors; // beyond double precision: rounding cannot change alpha
    }
    std::vector<TwoLevelFactor> out;
    out.reserve(factors.size());
    const double scale = std::pow(10.0, digits);
    for (TwoLevelFactor f : factors) {
        if (f.kind == FactorKind::Beamsplitter && f.alpha && f.beta) {
            const double aq = std::round(*f.alpha * scale) / scale;
            const double bq = std::sqrt(std::max(0.0, 1.0 - aq * aq)) *
                              (*f.beta >= 0.0 ? 1.0 : -1.0);
            f.alpha = aq;
            f.beta = bq;
            f.block << Complex(aq), Complex(bq), Complex(-bq), Complex(aq);
            f.kind = classify(f.block);
            if (f.kind != FactorKind::Beamsplitter) {
                // Rounding can collapse a beamsplitter to a pure device
                // (alpha -> 1 gives the identity); keep alpha for the record
                // but drop it if the block is no longer a beamsplitter.
                f.alpha.reset();
                f.beta.reset();
            }
        }
        out.push_back(std::move(f));
    }
    return out;
}

SqueezingReport quantize_sensitivity(const SynthesisReport& report,
                                     int digits, const NopaParams& params) {
    const std::vector<TwoLevelFactor> rounded =
        quantize_factors(report.factors, digits);
    const PassiveNetwork net = reconstruct(rounded, report.left_to_right);
    return two_mode_squeezing(build_state_space(net, params), 0.0);
}

} // namespace eprnet
