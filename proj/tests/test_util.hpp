#pragma once

// Shared helpers for the test suite: deterministic random unitaries and
// rejection sampling of feasible operating points.

#include <random>

#include <Eigen/Dense>

#include "eprnet/network.hpp"
#include "eprnet/optimizer.hpp"

namespace eprnet::testing {

// Haar-ish random unitary: QR of a complex Gaussian matrix with the R-diagonal
// phase ambiguity fixed so the result is well distributed.
inline CMat6 random_unitary(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat6 z;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) z(r, c) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<CMat6> qr(z);
    CMat6 q = qr.householderQ();
    const CMat6 rmat = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (int i = 0; i < 6; ++i) {
        const Complex d = rmat(i, i);
        q.col(i) *= d / std::abs(d);
    }
    return q;
}

// Random unitary whose closed loop is well posed and strictly stable for the
// given pump/damping rates.  Sampling is deterministic for a fixed generator
// state; roughly a third of Haar samples are feasible at the default rates,
// so the attempt cap is generous.
inline PassiveNetwork random_feasible_network(std::mt19937_64& rng,
                                              const NopaParams& params,
                                              int max_attempts = 4000) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        PassiveNetwork net = make_network(random_unitary(rng));
        if (feasible(net, params)) return net;
    }
    throw std::runtime_error("random_feasible_network: no feasible sample found");
}

}  // namespace eprnet::testing
