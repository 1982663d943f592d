#include "eprnet/spectra.hpp"

#include "eprnet/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace eprnet {

SelectorPair selectors(double psi1, double psi2) {
    const double c1 = std::cos(psi1), s1 = std::sin(psi1);
    const double c2 = std::cos(psi2), s2 = std::sin(psi2);
    SelectorPair p;
    p.e1 << c1, -s1, c2, -s2;
    p.e2 << s1, c1, -s2, -c2;
    return p;
}

CMat4x12 transfer_matrix(const StateSpace& ss, double omega) {
    const double w = omega / ss.gamma_ref;
    if (w == 0.0) {
        // Zero-frequency gain D - C A^-1 B via a real factorization.
        Eigen::FullPivLU<RMat8> lu(ss.A);
        if (!lu.isInvertible()) {
            throw ResonantFrequency(
                "transfer matrix undefined at omega = 0: drift matrix A is "
                "singular");
        }
        const Mat4x12 h = ss.D - ss.C * lu.solve(ss.B);
        return h.cast<Complex>();
    }
    Eigen::Matrix<Complex, 8, 8> m =
        (-ss.A).cast<Complex>();
    m.diagonal().array() += Complex(0.0, w);
    Eigen::FullPivLU<Eigen::Matrix<Complex, 8, 8>> lu(m);
    if (!lu.isInvertible()) {
        throw ResonantFrequency(
            "transfer matrix undefined: (i omega I - A) is singular at "
            "omega = " +
            std::to_string(omega) + " rad/s");
    }
    return ss.C.cast<Complex>() * lu.solve(ss.B.cast<Complex>()) +
           ss.D.cast<Complex>();
}

double to_decibels(double v_total) { return 10.0 * std::log10(v_total); }

SqueezingReport two_mode_squeezing(const StateSpace& ss, double omega,
                                   double psi1, double psi2) {
    const CMat4x12 h = transfer_matrix(ss, omega);
    const SelectorPair sel = selectors(psi1, psi2);

    SqueezingReport rep;
    rep.omega = omega;
    rep.psi1 = psi1;
    rep.psi2 = psi2;
    rep.v_plus = (sel.e1.cast<Complex>() * h).squaredNorm();
    rep.v_minus = (sel.e2.cast<Complex>() * h).squaredNorm();
    rep.v_total = rep.v_plus + rep.v_minus;
    rep.db = to_decibels(rep.v_total);
    rep.entangled = rep.v_total < 4.0;
    return rep;
}

namespace {

SqueezingReport sweep_point(const StateSpace& ss, double omega, double psi1,
                            double psi2) {
    try {
        return two_mode_squeezing(ss, omega, psi1, psi2);
    } catch (const ResonantFrequency&) {
        SqueezingReport rep;
        rep.omega = omega;
        rep.psi1 = psi1;
        rep.psi2 = psi2;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        rep.v_plus = rep.v_minus = rep.v_total = rep.db = nan;
        rep.entangled = false;
        rep.resonant = true;
        return rep;
    }
}

void check_sweep_args(double omega_max, int points) {
    if (points < 2) {
        throw std::invalid_argument(
            "sweep requires at least 2 frequency points");
    }
    if (!(omega_max > 0.0)) {
        throw std::invalid_argument("sweep requires omega_max > 0");
    }
}

} // namespace

std::vector<SqueezingReport> sweep_spectrum_serial(const StateSpace& ss,
                                                   double omega_max,
                                                   int points, double psi1,
                                                   double psi2) {
    check_sweep_args(omega_max, points);
    std::vector<SqueezingReport> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double omega = omega_max * static_cast<double>(i) /
                             static_cast<double>(points - 1);
        out[static_cast<std::size_t>(i)] = sweep_point(ss, omega, psi1, psi2);
    }
    return out;
}

std::vector<SqueezingReport> sweep_spectrum(const StateSpace& ss,
                                            double omega_max, int points,
                                            double psi1, double psi2) {
    check_sweep_args(omega_max, points);
    std::vector<SqueezingReport> out(static_cast<std::size_t>(points));
#ifdef EPRNET_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < points; ++i) {
        const double omega = omega_max * static_cast<double>(i) /
                             static_cast<double>(points - 1);
        out[static_cast<std::size_t>(i)] = sweep_point(ss, omega, psi1, psi2);
    }
    return out;
}

} // namespace eprnet
