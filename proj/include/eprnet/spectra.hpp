// Two-mode squeezing spectra of the closed-loop network: transfer matrix
// evaluation, EPR variance selectors, single-frequency reports, and
// frequency sweeps (parallel with a serial reference).
#pragma once

#include "eprnet/network.hpp"
#include "eprnet/state_space.hpp"

#include <vector>

namespace eprnet {

// Quadrature selector rows for the rotated output fields. At zero phases
// e1 picks the amplitude-quadrature sum and e2 the phase-quadrature
// difference of the two output modes.
struct SelectorPair {
    Eigen::RowVector4d e1;
    Eigen::RowVector4d e2;
};

SelectorPair selectors(double psi1, double psi2);

// EPR variance report at a single angular frequency.
struct SqueezingReport {
    double omega = 0.0;    // angular frequency (rad/s)
    double v_plus = 0.0;   // variance of the rotated quadrature sum
    double v_minus = 0.0;  // variance of the rotated quadrature difference
    double v_total = 0.0;  // v_plus + v_minus
    double db = 0.0;       // 10 log10(v_total)
    bool entangled = false; // v_total < 4 (two-mode vacuum bound)
    double psi1 = 0.0;
    double psi2 = 0.0;
    bool resonant = false; // set by sweeps when (iwI - A) was singular here
};

// H(iw) = C (iwI - A)^-1 B + D, evaluated in the gamma_ref-normalized
// system (omega is absolute, in rad/s). At omega = 0 the computation stays
// real and the (real-valued) result is returned as complex.
// Throws ResonantFrequency if (iwI - A) is singular.
CMat4x12 transfer_matrix(const StateSpace& ss, double omega);

double to_decibels(double v_total);

// V+/V- at one frequency via the squared row norms of e1 H and e2 H.
SqueezingReport two_mode_squeezing(const StateSpace& ss, double omega,
                                   double psi1 = 0.0, double psi2 = 0.0);

// Uniform sweep over points frequencies in [0, omega_max]. Resonant
// frequencies are flagged (resonant = true, NaN variances) rather than
// aborting the sweep. Results are ordered by omega.
// Throws std::invalid_argument unless points >= 2 and omega_max > 0.
//
// sweep_spectrum evaluates points concurrently when OpenMP is available;
// sweep_spectrum_serial is the single-threaded reference used to validate
// it. Both produce identical output.
std::vector<SqueezingReport> sweep_spectrum(const StateSpace& ss,
                                            double omega_max, int points,
                                            double psi1 = 0.0,
                                            double psi2 = 0.0);
std::vector<SqueezingReport> sweep_spectrum_serial(const StateSpace& ss,
                                                   double omega_max,
                                                   int points,
                                                   double psi1 = 0.0,
                                                   double psi2 = 0.0);

} // namespace eprnet
