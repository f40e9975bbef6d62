#pragma once

// Closed-form spectra and critical strengths, written out from the analytic
// formulas without touching the numeric pipeline, plus a suite that compares
// them against it.

#include "qdc/optimizer.hpp"

#include <array>
#include <string>
#include <vector>

namespace qdc {

/// Per-qubit coherence factor of the dephasing channel, 1 - 2p + 2(p - 1) p alpha.
double dephasing_coherence(double p, double alpha);

struct GghzDephasingSpectrum {
    std::array<double, 2> markovian;
    std::array<double, 2> non_markovian;
};

/// Nonzero eigenvalues (larger first) of an (N+1)-qubit gGHZ state after
/// dephasing on its N sender qubits, for alpha = 0 and for the given alpha.
GghzDephasingSpectrum gghz_dephasing_spectrum(int n_senders, double x, double p, double alpha);

/// (1 + a - sqrt(1 + a^2)) / (2a), the root of the coherence factor; 1/2 at a = 0.
double pc_closed_form(double alpha);
/// (2 + a - sqrt(4 + a^2)) / (2a); 1/2 at a = 0.
double pa_closed_form(double alpha);

/// 2 + H({x^2, 1 - x^2}).
double gghz_two_receiver_bound(double x);

/// {y, (1-y)/3, (1-y)/3, (1-y)/3} with y = (1 - p)(1 - 3 alpha p).
std::array<double, 4> bell_depolarizing_spectrum(double p, double alpha);
/// 1/2 (1 +- sqrt(1 + 4p(p - 1)(alpha(p - 1) - 1)(alpha p - 1))), larger first.
std::array<double, 2> bell_dephasing_spectrum(double p, double alpha);

struct OracleReport {
    std::string name;
    double numeric_value = 0.0;
    double closed_form_value = 0.0;
    double abs_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Report with abs_error = |numeric - closed_form| and pass = abs_error <= tolerance.
OracleReport make_report(std::string name, double numeric, double closed_form, double tolerance);

/// Optimizes the dephased gGHZ(N+1, x) output entropy and checks that it does
/// not beat the identity encoding by more than 1e-6 (and is not worse than it)
/// and that every optimal theta is within 1e-2 of a multiple of pi.
/// numeric_value is the optimized entropy, closed_form_value the identity one.
OracleReport identity_encoding_check(int n_senders, double x, double alpha, double p, const OptimizerConfig& opt);

/// Bisection root in p of S(Lambda(Phi+)) = 1 for depolarizing noise, computed
/// through the numeric channel pipeline.
double bell_depolarizing_threshold(double alpha);

/// All oracle comparisons; used by `qdc validate`.
std::vector<OracleReport> validation_suite(const OptimizerConfig& opt);

}  // namespace qdc
