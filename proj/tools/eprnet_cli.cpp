// Command-line front end: evaluates EPR squeezing spectra of passive
// optical networks closing a dual-NOPA loop, optimizes the network matrix,
// factors it into two-level optical devices, and validates invariants.
//
// Exit codes: 0 success; 2 ill-posed feedback loop; 3 unstable or resonant
// closed-loop drift (message names max Re eig(A)); 1 other errors.
#include "eprnet/errors.hpp"
#include "eprnet/io.hpp"
#include "eprnet/network.hpp"
#include "eprnet/optimizer.hpp"
#include "eprnet/spectra.hpp"
#include "eprnet/state_space.hpp"
#include "eprnet/synthesis.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace eprnet;

struct RateOptions {
    double gamma = 1.0;
    double kappa = 0.0;
    double epsilon = 0.4;
    double gamma_ref = 7.2e7;
    bool hz = false; // rates given in rad/s instead of units of gamma_ref
};

void add_rate_options(CLI::App* cmd, RateOptions& rates) {
    cmd->add_option("--gamma", rates.gamma,
                    "NOPA damping rate (units of gamma-ref, or rad/s with "
                    "--hz) [default 1]");
    cmd->add_option("--kappa", rates.kappa,
                    "NOPA loss rate (same units as --gamma) [default 0]");
    cmd->add_option("--epsilon", rates.epsilon,
                    "NOPA pump strength (same units as --gamma) [default "
                    "0.4]");
    cmd->add_option("--gamma-ref", rates.gamma_ref,
                    "reference rate in rad/s [default 7.2e7]");
    cmd->add_flag("--hz", rates.hz,
                  "interpret --gamma/--kappa/--epsilon as absolute rad/s");
}

NopaParams to_params(const RateOptions& r) {
    NopaParams p;
    p.gamma_ref = r.gamma_ref;
    const double scale = r.hz ? 1.0 : r.gamma_ref;
    p.gamma = r.gamma * scale;
    p.kappa = r.kappa * scale;
    p.epsilon = r.epsilon * scale;
    return p;
}

void emit(const std::string& text, const std::string& out_path) {
    std::cout << text;
    if (!out_path.empty()) {
        write_text_file(out_path, text);
    }
}

// Rejects networks whose closed loop is not strictly stable, naming the
// offending eigenvalue real part.
void require_stable(const StateSpace& ss) {
    const StabilityReport rep = stability_check(ss);
    if (!rep.hurwitz || !rep.a_invertible) {
        std::ostringstream msg;
        msg << "closed-loop drift matrix is not stable: max Re eig(A) = "
            << rep.max_re_eig;
        throw ResonantFrequency(msg.str());
    }
}

PermutationVector parse_perm(const std::string& text) {
    std::array<int, 6> p{};
    std::stringstream in(text);
    std::string tok;
    std::size_t k = 0;
    while (std::getline(in, tok, ',')) {
        if (k >= 6) {
            throw ParseError("permutation must have exactly 6 entries");
        }
        try {
            p[k++] = std::stoi(tok);
        } catch (const std::exception&) {
            throw ParseError("permutation entries must be integers");
        }
    }
    if (k != 6) {
        throw ParseError("permutation must have exactly 6 entries");
    }
    return make_permutation(p);
}

int cmd_eval(const std::string& source, const RateOptions& rates,
             double omega, double psi1, double psi2,
             const std::string& out_path) {
    const PassiveNetwork net = resolve_network(source);
    const NopaParams params = to_params(rates);
    const StateSpace ss = build_state_space(net, params);
    require_stable(ss);
    const SqueezingReport rep = two_mode_squeezing(ss, omega, psi1, psi2);
    emit(report_to_json(rep).dump(2) + "\n", out_path);
    return 0;
}

int cmd_sweep(const std::string& source, const RateOptions& rates,
              double omega_max, int points, double psi1, double psi2,
              const std::string& out_path) {
    const PassiveNetwork net = resolve_network(source);
    const NopaParams params = to_params(rates);
    const StateSpace ss = build_state_space(net, params);
    require_stable(ss);
    const std::vector<SqueezingReport> pts =
        sweep_spectrum(ss, omega_max, points, psi1, psi2);
    emit(sweep_to_csv(pts), out_path);
    return 0;
}

int cmd_optimize(const std::string& source, const RateOptions& rates,
                 const OptimizerConfig& cfg, const std::string& out_path,
                 const std::string& trace_path) {
    const PassiveNetwork net = resolve_network(source);
    const NopaParams params = to_params(rates);
    const OptimizationResult res = optimize(net, params, cfg);
    std::cout << optimization_summary_to_json(res).dump(2) << "\n";
    if (!out_path.empty()) {
        save_network(res.result, out_path);
    }
    if (!trace_path.empty()) {
        write_text_file(trace_path, trace_to_csv(res.trace));
    }
    return 0;
}

int cmd_decompose(const std::string& source, const std::string& perm_text,
                  const std::string& out_path) {
    const PassiveNetwork net = resolve_network(source);
    const SynthesisReport rep = decompose(net, parse_perm(perm_text));
    emit(synthesis_to_json(rep).dump(2) + "\n", out_path);
    return 0;
}

int cmd_recompose(const std::string& factors_path,
                  const std::string& out_path) {
    const SynthesisReport rep = load_synthesis(factors_path);
    const PassiveNetwork net = reconstruct(rep.factors, rep.left_to_right);
    emit(network_to_json(net).dump(2) + "\n", out_path);
    return 0;
}

int cmd_sensitivity(const std::string& factors_path, int digits,
                    const RateOptions& rates, const std::string& out_path) {
    const SynthesisReport rep = load_synthesis(factors_path);
    const SqueezingReport sq =
        quantize_sensitivity(rep, digits, to_params(rates));
    emit(report_to_json(sq).dump(2) + "\n", out_path);
    return 0;
}

int cmd_validate(const std::string& source, const RateOptions& rates) {
    const PassiveNetwork net = resolve_network(source);
    const NopaParams params = to_params(rates);

    const double unitary_res =
        (net.entries.adjoint() * net.entries - CMat6::Identity())
            .cwiseAbs()
            .maxCoeff();
    const bool unitary_ok = unitary_res <= 1e-10;

    const QuadratureNetwork S = quadrature_form(net);
    const RMat12& J = symplectic_form();
    const double sympl_res =
        (S.entries * J * S.entries.transpose() - J).cwiseAbs().maxCoeff();
    const bool sympl_ok = sympl_res <= 1e-10;

    bool feas_ok = false;
    double max_re = 0.0;
    bool have_eig = false;
    try {
        const StateSpace ss = build_state_space(net, params);
        const StabilityReport rep = stability_check(ss);
        max_re = rep.max_re_eig;
        have_eig = true;
        feas_ok = rep.a_invertible && rep.max_re_eig < -1e-12;
    } catch (const IllPosedFeedback&) {
        feas_ok = false;
    }

    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", unitary_res);
    std::cout << (unitary_ok ? "PASS" : "FAIL")
              << " unitarity residual = " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.3e", sympl_res);
    std::cout << (sympl_ok ? "PASS" : "FAIL")
              << " symplectic residual = " << buf << "\n";
    std::cout << (feas_ok ? "PASS" : "FAIL") << " feasibility (well-posed, "
              << "invertible and Hurwitz drift)\n";
    if (have_eig) {
        std::snprintf(buf, sizeof(buf), "%.6e", max_re);
        std::cout << (max_re < -1e-12 ? "PASS" : "FAIL")
                  << " max Re eig(A) = " << buf << "\n";
    } else {
        std::cout << "FAIL max Re eig(A) = n/a (ill-posed feedback)\n";
    }
    const bool all_ok =
        unitary_ok && sympl_ok && feas_ok && have_eig && max_re < -1e-12;
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "EPR squeezing of a dual-NOPA network closed by a passive "
        "6-port interconnection: evaluation, optimization, synthesis"};
    app.require_subcommand(1);

    std::string source = "cfb";
    std::string out_path;
    std::string trace_path;
    std::string factors_path;
    std::string perm_text = "6,5,4,3,2,1";
    RateOptions rates;
    double omega = 0.0, psi1 = 0.0, psi2 = 0.0;
    double omega_max = 0.0;
    int points = 200;
    int digits = 6;
    OptimizerConfig cfg;

    CLI::App* eval = app.add_subcommand(
        "eval", "EPR variances at one frequency (JSON report)");
    eval->add_option("--network", source,
                     "built-in name (cfb, lm-paper) or network JSON path");
    add_rate_options(eval, rates);
    eval->add_option("--omega", omega, "angular frequency in rad/s");
    eval->add_option("--psi1", psi1, "output 1 rotation phase (rad)");
    eval->add_option("--psi2", psi2, "output 2 rotation phase (rad)");
    eval->add_option("--out", out_path, "also write the report here");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "EPR variances over [0, omega-max] (CSV)");
    sweep->add_option("--network", source,
                      "built-in name (cfb, lm-paper) or network JSON path");
    add_rate_options(sweep, rates);
    sweep->add_option("--omega-max", omega_max,
                      "top of the frequency range (rad/s)")
        ->required();
    sweep->add_option("--points", points, "number of frequencies [200]");
    sweep->add_option("--psi1", psi1, "output 1 rotation phase (rad)");
    sweep->add_option("--psi2", psi2, "output 2 rotation phase (rad)");
    sweep->add_option("--out", out_path, "also write the CSV here");

    CLI::App* opt = app.add_subcommand(
        "optimize", "minimize V(0) over the unitary network matrices");
    opt->add_option("--network,--init", source,
                    "starting point: built-in name or network JSON path");
    add_rate_options(opt, rates);
    opt->add_option("--tol", cfg.tol,
                    "stop when sqrt(<Z,Z>) drops below this [1e-3]");
    opt->add_option("--rho0", cfg.rho0, "initial line-search step [1]");
    opt->add_option("--max-iters", cfg.max_iters,
                    "outer iteration cap [10000]");
    opt->add_option("--rho-min", cfg.rho_min,
                    "step-underflow floor [1e-15]");
    opt->add_option("--out", out_path, "write the optimized network here");
    opt->add_option("--trace", trace_path, "write the iteration CSV here");

    CLI::App* dec = app.add_subcommand(
        "decompose", "factor a network into two-level devices (JSON)");
    dec->add_option("--network", source,
                    "built-in name (cfb, lm-paper) or network JSON path");
    dec->add_option("--perm", perm_text,
                    "elimination order, 6 comma-separated mode indices "
                    "[6,5,4,3,2,1]");
    dec->add_option("--out", out_path, "also write the factor list here");

    CLI::App* rec = app.add_subcommand(
        "recompose", "multiply a factor list back into a network (JSON)");
    rec->add_option("--factors", factors_path, "factor list JSON path")
        ->required();
    rec->add_option("--out", out_path, "also write the network here");

    CLI::App* sens = app.add_subcommand(
        "sensitivity",
        "re-evaluate V(0) after rounding beamsplitter coefficients");
    sens->add_option("--factors", factors_path, "factor list JSON path")
        ->required();
    sens->add_option("--digits", digits,
                     "decimal places kept for each transmission alpha")
        ->required();
    add_rate_options(sens, rates);
    sens->add_option("--out", out_path, "also write the report here");

    CLI::App* val = app.add_subcommand(
        "validate", "check unitarity, symplecticity, and stability");
    val->add_option("--network", source,
                    "built-in name (cfb, lm-paper) or network JSON path");
    add_rate_options(val, rates);

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) {
            return cmd_eval(source, rates, omega, psi1, psi2, out_path);
        }
        if (sweep->parsed()) {
            return cmd_sweep(source, rates, omega_max, points, psi1, psi2,
                             out_path);
        }
        if (opt->parsed()) {
            return cmd_optimize(source, rates, cfg, out_path, trace_path);
        }
        if (dec->parsed()) {
            return cmd_decompose(source, perm_text, out_path);
        }
        if (rec->parsed()) {
            return cmd_recompose(factors_path, out_path);
        }
        if (sens->parsed()) {
            return cmd_sensitivity(factors_path, digits, rates, out_path);
        }
        if (val->parsed()) {
            return cmd_validate(source, rates);
        }
    } catch (const IllPosedFeedback& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResonantFrequency& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InfeasibleStart& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
