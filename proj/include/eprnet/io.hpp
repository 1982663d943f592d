// Serialization: JSON formats for networks, squeezing reports, and factor
// lists; CSV formats for sweeps and optimizer traces. All numeric output
// is deterministic: 15 significant digits for raw quantities, 3 decimals
// for dB values.
#pragma once

#include "eprnet/network.hpp"
#include "eprnet/optimizer.hpp"
#include "eprnet/spectra.hpp"
#include "eprnet/synthesis.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace eprnet {

// Rounds through a 15-significant-digit decimal representation, so the
// value serializes with at most 15 significant digits.
double round_sig15(double v);
// Rounds to 3 decimal places (dB print precision).
double round_db3(double v);

nlohmann::json network_to_json(const PassiveNetwork& net);
PassiveNetwork network_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const SqueezingReport& rep);
SqueezingReport report_from_json(const nlohmann::json& j);

nlohmann::json synthesis_to_json(const SynthesisReport& rep);
SynthesisReport synthesis_from_json(const nlohmann::json& j);

nlohmann::json optimization_summary_to_json(const OptimizationResult& res);

// CSV with header omega_rad_s,v_plus,v_minus,v_total,db,entangled.
// Rows flagged resonant are skipped.
std::string sweep_to_csv(const std::vector<SqueezingReport>& sweep);

// CSV with header iter,v0,db,z_norm,rho,feasibility_rejections.
std::string trace_to_csv(const std::vector<IterationRecord>& trace);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path); // throws ParseError

void save_network(const PassiveNetwork& net, const std::string& path);
PassiveNetwork load_network(const std::string& path);

void save_synthesis(const SynthesisReport& rep, const std::string& path);
SynthesisReport load_synthesis(const std::string& path);

// Resolves a network source: the built-in names "cfb" and "lm-paper", or
// a path to a network JSON file.
PassiveNetwork resolve_network(const std::string& source);

} // namespace eprnet
