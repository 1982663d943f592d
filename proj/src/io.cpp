#include "eprnet/io.hpp"

#include "eprnet/errors.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace eprnet {

using nlohmann::json;

double round_sig15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return std::strtod(buf, nullptr);
}

double round_db3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return std::strtod(buf, nullptr);
}

namespace {

json complex_to_json(const Complex& z) {
    return json::array({round_sig15(z.real()), round_sig15(z.imag())});
}

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
        !j[1].is_number()) {
        throw ParseError("complex entries must be [re, im] number pairs");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

template <typename Mat>
json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

template <typename Mat>
Mat matrix_from_json(const json& j) {
    Mat m;
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != m.rows()) {
        throw ParseError("matrix must be an array of " +
                         std::to_string(m.rows()) + " rows");
    }
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() ||
            static_cast<Eigen::Index>(row.size()) != m.cols()) {
            throw ParseError("matrix rows must have " +
                             std::to_string(m.cols()) + " entries");
        }
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
        }
    }
    return m;
}

} // namespace

json network_to_json(const PassiveNetwork& net) {
    json j;
    j["label"] = net.label;
    j["entries"] = matrix_to_json(net.entries);
    return j;
}

PassiveNetwork network_from_json(const json& j) {
    if (!j.is_object() || !j.contains("entries")) {
        throw ParseError("network JSON must be an object with an "
                         "\"entries\" matrix");
    }
    const CMat6 m = matrix_from_json<CMat6>(j.at("entries"));
    std::string label;
    if (j.contains("label") && j.at("label").is_string()) {
        label = j.at("label").get<std::string>();
    }
    return make_network(m, label);
}

json report_to_json(const SqueezingReport& rep) {
    json j;
    j["omega"] = round_sig15(rep.omega);
    j["v_plus"] = round_sig15(rep.v_plus);
    j["v_minus"] = round_sig15(rep.v_minus);
    j["v_total"] = round_sig15(rep.v_total);
    j["db"] = round_db3(rep.db);
    j["entangled"] = rep.entangled;
    j["psi1"] = round_sig15(rep.psi1);
    j["psi2"] = round_sig15(rep.psi2);
    return j;
}

SqueezingReport report_from_json(const json& j) {
    SqueezingReport rep;
    try {
        rep.omega = j.at("omega").get<double>();
        rep.v_plus = j.at("v_plus").get<double>();
        rep.v_minus = j.at("v_minus").get<double>();
        rep.v_total = j.at("v_total").get<double>();
        rep.db = j.at("db").get<double>();
        rep.entangled = j.at("entangled").get<bool>();
        rep.psi1 = j.at("psi1").get<double>();
        rep.psi2 = j.at("psi2").get<double>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad squeezing report JSON: ") +
                         e.what());
    }
    return rep;
}

json synthesis_to_json(const SynthesisReport& rep) {
    json factors = json::array();
    for (const TwoLevelFactor& f : rep.factors) {
        json jf;
        jf["i"] = f.i;
        jf["j"] = f.j;
        jf["block"] = matrix_to_json(f.block);
        jf["kind"] = to_string(f.kind);
        if (f.alpha) {
            jf["alpha"] = round_sig15(*f.alpha);
        }
        if (f.beta) {
            jf["beta"] = round_sig15(*f.beta);
        }
        factors.push_back(std::move(jf));
    }
    json j;
    j["order"] = rep.left_to_right ? "left-to-right" : "right-to-left";
    j["factors"] = std::move(factors);
    j["reconstruction_error"] = round_sig15(rep.reconstruction_error);
    return j;
}

SynthesisReport synthesis_from_json(const json& j) {
    SynthesisReport rep;
    if (!j.is_object() || !j.contains("factors") ||
        !j.at("factors").is_array()) {
        throw ParseError("factor JSON must be an object with a \"factors\" "
                         "array");
    }
    const std::string order =
        j.value("order", std::string("left-to-right"));
    if (order == "left-to-right") {
        rep.left_to_right = true;
    } else if (order == "right-to-left") {
        rep.left_to_right = false;
    } else {
        throw ParseError("order must be \"left-to-right\" or "
                         "\"right-to-left\"");
    }
    for (const json& jf : j.at("factors")) {
        TwoLevelFactor f;
        try {
            f.i = jf.at("i").get<int>();
            f.j = jf.at("j").get<int>();
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad factor JSON: ") + e.what());
        }
        if (f.i < 1 || f.j < 1 || f.i > 6 || f.j > 6 || f.i >= f.j) {
            throw ParseError("factor indices must satisfy 1 <= i < j <= 6");
        }
        f.block = matrix_from_json<CMat2>(jf.at("block"));
        f.kind = jf.contains("kind")
                     ? factor_kind_from_string(
                           jf.at("kind").get<std::string>())
                     : classify(f.block);
        if (jf.contains("alpha")) {
            f.alpha = jf.at("alpha").get<double>();
        }
        if (jf.contains("beta")) {
            f.beta = jf.at("beta").get<double>();
        }
        rep.factors.push_back(std::move(f));
    }
    rep.reconstruction_error = j.value("reconstruction_error", 0.0);
    return rep;
}

json optimization_summary_to_json(const OptimizationResult& res) {
    json j;
    j["status"] = to_string(res.status);
    j["iterations"] =
        res.trace.empty() ? 0 : res.trace.back().iter;
    if (!res.trace.empty()) {
        const IterationRecord& last = res.trace.back();
        j["v0"] = round_sig15(last.v0);
        j["db"] = round_db3(last.db);
        j["z_norm"] = round_sig15(last.z_norm);
        j["rho"] = round_sig15(last.rho);
    }
    return j;
}

namespace {

std::string format_sig15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string format_db3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

} // namespace

std::string sweep_to_csv(const std::vector<SqueezingReport>& sweep) {
    std::ostringstream out;
    out << "omega_rad_s,v_plus,v_minus,v_total,db,entangled\n";
    for (const SqueezingReport& rep : sweep) {
        if (rep.resonant) {
            continue;
        }
        out << format_sig15(rep.omega) << ',' << format_sig15(rep.v_plus)
            << ',' << format_sig15(rep.v_minus) << ','
            << format_sig15(rep.v_total) << ',' << format_db3(rep.db) << ','
            << (rep.entangled ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string trace_to_csv(const std::vector<IterationRecord>& trace) {
    std::ostringstream out;
    out << "iter,v0,db,z_norm,rho,feasibility_rejections\n";
    for (const IterationRecord& rec : trace) {
        out << rec.iter << ',' << format_sig15(rec.v0) << ','
            << format_db3(rec.db) << ',' << format_sig15(rec.z_norm) << ','
            << format_sig15(rec.rho) << ',' << rec.feasibility_rejections
            << '\n';
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot open for writing: " + path);
    }
    out << content;
    if (!out) {
        throw ParseError("write failed: " + path);
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

json parse_json_file(const std::string& path) {
    const std::string text = read_text_file(path);
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
        throw ParseError("invalid JSON in " + path);
    }
    return j;
}

} // namespace

void save_network(const PassiveNetwork& net, const std::string& path) {
    write_text_file(path, network_to_json(net).dump(2) + "\n");
}

PassiveNetwork load_network(const std::string& path) {
    return network_from_json(parse_json_file(path));
}

void save_synthesis(const SynthesisReport& rep, const std::string& path) {
    write_text_file(path, synthesis_to_json(rep).dump(2) + "\n");
}

SynthesisReport load_synthesis(const std::string& path) {
    return synthesis_from_json(parse_json_file(path));
}

PassiveNetwork resolve_network(const std::string& source) {
    if (source == "cfb") {
        return cfb_network();
    }
    if (source == "lm-paper") {
        return lm_paper_network();
    }
    return load_network(source);
}

} // namespace eprnet
