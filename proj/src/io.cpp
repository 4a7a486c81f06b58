#include "archvol/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace archvol {

namespace {

using nlohmann::json;

json parse(std::string_view text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw std::invalid_argument(std::string("malformed JSON for ") + what);
    return j;
}

std::vector<double> number_array(const json& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument(std::string(what) +
                                    " must be a non-empty JSON array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number())
            throw std::invalid_argument(std::string(what) +
                                        " must contain only numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

} // namespace

std::string num17(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Generator generator_from_json(std::string_view text) {
    const json j = parse(text, "generator");
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
        throw std::invalid_argument(
            "generator spec must be an object with a \"family\" string");
    const Family family = family_from_name(j["family"].get<std::string>());
    if (family == Family::independence) {
        if (j.contains("theta"))
            throw std::invalid_argument(
                "independence takes no theta parameter");
        return Generator::independence();
    }
    if (!j.contains("theta") || !j["theta"].is_number())
        throw std::invalid_argument(
            "generator spec needs a numeric \"theta\" for this family");
    return Generator::make(family, j["theta"].get<double>());
}

namespace {

Box box_from_parsed(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument(
            "box must be a JSON array [[lower...], [upper...]]");
    return Box(number_array(j[0], "box lower"),
               number_array(j[1], "box upper"));
}

} // namespace

Box box_from_json(std::string_view text) {
    return box_from_parsed(parse(text, "box"));
}

std::vector<Box> boxes_from_json(std::string_view text) {
    const json j = parse(text, "boxes");
    if (!j.is_array())
        throw std::invalid_argument("boxes must be a JSON array of boxes");
    std::vector<Box> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(box_from_parsed(e));
    return out;
}

std::vector<double> cuts_from_json(std::string_view text) {
    return number_array(parse(text, "cuts"), "cuts");
}

std::vector<double> point_from_json(std::string_view text) {
    return number_array(parse(text, "point"), "point");
}

StepDistribution step_from_json(std::string_view text) {
    const json j = parse(text, "margin");
    if (!j.is_object() || !j.contains("jumps") || !j["jumps"].is_array())
        throw std::invalid_argument(
            "margin must be an object {\"jumps\": [[x, F], ...]}");
    std::vector<double> xs, fs;
    for (const auto& pair : j["jumps"]) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
            !pair[1].is_number())
            throw std::invalid_argument(
                "each margin jump must be a [x, F] number pair");
        xs.push_back(pair[0].get<double>());
        fs.push_back(pair[1].get<double>());
    }
    return StepDistribution(std::move(xs), std::move(fs));
}

StepDistribution step_from_csv(std::istream& in) {
    std::vector<double> xs, fs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        if (lineno == 1 && line.find_first_not_of(
                               "xF, \t\r") == std::string::npos)
            continue; // header
        std::istringstream ss(line);
        std::string xfield, ffield;
        if (!std::getline(ss, xfield, ',') || !std::getline(ss, ffield))
            throw std::invalid_argument(
                "margin CSV line " + std::to_string(lineno) +
                ": expected two comma-separated fields (x, F)");
        try {
            xs.push_back(std::stod(xfield));
            fs.push_back(std::stod(ffield));
        } catch (const std::exception&) {
            throw std::invalid_argument(
                "margin CSV line " + std::to_string(lineno) +
                ": fields must be numbers");
        }
    }
    return StepDistribution(std::move(xs), std::move(fs));
}

StepDistribution step_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open margin file " + path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        std::ostringstream buf;
        buf << in.rdbuf();
        return step_from_json(buf.str());
    }
    return step_from_csv(in);
}

std::string witness_to_json(const AxiomWitness& w) {
    std::string out = "{\"u\":" + num17(w.u) + ",\"v\":" + num17(w.v) +
                      ",\"N\":" + std::to_string(w.N) +
                      ",\"f_prev\":" + num17(w.f_prev) +
                      ",\"f_at\":" + num17(w.f_at) + "}";
    return out;
}

std::string witness_to_csv(const AxiomWitness& w) {
    return "u,v,N,f_prev,f_at\n" + num17(w.u) + "," + num17(w.v) + "," +
           std::to_string(w.N) + "," + num17(w.f_prev) + "," +
           num17(w.f_at) + "\n";
}

std::string trace_to_json(const CPowerTrace& t) {
    std::string out = "{\"u\":" + num17(t.u) + ",\"stop_reason\":\"" +
                      std::string(stop_reason_name(t.stop_reason)) +
                      "\",\"steps\":" + std::to_string(t.steps) +
                      ",\"limit_estimate\":" + num17(t.limit_estimate) +
                      ",\"checkpoints\":[";
    for (std::size_t i = 0; i < t.checkpoints.size(); ++i) {
        if (i) out += ",";
        out += "[" + std::to_string(t.checkpoints[i].first) + "," +
               num17(t.checkpoints[i].second) + "]";
    }
    out += "]}";
    return out;
}

std::string trace_to_csv(const CPowerTrace& t) {
    std::string out = "n,f_n\n";
    for (const auto& [n, f] : t.checkpoints)
        out += std::to_string(n) + "," + num17(f) + "\n";
    return out;
}

std::string violation_to_json(const VolumeViolation& v) {
    // infinite endpoints (margin boxes open below) are quoted: bare
    // inf is not valid JSON
    auto jnum = [](double x) {
        return std::isfinite(x) ? num17(x) : "\"" + num17(x) + "\"";
    };
    std::string out = "{\"box\":[[";
    for (std::size_t k = 0; k < v.box.lower.size(); ++k) {
        if (k) out += ",";
        out += jnum(v.box.lower[k]);
    }
    out += "],[";
    for (std::size_t k = 0; k < v.box.upper.size(); ++k) {
        if (k) out += ",";
        out += jnum(v.box.upper[k]);
    }
    out += "]],\"volume\":" + num17(v.volume) + "}";
    return out;
}

void write_pmf_csv(std::ostream& out, const JointGrid& grid) {
    const std::size_t d = grid.shape.size();
    for (std::size_t k = 0; k < d; ++k) out << "i" << k << ",";
    for (std::size_t k = 0; k < d; ++k) out << "x" << k << ",";
    out << "prob\n";
    std::vector<std::size_t> index(d, 0);
    for (std::size_t flat = 0; flat < grid.cells.size(); ++flat) {
        for (std::size_t k = 0; k < d; ++k) out << index[k] << ",";
        for (std::size_t k = 0; k < d; ++k)
            out << num17(grid.margins[k].jump_points()[index[k]]) << ",";
        out << num17(grid.cells[flat]) << "\n";
        for (std::size_t k = d; k-- > 0;) {
            if (++index[k] < grid.shape[k]) break;
            index[k] = 0;
        }
    }
}

std::string pmf_summary_json(const JointGrid& grid,
                             const CertReport& report) {
    return "{\"total_mass\":" + num17(grid.total_mass()) +
           ",\"min_cell\":" + num17(grid.min_cell()) + ",\"certified\":" +
           (report.pass() ? "true" : "false") + "}";
}

} // namespace archvol
