#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <cmath>

#include "frz/composition.hpp"
#include "frz/constants.hpp"
#include "frz/fields.hpp"
#include "frz/measures.hpp"
#include "frz/minimize.hpp"

namespace frz {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// DiscreteMeasure: CSV with columns x_1..x_n,weight (header mandatory)
// ---------------------------------------------------------------------------

inline std::string measure_to_csv(const DiscreteMeasure& mu) {
    std::string out;
    for (int d = 1; d <= mu.n; ++d) out += "x_" + std::to_string(d) + ",";
    out += "weight\n";
    for (std::size_t i = 0; i < mu.count(); ++i) {
        auto a = mu.atom(i);
        for (int d = 0; d < mu.n; ++d) out += format_double(a[static_cast<std::size_t>(d)]) + ",";
        out += format_double(mu.weights[i]) + "\n";
    }
    return out;
}

inline DiscreteMeasure measure_from_csv(const std::string& csv) {
    std::stringstream ss(csv);
    std::string line;
    if (!std::getline(ss, line)) throw std::invalid_argument("measure CSV: missing header");
    auto header = detail::split_csv_line(line);
    if (header.size() < 2 || header.back() != "weight")
        throw std::invalid_argument("measure CSV: header must be x_1..x_n,weight");
    DiscreteMeasure mu;
    mu.n = static_cast<int>(header.size()) - 1;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw std::invalid_argument("measure CSV: row width mismatch");
        for (int d = 0; d < mu.n; ++d) mu.atoms.push_back(std::stod(cells[static_cast<std::size_t>(d)]));
        mu.weights.push_back(std::stod(cells.back()));
    }
    mu.validate();
    return mu;
}

// ---------------------------------------------------------------------------
// SampledField: CSV with columns t_1..t_k,x_1..x_n + JSON metadata sidecar
// ---------------------------------------------------------------------------

inline std::string field_to_csv(const SampledField& f) {
    std::string out;
    for (int d = 1; d <= f.k; ++d) out += "t_" + std::to_string(d) + ",";
    for (int d = 1; d <= f.n; ++d) {
        out += "x_" + std::to_string(d);
        out += (d == f.n) ? "\n" : ",";
    }
    std::vector<double> t(static_cast<std::size_t>(f.k));
    for (std::size_t i = 0; i < f.grid_size(); ++i) {
        f.parameter(i, t);
        for (double v : t) out += format_double(v) + ",";
        auto x = f.value(i);
        for (int d = 0; d < f.n; ++d) {
            out += format_double(x[static_cast<std::size_t>(d)]);
            out += (d + 1 == f.n) ? "\n" : ",";
        }
    }
    return out;
}

inline nlohmann::json field_metadata(const SampledField& f, double H, std::uint64_t seed,
                                     const std::string& backend) {
    return nlohmann::json{{"k", f.k},       {"n", f.n},           {"m", f.m},
                          {"H", H},         {"seed", seed},       {"generator_backend", backend},
                          {"origin_pinned", f.origin_pinned}};
}

inline SampledField field_from_csv(const std::string& csv, int k, int n, int m) {
    SampledField f;
    f.k = k;
    f.n = n;
    f.m = m;
    f.origin_pinned = false;
    f.values.reserve(f.grid_size() * static_cast<std::size_t>(n));
    std::stringstream ss(csv);
    std::string line;
    if (!std::getline(ss, line)) throw std::invalid_argument("field CSV: missing header");
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        auto cells = detail::split_csv_line(line);
        if (cells.size() != static_cast<std::size_t>(k + n))
            throw std::invalid_argument("field CSV: row width mismatch");
        for (int d = 0; d < n; ++d)
            f.values.push_back(std::stod(cells[static_cast<std::size_t>(k + d)]));
    }
    if (f.values.size() != f.grid_size() * static_cast<std::size_t>(n))
        throw std::invalid_argument("field CSV: row count does not match m^k");
    bool zero0 = true;
    for (int d = 0; d < n; ++d) zero0 = zero0 && f.values[static_cast<std::size_t>(d)] == 0.0;
    f.origin_pinned = zero0;
    f.validate();
    return f;
}

// ---------------------------------------------------------------------------
// BVGridFunction: grid CSV (cell indices + value) + box metadata JSON
// ---------------------------------------------------------------------------

inline std::string bv_to_csv(const BVGridFunction& phi) {
    std::string out = (phi.n == 1) ? "ix,value\n" : "ix,iy,value\n";
    if (phi.n == 1) {
        for (int ix = 0; ix < phi.cells[0]; ++ix)
            out += std::to_string(ix) + "," + format_double(phi.value_at_cell(ix)) + "\n";
    } else {
        for (int ix = 0; ix < phi.cells[0]; ++ix)
            for (int iy = 0; iy < phi.cells[1]; ++iy)
                out += std::to_string(ix) + "," + std::to_string(iy) + "," +
                       format_double(phi.value_at_cell(ix, iy)) + "\n";
    }
    return out;
}

inline nlohmann::json bv_metadata(const BVGridFunction& phi) {
    nlohmann::json j{{"n", phi.n}, {"cells", {phi.cells[0], phi.cells[1]}},
                     {"lo", {phi.lo[0], phi.lo[1]}}, {"hi", {phi.hi[0], phi.hi[1]}}};
    return j;
}

inline BVGridFunction bv_from_csv(const std::string& csv, const nlohmann::json& meta) {
    BVGridFunction phi;
    phi.n = meta.at("n").get<int>();
    phi.cells = {meta.at("cells")[0].get<int>(), meta.at("cells")[1].get<int>()};
    phi.lo = {meta.at("lo")[0].get<double>(), meta.at("lo")[1].get<double>()};
    phi.hi = {meta.at("hi")[0].get<double>(), meta.at("hi")[1].get<double>()};
    std::size_t total = static_cast<std::size_t>(phi.cells[0]) *
                        (phi.n == 2 ? static_cast<std::size_t>(phi.cells[1]) : 1);
    phi.values.assign(total, 0.0);
    std::stringstream ss(csv);
    std::string line;
    if (!std::getline(ss, line)) throw std::invalid_argument("bv CSV: missing header");
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        auto cells = detail::split_csv_line(line);
        int ix = std::stoi(cells[0]);
        if (phi.n == 1)
            phi.values[static_cast<std::size_t>(ix)] = std::stod(cells[1]);
        else
            phi.values[static_cast<std::size_t>(ix) * static_cast<std::size_t>(phi.cells[1]) +
                       static_cast<std::size_t>(std::stoi(cells[1]))] = std::stod(cells[2]);
    }
    phi.validate();
    return phi;
}

// ---------------------------------------------------------------------------
// MinimizerResult / reports
// ---------------------------------------------------------------------------

inline nlohmann::json constraint_report_json(const ConstraintReport& rep) {
    nlohmann::json j{{"holder_seminorm", rep.holder_seminorm},
                     {"endpoint_error", rep.endpoint_error},
                     {"origin_error", rep.origin_error}};
    if (std::isfinite(rep.potential_sup) || rep.potential_sup == kInf)
        j["potential_sup"] = std::isfinite(rep.potential_sup) ? nlohmann::json(rep.potential_sup)
                                                              : nlohmann::json("inf");
    return j;
}

inline nlohmann::json minimizer_result_json(const MinimizerResult& res) {
    return nlohmann::json{{"objective_value", res.objective_value},
                          {"constraint_report", constraint_report_json(res.constraint_report)},
                          {"iterations", res.trace.size()},
                          {"seed", res.seed}};
}

inline std::string trace_to_csv(const std::vector<TracePoint>& trace) {
    std::string out = "iteration,objective,max_violation\n";
    for (const auto& t : trace)
        out += std::to_string(t.iteration) + "," + format_double(t.objective) + "," +
               format_double(t.max_violation) + "\n";
    return out;
}

inline nlohmann::json constant_report_json(const ConstantReport& rep) {
    nlohmann::json j{{"name", rep.name},
                     {"method", rep.method},
                     {"error_estimate", rep.error_estimate}};
    j["value"] = std::isfinite(rep.value) ? nlohmann::json(rep.value) : nlohmann::json("inf");
    j["inputs"] = rep.inputs;
    if (!rep.violated.empty()) j["violated"] = rep.violated;
    return j;
}

}  // namespace frz
