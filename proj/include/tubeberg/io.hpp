#pragma once

// JSON and CSV plumbing: points as [[re, im], ...], measure / lattice / grid
// documents, report serialisation and the run manifest.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tubeberg/errors.hpp"
#include "tubeberg/geometry.hpp"
#include "tubeberg/kernel.hpp"
#include "tubeberg/lattice.hpp"
#include "tubeberg/measures.hpp"
#include "tubeberg/sampling.hpp"

namespace tubeberg::io {

using json = nlohmann::json;

#ifndef TUBEBERG_VERSION
#define TUBEBERG_VERSION "0.0.0"
#endif

inline constexpr const char* kVersion = TUBEBERG_VERSION;

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + path + "'");
}

inline void write_json_file(const std::string& path, const json& doc) { write_text_file(path, doc.dump(2) + "\n"); }

inline json complex_to_json(cplx c) { return json::array({c.real(), c.imag()}); }

inline cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw FormatError("expected a [re, im] pair, got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json point_to_json(const TubePoint& z) {
    json out = json::array();
    for (const auto& c : z.coords()) out.push_back(complex_to_json(c));
    return out;
}

inline CVector vector_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw FormatError("expected a non-empty array of [re, im] pairs");
    CVector v;
    v.reserve(j.size());
    for (const auto& c : j) v.push_back(complex_from_json(c));
    return v;
}

/// Parses a point and checks it lies in T_B (DomainError otherwise).
inline TubePoint point_from_json(const json& j, std::size_t n) {
    CVector v = vector_from_json(j);
    if (v.size() != n) {
        throw FormatError("point has " + std::to_string(v.size()) + " coordinates, expected " + std::to_string(n));
    }
    return TubePoint(std::move(v));
}

namespace detail {

inline const json& field(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    return doc.at(key);
}

inline double number(const json& doc, const char* key) {
    const json& v = field(doc, key);
    if (!v.is_number()) throw FormatError(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

inline std::size_t dimension(const json& doc) {
    const json& v = field(doc, "n");
    if (!v.is_number_integer() || v.get<long long>() < 1) throw FormatError("field 'n' must be a positive integer");
    return v.get<std::size_t>();
}

} // namespace detail

struct MeasureDocument {
    KernelParams kp;
    AtomicMeasure mu{1};
};

/// {"alpha": a, "n": n, "atoms": [{"point": [[re, im], ...], "mass": m}, ...]}
inline MeasureDocument load_measure(const json& doc) {
    const std::size_t n = detail::dimension(doc);
    const double alpha = detail::number(doc, "alpha");
    MeasureDocument out{KernelParams(n, alpha), AtomicMeasure(n)};
    const json& atoms = detail::field(doc, "atoms");
    if (!atoms.is_array()) throw FormatError("field 'atoms' must be an array");
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const json& a = atoms[k];
        try {
            out.mu.add(point_from_json(detail::field(a, "point"), n), detail::number(a, "mass"));
        } catch (const DomainError& e) {
            throw DomainError("atom " + std::to_string(k) + ": " + e.what());
        } catch (const FormatError& e) {
            throw FormatError("atom " + std::to_string(k) + ": " + e.what());
        }
    }
    return out;
}

inline json measure_to_json(const AtomicMeasure& mu, const KernelParams& kp) {
    json atoms = json::array();
    for (const auto& a : mu.atoms()) atoms.push_back({{"point", point_to_json(a.point)}, {"mass", a.mass}});
    return {{"alpha", kp.alpha}, {"n", kp.n}, {"atoms", std::move(atoms)}};
}

inline json lattice_to_json(const Lattice& l) {
    json centers = json::array();
    for (const auto& c : l.centers) centers.push_back(point_to_json(c));
    return {{"schema", "tubeberg.lattice/1"}, {"n", l.n},          {"r", l.r}, {"epsilon", l.region.epsilon},
            {"centers", std::move(centers)},  {"empirical_N", l.empirical_N}};
}

inline Lattice load_lattice(const json& doc) {
    Lattice l;
    l.r = detail::number(doc, "r");
    l.region = RegionSpec(detail::number(doc, "epsilon"));
    const json& centers = detail::field(doc, "centers");
    if (!centers.is_array()) throw FormatError("field 'centers' must be an array");
    if (doc.contains("n")) {
        l.n = detail::dimension(doc);
    } else if (!centers.empty()) {
        l.n = vector_from_json(centers[0]).size();
    }
    for (const auto& c : centers) l.centers.push_back(point_from_json(c, l.n));
    if (doc.contains("empirical_N")) l.empirical_N = doc.at("empirical_N").get<int>();
    return l;
}

/// Either {"n": n, "points": [...]} or a bare array of points of dimension n.
inline std::vector<TubePoint> load_grid(const json& doc, std::size_t n) {
    const json& pts = doc.is_array() ? doc : detail::field(doc, "points");
    if (!pts.is_array()) throw FormatError("grid points must be an array");
    if (doc.is_object() && doc.contains("n") && detail::dimension(doc) != n) {
        throw FormatError("grid dimension does not match the measure");
    }
    std::vector<TubePoint> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(point_from_json(p, n));
    return out;
}

inline json estimate_to_json(const IntegralEstimate& e) {
    return {{"value", complex_to_json(e.value)},
            {"stderr", complex_to_json(e.std_error)},
            {"samples", e.samples},
            {"skipped", e.skipped},
            {"max_term_share", e.max_term_share},
            {"heavy_tail", e.heavy_tail}};
}

inline json carleson_to_json(const CarlesonReport& r) {
    return {{"sup_berezin", r.sup_berezin},
            {"sup_averaging", r.sup_averaging},
            {"sup_condition2", r.sup_condition2},
            {"argmax_berezin", r.argmax_berezin},
            {"argmax_averaging", r.argmax_averaging},
            {"argmax_condition2", r.argmax_condition2},
            {"lattice_ratios", r.lattice_sups},
            {"sup_lattice", r.sup_lattice},
            {"scope", {{"grid_size", r.grid_size}, {"lattice_size", r.lattice_size}, {"r", r.r}, {"epsilon", r.epsilon}}}};
}

inline json profile_to_json(const std::vector<ProfilePoint>& pts) {
    json out = json::array();
    for (const auto& p : pts) out.push_back(json::array({p.t, p.value}));
    return out;
}

inline json vanishing_to_json(const VanishingProfile& v) {
    return {{"toward_boundary", profile_to_json(v.toward_boundary)},
            {"toward_infinity", profile_to_json(v.toward_infinity)},
            {"lattice", profile_to_json(v.lattice)}};
}

/// Describes how a report was produced. Only `timing` varies between identical reruns.
struct RunManifest {
    std::string command;
    json parameters = json::object();
    std::uint64_t seed = 0;
    double seconds = 0.0;

    json to_json() const {
        return {{"command", command},
                {"parameters", parameters},
                {"seed", seed},
                {"versions", {{"tubeberg", kVersion}, {"json", "nlohmann 3.11.3"}, {"cli", "CLI11"}}},
                {"timing", {{"seconds", seconds}}}};
    }
};

inline json with_manifest(json payload, const std::string& schema, const RunManifest& m) {
    payload["schema"] = schema;
    payload["manifest"] = m.to_json();
    return payload;
}

inline std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

/// One row per center: index, then re/im of every coordinate, then rho.
inline std::string centers_csv(const Lattice& l) {
    std::ostringstream out;
    out << "index";
    for (std::size_t k = 0; k < l.n; ++k) out << ",re" << k + 1 << ",im" << k + 1;
    out << ",rho\n";
    for (std::size_t j = 0; j < l.centers.size(); ++j) {
        out << j;
        for (const auto& c : l.centers[j].coords()) out << ',' << fmt(c.real()) << ',' << fmt(c.imag());
        out << ',' << fmt(l.centers[j].rho()) << '\n';
    }
    return out.str();
}

inline std::string eigenvalues_csv(const std::vector<double>& ev) {
    std::ostringstream out;
    out << "index,eigenvalue\n";
    for (std::size_t j = 0; j < ev.size(); ++j) out << j << ',' << fmt(ev[j]) << '\n';
    return out.str();
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace tubeberg::io
