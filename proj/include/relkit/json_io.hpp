#pragma once

// Serialization glue shared by the command-line front end and the acceptance
// harness: canonical CSV tables for figure data, JSON region files for the
// grid lattice, and JSON sample arrays for worldlines and hodographs. All
// formatting is locale-independent and byte-stable for identical inputs.

#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "hyperbolic.hpp"
#include "lattice.hpp"
#include "lorentz.hpp"
#include "rigid.hpp"
#include "velocity.hpp"

namespace relkit {

// Shortest stable decimal form used in CSV artifacts.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const {
        std::string out;
        auto join = [&out](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) out += ',';
                out += cells[i];
            }
            out += '\n';
        };
        join(header);
        for (const auto& r : rows) join(r);
        return out;
    }
};

// Vector table behind the perpendicular-addition figure: the two inputs,
// their naive euclidean sum, and both orderings of the relativistic
// composition, whose gap is the Thomas rotation.
inline CsvTable composition_figure_table(const Vec3& beta1, const Vec3& beta2) {
    if (!in_unit_ball(beta1) || !in_unit_ball(beta2))
        throw std::domain_error("composition_figure_table: velocities must lie in the unit ball");
    CsvTable t;
    t.header = {"label", "x", "y", "z"};
    auto push = [&t](const char* label, const Vec3& v) {
        t.rows.push_back({label, format_double(v[0]), format_double(v[1]),
                          format_double(v[2])});
    };
    push("beta1", beta1);
    push("beta2", beta2);
    push("classical_sum", beta1 + beta2);
    push("star12", star(beta1, beta2));
    push("star21", star(beta2, beta1));
    return t;
}

// Rotation angle as a function of the enclosed angle at fixed speeds.
inline CsvTable rotation_angle_table(double gamma1, double gamma2, int samples = 64) {
    if (samples < 2)
        throw std::invalid_argument("rotation_angle_table: need at least 2 samples");
    CsvTable t;
    t.header = {"phi", "theta"};
    for (int k = 0; k <= samples; ++k) {
        const double phi = M_PI * k / samples;
        t.rows.push_back({format_double(phi),
                          format_double(thomas_angle(gamma1, gamma2, phi))});
    }
    return t;
}

inline nlohmann::json region_to_json(const GridRegion& r) {
    nlohmann::json j;
    j["box"]["n"] = r.box.dimension();
    for (const auto& ax : r.box.extents)
        j["box"]["extents"].push_back({ax[0], ax[1]});
    j["points"] = nlohmann::json::array();
    for (const auto& p : r.points) {
        nlohmann::json row = nlohmann::json::array();
        for (long long x : p) row.push_back(x);
        j["points"].push_back(row);
    }
    return j;
}

inline GridBox box_from_json(const nlohmann::json& j) {
    if (!j.contains("extents") || !j["extents"].is_array())
        throw std::invalid_argument("box_from_json: missing extents");
    std::vector<std::array<long long, 2>> extents;
    for (const auto& ax : j["extents"]) {
        if (!ax.is_array() || ax.size() != 2)
            throw std::invalid_argument("box_from_json: each extent is [lo, hi]");
        extents.push_back({ax[0].get<long long>(), ax[1].get<long long>()});
    }
    GridBox box(extents);
    if (j.contains("n") && j["n"].get<int>() != box.dimension())
        throw std::invalid_argument("box_from_json: dimension disagrees with extents");
    return box;
}

// Accepts the explicit point-list form {"box":…, "points": [[t,x,…],…]} and
// the constructive form {"box":…, "diamond": {"p":…, "q":…, "closed": bool}}.
inline GridRegion region_from_json(const nlohmann::json& j) {
    if (!j.contains("box"))
        throw std::invalid_argument("region_from_json: missing box");
    GridBox box = box_from_json(j["box"]);
    if (j.contains("diamond")) {
        const auto& d = j["diamond"];
        auto point = [&box](const nlohmann::json& arr) {
            if (!arr.is_array() || static_cast<int>(arr.size()) != box.dimension())
                throw std::invalid_argument("region_from_json: point arity mismatch");
            GridPoint p(arr.size());
            for (std::size_t i = 0; i < arr.size(); ++i) p[i] = arr[i].get<long long>();
            return p;
        };
        return diamond(box, point(d.at("p")), point(d.at("q")),
                       d.value("closed", true));
    }
    if (!j.contains("points"))
        throw std::invalid_argument("region_from_json: need points or diamond");
    std::vector<GridPoint> pts;
    for (const auto& row : j["points"]) {
        GridPoint p(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) p[i] = row[i].get<long long>();
        pts.push_back(std::move(p));
    }
    return GridRegion(std::move(box), std::move(pts));
}

// {"c": …, "samples": [[tau, t, x, y, z], …]} -> spline-backed worldline.
inline WorldLine worldline_samples_from_json(const nlohmann::json& j) {
    const double c = j.value("c", 1.0);
    if (!j.contains("samples"))
        throw std::invalid_argument("worldline_samples_from_json: missing samples");
    std::vector<double> taus;
    std::vector<Vec4> positions;
    for (const auto& row : j["samples"]) {
        if (!row.is_array() || row.size() != 5)
            throw std::invalid_argument(
                "worldline_samples_from_json: each sample is [tau, t, x, y, z]");
        taus.push_back(row[0].get<double>());
        positions.emplace_back(row[1].get<double>(), row[2].get<double>(),
                               row[3].get<double>(), row[4].get<double>());
    }
    return worldline_from_samples(taus, positions, c);
}

// {"c": …, "samples": [[tau, bx, by, bz], …]} -> velocity-space loop.
inline Hodograph hodograph_from_json(const nlohmann::json& j) {
    Hodograph h;
    h.c = j.value("c", 1.0);
    if (!j.contains("samples"))
        throw std::invalid_argument("hodograph_from_json: missing samples");
    for (const auto& row : j["samples"]) {
        if (!row.is_array() || row.size() != 4)
            throw std::invalid_argument(
                "hodograph_from_json: each sample is [tau, bx, by, bz]");
        h.tau.push_back(row[0].get<double>());
        h.beta.emplace_back(row[1].get<double>(), row[2].get<double>(),
                            row[3].get<double>());
    }
    return h;
}

}  // namespace relkit
