#pragma once
// JSON body files, estimate records, and CSV helpers shared by the CLI and
// the tests. Polygons are canonicalized on load; all emitters are
// deterministic for identical inputs.

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "body.hpp"
#include "moments.hpp"

namespace randvol {

using ordered_json = nlohmann::ordered_json;

inline ordered_json body_to_json(const Body& K) {
    ordered_json j;
    if (auto* P = std::get_if<Polygon2D>(&K)) {
        j["type"] = "polygon";
        auto& arr = j["vertices"] = ordered_json::array();
        for (const V2& p : P->v) arr.push_back({p.x, p.y});
    } else if (auto* B = std::get_if<Ball>(&K)) {
        j["type"] = "ball";
        j["d"] = B->d;
        j["r"] = B->r;
        j["c"] = B->c;
    } else if (auto* E = std::get_if<Ellipsoid>(&K)) {
        j["type"] = "ellipsoid";
        j["d"] = E->d;
        auto& F = j["F"] = ordered_json::array();
        for (int r = 0; r < E->d; ++r) {
            ordered_json row = ordered_json::array();
            for (int c = 0; c < E->d; ++c) row.push_back(E->F[r][c]);
            F.push_back(row);
        }
        j["c"] = E->c;
    } else if (auto* S = std::get_if<Simplex>(&K)) {
        j["type"] = "simplex";
        j["d"] = S->d;
        auto& arr = j["vertices"] = ordered_json::array();
        for (const auto& v : S->v) arr.push_back(v);
    }
    return j;
}

inline Body body_from_json(const ordered_json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "polygon") {
        Poly v;
        for (const auto& p : j.at("vertices")) v.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        return Polygon2D{canonical_polygon(v)};
    }
    if (type == "ball") {
        Ball B;
        B.d = j.at("d").get<int>();
        B.r = j.value("r", 1.0);
        B.c.assign(B.d, 0.0);
        if (j.contains("c")) B.c = j.at("c").get<VecD>();
        if ((int)B.c.size() != B.d) throw std::invalid_argument("ball: center dimension mismatch");
        return B;
    }
    if (type == "ellipsoid") {
        Ellipsoid E;
        E.d = j.at("d").get<int>();
        E.F.assign(E.d, VecD(E.d, 0.0));
        const auto& F = j.at("F");
        for (int r = 0; r < E.d; ++r)
            for (int c = 0; c < E.d; ++c) E.F[r][c] = F.at(r).at(c).get<double>();
        E.c.assign(E.d, 0.0);
        if (j.contains("c")) E.c = j.at("c").get<VecD>();
        return E;
    }
    if (type == "simplex") {
        Simplex S;
        S.d = j.at("d").get<int>();
        for (const auto& v : j.at("vertices")) S.v.push_back(v.get<VecD>());
        if ((int)S.v.size() != S.d + 1)
            throw std::invalid_argument("simplex: needs d+1 vertices");
        return S;
    }
    throw std::invalid_argument("unknown body type: " + type);
}

inline Body load_body(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open body file: " + path);
    ordered_json j;
    in >> j;
    return body_from_json(j);
}

inline void save_body(const std::string& path, const Body& K,
                      const std::string& derived_from = "") {
    ordered_json j = body_to_json(K);
    if (!derived_from.empty()) j["derived_from"] = derived_from;
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write body file: " + path);
    out << j.dump(2) << "\n";
}

inline std::string kind_name(Kind k) {
    switch (k) {
        case Kind::full: return "full";
        case Kind::fixed_point: return "fixed";
        default: return "centroid";
    }
}

inline ordered_json estimate_to_json(const MomentEstimate& E, bool timing = false) {
    ordered_json j;
    j["functional"] = kind_name(E.spec.kind);
    j["p"] = E.spec.p;
    if (E.spec.kind == Kind::full) j["n"] = E.spec.n;
    if (E.spec.kind == Kind::fixed_point) j["x"] = E.spec.x;
    j["value"] = E.value;
    j["stderr"] = E.stderr_;
    j["samples"] = E.samples;
    j["seed"] = E.seed;
    j["seconds"] = timing ? E.seconds : 0.0;
    return j;
}

inline std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct CsvWriter {
    std::ostringstream os;
    void header(const std::vector<std::string>& cols) {
        for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
        os << "\n";
    }
    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        os << "\n";
    }
    std::string str() const { return os.str(); }
};

}  // namespace randvol
