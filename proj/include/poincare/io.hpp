#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "poincare/pipeline.hpp"

namespace poincare::io {

using json = nlohmann::ordered_json;

inline json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline Eigen::MatrixXd matrix_from_json(const json& j) {
    require(j.is_array() && !j.empty() && j[0].is_array(), "E_SCHEMA",
            "matrix must be an array of rows");
    const int r = static_cast<int>(j.size());
    const int c = static_cast<int>(j[0].size());
    Eigen::MatrixXd m(r, c);
    for (int i = 0; i < r; ++i) {
        require(static_cast<int>(j[i].size()) == c, "E_SCHEMA", "ragged matrix rows");
        for (int k = 0; k < c; ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
}

inline Eigen::VectorXd vector_from_json(const json& j) {
    require(j.is_array(), "E_SCHEMA", "expected a coordinate array");
    Eigen::VectorXd v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v(i) = j[i].get<double>();
    return v;
}

inline json vector_to_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

inline Kind kind_from_string(const std::string& s) {
    if (s == "euclidean") return Kind::euclidean;
    if (s == "spherical") return Kind::spherical;
    if (s == "hyperbolic") return Kind::hyperbolic;
    fail("E_SCHEMA", "unknown space kind '" + s + "'");
}

inline Chart chart_from_string(const std::string& s) {
    if (s == "cartesian") return Chart::cartesian;
    if (s == "sphere-embedded") return Chart::sphere_embedded;
    if (s == "half-space") return Chart::half_space;
    if (s == "ball") return Chart::ball;
    if (s == "klein") return Chart::klein;
    if (s == "hyperboloid") return Chart::hyperboloid;
    fail("E_SCHEMA", "unknown chart '" + s + "'");
}

inline Space space_from_json(const json& j) {
    require(j.contains("kind") && j.contains("dim"), "E_SCHEMA",
            "space needs 'kind' and 'dim'");
    Kind k = kind_from_string(j["kind"].get<std::string>());
    int dim = j["dim"].get<int>();
    Chart fallback = k == Kind::euclidean    ? Chart::cartesian
                     : k == Kind::spherical  ? Chart::sphere_embedded
                                             : Chart::hyperboloid;
    Chart c = j.contains("chart") ? chart_from_string(j["chart"].get<std::string>()) : fallback;
    return Space(k, dim, c);
}

inline json space_to_json(const Space& s) {
    return json{{"kind", to_string(s.kind)}, {"dim", s.dim}, {"chart", to_string(s.chart)}};
}

inline json halfspace_to_json(const HalfSpace& z) {
    return json{{"normal", vector_to_json(z.normal)}, {"offset", z.offset}};
}

inline HalfSpace halfspace_from_json(const Space& s, const json& j) {
    require(j.contains("normal"), "E_SCHEMA", "half-space needs 'normal'");
    double offset = j.contains("offset") ? j["offset"].get<double>() : 0.0;
    return HalfSpace(s, vector_from_json(j["normal"]), offset);
}

// Top-level job input: the bit-exact schema of the CLI contract.
struct JobInput {
    Space space;
    std::vector<NamedIsometry> generators;
    Point basepoint;
    std::optional<Polyhedron> polyhedron;
    std::vector<std::pair<int, std::string>> pairing_hints;  // side_index -> generator word
    std::optional<double> tolerance;
    std::optional<Window> window;
    int word_radius = 4;
    uint64_t seed = 0;
    std::optional<Isometry> element;  // target for `factor`
};

// Words over named generators, e.g. "T*S^-1*T".
inline Isometry eval_generator_word(const Space& space,
                                    const std::vector<NamedIsometry>& gens,
                                    const std::string& word) {
    Isometry acc = Isometry::identity(space);
    size_t pos = 0;
    while (pos < word.size()) {
        size_t star = word.find('*', pos);
        std::string tokens = word.substr(pos, star == std::string::npos ? star : star - pos);
        pos = star == std::string::npos ? word.size() : star + 1;
        std::string name = tokens;
        int exp = 1;
        if (size_t caret = tokens.find('^'); caret != std::string::npos) {
            name = tokens.substr(0, caret);
            exp = std::stoi(tokens.substr(caret + 1));
        }
        const NamedIsometry* found = nullptr;
        for (const auto& g : gens)
            if (g.name == name) found = &g;
        require(found != nullptr, "E_SCHEMA", "unknown generator '" + name + "' in word");
        Isometry step = exp >= 0 ? found->value : inverse(found->value);
        for (int i = 0; i < std::abs(exp); ++i) acc = compose(acc, step);
    }
    return acc;
}

inline JobInput input_from_json(const json& j) {
    JobInput in;
    require(j.contains("space"), "E_SCHEMA", "input needs 'space'");
    in.space = space_from_json(j["space"]);
    if (j.contains("generators")) {
        for (const auto& g : j["generators"]) {
            require(g.contains("name") && g.contains("matrix"), "E_SCHEMA",
                    "generator needs 'name' and 'matrix'");
            Isometry iso(in.space, matrix_from_json(g["matrix"]));
            require(valid_isometry(iso, 1e-6), "E_INVALID_ISOMETRY",
                    "generator '" + g["name"].get<std::string>() +
                        "' is not an isometry of the space");
            in.generators.push_back({g["name"].get<std::string>(), iso});
        }
    }
    if (j.contains("basepoint")) {
        in.basepoint = Point(in.space, vector_from_json(j["basepoint"]));
        check_point(in.basepoint, 1e-6);
    } else {
        in.basepoint = basepoint(in.space);
    }
    if (j.contains("polyhedron")) {
        require(j["polyhedron"].contains("halfspaces"), "E_SCHEMA",
                "polyhedron needs 'halfspaces'");
        std::vector<HalfSpace> hs;
        for (const auto& zj : j["polyhedron"]["halfspaces"])
            hs.push_back(halfspace_from_json(in.space, zj));
        in.polyhedron = Polyhedron(in.space, hs);
    }
    if (j.contains("pairings")) {
        for (const auto& pj : j["pairings"]) {
            require(pj.contains("side_index") && pj.contains("generator_word"), "E_SCHEMA",
                    "pairing hint needs 'side_index' and 'generator_word'");
            in.pairing_hints.emplace_back(pj["side_index"].get<int>(),
                                          pj["generator_word"].get<std::string>());
        }
    }
    if (j.contains("tolerance")) {
        in.tolerance = j["tolerance"].get<double>();
        require(*in.tolerance > 0.0, "E_SCHEMA", "tolerance must be positive");
    }
    if (j.contains("window")) {
        require(j["window"].contains("center") && j["window"].contains("radius"), "E_SCHEMA",
                "window needs 'center' and 'radius'");
        Point c(in.space, vector_from_json(j["window"]["center"]));
        double r = j["window"]["radius"].get<double>();
        require(r > 0.0, "E_SCHEMA", "window radius must be positive");
        in.window = Window(c, r);
    }
    if (j.contains("word_radius")) in.word_radius = j["word_radius"].get<int>();
    if (j.contains("seed")) in.seed = j["seed"].get<uint64_t>();
    if (j.contains("element")) {
        if (j["element"].contains("matrix")) {
            in.element = Isometry(in.space, matrix_from_json(j["element"]["matrix"]));
        } else if (j["element"].contains("word")) {
            in.element = eval_generator_word(in.space, in.generators,
                                             j["element"]["word"].get<std::string>());
        } else {
            fail("E_SCHEMA", "element needs 'matrix' or 'word'");
        }
    }
    return in;
}

inline json presentation_to_json(const Presentation& p) {
    json gens = json::array();
    for (const auto& g : p.pairings.generators)
        gens.push_back(json{{"symbol", g.symbol},
                            {"matrix", matrix_to_json(g.value.matrix)},
                            {"involution", g.involution}});
    json rels = json::array();
    for (const auto& r : p.relations) rels.push_back(p.relation_string(r));
    json cycles = json::array();
    for (const auto& c : p.cycles)
        cycles.push_back(json{{"word", p.pairings.word_string(c.word)},
                              {"k", c.k},
                              {"t", c.t},
                              {"m", c.m}});
    return json{{"space", space_to_json(p.space)},
                {"generators", gens},
                {"relations", rels},
                {"cycles", cycles}};
}

// GAP-style text: FreeGroup declaration plus the relation list.
inline std::string presentation_to_gap(const Presentation& p) {
    std::string s = "F := FreeGroup(";
    for (size_t i = 0; i < p.pairings.generators.size(); ++i) {
        if (i) s += ", ";
        s += "\"" + p.pairings.generators[i].symbol + "\"";
    }
    s += ");\n";
    s += "AssignGeneratorVariables(F);;\n";
    s += "rels := [";
    for (size_t i = 0; i < p.relations.size(); ++i) {
        if (i) s += ", ";
        s += p.relation_string(p.relations[i]);
    }
    s += "];\n";
    s += "G := F / rels;\n";
    return s;
}

inline json dirichlet_to_json(const DirichletResult& d) {
    json walls = json::array();
    for (size_t i = 0; i < d.domain.halfspaces.size(); ++i) {
        json w = halfspace_to_json(d.domain.halfspaces[i]);
        w["pairing_matrix"] = matrix_to_json(d.wall_pairings[i].matrix);
        walls.push_back(w);
    }
    return json{{"halfspaces", walls}, {"stabilized", d.stabilized}};
}

inline json verify_to_json(const VerifyReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return json{{"pass", r.pass},
                {"tiles", r.tiles},
                {"sides", r.sides},
                {"edges", r.edges},
                {"checks", checks}};
}

inline json word_to_json(const PairingSet& ps, const Word& w) {
    json letters = json::array();
    for (const auto& l : w.letters)
        letters.push_back(json{{"symbol", ps.generators[l.gen].symbol}, {"exp", l.exp}});
    return json{{"word", ps.word_string(w)}, {"letters", letters}};
}

// machine-readable one-line diagnostic
inline std::string diagnostic_line(const std::string& code, const std::string& message) {
    return json{{"code", code}, {"message", message}}.dump();
}

}  // namespace poincare::io
