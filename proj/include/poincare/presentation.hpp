#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "poincare/tessellation.hpp"

namespace poincare {

// Letter [g]^±1 of a word in the folded generator symbols.
struct Letter {
    int gen = 0;
    int exp = 1;

    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter& a, const Letter& b) {
        // positive exponent sorts first so canonical words prefer plain letters
        if (a.gen != b.gen) return a.gen <=> b.gen;
        return b.exp <=> a.exp;
    }
};

struct Word {
    std::vector<Letter> letters;

    static Word empty() { return {}; }
    Word& append(Letter l) {
        letters.push_back(l);
        return *this;
    }
    Word inverse_word() const {
        Word w;
        for (auto it = letters.rbegin(); it != letters.rend(); ++it)
            w.letters.push_back({it->gen, -it->exp});
        return w;
    }
    Word concat(const Word& other) const {
        Word w = *this;
        w.letters.insert(w.letters.end(), other.letters.begin(), other.letters.end());
        return w;
    }
    friend bool operator==(const Word&, const Word&) = default;
};

// One symbol per pairing orbit {gamma, gamma^-1}; self-paired sides yield an
// involutive symbol whose letters always carry exponent +1.
struct GeneratorBinding {
    std::string symbol;
    Isometry value;
    bool involution = false;
};

struct SidePairing {
    int side = -1;          // index into the side list
    int partner = -1;       // index of S' = gamma^-1(S)
    int partner_tile = -1;  // tile index of gamma(P) in the exploration
    Isometry gamma;
    Letter letter;          // [gamma_S] in the folded symbols
    bool self_paired = false;
};

struct PairingSet {
    std::vector<GeneratorBinding> generators;
    std::vector<SidePairing> by_side;  // aligned with the side list

    std::vector<Isometry> gammas() const {
        std::vector<Isometry> out;
        out.reserve(by_side.size());
        for (const auto& sp : by_side) out.push_back(sp.gamma);
        return out;
    }

    Isometry eval(const Word& w, const Space& s) const {
        Isometry g = Isometry::identity(s);
        for (const Letter& l : w.letters) {
            const Isometry& v = generators[l.gen].value;
            g = compose(g, l.exp > 0 ? v : inverse(v));
        }
        return g;
    }

    // match an isometry against the side pairings; -1 if none
    int find_side_of(const Isometry& g, double tol = 1e-6) const {
        for (size_t i = 0; i < by_side.size(); ++i)
            if (iso_eq(by_side[i].gamma, g, tol)) return static_cast<int>(i);
        return -1;
    }

    std::string letter_string(const Letter& l) const {
        std::string s = generators[l.gen].symbol;
        if (l.exp < 0 && !generators[l.gen].involution) s += "^-1";
        return s;
    }

    std::string word_string(const Word& w) const {
        if (w.letters.empty()) return "1";
        std::string s;
        for (size_t i = 0; i < w.letters.size(); ++i) {
            if (i) s += "*";
            s += letter_string(w.letters[i]);
        }
        return s;
    }

    // free reduction; involutive letters cancel in pairs regardless of sign
    Word reduce(const Word& w) const {
        std::vector<Letter> out;
        for (Letter l : w.letters) {
            if (generators[l.gen].involution) l.exp = 1;
            if (!out.empty() && out.back().gen == l.gen &&
                (generators[l.gen].involution || out.back().exp == -l.exp))
                out.pop_back();
            else
                out.push_back(l);
        }
        return Word{out};
    }
};

namespace detail {

inline std::string default_symbol(int index) {
    if (index < 26) return std::string(1, static_cast<char>('a' + index));
    return "g" + std::to_string(index + 1);
}

inline int find_side_by_tiles(const std::vector<Cell>& sides, const std::vector<int>& tiles) {
    for (size_t j = 0; j < sides.size(); ++j)
        if (sides[j].tiles == tiles) return static_cast<int>(j);
    return -1;
}

inline int find_edge_by_tiles(const std::vector<Cell>& edges, const std::vector<int>& tiles) {
    for (size_t j = 0; j < edges.size(); ++j)
        if (edges[j].tiles == tiles) return static_cast<int>(j);
    return -1;
}

// the sides of the base tile containing the given edge (expected: two)
inline std::vector<int> base_sides_through_edge(const std::vector<Cell>& sides,
                                                const Cell& edge) {
    std::vector<int> out;
    for (size_t j = 0; j < sides.size(); ++j)
        if (std::includes(edge.tiles.begin(), edge.tiles.end(), sides[j].tiles.begin(),
                          sides[j].tiles.end()))
            out.push_back(static_cast<int>(j));
    return out;
}

}  // namespace detail

// Match each side S of the base tile with its pairing transformation gamma_S
// (the element of the unique neighbor tile with S = P ∩ gamma(P)), resolve
// the partner S' = gamma^-1(S), and bind one symbol per orbit. Candidates
// must contain each true pairing exactly once up to iso_eq.
inline PairingSet side_pairings(const Exploration& ex, const std::vector<Cell>& sides,
                                const std::vector<Isometry>& candidates) {
    PairingSet out;
    out.by_side.resize(sides.size());

    for (size_t i = 0; i < sides.size(); ++i) {
        const Cell& s = sides[i];
        require(s.tiles.size() == 2 && s.tiles[0] == 0, "E_PAIRING",
                "side does not belong to the base tile");
        const Isometry& neighbor = ex.tiles[s.tiles[1]].element;
        int first_match = -1;
        bool ambiguous = false;
        for (size_t ci = 0; ci < candidates.size(); ++ci) {
            if (!iso_eq(candidates[ci], neighbor, 1e-6)) continue;
            if (first_match < 0)
                first_match = static_cast<int>(ci);
            else if (!iso_eq(candidates[ci], candidates[first_match], 1e-8))
                ambiguous = true;
        }
        require(first_match >= 0, "E_PAIRING_CANDIDATES",
                "no candidate matches the pairing of side " + std::to_string(i));
        require(!ambiguous, "E_PAIRING_AMBIGUOUS",
                "two distinct candidates claim side " + std::to_string(i));
        out.by_side[i].side = static_cast<int>(i);
        out.by_side[i].partner_tile = s.tiles[1];
        out.by_side[i].gamma = neighbor;
    }

    // partner side: transport a relative-interior point by gamma^-1
    for (size_t i = 0; i < sides.size(); ++i) {
        Point moved = apply(inverse(out.by_side[i].gamma), sides[i].rep);
        Cell cg = cell_generated_by(ex, moved);
        int partner = detail::find_side_by_tiles(sides, cg.tiles);
        require(partner >= 0, "E_PAIRING", "partner side of side " + std::to_string(i) +
                                               " is not a side of the base tile");
        out.by_side[i].partner = partner;
        out.by_side[i].self_paired = partner == static_cast<int>(i);
    }

    // pairing involution sanity: gamma_{S'} = gamma_S^-1
    for (size_t i = 0; i < sides.size(); ++i) {
        const SidePairing& sp = out.by_side[i];
        require(out.by_side[sp.partner].partner == static_cast<int>(i), "E_PAIRING",
                "side pairing is not an involution on sides");
        require(iso_eq(out.by_side[sp.partner].gamma, inverse(sp.gamma), 1e-7), "E_PAIRING",
                "partner pairing is not the inverse");
        if (sp.self_paired)
            require(iso_eq(compose(sp.gamma, sp.gamma), Isometry::identity(ex.space), 1e-7),
                    "E_PAIRING", "self-paired side must carry an involution");
    }

    std::vector<bool> assigned(sides.size(), false);
    for (size_t i = 0; i < sides.size(); ++i) {
        if (assigned[i]) continue;
        SidePairing& sp = out.by_side[i];
        int gen = static_cast<int>(out.generators.size());
        out.generators.push_back({detail::default_symbol(gen), sp.gamma, sp.self_paired});
        sp.letter = {gen, 1};
        assigned[i] = true;
        if (!sp.self_paired) {
            out.by_side[sp.partner].letter = {gen, -1};
            assigned[sp.partner] = true;
        }
    }
    return out;
}

// Periodic cycle data of an edge of the base tile: the (edge, side) chain of
// the cycle recursion, its period k, the loop length m, and the exponent t.
struct EdgeCycle {
    std::vector<int> edges;  // indices into the edge list, length k
    std::vector<int> sides;  // indices into the side list, length k
    Word word;               // [gamma_{S_1}] ... [gamma_{S_k}]
    int k = 0;
    int t = 0;
    int m = 0;
};

// Matrix order of g by iterated multiplication; 0 if no order <= cap.
inline int isometry_order(const Isometry& g, int cap = 1000, double tol = 1e-8) {
    Isometry acc = g;
    for (int t = 1; t <= cap; ++t) {
        if (iso_eq(acc, Isometry::identity(g.space), tol)) return t;
        acc = compose(acc, g);
    }
    return 0;
}

// Walk the recursion E_{n+1} = gamma_{S_n}^{-1}(E_n), with S_{n+1} the side
// of the base tile through E_{n+1} other than S_n' = gamma_{S_n}^{-1}(S_n),
// until the starting pair returns. The exponent t is cross-checked: matrix
// order of the cycle word against m / k from the edge loop.
inline EdgeCycle edge_cycle(const Exploration& ex, const CellComplex& cc,
                            const PairingSet& pairings, int edge_index, int side_index) {
    EdgeCycle out;
    int e = edge_index;
    int s = side_index;
    require(std::includes(cc.edges[e].tiles.begin(), cc.edges[e].tiles.end(),
                          cc.sides[s].tiles.begin(), cc.sides[s].tiles.end()),
            "E_INCIDENCE", "starting side does not contain the starting edge");
    const int cap = 4096;
    for (int step = 0; step < cap; ++step) {
        out.edges.push_back(e);
        out.sides.push_back(s);
        out.word.append(pairings.by_side[s].letter);
        Point moved = apply(inverse(pairings.by_side[s].gamma), cc.edges[e].rep);
        Cell cg = cell_generated_by(ex, moved);
        int enext = detail::find_edge_by_tiles(cc.edges, cg.tiles);
        require(enext >= 0 && cg.codim == 2, "E_CYCLE",
                "cycle chain left the edge set of the base tile");
        int sprime = pairings.by_side[s].partner;
        auto through = detail::base_sides_through_edge(cc.sides, cc.edges[enext]);
        require(through.size() == 2, "E_CYCLE", "edge is not contained in exactly two sides");
        require(through[0] == sprime || through[1] == sprime, "E_CYCLE",
                "partner side does not contain the transported edge");
        int snext = through[0] == sprime ? through[1] : through[0];
        if (enext == edge_index && snext == side_index) break;
        e = enext;
        s = snext;
        require(step + 1 < cap, "E_CYCLE", "cycle failed to close");
    }
    out.k = static_cast<int>(out.sides.size());

    out.t = isometry_order(pairings.eval(out.word, ex.space));
    require(out.t > 0, "E_CYCLE", "cycle word has no order within the cap");

    auto loop = edge_loop(ex, cc.edges[edge_index], cc.sides[side_index], 0);
    out.m = static_cast<int>(loop.size()) - 1;
    require(out.m == out.k * out.t, "E_CYCLE",
            "edge loop length " + std::to_string(out.m) + " does not equal k*t = " +
                std::to_string(out.k) + "*" + std::to_string(out.t));
    return out;
}

struct Relation {
    Word base;
    int power = 1;

    Word expanded() const {
        Word w;
        for (int i = 0; i < power; ++i) w = w.concat(base);
        return w;
    }
};

struct Presentation {
    Space space;
    PairingSet pairings;
    std::vector<Relation> relations;
    std::vector<EdgeCycle> cycles;

    std::string relation_string(const Relation& r) const {
        if (r.power == 1) return pairings.word_string(r.base);
        if (r.base.letters.size() == 1)
            return pairings.letter_string(r.base.letters[0]) + "^" + std::to_string(r.power);
        return "(" + pairings.word_string(r.base) + ")^" + std::to_string(r.power);
    }
};

namespace detail {

// least representative over cyclic shifts and the reversed-inverse traversal
inline Word canonical_cycle_word(const PairingSet& ps, const Word& w) {
    std::vector<Word> candidates;
    auto add_shifts = [&](const Word& base) {
        const size_t k = base.letters.size();
        for (size_t s = 0; s < k; ++s) {
            Word shifted;
            for (size_t i = 0; i < k; ++i) shifted.append(base.letters[(s + i) % k]);
            candidates.push_back(ps.reduce(shifted));
        }
    };
    add_shifts(w);
    add_shifts(w.inverse_word());
    Word best = candidates.front();
    for (const Word& c : candidates)
        if (c.letters < best.letters) best = c;
    return best;
}

}  // namespace detail

// Assemble the finite presentation: reflection relations for self-paired
// sides, and one canonical cycle relation per cycle class of edges. Pairing
// relations of distinct paired sides are absorbed by folding the symbols.
// Every relation is verified to evaluate to the identity.
inline Presentation build_presentation(const Exploration& ex, const CellComplex& cc,
                                       const PairingSet& pairings, double tol = 1e-8) {
    Presentation pres;
    pres.space = ex.space;
    pres.pairings = pairings;

    for (size_t gi = 0; gi < pairings.generators.size(); ++gi)
        if (pairings.generators[gi].involution) {
            Word w;
            w.append({static_cast<int>(gi), 1});
            pres.relations.push_back({w, 2});
        }

    std::vector<bool> consumed(cc.edges.size(), false);
    for (size_t e = 0; e < cc.edges.size(); ++e) {
        if (consumed[e]) continue;
        auto through = detail::base_sides_through_edge(cc.sides, cc.edges[e]);
        require(through.size() == 2, "E_INCIDENCE",
                "edge " + std::to_string(e) + " is not contained in exactly two sides");
        EdgeCycle cyc = edge_cycle(ex, cc, pairings, static_cast<int>(e), through[0]);
        std::set<int> cycle_edges(cyc.edges.begin(), cyc.edges.end());
        for (int ei : cycle_edges) {
            require(!consumed[ei], "E_CYCLE", "edge appears in two distinct cycle classes");
            consumed[ei] = true;
        }
        pres.cycles.push_back(cyc);
        pres.relations.push_back({detail::canonical_cycle_word(pairings, cyc.word), cyc.t});
    }
    for (size_t e = 0; e < cc.edges.size(); ++e)
        require(consumed[e], "E_CYCLE", "edge " + std::to_string(e) + " not in any cycle");

    for (const Relation& r : pres.relations) {
        Isometry val = pairings.eval(r.expanded(), ex.space);
        if (!iso_eq(val, Isometry::identity(ex.space), tol)) {
            double residual =
                (val.matrix - Eigen::MatrixXd::Identity(val.matrix.rows(), val.matrix.cols()))
                    .lpNorm<Eigen::Infinity>();
            fail("E_RELATION", "relation " + pres.relation_string(r) +
                                   " does not evaluate to the identity (residual " +
                                   std::to_string(residual) + ")");
        }
    }
    return pres;
}

// kappa_C(g, h): the word read off the cell C separating tiles g(P) and
// h(P): empty for a tile, one letter for a side, an edge-loop sub-walk for
// an edge. Walking backwards yields the formal inverse, so kappa(g, h) and
// kappa(h, g) are inverse words up to involution normalization.
inline Word kappa(const Exploration& ex, const PairingSet& pairings, const Cell& c, int tile_g,
                  int tile_h) {
    require(std::find(c.tiles.begin(), c.tiles.end(), tile_g) != c.tiles.end() &&
                std::find(c.tiles.begin(), c.tiles.end(), tile_h) != c.tiles.end(),
            "E_INCIDENCE", "kappa cell does not contain both tiles");
    if (tile_g == tile_h) return Word::empty();
    auto letter_for = [&](int a, int b) {
        Isometry step = compose(inverse(ex.tiles[a].element), ex.tiles[b].element);
        int side = pairings.find_side_of(step);
        require(side >= 0, "E_PAIRING", "tile step is not a pairing transformation");
        return pairings.by_side[side].letter;
    };
    require(c.codim >= 1 && c.codim <= 2, "E_CODIM", "kappa needs a cell of codimension <= 2");
    if (c.codim == 1) return Word{{letter_for(tile_g, tile_h)}};

    // canonical loop, anchored at the least tile with its least side
    int t0 = *std::min_element(c.tiles.begin(), c.tiles.end());
    auto sides0 = sides_of_tile_through_edge(ex, c, t0);
    require(sides0.size() == 2, "E_WINDOW", "edge loop leaves the explored window");
    const Cell& s0 = sides0[0].tiles < sides0[1].tiles ? sides0[0] : sides0[1];
    auto loop = edge_loop(ex, c, s0, t0);
    loop.pop_back();  // positions are distinct
    auto pos = [&](int t) {
        auto it = std::find(loop.begin(), loop.end(), t);
        require(it != loop.end(), "E_INCIDENCE", "tile missing from the edge loop");
        return static_cast<int>(it - loop.begin());
    };
    int i = pos(tile_g), j = pos(tile_h);
    Word w;
    if (i < j) {
        for (int p = i; p < j; ++p) w.append(letter_for(loop[p], loop[p + 1]));
    } else {
        for (int p = i; p > j; --p) w.append(letter_for(loop[p], loop[p - 1]));
    }
    return w;
}

// alpha-adapted list over a piecewise-geodesic path: breakpoints exactly
// where the covering tile set changes, each open piece inside the relative
// interior of a cell of tiles[g_i]; pieces are computed by exact interval
// intersection in the affine chart, where geodesics are straight.
struct AdaptedList {
    std::vector<double> breaks;       // size n+1, in global path parameter
    std::vector<int> tiles;           // size n
    std::vector<Point> break_points;  // size n-1, the interior breakpoints
};

inline AdaptedList build_adapted_list(const Exploration& ex,
                                      const std::vector<Point>& waypoints) {
    require(waypoints.size() >= 2, "E_PATH", "path needs at least two waypoints");
    const int segs = static_cast<int>(waypoints.size()) - 1;

    std::vector<double> breaks;
    std::vector<std::vector<int>> covers;
    std::vector<Eigen::VectorXd> break_chart;

    for (int s = 0; s < segs; ++s) {
        Eigen::VectorXd u0 = ex.chart.to_chart(detail::to_canonical_coords(waypoints[s]));
        Eigen::VectorXd u1 = ex.chart.to_chart(detail::to_canonical_coords(waypoints[s + 1]));
        std::vector<std::pair<double, double>> ivals(ex.tiles.size(), {1.0, 0.0});
        std::vector<double> cuts = {0.0, 1.0};
        for (size_t t = 0; t < ex.tiles.size(); ++t) {
            auto iv = segment_interval(ex.tile_rows[t], u0, u1, 0.0, 1.0, 1e-11);
            if (!iv) continue;
            ivals[t] = *iv;
            cuts.push_back(iv->first);
            cuts.push_back(iv->second);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-11; }),
                   cuts.end());
        for (size_t c = 0; c + 1 < cuts.size(); ++c) {
            double mid = 0.5 * (cuts[c] + cuts[c + 1]);
            std::vector<int> cover;
            for (size_t t = 0; t < ex.tiles.size(); ++t)
                if (ivals[t].first <= mid && mid <= ivals[t].second)
                    cover.push_back(static_cast<int>(t));
            require(!cover.empty(), "E_OUTSIDE",
                    "path piece leaves the explored tiles near parameter " +
                        std::to_string((s + mid) / segs));
            if (!covers.empty() && covers.back() == cover) continue;  // merge equal pieces
            breaks.push_back((s + cuts[c]) / segs);
            covers.push_back(std::move(cover));
            break_chart.push_back(u0 + cuts[c] * (u1 - u0));
        }
    }
    breaks.push_back(1.0);

    AdaptedList out;
    out.breaks = breaks;
    for (const auto& cover : covers) out.tiles.push_back(cover.front());
    for (size_t i = 1; i < covers.size(); ++i) {
        Point bp = chart_point_to_space(ex.chart, break_chart[i]);
        Point canon(ex.space.canonical(), detail::to_canonical_coords(bp));
        Cell cell = cell_generated_by(ex, canon);
        require(cell.codim <= 2, "E_CODIM3",
                "path touches a cell of codimension >= 3 at parameter " +
                    std::to_string(breaks[i]));
        out.break_points.push_back(canon);
    }
    return out;
}

// Phi: concatenation of the kappa words at the breakpoints; empty for a
// single-tile list. Independent of the chosen adapted list for a fixed path.
inline Word phi(const Exploration& ex, const PairingSet& pairings, const AdaptedList& list) {
    if (list.tiles.size() <= 1) return Word::empty();
    Word w;
    for (size_t i = 0; i + 1 < list.tiles.size(); ++i) {
        Cell cell = cell_generated_by(ex, list.break_points[i]);
        w = w.concat(kappa(ex, pairings, cell, list.tiles[i], list.tiles[i + 1]));
    }
    return w;
}

struct FactorResult {
    Word word;
    int retries = 0;
};

// Factor a group element into pairing generators: walk a perturbed geodesic
// from an interior basepoint of P to its image, explore the tiles along the
// path, read the word off with Phi, and verify the evaluation.
inline FactorResult factor_element(const Isometry& g, const Polyhedron& p,
                                   const PairingSet& pairings, uint64_t seed = 0,
                                   double tol = 1e-8, const ExploreOptions& base_opts = {}) {
    FactorResult out;
    Tolerances tols = base_opts.tols;
    auto sys = make_system(p.space, p.halfspaces);
    auto an = analyze_system(sys, {}, tols.combinatorial);
    require(!an.empty() && an.codim == 0, "E_NOT_THICK", "base polyhedron must be thick");
    Point x0 = chart_point_to_space(sys.chart, an.chart_point);
    Point x0c(p.space.canonical(), detail::to_canonical_coords(x0));

    if (iso_eq(g, Isometry::identity(p.space), tol)) return out;
    Point y = apply(g, x0c);
    std::vector<Isometry> gens = pairings.gammas();

    std::mt19937_64 rng(seed);
    const int max_retries = 16;
    const double jitter_scale = 10.0 * tols.combinatorial;
    std::string last_error = "factorization failed";
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        out.retries = attempt;
        Point mid = geodesic_point(x0c, y, 0.5);
        std::vector<Point> waypoints = {x0c, mid, y};
        if (attempt > 0) {
            Eigen::VectorXd mc = mid.coords;
            Space cs = p.space.canonical();
            const int n = cs.dim;
            Eigen::VectorXd noise(n);
            for (int i = 0; i < n; ++i)
                noise(i) = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
            noise *= jitter_scale * attempt;
            if (cs.kind == Kind::euclidean) {
                mc += noise;
            } else {
                mc.head(n) += noise;
                mc = detail::renormalize_canonical(cs, mc);
            }
            waypoints[1] = Point(cs, mc);
        }
        try {
            Window win(mid, std::max(0.5, 0.75 * dist(x0c, y)));
            ExploreOptions opts = base_opts;
            opts.use_window = false;
            opts.segments = {{waypoints[0], waypoints[1]}, {waypoints[1], waypoints[2]}};
            Exploration ex = explore_tiles(p, gens, win, opts);
            AdaptedList list = build_adapted_list(ex, waypoints);
            Word w = phi(ex, pairings, list);
            Isometry val = pairings.eval(w, p.space);
            if (iso_eq(val, g, tol)) {
                out.word = w;
                return out;
            }
            last_error = "word evaluation mismatch";
        } catch (const error& err) {
            last_error = err.what();
        }
    }
    fail("E_FACTOR", "factorization failed after the retry budget: " + last_error);
}

}  // namespace poincare
