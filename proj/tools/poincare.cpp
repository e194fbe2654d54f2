// Command-line front end: presentations of discontinuous isometry groups
// from fundamental polyhedra (Dirichlet construction, tessellation
// verification, element factorization, SVG figures).

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "poincare/io.hpp"
#include "poincare/svg.hpp"

using namespace poincare;
using io::json;

namespace {

int log_level() {
    const char* env = std::getenv("POINCARE_LOG");
    if (!env) return 0;
    std::string v = env;
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[poincare] " << msg << "\n";
}

struct CommonArgs {
    std::string input_path;
    std::string out_path;
    std::optional<double> tol;
    std::vector<double> window_center;
    std::optional<double> window_radius;
    std::optional<int> word_radius;
    std::optional<uint64_t> seed;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--input", args.input_path, "input JSON path")->required();
    cmd->add_option("--out", args.out_path, "output path prefix");
    cmd->add_option("--tol", args.tol, "tolerance override");
    cmd->add_option("--window-center", args.window_center, "window center coordinates")
        ->expected(-1);
    cmd->add_option("--window-radius", args.window_radius, "window radius override");
    cmd->add_option("--word-radius", args.word_radius, "word radius override");
    cmd->add_option("--seed", args.seed, "seed override");
    cmd->add_option("--format", args.format, "stdout format: json or gap")
        ->check(CLI::IsMember({"json", "gap"}));
}

io::JobInput load_input(const CommonArgs& args) {
    std::ifstream f(args.input_path);
    require(f.good(), "E_INPUT", "cannot open input file " + args.input_path);
    json j = json::parse(f, nullptr, true, true);
    io::JobInput in = io::input_from_json(j);
    if (args.tol) in.tolerance = *args.tol;
    if (args.word_radius) in.word_radius = *args.word_radius;
    if (args.seed) in.seed = *args.seed;
    if (args.window_radius || !args.window_center.empty()) {
        Point center = in.window ? in.window->center : in.basepoint;
        if (!args.window_center.empty()) {
            Eigen::VectorXd c(args.window_center.size());
            for (size_t i = 0; i < args.window_center.size(); ++i) c(i) = args.window_center[i];
            center = Point(in.space, c);
        }
        double radius = args.window_radius ? *args.window_radius
                                           : (in.window ? in.window->radius : 1.0);
        in.window = Window(center, radius);
    }
    return in;
}

ExploreOptions options_for(const io::JobInput& in) {
    ExploreOptions opts;
    if (in.tolerance) {
        opts.tols.combinatorial = *in.tolerance;
        opts.tols.point = std::min(opts.tols.point, *in.tolerance);
    }
    return opts;
}

// Build the group structure from the input: polyhedron-first when given,
// Dirichlet-first otherwise.
GroupStructure build_structure(const io::JobInput& in) {
    ExploreOptions opts = options_for(in);
    std::vector<Isometry> candidates;
    for (const auto& g : in.generators) {
        candidates.push_back(g.value);
        candidates.push_back(inverse(g.value));
    }
    for (const auto& [side, word] : in.pairing_hints) {
        Isometry g = io::eval_generator_word(in.space, in.generators, word);
        candidates.push_back(g);
        candidates.push_back(inverse(g));
    }
    if (in.polyhedron) {
        log_info("presenting the given polyhedron");
        GroupStructure gs = present_polyhedron(*in.polyhedron, candidates, candidates,
                                               in.window, opts);
        for (const auto& [side, word] : in.pairing_hints) {
            require(side >= 0 && side < static_cast<int>(gs.pairings.by_side.size()),
                    "E_PAIRING_HINT", "pairing hint side index out of range");
            Isometry g = io::eval_generator_word(in.space, in.generators, word);
            require(iso_eq(gs.pairings.by_side[side].gamma, g, 1e-6), "E_PAIRING_HINT",
                    "side " + std::to_string(side) + " is not paired by '" + word + "'");
        }
        return gs;
    }
    require(!in.generators.empty(), "E_INPUT", "need generators or a polyhedron");
    log_info("building the Dirichlet domain");
    GroupInput gi{in.space, in.generators, in.basepoint, in.word_radius, opts.tols};
    return present_group(gi, in.window, opts);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    require(f.good(), "E_OUTPUT", "cannot write " + path);
    f << content;
}

int run_present(const CommonArgs& args) {
    io::JobInput in = load_input(args);
    GroupStructure gs = build_structure(in);
    log_info("verifying the local tessellation");
    Window win = in.window ? *in.window
                           : default_window(gs.domain, relative_interior_point(gs.domain));
    VerifyReport rep = verify_local_tessellation(gs.domain, gs.pairings.gammas(), win, 400,
                                                 in.seed, options_for(in));
    json out = io::presentation_to_json(gs.presentation);
    out["verification"] = io::verify_to_json(rep);
    if (gs.dirichlet) out["dirichlet"] = io::dirichlet_to_json(*gs.dirichlet);
    std::string gap = io::presentation_to_gap(gs.presentation);
    if (!args.out_path.empty()) {
        write_file(args.out_path + ".json", out.dump(2) + "\n");
        write_file(args.out_path + ".gap", gap);
    } else {
        std::cout << (args.format == "gap" ? gap : out.dump(2) + "\n");
    }
    if (!rep.pass) {
        for (const auto& c : rep.checks)
            if (!c.pass) std::cerr << io::diagnostic_line("E_VERIFY_" + c.name, c.detail) << "\n";
        return 2;
    }
    return 0;
}

int run_dirichlet(const CommonArgs& args) {
    io::JobInput in = load_input(args);
    require(!in.generators.empty(), "E_INPUT", "dirichlet needs generators");
    GroupInput gi{in.space, in.generators, in.basepoint, in.word_radius, options_for(in).tols};
    DirichletResult dr = dirichlet_domain(gi);
    json out = io::dirichlet_to_json(dr);
    if (!args.out_path.empty())
        write_file(args.out_path + ".json", out.dump(2) + "\n");
    else
        std::cout << out.dump(2) << "\n";
    if (!dr.stabilized)
        std::cerr << io::diagnostic_line("W_PROVISIONAL",
                                         "essential walls not stabilized within the word radius")
                  << "\n";
    return 0;
}

int run_verify(const CommonArgs& args) {
    io::JobInput in = load_input(args);
    GroupStructure gs = build_structure(in);
    Window win = in.window ? *in.window
                           : default_window(gs.domain, relative_interior_point(gs.domain));
    VerifyReport rep = verify_local_tessellation(gs.domain, gs.pairings.gammas(), win, 400,
                                                 in.seed, options_for(in));
    json out = io::verify_to_json(rep);
    if (!args.out_path.empty())
        write_file(args.out_path + ".json", out.dump(2) + "\n");
    else
        std::cout << out.dump(2) << "\n";
    return rep.pass ? 0 : 2;
}

int run_factor(const CommonArgs& args) {
    io::JobInput in = load_input(args);
    require(in.element.has_value(), "E_INPUT", "factor needs an 'element' entry");
    GroupStructure gs = build_structure(in);
    FactorResult fr = factor_element(*in.element, gs.domain, gs.pairings, in.seed, 1e-8,
                                     options_for(in));
    json out = io::word_to_json(gs.pairings, fr.word);
    out["retries"] = fr.retries;
    Isometry val = gs.pairings.eval(fr.word, in.space);
    out["residual"] = (val.matrix - in.element->matrix).lpNorm<Eigen::Infinity>();
    if (!args.out_path.empty())
        write_file(args.out_path + ".json", out.dump(2) + "\n");
    else
        std::cout << out.dump(2) << "\n";
    return 0;
}

// Draw honors the requested window exactly: a window inside the interior of
// the domain legitimately shows a single region with no side polylines.
int run_draw(const CommonArgs& args) {
    io::JobInput in = load_input(args);
    require(in.space.dim == 2, "E_DRAW", "drawing supports dimension 2 only");
    ExploreOptions opts = options_for(in);

    Polyhedron domain;
    std::vector<Isometry> candidates;
    for (const auto& g : in.generators) {
        candidates.push_back(g.value);
        candidates.push_back(inverse(g.value));
    }
    if (in.polyhedron) {
        domain = essential_polyhedron(*in.polyhedron, opts.tols);
    } else {
        require(!in.generators.empty(), "E_INPUT", "need generators or a polyhedron");
        GroupInput gi{in.space, in.generators, in.basepoint, in.word_radius, opts.tols};
        DirichletResult dr = dirichlet_domain(gi);
        domain = dr.domain;
        for (const auto& g : dr.wall_pairings) candidates.push_back(g);
    }
    Window win = in.window ? *in.window
                           : default_window(domain, relative_interior_point(domain, opts.tols));
    Exploration ex = explore_tiles(domain, candidates, win, opts);
    CellComplex cc = classify_cells(ex);
    PairingSet ps;
    try {
        ps = side_pairings(ex, cc.sides, candidates);
    } catch (const error&) {
        // color by side index when pairings cannot be resolved in this window
        ps.by_side.resize(cc.sides.size());
        for (size_t i = 0; i < cc.sides.size(); ++i) {
            ps.generators.push_back(
                {"s" + std::to_string(i), Isometry::identity(ex.space), false});
            ps.by_side[i].letter = {static_cast<int>(i), 1};
        }
    }
    std::string svg = svg::render(ex, cc, ps, in.space.chart);
    if (!args.out_path.empty())
        write_file(args.out_path + ".svg", svg);
    else
        std::cout << svg;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite presentations of discontinuous isometry groups from "
                 "fundamental polyhedra"};
    app.require_subcommand(1);

    CommonArgs present_args, dirichlet_args, verify_args, factor_args, draw_args;
    add_common(app.add_subcommand("present", "compute the group presentation"), present_args);
    add_common(app.add_subcommand("dirichlet", "compute the Dirichlet domain"), dirichlet_args);
    add_common(app.add_subcommand("verify", "verify the local tessellation"), verify_args);
    add_common(app.add_subcommand("factor", "factor an element into pairing generators"),
               factor_args);
    add_common(app.add_subcommand("draw", "emit an SVG of the tessellation window"), draw_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("present")) return run_present(present_args);
        if (app.got_subcommand("dirichlet")) return run_dirichlet(dirichlet_args);
        if (app.got_subcommand("verify")) return run_verify(verify_args);
        if (app.got_subcommand("factor")) return run_factor(factor_args);
        if (app.got_subcommand("draw")) return run_draw(draw_args);
    } catch (const error& err) {
        std::cerr << io::diagnostic_line(err.code(), err.what()) << "\n";
        return err.code() == "E_EXPLORATION_CAP" ? 3 : 2;
    } catch (const std::exception& ex) {
        std::cerr << io::diagnostic_line("E_INTERNAL", ex.what()) << "\n";
        return 1;
    }
    return 1;
}
