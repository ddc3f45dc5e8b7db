#include "preeb/cli.hpp"

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "preeb/generators.hpp"
#include "preeb/io.hpp"
#include "preeb/mapper.hpp"
#include "preeb/svg.hpp"
#include "preeb/sweep.hpp"

namespace preeb {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string point_str(const std::vector<double>& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += ", ";
        s += fmt(p[i]);
    }
    return s + ")";
}

void emit_graph(const ReebGraph& g, const std::string& out_path,
                const std::string& dot_path, const std::string& svg_path,
                const AlgebraicDomain* dom) {
    ReebGraph c = g.canonical_order();
    if (!out_path.empty())
        write_text_file(out_path, graph_to_json(c));
    else if (dot_path.empty() && svg_path.empty())
        std::cout << graph_to_json(c) << "\n";
    if (!dot_path.empty()) write_text_file(dot_path, graph_to_dot(c));
    if (!svg_path.empty()) {
        if (!dom)
            throw ConfigError("svg output requires a planar domain");
        write_text_file(svg_path, render_svg(*dom, &c));
    }
}

int report_validation(const ValidationReport& rep) {
    auto line = [](const char* name, bool ok, const std::optional<ValidationIssue>& issue) {
        std::cout << name << ": " << (ok ? "ok" : "FAILED");
        if (!ok && issue)
            std::cout << " — " << issue->what << " at " << point_str(issue->witness);
        std::cout << "\n";
    };
    line("regularity", rep.regularity_ok, rep.regularity_issue);
    std::cout << "  min boundary gradient norm: " << fmt(rep.min_gradient_norm) << "\n";
    line("disjointness", rep.disjointness_ok, rep.disjointness_issue);
    line("boundedness", rep.boundedness_ok, rep.boundedness_issue);
    return rep.all_ok() ? 0 : 1;
}

int cmd_validate(const std::string& domain_path) {
    AlgebraicDomain dom = domain_from_json(read_text_file(domain_path));
    return report_validation(validate(dom));
}

int cmd_graph(const std::string& domain_path, bool smooth_all, double merge_window,
              const std::string& out, const std::string& dot, const std::string& svg) {
    AlgebraicDomain dom = domain_from_json(read_text_file(domain_path));
    SweepOptions opts;
    opts.smooth_all = smooth_all;
    opts.merge_window = merge_window;
    ReebGraph g = build_poincare_reeb(dom, opts);
    emit_graph(g, out, dot, svg, &dom);
    return 0;
}

int cmd_example(const std::string& family, int l, double r_outer, double r_hole,
                double gap, double stagger, const std::string& out) {
    AlgebraicDomain dom;
    if (family == "chain")
        dom = make_chain(l, r_outer, r_hole, gap);
    else if (family == "stack")
        dom = make_stack(l, r_outer, r_hole, gap, stagger);
    else
        throw ConfigError("example: family must be 'chain' or 'stack'");
    std::string text = domain_to_json(dom);
    if (out.empty())
        std::cout << text << "\n";
    else
        write_text_file(out, text);
    return 0;
}

int cmd_lift(const std::string& domain_path, int k0, std::vector<int> exps,
             std::vector<double> coeffs, int n_base, int n_fiber, std::uint64_t seed,
             double tau_s, const std::string& out) {
    AlgebraicDomain dom = domain_from_json(read_text_file(domain_path));
    LiftSpec spec(std::move(dom), k0, std::move(exps), std::move(coeffs));
    LiftResult lift = sample_surface(spec, n_base, n_fiber, seed, tau_s);
    std::string text = lift_to_jsonl(lift);
    if (out.empty())
        std::cout << text;
    else
        write_text_file(out, text);
    std::cerr << "sampled " << lift.samples.size() << " points over "
              << lift.bases.size() << " base points (pitch " << fmt(lift.pitch) << ")\n";
    return 0;
}

int report_regularity(const RegularityReport& rep, double delta) {
    std::cout << "samples checked: " << rep.n_samples << "\n";
    std::cout << "min |gradient| over samples: " << fmt(rep.min_gradient_norm) << " at "
              << point_str(rep.min_gradient_point) << "\n";
    if (rep.singular_point) {
        std::cout << "singular point located at " << point_str(*rep.singular_point)
                  << " (|gradient| " << fmt(rep.singular_gradient_norm) << ", value "
                  << fmt(rep.singular_value) << ")\n";
    }
    std::cout << "regularity (delta " << fmt(delta) << "): "
              << (rep.ok ? "ok" : "FAILED") << "\n";
    return rep.ok ? 0 : 1;
}

int cmd_verify(const std::string& lift_path, double delta) {
    LiftResult lift = lift_from_jsonl(read_text_file(lift_path));
    return report_regularity(verify_regularity(lift, delta), delta);
}

int cmd_mapper(const std::string& lift_path, int intervals, double overlap,
               double epsilon, const std::string& metric, const std::string& out,
               const std::string& dot) {
    LiftResult lift = lift_from_jsonl(read_text_file(lift_path));
    MapperConfig cfg;
    cfg.n_intervals = intervals;
    cfg.overlap = overlap;
    cfg.epsilon = epsilon;
    if (metric == "base")
        cfg.metric = Metric::Base;
    else if (metric == "ambient")
        cfg.metric = Metric::Ambient;
    else
        throw ConfigError("mapper: metric must be 'base' or 'ambient'");
    ReebGraph g = mapper_reeb(lift, cfg);
    emit_graph(g, out, dot, "", nullptr);
    return 0;
}

int cmd_compare(const std::string& a_path, const std::string& b_path, bool no_smooth) {
    ReebGraph a = graph_from_json(read_text_file(a_path));
    ReebGraph b = graph_from_json(read_text_file(b_path));
    if (!no_smooth) {
        a = smooth_degree2(a, /*keep_critical=*/false);
        b = smooth_degree2(b, /*keep_critical=*/false);
    }
    IsoResult r = isomorphic(a, b);
    if (r.isomorphic) {
        std::cout << "isomorphic (" << a.vertices().size() << " vertices, "
                  << a.edges().size() << " edges)\n";
        return 0;
    }
    std::cout << "not isomorphic: " << a.vertices().size() << "v/" << a.edges().size()
              << "e vs " << b.vertices().size() << "v/" << b.edges().size() << "e\n";
    return 1;
}

int cmd_check_theorem(const std::string& domain_path, int k0, std::vector<int> exps,
                      std::vector<double> coeffs, int n_base, int n_fiber,
                      std::uint64_t seed, double merge_window, int intervals,
                      double overlap, double epsilon, double delta) {
    AlgebraicDomain dom = domain_from_json(read_text_file(domain_path));

    std::cout << "[1/5] validating domain assumptions\n";
    ValidationReport vrep = validate(dom);
    if (!vrep.all_ok()) {
        report_validation(vrep);
        std::cout << "verdict: NOT VERIFIED (domain assumptions fail)\n";
        return 1;
    }
    std::cout << "      ok (min boundary gradient " << fmt(vrep.min_gradient_norm)
              << ")\n";

    std::cout << "[2/5] sweeping the projection\n";
    SweepOptions sopts;
    sopts.merge_window = merge_window;
    sopts.smooth_all = true;
    ReebGraph pr = build_poincare_reeb(dom, sopts);
    std::cout << "      graph: " << pr.vertices().size() << " vertices, "
              << pr.edges().size() << " edges, betti1 " << betti1(pr) << "\n";

    std::cout << "[3/5] building and sampling the lifted surface (k0 " << k0 << ")\n";
    LiftSpec spec(dom, k0, std::move(exps), std::move(coeffs));
    LiftResult lift = sample_surface(spec, n_base, n_fiber, seed);
    std::cout << "      " << lift.samples.size() << " samples over "
              << lift.bases.size() << " base points\n";

    std::cout << "[4/5] verifying regularity of the surface\n";
    RegularityReport rrep = verify_regularity(lift, delta);
    if (!rrep.ok) {
        report_regularity(rrep, delta);
        std::cout << "verdict: NOT VERIFIED (surface is singular)\n";
        return 1;
    }
    std::cout << "      ok (min sampled |gradient| " << fmt(rrep.min_gradient_norm)
              << ")\n";

    std::cout << "[5/5] estimating the Reeb graph from the point cloud\n";
    MapperConfig mcfg;
    mcfg.n_intervals = intervals;
    mcfg.overlap = overlap;
    mcfg.epsilon = epsilon;
    ReebGraph est = mapper_reeb(lift, mcfg);
    std::cout << "      graph: " << est.vertices().size() << " vertices, "
              << est.edges().size() << " edges, betti1 " << betti1(est) << "\n";

    IsoResult iso = isomorphic(pr, est);
    if (iso.isomorphic) {
        std::cout << "verdict: VERIFIED — the estimated Reeb graph matches the swept "
                     "graph\n";
        return 0;
    }
    std::cout << "verdict: NOT VERIFIED — graphs differ (" << pr.vertices().size()
              << "v/" << pr.edges().size() << "e vs " << est.vertices().size() << "v/"
              << est.edges().size() << "e)\n";
    return 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Poincare-Reeb graphs of planar algebraic domains: sweep computation, "
                 "hypersurface realization, and point-cloud verification"};
    app.require_subcommand(1);

    // --- validate ---
    std::string v_domain;
    auto* validate_cmd =
        app.add_subcommand("validate", "Check domain assumptions by sampling");
    validate_cmd->add_option("domain", v_domain, "domain JSON file")->required();

    // --- preeb ---
    std::string g_domain, g_out, g_dot, g_svg;
    bool g_smooth_all = false;
    double g_merge = 0.0;
    auto* graph_cmd =
        app.add_subcommand("preeb", "Compute the Poincare-Reeb graph of a domain");
    graph_cmd->add_option("domain", g_domain, "domain JSON file")->required();
    graph_cmd->add_flag("--smooth-all", g_smooth_all,
                        "also smooth critical degree-2 vertices");
    graph_cmd->add_option("--merge-window", g_merge,
                          "merge critical vertices closer than this in value");
    graph_cmd->add_option("-o,--out", g_out, "write graph JSON here (default stdout)");
    graph_cmd->add_option("--dot", g_dot, "also write Graphviz DOT here");
    graph_cmd->add_option("--svg", g_svg, "also write an SVG rendering here");

    // --- example ---
    std::string e_family, e_out;
    int e_l = 2;
    double e_router = 0.0, e_rhole = 0.4, e_gap = 0.4, e_stagger = 1e-3;
    auto* example_cmd =
        app.add_subcommand("example", "Generate a chain or stack example domain");
    example_cmd->add_option("family", e_family, "chain | stack")->required();
    example_cmd->add_option("--l", e_l, "number of leaves (cycles + 1)")->required();
    example_cmd->add_option("--r-outer", e_router, "outer radius (0 = automatic)");
    example_cmd->add_option("--r-hole", e_rhole, "hole radius");
    example_cmd->add_option("--gap", e_gap, "gap between consecutive holes");
    example_cmd->add_option("--stagger", e_stagger, "stack: radius increment per hole");
    example_cmd->add_option("-o,--out", e_out, "write domain JSON here (default stdout)");

    // --- lift ---
    std::string l_domain, l_out;
    int l_k0 = 4, l_nbase = 4096, l_nfiber = 8;
    std::uint64_t l_seed = 20240817;
    double l_taus = kDefaultTauS;
    std::vector<int> l_exps;
    std::vector<double> l_coeffs;
    auto* lift_cmd = app.add_subcommand(
        "lift", "Build the lifted hypersurface and sample its zero set");
    lift_cmd->add_option("domain", l_domain, "domain JSON file")->required();
    lift_cmd->add_option("--k0", l_k0, "ambient dimension of the lift")->required();
    lift_cmd->add_option("--exps", l_exps, "fiber exponents m_j (default all 1)")
        ->delimiter(',');
    lift_cmd->add_option("--coeffs", l_coeffs, "fiber coefficients c_j (default all 1)")
        ->delimiter(',');
    lift_cmd->add_option("--n-base", l_nbase, "target number of base grid points");
    lift_cmd->add_option("--n-fiber", l_nfiber, "fiber samples per interior base point");
    lift_cmd->add_option("--seed", l_seed, "random seed for fiber directions");
    lift_cmd->add_option("--tau-s", l_taus, "boundary threshold on the product value");
    lift_cmd->add_option("-o,--out", l_out, "write JSONL here (default stdout)");

    // --- verify-regularity ---
    std::string r_lift;
    double r_delta = 1e-6;
    auto* verify_cmd = app.add_subcommand(
        "verify-regularity", "Check the sampled surface for singular points");
    verify_cmd->add_option("lift", r_lift, "lift JSONL file")->required();
    verify_cmd->add_option("--delta", r_delta, "gradient-norm threshold");

    // --- mapper ---
    std::string m_lift, m_out, m_dot, m_metric = "base";
    int m_intervals = 20;
    double m_overlap = 0.35, m_epsilon = 0.0;
    auto* mapper_cmd = app.add_subcommand(
        "mapper", "Estimate the Reeb graph of the height function from samples");
    mapper_cmd->add_option("lift", m_lift, "lift JSONL file")->required();
    mapper_cmd->add_option("--intervals", m_intervals, "number of cover intervals");
    mapper_cmd->add_option("--overlap", m_overlap, "fractional overlap in [0,1)");
    mapper_cmd->add_option("--epsilon", m_epsilon,
                           "linkage radius (0 = 3x the sampling pitch)");
    mapper_cmd->add_option("--metric", m_metric, "clustering metric: base | ambient");
    mapper_cmd->add_option("-o,--out", m_out, "write graph JSON here (default stdout)");
    mapper_cmd->add_option("--dot", m_dot, "also write Graphviz DOT here");

    // --- compare ---
    std::string c_a, c_b;
    bool c_nosmooth = false;
    auto* compare_cmd =
        app.add_subcommand("compare", "Test two Reeb graphs for isomorphism");
    compare_cmd->add_option("a", c_a, "first graph JSON file")->required();
    compare_cmd->add_option("b", c_b, "second graph JSON file")->required();
    compare_cmd->add_flag("--no-smooth", c_nosmooth,
                          "compare as-is instead of smoothing degree-2 vertices first");

    // --- check-theorem ---
    std::string t_domain;
    int t_k0 = 4, t_nbase = 4096, t_nfiber = 8, t_intervals = 20;
    std::uint64_t t_seed = 20240817;
    double t_merge = 1e-2, t_overlap = 0.35, t_epsilon = 0.0, t_delta = 1e-6;
    auto* check_cmd = app.add_subcommand(
        "check-theorem",
        "End to end: sweep the domain, realize it as a regular hypersurface, and "
        "confirm the estimated Reeb graph matches");
    std::vector<int> t_exps;
    std::vector<double> t_coeffs;
    check_cmd->add_option("domain", t_domain, "domain JSON file")->required();
    check_cmd->add_option("--k0", t_k0, "ambient dimension of the lift")->required();
    check_cmd->add_option("--exps", t_exps, "fiber exponents m_j (default all 1)")
        ->delimiter(',');
    check_cmd->add_option("--coeffs", t_coeffs, "fiber coefficients c_j (default all 1)")
        ->delimiter(',');
    check_cmd->add_option("--n-base", t_nbase, "target number of base grid points");
    check_cmd->add_option("--n-fiber", t_nfiber, "fiber samples per interior base point");
    check_cmd->add_option("--seed", t_seed, "random seed");
    check_cmd->add_option("--merge-window", t_merge,
                          "critical-value merge window for the swept graph");
    check_cmd->add_option("--intervals", t_intervals, "mapper cover intervals");
    check_cmd->add_option("--overlap", t_overlap, "mapper overlap fraction");
    check_cmd->add_option("--epsilon", t_epsilon,
                          "mapper linkage radius (0 = 3x pitch)");
    check_cmd->add_option("--delta", t_delta, "regularity gradient threshold");

    std::vector<const char*> argv;
    argv.push_back("preeb");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(validate_cmd)) return cmd_validate(v_domain);
        if (app.got_subcommand(graph_cmd))
            return cmd_graph(g_domain, g_smooth_all, g_merge, g_out, g_dot, g_svg);
        if (app.got_subcommand(example_cmd))
            return cmd_example(e_family, e_l, e_router, e_rhole, e_gap, e_stagger, e_out);
        if (app.got_subcommand(lift_cmd))
            return cmd_lift(l_domain, l_k0, l_exps, l_coeffs, l_nbase, l_nfiber, l_seed,
                            l_taus, l_out);
        if (app.got_subcommand(verify_cmd)) return cmd_verify(r_lift, r_delta);
        if (app.got_subcommand(mapper_cmd))
            return cmd_mapper(m_lift, m_intervals, m_overlap, m_epsilon, m_metric, m_out,
                              m_dot);
        if (app.got_subcommand(compare_cmd)) return cmd_compare(c_a, c_b, c_nosmooth);
        if (app.got_subcommand(check_cmd))
            return cmd_check_theorem(t_domain, t_k0, t_exps, t_coeffs, t_nbase, t_nfiber,
                                     t_seed, t_merge, t_intervals, t_overlap, t_epsilon,
                                     t_delta);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace preeb
