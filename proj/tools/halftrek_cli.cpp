// halftrek: command-line front end.
//
// Exit codes: 0 success, 1 usage or parse error, 2 capability or precondition
// error, 3 numerically nongeneric parameters, 4 numeric verification failed.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "halftrek/enumerate.hpp"
#include "halftrek/errors.hpp"
#include "halftrek/gcrit.hpp"
#include "halftrek/htc.hpp"
#include "halftrek/numeric.hpp"
#include "halftrek/report.hpp"

namespace {

using namespace halftrek;

enum ExitCode { ok = 0, usage = 1, capability = 2, nongeneric = 3, verify_failed = 4 };

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error(0, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string set_text(NodeSet s) {
    std::string out = "{";
    bool first = true;
    for (int v : s) {
        out += (first ? "" : ",") + std::to_string(v + 1);
        first = false;
    }
    return out + "}";
}

void print_classification(std::ostream& out, const MixedGraph& g, const Classification& c,
                          const std::string& indent = "") {
    out << indent << "verdict: " << to_string(c.verdict) << '\n';
    out << indent << "solved nodes: " << set_text(c.solved) << '\n';
    if (c.witness) {
        out << indent << "order:";
        for (int v : c.witness->order) out << ' ' << v + 1;
        out << '\n';
        for (int v = 0; v < g.size(); ++v) {
            out << indent << "Y_" << v + 1 << " = " << set_text(c.witness->y[v]) << '\n';
        }
    }
}

struct ClassifyOpts {
    std::string path;
    bool json = false;
    bool decompose = false;
};

int run_classify(const ClassifyOpts& o) {
    MixedGraph g = parse_graph(read_file(o.path));
    Classification c = classify(g);
    if (!o.decompose) {
        if (o.json) {
            std::cout << classification_json(c).dump(2) << '\n';
        } else {
            print_classification(std::cout, g, c);
        }
        return ok;
    }
    DecompositionReport r = classify_via_decomposition(g);
    if (o.json) {
        nlohmann::json doc = classification_json(c);
        doc["decomposition"] = decomposition_json(r);
        std::cout << doc.dump(2) << '\n';
        return ok;
    }
    print_classification(std::cout, g, c);
    for (std::size_t i = 0; i < r.components.size(); ++i) {
        const auto& comp = r.components[i];
        std::cout << "component " << i + 1 << ": nodes";
        for (int v : comp.nodes) std::cout << ' ' << v + 1;
        std::cout << " (district " << set_text(comp.district) << ")\n";
        print_classification(std::cout, comp.graph, r.per_component[i], "  ");
    }
    std::cout << "combined verdict: " << to_string(r.combined) << '\n';
    return ok;
}

struct VerifyOpts {
    std::string path;
    int trials = 20;
    std::uint64_t seed = 1;
    double tol = 1e-6;
    std::string params;
    std::string export_dir;
    bool json = false;
};

struct RoundTrip {
    double lambda_error = 0;
    double omega_error = 0;
    double residual = 0;
    Eigen::MatrixXd sigma, lambda_hat, omega_hat;
};

RoundTrip round_trip(const MixedGraph& g, const Params& p, const HtcWitness& w) {
    RoundTrip rt;
    rt.sigma = phi(g, p);
    rt.lambda_hat = recover_lambda(g, rt.sigma, w);
    OmegaEstimate om = recover_omega(g, rt.sigma, rt.lambda_hat);
    rt.omega_hat = om.omega;
    rt.residual = om.max_residual;
    rt.lambda_error = relative_error(rt.lambda_hat, p.lambda);
    rt.omega_error = relative_error(rt.omega_hat, p.omega);
    return rt;
}

void export_round_trip(const std::string& dir, const RoundTrip& rt) {
    std::filesystem::create_directories(dir);
    std::ofstream(dir + "/sigma.csv") << matrix_csv(rt.sigma);
    std::ofstream(dir + "/lambda_hat.csv") << matrix_csv(rt.lambda_hat);
    std::ofstream(dir + "/omega_hat.csv") << matrix_csv(rt.omega_hat);
}

int verify_identifiable(const VerifyOpts& o, const MixedGraph& g, const HtcWitness& w) {
    nlohmann::json doc{{"verdict", "identifiable"}, {"trials", nlohmann::json::array()}};
    double worst = 0;
    RoundTrip last;
    if (!o.params.empty()) {
        Params p = params_from_json(read_file(o.params), g.size());
        if (auto why = params_violation(g, p); !why.empty()) throw parse_error(0, why);
        try {
            last = round_trip(g, p, w);
        } catch (const nongeneric_error& e) {
            std::cerr << "nongeneric parameters: " << e.what() << '\n';
            return nongeneric;
        }
        worst = std::max(last.lambda_error, last.omega_error);
        doc["trials"].push_back({{"lambda_error", last.lambda_error},
                                 {"omega_error", last.omega_error},
                                 {"residual", last.residual}});
    } else {
        for (int trial = 0; trial < o.trials; ++trial) {
            bool done = false;
            for (int attempt = 0; attempt <= 3 && !done; ++attempt) {
                std::uint64_t s = sub_seed(o.seed, static_cast<std::uint64_t>(trial) * 4 + attempt);
                try {
                    Params p = sample_params(g, s);
                    last = round_trip(g, p, w);
                    done = true;
                } catch (const nongeneric_error& e) {
                    std::cerr << "trial " << trial + 1 << ": " << e.what() << ", redrawing\n";
                }
            }
            if (!done) {
                std::cerr << "trial " << trial + 1 << ": nongeneric after 3 retries\n";
                return nongeneric;
            }
            worst = std::max({worst, last.lambda_error, last.omega_error});
            doc["trials"].push_back({{"lambda_error", last.lambda_error},
                                     {"omega_error", last.omega_error},
                                     {"residual", last.residual}});
        }
    }
    if (!o.export_dir.empty()) export_round_trip(o.export_dir, last);
    const bool pass = worst <= o.tol;
    doc["max_relative_error"] = worst;
    doc["tolerance"] = o.tol;
    doc["pass"] = pass;
    if (o.json) {
        std::cout << doc.dump(2) << '\n';
    } else {
        std::cout << "verdict: identifiable\n"
                  << "round trips: " << doc["trials"].size() << '\n'
                  << "max relative error: " << worst << " (tolerance " << o.tol << ")\n"
                  << (pass ? "pass" : "FAIL") << '\n';
    }
    return pass ? ok : verify_failed;
}

int verify_rank(const VerifyOpts& o, const MixedGraph& g, Verdict verdict) {
    const int n_rows = static_cast<int>(nonsibling_pairs(g).size());
    const int n_cols = g.num_directed();
    nlohmann::json ranks = nlohmann::json::array();
    bool all_deficient = true;
    for (int trial = 0; trial < o.trials; ++trial) {
        Params p = sample_params(g, sub_seed(o.seed, trial));
        int r = numeric_rank(jacobian(g, p), 1e-7);
        ranks.push_back(r);
        all_deficient = all_deficient && r < n_cols;
    }
    const bool pass = verdict != Verdict::infinite_to_one || all_deficient;
    if (o.json) {
        std::cout << nlohmann::json{{"verdict", to_string(verdict)},
                                    {"jacobian_rows", n_rows},
                                    {"jacobian_cols", n_cols},
                                    {"ranks", ranks},
                                    {"pass", pass}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << "verdict: " << to_string(verdict) << '\n'
                  << "jacobian: " << n_rows << " nonsibling pairs x " << n_cols << " directed edges\n";
        std::cout << "rank(J) at " << o.trials << " random points:";
        for (const auto& r : ranks) std::cout << ' ' << r.get<int>();
        std::cout << "  (|D| = " << n_cols << ")\n";
        if (verdict == Verdict::infinite_to_one) {
            std::cout << (all_deficient ? "rank-deficient: pass" : "full column rank: FAIL") << '\n';
        }
    }
    return pass ? ok : verify_failed;
}

int run_verify(const VerifyOpts& o) {
    MixedGraph g = parse_graph(read_file(o.path));
    Classification c = classify(g);
    if (c.verdict == Verdict::identifiable) return verify_identifiable(o, g, *c.witness);
    return verify_rank(o, g, c.verdict);
}

struct EnumerateOpts {
    int nodes = 3;
    bool acyclic = false;
    std::string out;
};

void write_csv(const std::string& path, const std::string& header, const std::string& line) {
    if (path.empty()) {
        std::cout << header << '\n' << line << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw parse_error(0, "cannot write " + path);
    f << header << '\n' << line << '\n';
}

int run_enumerate(const EnumerateOpts& o) {
    const GraphFamily family = o.acyclic ? GraphFamily::acyclic : GraphFamily::cyclic;
    ProgressFn progress;
    if (o.nodes >= 5) {
        progress = [](long done, long total) {
            std::cerr << "\rclassified " << done << " / " << total << std::flush;
            if (done == total) std::cerr << '\n';
        };
    }
    CensusRow row = tabulate(o.nodes, family, default_threads(), progress);
    write_csv(o.out, census_csv_header(), census_csv_line(row));
    return ok;
}

struct SimulateOpts {
    int nodes = 25;
    int edges = 25;
    int samples = 500;
    std::uint64_t seed = 1;
    bool acyclic = false;
    std::string out;
};

int run_simulate(const SimulateOpts& o) {
    SimulationRow row;
    try {
        row = simulate(o.nodes, o.edges, o.samples, o.acyclic, o.seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    write_csv(o.out, simulation_csv_header(), simulation_csv_line(row));
    return ok;
}

struct GcOpts {
    std::string path;
    bool json = false;
};

int run_gc(const GcOpts& o) {
    MixedGraph g = parse_graph(read_file(o.path));
    GcResult r = gc_identifiable(g);
    if (o.json) {
        std::cout << gc_json(r).dump(2) << '\n';
        return ok;
    }
    std::cout << (r.identifiable ? "GC-identifiable" : "not GC-identifiable") << '\n';
    if (r.witness) {
        const GcWitness& w = *r.witness;
        std::cout << "topological order:";
        for (int v : w.topological) std::cout << ' ' << v + 1;
        std::cout << "\ncondition: " << (w.condition == GcCondition::c1 ? "C1" : "C2") << '\n';
        for (int v = 0; v < g.size(); ++v) {
            std::cout << "A_" << v + 1 << ": Y = " << set_text(w.nodes[v].y)
                      << ", Z = " << set_text(w.nodes[v].z) << '\n';
        }
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Half-trek criterion identifiability for linear structural equation models"};
    app.require_subcommand(1);

    ClassifyOpts classify_opts;
    auto* classify_cmd = app.add_subcommand("classify", "Classify a mixed graph");
    classify_cmd->add_option("path", classify_opts.path, "Graph file")->required();
    classify_cmd->add_flag("--json", classify_opts.json, "JSON output");
    classify_cmd->add_flag("--decompose", classify_opts.decompose,
                           "Also classify the mixed components (acyclic graphs)");

    ClassifyOpts decompose_opts;
    decompose_opts.decompose = true;
    auto* decompose_cmd = app.add_subcommand("decompose", "Alias for classify --decompose");
    decompose_cmd->add_option("path", decompose_opts.path, "Graph file")->required();
    decompose_cmd->add_flag("--json", decompose_opts.json, "JSON output");

    VerifyOpts verify_opts;
    auto* verify_cmd = app.add_subcommand("verify", "Numerically confirm the classification");
    verify_cmd->add_option("path", verify_opts.path, "Graph file")->required();
    verify_cmd->add_option("--trials", verify_opts.trials, "Number of random parameter draws")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", verify_opts.seed, "Random seed");
    verify_cmd->add_option("--tol", verify_opts.tol, "Maximum relative recovery error");
    verify_cmd->add_option("--params", verify_opts.params,
                           "JSON file with fixed 'lambda' and 'omega' matrices");
    verify_cmd->add_option("--export", verify_opts.export_dir,
                           "Directory for sigma/lambda_hat/omega_hat CSV of the last trial");
    verify_cmd->add_flag("--json", verify_opts.json, "JSON output");

    EnumerateOpts enumerate_opts;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "HTC census of unlabeled graphs");
    enumerate_cmd->add_option("--nodes", enumerate_opts.nodes, "Number of nodes (3-5)")->required();
    enumerate_cmd->add_flag("--acyclic", enumerate_opts.acyclic,
                            "Acyclic graphs (default: cyclic graphs)");
    enumerate_cmd->add_option("--out", enumerate_opts.out, "CSV output file (default stdout)");

    SimulateOpts simulate_opts;
    auto* simulate_cmd = app.add_subcommand("simulate", "Classify random labeled graphs");
    simulate_cmd->add_option("--nodes", simulate_opts.nodes, "Number of nodes")->required();
    simulate_cmd->add_option("--edges", simulate_opts.edges, "Number of edges")->required();
    simulate_cmd->add_option("--samples", simulate_opts.samples, "Number of graphs");
    simulate_cmd->add_option("--seed", simulate_opts.seed, "Random seed");
    simulate_cmd->add_flag("--acyclic", simulate_opts.acyclic, "Acyclic graphs only");
    simulate_cmd->add_option("--out", simulate_opts.out, "CSV output file (default stdout)");

    GcOpts gc_opts;
    auto* gc_cmd = app.add_subcommand("gc", "G-criterion check (acyclic, at most 7 nodes)");
    gc_cmd->add_option("path", gc_opts.path, "Graph file")->required();
    gc_cmd->add_flag("--json", gc_opts.json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*classify_cmd) return run_classify(classify_opts);
        if (*decompose_cmd) return run_classify(decompose_opts);
        if (*verify_cmd) return run_verify(verify_opts);
        if (*enumerate_cmd) return run_enumerate(enumerate_opts);
        if (*simulate_cmd) return run_simulate(simulate_opts);
        if (*gc_cmd) return run_gc(gc_opts);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return usage;
    } catch (const capability_error& e) {
        std::cerr << "capability error: " << e.what() << '\n';
        return capability;
    } catch (const precondition_error& e) {
        std::cerr << "precondition error: " << e.what() << '\n';
        return capability;
    } catch (const nongeneric_error& e) {
        std::cerr << "nongeneric parameters: " << e.what() << '\n';
        return nongeneric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}
