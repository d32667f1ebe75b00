#include "isolab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "isolab/verify.hpp"

namespace isolab::cli {

namespace {

struct Config {
    u64 q = 0;
    unsigned ell = 0;
    unsigned n = 2;
    size_t samples = 16;
    u64 seed = 0;
    std::string format = "json";
    std::string output;
    unsigned threads = 0;
    u64 max_q = 1000;
    u64 max_curves = 200000;
    size_t closure_cap = kDefaultClosureCap;
    bool paper = false;
    bool abstract = false;
    std::string input;
    std::string op;
    std::vector<unsigned> ell_list{2, 3, 5, 7};
    u64 q_max = 200;
    u64 q_min = 5;
    size_t instances = 1000;
    std::string witness;
};

unsigned effective_threads(const Config& c, bool flag_given) {
    if (flag_given) {
        if (c.threads == 0) throw DomainError("--threads must be >= 1");
        return c.threads;
    }
    if (const char* env = std::getenv("ISOGENY_LAB_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end == env || *end != '\0' || v == 0 || v > 1024)
            throw DomainError(std::string("ISOGENY_LAB_THREADS must be an integer in [1, 1024], got \"") + env + "\"");
        return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SweepOptions sweep_options(const Config& c, unsigned threads) {
    SweepOptions o;
    o.graph.seed = c.seed;
    o.graph.threads = threads;
    o.graph.max_curves = c.max_curves;
    o.product_factors = c.n;
    o.product_samples = c.samples;
    return o;
}

void check_q(const Config& c, u64 q) {
    if (q > c.max_q)
        throw CapabilityError("q = " + std::to_string(q) + " exceeds --max-q " + std::to_string(c.max_q));
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw StructuralError("malformed JSON in " + path + ": " + e.what());
    }
}

Json basis_json(const Subspace& V) {
    Json b = Json::array();
    for (const auto& v : V.basis()) b.push_back(v);
    return b;
}

VerificationReport module_query(const Config& c) {
    const Json input = read_json_file(c.input);
    const PointedConfiguration cfg = configuration_from_json(input);
    VerificationReport r;
    r.command = "module";
    r.parameters = Json{{"input", c.input}, {"op", c.op}, {"closure_cap", c.closure_cap}, {"configuration", to_json(cfg)}};
    const GaloisModule& M = cfg.module;
    if (c.op == "fixed") {
        const Subspace F = fixed_subspace(M);
        r.result = Json{{"dimension", F.dim()}, {"basis", basis_json(F)}};
    } else if (c.op == "semisimple") {
        const auto v = semisimplicity(M, c.closure_cap);
        const auto G = group_closure(M, c.closure_cap);
        r.result = Json{{"semisimple", v.semisimple}, {"method", to_string(v.method)}};
        if (!G.overflow) r.result["group_order"] = G.elements.size();
    } else if (c.op == "order") {
        if (cfg.hyperplanes.empty()) throw DomainError("--op order needs \"hyperplanes\" in the input");
        Json dims = Json::object();
        for (const auto& [J, HJ] : subspace_lattice(cfg.hyperplanes)) dims[std::to_string(J)] = HJ.dim();
        Json pointed = Json::array();
        for (const auto& h : cfg.hyperplanes) {
            try {
                pointed.push_back(pointedness_check(M, h));
            } catch (const DomainError&) {
                pointed.push_back(nullptr);
            }
        }
        r.result = Json{{"order", graph_order(cfg.hyperplanes)}, {"lattice_dimensions", dims}, {"pointed", pointed}};
    } else if (c.op == "construct") {
        r.declare(claims::kConstruction);
        ConstructionOptions opt;
        opt.closure_cap = c.closure_cap;
        try {
            const auto Q = theorem2_construct(cfg, opt);
            r.result = Json{{"vectors", Q}};
            r.pass(claims::kConstruction);
        } catch (const TheoremViolation& e) {
            r.violate(claims::kConstruction, e.what(),
                      Json{{"kind", "configuration"},
                           {"configuration", to_json(cfg)},
                           {"construction", true},
                           {"require_semisimple", true},
                           {"cyclic", false}});
        }
    } else {
        throw DomainError("unknown --op " + c.op);
    }
    return r;
}

VerificationReport replay_file(const std::string& path) {
    const Json j = read_json_file(path);
    if (j.is_object() && j.contains("kind")) return replay(j);
    if (j.is_object() && j.contains("witness")) return replay(j.at("witness"));
    if (j.is_object() && j.contains("violations") && j.at("violations").is_array() && !j.at("violations").empty()) {
        VerificationReport r;
        for (const auto& v : j.at("violations")) {
            if (!v.is_object() || !v.contains("witness")) throw StructuralError("malformed violation entry in " + path);
            r.merge(replay(v.at("witness")));
        }
        r.command = "replay";
        r.parameters = Json{{"file", path}};
        return r;
    }
    throw StructuralError("malformed witness file " + path + ": expected a witness, a violation or a report");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Isogeny graphs, torsion and Galois-module checks", "isogeny_lab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    auto* seed = app.add_option("--seed", c.seed, "Seed for all randomized steps");
    app.add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--output", c.output, "Write the report to this file instead of stdout");
    auto* threads = app.add_option("--threads", c.threads, "Worker threads (default: ISOGENY_LAB_THREADS or all cores)");
    app.add_option("--max-q", c.max_q, "Largest field size accepted");
    app.add_option("--max-curves", c.max_curves, "Largest number of source curves scanned per field");
    app.add_option("--closure-cap", c.closure_cap, "Largest group closure enumerated")->check(CLI::PositiveNumber);
    (void)seed;

    auto field_opts = [&](CLI::App* s) {
        s->add_option("--q", c.q, "Field size (prime)")->required();
        s->add_option("--ell", c.ell, "Isogeny degree (prime)")->required();
        s->fallthrough();
    };
    auto* t1 = app.add_subcommand("theorem1", "Full rational torsion on order-2 pointed graph targets");
    field_opts(t1);
    auto* t2 = app.add_subcommand("theorem2", "Fixed vectors on product configurations");
    field_opts(t2);
    t2->add_option("--n", c.n, "Number of elliptic factors")->check(CLI::Range(1u, 10u));
    t2->add_option("--samples", c.samples, "Product configurations per field");
    auto* lem = app.add_subcommand("lemmas", "Distinct dual kernels and lattice dimensions on graph targets");
    field_opts(lem);
    auto* ce = app.add_subcommand("counterexample", "The rational counterexample and the abstract necessity witness");
    ce->add_flag("--paper", c.paper, "Reproduce the counterexample over Q (default)");
    ce->add_flag("--abstract", c.abstract, "Check the module-level necessity witness");
    ce->fallthrough();
    auto* mod = app.add_subcommand("module", "Query a Galois module given as JSON");
    mod->add_option("--input", c.input, "Module JSON file")->required();
    mod->add_option("--op", c.op, "Operation")->required()->check(CLI::IsMember({"fixed", "semisimple", "order", "construct"}));
    mod->fallthrough();
    auto* sw = app.add_subcommand("sweep", "All finite-field checks over a range of prime fields");
    sw->add_option("--ell-list", c.ell_list, "Isogeny degrees")->delimiter(',');
    sw->add_option("--q-max", c.q_max, "Fields F_q with q < q-max");
    sw->add_option("--q-min", c.q_min, "Fields F_q with q >= q-min");
    sw->add_option("--n", c.n, "Number of elliptic factors in product checks")->check(CLI::Range(1u, 10u));
    sw->add_option("--samples", c.samples, "Product configurations per field");
    sw->fallthrough();
    auto* su = app.add_subcommand("suite", "Counterexample, necessity witness and random module suites");
    su->add_option("--instances", c.instances, "Random instances per module suite");
    su->add_option("--q", c.q, "Also run the finite-field checks over F_q");
    su->add_option("--ell", c.ell, "Isogeny degree for --q");
    su->fallthrough();
    auto* rp = app.add_subcommand("replay", "Re-run the check recorded in a witness or report file");
    rp->add_option("witness", c.witness, "Witness JSON file")->required();
    rp->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitClean;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitClean;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kExitClean;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }

    VerificationReport r;
    try {
        const unsigned nthreads = effective_threads(c, threads->count() > 0);
        const SweepOptions opt = sweep_options(c, nthreads);
        if (*t1) {
            check_q(c, c.q);
            r = verify_theorem1(c.q, c.ell, opt);
        } else if (*t2) {
            check_q(c, c.q);
            r = verify_theorem2_products(c.q, c.ell, opt);
        } else if (*lem) {
            check_q(c, c.q);
            r = lemma_sweep(c.q, c.ell, opt);
        } else if (*ce) {
            const bool paper = c.paper || !c.abstract;
            if (paper) r = reproduce_paper_counterexample();
            if (c.abstract) {
                VerificationReport a = abstract_necessity_witness();
                if (paper) {
                    r.merge(a);
                    r.seconds += a.seconds;
                    r.parameters["abstract"] = true;
                    for (const auto& [k, v] : a.notes) r.notes["abstract_" + k] = v;
                } else {
                    r = a;
                }
            }
        } else if (*mod) {
            r = module_query(c);
        } else if (*sw) {
            if (c.q_max > c.max_q + 1)
                throw CapabilityError("--q-max " + std::to_string(c.q_max) + " exceeds --max-q " + std::to_string(c.max_q));
            r = sweep(c.ell_list, c.q_max, opt, c.q_min);
        } else if (*su) {
            if ((c.q == 0) != (c.ell == 0)) throw DomainError("suite needs both --q and --ell or neither");
            r = reproduce_paper_counterexample();
            double seconds = r.seconds;
            auto add = [&](const VerificationReport& x) {
                r.merge(x);
                seconds += x.seconds;
            };
            add(abstract_necessity_witness());
            add(lattice_suite(c.instances, c.seed));
            add(construction_suite(c.instances, c.seed));
            add(cyclic_suite(c.instances, c.seed));
            if (c.q != 0) {
                check_q(c, c.q);
                add(finite_field_suite(c.q, c.ell, opt));
            }
            r.command = "suite";
            r.parameters = Json{{"instances", c.instances}, {"seed", c.seed}, {"threads", nthreads}};
            if (c.q != 0) {
                r.parameters["q"] = c.q;
                r.parameters["ell"] = c.ell;
            }
            r.seconds = seconds;
        } else if (*rp) {
            r = replay_file(c.witness);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }

    const std::string text = c.format == "json" ? to_json(r).dump(2) + "\n" : to_text(r);
    if (c.output.empty()) {
        out << text;
    } else {
        std::ofstream f(c.output);
        if (!f) {
            err << "error: cannot write " << c.output << "\n";
            return kExitError;
        }
        f << text;
    }
    return r.clean() ? kExitClean : kExitViolation;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace isolab::cli
