// coherence-forge — command line front end: measure coherence of a state,
// convert coherence to entanglement through the generalized CNOT, run the
// seeded verification suites, and sweep the qubit closed forms.
//
// Exit codes: 0 success, 1 verification-property failure, 2 configuration or
// file validation error, 3 optimizer non-convergence.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <coherence_forge/conversion.hpp>
#include <coherence_forge/io.hpp>

namespace cf = coherence_forge;

namespace {

struct run_config {
    std::string input;
    std::string preset;
    std::string output;
    std::string suite;
    std::string measure = "rel_entropy";
    std::string format = "json";
    std::uint64_t seed = 0;
    int trials = 100;
    std::size_t dim = 2;
    std::size_t ancilla_dim = 0;  // 0: match the system
    double tol = 1e-9;
    double step = 0.05;
    bool g_family = false;
};

cf::density_matrix state_from_preset(const std::string& preset) {
    if (preset.rfind("mc:", 0) == 0) {
        const std::size_t d = std::stoul(preset.substr(3));
        return cf::density_matrix::from_pure(cf::maximally_coherent(d));
    }
    if (preset == "bell") {
        return cf::convert(cf::density_matrix::from_pure(cf::maximally_coherent(2)), 2)
            .state();
    }
    if (preset.rfind("diag:", 0) == 0) {
        const double p = std::stod(preset.substr(5));
        if (p < 0.0 || p > 1.0)
            throw cf::validation_error("preset diag:p needs p in [0, 1]");
        cf::complex_matrix m(2, 2);
        m(0, 0) = p;
        m(1, 1) = 1.0 - p;
        return cf::density_matrix(m);
    }
    throw cf::validation_error("unknown preset '" + preset +
                               "' (expected mc:<d>, bell, diag:<p>)");
}

cf::density_matrix load_state(const run_config& cfg) {
    if (!cfg.input.empty()) return cf::io::read_state_file(cfg.input);
    if (!cfg.preset.empty()) return state_from_preset(cfg.preset);
    throw cf::validation_error("need --input or --preset");
}

void emit(const run_config& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    cf::io::write_text_file(cfg.output, text);
}

cf::coherence_measure parse_measure(const std::string& name) {
    if (name == "l1") return cf::coherence_measure::l1;
    if (name == "rel_entropy") return cf::coherence_measure::rel_entropy;
    if (name == "geometric") return cf::coherence_measure::geometric;
    throw cf::validation_error("unknown measure '" + name +
                               "' (expected l1, rel_entropy, geometric)");
}

unsigned suite_threads(int trials) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned cap = cf::thread_cap_from_env(hw);
    return std::min<unsigned>(std::min(hw, cap), static_cast<unsigned>(trials));
}

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

int run_measure(const run_config& cfg) {
    const cf::density_matrix rho = load_state(cfg);
    cf::optimizer_options opts;
    opts.seed = cfg.seed;

    cf::measure_report report;
    report.add("dim", static_cast<double>(rho.dim()));
    report.add("c_l1", cf::c_l1(rho));
    report.add("c_rel_entropy", cf::c_rel_entropy(rho));
    const cf::simplex_opt_result fid = cf::max_fidelity_incoherent(rho, opts);
    report.add("c_geometric", std::max(0.0, 1.0 - fid.value));
    if (rho.dim() == 2) report.add("c_geometric_qubit", cf::c_geometric_qubit(rho));
    if (cfg.g_family) {
        report.add("c_bures",
                   cf::apply_fidelity_map(cf::fidelity_map::bures, std::min(1.0, fid.value)));
        report.add("c_groverian",
                   cf::apply_fidelity_map(cf::fidelity_map::groverian,
                                          std::min(1.0, fid.value)));
    }
    report.meta("optimizer_tol", opts.tol);
    report.meta("optimizer_starts", opts.starts);
    report.meta("optimizer_iterations", static_cast<double>(fid.iterations));
    report.meta("optimizer_converged_starts", fid.converged_starts);
    report.meta("seed", static_cast<double>(cfg.seed));

    emit(cfg, cfg.format == "csv" ? report.to_csv() : report.to_json());
    return 0;
}

int run_convert(const run_config& cfg) {
    if (cfg.output.empty())
        throw cf::validation_error("convert needs --output for the converted state");
    const cf::density_matrix rho = load_state(cfg);
    const std::size_t d_a = cfg.ancilla_dim == 0 ? rho.dim() : cfg.ancilla_dim;
    const cf::bipartite_state out = cf::convert(rho, d_a);
    cf::io::write_text_file(cfg.output, cf::io::state_to_json(out.state()));

    cf::optimizer_options opts;
    opts.seed = cfg.seed;

    cf::measure_report report;
    report.add("d_system", static_cast<double>(rho.dim()));
    report.add("d_ancilla", static_cast<double>(d_a));
    report.add("input_c_l1", cf::c_l1(rho));
    report.add("input_c_rel_entropy", cf::c_rel_entropy(rho));
    report.add("input_c_geometric", rho.dim() == 2 ? cf::c_geometric_qubit(rho)
                                                   : cf::c_geometric(rho, opts));
    if (rho.dim() == 2 && d_a == 2) {
        report.add("output_concurrence", cf::concurrence_two_qubit(out));
        report.add("output_e_geometric", cf::e_geometric_two_qubit(out));
    }
    report.add("output_hashing_lower_bound", cf::hashing_lower_bound(out));
    const std::size_t s = rho.dim();
    if ((s == 2 && d_a == 2) || (s == 2 && d_a == 3) || (s == 3 && d_a == 2))
        report.add("output_separable", cf::ppt_is_separable_small(out) ? 1.0 : 0.0);
    report.meta("seed", static_cast<double>(cfg.seed));

    std::cout << report.to_json() << '\n';
    return 0;
}

std::vector<cf::verification_record> run_suite(const run_config& cfg) {
    const int trials = cfg.trials;
    const unsigned threads = suite_threads(trials);
    std::vector<cf::verification_record> records;

    if (cfg.suite == "theorem1") {
        records.resize(static_cast<std::size_t>(trials));
        cf::parallel_for_indexed(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
            const std::uint64_t trial_seed = cf::mix_seed(cfg.seed, t);
            std::mt19937_64 rng(trial_seed);
            const cf::density_matrix rho = cf::random_mixed(cfg.dim, cfg.dim, rng());
            const std::size_t n_kraus = 1 + rng() % 4;
            const cf::incoherent_channel channel =
                cf::random_incoherent_channel(cfg.dim * cfg.dim, n_kraus, rng());
            const cf::bound_pair pair = cfg.dim == 2
                                            ? cf::bound_pair::geometric
                                            : cf::bound_pair::rel_entropy_mc_family;
            records[t] = cf::verify_theorem1(rho, channel, pair, trial_seed);
        });
        return records;
    }
    if (cfg.suite == "theorem2") {
        records.resize(static_cast<std::size_t>(trials));
        cf::parallel_for_indexed(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
            const std::uint64_t trial_seed = cf::mix_seed(cfg.seed, t);
            std::mt19937_64 rng(trial_seed);
            const cf::density_matrix rho =
                t % 2 == 0 ? cf::simplex_point::dirichlet(cfg.dim, rng).diagonal_state()
                           : cf::random_mixed(cfg.dim, cfg.dim, rng());
            records[t] = cf::verify_theorem2(rho, cfg.tol, trial_seed);
        });
        return records;
    }
    if (cfg.suite == "cr-equality") {
        records.resize(static_cast<std::size_t>(trials));
        cf::parallel_for_indexed(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
            const std::uint64_t trial_seed = cf::mix_seed(cfg.seed, t);
            std::mt19937_64 rng(trial_seed);
            records[t] =
                cf::verify_equality_cr(cf::random_mixed(cfg.dim, cfg.dim, rng()), trial_seed);
        });
        return records;
    }
    if (cfg.suite == "cr-minimum") {
        records.resize(static_cast<std::size_t>(trials));
        cf::parallel_for_indexed(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
            const std::uint64_t trial_seed = cf::mix_seed(cfg.seed, t);
            std::mt19937_64 rng(trial_seed);
            const cf::density_matrix rho = cf::random_mixed(cfg.dim, cfg.dim, rng());
            records[t] = cf::c_rel_entropy_is_minimum(rho, 1000, trial_seed);
        });
        return records;
    }
    if (cfg.suite == "monotonicity")
        return cf::monotonicity_suite(parse_measure(cfg.measure), trials, cfg.seed,
                                      cfg.dim, threads);
    if (cfg.suite == "convexity")
        return cf::convexity_suite(parse_measure(cfg.measure), trials, cfg.seed,
                                   cfg.dim, threads);
    if (cfg.suite == "qubit-chain") {
        records.resize(2 * static_cast<std::size_t>(trials));
        cf::parallel_for_indexed(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
            const std::uint64_t trial_seed = cf::mix_seed(cfg.seed, t);
            std::mt19937_64 rng(trial_seed);
            const cf::density_matrix rho = cf::random_mixed(2, 2, rng());
            cf::optimizer_options opts;
            opts.seed = rng();

            const double closed = cf::c_geometric_qubit(rho);
            const double embed =
                cf::e_geometric_two_qubit(cf::mc_embed(rho).bipartite());
            const double optimized = cf::e_geometric_mc(cf::mc_embed(rho), opts);

            cf::fnv1a_hasher h;
            for (const cf::cx& z : rho.matrix().data()) h.feed(z);

            cf::verification_record closed_vs_embed;
            closed_vs_embed.check = "qubit_chain_closed_forms";
            closed_vs_embed.seed = trial_seed;
            closed_vs_embed.input_hash = h.hex();
            closed_vs_embed.lhs = embed;
            closed_vs_embed.rhs = closed;
            closed_vs_embed.margin = -std::abs(embed - closed);
            closed_vs_embed.pass = std::abs(embed - closed) <= 1e-9;

            cf::verification_record opt_vs_closed = closed_vs_embed;
            opt_vs_closed.check = "qubit_chain_optimizer";
            opt_vs_closed.lhs = optimized;
            opt_vs_closed.margin = -std::abs(optimized - closed);
            opt_vs_closed.pass = std::abs(optimized - closed) <= 1e-6;

            records[2 * t] = std::move(closed_vs_embed);
            records[2 * t + 1] = std::move(opt_vs_closed);
        });
        return records;
    }
    throw cf::validation_error(
        "unknown suite '" + cfg.suite +
        "' (expected theorem1, theorem2, cr-equality, cr-minimum, monotonicity, "
        "convexity, qubit-chain)");
}

int run_verify(const run_config& cfg) {
    if (cfg.trials < 1) throw cf::validation_error("--trials must be at least 1");
    if (cfg.tol <= 0.0) throw cf::validation_error("--tol must be positive");
    const std::vector<cf::verification_record> records = run_suite(cfg);

    std::string text = "{\"suite\":\"" + cfg.suite + "\",\"dim\":" +
                       std::to_string(cfg.dim) + ",\"trials\":" +
                       std::to_string(cfg.trials) + ",\"seed\":" +
                       std::to_string(cfg.seed) + ",\"timestamp\":\"" +
                       timestamp_utc() + "\"}\n";
    for (const cf::verification_record& rec : records) text += rec.to_jsonl() + "\n";
    emit(cfg, text);

    const std::size_t failures = cf::count_failures(records);
    if (failures > 0) {
        std::cerr << cfg.suite << ": " << failures << " of " << records.size()
                  << " checks failed (worst margin " << cf::worst_margin(records)
                  << ")\n";
        return 1;
    }
    return 0;
}

int run_sweep(const run_config& cfg) {
    if (cfg.step <= 0.0) throw cf::validation_error("--step must be positive");
    std::string csv = "r01,c_l1,c_g,concurrence_of_embed,e_g_of_embed\n";
    for (int k = 0;; ++k) {
        const double r01 = k * cfg.step;
        if (r01 > 0.5 + 1e-12) break;
        cf::complex_matrix m(2, 2);
        m(0, 0) = 0.5;
        m(1, 1) = 0.5;
        m(0, 1) = std::min(r01, 0.5);
        m(1, 0) = std::min(r01, 0.5);
        const cf::density_matrix rho(m);
        const cf::bipartite_state embed = cf::convert(rho, 2);
        csv += cf::format_double(r01) + "," + cf::format_double(cf::c_l1(rho)) + "," +
               cf::format_double(cf::c_geometric_qubit(rho)) + "," +
               cf::format_double(cf::concurrence_two_qubit(embed)) + "," +
               cf::format_double(cf::e_geometric_two_qubit(embed)) + "\n";
    }
    emit(cfg, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    run_config cfg;
    CLI::App app{"coherence and entanglement measures on small quantum states"};
    app.require_subcommand(1);

    CLI::App* measure = app.add_subcommand(
        "measure", "compute coherence measures of a state");
    measure->add_option("--input", cfg.input, "state file (density or pure)");
    measure->add_option("--preset", cfg.preset, "mc:<d>, bell, or diag:<p>");
    measure->add_option("--seed", cfg.seed, "optimizer seed");
    measure->add_option("--output", cfg.output, "write the report here");
    measure->add_option("--format", cfg.format, "json or csv");
    measure->add_flag("--g-family", cfg.g_family, "include bures and groverian values");

    CLI::App* convert = app.add_subcommand(
        "convert", "attach an incoherent ancilla and apply the generalized CNOT");
    convert->add_option("--input", cfg.input, "state file (density or pure)");
    convert->add_option("--preset", cfg.preset, "mc:<d>, bell, or diag:<p>");
    convert->add_option("--ancilla-dim", cfg.ancilla_dim, "ancilla dimension (default: system)");
    convert->add_option("--seed", cfg.seed, "optimizer seed");
    convert->add_option("--output", cfg.output, "converted-state file")->required();

    CLI::App* verify = app.add_subcommand("verify", "run a seeded verification suite");
    verify->add_option("suite", cfg.suite,
                       "theorem1 | theorem2 | cr-equality | cr-minimum | "
                       "monotonicity | convexity | qubit-chain")
        ->required();
    verify->add_option("--trials", cfg.trials, "number of Monte Carlo trials");
    verify->add_option("--seed", cfg.seed, "master seed");
    verify->add_option("--dim", cfg.dim, "system dimension");
    verify->add_option("--tol", cfg.tol, "incoherence tolerance where applicable");
    verify->add_option("--measure", cfg.measure, "l1 | rel_entropy | geometric");
    verify->add_option("--output", cfg.output, "write JSONL records here");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "tabulate qubit closed forms over |rho01| in [0, 1/2]");
    sweep->add_option("--step", cfg.step, "grid step for |rho01|");
    sweep->add_option("--output", cfg.output, "write the CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(measure)) return run_measure(cfg);
        if (app.got_subcommand(convert)) return run_convert(cfg);
        if (app.got_subcommand(verify)) return run_verify(cfg);
        if (app.got_subcommand(sweep)) return run_sweep(cfg);
        return 2;
    } catch (const cf::no_convergence_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
