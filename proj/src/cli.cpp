#include "p7col/cli.hpp"

#include "p7col/engine.hpp"
#include "p7col/instance_io.hpp"
#include "p7col/report.hpp"
#include "p7col/testkit.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace p7col {

namespace {

std::string slurp(const std::string& path, std::istream& input) {
    std::ostringstream buf;
    if (path == "-") {
        buf << input.rdbuf();
        return buf.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path);
    buf << file.rdbuf();
    return buf.str();
}

double millis_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

int exit_code(const Outcome& outcome) { return outcome.invalid() ? kInvalidInput : kDecided; }

struct SolveArgs {
    std::string mode = "trust";
    bool json = false;
    int threads = 1;
    bool stats = false;
    bool reference = false;
    std::string file;
};

struct CheckArgs {
    bool explain = false;
    bool dot = false;
    int threads = 1;
    std::string file;
};

struct GenerateArgs {
    std::string kind;
    std::uint64_t seed = 0;
    int n = 20;
    std::vector<int> sizes;
    int edges = -1;
    bool lists = false;
};

struct BenchArgs {
    std::string suite;
    int threads = 1;
    int repeat = 3;
};

int run_solve(const SolveArgs& a, std::istream& input, std::ostream& out, std::ostream& err) {
    const Instance inst = parse_instance(slurp(a.file, input));
    SolveOptions options;
    options.mode = a.mode == "verify" ? Mode::Verify : Mode::Trust;
    options.threads = a.threads;
    options.reference_kernel = a.reference;
    const Outcome outcome = solve(inst.graph, inst.lists, options);
    out << emit_result(outcome, a.json ? OutputFormat::Json : OutputFormat::Text, a.stats);
    if (a.stats && !a.json) {
        const auto& s = outcome.stats;
        err << "c branches " << s.branches << "\nc survived " << s.survived << "\nc propagations " << s.propagations
            << "\nc sat_instances " << s.sat_instances << "\nc fallback_activations " << s.fallback_activations
            << "\nc anchor_colourings " << s.anchor_colourings << "\nc millis " << s.millis << '\n';
    }
    return exit_code(outcome);
}

int run_verify(const std::string& file, const std::string& colouring_file, std::istream& input, std::ostream& out) {
    const Instance inst = parse_instance(slurp(file, input));
    const std::string text = slurp(colouring_file, input);
    if (text.rfind("UNSAT", 0) == 0 || text.rfind("INVALID", 0) == 0) {
        out << "REJECTED\nnote no colouring given\n";
        return kInvalidInput;
    }
    const auto colouring = parse_colouring(text, inst.graph.order());
    if (verify_colouring(inst.graph, inst.lists, colouring)) {
        out << "VALID\n";
        return kDecided;
    }
    for (Vertex v = 0; v < inst.graph.order(); ++v) {
        if (!mask_has(inst.lists[v], colouring[v])) {
            out << "REJECTED\nnote vertex " << v + 1 << " coloured outside its list\n";
            return kInvalidInput;
        }
        for (Vertex w : inst.graph.neighbours(v))
            if (w > v && colouring[w] == colouring[v]) {
                out << "REJECTED\nnote edge " << v + 1 << ' ' << w + 1 << " is monochromatic\n";
                return kInvalidInput;
            }
    }
    out << "REJECTED\n";
    return kInvalidInput;
}

int run_check(const CheckArgs& a, std::istream& input, std::ostream& out) {
    const Instance inst = parse_instance(slurp(a.file, input));
    const auto violation = check_promise(inst.graph, a.threads);
    if (a.dot) out << structure_dot(inst.graph);
    else if (a.explain) out << explain_structure(inst.graph, a.threads);
    else if (!violation) out << "OK\n";
    else {
        Outcome o;
        o.result = *violation;
        out << emit_result(o, OutputFormat::Text);
    }
    return violation ? kInvalidInput : kDecided;
}

int run_generate(const GenerateArgs& a, std::ostream& out) {
    const auto kind = gen_kind_from_string(a.kind);
    if (!kind) throw CLI::ValidationError("--kind", "unknown generator " + a.kind);
    GenSpec spec;
    spec.kind = *kind;
    spec.seed = a.seed;
    spec.n = a.n;
    spec.sizes = a.sizes;
    spec.edges = a.edges;
    const Generated gen = generate(spec);
    std::vector<ColourMask> lists(gen.graph.order(), kAllColours);
    if (a.lists) {
        Rng rng(a.seed ^ 0x9e3779b97f4a7c15ULL);
        lists = random_lists(gen.graph.order(), rng);
    }
    out << "c " << to_string(*kind) << " seed " << a.seed << '\n' << emit_instance(gen.graph, lists);
    return kDecided;
}

int run_oracle(const std::string& file, std::istream& input, std::ostream& out) {
    const Instance inst = parse_instance(slurp(file, input));
    Outcome o;
    if (auto f = oracle_solve(inst.graph, inst.lists)) o.result = std::move(*f);
    else o.result = Uncolourable{};
    out << emit_result(o, OutputFormat::Text);
    return kDecided;
}

int run_bench(const BenchArgs& a, std::ostream& out) {
    SolveOptions options;
    options.threads = a.threads;
    auto time_solve = [&](const Graph& g, std::span<const ColourMask> lists, const SolveOptions& o) {
        double best = 1e300;
        Outcome outcome;
        for (int r = 0; r < std::max(1, a.repeat); ++r) {
            const auto start = std::chrono::steady_clock::now();
            outcome = solve(g, lists, o);
            best = std::min(best, millis_since(start));
        }
        return std::pair{best, outcome};
    };
    auto status = [](const Outcome& o) { return o.colourable() ? "SAT" : o.uncolourable() ? "UNSAT" : "INVALID"; };

    if (a.suite == "scale") {
        for (int n : {250, 500, 1000, 2000}) {
            GenSpec spec{GenKind::BlownupC5, 1, n, std::vector<int>(5, n / 5)};
            const Generated gen = generate(spec);
            std::vector<ColourMask> lists(gen.graph.order(), kAllColours);
            auto [ms, outcome] = time_solve(gen.graph, lists, options);
            out << "scale blownup_c5 n=" << n << " m=" << gen.graph.size() << ' ' << status(outcome)
                << " millis=" << ms << " branches=" << outcome.stats.branches << '\n';
        }
        return kDecided;
    }
    if (a.suite == "kernels") {
        for (int n : {20, 30, 40}) {
            double ref = 0, ker = 0;
            std::uint64_t branches = 0;
            for (std::uint64_t seed = 0; seed < 50; ++seed) {
                GenSpec spec;
                spec.kind = GenKind::SkeletonBuilt;
                spec.seed = seed;
                spec.n = n;
                const Generated gen = generate(spec);
                Rng rng(seed);
                const auto lists = random_lists(n, rng);
                SolveOptions reference = options;
                reference.reference_kernel = true;
                auto [r_ms, r_out] = time_solve(gen.graph, lists, reference);
                auto [k_ms, k_out] = time_solve(gen.graph, lists, options);
                ref += r_ms;
                ker += k_ms;
                branches += k_out.stats.branches;
            }
            out << "kernels skeleton_built n=" << n << " instances=50 reference_millis=" << ref
                << " kernel_millis=" << ker << " branches=" << branches << '\n';
        }
        return kDecided;
    }
    if (a.suite == "oracle") {
        for (int n : {20, 30, 40}) {
            double engine_ms = 0, oracle_ms = 0;
            for (std::uint64_t seed = 0; seed < 50; ++seed) {
                GenSpec spec;
                spec.kind = GenKind::SkeletonBuilt;
                spec.seed = seed;
                spec.n = n;
                const Generated gen = generate(spec);
                Rng rng(seed);
                const auto lists = random_lists(n, rng);
                engine_ms += time_solve(gen.graph, lists, options).first;
                const auto start = std::chrono::steady_clock::now();
                (void)oracle_solve(gen.graph, lists);
                oracle_ms += millis_since(start);
            }
            out << "oracle skeleton_built n=" << n << " instances=50 engine_millis=" << engine_ms
                << " oracle_millis=" << oracle_ms << '\n';
        }
        return kDecided;
    }
    throw CLI::ValidationError("--suite", "unknown suite " + a.suite + " (scale, kernels, oracle)");
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::istream& input, std::ostream& out, std::ostream& err) {
    CLI::App app{"List 3-colouring of {P7, triangle}-free graphs", "p7col"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Decide list 3-colourability and print a colouring");
    solve_cmd->add_option("--mode", solve_args.mode, "trust: assume the promise; verify: check it first")
        ->check(CLI::IsMember({"trust", "verify"}));
    solve_cmd->add_flag("--json", solve_args.json, "JSON output");
    solve_cmd->add_option("--parallel", solve_args.threads, "Worker threads")->check(CLI::PositiveNumber);
    solve_cmd->add_flag("--stats", solve_args.stats, "Report counters and timing");
    solve_cmd->add_flag("--reference", solve_args.reference, "Use the serial reference branch search");
    solve_cmd->add_option("FILE", solve_args.file, "Instance file, - for stdin")->required();

    std::string verify_file, verify_colouring_file;
    auto* verify_cmd = app.add_subcommand("verify", "Check a colouring against an instance");
    verify_cmd->add_option("FILE", verify_file)->required();
    verify_cmd->add_option("COLOURING_FILE", verify_colouring_file)->required();

    CheckArgs check_args;
    auto* check_cmd = app.add_subcommand("check-promise", "Search for a triangle or an induced P7");
    check_cmd->add_flag("--explain", check_args.explain, "Print the structure report as JSON");
    check_cmd->add_flag("--dot", check_args.dot, "Print the skeleton as Graphviz");
    check_cmd->add_option("--parallel", check_args.threads, "Worker threads")->check(CLI::PositiveNumber);
    check_cmd->add_option("FILE", check_args.file)->required();

    GenerateArgs gen_args;
    auto* gen_cmd = app.add_subcommand("generate", "Emit a generated promise instance");
    gen_cmd->add_option("--kind", gen_args.kind, "blownup_c5, blownup_c7, skeleton_built or random_rejection")
        ->required();
    gen_cmd->add_option("--seed", gen_args.seed)->required();
    gen_cmd->add_option("--n", gen_args.n, "Vertex count")->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--sizes", gen_args.sizes, "Blow-up class sizes")->delimiter(',');
    gen_cmd->add_option("--edges", gen_args.edges, "Random edge attempts or target edge count");
    gen_cmd->add_flag("--lists", gen_args.lists, "Attach random lists");

    std::string oracle_file;
    auto* oracle_cmd = app.add_subcommand("oracle", "Solve by backtracking");
    oracle_cmd->add_option("FILE", oracle_file)->required();

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Timing suites");
    bench_cmd->add_option("--suite", bench_args.suite, "scale, kernels or oracle")->required();
    bench_cmd->add_option("--parallel", bench_args.threads)->check(CLI::PositiveNumber);
    bench_cmd->add_option("--repeat", bench_args.repeat)->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (*solve_cmd) return run_solve(solve_args, input, out, err);
        if (*verify_cmd) return run_verify(verify_file, verify_colouring_file, input, out);
        if (*check_cmd) return run_check(check_args, input, out);
        if (*gen_cmd) return run_generate(gen_args, out);
        if (*oracle_cmd) return run_oracle(oracle_file, input, out);
        if (*bench_cmd) return run_bench(bench_args, out);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kDecided;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kDecided;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        return kError;
    } catch (const ParseError& e) {
        err << "parse error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}

} // namespace p7col
