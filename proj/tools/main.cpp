// curbkit command line: generate games, find closed sets, find equilibria,
// run benchmark sweeps. Exit codes: 0 ok, 2 usage/parameter error, 3 input
// or I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <curbkit/experiments.hpp>
#include <curbkit/game_io.hpp>
#include <curbkit/nash.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace curbkit;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& given) {
    if (given) return *given;
    std::random_device rd;
    const std::uint64_t seed = (std::uint64_t(rd()) << 32) ^ rd();
    std::cerr << "rng-seed: " << seed << "\n";  // defaulted seeds stay reproducible post hoc
    return seed;
}

ParsedGame load_game(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read game file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_game(buf.str());
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw InputError("cannot write: " + path);
}

// 1-based labels throughout the surface; internal indices stay 0-based.
std::vector<int> one_based(const std::vector<int>& v) {
    std::vector<int> out;
    out.reserve(v.size());
    for (const int i : v) out.push_back(i + 1);
    return out;
}

std::string label_list(const std::vector<int>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(v[i] + 1);
    }
    return out + "}";
}

std::string seed_label(const StrategyRef& s) {
    return (s.player == Player::Row ? "r:" : "c:") + std::to_string(s.index + 1);
}

StrategyRef parse_seed_label(const std::string& text, int rows, int cols) {
    if (text.size() < 3 || (text[0] != 'r' && text[0] != 'c') || text[1] != ':')
        throw UsageError("bad seed label (want r:K or c:K): '" + text + "'");
    int k = 0;
    const char* begin = text.data() + 2;
    const char* end = text.data() + text.size();
    const auto [p, ec] = std::from_chars(begin, end, k);
    if (ec != std::errc{} || p != end)
        throw UsageError("bad seed label (want r:K or c:K): '" + text + "'");
    const Player player = text[0] == 'r' ? Player::Row : Player::Col;
    const int count = player == Player::Row ? rows : cols;
    if (k < 1 || k > count)
        throw UsageError("seed label out of range: '" + text + "' (game has " +
                         std::to_string(count) + ")");
    return {player, k - 1};
}

json report_json(const CurbReport& rep) {
    json j;
    j["rows"] = one_based(rep.set.row_set);
    j["cols"] = one_based(rep.set.col_set);
    j["size"] = rep.set.size();
    j["lfp_calls"] = rep.lfp_calls;
    j["iterations"] = rep.iterations;
    j["minimal"] = rep.minimal;
    if (rep.seed) j["seed"] = seed_label(*rep.seed);
    return j;
}

std::string report_line(int ordinal, const CurbReport& rep) {
    std::string line = "set " + std::to_string(ordinal) + ": rows " +
                       label_list(rep.set.row_set) + " cols " + label_list(rep.set.col_set) +
                       " size " + std::to_string(rep.set.size());
    if (rep.seed) line += " seed " + seed_label(*rep.seed);
    line += " lfp_calls " + std::to_string(rep.lfp_calls);
    return line + "\n";
}

template <class T>
std::string mix_text(const MixedStrategy<T>& mix) {
    std::string out = (mix.player == Player::Row ? "r:{" : "c:{");
    bool first = true;
    for (const auto& [i, p] : mix.probs) {
        if (!first) out += ", ";
        first = false;
        out += std::to_string(i + 1) + ":" + format_scalar(p);
    }
    return out + "}";
}

template <class T>
json mix_json(const MixedStrategy<T>& mix) {
    json arr = json::array();
    for (const auto& [i, p] : mix.probs) arr.push_back({{"strategy", i + 1}, {"prob", format_scalar(p)}});
    return arr;
}

template <class T>
json profile_json(const NashProfile<T>& prof) {
    json j;
    j["row"] = mix_json(prof.row_mix);
    j["col"] = mix_json(prof.col_mix);
    j["regret"] = format_scalar(prof.regret);
    return j;
}

template <class T>
std::string profile_line(int ordinal, const NashProfile<T>& prof) {
    return "equilibrium " + std::to_string(ordinal) + ": " + mix_text(prof.row_mix) + " " +
           mix_text(prof.col_mix) + " regret " + format_scalar(prof.regret) + "\n";
}

// ---- generate ----------------------------------------------------------

int cmd_generate(const GeneratorSpec& spec, bool seed_given, const std::string& out_path) {
    GeneratorSpec gs = spec;
    if (gs.family == Family::Random || gs.family == Family::Covariant)
        gs.rng_seed = resolve_seed(seed_given ? std::optional<std::uint64_t>(spec.rng_seed)
                                              : std::nullopt);
    const GameVariant gv = build_game(gs);
    std::visit([&](const auto& g) { write_text(out_path, serialize_game(g)); }, gv);
    return 0;
}

// ---- solve -------------------------------------------------------------

struct SolveOptions {
    std::string mode;
    std::string seed_label;
    std::optional<std::uint64_t> rng_seed;
    bool as_json = false;
};

template <class T>
int solve_game(const Game<T>& g, const SolveOptions& opt) {
    std::vector<CurbReport> reports;
    long long total_lfp = 0;

    if (opt.mode == "all") {
        reports = all_minimal_curb(g, &total_lfp);
    } else if (opt.mode == "one") {
        std::mt19937_64 rng(resolve_seed(opt.rng_seed));
        reports.push_back(one_minimal_curb(g, rng));
        total_lfp = reports.back().lfp_calls;
    } else if (opt.mode == "small") {
        reports.push_back(smallest_minimal_curb(g));
        total_lfp = reports.back().lfp_calls;
    } else if (opt.mode == "containing") {
        if (opt.seed_label.empty())
            throw UsageError("--mode containing requires --seed-strategy");
        const auto seed = parse_seed_label(opt.seed_label, g.rows(), g.cols());
        reports.push_back(min_containing_curb(g, seed));
        total_lfp = reports.back().lfp_calls;
    } else {
        throw UsageError("unknown mode: '" + opt.mode + "'");
    }

    if (opt.as_json) {
        json j;
        j["command"] = "solve";
        j["mode"] = opt.mode;
        j["numeric_mode"] = mode_name(numeric_traits<T>::mode);
        j["sets"] = json::array();
        for (const auto& rep : reports) j["sets"].push_back(report_json(rep));
        j["total_lfp_calls"] = total_lfp;
        std::cout << j.dump(2) << "\n";
    } else {
        std::string out = "mode: " + opt.mode + "\n";
        for (std::size_t i = 0; i < reports.size(); ++i)
            out += report_line(int(i) + 1, reports[i]);
        out += "sets " + std::to_string(reports.size()) + ", total lfp_calls " +
               std::to_string(total_lfp) + "\n";
        std::cout << out;
    }
    return 0;
}

// ---- nash --------------------------------------------------------------

struct NashOptions {
    bool preprocess = false;
    int max_support = 0;
    bool as_json = false;
};

template <class T>
int nash_game(const Game<T>& g, const NashOptions& opt) {
    std::optional<CurbReport> curb;
    std::vector<NashProfile<T>> profiles;
    if (opt.preprocess) {
        auto pre = nash_via_curb_preprocessing(g);
        curb = std::move(pre.curb);
        profiles.push_back(std::move(pre.profile));
    } else {
        profiles = support_enumeration_nash(g, opt.max_support);
    }

    if (opt.as_json) {
        json j;
        j["command"] = "nash";
        j["numeric_mode"] = mode_name(numeric_traits<T>::mode);
        if (curb) j["curb"] = report_json(*curb);
        j["equilibria"] = json::array();
        for (const auto& prof : profiles) j["equilibria"].push_back(profile_json(prof));
        std::cout << j.dump(2) << "\n";
    } else {
        std::string out;
        if (curb)
            out += "curb: rows " + label_list(curb->set.row_set) + " cols " +
                   label_list(curb->set.col_set) + " size " + std::to_string(curb->set.size()) +
                   " lfp_calls " + std::to_string(curb->lfp_calls) + "\n";
        for (std::size_t i = 0; i < profiles.size(); ++i)
            out += profile_line(int(i) + 1, profiles[i]);
        out += "equilibria " + std::to_string(profiles.size()) + "\n";
        std::cout << out;
    }
    return 0;
}

// ---- shared flag plumbing ----------------------------------------------

Family family_from_name(const std::string& name) {
    for (const Family f :
         {Family::Random, Family::Covariant, Family::Gamma, Family::Padded, Family::Omega})
        if (name == family_name(f)) return f;
    throw UsageError("unknown family: '" + name + "'");
}

Algorithm algorithm_from_name(const std::string& name) {
    for (const Algorithm a : {Algorithm::AllMc, Algorithm::OneMc, Algorithm::SmallMc})
        if (name == algorithm_name(a)) return a;
    throw UsageError("unknown algorithm: '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curbkit: closed-set solvers for two-player games"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "emit a game file from a named family");
    std::string gen_family;
    gen->add_option("family", gen_family, "random|covariant|gamma|padded|omega")->required();
    int gen_rows = 0, gen_cols = 0, gen_block_rows = 2, gen_block_cols = 2, gen_k = 0;
    double gen_rho = 0.0;
    std::string gen_eps = "1/10", gen_big_z = "10000", gen_out;
    std::optional<std::uint64_t> gen_seed;
    gen->add_option("--rows", gen_rows, "row count (block rows for gamma)");
    gen->add_option("--cols", gen_cols, "column count (block columns for gamma)");
    gen->add_option("--block-rows", gen_block_rows, "padded: top block rows (default 2)");
    gen->add_option("--block-cols", gen_block_cols, "padded: top block columns (default 2)");
    gen->add_option("--k", gen_k, "omega: ladder parameter, game is (2+k)x(2+k)");
    gen->add_option("--rho", gen_rho, "covariant: payoff correlation in [-1,1]");
    gen->add_option("--epsilon", gen_eps, "omega: edge bonus, rational token (default 1/10)");
    gen->add_option("--big-z", gen_big_z, "omega: penalty scale, rational token (default 10000)");
    gen->add_option("--rng-seed", gen_seed, "stream seed (default: randomized, printed)");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // solve
    auto* solve = app.add_subcommand("solve", "find closed sets in a game file");
    std::string solve_file;
    SolveOptions solve_opt;
    solve->add_option("game", solve_file, "game file")->required();
    solve->add_option("--mode", solve_opt.mode, "all|one|small|containing")->required();
    solve->add_option("--seed-strategy", solve_opt.seed_label, "r:K or c:K, 1-based");
    solve->add_option("--rng-seed", solve_opt.rng_seed,
                      "mode one: stream seed (default: randomized, printed)");
    solve->add_flag("--json", solve_opt.as_json, "machine-readable output");

    // nash
    auto* nash = app.add_subcommand("nash", "find equilibria in a game file");
    std::string nash_file;
    NashOptions nash_opt;
    nash->add_option("game", nash_file, "game file")->required();
    nash->add_flag("--preprocess-curb", nash_opt.preprocess,
                   "restrict the search to a smallest closed set first");
    nash->add_option("--max-support", nash_opt.max_support,
                     "cap per-side support size (0 = unbounded)");
    nash->add_flag("--json", nash_opt.as_json, "machine-readable output");

    // bench
    auto* bench = app.add_subcommand("bench", "run a CSV benchmark sweep");
    std::string bench_experiment, bench_family = "random", bench_out;
    std::vector<int> bench_sizes;
    std::vector<std::string> bench_algorithms{"all_mc", "one_mc", "small_mc"};
    int bench_instances = 10, bench_block_rows = 0, bench_block_cols = 0;
    double bench_rho = 0.0;
    std::optional<std::uint64_t> bench_seed;
    bench->add_option("--experiment", bench_experiment, "distribution|runtime")->required();
    bench->add_option("--family", bench_family, "random|covariant|gamma|padded|omega");
    bench->add_option("--sizes", bench_sizes, "total strategy counts, comma separated")
        ->required()
        ->delimiter(',');
    bench->add_option("--instances", bench_instances, "instances per size (default 10)");
    bench->add_option("--algorithms", bench_algorithms, "runtime: subset of all_mc,one_mc,small_mc")
        ->delimiter(',');
    bench->add_option("--rho", bench_rho, "covariant: payoff correlation");
    bench->add_option("--block-rows", bench_block_rows, "padded: top block rows");
    bench->add_option("--block-cols", bench_block_cols, "padded: top block columns");
    bench->add_option("--rng-seed", bench_seed, "sweep seed (default: randomized, printed)");
    bench->add_option("--out", bench_out, "CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            GeneratorSpec spec;
            spec.family = family_from_name(gen_family);
            spec.rows = gen_rows;
            spec.cols = gen_cols;
            spec.rho = gen_rho;
            spec.k = gen_k;
            if (spec.family == Family::Gamma) {
                spec.r_prime = gen_rows;
                spec.c_prime = gen_cols;
            } else if (spec.family == Family::Padded) {
                spec.r_prime = gen_block_rows;
                spec.c_prime = gen_block_cols;
            } else if (spec.family == Family::Omega) {
                spec.epsilon = parse_rational_token(gen_eps);
                spec.big_z = parse_rational_token(gen_big_z);
            }
            if (gen_seed) spec.rng_seed = *gen_seed;
            return cmd_generate(spec, gen_seed.has_value(), gen_out);
        }
        if (solve->parsed()) {
            const auto pg = load_game(solve_file);
            return std::visit([&](const auto& g) { return solve_game(g, solve_opt); }, pg);
        }
        if (nash->parsed()) {
            const auto pg = load_game(nash_file);
            return std::visit([&](const auto& g) { return nash_game(g, nash_opt); }, pg);
        }
        if (bench->parsed()) {
            ExperimentSpec spec;
            spec.generator.family = family_from_name(bench_family);
            spec.generator.rho = bench_rho;
            spec.generator.r_prime = bench_block_rows;
            spec.generator.c_prime = bench_block_cols;
            spec.instance_count = bench_instances;
            spec.sizes = bench_sizes;
            spec.algorithms.clear();
            for (const auto& name : bench_algorithms)
                spec.algorithms.push_back(algorithm_from_name(name));
            spec.rng_seed = resolve_seed(bench_seed);
            spec.output_path = bench_out;
            std::string csv;
            if (bench_experiment == "distribution")
                csv = run_distribution_experiment(spec);
            else if (bench_experiment == "runtime")
                csv = run_runtime_experiment(spec);
            else
                throw UsageError("unknown experiment: '" + bench_experiment + "'");
            if (bench_out.empty()) std::cout << csv;
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;  // no subcommand parsed (require_subcommand should prevent this)
}
