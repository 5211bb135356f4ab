// Acceptance gate: ten checks, one PASS/FAIL line each, nonzero exit when
// anything fails. No test framework on purpose; the output is the contract.
//
// Statistical thresholds are pinned here, not tuned at run time: every RNG
// stream is fixed, so each check is fully deterministic. Float comparisons go
// through the library's own tolerances (feasibility 1e-9, equilibria 1e-8).

#include <curbkit/experiments.hpp>
#include <curbkit/game_io.hpp>
#include <curbkit/nash.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace curbkit;
using oracle::CurbOracle;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
    std::string line = "criterion " + std::to_string(n) + ": " + (ok ? "PASS" : "FAIL");
    if (!ok && !detail.empty()) line += " (" + detail + ")";
    std::puts(line.c_str());
    if (!ok) ++failures;
}

std::string cell_name(const char* fam, int rp, int cp) {
    return std::string(fam) + " " + std::to_string(rp) + "x" + std::to_string(cp);
}

// The 300-game exact corpus shared by checks 4, 5, and 9: small rational
// grids with heavy ties, rows+cols <= 8.
Game<Rational> corpus_game(int index) {
    std::mt19937_64 rng(mix_seed(4101, std::uint64_t(index)));
    const int rows = 2 + int(rng() % 3);
    const int cols = 2 + int(rng() % 3);
    return corpus::random_grid_game(rows, cols, rng);
}
constexpr int corpus_count = 300;

bool flat_profile_regret_zero(const Game<Rational>& g) {
    std::vector<int> all_rows(std::size_t(g.rows()));
    std::vector<int> all_cols(std::size_t(g.cols()));
    for (int i = 0; i < g.rows(); ++i) all_rows[std::size_t(i)] = i;
    for (int j = 0; j < g.cols(); ++j) all_cols[std::size_t(j)] = j;

    const auto a = verify_equilibrium(g, MixedStrategy<Rational>::uniform(Player::Row, {0, 1}),
                                      MixedStrategy<Rational>::uniform(Player::Col, all_cols));
    const auto b = verify_equilibrium(g, MixedStrategy<Rational>::uniform(Player::Row, all_rows),
                                      MixedStrategy<Rational>::uniform(Player::Col, {0, 1}));
    return a == 0 && b == 0;
}

// ---- checks 1-3: constructed families ------------------------------------

bool check1(std::string& detail) {
    for (int rp = 2; rp <= 5; ++rp)
        for (int cp = 2; cp <= 5; ++cp) {
            const auto g = gamma_game(rp, cp);
            const auto reps = all_minimal_curb(g);
            if (reps.size() != 1 || !(reps.front().set == StrategySet::full(rp, cp))) {
                detail = cell_name("gamma", rp, cp) + " minimal sets != [full game]";
                return false;
            }
        }
    return true;
}

bool check2(std::string& detail) {
    for (int rp = 2; rp <= 5; ++rp)
        for (int cp = 2; cp <= 5; ++cp)
            if (!flat_profile_regret_zero(gamma_game(rp, cp))) {
                detail = cell_name("gamma", rp, cp) + " flat profile has positive regret";
                return false;
            }
    return true;
}

bool check3(std::string& detail) {
    for (int k = 1; k <= 4; ++k) {
        const auto g = omega_game(k);
        const auto reps = all_minimal_curb(g);
        const auto full = StrategySet::full(g.rows(), g.cols());
        if (reps.size() != 1 || !(reps.front().set == full) || full.size() != 2 * (2 + k)) {
            detail = "omega k=" + std::to_string(k) + " minimal sets != [full game]";
            return false;
        }
        const auto found = support_enumeration_nash(g);
        const std::map<int, Rational> half{{0, Rational(1) / 2}, {1, Rational(1) / 2}};
        if (found.size() != 1 || found.front().row_mix.probs != half ||
            found.front().col_mix.probs != half || found.front().regret != 0) {
            detail = "omega k=" + std::to_string(k) + " equilibrium not unique uniform corner";
            return false;
        }
    }
    return true;
}

// ---- check 4: brute-force oracle equivalence ------------------------------

bool check4(std::string& detail) {
    for (int i = 0; i < corpus_count; ++i) {
        const auto g = corpus_game(i);
        CurbOracle truth(g);

        auto expected = truth.minimal_curb_sets();
        std::sort(expected.begin(), expected.end());
        const auto reps = all_minimal_curb(g);
        std::vector<StrategySet> got;
        for (const auto& rep : reps) got.push_back(rep.set);
        if (got != expected) {
            detail = "game " + std::to_string(i) + ": minimal set lists differ";
            return false;
        }

        for (const Player p : {Player::Row, Player::Col})
            for (int s = 0; s < g.strategy_count(p); ++s) {
                const StrategyRef seed{p, s};
                const auto want = truth.smallest_curb_containing(seed);
                const auto rep = min_containing_curb(g, seed);
                if (!want || !(rep.set == *want)) {
                    detail = "game " + std::to_string(i) + ": containing set differs at seed " +
                             std::to_string(s);
                    return false;
                }
            }
    }
    return true;
}

// ---- check 5: structural properties ---------------------------------------

template <class T>
bool structural_ok(const Game<T>& g, std::uint64_t pick_seed, std::string& detail) {
    const auto reps = all_minimal_curb(g);
    for (std::size_t a = 0; a < reps.size(); ++a)
        for (std::size_t b = a + 1; b < reps.size(); ++b)
            if (!sets_disjoint(reps[a].set, reps[b].set)) {
                detail = "minimal sets overlap";
                return false;
            }

    std::vector<StrategySet> containing;
    for (const Player p : {Player::Row, Player::Col})
        for (int s = 0; s < g.strategy_count(p); ++s)
            containing.push_back(min_containing_curb(g, StrategyRef{p, s}).set);
    for (std::size_t a = 0; a < containing.size(); ++a)
        for (std::size_t b = a + 1; b < containing.size(); ++b) {
            const auto inter = set_intersection(containing[a], containing[b]);
            if (inter.both_sides_nonempty() && !is_curb(g, inter)) {
                detail = "intersection of two containing sets is not closed";
                return false;
            }
        }

    std::mt19937_64 pick(pick_seed);
    const auto one = one_minimal_curb(g, pick);
    const bool listed = std::any_of(reps.begin(), reps.end(),
                                    [&](const auto& rep) { return rep.set == one.set; });
    if (!listed) {
        detail = "one-set solver returned a set missing from the full list";
        return false;
    }

    int min_size = reps.front().set.size();
    for (const auto& rep : reps) min_size = std::min(min_size, rep.set.size());
    if (smallest_minimal_curb(g).set.size() != min_size) {
        detail = "smallest-set size disagrees with the full list";
        return false;
    }
    return true;
}

bool check5(std::string& detail) {
    for (int i = 0; i < corpus_count; ++i) {
        std::string why;
        if (!structural_ok(corpus_game(i), mix_seed(5101, std::uint64_t(i)), why)) {
            detail = "exact game " + std::to_string(i) + ": " + why;
            return false;
        }
    }
    for (int i = 0; i < 200; ++i) {
        std::mt19937_64 rng(mix_seed(5202, std::uint64_t(i)));
        const auto g = random_game(10, 10, rng);
        std::string why;
        if (!structural_ok(g, mix_seed(5303, std::uint64_t(i)), why)) {
            detail = "float game " + std::to_string(i) + ": " + why;
            return false;
        }
    }
    return true;
}

// ---- check 6: every minimal closed set carries an equilibrium -------------

bool check6(std::string& detail) {
    for (int i = 0; i < 100; ++i) {
        std::mt19937_64 rng(mix_seed(6101, std::uint64_t(i)));
        const auto g = random_game(6, 6, rng);
        for (const auto& rep : all_minimal_curb(g)) {
            const auto found = support_enumeration_nash(g, rep.set, 0, true);
            if (found.empty()) {
                detail = "game " + std::to_string(i) + ": no equilibrium inside a minimal set";
                return false;
            }
            const auto& prof = found.front();
            const auto rs = prof.row_mix.support();
            const auto cs = prof.col_mix.support();
            const bool inside =
                std::includes(rep.set.row_set.begin(), rep.set.row_set.end(), rs.begin(),
                              rs.end()) &&
                std::includes(rep.set.col_set.begin(), rep.set.col_set.end(), cs.begin(),
                              cs.end());
            if (!inside || prof.regret > numeric_traits<double>::equilibrium_eps()) {
                detail = "game " + std::to_string(i) + ": equilibrium leaks outside the set";
                return false;
            }
        }
    }
    return true;
}

// ---- check 7: size-distribution shape (bimodality and the covariant shift)

bool check7(std::string& detail) {
    int thirds[3] = {0, 0, 0};  // smallest-set sizes over [2,14], [15,27], [28,40]
    int rand_small = 0;
    for (int i = 0; i < 200; ++i) {
        std::mt19937_64 rng(mix_seed(7101, std::uint64_t(i)));
        const int size = smallest_minimal_curb(random_game(20, 20, rng)).set.size();
        ++thirds[size <= 14 ? 0 : size <= 27 ? 1 : 2];
        if (size <= 4) ++rand_small;
    }
    if (thirds[1] >= thirds[0] || thirds[1] >= thirds[2]) {
        detail = "not bimodal: thirds " + std::to_string(thirds[0]) + "/" +
                 std::to_string(thirds[1]) + "/" + std::to_string(thirds[2]);
        return false;
    }

    int cov_small = 0;
    for (int i = 0; i < 200; ++i) {
        std::mt19937_64 rng(mix_seed(7202, std::uint64_t(i)));
        if (smallest_minimal_curb(covariant_game(20, 20, -0.5, rng)).set.size() <= 4)
            ++cov_small;
    }
    if (cov_small >= rand_small) {
        detail = "covariant small-set fraction " + std::to_string(cov_small) +
                 "/200 not below random " + std::to_string(rand_small) + "/200";
        return false;
    }
    return true;
}

// ---- check 8: cost-proxy ordering across sizes -----------------------------

struct CellMeans {
    double all = 0, one = 0, small = 0;
};

CellMeans run_cell(Family fam, double rho, int n, std::uint64_t seed) {
    constexpr int instances = 200;
    CellMeans m;
    for (int i = 0; i < instances; ++i) {
        const std::uint64_t s =
            mix_seed(seed, (std::uint64_t(std::uint32_t(n)) << 32) | std::uint32_t(i));
        std::mt19937_64 rng(s);
        const auto g = fam == Family::Random ? random_game(n / 2, n - n / 2, rng)
                                             : covariant_game(n / 2, n - n / 2, rho, rng);
        long long lfp = 0;
        all_minimal_curb(g, &lfp);
        m.all += double(lfp);
        std::mt19937_64 pick(mix_seed(s, 1));
        m.one += double(one_minimal_curb(g, pick).lfp_calls);
        m.small += double(smallest_minimal_curb(g).lfp_calls);
    }
    m.all /= instances;
    m.one /= instances;
    m.small /= instances;
    return m;
}

bool check8(std::string& detail) {
    CellMeans at_20{}, at_40{};
    for (const int n : {10, 20, 30, 40}) {
        const CellMeans m = run_cell(Family::Random, 0.0, n, 8101);
        if (!(m.small <= m.one && m.one <= m.all)) {
            detail = "ordering small<=one<=all broken at n=" + std::to_string(n);
            return false;
        }
        if (n == 20) at_20 = m;
        if (n == 40) at_40 = m;
    }
    // Each step of the ordering must hold by at least 5% at the largest size.
    if (!(at_40.small <= 0.95 * at_40.one && at_40.one <= 0.95 * at_40.all)) {
        detail = "5% margins missing at n=40";
        return false;
    }
    const CellMeans cov = run_cell(Family::Covariant, -0.5, 20, 8202);
    if (!(cov.small / cov.all > at_20.small / at_20.all)) {
        detail = "covariant small/all gap not smaller than random";
        return false;
    }
    return true;
}

// ---- check 9: per-call complexity cap --------------------------------------

template <class T>
bool cap_holds(const Game<T>& g) {
    const long long cap = 2ll * (g.rows() + g.cols()) * (g.rows() + g.cols());
    for (const Player p : {Player::Row, Player::Col})
        for (int s = 0; s < g.strategy_count(p); ++s)
            if (min_containing_curb(g, StrategyRef{p, s}).lfp_calls > cap) return false;
    return true;
}

bool check9(std::string& detail) {
    for (int i = 0; i < corpus_count; ++i)
        if (!cap_holds(corpus_game(i))) {
            detail = "cap exceeded on exact game " + std::to_string(i);
            return false;
        }
    for (int rp = 2; rp <= 5; ++rp)
        for (int cp = 2; cp <= 5; ++cp)
            if (!cap_holds(gamma_game(rp, cp))) {
                detail = "cap exceeded on " + cell_name("gamma", rp, cp);
                return false;
            }
    for (int k = 1; k <= 4; ++k)
        if (!cap_holds(omega_game(k))) {
            detail = "cap exceeded on omega k=" + std::to_string(k);
            return false;
        }
    for (const auto& g : {padded_game(4, 4, 2, 2), padded_game(6, 6, 2, 2)})
        if (!cap_holds(g)) {
            detail = "cap exceeded on a padded game";
            return false;
        }
    for (int i = 0; i < 50; ++i) {
        std::mt19937_64 rng(mix_seed(9101, std::uint64_t(i)));
        if (!cap_holds(random_game(10, 10, rng))) {
            detail = "cap exceeded on float game " + std::to_string(i);
            return false;
        }
    }
    return true;
}

// ---- check 10: CLI buyback — fixed seeds give identical bytes --------------

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& cli, const std::string& args) {
    const std::string cmd = cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {};
    CliResult res;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
    const int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

// Blank out any wall_time column so timing noise cannot fail the comparison.
std::string strip_wall_time(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    int wall_col = -1;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        if (first) {
            for (std::size_t i = 0; i < fields.size(); ++i)
                if (fields[i] == "wall_time") wall_col = int(i);
            first = false;
        } else if (wall_col >= 0 && std::size_t(wall_col) < fields.size()) {
            fields[std::size_t(wall_col)] = "-";
        }
        for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + fields[i];
        out += "\n";
    }
    return out;
}

// Set in main: CURBKIT_CLI_PATH, or the tools/ sibling of this binary.
std::string cli_path;

bool check10(std::string& detail) {
    if (cli_path.empty()) {
        detail = "CLI not found; set CURBKIT_CLI_PATH";
        return false;
    }
    const std::string& bin = cli_path;

    // Fixture files, written through the CLI itself.
    for (const auto& gen : {"generate gamma --rows 3 --cols 4 --out acc_g34.game",
                            "generate gamma --rows 2 --cols 2 --out acc_pennies.game",
                            "generate omega --k 2 --out acc_om2.game"}) {
        if (run_cli(bin, gen).code != 0) {
            detail = std::string("fixture failed: ") + gen;
            return false;
        }
    }

    const std::vector<std::pair<std::string, bool>> commands = {
        {"generate random --rows 5 --cols 5 --rng-seed 7", false},
        {"generate covariant --rows 4 --cols 4 --rho -0.5 --rng-seed 9", false},
        {"generate gamma --rows 3 --cols 4", false},
        {"generate padded --rows 6 --cols 6", false},
        {"generate omega --k 2", false},
        {"solve acc_g34.game --mode all", false},
        {"solve acc_g34.game --mode small --json", false},
        {"solve acc_g34.game --mode containing --seed-strategy r:2", false},
        {"solve acc_om2.game --mode one --rng-seed 5", false},
        {"nash acc_pennies.game", false},
        {"nash acc_om2.game --preprocess-curb --json", false},
        {"bench --experiment distribution --family random --sizes 8 --instances 5 --rng-seed 3",
         true},
        {"bench --experiment runtime --family random --sizes 8 --instances 5 --rng-seed 3", true},
    };
    for (const auto& [args, csv] : commands) {
        const auto a = run_cli(bin, args);
        const auto b = run_cli(bin, args);
        if (a.code != 0 || b.code != 0) {
            detail = "nonzero exit: " + args;
            return false;
        }
        const std::string ta = csv ? strip_wall_time(a.out) : a.out;
        const std::string tb = csv ? strip_wall_time(b.out) : b.out;
        if (ta != tb) {
            detail = "outputs differ: " + args;
            return false;
        }
    }
    for (const auto* f : {"acc_g34.game", "acc_pennies.game", "acc_om2.game"}) std::remove(f);
    return true;
}

}  // namespace

int main(int, char** argv) {
    if (const char* env = std::getenv("CURBKIT_CLI_PATH")) {
        cli_path = env;
    } else {
        std::string self(argv[0]);
        const auto slash = self.find_last_of('/');
        const std::string dir = slash == std::string::npos ? "." : self.substr(0, slash);
        const std::string guess = dir + "/../tools/curbkit";
        if (access(guess.c_str(), X_OK) == 0) cli_path = guess;
    }

    using Check = bool (*)(std::string&);
    const Check checks[] = {check1, check2, check3, check4, check5,
                            check6, check7, check8, check9, check10};

    // The Nash scans hit degenerate supports on tie-heavy games by design;
    // keep their warnings out of the pass/fail stream.
    std::ostringstream sink;
    auto* const clog_buf = std::clog.rdbuf(sink.rdbuf());

    for (int i = 0; i < 10; ++i) {
        std::string detail;
        const auto t0 = std::chrono::steady_clock::now();
        const bool ok = checks[i](detail);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report(i + 1, ok, detail);
        std::fprintf(stderr, "  criterion %d took %.2fs\n", i + 1, secs);
    }

    std::clog.rdbuf(clog_buf);
    return failures;
}
