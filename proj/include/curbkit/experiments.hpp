#pragma once

// Batch harness: generate instance streams, run the closed-set solvers, emit
// CSV. lfp_calls is the machine-independent cost column; wall_time is
// informational only and is the one column allowed to vary between runs.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "curb.hpp"
#include "generators.hpp"
#include "rng.hpp"

namespace curbkit {

enum class Algorithm { AllMc, OneMc, SmallMc };

inline std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::AllMc: return "all_mc";
        case Algorithm::OneMc: return "one_mc";
        case Algorithm::SmallMc: return "small_mc";
    }
    throw std::invalid_argument("unknown algorithm");
}

struct ExperimentSpec {
    GeneratorSpec generator;  // family template; shape fields are derived per size
    int instance_count = 1;
    std::vector<int> sizes;  // total strategy counts, rows plus columns
    std::vector<Algorithm> algorithms{Algorithm::AllMc, Algorithm::OneMc, Algorithm::SmallMc};
    std::uint64_t rng_seed = 0;
    std::string output_path;  // empty: only return the CSV text
};

// Concrete generator for one instance. The size n splits as evenly as the
// family allows (first side gets the floor), and the instance stream is keyed
// on (n, instance) so adding sizes to a sweep never reshuffles existing cells.
inline GeneratorSpec instance_generator(const ExperimentSpec& spec, int n, int instance) {
    GeneratorSpec g = spec.generator;
    const int a = n / 2;
    const int b = n - a;
    switch (g.family) {
        case Family::Random:
        case Family::Covariant:
            g.rows = a;
            g.cols = b;
            break;
        case Family::Gamma:
            g.r_prime = a;
            g.c_prime = b;
            break;
        case Family::Padded:
            g.rows = a;
            g.cols = b;
            if (g.r_prime == 0) g.r_prime = 2;
            if (g.c_prime == 0) g.c_prime = 2;
            break;
        case Family::Omega:
            if (n < 6 || n % 2 != 0)
                throw std::invalid_argument(
                    "ladder family needs an even total size of at least 6");
            g.k = n / 2 - 2;
            break;
    }
    g.rng_seed = mix_seed(spec.rng_seed,
                          (std::uint64_t(std::uint32_t(n)) << 32) | std::uint32_t(instance));
    return g;
}

namespace detail {

inline std::string csv_field(const std::string& f) {
    if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
    std::string out = "\"";
    for (const char ch : f) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

inline std::string format_seconds(double s) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9f", s);
    return buf;
}

inline std::string instance_id(Family fam, int n, int instance) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s-n%03d-i%04d", family_name(fam), n, instance);
    return buf;
}

template <class F>
double wall_seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline void require_valid(const ExperimentSpec& spec) {
    if (spec.instance_count < 1)
        throw std::invalid_argument("experiment needs at least one instance");
    if (spec.sizes.empty()) throw std::invalid_argument("experiment needs at least one size");
}

// Rows are buffered keyed by id and flushed in id order, so the output is
// deterministic no matter how the cells were produced.
inline std::string flush_rows(const std::string& header,
                              std::vector<std::pair<std::string, std::string>> rows,
                              const std::string& path) {
    std::sort(rows.begin(), rows.end());
    std::string text = header + "\r\n";
    for (const auto& [id, line] : rows) text += line + "\r\n";
    if (!path.empty()) {
        std::ofstream out(path, std::ios::binary);
        if (!out || !(out << text))
            throw std::runtime_error("cannot write experiment output: " + path);
    }
    return text;
}

}  // namespace detail

// One row per instance: how big the tightest closed set is and what it cost.
inline std::string run_distribution_experiment(const ExperimentSpec& spec) {
    detail::require_valid(spec);
    std::vector<std::pair<std::string, std::string>> rows;
    for (const int n : spec.sizes) {
        for (int i = 0; i < spec.instance_count; ++i) {
            const auto id = detail::instance_id(spec.generator.family, n, i);
            try {
                const auto gs = instance_generator(spec, n, i);
                const GameVariant gv = build_game(gs);
                std::visit(
                    [&](const auto& g) {
                        CurbReport rep;
                        const double wall =
                            detail::wall_seconds([&] { rep = smallest_minimal_curb(g); });
                        const std::string line =
                            detail::csv_field(id) + "," + family_name(gs.family) + "," +
                            std::to_string(n) + "," + std::to_string(rep.set.size()) + "," +
                            std::to_string(rep.lfp_calls) + "," + detail::format_seconds(wall);
                        rows.emplace_back(id, line);
                    },
                    gv);
            } catch (const std::exception& e) {
                throw std::runtime_error(id + ": " + e.what());
            }
        }
    }
    return detail::flush_rows("game_id,family,n,smallest_curb_size,lfp_calls,wall_time",
                              std::move(rows), spec.output_path);
}

// One row per instance per algorithm; lfp_calls is the cost proxy that stays
// comparable across machines.
inline std::string run_runtime_experiment(const ExperimentSpec& spec) {
    detail::require_valid(spec);
    if (spec.algorithms.empty())
        throw std::invalid_argument("runtime experiment needs at least one algorithm");
    std::vector<std::pair<std::string, std::string>> rows;
    for (const int n : spec.sizes) {
        for (int i = 0; i < spec.instance_count; ++i) {
            const auto id = detail::instance_id(spec.generator.family, n, i);
            try {
                const auto gs = instance_generator(spec, n, i);
                const GameVariant gv = build_game(gs);
                std::visit(
                    [&](const auto& g) {
                        for (const Algorithm alg : spec.algorithms) {
                            long long lfp = 0;
                            double wall = 0;
                            switch (alg) {
                                case Algorithm::AllMc:
                                    wall = detail::wall_seconds(
                                        [&] { all_minimal_curb(g, &lfp); });
                                    break;
                                case Algorithm::OneMc: {
                                    std::mt19937_64 pick(mix_seed(gs.rng_seed, 1));
                                    CurbReport rep;
                                    wall = detail::wall_seconds(
                                        [&] { rep = one_minimal_curb(g, pick); });
                                    lfp = rep.lfp_calls;
                                    break;
                                }
                                case Algorithm::SmallMc: {
                                    CurbReport rep;
                                    wall = detail::wall_seconds(
                                        [&] { rep = smallest_minimal_curb(g); });
                                    lfp = rep.lfp_calls;
                                    break;
                                }
                            }
                            const std::string row_id = id + "-" + algorithm_name(alg);
                            const std::string line =
                                detail::csv_field(id) + "," + family_name(gs.family) + "," +
                                std::to_string(n) + "," + algorithm_name(alg) + "," +
                                detail::format_seconds(wall) + "," + std::to_string(lfp);
                            rows.emplace_back(row_id, line);
                        }
                    },
                    gv);
            } catch (const std::exception& e) {
                throw std::runtime_error(id + ": " + e.what());
            }
        }
    }
    return detail::flush_rows("game_id,family,n,algorithm,wall_time,lfp_calls", std::move(rows),
                              spec.output_path);
}

}  // namespace curbkit
