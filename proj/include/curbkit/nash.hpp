#pragma once

// Nash equilibria by support enumeration, plus the pipeline that searches
// only inside a smallest closed set (which always holds the supports of at
// least one equilibrium, so the restriction is safe).

#include <iostream>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "curb.hpp"
#include "game.hpp"
#include "scalar.hpp"

namespace curbkit {

template <class T>
struct NashProfile {
    MixedStrategy<T> row_mix;
    MixedStrategy<T> col_mix;
    T regret{};  // max over players of best-reply payoff minus achieved payoff
};

// Worst deviation incentive of the profile; zero exactly when it is an
// equilibrium (up to equilibrium_eps in float mode).
template <class T>
T verify_equilibrium(const Game<T>& g, const MixedStrategy<T>& row_mix,
                     const MixedStrategy<T>& col_mix) {
    const T achieved_r = expected_utility(g, Player::Row, row_mix, col_mix);
    const T achieved_c = expected_utility(g, Player::Col, row_mix, col_mix);

    T regret(0);
    for (int s = 0; s < g.rows(); ++s) {
        T val(0);
        for (const auto& [c, qc] : col_mix.probs) val += qc * g.payoff(Player::Row, s, c);
        if (val - achieved_r > regret) regret = val - achieved_r;
    }
    for (int s = 0; s < g.cols(); ++s) {
        T val(0);
        for (const auto& [r, pr] : row_mix.probs) val += pr * g.payoff(Player::Col, r, s);
        if (val - achieved_c > regret) regret = val - achieved_c;
    }
    return regret;
}

template <class T>
T verify_equilibrium(const Game<T>& g, const NashProfile<T>& profile) {
    return verify_equilibrium(g, profile.row_mix, profile.col_mix);
}

namespace detail {

// Particular solution of A x = b by Gauss-Jordan, free columns pinned to
// zero. Empty on inconsistency; *degenerate reports rank deficiency.
template <class T>
std::optional<std::vector<T>> solve_linear(std::vector<std::vector<T>> a, std::vector<T> b,
                                           bool* degenerate = nullptr) {
    const int m = int(a.size());
    const int n = m > 0 ? int(a[0].size()) : 0;
    const T zero_tol = numeric_traits<T>::exact ? T(0) : T(1e-12);

    std::vector<int> pivot_row_of_col(static_cast<std::size_t>(n), -1);
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int pick = -1;
        if constexpr (numeric_traits<T>::exact) {
            for (int i = rank; i < m; ++i)
                if (a[std::size_t(i)][std::size_t(col)] != 0) {
                    pick = i;
                    break;
                }
        } else {
            T mag = zero_tol;
            for (int i = rank; i < m; ++i) {
                const T v = a[std::size_t(i)][std::size_t(col)] < 0
                                ? -a[std::size_t(i)][std::size_t(col)]
                                : a[std::size_t(i)][std::size_t(col)];
                if (v > mag) {
                    mag = v;
                    pick = i;
                }
            }
        }
        if (pick < 0) continue;  // free column

        std::swap(a[std::size_t(pick)], a[std::size_t(rank)]);
        std::swap(b[std::size_t(pick)], b[std::size_t(rank)]);
        const T inv = a[std::size_t(rank)][std::size_t(col)];
        for (int j = col; j < n; ++j) a[std::size_t(rank)][std::size_t(j)] /= inv;
        b[std::size_t(rank)] /= inv;
        for (int i = 0; i < m; ++i) {
            if (i == rank) continue;
            const T f = a[std::size_t(i)][std::size_t(col)];
            if (f == 0) continue;
            for (int j = col; j < n; ++j)
                a[std::size_t(i)][std::size_t(j)] -= f * a[std::size_t(rank)][std::size_t(j)];
            b[std::size_t(i)] -= f * b[std::size_t(rank)];
        }
        pivot_row_of_col[std::size_t(col)] = rank;
        ++rank;
    }

    const T feas = numeric_traits<T>::feasibility_eps();
    for (int i = rank; i < m; ++i) {
        const T r = b[std::size_t(i)] < 0 ? -b[std::size_t(i)] : b[std::size_t(i)];
        if (r > feas) return std::nullopt;
    }
    if (degenerate) *degenerate = rank < n;

    std::vector<T> x(static_cast<std::size_t>(n), T(0));
    for (int col = 0; col < n; ++col)
        if (pivot_row_of_col[std::size_t(col)] >= 0)
            x[std::size_t(col)] = b[std::size_t(pivot_row_of_col[std::size_t(col)])];
    return x;
}

// Visit k-subsets of v in lexicographic order until the callback says stop.
template <class F>
bool for_each_combination(const std::vector<int>& v, int k, F&& f) {
    const int n = int(v.size());
    if (k < 1 || k > n) return true;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[std::size_t(i)] = i;
    std::vector<int> subset(static_cast<std::size_t>(k));
    for (;;) {
        for (int i = 0; i < k; ++i) subset[std::size_t(i)] = v[std::size_t(idx[std::size_t(i)])];
        if (!f(subset)) return false;
        int i = k - 1;
        while (i >= 0 && idx[std::size_t(i)] == n - k + i) --i;
        if (i < 0) return true;
        ++idx[std::size_t(i)];
        for (int j = i + 1; j < k; ++j) idx[std::size_t(j)] = idx[std::size_t(j - 1)] + 1;
    }
}

// The mixture over `support` of the player owning it that makes every
// strategy in `other_support` of the opponent indifferent, together with the
// opponent's level: unknowns (one weight per support strategy, level last).
// Strict positivity on the whole support is required; a degenerate system
// contributes only its particular solution.
template <class T>
std::optional<std::pair<MixedStrategy<T>, T>> indifference_mixture(
    const Game<T>& g, Player owner, const std::vector<int>& support,
    const std::vector<int>& other_support, bool* degenerate) {
    const Player other = opponent_of(owner);
    const int k = int(support.size());
    std::vector<std::vector<T>> a;
    std::vector<T> b;
    for (const int s : other_support) {
        std::vector<T> row(static_cast<std::size_t>(k + 1), T(0));
        for (int j = 0; j < k; ++j)
            row[std::size_t(j)] = payoff_for(g, other, s, support[std::size_t(j)]);
        row[std::size_t(k)] = T(-1);
        a.push_back(std::move(row));
        b.push_back(T(0));
    }
    std::vector<T> norm(static_cast<std::size_t>(k + 1), T(1));
    norm[std::size_t(k)] = T(0);
    a.push_back(std::move(norm));
    b.push_back(T(1));

    const auto x = solve_linear<T>(std::move(a), std::move(b), degenerate);
    if (!x) return std::nullopt;

    const T floor = numeric_traits<T>::exact ? T(0) : numeric_traits<T>::feasibility_eps();
    MixedStrategy<T> mix;
    mix.player = owner;
    for (int j = 0; j < k; ++j) {
        if (!((*x)[std::size_t(j)] > floor)) return std::nullopt;  // support must be fully used
        mix.probs[support[std::size_t(j)]] = (*x)[std::size_t(j)];
    }
    return std::make_pair(std::move(mix), (*x)[std::size_t(k)]);
}

// No pure strategy of `player` anywhere in the game beats `level` against the
// opponent mixture.
template <class T>
bool no_profitable_deviation(const Game<T>& g, Player player, const MixedStrategy<T>& opp_mix,
                             const T& level) {
    const T slack = numeric_traits<T>::exact ? T(0) : numeric_traits<T>::equilibrium_eps();
    for (int s = 0; s < g.strategy_count(player); ++s) {
        T val(0);
        for (const auto& [o, q] : opp_mix.probs) val += q * payoff_for(g, player, s, o);
        if (val > level + slack) return false;
    }
    return true;
}

}  // namespace detail

// Support enumeration inside `within`, smallest total support first (row-side
// size ascending on ties, then lexicographic combinations), so small
// equilibria surface early. Deviation checks always range over the whole
// game, so every returned profile is an equilibrium of the full game even
// when `within` is a strict subset. max_support caps each side's support size
// (0 = no cap); a cap can cost completeness. Rank-deficient indifference
// systems contribute only their particular solution (one warning per call).
template <class T>
std::vector<NashProfile<T>> support_enumeration_nash(const Game<T>& g, const StrategySet& within,
                                                     int max_support = 0,
                                                     bool stop_after_first = false) {
    require_valid_set(g, within);
    if (!within.both_sides_nonempty())
        throw std::invalid_argument("support_enumeration_nash: need strategies on both sides");

    const auto& rows = within.row_set;
    const auto& cols = within.col_set;
    const int max_r = max_support > 0 ? std::min<int>(max_support, int(rows.size()))
                                      : int(rows.size());
    const int max_c = max_support > 0 ? std::min<int>(max_support, int(cols.size()))
                                      : int(cols.size());

    std::vector<NashProfile<T>> found;
    bool degenerate_seen = false;
    bool stop = false;
    for (int total = 2; total <= max_r + max_c && !stop; ++total) {
        for (int nr = std::max(1, total - max_c); nr <= std::min(max_r, total - 1) && !stop; ++nr) {
            const int nc = total - nr;
            detail::for_each_combination(rows, nr, [&](const std::vector<int>& sr) {
                return detail::for_each_combination(cols, nc, [&](const std::vector<int>& sc) {
                    bool degenerate = false;
                    const auto col_side =
                        detail::indifference_mixture(g, Player::Col, sc, sr, &degenerate);
                    degenerate_seen = degenerate_seen || degenerate;
                    if (!col_side) return true;
                    const auto row_side =
                        detail::indifference_mixture(g, Player::Row, sr, sc, &degenerate);
                    degenerate_seen = degenerate_seen || degenerate;
                    if (!row_side) return true;

                    const auto& [col_mix, row_level] = *col_side;
                    const auto& [row_mix, col_level] = *row_side;
                    if (!detail::no_profitable_deviation(g, Player::Row, col_mix, row_level))
                        return true;
                    if (!detail::no_profitable_deviation(g, Player::Col, row_mix, col_level))
                        return true;

                    NashProfile<T> prof{row_mix, col_mix, T(0)};
                    prof.regret = verify_equilibrium(g, prof);
                    found.push_back(std::move(prof));
                    if (stop_after_first) {
                        stop = true;
                        return false;
                    }
                    return true;
                });
            });
        }
    }
    if (degenerate_seen)
        std::clog << "curbkit: degenerate support systems met during Nash enumeration; "
                     "only their particular solutions were examined\n";
    return found;
}

template <class T>
std::vector<NashProfile<T>> support_enumeration_nash(const Game<T>& g, int max_support = 0,
                                                     bool stop_after_first = false) {
    return support_enumeration_nash(g, StrategySet::full(g.rows(), g.cols()), max_support,
                                    stop_after_first);
}

template <class T>
struct PreprocessedNash {
    NashProfile<T> profile;
    CurbReport curb;
};

// Shrink the search space to a smallest closed set first, then enumerate
// supports only inside it. The set always contains the supports of some
// equilibrium, and the full-game deviation check keeps the answer honest.
template <class T>
PreprocessedNash<T> nash_via_curb_preprocessing(const Game<T>& g) {
    CurbReport rep = smallest_minimal_curb(g);
    auto found = support_enumeration_nash(g, rep.set, 0, true);
    if (found.empty())
        throw std::runtime_error(
            "nash_via_curb_preprocessing: no equilibrium surfaced inside the closed set");
    return {std::move(found.front()), std::move(rep)};
}

}  // namespace curbkit
