#pragma once

#include "feasibility.hpp"
#include "game.hpp"

#include <stdexcept>
#include <vector>

namespace curbkit {

namespace detail {

template <class T>
void check_indices(const Game<T>& g, Player p, const std::vector<int>& v, const char* what) {
    const int count = g.strategy_count(p);
    int prev = -1;
    for (int i : v) {
        if (i < 0 || i >= count)
            throw std::invalid_argument(std::string("strategy index out of range in ") + what);
        if (i <= prev)
            throw std::invalid_argument(std::string("unsorted or duplicate index in ") + what);
        prev = i;
    }
}

// maximize sum(w) subject to M w <= 1, w >= 0, M entrywise positive.
// Phase-2 simplex from the slack basis; Bland's rule in exact mode,
// largest-coefficient with a Bland fallback after a stall in float mode.
template <class T>
T box_lp_max_sum(const std::vector<std::vector<T>>& M) {
    const int R = int(M.size());
    const int m = int(M[0].size());
    const int rhs = m + R;
    const T zero(0);

    std::vector<std::vector<T>> tab(std::size_t(R), std::vector<T>(std::size_t(rhs) + 1, zero));
    for (int i = 0; i < R; ++i) {
        for (int j = 0; j < m; ++j) tab[std::size_t(i)][std::size_t(j)] = M[std::size_t(i)][std::size_t(j)];
        tab[std::size_t(i)][std::size_t(m + i)] = T(1);
        tab[std::size_t(i)][std::size_t(rhs)] = T(1);
    }
    std::vector<int> basis(static_cast<std::size_t>(R));
    for (int i = 0; i < R; ++i) basis[std::size_t(i)] = m + i;

    // minimize -sum(w); z holds reduced costs, z[rhs] the negated objective
    std::vector<T> z(std::size_t(rhs) + 1, zero);
    for (int j = 0; j < m; ++j) z[std::size_t(j)] = T(-1);

    const T ptol = numeric_traits<T>::exact ? zero : T(1e-11);
    bool bland = numeric_traits<T>::exact;
    int stall = 0;
    T best_obj = zero;
    const long max_iter = 10000 + 200L * (rhs + 1);

    for (long iter = 0;; ++iter) {
        if (iter > max_iter) throw std::runtime_error("zero-sum simplex failed to converge");

        if constexpr (!numeric_traits<T>::exact) {
            const T obj = -z[std::size_t(rhs)];
            if (obj > best_obj - T(1e-13)) {
                if (++stall > 64) bland = true;
            } else {
                stall = 0;
                best_obj = obj;
            }
        }

        int enter = -1;
        if (bland) {
            for (int j = 0; j < rhs; ++j)
                if (z[std::size_t(j)] < -ptol) {
                    enter = j;
                    break;
                }
        } else {
            T best = -ptol;
            for (int j = 0; j < rhs; ++j)
                if (z[std::size_t(j)] < best) {
                    best = z[std::size_t(j)];
                    enter = j;
                }
        }
        if (enter < 0) return z[std::size_t(rhs)];

        int leave = -1;
        T best_ratio = zero;
        for (int i = 0; i < R; ++i) {
            const T& a = tab[std::size_t(i)][std::size_t(enter)];
            if (a <= ptol) continue;
            const T ratio = tab[std::size_t(i)][std::size_t(rhs)] / a;
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[std::size_t(i)] < basis[std::size_t(leave)]))
                leave = i, best_ratio = ratio;
        }
        if (leave < 0) throw std::runtime_error("zero-sum simplex became unbounded");

        auto& prow = tab[std::size_t(leave)];
        const T piv = prow[std::size_t(enter)];
        for (T& v : prow) v /= piv;
        for (int i = 0; i < R; ++i) {
            if (i == leave) continue;
            auto& row = tab[std::size_t(i)];
            const T f = row[std::size_t(enter)];
            if (f == zero) continue;
            for (int j = 0; j <= rhs; ++j) row[std::size_t(j)] -= f * prow[std::size_t(j)];
        }
        const T zf = z[std::size_t(enter)];
        if (zf != zero)
            for (int j = 0; j <= rhs; ++j) z[std::size_t(j)] -= zf * prow[std::size_t(j)];
        basis[std::size_t(leave)] = enter;
    }
}

// One linear feasibility solve: is some mixture over opponent_set making s a
// weak best response among comparison_set?
template <class T>
bool conditionally_rational_one(const Game<T>& g, Player p, int s,
                                const std::vector<int>& comparison_set,
                                const std::vector<int>& opponent_set, long long* lfp_calls) {
    FeasibilityProblem<T> prob;
    prob.var_count = int(opponent_set.size());
    for (const int alt : comparison_set) {
        if (alt == s) continue;
        std::vector<T> row(opponent_set.size());
        for (std::size_t j = 0; j < opponent_set.size(); ++j)
            row[j] = payoff_for(g, p, s, opponent_set[j]) - payoff_for(g, p, alt, opponent_set[j]);
        prob.difference_rows.push_back(std::move(row));
    }
    if (lfp_calls) ++*lfp_calls;
    return solve_feasibility(prob).feasible;
}

}  // namespace detail

// Argmax set of pure strategies against a fixed opponent mixture. Ties are
// all included; in float mode anything within the feasibility tolerance of
// the maximum counts as tied.
template <class T>
std::vector<int> best_responses_to_mixture(const Game<T>& g, Player p,
                                           const MixedStrategy<T>& opponent_mix) {
    if (opponent_mix.player != opponent_of(p))
        throw std::invalid_argument("mixture belongs to the wrong player");
    opponent_mix.validate(g.strategy_count(opponent_of(p)));

    const int n = g.strategy_count(p);
    std::vector<T> val(std::size_t(n), T(0));
    for (int s = 0; s < n; ++s)
        for (const auto& [c, pc] : opponent_mix.probs)
            val[std::size_t(s)] += pc * payoff_for(g, p, s, c);

    T best = val[0];
    for (int s = 1; s < n; ++s)
        if (val[std::size_t(s)] > best) best = val[std::size_t(s)];

    const T eps = numeric_traits<T>::feasibility_eps();
    std::vector<int> out;
    for (int s = 0; s < n; ++s)
        if (val[std::size_t(s)] >= best - eps) out.push_back(s);
    return out;
}

// Every strategy in comparison_set that is a weak best response, within
// comparison_set, to at least one mixture over opponent_set. One linear
// feasibility solve per candidate; lfp_calls (when given) counts them.
template <class T>
std::vector<int> all_conditionally_rational(const Game<T>& g, Player p,
                                            const std::vector<int>& comparison_set,
                                            const std::vector<int>& opponent_set,
                                            long long* lfp_calls = nullptr) {
    detail::check_indices(g, p, comparison_set, "comparison set");
    detail::check_indices(g, opponent_of(p), opponent_set, "opponent set");
    if (opponent_set.empty()) return {};

    std::vector<int> out;
    for (const int s : comparison_set)
        if (detail::conditionally_rational_one(g, p, s, comparison_set, opponent_set, lfp_calls))
            out.push_back(s);
    return out;
}

// Testing oracle on an independent code path: s is never a best response to
// any mixture over opponent_set iff some mixture of its alternatives beats it
// strictly on every opponent strategy in the set, iff the zero-sum game on
// the payoff differences has positive value. The value is computed through
// the bounded dual (shift the matrix positive, maximize the mass the column
// player can place), which needs no phase-1.
template <class T>
bool is_never_best_response(const Game<T>& g, Player p, int s,
                            const std::vector<int>& opponent_set) {
    detail::check_indices(g, opponent_of(p), opponent_set, "opponent set");
    const int pool = g.strategy_count(p);
    if (s < 0 || s >= pool) throw std::invalid_argument("strategy index out of range");
    if (opponent_set.empty()) return true;  // no beliefs exist at all
    if (pool == 1) return false;            // nothing to dominate with

    const int m = int(opponent_set.size());
    std::vector<std::vector<T>> d;
    T maxabs(0);
    for (int alt = 0; alt < pool; ++alt) {
        if (alt == s) continue;
        std::vector<T> row(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            row[std::size_t(j)] =
                payoff_for(g, p, alt, opponent_set[std::size_t(j)]) -
                payoff_for(g, p, s, opponent_set[std::size_t(j)]);
            const T a = row[std::size_t(j)] < T(0) ? T(-row[std::size_t(j)]) : row[std::size_t(j)];
            if (a > maxabs) maxabs = a;
        }
        d.push_back(std::move(row));
    }

    const T shift = maxabs + T(1);
    for (auto& row : d)
        for (T& v : row) v += shift;

    const T mass = detail::box_lp_max_sum(d);        // positive: some w is feasible
    const T value = T(1) / mass - shift;             // zero-sum value of d
    return value > numeric_traits<T>::feasibility_eps();
}

}  // namespace curbkit
