#pragma once

#include "scalar.hpp"

#include <stdexcept>
#include <vector>

namespace curbkit {

// Find p >= 0 with sum(p) = 1 and difference_rows[k] . p >= 0 for every k.
// Each difference row encodes one competitor comparison: the coefficient of
// p_c is u(candidate, c) - u(competitor, c).
template <class T>
struct FeasibilityProblem {
    int var_count = 0;
    std::vector<std::vector<T>> difference_rows;
};

template <class T>
struct FeasibilityOutcome {
    bool feasible = false;
    std::vector<T> witness;  // one probability per variable, present iff feasible
};

template <class T>
bool witness_satisfies(const FeasibilityProblem<T>& prob, const std::vector<T>& w,
                       const T& eps = numeric_traits<T>::feasibility_eps()) {
    if (int(w.size()) != prob.var_count) return false;
    T sum(0);
    for (const T& v : w) {
        if (v < -eps) return false;
        sum += v;
    }
    const T gap = sum - T(1);
    if ((gap < T(0) ? T(-gap) : gap) > eps) return false;
    for (const auto& row : prob.difference_rows) {
        T dot(0);
        for (int j = 0; j < prob.var_count; ++j) dot += row[std::size_t(j)] * w[std::size_t(j)];
        if (dot < -eps) return false;
    }
    return true;
}

// Phase-1 simplex. The surplus variables of the (all zero right-hand side)
// difference rows form most of the starting basis for free; only the
// normalization row needs an artificial variable, which we minimize.
// Exact mode pivots by Bland's rule throughout; float mode starts with the
// largest-coefficient rule and falls back to Bland's after a stall.
template <class T>
FeasibilityOutcome<T> solve_feasibility(const FeasibilityProblem<T>& prob) {
    if (prob.var_count < 1)
        throw std::invalid_argument("feasibility problem needs at least one variable");
    for (const auto& row : prob.difference_rows)
        if (int(row.size()) != prob.var_count)
            throw std::invalid_argument("difference row width does not match var_count");

    const int m = prob.var_count;
    const int K = int(prob.difference_rows.size());
    const int art = m + K;   // artificial variable's column
    const int rhs = art + 1; // right-hand-side column
    const T zero(0);

    std::vector<std::vector<T>> tab(std::size_t(K) + 1, std::vector<T>(std::size_t(rhs) + 1, zero));
    for (int j = 0; j < m; ++j) tab[0][std::size_t(j)] = T(1);
    tab[0][std::size_t(art)] = T(1);
    tab[0][std::size_t(rhs)] = T(1);
    for (int k = 0; k < K; ++k) {
        for (int j = 0; j < m; ++j) tab[std::size_t(k) + 1][std::size_t(j)] = -prob.difference_rows[std::size_t(k)][std::size_t(j)];
        tab[std::size_t(k) + 1][std::size_t(m + k)] = T(1);
    }

    std::vector<int> basis(std::size_t(K) + 1);
    basis[0] = art;
    for (int k = 0; k < K; ++k) basis[std::size_t(k) + 1] = m + k;

    // Reduced-cost row for minimizing the artificial; its right-hand entry
    // holds the negated objective value.
    std::vector<T> z(std::size_t(rhs) + 1, zero);
    z[std::size_t(art)] = T(1);
    for (int j = 0; j <= rhs; ++j) z[std::size_t(j)] -= tab[0][std::size_t(j)];

    const T ptol = numeric_traits<T>::exact ? zero : T(1e-11);
    const T feas_eps = numeric_traits<T>::feasibility_eps();
    bool bland = numeric_traits<T>::exact;
    int stall = 0;
    T best_obj = -z[std::size_t(rhs)];
    const long max_iter = 10000 + 200L * (rhs + 1);

    const auto extract = [&]() {
        FeasibilityOutcome<T> out;
        out.feasible = true;
        out.witness.assign(std::size_t(m), zero);
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] < m) out.witness[std::size_t(basis[i])] = tab[i][std::size_t(rhs)];
        if constexpr (!numeric_traits<T>::exact)
            for (T& v : out.witness)
                if (v < zero) v = zero;
        return out;
    };

    for (long iter = 0;; ++iter) {
        if (iter > max_iter) throw std::runtime_error("feasibility simplex failed to converge");

        const T obj = -z[std::size_t(rhs)];
        if (obj <= feas_eps) return extract();
        if constexpr (!numeric_traits<T>::exact) {
            if (obj > best_obj - T(1e-13)) {
                if (++stall > 64) bland = true;
            } else {
                stall = 0;
                best_obj = obj;
            }
        }

        int enter = -1;
        if (bland) {
            for (int j = 0; j < art; ++j)
                if (z[std::size_t(j)] < -ptol) {
                    enter = j;
                    break;
                }
        } else {
            T best = -ptol;
            for (int j = 0; j < art; ++j)
                if (z[std::size_t(j)] < best) {
                    best = z[std::size_t(j)];
                    enter = j;
                }
        }
        if (enter < 0) {
            FeasibilityOutcome<T> out;
            out.feasible = false;
            return out;
        }

        int leave = -1;
        T best_ratio = zero;
        for (int i = 0; i <= K; ++i) {
            const T& a = tab[std::size_t(i)][std::size_t(enter)];
            if (a <= ptol) continue;
            const T ratio = tab[std::size_t(i)][std::size_t(rhs)] / a;
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[std::size_t(i)] < basis[std::size_t(leave)]))
                leave = i, best_ratio = ratio;
        }
        if (leave < 0) throw std::runtime_error("feasibility simplex became unbounded");

        auto& prow = tab[std::size_t(leave)];
        const T piv = prow[std::size_t(enter)];
        for (T& v : prow) v /= piv;
        for (int i = 0; i <= K; ++i) {
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

}  // namespace curbkit
