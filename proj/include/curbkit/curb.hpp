#pragma once

// Solvers for sets closed under rational behavior: a strategy set (one
// nonempty block per player) is closed when every best response to every
// belief over the set stays inside the set. The checks reduce to one linear
// feasibility problem per strategy, which is what lfp_calls counts.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "best_response.hpp"
#include "game.hpp"

namespace curbkit {

// Outcome of one solver run. iterations counts outer steps, whose meaning is
// per solver: growth passes (min_containing_curb), seeds consumed
// (one_minimal_curb), queue pops (smallest_minimal_curb). guard_fallback
// marks a result that had to be recomputed on the full game after a
// restricted search converged on a set the full game reopens.
struct CurbReport {
    StrategySet set;
    std::optional<StrategyRef> seed;
    long long lfp_calls = 0;
    long long iterations = 0;
    bool minimal = false;
    bool guard_fallback = false;
};

namespace detail {

// Indices attaining the maximum, up to the mode's feasibility slack.
template <class T>
std::vector<int> argmax_band(const std::vector<T>& vals) {
    T best = vals[0];
    for (const T& v : vals)
        if (v > best) best = v;
    const T eps = numeric_traits<T>::feasibility_eps();
    std::vector<int> out;
    for (int i = 0; i < int(vals.size()); ++i)
        if (vals[std::size_t(i)] >= best - eps) out.push_back(i);
    return out;
}

template <class T>
int unique_argmax(const std::vector<T>& vals) {
    const auto band = argmax_band(vals);
    return band.size() == 1 ? band[0] : -1;
}

// The pair {seed, its unique reply} when that reply's own unique reply is the
// seed again. Such a pair is closed outright: each side's sole best response
// to any belief on the other (a point mass) stays inside. Two scans.
template <class T>
std::optional<StrategySet> strict_pair_through(const Game<T>& g, StrategyRef seed) {
    const Player p = seed.player;
    const Player q = opponent_of(p);

    std::vector<T> reply_vals(static_cast<std::size_t>(g.strategy_count(q)));
    for (int j = 0; j < g.strategy_count(q); ++j)
        reply_vals[std::size_t(j)] = payoff_for(g, q, j, seed.index);
    const int reply = unique_argmax(reply_vals);
    if (reply < 0) return std::nullopt;

    std::vector<T> back_vals(static_cast<std::size_t>(g.strategy_count(p)));
    for (int i = 0; i < g.strategy_count(p); ++i)
        back_vals[std::size_t(i)] = payoff_for(g, p, i, reply);
    if (unique_argmax(back_vals) != seed.index) return std::nullopt;

    StrategySet s;
    s.insert(seed);
    s.insert({q, reply});
    return s;
}

template <class T>
std::vector<int> full_pool(const Game<T>& g, Player p) {
    std::vector<int> pool(static_cast<std::size_t>(g.strategy_count(p)));
    std::iota(pool.begin(), pool.end(), 0);
    return pool;
}

}  // namespace detail

// Closure test. Only strategies outside the set can break closure, so this is
// one feasibility solve per outside strategy, stopping at the first escape.
template <class T>
bool is_curb(const Game<T>& g, const StrategySet& set, long long* lfp_calls = nullptr) {
    require_valid_set(g, set);
    if (!set.both_sides_nonempty())
        throw std::invalid_argument("is_curb: set needs strategies on both sides");

    for (const Player p : {Player::Row, Player::Col}) {
        const auto pool = detail::full_pool(g, p);
        const auto& opp = set.side(opponent_of(p));
        for (int s = 0; s < g.strategy_count(p); ++s) {
            if (set.contains({p, s})) continue;
            if (detail::conditionally_rational_one(g, p, s, pool, opp, lfp_calls)) return false;
        }
    }
    return true;
}

// All pairs {row, col} that are mutual unique best responses. Each such pair
// is a minimal closed set, and no closed set of size two is anything else.
// Pure argmax scans, no feasibility solves. Ordered by row index.
template <class T>
std::vector<StrategySet> find_size_two_curbs(const Game<T>& g) {
    const int R = g.rows();
    const int C = g.cols();

    std::vector<int> row_reply(static_cast<std::size_t>(C), -1);  // unique row reply per column
    for (int c = 0; c < C; ++c) {
        std::vector<T> vals(static_cast<std::size_t>(R));
        for (int r = 0; r < R; ++r) vals[std::size_t(r)] = g.payoff(Player::Row, r, c);
        row_reply[std::size_t(c)] = detail::unique_argmax(vals);
    }

    std::vector<StrategySet> out;
    for (int r = 0; r < R; ++r) {
        std::vector<T> vals(static_cast<std::size_t>(C));
        for (int c = 0; c < C; ++c) vals[std::size_t(c)] = g.payoff(Player::Col, r, c);
        const int c = detail::unique_argmax(vals);
        if (c >= 0 && row_reply[std::size_t(c)] == r) {
            StrategySet s;
            s.insert({Player::Row, r});
            s.insert({Player::Col, c});
            out.push_back(std::move(s));
        }
    }
    return out;
}

// Smallest closed set containing the seed, grown inside the given domain.
// Alternates players: everything conditionally rational (domain pool) against
// the current set joins the set, until a full pass adds nothing. With the
// full game as domain this needs at most 2 n^2 feasibility solves.
template <class T>
CurbReport min_containing_curb(const Game<T>& g, StrategyRef seed, const StrategySet& domain) {
    require_valid_set(g, domain);
    if (!domain.both_sides_nonempty())
        throw std::invalid_argument("min_containing_curb: domain needs strategies on both sides");
    if (!domain.contains(seed))
        throw std::invalid_argument("min_containing_curb: seed lies outside the domain");

    CurbReport rep;
    rep.seed = seed;
    rep.set.insert(seed);

    bool grew = true;
    while (grew) {
        grew = false;
        ++rep.iterations;
        for (const Player p : {Player::Row, Player::Col}) {
            const auto fresh = all_conditionally_rational(
                g, p, domain.side(p), rep.set.side(opponent_of(p)), &rep.lfp_calls);
            for (const int s : fresh)
                if (rep.set.insert({p, s})) grew = true;
        }
    }
    return rep;
}

template <class T>
CurbReport min_containing_curb(const Game<T>& g, StrategyRef seed) {
    return min_containing_curb(g, seed, StrategySet::full(g.rows(), g.cols()));
}

// Every minimal closed set. Mutual-unique-reply pairs come out first and
// their strategies leave the working pool; each remaining row strategy then
// seeds a growth restricted to the smallest closed set it is already known to
// sit in, or to the working pool. A growth restricted to the working pool can
// stabilize on a set the full game reopens, so each result is re-verified
// against the full game and redone without restriction when the check fails.
// Results that contain another result are discarded.
template <class T>
std::vector<CurbReport> all_minimal_curb(const Game<T>& g, long long* lfp_calls = nullptr) {
    long long total = 0;
    std::vector<CurbReport> found;

    for (auto& pair : find_size_two_curbs(g)) {
        CurbReport rep;
        rep.set = std::move(pair);
        rep.minimal = true;
        found.push_back(std::move(rep));
    }

    StrategySet work;
    for (const Player p : {Player::Row, Player::Col})
        for (int s = 0; s < g.strategy_count(p); ++s) {
            const StrategyRef ref{p, s};
            const bool taken = std::any_of(found.begin(), found.end(),
                                           [&](const CurbReport& r) { return r.set.contains(ref); });
            if (!taken) work.insert(ref);
        }

    // Any further minimal set is disjoint from the pairs above, so it keeps
    // at least one row strategy inside the working pool. Seeding each of them
    // reaches every minimal set left.
    if (work.both_sides_nonempty()) {
        std::map<StrategyRef, StrategySet> smallest_known;
        for (const int seed_row : work.side(Player::Row)) {
            const StrategyRef seed{Player::Row, seed_row};
            const auto known = smallest_known.find(seed);
            CurbReport rep =
                min_containing_curb(g, seed, known == smallest_known.end() ? work : known->second);
            total += rep.lfp_calls;

            if (!is_curb(g, rep.set, &total)) {
                const long long spent = rep.lfp_calls;
                rep = min_containing_curb(g, seed);
                total += rep.lfp_calls;
                rep.lfp_calls += spent;
                rep.guard_fallback = true;
            }

            for (const Player p : {Player::Row, Player::Col})
                for (const int s : rep.set.side(p)) {
                    const auto [it, fresh] = smallest_known.try_emplace(StrategyRef{p, s}, rep.set);
                    if (!fresh && rep.set.size() < it->second.size()) it->second = rep.set;
                }

            const bool covers_known = std::any_of(
                found.begin(), found.end(),
                [&](const CurbReport& r) { return is_subset(r.set, rep.set); });
            if (covers_known) continue;  // superset or repeat of something held
            std::erase_if(found,
                          [&](const CurbReport& r) { return is_subset(rep.set, r.set); });
            rep.seed.reset();
            rep.minimal = true;
            found.push_back(std::move(rep));
        }
    }

    // The pruning above already keeps only minimal sets; this is a cheap
    // belt-and-braces pass before handing them out in a fixed order.
    std::vector<CurbReport> out;
    for (const auto& rep : found) {
        const bool minimal =
            std::none_of(found.begin(), found.end(), [&](const CurbReport& other) {
                return !(other.set == rep.set) && is_subset(other.set, rep.set);
            });
        if (minimal) out.push_back(rep);
    }
    std::sort(out.begin(), out.end(),
              [](const CurbReport& a, const CurbReport& b) { return a.set < b.set; });
    if (lfp_calls) *lfp_calls += total;
    return out;
}

// One minimal closed set, randomized. Draw a seed uniformly over all
// strategies, try the strict-pair shortcut, otherwise grow the smallest
// closed set around the seed and keep re-growing inside the current result
// from contained strategies that have not seeded yet. When every contained
// strategy has been a seed, no smaller closed set can hide inside.
template <class T>
CurbReport one_minimal_curb(const Game<T>& g, std::mt19937_64& rng) {
    const int total = g.size();
    const int pick = int(rng() % static_cast<unsigned long long>(total));
    const StrategyRef seed = pick < g.rows() ? StrategyRef{Player::Row, pick}
                                             : StrategyRef{Player::Col, pick - g.rows()};

    CurbReport rep;
    rep.seed = seed;
    rep.minimal = true;

    if (auto pair = detail::strict_pair_through(g, seed)) {
        rep.set = std::move(*pair);
        return rep;
    }

    std::set<StrategyRef> used;
    StrategySet domain = StrategySet::full(g.rows(), g.cols());
    StrategyRef cur = seed;
    for (;;) {
        CurbReport step = min_containing_curb(g, cur, domain);
        rep.lfp_calls += step.lfp_calls;
        ++rep.iterations;
        used.insert(cur);
        domain = std::move(step.set);

        std::vector<StrategyRef> open;
        for (const Player p : {Player::Row, Player::Col})
            for (const int s : domain.side(p))
                if (!used.count({p, s})) open.push_back({p, s});
        if (open.empty()) break;
        cur = open[std::size_t(rng() % open.size())];
    }
    rep.set = std::move(domain);
    return rep;
}

// A closed set of the smallest size there is (hence minimal). Mutual
// unique-reply pairs win immediately at the floor size of two. Otherwise
// best-first search: one singleton candidate per row strategy, always expand
// the smallest (ties to the oldest), where expanding adds every conditionally
// rational reply against the candidate, column player first so the row check
// already sees the forced replies. A candidate that stops growing is closed,
// and nothing smaller can still be in flight.
template <class T>
CurbReport smallest_minimal_curb(const Game<T>& g) {
    CurbReport rep;
    rep.minimal = true;

    const auto pairs = find_size_two_curbs(g);
    if (!pairs.empty()) {
        rep.set = pairs.front();
        return rep;
    }

    struct Entry {
        StrategySet set;
        long long stamp;
    };
    const auto later = [](const Entry& a, const Entry& b) {
        if (a.set.size() != b.set.size()) return a.set.size() > b.set.size();
        return a.stamp > b.stamp;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(later)> queue(later);
    long long stamp = 0;
    for (int r = 0; r < g.rows(); ++r) {
        StrategySet s;
        s.insert({Player::Row, r});
        queue.push({std::move(s), stamp++});
    }

    const StrategySet full = StrategySet::full(g.rows(), g.cols());
    while (!queue.empty()) {
        Entry e = queue.top();
        queue.pop();
        ++rep.iterations;

        bool grew = false;
        for (const Player p : {Player::Col, Player::Row}) {
            const auto fresh = all_conditionally_rational(
                g, p, full.side(p), e.set.side(opponent_of(p)), &rep.lfp_calls);
            for (const int s : fresh)
                if (e.set.insert({p, s})) grew = true;
        }
        if (!grew && e.set.both_sides_nonempty()) {
            rep.set = std::move(e.set);
            return rep;
        }
        e.stamp = stamp++;
        queue.push(std::move(e));
    }
    throw std::logic_error("smallest_minimal_curb: search space exhausted");  // unreachable
}

}  // namespace curbkit
