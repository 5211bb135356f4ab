#pragma once

#include "scalar.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace curbkit {

enum class Player { Row, Col };

inline Player opponent_of(Player p) { return p == Player::Row ? Player::Col : Player::Row; }

struct StrategyRef {
    Player player;
    int index;

    friend constexpr bool operator==(const StrategyRef&, const StrategyRef&) = default;
    friend constexpr auto operator<=>(const StrategyRef&, const StrategyRef&) = default;
};

// A subset of strategies for each player, in ambient game coordinates.
// Both sides are kept sorted and duplicate-free.
struct StrategySet {
    std::vector<int> row_set;
    std::vector<int> col_set;

    static StrategySet full(int rows, int cols) {
        StrategySet s;
        s.row_set.resize(rows);
        s.col_set.resize(cols);
        for (int i = 0; i < rows; ++i) s.row_set[i] = i;
        for (int j = 0; j < cols; ++j) s.col_set[j] = j;
        return s;
    }

    std::vector<int>& side(Player p) { return p == Player::Row ? row_set : col_set; }
    const std::vector<int>& side(Player p) const { return p == Player::Row ? row_set : col_set; }

    int size() const { return int(row_set.size() + col_set.size()); }
    bool both_sides_nonempty() const { return !row_set.empty() && !col_set.empty(); }

    bool contains(StrategyRef s) const {
        const auto& v = side(s.player);
        return std::binary_search(v.begin(), v.end(), s.index);
    }

    // Returns true when the strategy was not already present.
    bool insert(StrategyRef s) {
        auto& v = side(s.player);
        const auto it = std::lower_bound(v.begin(), v.end(), s.index);
        if (it != v.end() && *it == s.index) return false;
        v.insert(it, s.index);
        return true;
    }

    friend bool operator==(const StrategySet&, const StrategySet&) = default;
    friend auto operator<=>(const StrategySet&, const StrategySet&) = default;
};

inline StrategySet make_set(std::vector<int> rows, std::vector<int> cols) {
    const auto tidy = [](std::vector<int>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    tidy(rows);
    tidy(cols);
    return StrategySet{std::move(rows), std::move(cols)};
}

inline bool is_subset(const StrategySet& a, const StrategySet& b) {
    return std::includes(b.row_set.begin(), b.row_set.end(), a.row_set.begin(), a.row_set.end()) &&
           std::includes(b.col_set.begin(), b.col_set.end(), a.col_set.begin(), a.col_set.end());
}

inline StrategySet set_intersection(const StrategySet& a, const StrategySet& b) {
    StrategySet out;
    std::set_intersection(a.row_set.begin(), a.row_set.end(), b.row_set.begin(), b.row_set.end(),
                          std::back_inserter(out.row_set));
    std::set_intersection(a.col_set.begin(), a.col_set.end(), b.col_set.begin(), b.col_set.end(),
                          std::back_inserter(out.col_set));
    return out;
}

// Disjoint means sharing no strategy of either player.
inline bool sets_disjoint(const StrategySet& a, const StrategySet& b) {
    const StrategySet common = set_intersection(a, b);
    return common.row_set.empty() && common.col_set.empty();
}

inline std::ostream& operator<<(std::ostream& os, const StrategySet& s) {
    const auto list = [&os](const std::vector<int>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    };
    os << "rows{";
    list(s.row_set);
    os << "} cols{";
    list(s.col_set);
    os << "}";
    return os;
}

template <class T>
struct MixedStrategy {
    Player player = Player::Row;
    std::map<int, T> probs;

    static MixedStrategy point_mass(Player p, int index) {
        MixedStrategy m;
        m.player = p;
        m.probs[index] = T(1);
        return m;
    }

    static MixedStrategy uniform(Player p, const std::vector<int>& support) {
        if (support.empty()) throw std::invalid_argument("uniform mixture over an empty support");
        MixedStrategy m;
        m.player = p;
        const T w = T(1) / T(int(support.size()));
        for (int s : support) m.probs[s] = w;
        return m;
    }

    T prob(int index) const {
        const auto it = probs.find(index);
        return it == probs.end() ? T(0) : it->second;
    }

    std::vector<int> support() const {
        std::vector<int> out;
        for (const auto& [i, p] : probs)
            if (p > T(0)) out.push_back(i);
        return out;
    }

    void validate(int strategy_count) const {
        T sum(0);
        for (const auto& [i, p] : probs) {
            if (i < 0 || i >= strategy_count)
                throw std::invalid_argument("mixture index out of range");
            if (p < T(0)) throw std::invalid_argument("negative probability in mixture");
            sum += p;
        }
        const T err = sum > T(1) ? T(sum - T(1)) : T(T(1) - sum);
        if (err > numeric_traits<T>::mixture_sum_eps())
            throw std::invalid_argument("mixture probabilities do not sum to 1");
    }
};

// Two-player normal-form game. Immutable after construction by convention:
// generators and the parser fill it once, solvers only read.
template <class T>
class Game {
public:
    using scalar_type = T;

    Game(int rows, int cols)
        : rows_(checked_dim(rows)),
          cols_(checked_dim(cols)),
          u_row_(std::size_t(rows) * std::size_t(cols)),
          u_col_(std::size_t(rows) * std::size_t(cols)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int size() const { return rows_ + cols_; }  // n = |S_r| + |S_c|
    int strategy_count(Player p) const { return p == Player::Row ? rows_ : cols_; }
    NumericMode mode() const { return numeric_traits<T>::mode; }

    T& payoff(Player who, int r, int c) {
        return (who == Player::Row ? u_row_ : u_col_)[idx(r, c)];
    }
    const T& payoff(Player who, int r, int c) const {
        return (who == Player::Row ? u_row_ : u_col_)[idx(r, c)];
    }

    friend bool operator==(const Game& a, const Game& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.u_row_ == b.u_row_ &&
               a.u_col_ == b.u_col_;
    }

private:
    static int checked_dim(int d) {
        if (d < 1) throw std::invalid_argument("game needs at least one strategy per player");
        return d;
    }

    std::size_t idx(int r, int c) const {
        assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
        return std::size_t(r) * std::size_t(cols_) + std::size_t(c);
    }

    int rows_;
    int cols_;
    std::vector<T> u_row_;
    std::vector<T> u_col_;
};

// Payoff of `p` when p plays `own` and the opponent plays `other`.
template <class T>
const T& payoff_for(const Game<T>& g, Player p, int own, int other) {
    return p == Player::Row ? g.payoff(p, own, other) : g.payoff(p, other, own);
}

template <class T>
void require_valid_set(const Game<T>& g, const StrategySet& s) {
    const auto check = [](const std::vector<int>& v, int count, const char* what) {
        int prev = -1;
        for (int i : v) {
            if (i < 0 || i >= count) throw std::invalid_argument(std::string("strategy index out of range in ") + what);
            if (i <= prev) throw std::invalid_argument(std::string("unsorted or duplicate index in ") + what);
            prev = i;
        }
    };
    check(s.row_set, g.rows(), "row set");
    check(s.col_set, g.cols(), "column set");
}

template <class T>
T expected_utility(const Game<T>& g, Player who, const MixedStrategy<T>& row_mix,
                   const MixedStrategy<T>& col_mix) {
    if (row_mix.player != Player::Row || col_mix.player != Player::Col)
        throw std::invalid_argument("mixture assigned to the wrong player");
    row_mix.validate(g.rows());
    col_mix.validate(g.cols());
    T total(0);
    for (const auto& [r, pr] : row_mix.probs)
        for (const auto& [c, pc] : col_mix.probs) total += pr * pc * g.payoff(who, r, c);
    return total;
}

// Read-only subgame view. Local indices are positions within the defining
// StrategySet; payoffs are looked up in the ambient game, never copied.
template <class T>
class GameView {
public:
    GameView(const Game<T>& g, StrategySet set) : g_(&g), set_(std::move(set)) {
        if (!set_.both_sides_nonempty())
            throw std::invalid_argument("subgame restriction needs both sides nonempty");
        require_valid_set(g, set_);
    }

    int rows() const { return int(set_.row_set.size()); }
    int cols() const { return int(set_.col_set.size()); }
    int size() const { return rows() + cols(); }

    const T& payoff(Player who, int r, int c) const {
        return g_->payoff(who, set_.row_set[std::size_t(r)], set_.col_set[std::size_t(c)]);
    }

    int ambient_row(int r) const { return set_.row_set[std::size_t(r)]; }
    int ambient_col(int c) const { return set_.col_set[std::size_t(c)]; }
    const StrategySet& domain() const { return set_; }
    const Game<T>& ambient() const { return *g_; }

private:
    const Game<T>* g_;
    StrategySet set_;
};

template <class T>
GameView<T> restrict(const Game<T>& g, const StrategySet& set) {
    return GameView<T>(g, set);
}

// views alias the game, so a temporary would dangle
template <class T>
GameView<T> restrict(Game<T>&& g, const StrategySet& set) = delete;

}  // namespace curbkit
