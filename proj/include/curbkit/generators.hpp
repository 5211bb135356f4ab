#pragma once

// Game families. The structured ones (gamma, padded, omega) are exact
// rational constructions whose closed-set layout is known in advance; the
// sampled ones (random, covariant) are float games for statistics.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <variant>

#include "game.hpp"
#include "rng.hpp"
#include "scalar.hpp"

namespace curbkit {

// Every payoff i.i.d. uniform on [0, 1); cells row-major, row payoff first.
inline Game<double> random_game(int rows, int cols, std::mt19937_64& rng) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("random_game: dimensions must be positive");
    Game<double> g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            g.payoff(Player::Row, i, j) = uniform53(rng);
            g.payoff(Player::Col, i, j) = uniform53(rng);
        }
    return g;
}

// Each cell's payoff pair is bivariate standard normal with correlation rho:
// (z1, rho z1 + sqrt(1 - rho^2) z2) from one normal pair per cell.
inline Game<double> covariant_game(int rows, int cols, double rho, std::mt19937_64& rng) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("covariant_game: dimensions must be positive");
    if (!(rho >= -1.0 && rho <= 1.0))
        throw std::invalid_argument("covariant_game: rho must lie in [-1, 1]");
    const double tail = std::sqrt(1.0 - rho * rho);
    Game<double> g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const auto [z1, z2] = normal_pair(rng);
            g.payoff(Player::Row, i, j) = z1;
            g.payoff(Player::Col, i, j) = rho * z1 + tail * z2;
        }
    return g;
}

// A family whose only closed set is the whole game. The top-left 2x2 corner
// is matching pennies; later strategies pair up against the first two of the
// other side so that everything stays a best response to something, and the
// remaining interior holds distinct losing values. Indices below are 1-based
// to keep the fractions readable.
inline Game<Rational> gamma_game(int r_prime, int c_prime) {
    if (r_prime < 2 || c_prime < 2)
        throw std::invalid_argument("gamma_game: both dimensions must be at least 2");
    const auto frac = [](long long num, long long den) { return Rational(num) / Rational(den); };

    Game<Rational> g(r_prime, c_prime);
    for (int i = 1; i <= r_prime; ++i)
        for (int j = 1; j <= c_prime; ++j) {
            Rational ur, uc;
            if (i <= 2 && j <= 2) {
                ur = Rational(i == j ? 0 : 1);
                uc = Rational(i == j ? 1 : 0);
            } else if (j <= 2) {
                if (i % 2 == 1 && i == r_prime) {  // leftover odd row
                    ur = j == 1 ? frac(1, r_prime) : frac(r_prime - 1, r_prime);
                    uc = frac(1, 2);
                } else if (i % 2 == 1) {  // i = 2m - 1
                    const int m = (i + 1) / 2;
                    ur = j == 1 ? frac(r_prime - 2 * m + 2, r_prime) : frac(2 * m - 2, r_prime);
                    uc = Rational(j == 1 ? 1 : 0);
                } else {  // i = 2m
                    const int m = i / 2;
                    ur = j == 1 ? frac(r_prime - (2 * m - 1), r_prime) : frac(2 * m - 1, r_prime);
                    uc = Rational(j == 1 ? 0 : 1);
                }
            } else if (i <= 2) {  // mirrored for the column side
                if (j % 2 == 1 && j == c_prime) {
                    uc = i == 1 ? frac(1, c_prime) : frac(c_prime - 1, c_prime);
                    ur = frac(1, 2);
                } else if (j % 2 == 1) {
                    const int m = (j + 1) / 2;
                    uc = i == 1 ? frac(c_prime - 2 * m + 2, c_prime) : frac(2 * m - 2, c_prime);
                    ur = Rational(i == 1 ? 0 : 1);
                } else {
                    const int m = j / 2;
                    uc = i == 1 ? frac(c_prime - (2 * m - 1), c_prime) : frac(2 * m - 1, c_prime);
                    ur = Rational(i == 1 ? 1 : 0);
                }
            } else {  // interior: losing and distinct within each row and column
                ur = Rational(-i);
                uc = Rational(-j);
            }
            g.payoff(Player::Row, i - 1, j - 1) = ur;
            g.payoff(Player::Col, i - 1, j - 1) = uc;
        }
    return g;
}

// Two gamma blocks on the diagonal, everything else filled with distinct
// values below the blocks' own scale, so each block is closed on its own.
// Remainders of exactly 1 cannot host a block and are rejected. The filler
// schedule is fixed rather than sampled: the o-th off-block cell (row-major)
// holds -2 - o/(total+1) for both players.
inline Game<Rational> padded_game(int r, int c, int r_prime, int c_prime) {
    if (r_prime < 2 || c_prime < 2)
        throw std::invalid_argument("padded_game: block dimensions must be at least 2");
    const int row_rest = r - r_prime;
    const int col_rest = c - c_prime;
    if (row_rest < 0 || col_rest < 0)
        throw std::invalid_argument("padded_game: block must fit inside the game");
    if ((row_rest != 0 && row_rest < 2) || (col_rest != 0 && col_rest < 2))
        throw std::invalid_argument("padded_game: remainders must be 0 or at least 2");

    Game<Rational> g(r, c);
    const Game<Rational> top = gamma_game(r_prime, c_prime);
    for (int i = 0; i < r_prime; ++i)
        for (int j = 0; j < c_prime; ++j) {
            g.payoff(Player::Row, i, j) = top.payoff(Player::Row, i, j);
            g.payoff(Player::Col, i, j) = top.payoff(Player::Col, i, j);
        }

    const bool has_bottom = row_rest >= 2 && col_rest >= 2;
    if (has_bottom) {
        const Game<Rational> bottom = gamma_game(row_rest, col_rest);
        for (int i = 0; i < row_rest; ++i)
            for (int j = 0; j < col_rest; ++j) {
                g.payoff(Player::Row, r_prime + i, c_prime + j) = bottom.payoff(Player::Row, i, j);
                g.payoff(Player::Col, r_prime + i, c_prime + j) = bottom.payoff(Player::Col, i, j);
            }
    }

    const auto in_block = [&](int i, int j) {
        if (i < r_prime && j < c_prime) return true;
        return has_bottom && i >= r_prime && j >= c_prime;
    };
    long long total = 0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (!in_block(i, j)) ++total;

    long long o = 0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            if (in_block(i, j)) continue;
            const Rational v = Rational(-2) - Rational(o) / Rational(total + 1);
            g.payoff(Player::Row, i, j) = v;
            g.payoff(Player::Col, i, j) = v;
            ++o;
        }
    return g;
}

// A (2+k) square family with one closed set (everything) but a single tiny
// equilibrium. The corner is matching pennies; each later strategy strictly
// beats the previous one of the other side, forming a cycle of replies, while
// big_z punishes stepping far off the ladder. Indices 1-based as above.
inline Game<Rational> omega_game(int k, const Rational& epsilon, const Rational& big_z) {
    if (k < 1) throw std::invalid_argument("omega_game: k must be at least 1");
    if (!(epsilon > 0)) throw std::invalid_argument("omega_game: epsilon must be positive");
    if (!(big_z > 0)) throw std::invalid_argument("omega_game: big_Z must be positive");

    const int n = 2 + k;
    const Rational zero(0), one(1);
    Game<Rational> g(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            Rational ur, uc;
            if (i <= 2 && j <= 2) {
                ur = i == j ? zero : one;
                uc = i == j ? one : zero;
            } else if (i == j) {
                ur = zero;
                uc = zero;
            } else if (j == i + 1) {  // the column one past i undercuts it
                ur = zero;
                uc = one + epsilon;
            } else if (i == j + 1) {
                ur = one + epsilon;
                uc = zero;
            } else if (j > i + 1) {  // far off the ladder, column side punished
                ur = i == 1 ? epsilon : zero;
                uc = -big_z;
            } else {  // i > j + 1
                ur = -big_z;
                uc = j == 1 ? epsilon : zero;
            }
            g.payoff(Player::Row, i - 1, j - 1) = ur;
            g.payoff(Player::Col, i - 1, j - 1) = uc;
        }
    return g;
}

inline Game<Rational> omega_game(int k) {
    return omega_game(k, Rational(1) / Rational(10), Rational(10000));
}

enum class Family { Random, Covariant, Gamma, Padded, Omega };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::Random: return "random";
        case Family::Covariant: return "covariant";
        case Family::Gamma: return "gamma";
        case Family::Padded: return "padded";
        case Family::Omega: return "omega";
    }
    return "unknown";
}

// One record that can describe any family; unused fields are ignored.
struct GeneratorSpec {
    Family family = Family::Random;
    int rows = 0;  // random, covariant, padded outer shape
    int cols = 0;
    int r_prime = 0;  // gamma shape, padded top-left block
    int c_prime = 0;
    int k = 0;  // omega ladder length
    double rho = 0.0;
    Rational epsilon = Rational(1) / Rational(10);
    Rational big_z = Rational(10000);
    std::uint64_t rng_seed = 0;
};

using GameVariant = std::variant<Game<Rational>, Game<double>>;

inline GameVariant build_game(const GeneratorSpec& spec) {
    switch (spec.family) {
        case Family::Random: {
            std::mt19937_64 rng(spec.rng_seed);
            return random_game(spec.rows, spec.cols, rng);
        }
        case Family::Covariant: {
            std::mt19937_64 rng(spec.rng_seed);
            return covariant_game(spec.rows, spec.cols, spec.rho, rng);
        }
        case Family::Gamma: return gamma_game(spec.r_prime, spec.c_prime);
        case Family::Padded: return padded_game(spec.rows, spec.cols, spec.r_prime, spec.c_prime);
        case Family::Omega: return omega_game(spec.k, spec.epsilon, spec.big_z);
    }
    throw std::invalid_argument("build_game: unknown family");
}

}  // namespace curbkit
