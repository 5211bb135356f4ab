#pragma once

#include "game.hpp"

#include <cstddef>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace curbkit {

// Numeric mode is a property of the file: '/' anywhere forces rational,
// ". e E" anywhere forces float, plain integers default to rational.
using ParsedGame = std::variant<Game<Rational>, Game<double>>;

inline NumericMode parsed_mode(const ParsedGame& pg) {
    return pg.index() == 0 ? NumericMode::Rational : NumericMode::Float;
}

namespace detail {

inline int parse_dim(const std::string& tok) {
    int v = 0;
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    const auto [p, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || p != end || v < 1)
        throw ParseError("bad dimension token: '" + tok + "'");
    return v;
}

template <class T, class ParseTok>
Game<T> fill_game(int rows, int cols, const std::vector<std::string>& toks, ParseTok parse_tok) {
    Game<T> g(rows, cols);
    std::size_t k = 2;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            g.payoff(Player::Row, r, c) = parse_tok(toks[k++]);
            g.payoff(Player::Col, r, c) = parse_tok(toks[k++]);
        }
    return g;
}

}  // namespace detail

inline ParsedGame parse_game(std::string_view text) {
    std::vector<std::string> toks;
    bool header_seen = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.remove_suffix(1);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
            line.remove_prefix(1);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "curbkit-game v1")
                throw ParseError("missing or malformed header (expected 'curbkit-game v1')");
            header_seen = true;
            continue;
        }
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
            if (j > i) toks.emplace_back(line.substr(i, j - i));
            i = j;
        }
    }
    if (!header_seen) throw ParseError("empty game text");
    if (toks.size() < 2) throw ParseError("missing dimensions");

    const int rows = detail::parse_dim(toks[0]);
    const int cols = detail::parse_dim(toks[1]);
    const std::size_t expected = 2 * std::size_t(rows) * std::size_t(cols);
    if (toks.size() - 2 != expected)
        throw ParseError("wrong entry count: expected " + std::to_string(expected) + " payoffs, got " +
                         std::to_string(toks.size() - 2));

    bool any_fraction = false;
    bool any_float = false;
    for (std::size_t k = 2; k < toks.size(); ++k) {
        any_fraction = any_fraction || rational_fraction_token(toks[k]);
        any_float = any_float || float_style_token(toks[k]);
    }
    if (any_fraction && any_float)
        throw ParseError("mixed rational and float payoff styles in one game");

    if (any_float)
        return detail::fill_game<double>(rows, cols, toks,
                                         [](const std::string& t) { return parse_float_token(t); });
    return detail::fill_game<Rational>(rows, cols, toks,
                                       [](const std::string& t) { return parse_rational_token(t); });
}

template <class T>
std::string serialize_game(const Game<T>& g) {
    std::ostringstream os;
    os << "curbkit-game v1\n" << g.rows() << ' ' << g.cols() << '\n';
    for (int r = 0; r < g.rows(); ++r) {
        for (int c = 0; c < g.cols(); ++c) {
            if (c) os << "  ";
            os << format_scalar(g.payoff(Player::Row, r, c)) << ' '
               << format_scalar(g.payoff(Player::Col, r, c));
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace curbkit
