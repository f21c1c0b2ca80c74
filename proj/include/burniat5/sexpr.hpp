#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace bur5 {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(int l, int c, const std::string& msg)
        : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
          line(l),
          col(c) {}
};

// Minimal s-expression node with source positions, enough for the certificate
// grammar: atoms (symbols, numbers, double-quoted strings) and lists.
struct Sexpr {
    bool is_list = false;
    std::string atom;            // valid when !is_list; strings keep quotes stripped
    bool was_string = false;     // atom came from a "..." literal
    std::vector<Sexpr> items;    // valid when is_list
    int line = 0, col = 0;

    bool is_sym(const std::string& s) const { return !is_list && !was_string && atom == s; }
    const Sexpr& at(std::size_t i) const;
    std::size_t size() const { return items.size(); }
    // head symbol of a list, or "" for anything else
    std::string head() const;
    std::string dump() const;
};

// Parses a full document: a sequence of top-level s-expressions.
std::vector<Sexpr> parse_sexprs(const std::string& text);

}  // namespace bur5
