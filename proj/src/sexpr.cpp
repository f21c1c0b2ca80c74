#include "burniat5/sexpr.hpp"

#include <sstream>

namespace bur5 {

const Sexpr& Sexpr::at(std::size_t i) const {
    if (!is_list || i >= items.size())
        throw ParseError(line, col, "malformed expression: missing argument");
    return items[i];
}

std::string Sexpr::head() const {
    if (!is_list || items.empty() || items[0].is_list || items[0].was_string) return "";
    return items[0].atom;
}

std::string Sexpr::dump() const {
    if (!is_list) return was_string ? "\"" + atom + "\"" : atom;
    std::string s = "(";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) s += " ";
        s += items[i].dump();
    }
    return s + ")";
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1, col = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char get() {
        char c = text[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    void skip_ws() {
        while (!eof()) {
            char c = peek();
            if (c == ';') {  // comment to end of line
                while (!eof() && peek() != '\n') get();
            } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                get();
            } else {
                break;
            }
        }
    }
};

Sexpr parse_one(Cursor& cur) {
    cur.skip_ws();
    if (cur.eof()) throw ParseError(cur.line, cur.col, "unexpected end of input");
    Sexpr node;
    node.line = cur.line;
    node.col = cur.col;
    char c = cur.peek();
    if (c == '(') {
        cur.get();
        node.is_list = true;
        for (;;) {
            cur.skip_ws();
            if (cur.eof()) throw ParseError(node.line, node.col, "unclosed '('");
            if (cur.peek() == ')') {
                cur.get();
                return node;
            }
            node.items.push_back(parse_one(cur));
        }
    }
    if (c == ')') throw ParseError(cur.line, cur.col, "unexpected ')'");
    if (c == '"') {
        cur.get();
        node.was_string = true;
        while (!cur.eof() && cur.peek() != '"') node.atom += cur.get();
        if (cur.eof()) throw ParseError(node.line, node.col, "unterminated string");
        cur.get();
        return node;
    }
    while (!cur.eof()) {
        char d = cur.peek();
        if (d == '(' || d == ')' || d == '"' || d == ';' || d == ' ' || d == '\t' ||
            d == '\n' || d == '\r')
            break;
        node.atom += cur.get();
    }
    if (node.atom.empty()) throw ParseError(cur.line, cur.col, "empty token");
    return node;
}

}  // namespace

std::vector<Sexpr> parse_sexprs(const std::string& text) {
    Cursor cur{text};
    std::vector<Sexpr> out;
    for (;;) {
        cur.skip_ws();
        if (cur.eof()) break;
        out.push_back(parse_one(cur));
    }
    return out;
}

}  // namespace bur5
