// Propositional formulas over atoms, the constants true/false, and the
// connectives ~ (negation), & (conjunction), | (disjunction).
//
// Concrete syntax accepted by parse():
//
//     formula  := or_expr
//     or_expr  := and_expr ('|' and_expr)*          left associative
//     and_expr := unary ('&' unary)*                left associative
//     unary    := '~' unary | primary
//     primary  := 'true' | 'false' | ident | '(' formula ')'
//     ident    := [a-zA-Z_][a-zA-Z0-9_]*
//
// Precedence is ~ > & > |.  print() emits the minimal parenthesisation that
// parses back to a structurally identical tree.
//
// Formulas are immutable values with structural equality; subtrees are
// shared, never mutated, and safe to use across threads.

#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pivotal {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Syntax error with the byte offset of the offending token.
struct parse_error : error {
    parse_error(const std::string& msg, std::size_t pos)
        : error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

enum class FormulaKind : std::uint8_t { False, True, Atom, Not, And, Or };

class Formula {
public:
    Formula() : Formula(falsity()) {}

    static Formula falsity() { return Formula(make(FormulaKind::False)); }
    static Formula truth() { return Formula(make(FormulaKind::True)); }

    static Formula atom(std::string name) {
        auto n = make(FormulaKind::Atom);
        n->name = std::move(name);
        return Formula(std::move(n));
    }

    static Formula neg(Formula child) {
        auto n = make(FormulaKind::Not);
        n->lhs = child.node_;
        return Formula(std::move(n));
    }

    static Formula conj(Formula a, Formula b) { return binary(FormulaKind::And, a, b); }
    static Formula disj(Formula a, Formula b) { return binary(FormulaKind::Or, a, b); }

    FormulaKind kind() const { return node_->kind; }
    const std::string& name() const { return node_->name; }
    Formula left() const { return Formula(node_->lhs); }
    Formula right() const { return Formula(node_->rhs); }
    Formula child() const { return Formula(node_->lhs); }

    bool operator==(const Formula& other) const { return equal(node_.get(), other.node_.get()); }
    bool operator!=(const Formula& other) const { return !(*this == other); }

private:
    struct Node {
        FormulaKind kind;
        std::string name;
        std::shared_ptr<const Node> lhs, rhs;
    };

    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static std::shared_ptr<Node> make(FormulaKind k) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        return n;
    }

    static Formula binary(FormulaKind k, const Formula& a, const Formula& b) {
        auto n = make(k);
        n->lhs = a.node_;
        n->rhs = b.node_;
        return Formula(std::move(n));
    }

    static bool equal(const Node* a, const Node* b) {
        if (a == b) return true;
        if (a->kind != b->kind) return false;
        switch (a->kind) {
            case FormulaKind::False:
            case FormulaKind::True: return true;
            case FormulaKind::Atom: return a->name == b->name;
            case FormulaKind::Not: return equal(a->lhs.get(), b->lhs.get());
            case FormulaKind::And:
            case FormulaKind::Or:
                return equal(a->lhs.get(), b->lhs.get()) && equal(a->rhs.get(), b->rhs.get());
        }
        return false;
    }

    std::shared_ptr<const Node> node_;
};

using FormulaList = std::vector<Formula>;

inline bool contains_formula(const FormulaList& set, const Formula& f) {
    for (const auto& g : set)
        if (g == f) return true;
    return false;
}

inline void insert_formula(FormulaList& set, const Formula& f) {
    if (!contains_formula(set, f)) set.push_back(f);
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Formula parse() {
        Formula f = parse_or();
        skip_space();
        if (pos_ != text_.size())
            throw parse_error("unexpected trailing input", pos_);
        return f;
    }

private:
    Formula parse_or() {
        Formula f = parse_and();
        while (peek() == '|') {
            ++pos_;
            f = Formula::disj(f, parse_and());
        }
        return f;
    }

    Formula parse_and() {
        Formula f = parse_unary();
        while (peek() == '&') {
            ++pos_;
            f = Formula::conj(f, parse_unary());
        }
        return f;
    }

    Formula parse_unary() {
        if (peek() == '~') {
            ++pos_;
            return Formula::neg(parse_unary());
        }
        return parse_primary();
    }

    Formula parse_primary() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Formula f = parse_or();
            if (peek() != ')') throw parse_error("expected ')'", pos_);
            ++pos_;
            return f;
        }
        if (is_ident_start(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
            std::string id(text_.substr(start, pos_ - start));
            if (id == "true") return Formula::truth();
            if (id == "false") return Formula::falsity();
            return Formula::atom(std::move(id));
        }
        if (c == '\0') throw parse_error("unexpected end of input", pos_);
        throw parse_error(std::string("unexpected character '") + c + "'", pos_);
    }

    // Returns the next significant character without consuming it, or '\0'
    // at end of input.  Leaves pos_ at that character.
    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void skip_space() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r' ||
                text_[pos_] == '\n'))
            ++pos_;
    }

    static bool is_ident_start(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    }
    static bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse(std::string_view text) { return detail::Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline int precedence(FormulaKind k) {
    switch (k) {
        case FormulaKind::Or: return 1;
        case FormulaKind::And: return 2;
        case FormulaKind::Not: return 3;
        default: return 4;
    }
}

inline void print_to(const Formula& f, std::string& out, int parent_prec, bool right_operand) {
    int prec = precedence(f.kind());
    // A right operand of equal precedence must keep its parentheses, or the
    // left-associative reparse would regroup it.
    bool parens = prec < parent_prec || (prec == parent_prec && right_operand);
    if (parens) out += '(';
    switch (f.kind()) {
        case FormulaKind::False: out += "false"; break;
        case FormulaKind::True: out += "true"; break;
        case FormulaKind::Atom: out += f.name(); break;
        case FormulaKind::Not:
            out += '~';
            print_to(f.child(), out, prec, false);
            break;
        case FormulaKind::And:
        case FormulaKind::Or:
            print_to(f.left(), out, prec, false);
            out += f.kind() == FormulaKind::And ? " & " : " | ";
            print_to(f.right(), out, prec, true);
            break;
    }
    if (parens) out += ')';
}

}  // namespace detail

inline std::string print(const Formula& f) {
    std::string out;
    detail::print_to(f, out, 0, false);
    return out;
}

// ---------------------------------------------------------------------------
// Set disjunction: {a | b : a in gamma, b in delta}, deduplicated
// structurally.  Empty whenever either side is empty.

inline FormulaList disjoin_sets(const FormulaList& gamma, const FormulaList& delta) {
    FormulaList out;
    for (const auto& a : gamma)
        for (const auto& b : delta) insert_formula(out, Formula::disj(a, b));
    return out;
}

}  // namespace pivotal
