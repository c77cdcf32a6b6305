#include "dscurve/expr.hpp"

#include <cctype>

namespace dsc::expr {

namespace {

class Parser {
   public:
    explicit Parser(std::string_view s) : s_(s) {}

    NodePtr run() {
        auto e = expression();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return e;
    }

   private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(why + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    static std::shared_ptr<Node> make(Node::Kind k, NodePtr a = {}, NodePtr b = {}) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->lhs = std::move(a);
        n->rhs = std::move(b);
        return n;
    }

    bool starts_primary(char c) const {
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
               c == '(' || c == '{';
    }

    NodePtr expression() {
        NodePtr acc;
        char c = peek();
        if (c == '+' || c == '-') {
            ++pos_;
            acc = term();
            if (c == '-') acc = make(Node::Kind::Neg, acc);
        } else {
            acc = term();
        }
        for (;;) {
            c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            auto rhs = term();
            acc = make(c == '+' ? Node::Kind::Add : Node::Kind::Sub, acc, rhs);
        }
        return acc;
    }

    NodePtr term() {
        auto acc = factor();
        for (;;) {
            char c = peek();
            if (c == '*' || c == '/') {
                ++pos_;
                auto rhs = factor();
                acc = make(c == '*' ? Node::Kind::Mul : Node::Kind::Div, acc, rhs);
            } else if (starts_primary(c)) {
                acc = make(Node::Kind::Mul, acc, factor());
            } else {
                break;
            }
        }
        return acc;
    }

    NodePtr factor() {
        auto base = primary();
        while (peek() == '^') {
            ++pos_;
            auto n = make(Node::Kind::Pow, base);
            n->exponent = exponent();
            base = n;
        }
        return base;
    }

    unsigned long exponent() {
        char c = peek();
        if (c == '{' || c == '(') {
            char close = c == '{' ? '}' : ')';
            ++pos_;
            auto v = integer();
            if (peek() != close) fail("unbalanced exponent group");
            ++pos_;
            return v;
        }
        return integer();
    }

    unsigned long integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a nonnegative integer exponent");
        auto digits = s_.substr(start, pos_ - start);
        if (digits.size() > 12) fail("exponent too large");
        return std::stoul(std::string(digits));
    }

    NodePtr primary() {
        char c = peek();
        if (c == '(' || c == '{') {
            char close = c == '(' ? ')' : '}';
            ++pos_;
            auto e = expression();
            if (peek() != close) fail("unbalanced parenthesis");
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            auto n = make(Node::Kind::Number);
            n->text = std::string(s_.substr(start, pos_ - start));
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            auto n = make(Node::Kind::Symbol);
            n->text = std::string(s_.substr(start, pos_ - start));
            return n;
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected '") + c + "'");
    }
};

}  // namespace

NodePtr parse(std::string_view text) {
    return Parser(text).run();
}

std::vector<std::string> split_list(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        auto first = cur.find_first_not_of(" \t\n");
        if (first != std::string::npos) {
            auto last = cur.find_last_not_of(" \t\n");
            out.push_back(cur.substr(first, last - first + 1));
        }
        cur.clear();
    };
    for (char c : text) {
        if (c == sep)
            flush();
        else
            cur.push_back(c);
    }
    flush();
    return out;
}

std::string strip_spaces(std::string_view text) {
    std::string out;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

}  // namespace dsc::expr
