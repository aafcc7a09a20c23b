#include "jetvar/syntax.hpp"

#include <cctype>

#include "jetvar/error.hpp"

namespace jetvar {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

class DefaultSymbols : public SymbolTable {
public:
    std::string atom_name(const Atom& a) const override {
        switch (a.kind) {
        case AtomKind::Base: return "x" + std::to_string(a.index);
        case AtomKind::Parameter: return "p" + std::to_string(a.index);
        case AtomKind::EvenJet:
            return "y[" + std::to_string(a.index) + ";" + multi_index_digits(a.jet) + "]";
        case AtomKind::OddJet:
            return "c[" + std::to_string(a.index) + ";" + multi_index_digits(a.jet) + "]";
        case AtomKind::Function: break;
        }
        return "?";
    }

    Atom resolve(std::string_view name, const std::string* bracket) const override {
        if (bracket == nullptr) {
            if (name.size() > 1 && name[0] == 'x' && all_digits(name.substr(1)))
                return Atom::base(std::stoi(std::string(name.substr(1))));
            if (name.size() > 1 && name[0] == 'p' && all_digits(name.substr(1)))
                return Atom::parameter(std::stoi(std::string(name.substr(1))));
        } else if (name == "y" || name == "c") {
            auto semi = bracket->find(';');
            if (semi != std::string::npos) {
                std::string field = trim(std::string_view(*bracket).substr(0, semi));
                if (all_digits(field)) {
                    MultiIndex m = parse_multi_index_digits(trim(std::string_view(*bracket).substr(semi + 1)));
                    return Atom::jet_of(name == "c", std::stoi(field), m);
                }
            }
        }
        throw Error(ErrorCode::UndeclaredAtom, "undeclared field " + std::string(name));
    }
};

std::string atom_text(const Atom& a, const SymbolTable& names) {
    if (!a.is_function()) return names.atom_name(a);
    std::string s = a.call->name() + "(";
    const auto& args = a.call->args();
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i > 0) s += ", ";
        s += to_string(args[i], names);
    }
    return s + ")";
}

class Parser {
public:
    Parser(std::string_view text, const SymbolTable& names) : text_(text), names_(names) {}

    Expression parse() {
        Expression e = expr();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, 1, static_cast<int>(pos_) + 1);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char ch) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char ch) {
        if (!accept(ch)) fail(std::string("expected '") + ch + "'");
    }

    Expression expr() {
        Expression e = term();
        for (;;) {
            if (accept('+')) {
                e = e + term();
            } else if (accept('-')) {
                e = e - term();
            } else {
                return e;
            }
        }
    }

    Expression term() {
        Expression e = unary();
        for (;;) {
            if (accept('*')) {
                e = e * unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Expression d = unary();
                if (d.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                e = e / d;
            } else {
                return e;
            }
        }
    }

    Expression unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Expression power() {
        Expression base = primary();
        if (accept('^')) {
            Expression exponent = unary();
            long long n = 0;
            if (exponent.is_constant() && exponent.constant_term().to_int(n)) return pow(base, n);
            return pow(base, exponent);
        }
        return base;
    }

    Expression primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            Expression e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') return identifier();
        fail("unexpected '" + std::string(1, ch) + "'");
    }

    Expression number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        std::string_view lit = text_.substr(start, pos_ - start);
        if (lit == ".") {
            pos_ = start;
            fail("malformed number");
        }
        return Expression(Rational::parse(lit));
    }

    Expression identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            std::vector<Expression> args;
            if (!accept(')')) {
                do {
                    args.push_back(expr());
                } while (accept(','));
                expect(')');
            }
            const FunctionRule* rule = find_function(name);
            if (rule == nullptr) {
                pos_ = start;
                fail("unknown function '" + name + "'");
            }
            if (static_cast<int>(args.size()) != rule->arity) {
                pos_ = start;
                fail("function '" + name + "' expects " + std::to_string(rule->arity) + " argument(s)");
            }
            try {
                return call_function(name, std::move(args));
            } catch (const Error& e) {
                pos_ = start;
                fail(e.what());
            }
        }
        std::string bracket;
        bool has_bracket = false;
        if (pos_ < text_.size() && text_[pos_] == '[') {
            std::size_t close = text_.find(']', pos_);
            if (close == std::string_view::npos) fail("unterminated '['");
            bracket = std::string(text_.substr(pos_ + 1, close - pos_ - 1));
            has_bracket = true;
            pos_ = close + 1;
        }
        return Expression(names_.resolve(name, has_bracket ? &bracket : nullptr));
    }

    std::string_view text_;
    const SymbolTable& names_;
    std::size_t pos_ = 0;
};

}  // namespace

const SymbolTable& default_symbols() {
    static const DefaultSymbols table;
    return table;
}

std::string multi_index_digits(const MultiIndex& m) {
    bool small = m.max_index() < 10;
    std::string s;
    for (int i = 0; i < m.order(); ++i) {
        if (!small && i > 0) s += ",";
        s += std::to_string(m[i]);
    }
    return s;
}

MultiIndex parse_multi_index_digits(std::string_view text) {
    std::string t = trim(text);
    std::vector<int> idx;
    if (t.find(',') != std::string::npos) {
        std::size_t start = 0;
        while (start <= t.size()) {
            std::size_t comma = t.find(',', start);
            if (comma == std::string::npos) comma = t.size();
            std::string part = trim(std::string_view(t).substr(start, comma - start));
            if (!all_digits(part)) throw Error(ErrorCode::ParseError, "malformed multi-index '" + t + "'");
            idx.push_back(std::stoi(part));
            start = comma + 1;
        }
    } else {
        for (char ch : t) {
            if (std::isspace(static_cast<unsigned char>(ch))) continue;
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw Error(ErrorCode::ParseError, "malformed multi-index '" + t + "'");
            idx.push_back(ch - '0');
        }
    }
    return MultiIndex(idx);
}

std::string to_string(const Rational& r) { return r.str(); }

std::string to_string(const Expression& e, const SymbolTable& names) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : e.terms()) {
        bool negative = t.coef.sign() < 0;
        Rational mag = t.coef.abs();
        std::string body;
        if (t.mono.empty()) {
            body = mag.str();
        } else {
            if (!mag.is_one()) body = mag.str() + "*";
            for (std::size_t i = 0; i < t.mono.size(); ++i) {
                if (i > 0) body += "*";
                body += atom_text(t.mono[i].atom, names);
                int k = t.mono[i].exp;
                if (k < 0) {
                    body += "^(" + std::to_string(k) + ")";
                } else if (k != 1) {
                    body += "^" + std::to_string(k);
                }
            }
        }
        if (first) {
            out = (negative ? "-" : "") + body;
            first = false;
        } else {
            out += (negative ? " - " : " + ") + body;
        }
    }
    return out;
}

Expression parse_expression(std::string_view text, const SymbolTable& names) {
    return Parser(text, names).parse();
}

}  // namespace jetvar
