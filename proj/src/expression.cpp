#include "jetvar/expression.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <set>

#include "jetvar/error.hpp"

namespace jetvar {

const char* parity_name(Parity p) {
    switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Mixed: return "mixed";
    }
    return "?";
}

std::size_t max_terms() {
    static const std::size_t cap = [] {
        const char* env = std::getenv("JETVAR_MAX_TERMS");
        if (env != nullptr) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(1000000);
    }();
    return cap;
}

// ---------------------------------------------------------------- atoms

Atom Atom::base(int lambda) {
    Atom a;
    a.kind = AtomKind::Base;
    a.index = static_cast<std::uint16_t>(lambda);
    return a;
}

Atom Atom::even_jet(int field, const MultiIndex& jet) {
    Atom a;
    a.kind = AtomKind::EvenJet;
    a.index = static_cast<std::uint16_t>(field);
    a.jet = jet;
    return a;
}

Atom Atom::odd_jet(int field, const MultiIndex& jet) {
    Atom a = even_jet(field, jet);
    a.kind = AtomKind::OddJet;
    return a;
}

Atom Atom::jet_of(bool odd, int field, const MultiIndex& jet) {
    return odd ? odd_jet(field, jet) : even_jet(field, jet);
}

Atom Atom::parameter(int index) {
    Atom a;
    a.kind = AtomKind::Parameter;
    a.index = static_cast<std::uint16_t>(index);
    return a;
}

Atom Atom::with_jet(const MultiIndex& j) const {
    Atom a = *this;
    a.jet = j;
    return a;
}

int compare(const Atom& a, const Atom& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    if (a.kind == AtomKind::Function) {
        if (a.call == b.call) return 0;
        int c = a.call->name().compare(b.call->name());
        if (c != 0) return c < 0 ? -1 : 1;
        const auto& xa = a.call->args();
        const auto& xb = b.call->args();
        if (xa.size() != xb.size()) return xa.size() < xb.size() ? -1 : 1;
        for (std::size_t i = 0; i < xa.size(); ++i) {
            int ci = compare(xa[i], xb[i]);
            if (ci != 0) return ci;
        }
        return 0;
    }
    if (a.index != b.index) return a.index < b.index ? -1 : 1;
    if (a.jet != b.jet) return a.jet < b.jet ? -1 : 1;
    return 0;
}

int compare(const Monomial& a, const Monomial& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare(a[i].atom, b[i].atom);
        if (c != 0) return c;
        if (a[i].exp != b[i].exp) return a[i].exp < b[i].exp ? -1 : 1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

int monomial_parity(const Monomial& m) {
    int p = 0;
    for (auto it = m.rbegin(); it != m.rend() && it->atom.is_odd(); ++it) p ^= 1;
    return p;
}

int multiply_monomials(const Monomial& a, const Monomial& b, Monomial& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    const std::size_t na = a.size(), nb = b.size();
    while (i < na && j < nb && !a[i].atom.is_odd() && !b[j].atom.is_odd()) {
        int c = compare(a[i].atom, b[j].atom);
        if (c < 0) {
            out.push_back(a[i++]);
        } else if (c > 0) {
            out.push_back(b[j++]);
        } else {
            int e = a[i].exp + b[j].exp;
            if (e != 0) out.push_back(Factor{a[i].atom, e});
            ++i;
            ++j;
        }
    }
    while (i < na && !a[i].atom.is_odd()) out.push_back(a[i++]);
    while (j < nb && !b[j].atom.is_odd()) out.push_back(b[j++]);
    long long inversions = 0;
    while (i < na && j < nb) {
        int c = compare(a[i].atom, b[j].atom);
        if (c == 0) return 0;
        if (c < 0) {
            out.push_back(a[i++]);
        } else {
            inversions += static_cast<long long>(na - i);
            out.push_back(b[j++]);
        }
    }
    while (i < na) out.push_back(a[i++]);
    while (j < nb) out.push_back(b[j++]);
    return (inversions & 1) ? -1 : 1;
}

// ---------------------------------------------------------- expressions

Expression::Expression(const Rational& c) {
    if (!c.is_zero()) terms_.push_back(Term{{}, c});
}

Expression::Expression(const Atom& a, int exp) {
    if (a.is_odd() && exp > 1) return;
    if (a.is_odd() && exp < 1)
        throw Error(ErrorCode::DivisionByZero, "odd coordinates are not invertible");
    if (exp == 0) {
        terms_.push_back(Term{{}, Rational(1)});
        return;
    }
    terms_.push_back(Term{{Factor{a, exp}}, Rational(1)});
}

Expression Expression::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return compare(x.mono, y.mono) < 0; });
    Expression r;
    r.terms_.reserve(terms.size());
    for (auto& t : terms) {
        if (!r.terms_.empty() && compare(r.terms_.back().mono, t.mono) == 0) {
            r.terms_.back().coef += t.coef;
            if (r.terms_.back().coef.is_zero()) r.terms_.pop_back();
        } else if (!t.coef.is_zero()) {
            r.terms_.push_back(std::move(t));
        }
    }
    if (r.terms_.size() > max_terms())
        throw Error(ErrorCode::TermLimitExceeded,
                    "expression exceeds " + std::to_string(max_terms()) + " terms");
    return r;
}

Expression Expression::from_monomial(Monomial m, const Rational& c) {
    Expression r;
    if (!c.is_zero()) r.terms_.push_back(Term{std::move(m), c});
    return r;
}

bool Expression::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty());
}

Rational Expression::constant_term() const {
    if (!terms_.empty() && terms_[0].mono.empty()) return terms_[0].coef;
    return Rational(0);
}

Parity Expression::parity() const {
    bool even = false, odd = false;
    for (const auto& t : terms_) (monomial_parity(t.mono) ? odd : even) = true;
    if (even && odd) return Parity::Mixed;
    return odd ? Parity::Odd : Parity::Even;
}

int Expression::max_order() const {
    int best = -1;
    for_each_atom(*this, [&](const Atom& a) {
        if (a.is_jet()) best = std::max(best, a.jet.order());
    });
    return best;
}

Expression Expression::operator-() const {
    Expression r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

Expression Expression::scaled(const Rational& c) const {
    if (c.is_zero()) return {};
    Expression r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
}

Expression operator+(const Expression& a, const Expression& b) {
    if (a.terms_.empty()) return b;
    if (b.terms_.empty()) return a;
    Expression r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
        int c = compare(a.terms_[i].mono, b.terms_[j].mono);
        if (c < 0) {
            r.terms_.push_back(a.terms_[i++]);
        } else if (c > 0) {
            r.terms_.push_back(b.terms_[j++]);
        } else {
            Rational s = a.terms_[i].coef + b.terms_[j].coef;
            if (!s.is_zero()) r.terms_.push_back(Term{a.terms_[i].mono, s});
            ++i;
            ++j;
        }
    }
    while (i < a.terms_.size()) r.terms_.push_back(a.terms_[i++]);
    while (j < b.terms_.size()) r.terms_.push_back(b.terms_[j++]);
    if (r.terms_.size() > max_terms())
        throw Error(ErrorCode::TermLimitExceeded,
                    "expression exceeds " + std::to_string(max_terms()) + " terms");
    return r;
}

Expression operator-(const Expression& a, const Expression& b) { return a + (-b); }

Expression operator*(const Expression& a, const Expression& b) {
    if (a.terms_.empty() || b.terms_.empty()) return {};
    if (a.is_constant()) return b.scaled(a.terms_[0].coef);
    if (b.is_constant()) return a.scaled(b.terms_[0].coef);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    Monomial m;
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            int s = multiply_monomials(ta.mono, tb.mono, m);
            if (s == 0) continue;
            Rational c = ta.coef * tb.coef;
            out.push_back(Term{m, s > 0 ? c : -c});
        }
    }
    return Expression::from_terms(std::move(out));
}

Expression operator/(const Expression& a, const Expression& b) { return a * inverse(b); }

bool operator==(const Expression& a, const Expression& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (!(a.terms_[i].coef == b.terms_[i].coef)) return false;
        if (compare(a.terms_[i].mono, b.terms_[i].mono) != 0) return false;
    }
    return true;
}

int compare(const Expression& a, const Expression& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::size_t n = std::min(ta.size(), tb.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare(ta[i].mono, tb[i].mono);
        if (c != 0) return c;
        auto o = ta[i].coef <=> tb[i].coef;
        if (o != 0) return o < 0 ? -1 : 1;
    }
    if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
    return 0;
}

Expression normalize(const Expression& e) { return Expression::from_terms(e.terms()); }

Expression pow(const Expression& base, long long n) {
    if (n == 0) return Expression(1);
    if (n < 0) return pow(inverse(base), -n);
    if (base.size() == 1) {
        const Term& t = base.terms()[0];
        if (n > 1 && monomial_parity(t.mono) != 0) return {};
        Monomial m = t.mono;
        for (auto& f : m) {
            if (f.atom.is_odd()) {
                if (n > 1) return {};
            } else {
                f.exp = static_cast<int>(f.exp * n);
            }
        }
        Rational c = 1;
        for (long long i = 0; i < n; ++i) c *= t.coef;
        return Expression::from_monomial(std::move(m), c);
    }
    Expression result(1), sq = base;
    while (n > 0) {
        if (n & 1) result = result * sq;
        n >>= 1;
        if (n > 0) sq = sq * sq;
    }
    return result;
}

namespace {

const Expression* reciprocal_base(const Atom& a) {
    if (!a.is_function() || a.call->name() != "pow") return nullptr;
    const auto& args = a.call->args();
    if (args.size() != 2 || !(args[1] == Expression(-1))) return nullptr;
    return &args[0];
}

}  // namespace

Expression clear_denominators(const Expression& e) {
    std::map<Atom, int> depth;
    for (const auto& t : e.terms())
        for (const auto& f : t.mono)
            if (f.exp > 0 && reciprocal_base(f.atom)) depth[f.atom] = std::max(depth[f.atom], f.exp);
    if (depth.empty()) return e;
    Expression out;
    for (const auto& t : e.terms()) {
        Expression scale(t.coef);
        Monomial rest;
        std::map<Atom, int> used;
        for (const auto& f : t.mono) {
            if (f.exp > 0 && depth.count(f.atom)) {
                used[f.atom] = f.exp;
            } else {
                rest.push_back(f);
            }
        }
        for (const auto& [atom, d] : depth) scale *= pow(*reciprocal_base(atom), d - used[atom]);
        out += scale * Expression::from_monomial(std::move(rest));
    }
    return out;
}

Expression inverse(const Expression& e) {
    if (e.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
    if (e.is_constant()) return Expression(e.constant_term().inverse());
    if (e.size() == 1) {
        const Term& t = e.terms()[0];
        if (monomial_parity(t.mono) != 0 || (!t.mono.empty() && t.mono.back().atom.is_odd()))
            throw Error(ErrorCode::DivisionByZero, "monomials with odd coordinates are not invertible");
        Monomial m = t.mono;
        for (auto& f : m) f.exp = -f.exp;
        return Expression::from_monomial(std::move(m), t.coef.inverse());
    }
    // Extract the common even monomial factor and the leading coefficient so
    // that the remaining primitive part has a canonical form.
    Monomial common;
    const Monomial& first = e.terms()[0].mono;
    for (const auto& f : first) {
        if (f.atom.is_odd()) continue;
        int lo = f.exp;
        bool everywhere = true;
        for (const auto& t : e.terms()) {
            auto it = std::find_if(t.mono.begin(), t.mono.end(),
                                   [&](const Factor& g) { return g.atom == f.atom; });
            if (it == t.mono.end()) {
                everywhere = false;
                break;
            }
            lo = std::min(lo, it->exp);
        }
        if (everywhere) common.push_back(Factor{f.atom, lo});
    }
    Expression rest = e;
    Expression common_expr = Expression::from_monomial(common);
    if (!common.empty()) rest = e * inverse(common_expr);
    Rational lead = rest.terms()[0].coef;
    rest = rest.scaled(lead.inverse());
    if (rest.parity() != Parity::Even)
        throw Error(ErrorCode::ParityMismatch, "cannot invert an expression of odd or mixed parity");
    Expression result = function_atom("pow", {rest, Expression(-1)});
    if (!common.empty()) result = result * inverse(common_expr);
    return result.scaled(lead.inverse());
}

// ------------------------------------------------------------ functions

namespace {

struct Registry {
    std::mutex mutex;
    std::map<std::string, std::unique_ptr<FunctionRule>, std::less<>> rules;
};

bool constant_equals(const Expression& e, long long v) {
    return e.is_constant() && e.constant_term() == Rational(v);
}

void add_builtins(Registry& reg) {
    auto add = [&](FunctionRule r) {
        std::string name = r.name;
        reg.rules[name] = std::make_unique<FunctionRule>(std::move(r));
    };
    add({"sin", 1,
         [](std::span<const Expression> a) {
             return constant_equals(a[0], 0) ? Expression() : function_atom("sin", {a[0]});
         },
         [](std::span<const Expression> a) { return std::vector<Expression>{cos(a[0])}; },
         [](std::span<const double> a) { return std::sin(a[0]); }});
    add({"cos", 1,
         [](std::span<const Expression> a) {
             return constant_equals(a[0], 0) ? Expression(1) : function_atom("cos", {a[0]});
         },
         [](std::span<const Expression> a) { return std::vector<Expression>{-sin(a[0])}; },
         [](std::span<const double> a) { return std::cos(a[0]); }});
    add({"exp", 1,
         [](std::span<const Expression> a) {
             return constant_equals(a[0], 0) ? Expression(1) : function_atom("exp", {a[0]});
         },
         [](std::span<const Expression> a) { return std::vector<Expression>{exp(a[0])}; },
         [](std::span<const double> a) { return std::exp(a[0]); }});
    add({"ln", 1,
         [](std::span<const Expression> a) {
             return constant_equals(a[0], 1) ? Expression() : function_atom("ln", {a[0]});
         },
         [](std::span<const Expression> a) { return std::vector<Expression>{inverse(a[0])}; },
         [](std::span<const double> a) { return std::log(a[0]); }});
    add({"pow", 2,
         [](std::span<const Expression> a) {
             const Expression& b = a[0];
             const Expression& x = a[1];
             long long n = 0;
             if (x.is_constant() && x.constant_term().to_int(n)) return pow(b, n);
             if (b.is_constant() && b.constant_term().is_one()) return Expression(1);
             return function_atom("pow", {b, x});
         },
         [](std::span<const Expression> a) {
             const Expression& b = a[0];
             const Expression& x = a[1];
             Expression self = pow(b, x);
             return std::vector<Expression>{x * pow(b, x - Expression(1)), ln(b) * self};
         },
         [](std::span<const double> a) { return std::pow(a[0], a[1]); }});
}

Registry& registry() {
    static Registry* reg = [] {
        auto* r = new Registry;
        add_builtins(*r);
        return r;
    }();
    return *reg;
}

}  // namespace

void register_function(FunctionRule rule) {
    Registry& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mutex);
    std::string name = rule.name;
    reg.rules[name] = std::make_unique<FunctionRule>(std::move(rule));
}

const FunctionRule* find_function(std::string_view name) {
    Registry& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mutex);
    auto it = reg.rules.find(name);
    return it == reg.rules.end() ? nullptr : it->second.get();
}

Expression function_atom(std::string_view name, std::vector<Expression> args) {
    const FunctionRule* rule = find_function(name);
    if (rule == nullptr) throw Error(ErrorCode::NotDifferentiable, "unknown function " + std::string(name));
    for (const auto& a : args)
        if (a.parity() != Parity::Even)
            throw Error(ErrorCode::ParityMismatch, "function arguments must have even parity");
    Atom atom;
    atom.kind = AtomKind::Function;
    atom.call = std::make_shared<const FunctionCall>(rule, std::move(args));
    return Expression(atom);
}

Expression call_function(std::string_view name, std::vector<Expression> args) {
    const FunctionRule* rule = find_function(name);
    if (rule == nullptr) throw Error(ErrorCode::NotDifferentiable, "unknown function " + std::string(name));
    if (static_cast<int>(args.size()) != rule->arity)
        throw Error(ErrorCode::ValidationError,
                    "function " + rule->name + " expects " + std::to_string(rule->arity) + " argument(s)");
    for (const auto& a : args)
        if (a.parity() != Parity::Even)
            throw Error(ErrorCode::ParityMismatch, "function arguments must have even parity");
    return rule->make(args);
}

Expression sin(const Expression& e) { return call_function("sin", {e}); }
Expression cos(const Expression& e) { return call_function("cos", {e}); }
Expression exp(const Expression& e) { return call_function("exp", {e}); }
Expression ln(const Expression& e) { return call_function("ln", {e}); }
Expression pow(const Expression& base, const Expression& exponent) {
    return call_function("pow", {base, exponent});
}

// ------------------------------------------------------------- queries

Parity grassmann_parity(const Expression& e) { return e.parity(); }

void for_each_atom(const Expression& e, const std::function<void(const Atom&)>& f) {
    for (const auto& t : e.terms()) {
        for (const auto& fac : t.mono) {
            f(fac.atom);
            if (fac.atom.is_function())
                for (const auto& arg : fac.atom.call->args()) for_each_atom(arg, f);
        }
    }
}

std::vector<Atom> coordinate_atoms(const Expression& e) {
    std::set<Atom> seen;
    for_each_atom(e, [&](const Atom& a) {
        if (!a.is_function()) seen.insert(a);
    });
    return {seen.begin(), seen.end()};
}

// -------------------------------------------------------- substitution

Expression substitute(const Expression& e, const AtomMap& bindings) {
    for (const auto& [atom, value] : bindings) {
        Parity p = value.parity();
        bool ok = value.is_zero() || (atom.is_odd() ? p == Parity::Odd : p == Parity::Even);
        if (!ok) throw Error(ErrorCode::ParityMismatch, "substitution changes the parity of a coordinate");
    }
    if (bindings.empty()) return e;
    Expression result;
    for (const auto& t : e.terms()) {
        Expression acc(t.coef);
        for (const auto& f : t.mono) {
            Expression value;
            auto it = bindings.find(f.atom);
            if (it != bindings.end()) {
                value = it->second;
            } else if (f.atom.is_function()) {
                std::vector<Expression> args;
                for (const auto& a : f.atom.call->args()) args.push_back(substitute(a, bindings));
                value = call_function(f.atom.call->name(), std::move(args));
            } else {
                value = Expression(f.atom);
            }
            acc = acc * (f.exp == 1 ? value : pow(value, f.exp));
            if (acc.is_zero()) break;
        }
        result += acc;
    }
    return result;
}

double evaluate(const Expression& e, const NumericPoint& point) {
    double sum = 0.0;
    for (const auto& t : e.terms()) {
        double prod = t.coef.to_double();
        for (const auto& f : t.mono) {
            double v = 0.0;
            if (f.atom.is_odd()) {
                throw Error(ErrorCode::OddAtomPresent, "cannot evaluate an expression with odd coordinates");
            } else if (f.atom.is_function()) {
                std::vector<double> args;
                for (const auto& a : f.atom.call->args()) args.push_back(evaluate(a, point));
                v = f.atom.call->rule().eval(args);
            } else {
                auto it = point.find(f.atom);
                if (it == point.end()) throw Error(ErrorCode::UnboundAtom, "unbound coordinate in evaluation");
                v = it->second;
            }
            prod *= (f.exp == 1 ? v : std::pow(v, f.exp));
        }
        sum += prod;
    }
    return sum;
}

// --------------------------------------------------------- derivations

Expression apply_derivation(const Expression& e, const AtomImage& image, bool odd) {
    std::map<Atom, Expression> cache;
    auto image_of = [&](const Atom& a) -> const Expression& {
        auto it = cache.find(a);
        if (it != cache.end()) return it->second;
        Expression value;
        if (a.is_function()) {
            const auto& args = a.call->args();
            std::vector<Expression> darg;
            bool any = false;
            for (const auto& arg : args) {
                darg.push_back(apply_derivation(arg, image, odd));
                any = any || !darg.back().is_zero();
            }
            if (any) {
                auto partials = a.call->rule().partials(args);
                for (std::size_t k = 0; k < args.size(); ++k)
                    if (!darg[k].is_zero()) value += partials[k] * darg[k];
            }
        } else {
            value = image(a);
        }
        return cache.emplace(a, std::move(value)).first->second;
    };

    std::vector<Term> out;
    Monomial left, right, tmp, prod;
    for (const auto& t : e.terms()) {
        const Monomial& m = t.mono;
        std::size_t odd_start = m.size();
        while (odd_start > 0 && m[odd_start - 1].atom.is_odd()) --odd_start;
        for (std::size_t i = 0; i < m.size(); ++i) {
            const Expression& d = image_of(m[i].atom);
            if (d.is_zero()) continue;
            left.clear();
            right.clear();
            Rational coef = t.coef;
            if (i < odd_start) {
                // even factor: exponent rule, then D(atom) placed before the odd part
                coef *= Rational(m[i].exp);
                for (std::size_t k = 0; k < odd_start; ++k) {
                    if (k == i) {
                        if (m[k].exp != 1) left.push_back(Factor{m[k].atom, m[k].exp - 1});
                    } else {
                        left.push_back(m[k]);
                    }
                }
                right.assign(m.begin() + static_cast<long>(odd_start), m.end());
            } else {
                if (odd && ((i - odd_start) & 1)) coef = -coef;
                left.assign(m.begin(), m.begin() + static_cast<long>(i));
                right.assign(m.begin() + static_cast<long>(i) + 1, m.end());
            }
            for (const auto& dt : d.terms()) {
                int s1 = multiply_monomials(left, dt.mono, tmp);
                if (s1 == 0) continue;
                int s2 = multiply_monomials(tmp, right, prod);
                if (s2 == 0) continue;
                Rational c = coef * dt.coef;
                out.push_back(Term{prod, s1 * s2 > 0 ? c : -c});
            }
        }
    }
    return Expression::from_terms(std::move(out));
}

Expression partial_derivative(const Expression& e, const Atom& a) {
    if (a.is_function())
        throw Error(ErrorCode::NotDifferentiable, "cannot differentiate with respect to a function application");
    return apply_derivation(
        e, [&](const Atom& b) { return b == a ? Expression(1) : Expression(); }, a.is_odd());
}

Expression right_partial_derivative(const Expression& e, const Atom& a) {
    Expression left = partial_derivative(e, a);
    if (!a.is_odd()) return left;
    // For homogeneous t: right derivative = (-1)^{[a]([t]+1)} left derivative.
    // The left derivative of an even term is odd and vice versa.
    std::vector<Term> terms = left.terms();
    for (auto& t : terms)
        if (monomial_parity(t.mono) == 1) t.coef = -t.coef;  // came from an even term
    return Expression::from_terms(std::move(terms));
}

}  // namespace jetvar
