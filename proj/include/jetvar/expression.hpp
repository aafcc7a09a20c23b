#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jetvar/multi_index.hpp"
#include "jetvar/rational.hpp"

namespace jetvar {

// Canonical kind order; odd jets sort last so the odd factors of a monomial
// always form its suffix.
enum class AtomKind : std::uint8_t { Base, EvenJet, Parameter, Function, OddJet };

enum class Parity { Even, Odd, Mixed };

const char* parity_name(Parity p);

class FunctionCall;

struct Atom {
    AtomKind kind = AtomKind::Base;
    std::uint16_t index = 0;  // base index, field index or parameter index
    MultiIndex jet;           // derivative address for jet atoms
    std::shared_ptr<const FunctionCall> call;

    static Atom base(int lambda);
    static Atom even_jet(int field, const MultiIndex& jet = {});
    static Atom odd_jet(int field, const MultiIndex& jet = {});
    static Atom jet_of(bool odd, int field, const MultiIndex& jet = {});
    static Atom parameter(int index);

    bool is_odd() const { return kind == AtomKind::OddJet; }
    bool is_jet() const { return kind == AtomKind::EvenJet || kind == AtomKind::OddJet; }
    bool is_function() const { return kind == AtomKind::Function; }
    // Same field and parity, different derivative address allowed.
    Atom with_jet(const MultiIndex& j) const;
};

int compare(const Atom& a, const Atom& b);
inline bool operator==(const Atom& a, const Atom& b) { return compare(a, b) == 0; }
inline bool operator<(const Atom& a, const Atom& b) { return compare(a, b) < 0; }

struct Factor {
    Atom atom;
    int exp = 1;
};

using Monomial = std::vector<Factor>;

int compare(const Monomial& a, const Monomial& b);

struct Term {
    Monomial mono;
    Rational coef;
};

// Product of two monomials in canonical order. Returns the sign picked up by
// reordering odd factors, or 0 if the product vanishes.
int multiply_monomials(const Monomial& a, const Monomial& b, Monomial& out);

// Number of odd factors in a monomial, mod 2.
int monomial_parity(const Monomial& m);

// Exact polynomial-like expression: a sorted sum of terms with nonzero
// rational coefficients over atoms. The empty sum is zero.
class Expression {
public:
    Expression() = default;
    Expression(const Rational& c);  // NOLINT(google-explicit-constructor)
    Expression(long long c) : Expression(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    Expression(int c) : Expression(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    explicit Expression(const Atom& a, int exp = 1);

    // Sorts, merges and drops zero terms.
    static Expression from_terms(std::vector<Term> terms);
    static Expression from_monomial(Monomial m, const Rational& c = 1);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Coefficient of the empty monomial.
    Rational constant_term() const;
    Parity parity() const;
    // Highest jet order among atoms, searching function arguments; -1 if none.
    int max_order() const;

    Expression operator-() const;
    friend Expression operator+(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a, const Expression& b);
    friend Expression operator*(const Expression& a, const Expression& b);
    friend Expression operator/(const Expression& a, const Expression& b);
    Expression& operator+=(const Expression& b) { return *this = *this + b; }
    Expression& operator-=(const Expression& b) { return *this = *this - b; }
    Expression& operator*=(const Expression& b) { return *this = *this * b; }
    Expression scaled(const Rational& c) const;

    friend bool operator==(const Expression& a, const Expression& b);

private:
    std::vector<Term> terms_;
};

int compare(const Expression& a, const Expression& b);

// Idempotent canonicalization of an arbitrary term list.
Expression normalize(const Expression& e);

Expression pow(const Expression& base, long long n);
// Exact for constants and single monomials without odd atoms; otherwise
// introduces a pow(primitive part, -1) atom.
Expression inverse(const Expression& e);
// Multiplies through by the powers of p needed to remove every pow(p, -1)
// atom at top level. The result is zero exactly when e is.
Expression clear_denominators(const Expression& e);

// Elementary functions. Arguments must have even parity.
Expression sin(const Expression& e);
Expression cos(const Expression& e);
Expression exp(const Expression& e);
Expression ln(const Expression& e);
Expression pow(const Expression& base, const Expression& exponent);
Expression call_function(std::string_view name, std::vector<Expression> args);

struct FunctionRule {
    std::string name;
    int arity = 1;
    // Simplifying constructor; may return a non-atomic expression.
    std::function<Expression(std::span<const Expression>)> make;
    // Partial derivatives with respect to each argument.
    std::function<std::vector<Expression>(std::span<const Expression>)> partials;
    std::function<double(std::span<const double>)> eval;
};

void register_function(FunctionRule rule);
const FunctionRule* find_function(std::string_view name);
// Raw function atom, bypassing simplification. Used by rule constructors.
Expression function_atom(std::string_view name, std::vector<Expression> args);

class FunctionCall {
public:
    FunctionCall(const FunctionRule* rule, std::vector<Expression> args)
        : rule_(rule), args_(std::move(args)) {}
    const FunctionRule& rule() const { return *rule_; }
    const std::string& name() const { return rule_->name; }
    const std::vector<Expression>& args() const { return args_; }

private:
    const FunctionRule* rule_;
    std::vector<Expression> args_;
};

Parity grassmann_parity(const Expression& e);

// Calls f on every atom, including those nested in function arguments.
void for_each_atom(const Expression& e, const std::function<void(const Atom&)>& f);
// Distinct non-function atoms, sorted canonically.
std::vector<Atom> coordinate_atoms(const Expression& e);

using AtomMap = std::map<Atom, Expression>;
using NumericPoint = std::map<Atom, double>;

Expression substitute(const Expression& e, const AtomMap& bindings);
double evaluate(const Expression& e, const NumericPoint& point);

// Image of a coordinate atom under a derivation; function atoms are handled by
// the chain rule. Return zero for atoms the derivation kills.
using AtomImage = std::function<Expression(const Atom&)>;

// Applies the derivation D determined by its values on coordinates, following
// the graded Leibniz rule: D(ab) = D(a)b + (-1)^{[D][a]} a D(b).
Expression apply_derivation(const Expression& e, const AtomImage& image, bool odd);

// Left derivative.
Expression partial_derivative(const Expression& e, const Atom& a);
// Right derivative by the parity sign conversion of the left one.
Expression right_partial_derivative(const Expression& e, const Atom& a);

// Maximum number of terms an expression may hold (JETVAR_MAX_TERMS).
std::size_t max_terms();

}  // namespace jetvar
