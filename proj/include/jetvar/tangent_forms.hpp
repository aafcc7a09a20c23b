#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "jetvar/expression.hpp"
#include "jetvar/syntax.hpp"

namespace jetvar {

// Ordered list of commuting coordinates z^0..z^{N-1} (base coordinates and
// order-0 even fields). No jet structure.
class CoordinateSet {
public:
    CoordinateSet() = default;
    explicit CoordinateSet(std::vector<Atom> atoms);

    int size() const { return static_cast<int>(atoms_.size()); }
    const Atom& atom(int k) const { return atoms_.at(k); }
    const std::vector<Atom>& atoms() const { return atoms_; }
    int index_of(const Atom& a) const;  // -1 if absent

private:
    std::vector<Atom> atoms_;
};

// Σ c_I dz^I over strictly increasing index sets I (bitmasks).
class PlainForm {
public:
    PlainForm() = default;
    PlainForm(const Expression& f);  // NOLINT(google-explicit-constructor)
    static PlainForm dz(int k);
    static PlainForm monomial(std::uint32_t mask, Expression coef);

    const std::map<std::uint32_t, Expression>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // -1 for zero; throws if inhomogeneous.
    int degree() const;
    Expression coefficient(std::uint32_t mask) const;

    PlainForm operator-() const;
    friend PlainForm operator+(const PlainForm& a, const PlainForm& b);
    friend PlainForm operator-(const PlainForm& a, const PlainForm& b);
    PlainForm& operator+=(const PlainForm& b) { return *this = *this + b; }
    PlainForm& operator-=(const PlainForm& b) { return *this = *this - b; }
    friend bool operator==(const PlainForm& a, const PlainForm& b) { return a.terms_ == b.terms_; }
    PlainForm scaled(const Expression& c) const;

private:
    void add(std::uint32_t mask, const Expression& c);
    std::map<std::uint32_t, Expression> terms_;
};

PlainForm wedge(const PlainForm& a, const PlainForm& b);
PlainForm exterior_d(const CoordinateSet& z, const PlainForm& f);
// ∂_k ⌋ f.
PlainForm contract(int k, const PlainForm& f);
// Coefficient-wise ∂/∂z^k.
PlainForm partial(const CoordinateSet& z, int k, const PlainForm& f);
std::string to_string(const CoordinateSet& z, const SymbolTable& names, const PlainForm& f);

// φ = φ^μ ⊗ ∂_μ with form components φ^μ of common degree r.
class TangentValuedForm {
public:
    TangentValuedForm() = default;
    TangentValuedForm(int size, int degree);
    static TangentValuedForm vector_field(std::vector<Expression> components);
    // θ = dz^λ ⊗ ∂_λ.
    static TangentValuedForm identity(int size);

    int size() const { return static_cast<int>(comps_.size()); }
    int degree() const { return degree_; }
    const PlainForm& operator[](int mu) const { return comps_.at(mu); }
    // Replaces a component; its degree must match.
    void set(int mu, PlainForm f);
    bool is_zero() const;

    TangentValuedForm operator-() const;
    friend TangentValuedForm operator+(const TangentValuedForm& a, const TangentValuedForm& b);
    friend TangentValuedForm operator-(const TangentValuedForm& a, const TangentValuedForm& b);
    friend bool operator==(const TangentValuedForm& a, const TangentValuedForm& b);
    TangentValuedForm scaled(const Rational& c) const;

private:
    int degree_ = 0;
    std::vector<PlainForm> comps_;
};

// [φ,σ]^μ = φ^ν∧∂_νσ^μ − ∂_νφ^μ∧σ^ν + (−1)^r (∂_ν⌋φ^μ)∧dσ^ν + (−1)^r dφ^ν∧(∂_ν⌋σ^μ).
// For vector fields this is u^ν∂_νv^μ − v^ν∂_νu^μ. DegreeOverflow if r+s > N.
TangentValuedForm fn_bracket(const CoordinateSet& z, const TangentValuedForm& phi, const TangentValuedForm& sigma);
// d_θ ψ = [θ, ψ].
TangentValuedForm nijenhuis_differential(const CoordinateSet& z, const TangentValuedForm& theta,
                                         const TangentValuedForm& psi);

std::string to_string(const CoordinateSet& z, const SymbolTable& names, const TangentValuedForm& f);

}  // namespace jetvar
