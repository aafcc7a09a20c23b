#pragma once

#include <string>
#include <utility>
#include <vector>

#include "jetvar/expression.hpp"
#include "jetvar/jet.hpp"
#include "jetvar/jet_model.hpp"

namespace jetvar {

// Exterior generator on a jet space: dx^λ or a contact form θ^A_Λ.
// Canonical order: dx < even-field θ < odd-field θ.
struct Generator {
    enum class Kind : std::uint8_t { Dx, EvenTheta, OddTheta };
    Kind kind = Kind::Dx;
    std::uint16_t index = 0;  // base index, or field index within its parity
    MultiIndex jet;

    static Generator dx(int lambda);
    static Generator theta(bool odd_field, int field, const MultiIndex& jet = {});
    // Odd-field contact forms are Grassmann-odd and commute with each other.
    bool is_odd() const { return kind == Kind::OddTheta; }
};

int compare(const Generator& a, const Generator& b);
inline bool operator==(const Generator& a, const Generator& b) { return compare(a, b) == 0; }

struct GeneratorPower {
    Generator gen;
    int mult = 1;  // > 1 only for odd-field θ
};

using GeneratorMonomial = std::vector<GeneratorPower>;

int compare(const GeneratorMonomial& a, const GeneratorMonomial& b);

// Sum of coefficient × generator monomial, coefficient written on the left.
// Terms of different degree may coexist; degree() requires homogeneity.
class DifferentialForm {
public:
    struct Term {
        GeneratorMonomial gens;
        Expression coef;
    };

    DifferentialForm() = default;
    DifferentialForm(const Expression& f);  // NOLINT(google-explicit-constructor)

    static DifferentialForm dx(const JetModel& model, int lambda);
    static DifferentialForm theta(const JetModel& model, int slot, const MultiIndex& jet = {});
    // dy^A_Λ = θ^A_Λ + y^A_{λ+Λ} dx^λ.
    static DifferentialForm dy(const JetModel& model, int slot, const MultiIndex& jet = {});
    static DifferentialForm from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_homogeneous() const;
    // Common degree of all terms; -1 for zero. Throws if inhomogeneous.
    int degree() const;
    DifferentialForm component(int degree) const;
    Parity parity() const;
    // Coefficient of an exact generator monomial.
    Expression coefficient(const GeneratorMonomial& gens) const;

    DifferentialForm operator-() const;
    friend DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b);
    friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b);
    DifferentialForm& operator+=(const DifferentialForm& b) { return *this = *this + b; }
    DifferentialForm& operator-=(const DifferentialForm& b) { return *this = *this - b; }
    DifferentialForm scaled(const Rational& c) const;
    friend bool operator==(const DifferentialForm& a, const DifferentialForm& b);

    const JetModel* model() const { return model_; }
    void attach(const JetModel* model) { model_ = model; }

private:
    std::vector<Term> terms_;
    const JetModel* model_ = nullptr;
};

int degree(const GeneratorMonomial& gens);
int parity(const GeneratorMonomial& gens);

// c ∧ φ for a 0-form c.
DifferentialForm multiply_left(const Expression& c, const DifferentialForm& phi);
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

DifferentialForm exterior_d(const JetModel& model, const DifferentialForm& phi);
// d_H φ = dx^λ ∧ d_λ φ, with d_λ θ_Λ = θ_{λ+Λ}.
DifferentialForm dH(const JetModel& model, const DifferentialForm& phi);
// d_V φ = θ^A_Λ ∧ ∂^Λ_A φ (acting on coefficients).
DifferentialForm dV(const JetModel& model, const DifferentialForm& phi);

// Keeps the terms built from dx generators only.
DifferentialForm horizontalize(const DifferentialForm& phi);
std::pair<DifferentialForm, DifferentialForm> contact_split(const DifferentialForm& phi);

// Graded interior product; DegreeZero for a nonzero 0-form.
DifferentialForm interior_product(const JetModel& model, const ContactDerivation& v, const DifferentialForm& phi);
// L_υ φ = υ⌋dφ + d(υ⌋φ).
DifferentialForm lie_derivative(const JetModel& model, const ContactDerivation& v, const DifferentialForm& phi);

// ω = dx^0 ∧ ... ∧ dx^{n-1} and ω_λ = ∂_λ ⌋ ω.
DifferentialForm volume_form(const JetModel& model);
DifferentialForm volume_form_lambda(const JetModel& model, int lambda);
// Components J^λ of a horizontal (n-1)-form Σ J^λ ω_λ.
std::vector<Expression> horizontal_current_components(const JetModel& model, const DifferentialForm& phi);
// Coefficient of ω in a horizontal n-form.
Expression density_of(const JetModel& model, const DifferentialForm& phi);

std::string to_string(const JetModel& model, const DifferentialForm& phi);

}  // namespace jetvar
