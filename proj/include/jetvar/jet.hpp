#pragma once

#include <map>
#include <utility>
#include <vector>

#include "jetvar/expression.hpp"
#include "jetvar/jet_model.hpp"

namespace jetvar {

// d_λ e = ∂_λ e + Σ y^A_{λ+Λ} ∂e/∂y^A_Λ over the jet atoms present in e.
Expression total_derivative(const JetModel& model, const Expression& e, int lambda);
// d_Λ = d_{λ_k} ∘ ... ∘ d_{λ_1}.
Expression total_derivative(const JetModel& model, const Expression& e, const MultiIndex& index);

// Generalized vector field υ^λ ∂_λ + υ^A ∂_A with jet-dependent coefficients,
// extended to jets by the contact prolongation formula. Components computed
// explicitly (for example by a truncated bracket) override the formula.
class ContactDerivation {
public:
    ContactDerivation() = default;
    explicit ContactDerivation(const JetModel& model, bool odd = false);

    bool odd() const { return odd_; }
    int base_dim() const { return static_cast<int>(base_.size()); }
    int field_count() const { return static_cast<int>(field_.size()); }

    Expression& base(int lambda) { return base_.at(lambda); }
    const Expression& base(int lambda) const { return base_.at(lambda); }
    Expression& field(int slot) { return field_.at(slot); }
    const Expression& field(int slot) const { return field_.at(slot); }

    void set_jet(int slot, const MultiIndex& jet, Expression value);
    const Expression* find_jet(int slot, const MultiIndex& jet) const;
    // Highest order for which explicit jet components are stored.
    int prolonged_order() const { return order_; }
    const std::map<std::pair<int, MultiIndex>, Expression>& explicit_jets() const { return jets_; }

    bool is_zero() const;
    // Base components depend on base coordinates and parameters only.
    bool is_projectable() const;

    ContactDerivation scaled(const Rational& c) const;
    friend ContactDerivation operator+(const ContactDerivation& a, const ContactDerivation& b);

private:
    bool odd_ = false;
    std::vector<Expression> base_;
    std::vector<Expression> field_;
    std::map<std::pair<int, MultiIndex>, Expression> jets_;
    int order_ = 0;
};

// Throws ParityMismatch if a component has the wrong Grassmann parity.
void check_parity(const JetModel& model, const ContactDerivation& v);

// υ_V^A = υ^A − υ^μ y^A_μ.
Expression vertical_component(const JetModel& model, const ContactDerivation& v, int slot);
// υ^A_Λ: stored value or d_Λ(υ_V^A) + υ^μ y^A_{μ+Λ}.
Expression jet_component(const JetModel& model, const ContactDerivation& v, int slot, const MultiIndex& jet);
// υ(f) = Σ υ^z ∂_z f over all coordinates z of f (coefficients on the left).
Expression apply(const JetModel& model, const ContactDerivation& v, const Expression& f);

// J^k u for a projectable vector field with order-0 coefficients.
ContactDerivation prolong_vector_field(const JetModel& model, const ContactDerivation& u, int k);
// Explicit jet components up to order k for any contact derivation.
ContactDerivation prolong_contact_derivation(const JetModel& model, const ContactDerivation& v, int k);

// Graded commutator [U,V]^z = U(V^z) − (−1)^{[U][V]} V(U^z), evaluated on base,
// field and jet coordinates up to order k; the result stores those jets.
ContactDerivation bracket(const JetModel& model, const ContactDerivation& u, const ContactDerivation& v, int k);

// Difference of all components (base, fields, jets up to order k).
bool same_up_to_order(const JetModel& model, const ContactDerivation& a, const ContactDerivation& b, int k);

}  // namespace jetvar
