#pragma once

#include <string>
#include <vector>

#include "jetvar/forms.hpp"
#include "jetvar/jet.hpp"
#include "jetvar/jet_model.hpp"

namespace jetvar {

// Density L of the horizontal form L ω. Must be even.
struct Lagrangian {
    Expression density;
    int order = 0;
};

// Validates atoms and parity (ParityMismatch for odd or mixed densities).
Lagrangian make_lagrangian(const JetModel& model, const Expression& density);

// E_A = Σ_Λ (−1)^{|Λ|} d_Λ(∂^Λ_A L), one entry per field slot.
std::vector<Expression> euler_lagrange(const JetModel& model, const Lagrangian& L);
bool is_variationally_trivial(const JetModel& model, const Lagrangian& L);

struct LepageForm {
    std::vector<std::vector<Expression>> first;                // F^λ_A, [slot][λ]
    std::vector<std::vector<std::vector<Expression>>> second;  // F^{λν}_A, [slot][λ][ν]
    DifferentialForm form;                                     // Ξ_L
};

// Ξ_L = Lω + θ^A∧F^λ_A ω_λ + θ^A_ν∧F^{λν}_A ω_λ with F^{λν}_A the symmetric
// derivative of L by y^A_{λν} and F^λ_A = ∂^λ_A L − d_μF^{μλ}_A.
// OrderTooHigh for order > 2.
LepageForm lepage(const JetModel& model, const Lagrangian& L);

// Density of L_ϑ(Lω): ϑ(L) + L d_λυ^λ.
Expression lie_derivative_lagrangian(const JetModel& model, const ContactDerivation& v, const Lagrangian& L);
// Same quantity as h₀ of the Lie derivative of Lω in the forms calculus.
Expression lie_derivative_lagrangian_forms(const JetModel& model, const ContactDerivation& v, const Lagrangian& L);

// Vertical derivation with components υ_V^A.
ContactDerivation vertical_part(const JetModel& model, const ContactDerivation& v);
// δL = θ^A ∧ E_A ω.
DifferentialForm euler_lagrange_form(const JetModel& model, const Lagrangian& L);

// L_ϑL − υ_V⌋δL − d_H(h₀(ϑ⌋Ξ_L)) as a density. OrderTooHigh for order > 2.
Expression first_variational_residual(const JetModel& model, const ContactDerivation& v, const Lagrangian& L);

enum class SymmetryKind { Exact, Variational, None };
const char* symmetry_kind_name(SymmetryKind k);

// NotProjectable when base components depend on jets; otherwise exact if the
// Lie derivative vanishes, variational if its EL vanishes, none otherwise.
SymmetryKind check_symmetry(const JetModel& model, const ContactDerivation& v, const Lagrangian& L);

// J^μ with J = h₀(ϑ⌋Ξ_L) = J^μ ω_μ, so that d_μJ^μ + υ_V^A E_A = L_ϑL.
std::vector<Expression> noether_current(const JetModel& model, const ContactDerivation& v, const Lagrangian& L);
// d_μJ^μ + υ_V^A E_A. It equals L_ϑL, so it vanishes for exact symmetries.
Expression conservation_residual(const JetModel& model, const ContactDerivation& v, const Lagrangian& L);

}  // namespace jetvar
