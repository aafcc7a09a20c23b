#pragma once

#include <map>
#include <string>
#include <vector>

#include "jetvar/connections.hpp"
#include "jetvar/jet.hpp"
#include "jetvar/variational.hpp"

namespace jetvar {

// Expressions addressed by multi-index.
using IndexedTuple = std::map<MultiIndex, Expression>;

// η(f)^Λ = Σ_Σ (−1)^{|Σ+Λ|} N(Σ,Λ) d_Σ f^{Σ+Λ}, where N(Σ,Λ) = Π_i C(m_i(Σ+Λ), m_i(Λ))
// counts the ways Λ sits inside the multiset Σ+Λ. Zero entries are dropped.
IndexedTuple eta(const JetModel& model, const IndexedTuple& f);

// Σ(−1)^{|Λ|}d_Λ(f^Λφ) − Ση(f)^Λd_Λφ.
Expression integration_by_parts_residual(const JetModel& model, const IndexedTuple& f, const Expression& phi);

// Model with gauge parameters appended as fields of one parity. Atoms of the
// original model keep their identity; odd slots shift when even parameters are added.
struct GaugeModel {
    JetModel model;
    std::vector<int> param_slots;
};
GaugeModel add_gauge_parameters(const JetModel& model, const std::vector<std::string>& names, bool odd);

// One coefficient u^{λΛ}_a (on_base, target λ) or u^{iΛ}_a (target slot i).
struct GaugeTerm {
    bool on_base = false;
    int target = 0;
    int param = 0;  // index into param_slots
    MultiIndex jet;
    Expression coefficient;
};

struct GaugeSymmetrySpec {
    std::vector<int> param_slots;
    std::vector<GaugeTerm> terms;
};

// u = (Σu^{λΛ}_aχ^a_Λ)∂_λ + (Σu^{iΛ}_aχ^a_Λ)∂_i, odd when the parameters are odd.
// UndeclaredParameter for bad parameter references, NotProjectable when a
// base coefficient depends on jets.
ContactDerivation build_gauge_symmetry(const JetModel& model, const GaugeSymmetrySpec& spec);

// Per parameter a: Σ_i Σ_Λ η(g_{ia})^Λ d_Λ E_i with g^Λ_{ia} = ∂u_V^i/∂χ^a_Λ.
// L must not depend on the parameters.
std::vector<Expression> noether_identity_residual(const JetModel& model, const GaugeSymmetrySpec& spec,
                                                  const Lagrangian& L);

// Classification of the gauge symmetry as in check_symmetry.
SymmetryKind gauge_invariance_check(const JetModel& model, const GaugeSymmetrySpec& spec, const Lagrangian& L);

struct NITerm {
    int target = 0;  // field slot A
    MultiIndex jet;
    Expression coefficient;
};
using NIGenerator = std::vector<NITerm>;

// Σ Δ^{A,Λ}_r d_ΛE_A per generator r.
std::vector<Expression> verify_complete_ni(const JetModel& model, const std::vector<NIGenerator>& generators,
                                           const Lagrangian& L);

// Gauge theory fixtures on gauge_field_model (optionally enlarged by parameters).
// −¼ Σ F^r_{λμ}F^r_{λμ} plus ½ mass² Σ a^r_μ a^r_μ.
Expression yang_mills_density(const JetModel& gauge, const GaugeAlgebra& algebra,
                              const Rational& mass_squared = Rational(0));
// u^{r,(μ)}_r = 1 and u^{r,()}_q = c^r_{pq}a^p_μ on the target a^r_μ.
GaugeSymmetrySpec yang_mills_gauge_spec(const JetModel& gauge, const GaugeAlgebra& algebra,
                                        const std::vector<int>& param_slots);
// Covariant divergence identities: generator r has Δ^{a^r_μ,(μ)} = 1 and
// Δ^{a^s_μ,()} = c^s_{rp}a^p_μ.
std::vector<NIGenerator> yang_mills_ni_generators(const JetModel& gauge, const GaugeAlgebra& algebra);

}  // namespace jetvar
