#pragma once

#include <string>
#include <vector>

#include "jetvar/expression.hpp"
#include "jetvar/jet.hpp"
#include "jetvar/jet_model.hpp"
#include "jetvar/tangent_forms.hpp"

namespace jetvar {

// Components Γ^i_λ (or σ^i_λ) indexed [field][base], functions of x and the
// order-0 even fields.
struct Connection {
    std::vector<std::vector<Expression>> comps;
    const Expression& at(int i, int lambda) const { return comps.at(i).at(lambda); }
};
using SolderingForm = Connection;

Connection zero_connection(const JetModel& model);
// Throws ValidationError for jet atoms of positive order, odd atoms or a wrong shape.
void validate_connection(const JetModel& model, const Connection& c);

// X^i_{λμ} antisymmetric in (λ, μ); stored for λ < μ.
class TwoFormComponents {
public:
    TwoFormComponents() = default;
    TwoFormComponents(int count, int base_dim);

    int count() const { return count_; }
    int base_dim() const { return n_; }
    Expression at(int i, int lambda, int mu) const;
    void set(int i, int lambda, int mu, Expression value);  // lambda < mu
    bool is_zero() const;
    friend TwoFormComponents operator+(const TwoFormComponents& a, const TwoFormComponents& b);
    friend TwoFormComponents operator-(const TwoFormComponents& a, const TwoFormComponents& b);
    friend bool operator==(const TwoFormComponents& a, const TwoFormComponents& b) { return a.data_ == b.data_; }

private:
    int index(int lambda, int mu) const;
    int count_ = 0;
    int n_ = 0;
    std::vector<Expression> data_;
};

// R^i_{λμ} = ∂_λΓ^i_μ − ∂_μΓ^i_λ + Γ^j_λ∂_jΓ^i_μ − Γ^j_μ∂_jΓ^i_λ.
TwoFormComponents curvature(const JetModel& model, const Connection& gamma);
// ρ^i_{λμ} = σ^j_λ∂_jσ^i_μ − σ^j_μ∂_jσ^i_λ.
TwoFormComponents soldered_curvature(const JetModel& model, const SolderingForm& sigma);
// T^i_{λμ} = t^i_{λμ} − t^i_{μλ}, t^i_{λμ} = ∂_λσ^i_μ + Γ^j_λ∂_jσ^i_μ − ∂_jΓ^i_λσ^j_μ.
TwoFormComponents torsion(const JetModel& model, const Connection& gamma, const SolderingForm& sigma);
// R(Γ+σ) − R(Γ) − ρ(σ) − T(Γ,σ).
TwoFormComponents curvature_shift_residual(const JetModel& model, const Connection& gamma, const SolderingForm& sigma);
// T(Γ+σ, σ) − T(Γ, σ) − 2ρ(σ).
TwoFormComponents torsion_shift_residual(const JetModel& model, const Connection& gamma, const SolderingForm& sigma);
// Cyclic sum of ∂_λR^i_{μν} + Γ^j_λ∂_jR^i_{μν} − ∂_jΓ^i_λR^j_{μν}; one entry per (i, λ<μ<ν).
std::vector<Expression> second_bianchi_residual(const JetModel& model, const Connection& gamma);

// Coordinates (x^0..x^{n-1}, y^0..y^{m-1}) of the plain tangent-form calculus.
CoordinateSet fibred_coordinates(const JetModel& model);
// Γ = dx^λ ⊗ (∂_λ + Γ^i_λ ∂_i).
TangentValuedForm connection_form(const JetModel& model, const Connection& gamma);
// σ = σ^i_λ dx^λ ⊗ ∂_i.
TangentValuedForm soldering_form(const JetModel& model, const SolderingForm& sigma);
// ½ X^i_{λμ} dx^λ∧dx^μ ⊗ ∂_i.
TangentValuedForm vertical_two_form(const JetModel& model, const TwoFormComponents& x);
// [Γ, T]_FN − [R, σ]_FN.
TangentValuedForm first_bianchi_residual(const JetModel& model, const Connection& gamma, const SolderingForm& sigma);

// ---------------------------------------------------------------- world

struct Metric {
    std::vector<std::vector<Expression>> g;
    std::vector<std::vector<Expression>> inverse;
    int dim() const { return static_cast<int>(g.size()); }
};

// Checks symmetry and x-dependence, inverts by adjugate (diagonal fast path).
// DimensionTooLarge for n > 4, SingularMetric for a vanishing determinant.
Metric make_metric(const JetModel& model, std::vector<std::vector<Expression>> g);

// Γ_λ^ν_μ indexed (λ, ν, μ).
class WorldConnection {
public:
    WorldConnection() = default;
    explicit WorldConnection(int n);
    int dim() const { return n_; }
    const Expression& at(int lambda, int nu, int mu) const;
    void set(int lambda, int nu, int mu, Expression v);
    WorldConnection negated() const;
    bool is_symmetric() const;
    friend bool operator==(const WorldConnection& a, const WorldConnection& b) { return a.data_ == b.data_; }

private:
    int n_ = 0;
    std::vector<Expression> data_;
};

// Γ_λ^ν_μ = −½ g^{νρ}(∂_λg_{ρμ} + ∂_μg_{ρλ} − ∂_ρg_{λμ}).
WorldConnection christoffel(const JetModel& model, const Metric& g);
// ∂_λg^{αβ} − g^{αγ}Γ_λ^β_γ − g^{βγ}Γ_λ^α_γ, indexed (λ, α, β).
std::vector<Expression> metricity_residual(const JetModel& model, const Metric& g, const WorldConnection& gamma);

// R_{λμ}^α_β indexed (λ, μ, α, β), full storage.
class WorldCurvature {
public:
    WorldCurvature() = default;
    explicit WorldCurvature(int n);
    int dim() const { return n_; }
    const Expression& at(int lambda, int mu, int alpha, int beta) const;
    void set(int lambda, int mu, int alpha, int beta, Expression v);

private:
    int n_ = 0;
    std::vector<Expression> data_;
};

// R_{λμ}^α_β = ∂_λΓ_μ^α_β − ∂_μΓ_λ^α_β + Γ_λ^γ_βΓ_μ^α_γ − Γ_μ^γ_βΓ_λ^α_γ.
WorldCurvature world_curvature(const JetModel& model, const WorldConnection& gamma);
// R_c{μβ} = ½ R_{λμ}^λ_β, indexed [μ][β].
std::vector<std::vector<Expression>> ricci(const WorldCurvature& r);
// T_μ^ν_λ = Γ_μ^ν_λ − Γ_λ^ν_μ, indexed (μ, ν, λ).
WorldConnection world_torsion(const WorldConnection& gamma);

// Model on TX with fibre coordinates named <base>_dot.
JetModel tangent_bundle_model(const JetModel& base);
// Model on the tensor bundle of type (m, k): fibre coordinates t<upper>_<lower>,
// except (1,0) which uses tangent_bundle_model names.
JetModel tensor_bundle_model(const JetModel& base, int upper, int lower);

// ẍ^ν = Γ_λ^ν_α ẋ^λ ẋ^α in coordinates of tangent_bundle_model.
std::vector<Expression> geodesic_rhs(const JetModel& tangent, const WorldConnection& gamma);

struct GeodesicSample {
    double t = 0;
    std::vector<double> x, v;
};

// Fixed-step RK4 of the geodesic equation; returns steps+1 samples.
std::vector<GeodesicSample> integrate_geodesic(const JetModel& tangent, const std::vector<Expression>& rhs,
                                               std::vector<double> x0, std::vector<double> v0, double dt, int steps);

// A^μ_λ = Γ_λ^μ_ν ẋ^ν + δ^μ_λ as a connection on TX.
Connection cartan_connection(const JetModel& tangent, const WorldConnection& gamma);
// Γ^μ_λ = Γ_λ^μ_ν ẋ^ν.
Connection linear_connection(const JetModel& tangent, const WorldConnection& gamma);
// σ^μ_λ = δ^μ_λ.
SolderingForm canonical_soldering(const JetModel& tangent);

// τ̃ = τ^μ∂_μ + [Σ ∂_ντ^{α_p} ẋ^{..ν..}_{..} − Σ ∂_{β_q}τ^ν ẋ^{..}_{..ν..}] ∂̇ on a tensor bundle model.
ContactDerivation canonical_lift(const JetModel& tensor_model, int upper, int lower, const std::vector<Expression>& tau);

// ---------------------------------------------------------------- gauge

class GaugeAlgebra {
public:
    GaugeAlgebra() = default;
    explicit GaugeAlgebra(int dim);
    int dim() const { return dim_; }
    const Rational& c(int r, int p, int q) const;
    // Sets c^r_{pq} and c^r_{qp} = −c^r_{pq}.
    void set(int r, int p, int q, const Rational& v);
    // Throws ValidationError unless antisymmetric and Jacobi holds.
    void validate() const;
    static GaugeAlgebra abelian(int dim);
    static GaugeAlgebra su2();  // c^r_{pq} = ε_{rpq}

private:
    int dim_ = 0;
    std::vector<Rational> c_;
};

// a^r_μ indexed [r][μ].
using PrincipalConnectionField = std::vector<std::vector<Expression>>;

// F^r_{λμ} = ∂_λa^r_μ − ∂_μa^r_λ + c^r_{pq}a^p_λa^q_μ. AlgebraMismatch on a wrong shape.
TwoFormComponents strength(const JetModel& model, const GaugeAlgebra& algebra, const PrincipalConnectionField& a);

// Model on the bundle of principal connections: fields a<r>_<μ> at slot r*n+μ.
JetModel gauge_field_model(const JetModel& base, int algebra_dim);
int gauge_slot(const JetModel& gauge, int r, int mu);

// u_ξ = ξ^μ∂_μ + (∂_μξ^r + c^r_{pq}a^p_μξ^q − a^r_ν∂_μξ^ν)∂^μ_r with ξ = (ξ^μ(x), ξ^r(x)).
ContactDerivation principal_vector_field(const JetModel& gauge, const GaugeAlgebra& algebra,
                                         const std::vector<Expression>& xi_base,
                                         const std::vector<Expression>& xi_algebra);

struct JetSplitting {
    std::vector<std::vector<std::vector<Expression>>> f_part;  // [r][λ][μ]
    std::vector<std::vector<std::vector<Expression>>> s_part;
};

// F-part a_{λμ} − a_{μλ} + c a_λa_μ and S-part a_{λμ} + a_{μλ} − c a_λa_μ,
// with a^r_{λμ} the first jet of a^r_μ in direction λ.
JetSplitting jet_splitting(const JetModel& gauge, const GaugeAlgebra& algebra);

}  // namespace jetvar
