#include "jetvar/variational.hpp"

#include "jetvar/error.hpp"

namespace jetvar {

namespace {

void check_order(const Lagrangian& L) {
    if (L.order > 2) throw Error(ErrorCode::OrderTooHigh, "Lepage equivalents are implemented for order <= 2");
}

// ∂L/∂y^A_Λ divided by the number of orderings of Λ.
Expression symmetric_partial(const JetModel& model, const Expression& e, int slot, const MultiIndex& jet) {
    Expression d = partial_derivative(e, model.jet_atom(slot, jet));
    long long count = permutation_count(jet);
    return count == 1 ? d : d.scaled(Rational(1) / Rational(count));
}

Expression divergence(const JetModel& model, const std::vector<Expression>& j) {
    Expression out;
    for (int mu = 0; mu < model.base_dim(); ++mu) out += total_derivative(model, j[mu], mu);
    return out;
}

Lagrangian raw(const Expression& e) {
    Lagrangian L;
    L.density = e;
    L.order = std::max(0, e.max_order());
    return L;
}

}  // namespace

Lagrangian make_lagrangian(const JetModel& model, const Expression& density) {
    model.validate(density);
    if (density.parity() != Parity::Even)
        throw Error(ErrorCode::ParityMismatch, "Lagrangian densities must be even");
    return raw(density);
}

std::vector<Expression> euler_lagrange(const JetModel& model, const Lagrangian& L) {
    std::vector<Expression> out(static_cast<std::size_t>(model.field_count()));
    for (const Atom& z : coordinate_atoms(L.density)) {
        if (!z.is_jet()) continue;
        Expression term = total_derivative(model, partial_derivative(L.density, z), z.jet);
        int slot = model.slot_of(z);
        if (z.jet.order() & 1) {
            out[slot] -= term;
        } else {
            out[slot] += term;
        }
    }
    return out;
}

bool is_variationally_trivial(const JetModel& model, const Lagrangian& L) {
    for (const auto& e : euler_lagrange(model, L))
        if (!e.is_zero()) return false;
    return true;
}

LepageForm lepage(const JetModel& model, const Lagrangian& L) {
    check_order(L);
    int n = model.base_dim(), m = model.field_count();
    LepageForm out;
    out.first.assign(static_cast<std::size_t>(m), std::vector<Expression>(static_cast<std::size_t>(n)));
    out.second.assign(static_cast<std::size_t>(m),
                      std::vector<std::vector<Expression>>(static_cast<std::size_t>(n), std::vector<Expression>(static_cast<std::size_t>(n))));
    for (int a = 0; a < m; ++a)
        for (int l = 0; l < n; ++l)
            for (int nu = 0; nu < n; ++nu)
                out.second[a][l][nu] = symmetric_partial(model, L.density, a, MultiIndex{l}.plus(nu));
    for (int a = 0; a < m; ++a)
        for (int l = 0; l < n; ++l) {
            Expression f = partial_derivative(L.density, model.jet_atom(a, MultiIndex{l}));
            for (int mu = 0; mu < n; ++mu) f -= total_derivative(model, out.second[a][mu][l], mu);
            out.first[a][l] = f;
        }
    DifferentialForm xi = multiply_left(L.density, volume_form(model));
    for (int a = 0; a < m; ++a)
        for (int l = 0; l < n; ++l) {
            DifferentialForm wl = volume_form_lambda(model, l);
            if (!out.first[a][l].is_zero())
                xi += wedge(DifferentialForm::theta(model, a), multiply_left(out.first[a][l], wl));
            for (int nu = 0; nu < n; ++nu)
                if (!out.second[a][l][nu].is_zero())
                    xi += wedge(DifferentialForm::theta(model, a, MultiIndex{nu}), multiply_left(out.second[a][l][nu], wl));
        }
    xi.attach(&model);
    out.form = std::move(xi);
    return out;
}

Expression lie_derivative_lagrangian(const JetModel& model, const ContactDerivation& v, const Lagrangian& L) {
    Expression out = apply(model, v, L.density);
    Expression div;
    for (int l = 0; l < model.base_dim(); ++l) div += total_derivative(model, v.base(l), l);
    return out + L.density * div;
}

Expression lie_derivative_lagrangian_forms(const JetModel& model, const ContactDerivation& v, const Lagrangian& L) {
    DifferentialForm lw = multiply_left(L.density, volume_form(model));
    return density_of(model, horizontalize(lie_derivative(model, v, lw)));
}

ContactDerivation vertical_part(const JetModel& model, const ContactDerivation& v) {
    ContactDerivation out(model, v.odd());
    for (int a = 0; a < model.field_count(); ++a) out.field(a) = vertical_component(model, v, a);
    return out;
}

DifferentialForm euler_lagrange_form(const JetModel& model, const Lagrangian& L) {
    std::vector<Expression> e = euler_lagrange(model, L);
    DifferentialForm out;
    DifferentialForm w = volume_form(model);
    for (int a = 0; a < model.field_count(); ++a)
        if (!e[a].is_zero()) out += wedge(DifferentialForm::theta(model, a), multiply_left(e[a], w));
    out.attach(&model);
    return out;
}

Expression first_variational_residual(const JetModel& model, const ContactDerivation& v, const Lagrangian& L) {
    check_order(L);
    Expression lhs = lie_derivative_lagrangian(model, v, L);
    DifferentialForm el = euler_lagrange_form(model, L);
    Expression vertical = el.is_zero() ? Expression() : density_of(model, horizontalize(interior_product(model, vertical_part(model, v), el)));
    return lhs - vertical - divergence(model, noether_current(model, v, L));
}

const char* symmetry_kind_name(SymmetryKind k) {
    switch (k) {
        case SymmetryKind::Exact: return "exact";
        case SymmetryKind::Variational: return "variational";
        case SymmetryKind::None: return "none";
    }
    return "none";
}

SymmetryKind check_symmetry(const JetModel& model, const ContactDerivation& v, const Lagrangian& L) {
    if (!v.is_projectable()) throw Error(ErrorCode::NotProjectable, "a variational symmetry must be projectable");
    Expression lie = lie_derivative_lagrangian(model, v, L);
    if (lie.is_zero()) return SymmetryKind::Exact;
    return is_variationally_trivial(model, raw(lie)) ? SymmetryKind::Variational : SymmetryKind::None;
}

std::vector<Expression> noether_current(const JetModel& model, const ContactDerivation& v, const Lagrangian& L) {
    LepageForm xi = lepage(model, L);
    if (xi.form.is_zero() || model.base_dim() == 0) return std::vector<Expression>(static_cast<std::size_t>(model.base_dim()));
    return horizontal_current_components(model, horizontalize(interior_product(model, v, xi.form)));
}

Expression conservation_residual(const JetModel& model, const ContactDerivation& v, const Lagrangian& L) {
    Expression out = divergence(model, noether_current(model, v, L));
    std::vector<Expression> e = euler_lagrange(model, L);
    for (int a = 0; a < model.field_count(); ++a)
        if (!e[a].is_zero()) out += vertical_component(model, v, a) * e[a];
    return out;
}

}  // namespace jetvar
