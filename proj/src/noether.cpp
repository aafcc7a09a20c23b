#include "jetvar/noether.hpp"

#include "jetvar/error.hpp"

namespace jetvar {

namespace {

long long binomial(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// All sub-multisets of k.
void sub_multisets(const MultiIndex& k, std::vector<MultiIndex>& out) {
    std::vector<std::pair<int, int>> counts;
    for (int i : k) {
        if (!counts.empty() && counts.back().first == i) {
            ++counts.back().second;
        } else {
            counts.push_back({i, 1});
        }
    }
    std::vector<int> pick(counts.size(), 0);
    while (true) {
        std::vector<int> idx;
        for (std::size_t j = 0; j < counts.size(); ++j)
            for (int c = 0; c < pick[j]; ++c) idx.push_back(counts[j].first);
        out.push_back(MultiIndex(idx));
        std::size_t j = 0;
        while (j < counts.size() && pick[j] == counts[j].second) pick[j++] = 0;
        if (j == counts.size()) return;
        ++pick[j];
    }
}

long long embedding_count(const MultiIndex& whole, const MultiIndex& part) {
    long long r = 1;
    for (int i = 0; i <= whole.max_index(); ++i) r *= binomial(whole.count(i), part.count(i));
    return r;
}

void check_params(const JetModel& model, const GaugeSymmetrySpec& spec) {
    if (spec.param_slots.empty()) return;
    bool odd = model.slot_is_odd(spec.param_slots.front());
    for (std::size_t a = 0; a < spec.param_slots.size(); ++a) {
        int s = spec.param_slots[a];
        if (s < 0 || s >= model.field_count())
            throw Error(ErrorCode::UndeclaredParameter, "gauge parameter slot out of range");
        if (model.slot_is_odd(s) != odd)
            throw Error(ErrorCode::ParityMismatch, "gauge parameters must share one parity");
        for (std::size_t b = 0; b < a; ++b)
            if (spec.param_slots[b] == s) throw Error(ErrorCode::ValidationError, "duplicate gauge parameter slot");
    }
}

bool is_param_slot(const GaugeSymmetrySpec& spec, int slot) {
    for (int s : spec.param_slots)
        if (s == slot) return true;
    return false;
}

bool mentions_params(const JetModel& model, const GaugeSymmetrySpec& spec, const Expression& e) {
    for (const Atom& z : coordinate_atoms(e))
        if (z.is_jet() && is_param_slot(spec, model.slot_of(z))) return true;
    return false;
}

}  // namespace

IndexedTuple eta(const JetModel& model, const IndexedTuple& f) {
    IndexedTuple out;
    for (const auto& [whole, value] : f) {
        if (value.is_zero()) continue;
        std::vector<MultiIndex> parts;
        sub_multisets(whole, parts);
        for (const MultiIndex& lambda : parts) {
            MultiIndex sigma = whole.minus(lambda);
            Expression term = total_derivative(model, value, sigma);
            long long c = embedding_count(whole, lambda);
            if (whole.order() & 1) c = -c;
            out[lambda] += term.scaled(Rational(c));
        }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

Expression integration_by_parts_residual(const JetModel& model, const IndexedTuple& f, const Expression& phi) {
    Expression lhs, rhs;
    for (const auto& [lambda, value] : f) {
        Expression t = total_derivative(model, value * phi, lambda);
        if (lambda.order() & 1) {
            lhs -= t;
        } else {
            lhs += t;
        }
    }
    for (const auto& [lambda, value] : eta(model, f)) rhs += value * total_derivative(model, phi, lambda);
    return lhs - rhs;
}

GaugeModel add_gauge_parameters(const JetModel& model, const std::vector<std::string>& names, bool odd) {
    std::vector<std::string> even, oddf, params;
    for (int s = 0; s < model.field_count(); ++s) (model.slot_is_odd(s) ? oddf : even).push_back(model.field_name(s));
    for (int k = 0; k < model.param_count(); ++k) params.push_back(model.param_name(k));
    std::vector<std::string>& target = odd ? oddf : even;
    int first = static_cast<int>(target.size());
    target.insert(target.end(), names.begin(), names.end());
    GaugeModel out{JetModel(model.base_dim(), even, oddf, params, model.base_names()), {}};
    for (std::size_t a = 0; a < names.size(); ++a) {
        int index = first + static_cast<int>(a);
        out.param_slots.push_back(out.model.slot(FieldRef{odd, index}));
    }
    return out;
}

ContactDerivation build_gauge_symmetry(const JetModel& model, const GaugeSymmetrySpec& spec) {
    check_params(model, spec);
    bool odd = !spec.param_slots.empty() && model.slot_is_odd(spec.param_slots.front());
    ContactDerivation u(model, odd);
    for (const GaugeTerm& t : spec.terms) {
        if (t.param < 0 || t.param >= static_cast<int>(spec.param_slots.size()))
            throw Error(ErrorCode::UndeclaredParameter, "gauge term refers to undeclared parameter " + std::to_string(t.param));
        model.validate(t.coefficient);
        if (mentions_params(model, spec, t.coefficient))
            throw Error(ErrorCode::ValidationError, "gauge coefficients must not depend on the parameters");
        Expression piece = t.coefficient * model.y(spec.param_slots[t.param], t.jet);
        if (t.on_base) {
            if (t.target < 0 || t.target >= model.base_dim())
                throw Error(ErrorCode::IndexOutOfRange, "gauge term base index out of range");
            for (const Atom& z : coordinate_atoms(t.coefficient))
                if (z.is_jet()) throw Error(ErrorCode::NotProjectable, "base gauge coefficients depend on x only");
            u.base(t.target) += piece;
        } else {
            if (t.target < 0 || t.target >= model.field_count())
                throw Error(ErrorCode::IndexOutOfRange, "gauge term field slot out of range");
            if (is_param_slot(spec, t.target))
                throw Error(ErrorCode::ValidationError, "gauge terms cannot act on the parameters");
            u.field(t.target) += piece;
        }
    }
    check_parity(model, u);
    return u;
}

std::vector<Expression> noether_identity_residual(const JetModel& model, const GaugeSymmetrySpec& spec,
                                                  const Lagrangian& L) {
    if (mentions_params(model, spec, L.density))
        throw Error(ErrorCode::ValidationError, "the Lagrangian must not depend on the gauge parameters");
    ContactDerivation u = build_gauge_symmetry(model, spec);
    std::vector<Expression> e = euler_lagrange(model, L);
    std::vector<Expression> out(spec.param_slots.size());
    for (int i = 0; i < model.field_count(); ++i) {
        if (is_param_slot(spec, i) || e[i].is_zero()) continue;
        Expression uv = vertical_component(model, u, i);
        for (std::size_t a = 0; a < spec.param_slots.size(); ++a) {
            IndexedTuple g;
            for (const Atom& z : coordinate_atoms(uv))
                if (z.is_jet() && model.slot_of(z) == spec.param_slots[a]) g[z.jet] = partial_derivative(uv, z);
            for (const auto& [lambda, value] : eta(model, g)) out[a] += value * total_derivative(model, e[i], lambda);
        }
    }
    return out;
}

SymmetryKind gauge_invariance_check(const JetModel& model, const GaugeSymmetrySpec& spec, const Lagrangian& L) {
    ContactDerivation u = build_gauge_symmetry(model, spec);
    Expression lie = lie_derivative_lagrangian(model, u, L);
    if (lie.is_zero()) return SymmetryKind::Exact;
    Lagrangian density{lie, L.order + 1};
    return is_variationally_trivial(model, density) ? SymmetryKind::Variational : SymmetryKind::None;
}

std::vector<Expression> verify_complete_ni(const JetModel& model, const std::vector<NIGenerator>& generators,
                                           const Lagrangian& L) {
    std::vector<Expression> e = euler_lagrange(model, L);
    std::vector<Expression> out;
    for (const NIGenerator& g : generators) {
        Expression r;
        for (const NITerm& t : g) {
            if (t.target < 0 || t.target >= model.field_count())
                throw Error(ErrorCode::IndexOutOfRange, "identity refers to a missing field slot");
            r += t.coefficient * total_derivative(model, e[t.target], t.jet);
        }
        out.push_back(r);
    }
    return out;
}

Expression yang_mills_density(const JetModel& gauge, const GaugeAlgebra& algebra, const Rational& mass_squared) {
    int n = gauge.base_dim(), dim = algebra.dim();
    auto a = [&](int r, int mu) { return gauge.y(gauge_slot(gauge, r, mu)); };
    Expression out;
    for (int r = 0; r < dim; ++r) {
        // F^r_{λμ} in jet coordinates
        for (int l = 0; l < n; ++l)
            for (int mu = l + 1; mu < n; ++mu) {
                Expression f = gauge.y(gauge_slot(gauge, r, mu), MultiIndex{l}) - gauge.y(gauge_slot(gauge, r, l), MultiIndex{mu});
                for (int p = 0; p < dim; ++p)
                    for (int q = 0; q < dim; ++q)
                        if (!algebra.c(r, p, q).is_zero()) f += (a(p, l) * a(q, mu)).scaled(algebra.c(r, p, q));
                out += (f * f).scaled(Rational(-1, 2));
            }
        if (!mass_squared.is_zero())
            for (int mu = 0; mu < n; ++mu) out += (a(r, mu) * a(r, mu)).scaled(mass_squared / Rational(2));
    }
    return out;
}

GaugeSymmetrySpec yang_mills_gauge_spec(const JetModel& gauge, const GaugeAlgebra& algebra,
                                        const std::vector<int>& param_slots) {
    if (static_cast<int>(param_slots.size()) != algebra.dim())
        throw Error(ErrorCode::AlgebraMismatch, "one gauge parameter per algebra generator");
    GaugeSymmetrySpec spec{param_slots, {}};
    int n = gauge.base_dim(), dim = algebra.dim();
    for (int r = 0; r < dim; ++r)
        for (int mu = 0; mu < n; ++mu) {
            int target = gauge_slot(gauge, r, mu);
            spec.terms.push_back({false, target, r, MultiIndex{mu}, Expression(1)});
            for (int p = 0; p < dim; ++p)
                for (int q = 0; q < dim; ++q) {
                    const Rational& c = algebra.c(r, p, q);
                    if (!c.is_zero()) spec.terms.push_back({false, target, q, MultiIndex{}, gauge.y(gauge_slot(gauge, p, mu)).scaled(c)});
                }
        }
    return spec;
}

std::vector<NIGenerator> yang_mills_ni_generators(const JetModel& gauge, const GaugeAlgebra& algebra) {
    int n = gauge.base_dim(), dim = algebra.dim();
    std::vector<NIGenerator> out(static_cast<std::size_t>(dim));
    for (int r = 0; r < dim; ++r)
        for (int mu = 0; mu < n; ++mu) {
            out[r].push_back({gauge_slot(gauge, r, mu), MultiIndex{mu}, Expression(1)});
            for (int s = 0; s < dim; ++s)
                for (int p = 0; p < dim; ++p) {
                    const Rational& c = algebra.c(s, r, p);
                    if (!c.is_zero())
                        out[r].push_back({gauge_slot(gauge, s, mu), MultiIndex{}, gauge.y(gauge_slot(gauge, p, mu)).scaled(c)});
                }
        }
    return out;
}

}  // namespace jetvar
