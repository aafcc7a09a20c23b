#include "jetvar/forms.hpp"

#include <algorithm>

#include "jetvar/error.hpp"

namespace jetvar {

namespace {

// Sign of reordering a∧b into canonical order; 0 if the product vanishes.
int wedge_monomials(const GeneratorMonomial& a, const GeneratorMonomial& b, GeneratorMonomial& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    std::vector<int> suffix(a.size() + 1, 0);
    for (std::size_t i = a.size(); i-- > 0;) suffix[i] = suffix[i + 1] + a[i].mult;
    std::size_t i = 0, j = 0;
    long long inversions = 0;
    while (i < a.size() && j < b.size()) {
        int c = compare(a[i].gen, b[j].gen);
        if (c < 0) {
            out.push_back(a[i++]);
        } else if (c > 0) {
            // everything left in a is greater and anticommutes with a non-odd generator
            if (!b[j].gen.is_odd()) inversions += static_cast<long long>(suffix[i]) * b[j].mult;
            out.push_back(b[j++]);
        } else {
            if (!a[i].gen.is_odd()) return 0;
            out.push_back(GeneratorPower{a[i].gen, a[i].mult + b[j].mult});
            ++i;
            ++j;
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return (inversions & 1) ? -1 : 1;
}

std::vector<Generator> expand(const GeneratorMonomial& m) {
    std::vector<Generator> out;
    for (const auto& p : m)
        for (int k = 0; k < p.mult; ++k) out.push_back(p.gen);
    return out;
}

// A sorted generator list as a monomial.
GeneratorMonomial collect(std::vector<Generator>::const_iterator first, std::vector<Generator>::const_iterator last) {
    GeneratorMonomial m;
    for (auto it = first; it != last; ++it) {
        if (!m.empty() && m.back().gen == *it) {
            ++m.back().mult;
        } else {
            m.push_back(GeneratorPower{*it, 1});
        }
    }
    return m;
}

DifferentialForm unit(GeneratorMonomial m) {
    return DifferentialForm::from_terms({DifferentialForm::Term{std::move(m), Expression(1)}});
}

DifferentialForm single(const Generator& g) { return unit({GeneratorPower{g, 1}}); }

Generator theta_for(const JetModel& model, int slot, const MultiIndex& jet) {
    FieldRef f = model.field_at(slot);
    return Generator::theta(f.odd, f.index, jet);
}

int slot_of(const JetModel& model, const Generator& g) {
    return g.kind == Generator::Kind::OddTheta ? model.even_count() + g.index : g.index;
}

// Splits an expression into its even and odd parts.
std::pair<Expression, Expression> split_parity(const Expression& e) {
    std::vector<Term> even, odd;
    for (const auto& t : e.terms()) (monomial_parity(t.mono) ? odd : even).push_back(t);
    return {Expression::from_terms(std::move(even)), Expression::from_terms(std::move(odd))};
}

const JetModel* common_model(const DifferentialForm& a, const DifferentialForm& b) {
    if (a.model() && b.model() && a.model() != b.model())
        throw Error(ErrorCode::ModelMismatch, "forms belong to different jet models");
    return a.model() ? a.model() : b.model();
}

}  // namespace

Generator Generator::dx(int lambda) {
    Generator g;
    g.kind = Kind::Dx;
    g.index = static_cast<std::uint16_t>(lambda);
    return g;
}

Generator Generator::theta(bool odd_field, int field, const MultiIndex& jet) {
    Generator g;
    g.kind = odd_field ? Kind::OddTheta : Kind::EvenTheta;
    g.index = static_cast<std::uint16_t>(field);
    g.jet = jet;
    return g;
}

int compare(const Generator& a, const Generator& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    if (a.index != b.index) return a.index < b.index ? -1 : 1;
    if (a.jet != b.jet) return a.jet < b.jet ? -1 : 1;
    return 0;
}

int compare(const GeneratorMonomial& a, const GeneratorMonomial& b) {
    int da = degree(a), db = degree(b);
    if (da != db) return da < db ? -1 : 1;
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare(a[i].gen, b[i].gen);
        if (c != 0) return c;
        if (a[i].mult != b[i].mult) return a[i].mult > b[i].mult ? -1 : 1;
    }
    if (a.size() != b.size()) return a.size() > b.size() ? -1 : 1;
    return 0;
}

int degree(const GeneratorMonomial& gens) {
    int d = 0;
    for (const auto& p : gens) d += p.mult;
    return d;
}

int parity(const GeneratorMonomial& gens) {
    int p = 0;
    for (const auto& g : gens)
        if (g.gen.is_odd()) p += g.mult;
    return p & 1;
}

// ------------------------------------------------------------ container

DifferentialForm::DifferentialForm(const Expression& f) {
    if (!f.is_zero()) terms_.push_back(Term{{}, f});
}

DifferentialForm DifferentialForm::dx(const JetModel& model, int lambda) {
    if (lambda < 0 || lambda >= model.base_dim()) throw Error(ErrorCode::IndexOutOfRange, "base index out of range");
    DifferentialForm f = single(Generator::dx(lambda));
    f.model_ = &model;
    return f;
}

DifferentialForm DifferentialForm::theta(const JetModel& model, int slot, const MultiIndex& jet) {
    model.jet_atom(slot, jet);  // validates
    DifferentialForm f = single(theta_for(model, slot, jet));
    f.model_ = &model;
    return f;
}

DifferentialForm DifferentialForm::dy(const JetModel& model, int slot, const MultiIndex& jet) {
    DifferentialForm f = theta(model, slot, jet);
    for (int l = 0; l < model.base_dim(); ++l) f += multiply_left(model.y(slot, jet.plus(l)), dx(model, l));
    return f;
}

DifferentialForm DifferentialForm::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return compare(a.gens, b.gens) < 0; });
    DifferentialForm r;
    for (auto& t : terms) {
        if (!r.terms_.empty() && compare(r.terms_.back().gens, t.gens) == 0) {
            r.terms_.back().coef += t.coef;
            if (r.terms_.back().coef.is_zero()) r.terms_.pop_back();
        } else if (!t.coef.is_zero()) {
            r.terms_.push_back(std::move(t));
        }
    }
    return r;
}

bool DifferentialForm::is_homogeneous() const {
    for (const auto& t : terms_)
        if (jetvar::degree(t.gens) != jetvar::degree(terms_.front().gens)) return false;
    return true;
}

int DifferentialForm::degree() const {
    if (terms_.empty()) return -1;
    if (!is_homogeneous()) throw Error(ErrorCode::ValidationError, "form is not homogeneous");
    return jetvar::degree(terms_.front().gens);
}

DifferentialForm DifferentialForm::component(int k) const {
    DifferentialForm r;
    r.model_ = model_;
    for (const auto& t : terms_)
        if (jetvar::degree(t.gens) == k) r.terms_.push_back(t);
    return r;
}

Parity DifferentialForm::parity() const {
    bool even = false, odd = false;
    for (const auto& t : terms_) {
        int gp = jetvar::parity(t.gens);
        for (const auto& ct : t.coef.terms()) ((gp + monomial_parity(ct.mono)) & 1 ? odd : even) = true;
    }
    if (even && odd) return Parity::Mixed;
    return odd ? Parity::Odd : Parity::Even;
}

Expression DifferentialForm::coefficient(const GeneratorMonomial& gens) const {
    for (const auto& t : terms_)
        if (compare(t.gens, gens) == 0) return t.coef;
    return {};
}

DifferentialForm DifferentialForm::operator-() const {
    DifferentialForm r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
    const JetModel* m = common_model(a, b);
    std::vector<DifferentialForm::Term> all = a.terms_;
    all.insert(all.end(), b.terms_.begin(), b.terms_.end());
    DifferentialForm r = DifferentialForm::from_terms(std::move(all));
    r.model_ = m;
    return r;
}

DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) { return a + (-b); }

DifferentialForm DifferentialForm::scaled(const Rational& c) const {
    if (c.is_zero()) return {};
    DifferentialForm r = *this;
    for (auto& t : r.terms_) t.coef = t.coef.scaled(c);
    return r;
}

bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (compare(a.terms_[i].gens, b.terms_[i].gens) != 0) return false;
        if (!(a.terms_[i].coef == b.terms_[i].coef)) return false;
    }
    return true;
}

// ----------------------------------------------------------- algebra

DifferentialForm multiply_left(const Expression& c, const DifferentialForm& phi) {
    std::vector<DifferentialForm::Term> out;
    for (const auto& t : phi.terms()) out.push_back({t.gens, c * t.coef});
    DifferentialForm r = DifferentialForm::from_terms(std::move(out));
    r.attach(phi.model());
    return r;
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    const JetModel* m = common_model(a, b);
    std::vector<DifferentialForm::Term> out;
    GeneratorMonomial gens;
    for (const auto& tb : b.terms()) {
        auto [even, odd] = split_parity(tb.coef);
        for (const auto& ta : a.terms()) {
            int s = wedge_monomials(ta.gens, tb.gens, gens);
            if (s == 0) continue;
            // moving the coefficient of b left past the generators of a
            Expression c2 = parity(ta.gens) ? even - odd : tb.coef;
            Expression c = ta.coef * c2;
            out.push_back({gens, s > 0 ? c : -c});
        }
    }
    DifferentialForm r = DifferentialForm::from_terms(std::move(out));
    r.attach(m);
    return r;
}

DifferentialForm exterior_d(const JetModel& model, const DifferentialForm& phi) {
    DifferentialForm result;
    for (const auto& t : phi.terms()) {
        // dc = dx^λ d_λ c + θ^A_Λ ∧ ∂^Λ_A c
        DifferentialForm dc;
        for (int l = 0; l < model.base_dim(); ++l)
            dc += multiply_left(total_derivative(model, t.coef, l), DifferentialForm::dx(model, l));
        for (const Atom& z : coordinate_atoms(t.coef)) {
            if (!z.is_jet()) continue;
            Expression dz = partial_derivative(t.coef, z);
            if (dz.is_zero()) continue;
            dc += wedge(DifferentialForm::theta(model, model.slot_of(z), z.jet), DifferentialForm(dz));
        }
        result += wedge(dc, unit(t.gens));
        // c dG, with dθ_Λ = dx^λ ∧ θ_{λ+Λ}
        std::vector<Generator> list = expand(t.gens);
        for (std::size_t j = 0; j < list.size(); ++j) {
            if (list[j].kind == Generator::Kind::Dx) continue;
            DifferentialForm dg;
            for (int l = 0; l < model.base_dim(); ++l) {
                Generator next = list[j];
                next.jet = next.jet.plus(l);
                model.note_order(next.jet.order());
                dg += unit({GeneratorPower{Generator::dx(l), 1}, GeneratorPower{next, 1}});
            }
            DifferentialForm piece = wedge(wedge(unit(collect(list.begin(), list.begin() + static_cast<long>(j))), dg),
                                           unit(collect(list.begin() + static_cast<long>(j) + 1, list.end())));
            if (j & 1) piece = -piece;
            result += multiply_left(t.coef, piece);
        }
    }
    result.attach(&model);
    return result;
}

DifferentialForm dH(const JetModel& model, const DifferentialForm& phi) {
    DifferentialForm result;
    for (int l = 0; l < model.base_dim(); ++l) {
        DifferentialForm dl;  // d_λ φ
        for (const auto& t : phi.terms()) {
            dl += DifferentialForm::from_terms({{t.gens, total_derivative(model, t.coef, l)}});
            std::vector<Generator> list = expand(t.gens);
            for (std::size_t j = 0; j < list.size(); ++j) {
                if (list[j].kind == Generator::Kind::Dx) continue;
                Generator next = list[j];
                next.jet = next.jet.plus(l);
                model.note_order(next.jet.order());
                DifferentialForm piece =
                    wedge(wedge(unit(collect(list.begin(), list.begin() + static_cast<long>(j))), single(next)),
                          unit(collect(list.begin() + static_cast<long>(j) + 1, list.end())));
                dl += multiply_left(t.coef, piece);
            }
        }
        result += wedge(DifferentialForm::dx(model, l), dl);
    }
    result.attach(&model);
    return result;
}

DifferentialForm dV(const JetModel& model, const DifferentialForm& phi) {
    DifferentialForm result;
    for (const auto& t : phi.terms()) {
        for (const Atom& z : coordinate_atoms(t.coef)) {
            if (!z.is_jet()) continue;
            Expression dz = partial_derivative(t.coef, z);
            if (dz.is_zero()) continue;
            result += wedge(DifferentialForm::theta(model, model.slot_of(z), z.jet),
                            DifferentialForm::from_terms({{t.gens, dz}}));
        }
    }
    result.attach(&model);
    return result;
}

DifferentialForm horizontalize(const DifferentialForm& phi) {
    std::vector<DifferentialForm::Term> out;
    for (const auto& t : phi.terms()) {
        bool horizontal = std::all_of(t.gens.begin(), t.gens.end(),
                                      [](const GeneratorPower& g) { return g.gen.kind == Generator::Kind::Dx; });
        if (horizontal) out.push_back(t);
    }
    DifferentialForm r = DifferentialForm::from_terms(std::move(out));
    r.attach(phi.model());
    return r;
}

std::pair<DifferentialForm, DifferentialForm> contact_split(const DifferentialForm& phi) {
    DifferentialForm h = horizontalize(phi);
    return {h, phi - h};
}

namespace {

DifferentialForm contract(const JetModel& model, const ContactDerivation& v, const DifferentialForm& phi) {
    DifferentialForm result;
    for (const auto& t : phi.terms()) {
        std::vector<Generator> list = expand(t.gens);
        if (list.empty()) continue;
        DifferentialForm inner;  // υ⌋G
        int prefix_parity = 0;
        for (std::size_t j = 0; j < list.size(); ++j) {
            const Generator& g = list[j];
            Expression e;
            if (g.kind == Generator::Kind::Dx) {
                e = v.base(g.index);
            } else {
                int slot = slot_of(model, g);
                e = jet_component(model, v, slot, g.jet);
                for (int mu = 0; mu < model.base_dim(); ++mu)
                    if (!v.base(mu).is_zero()) e -= v.base(mu) * model.y(slot, g.jet.plus(mu));
            }
            if (!e.is_zero()) {
                DifferentialForm piece = wedge(wedge(unit(collect(list.begin(), list.begin() + static_cast<long>(j))),
                                                     DifferentialForm(e)),
                                               unit(collect(list.begin() + static_cast<long>(j) + 1, list.end())));
                bool negative = ((j & 1) != 0) != (v.odd() && prefix_parity);
                inner += negative ? -piece : piece;
            }
            if (g.is_odd()) prefix_parity ^= 1;
        }
        // υ⌋(cG) = (−1)^{[c][υ]} c (υ⌋G)
        Expression c = t.coef;
        if (v.odd()) {
            auto [even, odd] = split_parity(c);
            c = even - odd;
        }
        result += multiply_left(c, inner);
    }
    result.attach(&model);
    return result;
}

}  // namespace

DifferentialForm interior_product(const JetModel& model, const ContactDerivation& v, const DifferentialForm& phi) {
    if (!phi.is_zero() && phi.is_homogeneous() && phi.degree() == 0)
        throw Error(ErrorCode::DegreeZero, "interior product of a 0-form");
    return contract(model, v, phi);
}

DifferentialForm lie_derivative(const JetModel& model, const ContactDerivation& v, const DifferentialForm& phi) {
    return contract(model, v, exterior_d(model, phi)) + exterior_d(model, contract(model, v, phi));
}

DifferentialForm volume_form(const JetModel& model) {
    GeneratorMonomial m;
    for (int l = 0; l < model.base_dim(); ++l) m.push_back({Generator::dx(l), 1});
    DifferentialForm f = unit(m);
    f.attach(&model);
    return f;
}

DifferentialForm volume_form_lambda(const JetModel& model, int lambda) {
    GeneratorMonomial m;
    for (int l = 0; l < model.base_dim(); ++l)
        if (l != lambda) m.push_back({Generator::dx(l), 1});
    DifferentialForm f = unit(m);
    if (lambda & 1) f = -f;
    f.attach(&model);
    return f;
}

std::vector<Expression> horizontal_current_components(const JetModel& model, const DifferentialForm& phi) {
    std::vector<Expression> out;
    for (int l = 0; l < model.base_dim(); ++l) {
        GeneratorMonomial m;
        for (int k = 0; k < model.base_dim(); ++k)
            if (k != l) m.push_back({Generator::dx(k), 1});
        Expression c = phi.coefficient(m);
        out.push_back((l & 1) ? -c : c);
    }
    return out;
}

Expression density_of(const JetModel& model, const DifferentialForm& phi) {
    return phi.coefficient(volume_form(model).terms().front().gens);
}

std::string to_string(const JetModel& model, const DifferentialForm& phi) {
    if (phi.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < phi.terms().size(); ++i) {
        const auto& t = phi.terms()[i];
        if (i > 0) out += " + ";
        std::string gens;
        for (const auto& g : t.gens) {
            std::string name;
            if (g.gen.kind == Generator::Kind::Dx) {
                name = "d" + model.base_name(g.gen.index);
            } else {
                name = "theta[" + model.field_name(slot_of(model, g.gen)) + ";" + model.multi_index_text(g.gen.jet) + "]";
            }
            for (int k = 0; k < g.mult; ++k) gens += (gens.empty() ? "" : "^") + name;
        }
        std::string coef = model.print(t.coef);
        if (gens.empty()) {
            out += "(" + coef + ")";
        } else {
            out += "(" + coef + ") * " + gens;
        }
    }
    return out;
}

}  // namespace jetvar
