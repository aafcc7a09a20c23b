#include "jetvar/tangent_forms.hpp"

#include <bit>

#include "jetvar/error.hpp"

namespace jetvar {

CoordinateSet::CoordinateSet(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.size() > 31) throw Error(ErrorCode::DimensionTooLarge, "too many coordinates for a plain form");
}

int CoordinateSet::index_of(const Atom& a) const {
    for (int k = 0; k < size(); ++k)
        if (atoms_[k] == a) return k;
    return -1;
}

PlainForm::PlainForm(const Expression& f) {
    if (!f.is_zero()) terms_.emplace(0u, f);
}

PlainForm PlainForm::dz(int k) { return monomial(1u << k, Expression(1)); }

PlainForm PlainForm::monomial(std::uint32_t mask, Expression coef) {
    PlainForm f;
    f.add(mask, coef);
    return f;
}

void PlainForm::add(std::uint32_t mask, const Expression& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(mask);
    if (it == terms_.end()) {
        terms_.emplace(mask, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

int PlainForm::degree() const {
    if (terms_.empty()) return -1;
    int d = std::popcount(terms_.begin()->first);
    for (const auto& [mask, c] : terms_)
        if (std::popcount(mask) != d) throw Error(ErrorCode::ValidationError, "plain form is not homogeneous");
    return d;
}

Expression PlainForm::coefficient(std::uint32_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? Expression() : it->second;
}

PlainForm PlainForm::operator-() const {
    PlainForm r = *this;
    for (auto& [mask, c] : r.terms_) c = -c;
    return r;
}

PlainForm operator+(const PlainForm& a, const PlainForm& b) {
    PlainForm r = a;
    for (const auto& [mask, c] : b.terms_) r.add(mask, c);
    return r;
}

PlainForm operator-(const PlainForm& a, const PlainForm& b) { return a + (-b); }

PlainForm PlainForm::scaled(const Expression& c) const {
    PlainForm r;
    for (const auto& [mask, e] : terms_) r.add(mask, c * e);
    return r;
}

PlainForm wedge(const PlainForm& a, const PlainForm& b) {
    PlainForm r;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            if (ma & mb) continue;
            int swaps = 0;
            for (std::uint32_t rest = mb; rest; rest &= rest - 1) {
                int j = std::countr_zero(rest);
                swaps += std::popcount(ma >> (j + 1));
            }
            Expression c = ca * cb;
            r += PlainForm::monomial(ma | mb, (swaps & 1) ? -c : c);
        }
    }
    return r;
}

PlainForm partial(const CoordinateSet& z, int k, const PlainForm& f) {
    PlainForm r;
    for (const auto& [mask, c] : f.terms()) r += PlainForm::monomial(mask, partial_derivative(c, z.atom(k)));
    return r;
}

PlainForm exterior_d(const CoordinateSet& z, const PlainForm& f) {
    PlainForm r;
    for (int k = 0; k < z.size(); ++k) r += wedge(PlainForm::dz(k), partial(z, k, f));
    return r;
}

PlainForm contract(int k, const PlainForm& f) {
    PlainForm r;
    std::uint32_t bit = 1u << k;
    for (const auto& [mask, c] : f.terms()) {
        if (!(mask & bit)) continue;
        int before = std::popcount(mask & (bit - 1));
        r += PlainForm::monomial(mask & ~bit, (before & 1) ? -c : c);
    }
    return r;
}

std::string to_string(const CoordinateSet& z, const SymbolTable& names, const PlainForm& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mask, c] : f.terms()) {
        if (!first) out += " + ";
        first = false;
        out += "(" + to_string(c, names) + ")";
        std::string gens;
        for (int k = 0; k < z.size(); ++k)
            if (mask & (1u << k)) gens += (gens.empty() ? "" : "^") + ("d" + names.atom_name(z.atom(k)));
        if (!gens.empty()) out += " * " + gens;
    }
    return out;
}

TangentValuedForm::TangentValuedForm(int size, int degree) : degree_(degree), comps_(static_cast<std::size_t>(size)) {}

TangentValuedForm TangentValuedForm::vector_field(std::vector<Expression> components) {
    TangentValuedForm t(static_cast<int>(components.size()), 0);
    for (std::size_t k = 0; k < components.size(); ++k) t.comps_[k] = PlainForm(components[k]);
    return t;
}

TangentValuedForm TangentValuedForm::identity(int size) {
    TangentValuedForm t(size, 1);
    for (int k = 0; k < size; ++k) t.comps_[k] = PlainForm::dz(k);
    return t;
}

void TangentValuedForm::set(int mu, PlainForm f) {
    if (!f.is_zero() && f.degree() != degree_)
        throw Error(ErrorCode::ValidationError, "component degree does not match the tangent-valued form");
    comps_.at(mu) = std::move(f);
}

bool TangentValuedForm::is_zero() const {
    for (const auto& c : comps_)
        if (!c.is_zero()) return false;
    return true;
}

TangentValuedForm TangentValuedForm::operator-() const {
    TangentValuedForm r = *this;
    for (auto& c : r.comps_) c = -c;
    return r;
}

namespace {

void check_compatible(const TangentValuedForm& a, const TangentValuedForm& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::ModelMismatch, "tangent-valued forms on different coordinate sets");
}

}  // namespace

TangentValuedForm operator+(const TangentValuedForm& a, const TangentValuedForm& b) {
    check_compatible(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree_ != b.degree_) throw Error(ErrorCode::ValidationError, "adding tangent-valued forms of different degree");
    TangentValuedForm r = a;
    for (int k = 0; k < a.size(); ++k) r.comps_[k] += b.comps_[k];
    return r;
}

TangentValuedForm operator-(const TangentValuedForm& a, const TangentValuedForm& b) { return a + (-b); }

bool operator==(const TangentValuedForm& a, const TangentValuedForm& b) {
    if (a.is_zero() && b.is_zero()) return a.size() == b.size();
    return a.degree_ == b.degree_ && a.comps_ == b.comps_;
}

TangentValuedForm TangentValuedForm::scaled(const Rational& c) const {
    TangentValuedForm r = *this;
    for (auto& f : r.comps_) f = f.scaled(Expression(c));
    return r;
}

TangentValuedForm fn_bracket(const CoordinateSet& z, const TangentValuedForm& phi, const TangentValuedForm& sigma) {
    check_compatible(phi, sigma);
    int n = z.size();
    if (phi.size() != n) throw Error(ErrorCode::ModelMismatch, "tangent-valued form does not match the coordinate set");
    int r = phi.degree(), s = sigma.degree();
    if (r + s > n) throw Error(ErrorCode::DegreeOverflow, "bracket degree exceeds the number of coordinates");
    bool odd_r = (r & 1) != 0;
    std::vector<PlainForm> dphi(n), dsigma(n);
    for (int nu = 0; nu < n; ++nu) {
        dphi[nu] = exterior_d(z, phi[nu]);
        dsigma[nu] = exterior_d(z, sigma[nu]);
    }
    TangentValuedForm out(n, r + s);
    for (int mu = 0; mu < n; ++mu) {
        PlainForm acc;
        for (int nu = 0; nu < n; ++nu) {
            acc += wedge(phi[nu], partial(z, nu, sigma[mu]));
            acc -= wedge(partial(z, nu, phi[mu]), sigma[nu]);
            PlainForm extra = wedge(contract(nu, phi[mu]), dsigma[nu]) + wedge(dphi[nu], contract(nu, sigma[mu]));
            acc += odd_r ? -extra : extra;
        }
        out.set(mu, std::move(acc));
    }
    return out;
}

TangentValuedForm nijenhuis_differential(const CoordinateSet& z, const TangentValuedForm& theta,
                                         const TangentValuedForm& psi) {
    return fn_bracket(z, theta, psi);
}

std::string to_string(const CoordinateSet& z, const SymbolTable& names, const TangentValuedForm& f) {
    std::string out;
    for (int mu = 0; mu < f.size(); ++mu) {
        if (f[mu].is_zero()) continue;
        out += "d/d" + names.atom_name(z.atom(mu)) + ": " + to_string(z, names, f[mu]) + "\n";
    }
    return out.empty() ? "0\n" : out;
}

}  // namespace jetvar
