#include "jetvar/jet.hpp"

#include "jetvar/error.hpp"

namespace jetvar {

Expression total_derivative(const JetModel& model, const Expression& e, int lambda) {
    if (lambda < 0 || lambda >= model.base_dim())
        throw Error(ErrorCode::IndexOutOfRange, "base index out of range");
    model.validate(e);
    return apply_derivation(
        e,
        [&](const Atom& a) -> Expression {
            if (a.kind == AtomKind::Base) return a.index == lambda ? Expression(1) : Expression();
            if (a.is_jet()) {
                MultiIndex next = a.jet.plus(lambda);
                model.note_order(next.order());
                return Expression(a.with_jet(next));
            }
            return {};
        },
        false);
}

Expression total_derivative(const JetModel& model, const Expression& e, const MultiIndex& index) {
    Expression r = e;
    for (int lambda : index) r = total_derivative(model, r, lambda);
    if (index.empty()) model.validate(r);
    return r;
}

ContactDerivation::ContactDerivation(const JetModel& model, bool odd)
    : odd_(odd), base_(model.base_dim()), field_(model.field_count()) {}

void ContactDerivation::set_jet(int slot, const MultiIndex& jet, Expression value) {
    if (jet.empty()) {
        field_.at(slot) = std::move(value);
        return;
    }
    jets_[{slot, jet}] = std::move(value);
    order_ = std::max(order_, jet.order());
}

const Expression* ContactDerivation::find_jet(int slot, const MultiIndex& jet) const {
    auto it = jets_.find({slot, jet});
    return it == jets_.end() ? nullptr : &it->second;
}

bool ContactDerivation::is_zero() const {
    for (const auto& e : base_)
        if (!e.is_zero()) return false;
    for (const auto& e : field_)
        if (!e.is_zero()) return false;
    for (const auto& [k, e] : jets_)
        if (!e.is_zero()) return false;
    return true;
}

bool ContactDerivation::is_projectable() const {
    for (const auto& e : base_) {
        bool ok = true;
        for_each_atom(e, [&](const Atom& a) {
            if (a.is_jet()) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

ContactDerivation ContactDerivation::scaled(const Rational& c) const {
    ContactDerivation r = *this;
    for (auto& e : r.base_) e = e.scaled(c);
    for (auto& e : r.field_) e = e.scaled(c);
    for (auto& [k, e] : r.jets_) e = e.scaled(c);
    return r;
}

ContactDerivation operator+(const ContactDerivation& a, const ContactDerivation& b) {
    if (a.odd_ != b.odd_ || a.base_.size() != b.base_.size() || a.field_.size() != b.field_.size())
        throw Error(ErrorCode::ModelMismatch, "cannot add derivations of different shape or parity");
    ContactDerivation r = a;
    for (std::size_t i = 0; i < r.base_.size(); ++i) r.base_[i] += b.base_[i];
    for (std::size_t i = 0; i < r.field_.size(); ++i) r.field_[i] += b.field_[i];
    // Explicit jets only survive when both sides carry them.
    r.jets_.clear();
    r.order_ = 0;
    for (const auto& [k, e] : a.jets_) {
        auto it = b.jets_.find(k);
        if (it != b.jets_.end()) r.set_jet(k.first, k.second, e + it->second);
    }
    return r;
}

void check_parity(const JetModel& model, const ContactDerivation& v) {
    auto expect = [&](const Expression& e, bool odd_expected) {
        if (e.is_zero()) return;
        Parity p = e.parity();
        if (p != (odd_expected ? Parity::Odd : Parity::Even))
            throw Error(ErrorCode::ParityMismatch, "derivation component has the wrong Grassmann parity");
    };
    for (int l = 0; l < v.base_dim(); ++l) expect(v.base(l), v.odd());
    for (int s = 0; s < v.field_count(); ++s) expect(v.field(s), v.odd() != model.slot_is_odd(s));
}

Expression vertical_component(const JetModel& model, const ContactDerivation& v, int slot) {
    Expression r = v.field(slot);
    for (int mu = 0; mu < model.base_dim(); ++mu)
        if (!v.base(mu).is_zero()) r -= v.base(mu) * model.y(slot, MultiIndex{mu});
    return r;
}

Expression jet_component(const JetModel& model, const ContactDerivation& v, int slot, const MultiIndex& jet) {
    if (jet.empty()) return v.field(slot);
    if (const Expression* stored = v.find_jet(slot, jet)) return *stored;
    Expression r = total_derivative(model, vertical_component(model, v, slot), jet);
    for (int mu = 0; mu < model.base_dim(); ++mu)
        if (!v.base(mu).is_zero()) r += v.base(mu) * model.y(slot, jet.plus(mu));
    return r;
}

Expression apply(const JetModel& model, const ContactDerivation& v, const Expression& f) {
    return apply_derivation(
        f,
        [&](const Atom& a) -> Expression {
            if (a.kind == AtomKind::Base) return v.base(a.index);
            if (a.is_jet()) return jet_component(model, v, model.slot_of(a), a.jet);
            return {};
        },
        v.odd());
}

ContactDerivation prolong_contact_derivation(const JetModel& model, const ContactDerivation& v, int k) {
    ContactDerivation r = v;
    for (int slot = 0; slot < model.field_count(); ++slot) {
        for (const auto& jet : multi_indices_up_to(model.base_dim(), k)) {
            if (jet.empty()) continue;
            r.set_jet(slot, jet, jet_component(model, v, slot, jet));
        }
    }
    return r;
}

ContactDerivation prolong_vector_field(const JetModel& model, const ContactDerivation& u, int k) {
    if (!u.is_projectable())
        throw Error(ErrorCode::NotProjectable, "vector field base components must depend on base coordinates only");
    return prolong_contact_derivation(model, u, k);
}

ContactDerivation bracket(const JetModel& model, const ContactDerivation& u, const ContactDerivation& v, int k) {
    bool odd = u.odd() != v.odd();
    Rational sign = (u.odd() && v.odd()) ? Rational(-1) : Rational(1);
    ContactDerivation r(model, odd);
    auto comm = [&](const Expression& vz, const Expression& uz) {
        return apply(model, u, vz) - apply(model, v, uz).scaled(sign);
    };
    for (int l = 0; l < model.base_dim(); ++l) r.base(l) = comm(v.base(l), u.base(l));
    for (int slot = 0; slot < model.field_count(); ++slot) {
        for (const auto& jet : multi_indices_up_to(model.base_dim(), k)) {
            r.set_jet(slot, jet,
                      comm(jet_component(model, v, slot, jet), jet_component(model, u, slot, jet)));
        }
    }
    return r;
}

bool same_up_to_order(const JetModel& model, const ContactDerivation& a, const ContactDerivation& b, int k) {
    if (a.odd() != b.odd()) return false;
    for (int l = 0; l < model.base_dim(); ++l)
        if (!(a.base(l) == b.base(l))) return false;
    for (int slot = 0; slot < model.field_count(); ++slot)
        for (const auto& jet : multi_indices_up_to(model.base_dim(), k))
            if (!(jet_component(model, a, slot, jet) == jet_component(model, b, slot, jet))) return false;
    return true;
}

}  // namespace jetvar
