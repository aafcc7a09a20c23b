#include "jetvar/random.hpp"

namespace jetvar {

RandomInputs::RandomInputs(const JetModel& model, std::uint64_t seed, RandomOptions opts)
    : model_(model), rng_(seed), opts_(opts) {}

int RandomInputs::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Atom RandomInputs::even_atom(int max_order) {
    int choices = model_.base_dim() + model_.even_count();
    if (choices == 0) return model_.base_atom(0);
    int k = integer(0, choices - 1);
    if (k < model_.base_dim() || model_.even_count() == 0) return model_.base_atom(k % model_.base_dim());
    int slot = k - model_.base_dim();
    int order = integer(0, max_order);
    auto jets = multi_indices_of_order(model_.base_dim(), order);
    return model_.jet_atom(slot, jets[integer(0, static_cast<int>(jets.size()) - 1)]);
}

Atom RandomInputs::odd_atom(int max_order) {
    int slot = model_.even_count() + integer(0, model_.odd_count() - 1);
    auto jets = multi_indices_of_order(model_.base_dim(), integer(0, max_order));
    return model_.jet_atom(slot, jets[integer(0, static_cast<int>(jets.size()) - 1)]);
}

Expression RandomInputs::expression(Parity parity) {
    bool odd_ok = opts_.use_odd && model_.odd_count() > 0;
    if (parity == Parity::Odd && !odd_ok) return {};
    Expression sum;
    int terms = integer(1, opts_.max_terms);
    for (int t = 0; t < terms; ++t) {
        Expression term(integer(-3, 3) == 0 ? 1 : integer(-3, 3));
        if (term.is_zero()) term = Expression(1);
        int factors = integer(0, opts_.max_factors);
        for (int f = 0; f < factors; ++f) term *= Expression(even_atom(opts_.max_order));
        int odd_count = 0;
        if (odd_ok) {
            odd_count = integer(0, 2);
            if (parity == Parity::Even && (odd_count & 1)) odd_count = 0;
            if (parity == Parity::Odd) odd_count = 1;
        }
        for (int f = 0; f < odd_count; ++f) term *= Expression(odd_atom(opts_.max_order));
        if (opts_.functions && integer(0, 3) == 0) term *= sin(Expression(even_atom(0)));
        sum += term;
    }
    return sum;
}

Expression RandomInputs::order_zero_expression() {
    Expression sum;
    int terms = integer(1, opts_.max_terms);
    for (int t = 0; t < terms; ++t) {
        Expression term(integer(1, 3) * (integer(0, 1) ? 1 : -1));
        int factors = integer(0, opts_.max_factors);
        for (int f = 0; f < factors; ++f) term *= Expression(even_atom(0));
        sum += term;
    }
    return sum;
}

Expression RandomInputs::base_expression() {
    Expression sum;
    int terms = integer(1, opts_.max_terms);
    for (int t = 0; t < terms; ++t) {
        Expression term(integer(1, 3) * (integer(0, 1) ? 1 : -1));
        int factors = integer(0, opts_.max_factors);
        for (int f = 0; f < factors; ++f) term *= model_.x(integer(0, model_.base_dim() - 1));
        sum += term;
    }
    return sum;
}

Generator RandomInputs::generator() {
    int total = model_.base_dim() + model_.field_count();
    int k = integer(0, total - 1);
    if (k < model_.base_dim()) return Generator::dx(k);
    int slot = k - model_.base_dim();
    if (!opts_.use_odd && model_.slot_is_odd(slot)) return Generator::dx(integer(0, model_.base_dim() - 1));
    auto jets = multi_indices_of_order(model_.base_dim(), integer(0, opts_.max_order));
    FieldRef f = model_.field_at(slot);
    return Generator::theta(f.odd, f.index, jets[integer(0, static_cast<int>(jets.size()) - 1)]);
}

DifferentialForm RandomInputs::form(int degree, Parity parity) {
    DifferentialForm result;
    int terms = integer(1, opts_.max_terms);
    for (int t = 0; t < terms; ++t) {
        DifferentialForm piece(Expression(1));
        piece.attach(&model_);
        for (int g = 0; g < degree; ++g) {
            Generator gen = generator();
            DifferentialForm one = DifferentialForm::from_terms({{{GeneratorPower{gen, 1}}, Expression(1)}});
            piece = wedge(piece, one);
        }
        if (piece.is_zero()) continue;
        int gen_parity = jetvar::parity(piece.terms().front().gens);
        Parity want = parity == Parity::Mixed ? Parity::Even
                                              : (((parity == Parity::Odd) != (gen_parity == 1)) ? Parity::Odd : Parity::Even);
        Expression c = expression(want);
        if (c.is_zero()) continue;
        result += multiply_left(c, piece);
    }
    result.attach(&model_);
    return result;
}

ContactDerivation RandomInputs::contact_derivation(bool odd) {
    ContactDerivation v(model_, odd);
    Parity base_parity = odd ? Parity::Odd : Parity::Even;
    for (int l = 0; l < model_.base_dim(); ++l)
        if (integer(0, 1)) v.base(l) = expression(base_parity);
    for (int s = 0; s < model_.field_count(); ++s) {
        bool field_odd = model_.slot_is_odd(s) != odd;
        v.field(s) = expression(field_odd ? Parity::Odd : Parity::Even);
    }
    return v;
}

ContactDerivation RandomInputs::vector_field() {
    ContactDerivation v(model_);
    for (int l = 0; l < model_.base_dim(); ++l) v.base(l) = base_expression();
    for (int s = 0; s < model_.even_count(); ++s) v.field(s) = order_zero_expression();
    return v;
}

}  // namespace jetvar
