#include "doctest.h"
#include "jetvar/error.hpp"
#include "jetvar/random.hpp"
#include "jetvar/variational.hpp"

using namespace jetvar;

namespace {

ContactDerivation base_field(const JetModel& m, int lambda, const Expression& c = Expression(1)) {
    ContactDerivation v(m);
    v.base(lambda) = c;
    return v;
}

ContactDerivation field_shift(const JetModel& m, int slot, const Expression& c) {
    ContactDerivation v(m, m.slot_is_odd(slot) != (c.parity() == Parity::Odd));
    v.field(slot) = c;
    return v;
}

}  // namespace

TEST_CASE("Euler-Lagrange examples") {
    JetModel m1(1, {"y"}, {}, {}, {"x"});
    CHECK(euler_lagrange(m1, make_lagrangian(m1, m1.parse("1/2*y[;x]^2")))[0] == m1.parse("-y[;xx]"));
    JetModel m2(2, {"y"}, {}, {}, {"t", "x"});
    auto sg = euler_lagrange(m2, make_lagrangian(m2, m2.parse("1/2*(y[;t]^2 - y[;x]^2) - (1 - cos(y))")));
    CHECK(sg[0] == m2.parse("-y[;tt] + y[;xx] - sin(y)"));
    Expression div = total_derivative(m1, m1.parse("y^2"), 0);
    CHECK(is_variationally_trivial(m1, make_lagrangian(m1, div)));
    CHECK(is_variationally_trivial(m1, make_lagrangian(m1, total_derivative(m1, m1.parse("y*y[;x]"), 0))));
    CHECK(!is_variationally_trivial(m1, make_lagrangian(m1, m1.parse("1/2*y[;x]^2"))));
    CHECK(is_variationally_trivial(m1, make_lagrangian(m1, Expression(1))));
    JetModel g(1, {"y"}, {"c"}, {}, {"x"});
    CHECK_THROWS_AS(make_lagrangian(g, g.parse("c")), Error);
}

TEST_CASE("graded Euler-Lagrange") {
    JetModel m(1, {}, {"c", "e"}, {}, {"x"});
    // first-order odd kinetic term
    Lagrangian L = make_lagrangian(m, m.parse("c*e[;x]"));
    auto e = euler_lagrange(m, L);
    CHECK(e[0] == m.parse("e[;x]"));
    CHECK(e[1] == m.parse("c[;x]"));
    CHECK(e[0].parity() == Parity::Odd);
}

TEST_CASE("EL kills divergences") {
    JetModel m(2, {"u"}, {"c"}, {}, {"t", "x"});
    RandomOptions opts;
    opts.max_order = 2;
    opts.functions = true;
    for (int seed = 1; seed <= 10; ++seed) {
        RandomInputs gen(m, static_cast<std::uint64_t>(seed), opts);
        Expression e = gen.expression(Parity::Even);
        Lagrangian L = make_lagrangian(m, total_derivative(m, e, seed % 2));
        CHECK(is_variationally_trivial(m, L));
    }
}

TEST_CASE("Lepage equivalent") {
    JetModel m(1, {"y"}, {}, {}, {"x"});
    LepageForm xi = lepage(m, make_lagrangian(m, m.parse("1/2*y[;x]^2")));
    CHECK(xi.first[0][0] == m.parse("y[;x]"));
    CHECK(horizontalize(xi.form) == multiply_left(m.parse("1/2*y[;x]^2"), volume_form(m)));
    LepageForm constant = lepage(m, make_lagrangian(m, m.parse("x^2")));
    CHECK(constant.form == multiply_left(m.parse("x^2"), volume_form(m)));
    JetModel m2(2, {"y"}, {}, {}, {"t", "x"});
    Lagrangian first = make_lagrangian(m2, m2.parse("y[;t]*y[;x] + sin(y)"));
    LepageForm f = lepage(m2, first);
    DifferentialForm expected = multiply_left(first.density, volume_form(m2));
    for (int l = 0; l < 2; ++l)
        expected += wedge(DifferentialForm::theta(m2, 0),
                          multiply_left(partial_derivative(first.density, m2.jet_atom(0, MultiIndex{l})),
                                        volume_form_lambda(m2, l)));
    CHECK(f.form == expected);
    Lagrangian mixed = make_lagrangian(m2, m2.parse("y[;tx]^2"));
    LepageForm s = lepage(m2, mixed);
    CHECK(s.second[0][0][1] == m2.parse("y[;tx]"));
    CHECK(s.second[0][1][0] == m2.parse("y[;tx]"));
    CHECK_THROWS_AS(lepage(m, make_lagrangian(m, m.parse("y[;xxx]^2"))), Error);
}

TEST_CASE("Lie derivative of a Lagrangian") {
    JetModel m(1, {"y"}, {}, {}, {"x"});
    Lagrangian L = make_lagrangian(m, m.parse("1/2*y[;x]^2"));
    CHECK(lie_derivative_lagrangian(m, base_field(m, 0), L).is_zero());
    CHECK(lie_derivative_lagrangian(m, ContactDerivation(m), L).is_zero());
    CHECK(lie_derivative_lagrangian(m, field_shift(m, 0, m.parse("y")), L) == m.parse("y[;x]^2"));
    CHECK(lie_derivative_lagrangian(m, base_field(m, 0, m.parse("x")), L) == m.parse("-1/2*y[;x]^2"));
}

TEST_CASE("symmetry classification") {
    JetModel m(1, {"y"}, {}, {}, {"x"});
    Lagrangian L = make_lagrangian(m, m.parse("1/2*y[;x]^2"));
    CHECK(check_symmetry(m, base_field(m, 0), L) == SymmetryKind::Exact);
    CHECK(check_symmetry(m, field_shift(m, 0, m.parse("y")), L) == SymmetryKind::None);
    CHECK(check_symmetry(m, base_field(m, 0, m.parse("x")), L) == SymmetryKind::None);
    // Galilean-type shift y -> y + x: L_ϑL = y_x is a divergence
    CHECK(check_symmetry(m, field_shift(m, 0, m.parse("x")), L) == SymmetryKind::Variational);
    try {
        check_symmetry(m, base_field(m, 0, m.parse("y")), L);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotProjectable);
    }
    CHECK(std::string(symmetry_kind_name(SymmetryKind::Variational)) == "variational");
}

TEST_CASE("Noether currents") {
    JetModel m(2, {"y"}, {}, {}, {"t", "x"});
    Lagrangian wave = make_lagrangian(m, m.parse("1/2*(y[;t]^2 - y[;x]^2)"));
    auto j = noether_current(m, base_field(m, 0), wave);
    CHECK(j[0] == m.parse("-1/2*y[;t]^2 - 1/2*y[;x]^2"));
    CHECK(j[1] == m.parse("y[;t]*y[;x]"));
    CHECK(conservation_residual(m, base_field(m, 0), wave).is_zero());
    auto zero = noether_current(m, ContactDerivation(m), wave);
    CHECK(zero[0].is_zero());
    CHECK(zero[1].is_zero());

    Lagrangian free = make_lagrangian(m, m.parse("1/2*(y[;t]^2 + y[;x]^2)"));
    ContactDerivation shift = field_shift(m, 0, Expression(1));
    auto js = noether_current(m, shift, free);
    CHECK(js[0] == m.parse("y[;t]"));
    CHECK(js[1] == m.parse("y[;x]"));
    CHECK(conservation_residual(m, shift, free).is_zero());
    CHECK(conservation_residual(m, ContactDerivation(m), free).is_zero());

    // linear over constants
    ContactDerivation combo = base_field(m, 0).scaled(Rational(3)) + base_field(m, 1).scaled(Rational(-2));
    auto jc = noether_current(m, combo, wave);
    auto j1 = noether_current(m, base_field(m, 1), wave);
    for (int mu = 0; mu < 2; ++mu) CHECK(jc[mu] == j[mu].scaled(Rational(3)) + j1[mu].scaled(Rational(-2)));
}

TEST_CASE("first variational formula") {
    JetModel m1(1, {"y"}, {}, {}, {"x"});
    Lagrangian L = make_lagrangian(m1, m1.parse("1/2*y[;x]^2"));
    CHECK(first_variational_residual(m1, base_field(m1, 0, m1.parse("x^2")), L).is_zero());
    CHECK(first_variational_residual(m1, field_shift(m1, 0, m1.parse("y*y[;x]")), L).is_zero());
    CHECK(first_variational_residual(m1, ContactDerivation(m1), L).is_zero());

    JetModel m(2, {"u"}, {"c"}, {}, {"t", "x"});
    RandomOptions opts;
    opts.max_order = 2;
    opts.max_terms = 2;
    for (int seed = 1; seed <= 12; ++seed) {
        RandomInputs gen(m, static_cast<std::uint64_t>(200 + seed), opts);
        Lagrangian lag = make_lagrangian(m, gen.expression(Parity::Even));
        RandomOptions vopts;
        vopts.max_order = 1;
        vopts.max_terms = 2;
        RandomInputs vgen(m, static_cast<std::uint64_t>(300 + seed), vopts);
        ContactDerivation v = vgen.contact_derivation(seed % 3 == 0);
        CAPTURE(seed);
        CHECK(first_variational_residual(m, v, lag).is_zero());
        CHECK(lie_derivative_lagrangian(m, v, lag) == lie_derivative_lagrangian_forms(m, v, lag));
        CHECK(conservation_residual(m, v, lag) == lie_derivative_lagrangian(m, v, lag));
    }
}
