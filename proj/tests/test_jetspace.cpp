#include "doctest.h"
#include "jetvar/error.hpp"
#include "jetvar/jet.hpp"

using namespace jetvar;

TEST_CASE("multiindex_add") {
    CHECK(multiindex_add(0, MultiIndex{}, 3) == MultiIndex{0});
    CHECK(multiindex_add(0, MultiIndex{1, 2}, 3) == MultiIndex{0, 1, 2});
    CHECK(multiindex_add(1, MultiIndex{1}, 3) == MultiIndex{1, 1});
    CHECK_THROWS_AS(multiindex_add(3, MultiIndex{}, 3), Error);
    CHECK(multi_indices_up_to(2, 2).size() == 6);
    CHECK(permutation_count(MultiIndex{0, 0, 1}) == 3);
}

TEST_CASE("total derivative examples") {
    JetModel m(1, {"y"}, {}, {}, {"x"});
    CHECK(total_derivative(m, m.parse("y"), 0) == m.parse("y[;x]"));
    CHECK(total_derivative(m, m.parse("x"), 0) == Expression(1));
    CHECK(total_derivative(m, m.parse("y*y[;x]"), 0) == m.parse("y[;x]^2 + y*y[;xx]"));
    JetModel m2(2, {"y"}, {}, {}, {"t", "x"});
    CHECK(total_derivative(m2, m2.parse("y"), MultiIndex{1, 0}) == m2.parse("y[;xt]"));
    CHECK(total_derivative(m2, m2.parse("x*y"), MultiIndex{}) == m2.parse("x*y"));
    Expression e = m2.parse("sin(t*y[;x])*y^2 + exp(y[;t])");
    CHECK(total_derivative(m2, total_derivative(m2, e, 0), 1) ==
          total_derivative(m2, total_derivative(m2, e, 1), 0));
}

TEST_CASE("vector field prolongation examples") {
    JetModel m(1, {"y"}, {}, {}, {"x"});
    ContactDerivation dx(m);
    dx.base(0) = Expression(1);
    ContactDerivation j = prolong_vector_field(m, dx, 2);
    CHECK(j.find_jet(0, MultiIndex{0})->is_zero());
    CHECK(j.find_jet(0, MultiIndex{0, 0})->is_zero());

    ContactDerivation scale(m);
    scale.field(0) = m.parse("y");
    ContactDerivation js = prolong_vector_field(m, scale, 1);
    CHECK(*js.find_jet(0, MultiIndex{0}) == m.parse("y[;x]"));

    ContactDerivation zero(m);
    CHECK(prolong_vector_field(m, zero, 2).is_zero());

    ContactDerivation bad(m);
    bad.base(0) = m.parse("y");
    CHECK_THROWS_AS(prolong_vector_field(m, bad, 1), Error);
}

TEST_CASE("contact derivation prolongation examples") {
    JetModel m(1, {"y"}, {}, {}, {"x"});
    ContactDerivation v(m);
    v.field(0) = m.parse("y[;x]");
    ContactDerivation j = prolong_contact_derivation(m, v, 1);
    CHECK(*j.find_jet(0, MultiIndex{0}) == m.parse("y[;xx]"));
    ContactDerivation c(m);
    c.field(0) = Expression(5);
    ContactDerivation jc = prolong_contact_derivation(m, c, 3);
    CHECK(jc.find_jet(0, MultiIndex{0, 0, 0})->is_zero());
}

TEST_CASE("first prolongation of a general projectable field") {
    // J^1 u: u^i_λ = d_λ u^i − y^i_μ ∂_λ u^μ
    JetModel m(2, {"y"}, {}, {}, {"t", "x"});
    ContactDerivation u(m);
    u.base(0) = m.parse("t*x");
    u.base(1) = m.parse("x^2");
    u.field(0) = m.parse("y^2*t");
    ContactDerivation j = prolong_vector_field(m, u, 1);
    Expression expected_t = m.parse("2*y*y[;t]*t + y^2 - y[;t]*x - y[;x]*0");
    CHECK(*j.find_jet(0, MultiIndex{0}) == expected_t);
    Expression expected_x = m.parse("2*y*y[;x]*t - y[;t]*t - y[;x]*2*x");
    CHECK(*j.find_jet(0, MultiIndex{1}) == expected_x);
}

TEST_CASE("prolongation is a Lie algebra morphism") {
    JetModel m(2, {"y", "z"}, {}, {}, {"t", "x"});
    ContactDerivation u(m), v(m);
    u.base(0) = m.parse("x");
    u.field(0) = m.parse("y*z + t");
    u.field(1) = m.parse("sin(y)");
    v.base(1) = m.parse("t^2");
    v.field(0) = m.parse("z^2");
    v.field(1) = m.parse("x*y");
    for (int k = 1; k <= 2; ++k) {
        ContactDerivation w = prolong_vector_field(m, bracket(m, u, v, 0), k);
        ContactDerivation rhs = bracket(m, prolong_vector_field(m, u, k), prolong_vector_field(m, v, k), k);
        CHECK(same_up_to_order(m, w, rhs, k));
    }
}

TEST_CASE("model validation") {
    JetModel m(1, {"y"});
    CHECK(m.base_dim() == 1);
    CHECK(m.field_count() == 1);
    CHECK_THROWS_AS(JetModel(1, {"y", "y"}), Error);
    CHECK_THROWS_AS(m.validate(Expression(Atom::even_jet(3))), Error);
    m.y(0, MultiIndex{0, 0, 0});
    CHECK(m.max_order() >= 3);
}
