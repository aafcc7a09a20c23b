#include <cmath>
#include <numbers>

#include "doctest.h"
#include "jetvar/connections.hpp"
#include "jetvar/error.hpp"
#include "jetvar/random.hpp"

using namespace jetvar;

namespace {

Connection random_connection(const JetModel& m, RandomInputs& gen) {
    Connection c = zero_connection(m);
    for (auto& row : c.comps)
        for (auto& e : row) e = gen.order_zero_expression();
    return c;
}

bool all_zero(const std::vector<Expression>& v) {
    for (const auto& e : v)
        if (!e.is_zero()) return false;
    return true;
}

}  // namespace

TEST_CASE("curvature examples") {
    JetModel m2(2, {"y"}, {}, {}, {"t", "x"});
    CHECK(curvature(m2, zero_connection(m2)).is_zero());
    JetModel m1(1, {"y"}, {}, {}, {"x"});
    Connection g1 = zero_connection(m1);
    g1.comps[0][0] = m1.parse("y");
    CHECK(curvature(m1, g1).is_zero());
    Connection g = zero_connection(m2);
    g.comps[0][0] = m2.parse("y");
    g.comps[0][1] = m2.parse("t*y");
    TwoFormComponents r = curvature(m2, g);
    CHECK(r.at(0, 0, 1) == m2.parse("y"));
    CHECK(r.at(0, 1, 0) == m2.parse("-y"));
    CHECK(r.at(0, 0, 0).is_zero());
    CHECK_THROWS_AS(r.at(1, 0, 1), Error);
}

TEST_CASE("curvature is half the self-bracket") {
    JetModel m(2, {"y"}, {}, {}, {"t", "x"});
    CoordinateSet z = fibred_coordinates(m);
    for (int seed = 1; seed <= 6; ++seed) {
        RandomInputs gen(m, static_cast<std::uint64_t>(seed));
        Connection g = random_connection(m, gen);
        TangentValuedForm gf = connection_form(m, g);
        CHECK(fn_bracket(z, gf, gf).scaled(Rational(1, 2)) == vertical_two_form(m, curvature(m, g)));
    }
}

TEST_CASE("soldered curvature and torsion examples") {
    JetModel m(2, {"y"}, {}, {}, {"t", "x"});
    SolderingForm s = zero_connection(m);
    CHECK(soldered_curvature(m, s).is_zero());
    s.comps[0][0] = m.parse("t*x");
    s.comps[0][1] = m.parse("x^2");
    CHECK(soldered_curvature(m, s).is_zero());
    s.comps[0][0] = m.parse("y");
    s.comps[0][1] = m.parse("y^2");
    CHECK(soldered_curvature(m, s).at(0, 0, 1) == m.parse("y^2"));

    Connection g = zero_connection(m);
    g.comps[0][0] = m.parse("x");
    CHECK(torsion(m, g, zero_connection(m)).is_zero());
    SolderingForm c = zero_connection(m);
    c.comps[0][0] = Expression(1);
    c.comps[0][1] = m.parse("t");
    CHECK(torsion(m, g, c).at(0, 0, 1) == Expression(1));
}

TEST_CASE("torsion, shift relations and Bianchi identities") {
    JetModel m(2, {"y"}, {}, {}, {"t", "x"});
    CoordinateSet z = fibred_coordinates(m);
    for (int seed = 1; seed <= 6; ++seed) {
        RandomInputs gen(m, static_cast<std::uint64_t>(40 + seed));
        Connection g = random_connection(m, gen);
        SolderingForm s = random_connection(m, gen);
        CAPTURE(seed);
        CHECK(fn_bracket(z, connection_form(m, g), soldering_form(m, s)) == vertical_two_form(m, torsion(m, g, s)));
        CHECK(torsion_shift_residual(m, g, s).is_zero());
        CHECK(curvature_shift_residual(m, g, s).is_zero());
        CHECK(curvature_shift_residual(m, zero_connection(m), s).is_zero());
        CHECK(curvature_shift_residual(m, g, zero_connection(m)).is_zero());
        CHECK(first_bianchi_residual(m, g, s).is_zero());
    }
    JetModel m3(3, {"u", "v"}, {}, {}, {"t", "x", "z"});
    CoordinateSet z3 = fibred_coordinates(m3);
    RandomOptions opts;
    opts.max_terms = 2;
    for (int seed = 1; seed <= 3; ++seed) {
        RandomInputs gen(m3, static_cast<std::uint64_t>(seed), opts);
        Connection g = random_connection(m3, gen);
        std::vector<Expression> res = second_bianchi_residual(m3, g);
        CHECK(res.size() == 2);
        CHECK(all_zero(res));
        CHECK(fn_bracket(z3, connection_form(m3, g), vertical_two_form(m3, curvature(m3, g))).is_zero());
    }
}

TEST_CASE("connection validation") {
    JetModel m(1, {"y"}, {}, {}, {"x"});
    Connection g = zero_connection(m);
    g.comps[0][0] = m.parse("y[;x]");
    CHECK_THROWS_AS(validate_connection(m, g), Error);
    g.comps[0][0] = m.parse("x*y");
    CHECK_NOTHROW(validate_connection(m, g));
}

TEST_CASE("christoffel symbols") {
    JetModel e2(2, {}, {}, {}, {"x", "y"});
    Metric flat = make_metric(e2, {{Expression(1), Expression(0)}, {Expression(0), Expression(1)}});
    WorldConnection g0 = christoffel(e2, flat);
    for (int l = 0; l < 2; ++l)
        for (int n = 0; n < 2; ++n)
            for (int mu = 0; mu < 2; ++mu) CHECK(g0.at(l, n, mu).is_zero());

    JetModel s2(2, {}, {}, {}, {"th", "ph"});
    Expression s = sin(s2.parse("th")), c = cos(s2.parse("th"));
    Metric sphere = make_metric(s2, {{Expression(1), Expression(0)}, {Expression(0), s * s}});
    WorldConnection g = christoffel(s2, sphere);
    CHECK(g.at(0, 1, 1) == -(c * inverse(s)));
    CHECK(g.at(1, 1, 0) == -(c * inverse(s)));
    CHECK(g.at(1, 0, 1) == s * c);
    CHECK(g.at(0, 0, 0).is_zero());
    CHECK(g.is_symmetric());
    CHECK(all_zero(metricity_residual(s2, sphere, g)));

    JetModel e1(1, {}, {}, {}, {"x"});
    Metric conf = make_metric(e1, {{exp(e1.parse("x"))}});
    CHECK(christoffel(e1, conf).at(0, 0, 0) == Expression(Rational(-1, 2)));

    CHECK_THROWS_AS(make_metric(e2, {{Expression(1), Expression(1)}, {Expression(1), Expression(1)}}), Error);
    try {
        make_metric(e2, {{Expression(1), Expression(0)}, {Expression(0), Expression(0)}});
        CHECK(false);
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::SingularMetric);
    }
    JetModel e5(5, {}, {}, {}, {});
    std::vector<std::vector<Expression>> id5(5, std::vector<Expression>(5));
    for (int k = 0; k < 5; ++k) id5[k][k] = Expression(1);
    try {
        make_metric(e5, id5);
        CHECK(false);
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::DimensionTooLarge);
    }
    CHECK_THROWS_AS(make_metric(e2, {{Expression(1), e2.parse("x")}, {Expression(0), Expression(1)}}), Error);
}

TEST_CASE("metricity for random metrics") {
    JetModel m(3, {}, {}, {}, {"t", "x", "z"});
    for (int seed = 1; seed <= 4; ++seed) {
        RandomInputs gen(m, static_cast<std::uint64_t>(seed));
        std::vector<std::vector<Expression>> g(3, std::vector<Expression>(3));
        for (int k = 0; k < 3; ++k) g[k][k] = exp(gen.base_expression());
        Metric metric = make_metric(m, g);
        CHECK(all_zero(metricity_residual(m, metric, christoffel(m, metric))));
    }
    // a non-diagonal constant metric and a polynomial one
    Metric nd = make_metric(m, {{Expression(2), Expression(1), Expression(0)},
                                {Expression(1), Expression(3), Expression(0)},
                                {Expression(0), Expression(0), m.parse("x^2+1")}});
    CHECK(all_zero(metricity_residual(m, nd, christoffel(m, nd))));
    CHECK(nd.inverse[0][0] == Expression(Rational(3, 5)));
    CHECK(nd.inverse[0][1] == Expression(Rational(-1, 5)));
    Metric coupled = make_metric(m, {{Expression(1), m.parse("x"), Expression(0)},
                                     {m.parse("x"), Expression(2), Expression(0)},
                                     {Expression(0), Expression(0), Expression(1)}});
    CHECK(all_zero(metricity_residual(m, coupled, christoffel(m, coupled))));
}

TEST_CASE("world curvature and Ricci tensor of the sphere") {
    JetModel s2(2, {}, {}, {}, {"th", "ph"});
    Expression s = sin(s2.parse("th"));
    Metric sphere = make_metric(s2, {{Expression(1), Expression(0)}, {Expression(0), s * s}});
    WorldCurvature r = world_curvature(s2, christoffel(s2, sphere));
    CHECK(!r.at(0, 1, 0, 1).is_zero());
    CHECK(r.at(0, 1, 0, 1) == -r.at(1, 0, 0, 1));
    auto ric = ricci(r);

    // Independent oracle: Christoffel and curvature by finite differences of the metric.
    auto metric = [](double th, int i, int j) { return i != j ? 0.0 : (i == 0 ? 1.0 : std::sin(th) * std::sin(th)); };
    auto gamma = [&](double th, int l, int nu, int mu) {
        double h = 1e-5, acc = 0;
        auto dg = [&](int k, int a, int b) { return k != 0 ? 0.0 : (metric(th + h, a, b) - metric(th - h, a, b)) / (2 * h); };
        for (int rho = 0; rho < 2; ++rho)
            acc += (nu == rho ? 1.0 / metric(th, nu, nu) : 0.0) * (dg(l, rho, mu) + dg(mu, rho, l) - dg(rho, l, mu));
        return -0.5 * acc;
    };
    double th = 0.7;
    for (int mu = 0; mu < 2; ++mu)
        for (int b = 0; b < 2; ++b) {
            double oracle = 0;
            for (int l = 0; l < 2; ++l) {
                double h = 1e-4;
                double dl = l == 0 ? (gamma(th + h, mu, l, b) - gamma(th - h, mu, l, b)) / (2 * h) : 0.0;
                double dm = mu == 0 ? (gamma(th + h, l, l, b) - gamma(th - h, l, l, b)) / (2 * h) : 0.0;
                double quad = 0;
                for (int c = 0; c < 2; ++c) quad += gamma(th, l, c, b) * gamma(th, mu, l, c) - gamma(th, mu, c, b) * gamma(th, l, l, c);
                oracle += 0.5 * (dl - dm + quad);
            }
            NumericPoint p{{s2.base_atom(0), th}, {s2.base_atom(1), 0.3}};
            CHECK(evaluate(ric[mu][b], p) == doctest::Approx(oracle).epsilon(1e-6));
            CHECK(evaluate(ric[mu][b], p) == doctest::Approx(-0.5 * metric(th, mu, b)).epsilon(1e-9));
        }
    JetModel e1(1, {}, {}, {}, {"x"});
    WorldConnection g1(1);
    g1.set(0, 0, 0, e1.parse("x^2"));
    CHECK(ricci(world_curvature(e1, g1))[0][0].is_zero());
}

TEST_CASE("geodesics") {
    JetModel e2(2, {}, {}, {}, {"x", "y"});
    JetModel te2 = tangent_bundle_model(e2);
    CHECK(te2.field_name(0) == "x_dot");
    auto flat_rhs = geodesic_rhs(te2, WorldConnection(2));
    auto line = integrate_geodesic(te2, flat_rhs, {0.5, -1}, {2, 3}, 1e-3, 1000);
    CHECK(std::abs(line.back().x[0] - 2.5) <= 1e-9);
    CHECK(std::abs(line.back().x[1] - 2.0) <= 1e-9);

    JetModel s2(2, {}, {}, {}, {"th", "ph"});
    Expression s = sin(s2.parse("th"));
    Metric sphere = make_metric(s2, {{Expression(1), Expression(0)}, {Expression(0), s * s}});
    JetModel ts2 = tangent_bundle_model(s2);
    auto rhs = geodesic_rhs(ts2, christoffel(s2, sphere));
    double half_pi = std::numbers::pi / 2;
    auto equator = integrate_geodesic(ts2, rhs, {half_pi, 0}, {0, 1}, 1e-3, 2000);
    for (const auto& sample : equator) CHECK(std::abs(sample.x[0] - half_pi) <= 1e-6);

    // tilted great circle stays in the plane through the origin
    auto embed = [](const std::vector<double>& x) {
        return std::array<double, 3>{std::sin(x[0]) * std::cos(x[1]), std::sin(x[0]) * std::sin(x[1]), std::cos(x[0])};
    };
    auto path = integrate_geodesic(ts2, rhs, {half_pi, 0}, {0.4, 1}, 1e-3, 1500);
    // normal = p0 × v0 with p0 = (1,0,0), v0 = (0, 1, -0.4)
    std::array<double, 3> normal{0, 0.4, 1};
    for (const auto& sample : path) {
        auto p = embed(sample.x);
        CHECK(std::abs(p[0] * normal[0] + p[1] * normal[1] + p[2] * normal[2]) <= 1e-6);
    }
    auto fast = integrate_geodesic(ts2, rhs, {half_pi, 0}, {0.8, 2}, 5e-4, 1500);
    CHECK(std::abs(fast.back().x[0] - path.back().x[0]) <= 1e-6);
    CHECK(std::abs(fast.back().x[1] - path.back().x[1]) <= 1e-6);
}

TEST_CASE("Cartan connection") {
    JetModel e2(2, {}, {}, {}, {"x", "y"});
    JetModel t = tangent_bundle_model(e2);
    Connection a = cartan_connection(t, WorldConnection(2));
    CHECK(a.at(0, 0) == Expression(1));
    CHECK(a.at(0, 1).is_zero());
    CHECK(a.at(1, 1) == Expression(1));

    WorldConnection g(2);
    RandomInputs gen(e2, 9);
    for (int l = 0; l < 2; ++l)
        for (int n = 0; n < 2; ++n)
            for (int mu = 0; mu < 2; ++mu) g.set(l, n, mu, gen.base_expression());
    Connection cart = cartan_connection(t, g);
    for (int mu = 0; mu < 2; ++mu)
        for (int l = 0; l < 2; ++l)
            for (int nu = 0; nu < 2; ++nu) {
                Expression lin = cart.at(mu, l) - Expression(mu == l ? 1 : 0);
                CHECK(partial_derivative(partial_derivative(lin, t.jet_atom(nu)), t.jet_atom(nu)).is_zero());
            }
    TwoFormComponents tc = torsion(t, cart, canonical_soldering(t));
    WorldConnection wt = world_torsion(g);
    for (int i = 0; i < 2; ++i) CHECK(tc.at(i, 0, 1) == wt.at(1, i, 0));
    CHECK(tc == torsion(t, linear_connection(t, g), canonical_soldering(t)));
}

TEST_CASE("canonical lifts") {
    JetModel x2(2, {}, {}, {}, {"x", "y"});
    JetModel t10 = tensor_bundle_model(x2, 1, 0);
    ContactDerivation d0 = canonical_lift(t10, 1, 0, {Expression(1), Expression(0)});
    CHECK(d0.base(0) == Expression(1));
    CHECK(d0.field(0).is_zero());
    CHECK(d0.field(1).is_zero());
    ContactDerivation l = canonical_lift(t10, 1, 0, {x2.parse("y"), Expression(0)});
    CHECK(l.field(0) == t10.parse("y_dot"));
    CHECK(l.field(1).is_zero());
    JetModel t01 = tensor_bundle_model(x2, 0, 1);
    ContactDerivation ld = canonical_lift(t01, 0, 1, {x2.parse("y"), Expression(0)});
    CHECK(ld.field(0).is_zero());
    CHECK(ld.field(1) == t01.parse("-t_0"));

    int types[][2] = {{1, 0}, {0, 1}, {1, 1}, {0, 2}, {2, 0}};
    for (auto& ty : types) {
        JetModel tm = tensor_bundle_model(x2, ty[0], ty[1]);
        RandomInputs gen(x2, static_cast<std::uint64_t>(ty[0] * 3 + ty[1]));
        std::vector<Expression> tau{gen.base_expression(), gen.base_expression()};
        std::vector<Expression> eta{gen.base_expression(), gen.base_expression()};
        std::vector<Expression> lie(2);
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu)
                lie[mu] += tau[nu] * partial_derivative(eta[mu], x2.base_atom(nu)) -
                           eta[nu] * partial_derivative(tau[mu], x2.base_atom(nu));
        ContactDerivation lhs = canonical_lift(tm, ty[0], ty[1], lie);
        ContactDerivation rhs = bracket(tm, canonical_lift(tm, ty[0], ty[1], tau), canonical_lift(tm, ty[0], ty[1], eta), 0);
        CHECK(same_up_to_order(tm, lhs, rhs, 0));
    }
}

TEST_CASE("gauge algebra validation") {
    CHECK_NOTHROW(GaugeAlgebra::su2().validate());
    GaugeAlgebra g = GaugeAlgebra::su2();
    CHECK(g.c(2, 1, 0) == Rational(-1));
    GaugeAlgebra bad(3);
    bad.set(2, 0, 1, 1);  // [e0,e1] = e2, [e0,e2] = e0
    bad.set(0, 0, 2, 1);
    CHECK_THROWS_AS(bad.validate(), Error);
    CHECK_THROWS_AS(bad.set(0, 1, 1, 1), Error);
}

TEST_CASE("field strength") {
    JetModel m(2, {}, {}, {}, {"t", "x"});
    GaugeAlgebra u1 = GaugeAlgebra::abelian(1);
    PrincipalConnectionField a{{m.parse("x^2*t"), m.parse("sin(t)")}};
    TwoFormComponents f = strength(m, u1, a);
    CHECK(f.at(0, 0, 1) == m.parse("cos(t) - 2*x*t"));
    CHECK(strength(m, u1, {{Expression(0), Expression(0)}}).is_zero());
    GaugeAlgebra su2 = GaugeAlgebra::su2();
    PrincipalConnectionField b(3, std::vector<Expression>(2));
    b[0][0] = Expression(1);
    b[1][1] = Expression(1);
    TwoFormComponents fb = strength(m, su2, b);
    CHECK(fb.at(2, 0, 1) == Expression(1));
    CHECK(fb.at(0, 0, 1).is_zero());
    CHECK(fb.at(1, 0, 1).is_zero());
    try {
        strength(m, su2, a);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::AlgebraMismatch);
    }
}

TEST_CASE("principal vector fields") {
    JetModel base(2, {}, {}, {}, {"t", "x"});
    JetModel gm = gauge_field_model(base, 1);
    GaugeAlgebra u1 = GaugeAlgebra::abelian(1);
    ContactDerivation u = principal_vector_field(gm, u1, {Expression(0), Expression(0)}, {Expression(5)});
    CHECK(u.is_zero());
    ContactDerivation shift = principal_vector_field(gm, u1, {Expression(0), Expression(0)}, {base.parse("t^2*x")});
    CHECK(shift.field(gauge_slot(gm, 0, 0)) == base.parse("2*t*x"));
    CHECK(shift.field(gauge_slot(gm, 0, 1)) == base.parse("t^2"));

    GaugeAlgebra su2 = GaugeAlgebra::su2();
    JetModel g3 = gauge_field_model(base, 3);
    for (int seed = 1; seed <= 4; ++seed) {
        RandomInputs gen(base, static_cast<std::uint64_t>(seed));
        std::vector<Expression> xb{gen.base_expression(), gen.base_expression()};
        std::vector<Expression> xa{gen.base_expression(), gen.base_expression(), gen.base_expression()};
        std::vector<Expression> eb{gen.base_expression(), gen.base_expression()};
        std::vector<Expression> ea{gen.base_expression(), gen.base_expression(), gen.base_expression()};
        std::vector<Expression> bb(2), ba(3);
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu)
                bb[mu] += xb[nu] * partial_derivative(eb[mu], base.base_atom(nu)) -
                          eb[nu] * partial_derivative(xb[mu], base.base_atom(nu));
        for (int r = 0; r < 3; ++r) {
            for (int nu = 0; nu < 2; ++nu)
                ba[r] += xb[nu] * partial_derivative(ea[r], base.base_atom(nu)) -
                         eb[nu] * partial_derivative(xa[r], base.base_atom(nu));
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q) ba[r] += (xa[p] * ea[q]).scaled(su2.c(r, p, q));
        }
        ContactDerivation lhs = principal_vector_field(g3, su2, bb, ba);
        ContactDerivation rhs =
            bracket(g3, principal_vector_field(g3, su2, xb, xa), principal_vector_field(g3, su2, eb, ea), 0);
        CHECK(same_up_to_order(g3, lhs, rhs, 0));
    }
}

TEST_CASE("jet splitting") {
    JetModel base(2, {}, {}, {}, {"t", "x"});
    GaugeAlgebra su2 = GaugeAlgebra::su2();
    JetModel g3 = gauge_field_model(base, 3);
    JetSplitting s = jet_splitting(g3, su2);
    for (int r = 0; r < 3; ++r)
        for (int l = 0; l < 2; ++l)
            for (int mu = 0; mu < 2; ++mu)
                CHECK(s.f_part[r][l][mu] + s.s_part[r][l][mu] ==
                      Expression(2) * g3.y(gauge_slot(g3, r, mu), MultiIndex{l}));

    // abelian with symmetric jets
    JetModel g1 = gauge_field_model(base, 1);
    JetSplitting ab = jet_splitting(g1, GaugeAlgebra::abelian(1));
    AtomMap symmetric{{g1.jet_atom(gauge_slot(g1, 0, 1), MultiIndex{0}), g1.parse("t")},
                      {g1.jet_atom(gauge_slot(g1, 0, 0), MultiIndex{1}), g1.parse("t")}};
    CHECK(substitute(ab.f_part[0][0][1], symmetric).is_zero());

    // on a section, the F-part is the strength
    RandomInputs gen(base, 3);
    PrincipalConnectionField a(3, std::vector<Expression>(2));
    AtomMap section;
    for (int r = 0; r < 3; ++r)
        for (int mu = 0; mu < 2; ++mu) {
            a[r][mu] = gen.base_expression();
            section[g3.jet_atom(gauge_slot(g3, r, mu))] = a[r][mu];
            for (int l = 0; l < 2; ++l)
                section[g3.jet_atom(gauge_slot(g3, r, mu), MultiIndex{l})] =
                    partial_derivative(a[r][mu], base.base_atom(l));
        }
    TwoFormComponents f = strength(base, su2, a);
    for (int r = 0; r < 3; ++r) CHECK(substitute(s.f_part[r][0][1], section) == f.at(r, 0, 1));
}
