#include <algorithm>
#include <random>

#include "doctest.h"
#include "jetvar/error.hpp"
#include "jetvar/tangent_forms.hpp"

using namespace jetvar;

namespace {

CoordinateSet coords(int n) {
    std::vector<Atom> atoms;
    for (int k = 0; k < n; ++k) atoms.push_back(Atom::base(k));
    return CoordinateSet(atoms);
}

Expression random_poly(std::mt19937_64& rng, const CoordinateSet& z) {
    std::uniform_int_distribution<int> coef(-3, 3), factors(0, 2), pick(0, z.size() - 1), terms(1, 3);
    Expression sum;
    int t = terms(rng);
    for (int i = 0; i < t; ++i) {
        Expression term(coef(rng));
        int f = factors(rng);
        for (int j = 0; j < f; ++j) term *= Expression(z.atom(pick(rng)));
        sum += term;
    }
    return sum;
}

TangentValuedForm random_tvf(std::mt19937_64& rng, const CoordinateSet& z, int degree) {
    int n = z.size();
    TangentValuedForm t(n, degree);
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        if (std::popcount(m) == degree) masks.push_back(m);
    std::uniform_int_distribution<std::size_t> pick(0, masks.size() - 1);
    for (int mu = 0; mu < n; ++mu) {
        PlainForm f;
        for (int i = 0; i < 2; ++i) f += PlainForm::monomial(masks[pick(rng)], random_poly(rng, z));
        if (degree == 0) f = PlainForm(random_poly(rng, z));
        t.set(mu, f);
    }
    return t;
}

// Fully antisymmetric component φ_{λ_1..λ_r} of a form Σ_sorted φ_I dz^I.
Expression component(const PlainForm& f, std::vector<int> idx) {
    int swaps = 0;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            if (idx[i] == idx[j]) return {};
            if (idx[i] > idx[j]) ++swaps;
        }
    std::uint32_t mask = 0;
    for (int k : idx) mask |= 1u << k;
    Expression c = f.coefficient(mask);
    return (swaps & 1) ? -c : c;
}

long long factorial(int k) { return k <= 1 ? 1 : k * factorial(k - 1); }

// Index-sum evaluation of the coordinate display of the bracket.
TangentValuedForm display_bracket(const CoordinateSet& z, const TangentValuedForm& phi, const TangentValuedForm& sigma) {
    int n = z.size(), r = phi.degree(), s = sigma.degree(), d = r + s;
    TangentValuedForm out(n, d);
    Rational norm = Rational(1) / Rational(factorial(r) * factorial(s));
    std::vector<int> lam(static_cast<std::size_t>(d), 0);
    for (int mu = 0; mu < n; ++mu) {
        PlainForm acc;
        std::fill(lam.begin(), lam.end(), 0);
        while (true) {
            std::vector<int> a(lam.begin(), lam.begin() + r), b(lam.begin() + r, lam.end());
            Expression x;
            for (int nu = 0; nu < n; ++nu) {
                x += component(phi[nu], a) * partial_derivative(component(sigma[mu], b), z.atom(nu));
                x -= component(sigma[nu], b) * partial_derivative(component(phi[mu], a), z.atom(nu));
                if (r > 0) {
                    std::vector<int> a2(a.begin(), a.end() - 1);
                    a2.push_back(nu);
                    x -= Expression(r) * component(phi[mu], a2) *
                         partial_derivative(component(sigma[nu], b), z.atom(a.back()));
                }
                if (s > 0) {
                    std::vector<int> b2 = b;
                    b2[0] = nu;
                    x += Expression(s) * component(sigma[mu], b2) *
                         partial_derivative(component(phi[nu], a), z.atom(b.front()));
                }
            }
            std::vector<int> sorted = lam;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && !x.is_zero()) {
                std::uint32_t mask = 0;
                for (int k : lam) mask |= 1u << k;
                // component() with a unit coefficient gives the permutation sign
                Expression sign = component(PlainForm::monomial(mask, Expression(1)), lam);
                acc += PlainForm::monomial(mask, (x * sign).scaled(norm));
            }
            int pos = d - 1;
            while (pos >= 0 && ++lam[pos] == n) lam[pos--] = 0;
            if (pos < 0) break;
        }
        out.set(mu, acc);
    }
    return out;
}

}  // namespace

TEST_CASE("plain form basics") {
    CoordinateSet z = coords(3);
    CHECK(wedge(PlainForm::dz(0), PlainForm::dz(0)).is_zero());
    CHECK(wedge(PlainForm::dz(2), PlainForm::dz(0)) == -wedge(PlainForm::dz(0), PlainForm::dz(2)));
    PlainForm f = PlainForm::monomial(0b011, Expression(Atom::base(2)));
    CHECK(exterior_d(z, f) == PlainForm::monomial(0b111, Expression(1)));
    CHECK(exterior_d(z, exterior_d(z, PlainForm(Expression(Atom::base(0)) * Expression(Atom::base(1))))).is_zero());
    CHECK(contract(1, f) == PlainForm::monomial(0b001, -Expression(Atom::base(2))));
}

TEST_CASE("bracket of vector fields is the Lie bracket") {
    CoordinateSet z = coords(2);
    Expression x0(Atom::base(0)), x1(Atom::base(1));
    auto u = TangentValuedForm::vector_field({x1, Expression(0)});
    auto v = TangentValuedForm::vector_field({Expression(0), x0 * x0});
    auto b = fn_bracket(z, u, v);
    // u^ν∂_νv^μ − v^ν∂_νu^μ
    CHECK(b == TangentValuedForm::vector_field({-(x0 * x0), Expression(2) * x0 * x1}));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 5; ++i) {
        auto p = random_tvf(rng, z, 0), q = random_tvf(rng, z, 0);
        TangentValuedForm expected(2, 0);
        for (int mu = 0; mu < 2; ++mu) {
            Expression e;
            for (int nu = 0; nu < 2; ++nu) {
                Expression pn = p[nu].coefficient(0), qn = q[nu].coefficient(0);
                e += pn * partial_derivative(q[mu].coefficient(0), z.atom(nu)) -
                     qn * partial_derivative(p[mu].coefficient(0), z.atom(nu));
            }
            expected.set(mu, PlainForm(e));
        }
        CHECK(fn_bracket(z, p, q) == expected);
    }
}

TEST_CASE("identity form brackets to zero") {
    for (int n = 1; n <= 4; ++n) {
        CoordinateSet z = coords(n);
        if (n >= 2) CHECK(fn_bracket(z, TangentValuedForm::identity(n), TangentValuedForm::identity(n)).is_zero());
    }
    CHECK_THROWS_AS(fn_bracket(coords(1), TangentValuedForm::identity(1), TangentValuedForm::identity(1)), Error);
}

TEST_CASE("bracket matches the coordinate display") {
    CoordinateSet z = coords(3);
    std::mt19937_64 rng(11);
    for (int r = 0; r <= 2; ++r)
        for (int s = 0; s + r <= 3; ++s)
            for (int trial = 0; trial < 3; ++trial) {
                auto p = random_tvf(rng, z, r), q = random_tvf(rng, z, s);
                CAPTURE(r);
                CAPTURE(s);
                CHECK(fn_bracket(z, p, q) == display_bracket(z, p, q));
            }
}

TEST_CASE("graded antisymmetry and Jacobi identity") {
    CoordinateSet z = coords(3);
    std::mt19937_64 rng(5);
    for (int r = 0; r <= 2; ++r)
        for (int s = 0; s + r <= 3; ++s) {
            auto p = random_tvf(rng, z, r), q = random_tvf(rng, z, s);
            auto pq = fn_bracket(z, p, q), qp = fn_bracket(z, q, p);
            CHECK((((r * s) & 1) ? pq - qp : pq + qp).is_zero());
        }
    int degs[][3] = {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
    for (auto& d : degs) {
        auto p = random_tvf(rng, z, d[0]), q = random_tvf(rng, z, d[1]), t = random_tvf(rng, z, d[2]);
        auto lhs = fn_bracket(z, p, fn_bracket(z, q, t));
        auto second = fn_bracket(z, q, fn_bracket(z, p, t));
        auto rhs = fn_bracket(z, fn_bracket(z, p, q), t) + (((d[0] * d[1]) & 1) ? -second : second);
        CHECK(lhs == rhs);
        // Nijenhuis differential as a graded derivation of the bracket
        auto dq = nijenhuis_differential(z, p, q), dt = nijenhuis_differential(z, p, t);
        auto second2 = fn_bracket(z, q, dt);
        CHECK(nijenhuis_differential(z, p, fn_bracket(z, q, t)) ==
              fn_bracket(z, dq, t) + (((d[0] * d[1]) & 1) ? -second2 : second2));
    }
}

TEST_CASE("Nijenhuis differential along a vector field") {
    CoordinateSet z = coords(3);
    std::mt19937_64 rng(3);
    auto u = random_tvf(rng, z, 0);
    auto sigma = random_tvf(rng, z, 1);
    TangentValuedForm expected(3, 1);
    for (int mu = 0; mu < 3; ++mu) {
        PlainForm acc;
        for (int l = 0; l < 3; ++l) {
            Expression c;
            for (int nu = 0; nu < 3; ++nu) {
                c += u[nu].coefficient(0) * partial_derivative(sigma[mu].coefficient(1u << l), z.atom(nu));
                c -= sigma[nu].coefficient(1u << l) * partial_derivative(u[mu].coefficient(0), z.atom(nu));
                c += sigma[mu].coefficient(1u << nu) * partial_derivative(u[nu].coefficient(0), z.atom(l));
            }
            acc += PlainForm::monomial(1u << l, c);
        }
        expected.set(mu, acc);
    }
    CHECK(nijenhuis_differential(z, u, sigma) == expected);
    CHECK(nijenhuis_differential(z, sigma, TangentValuedForm(3, 1)).is_zero());
}
