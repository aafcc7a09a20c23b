#include "jetvar/connections.hpp"

#include <cmath>
#include <functional>

#include "jetvar/error.hpp"

namespace jetvar {

namespace {

Expression d_base(const JetModel& m, const Expression& e, int lambda) { return partial_derivative(e, m.base_atom(lambda)); }
Expression d_fibre(const JetModel& m, const Expression& e, int j) { return partial_derivative(e, m.jet_atom(j)); }

int fibres(const JetModel& m) { return m.even_count(); }

void check_base_only(const Expression& e, const char* what) {
    for_each_atom(e, [&](const Atom& a) {
        if (a.is_jet()) throw Error(ErrorCode::ValidationError, std::string(what) + " must depend on base coordinates only");
    });
}

}  // namespace

Connection zero_connection(const JetModel& model) {
    Connection c;
    c.comps.assign(static_cast<std::size_t>(fibres(model)), std::vector<Expression>(static_cast<std::size_t>(model.base_dim())));
    return c;
}

void validate_connection(const JetModel& model, const Connection& c) {
    if (static_cast<int>(c.comps.size()) != fibres(model))
        throw Error(ErrorCode::ValidationError, "connection needs one row per fibre coordinate");
    for (const auto& row : c.comps) {
        if (static_cast<int>(row.size()) != model.base_dim())
            throw Error(ErrorCode::ValidationError, "connection needs one entry per base coordinate");
        for (const auto& e : row) {
            model.validate(e);
            for_each_atom(e, [](const Atom& a) {
                if (a.is_odd() || (a.is_jet() && a.jet.order() > 0))
                    throw Error(ErrorCode::ValidationError, "connection components must depend on x and y only");
            });
        }
    }
}

// ------------------------------------------------------------ two-forms

TwoFormComponents::TwoFormComponents(int count, int base_dim)
    : count_(count), n_(base_dim), data_(static_cast<std::size_t>(count * base_dim * (base_dim - 1) / 2)) {}

int TwoFormComponents::index(int lambda, int mu) const {
    // position of (λ, μ), λ < μ, in row-major upper-triangular order
    return lambda * (2 * n_ - lambda - 1) / 2 + (mu - lambda - 1);
}

Expression TwoFormComponents::at(int i, int lambda, int mu) const {
    if (i < 0 || i >= count_ || lambda < 0 || mu < 0 || lambda >= n_ || mu >= n_)
        throw Error(ErrorCode::IndexOutOfRange, "two-form component index out of range");
    if (lambda == mu) return {};
    int pairs = n_ * (n_ - 1) / 2;
    if (lambda < mu) return data_[static_cast<std::size_t>(i * pairs + index(lambda, mu))];
    return -data_[static_cast<std::size_t>(i * pairs + index(mu, lambda))];
}

void TwoFormComponents::set(int i, int lambda, int mu, Expression value) {
    if (lambda >= mu) throw Error(ErrorCode::IndexOutOfRange, "two-form components are stored for lambda < mu");
    int pairs = n_ * (n_ - 1) / 2;
    data_.at(static_cast<std::size_t>(i * pairs + index(lambda, mu))) = std::move(value);
}

bool TwoFormComponents::is_zero() const {
    for (const auto& e : data_)
        if (!e.is_zero()) return false;
    return true;
}

TwoFormComponents operator+(const TwoFormComponents& a, const TwoFormComponents& b) {
    TwoFormComponents r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_.at(k);
    return r;
}

TwoFormComponents operator-(const TwoFormComponents& a, const TwoFormComponents& b) {
    TwoFormComponents r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_.at(k);
    return r;
}

// ------------------------------------------------------------ connections

TwoFormComponents curvature(const JetModel& model, const Connection& gamma) {
    int n = model.base_dim(), m = fibres(model);
    TwoFormComponents r(m, n);
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < n; ++l)
            for (int mu = l + 1; mu < n; ++mu) {
                Expression e = d_base(model, gamma.at(i, mu), l) - d_base(model, gamma.at(i, l), mu);
                for (int j = 0; j < m; ++j)
                    e += gamma.at(j, l) * d_fibre(model, gamma.at(i, mu), j) -
                         gamma.at(j, mu) * d_fibre(model, gamma.at(i, l), j);
                r.set(i, l, mu, e);
            }
    return r;
}

TwoFormComponents soldered_curvature(const JetModel& model, const SolderingForm& sigma) {
    int n = model.base_dim(), m = fibres(model);
    TwoFormComponents r(m, n);
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < n; ++l)
            for (int mu = l + 1; mu < n; ++mu) {
                Expression e;
                for (int j = 0; j < m; ++j)
                    e += sigma.at(j, l) * d_fibre(model, sigma.at(i, mu), j) -
                         sigma.at(j, mu) * d_fibre(model, sigma.at(i, l), j);
                r.set(i, l, mu, e);
            }
    return r;
}

TwoFormComponents torsion(const JetModel& model, const Connection& gamma, const SolderingForm& sigma) {
    int n = model.base_dim(), m = fibres(model);
    auto t = [&](int i, int l, int mu) {
        Expression e = d_base(model, sigma.at(i, mu), l);
        for (int j = 0; j < m; ++j)
            e += gamma.at(j, l) * d_fibre(model, sigma.at(i, mu), j) - d_fibre(model, gamma.at(i, l), j) * sigma.at(j, mu);
        return e;
    };
    TwoFormComponents r(m, n);
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < n; ++l)
            for (int mu = l + 1; mu < n; ++mu) r.set(i, l, mu, t(i, l, mu) - t(i, mu, l));
    return r;
}

namespace {

Connection sum(const Connection& a, const Connection& b) {
    Connection r = a;
    for (std::size_t i = 0; i < r.comps.size(); ++i)
        for (std::size_t l = 0; l < r.comps[i].size(); ++l) r.comps[i][l] += b.comps.at(i).at(l);
    return r;
}

}  // namespace

TwoFormComponents curvature_shift_residual(const JetModel& model, const Connection& gamma, const SolderingForm& sigma) {
    return curvature(model, sum(gamma, sigma)) - curvature(model, gamma) - soldered_curvature(model, sigma) -
           torsion(model, gamma, sigma);
}

TwoFormComponents torsion_shift_residual(const JetModel& model, const Connection& gamma, const SolderingForm& sigma) {
    TwoFormComponents rho = soldered_curvature(model, sigma);
    return torsion(model, sum(gamma, sigma), sigma) - torsion(model, gamma, sigma) - rho - rho;
}

std::vector<Expression> second_bianchi_residual(const JetModel& model, const Connection& gamma) {
    int n = model.base_dim(), m = fibres(model);
    TwoFormComponents r = curvature(model, gamma);
    auto term = [&](int i, int l, int mu, int nu) {
        Expression e = d_base(model, r.at(i, mu, nu), l);
        for (int j = 0; j < m; ++j)
            e += gamma.at(j, l) * d_fibre(model, r.at(i, mu, nu), j) - d_fibre(model, gamma.at(i, l), j) * r.at(j, mu, nu);
        return e;
    };
    std::vector<Expression> out;
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < n; ++l)
            for (int mu = l + 1; mu < n; ++mu)
                for (int nu = mu + 1; nu < n; ++nu)
                    out.push_back(term(i, l, mu, nu) + term(i, mu, nu, l) + term(i, nu, l, mu));
    return out;
}

CoordinateSet fibred_coordinates(const JetModel& model) {
    std::vector<Atom> atoms;
    for (int l = 0; l < model.base_dim(); ++l) atoms.push_back(model.base_atom(l));
    for (int i = 0; i < fibres(model); ++i) atoms.push_back(model.jet_atom(i));
    return CoordinateSet(atoms);
}

TangentValuedForm connection_form(const JetModel& model, const Connection& gamma) {
    int n = model.base_dim(), m = fibres(model);
    TangentValuedForm t(n + m, 1);
    for (int l = 0; l < n; ++l) t.set(l, PlainForm::dz(l));
    for (int i = 0; i < m; ++i) {
        PlainForm f;
        for (int l = 0; l < n; ++l) f += PlainForm::monomial(1u << l, gamma.at(i, l));
        t.set(n + i, f);
    }
    return t;
}

TangentValuedForm soldering_form(const JetModel& model, const SolderingForm& sigma) {
    int n = model.base_dim(), m = fibres(model);
    TangentValuedForm t(n + m, 1);
    for (int i = 0; i < m; ++i) {
        PlainForm f;
        for (int l = 0; l < n; ++l) f += PlainForm::monomial(1u << l, sigma.at(i, l));
        t.set(n + i, f);
    }
    return t;
}

TangentValuedForm vertical_two_form(const JetModel& model, const TwoFormComponents& x) {
    int n = model.base_dim(), m = fibres(model);
    TangentValuedForm t(n + m, 2);
    for (int i = 0; i < m; ++i) {
        PlainForm f;
        for (int l = 0; l < n; ++l)
            for (int mu = l + 1; mu < n; ++mu) f += PlainForm::monomial((1u << l) | (1u << mu), x.at(i, l, mu));
        t.set(n + i, f);
    }
    return t;
}

TangentValuedForm first_bianchi_residual(const JetModel& model, const Connection& gamma, const SolderingForm& sigma) {
    CoordinateSet z = fibred_coordinates(model);
    TangentValuedForm t = vertical_two_form(model, torsion(model, gamma, sigma));
    TangentValuedForm r = vertical_two_form(model, curvature(model, gamma));
    return fn_bracket(z, connection_form(model, gamma), t) - fn_bracket(z, r, soldering_form(model, sigma));
}

// ------------------------------------------------------------ world

namespace {

using Matrix = std::vector<std::vector<Expression>>;

Matrix minor_of(const Matrix& a, int row, int col) {
    Matrix r;
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
        if (i == row) continue;
        std::vector<Expression> line;
        for (int j = 0; j < static_cast<int>(a.size()); ++j)
            if (j != col) line.push_back(a[i][j]);
        r.push_back(std::move(line));
    }
    return r;
}

Expression determinant(const Matrix& a) {
    if (a.empty()) return Expression(1);
    if (a.size() == 1) return a[0][0];
    Expression d;
    for (int j = 0; j < static_cast<int>(a.size()); ++j) {
        if (a[0][j].is_zero()) continue;
        Expression term = a[0][j] * determinant(minor_of(a, 0, j));
        d += (j & 1) ? -term : term;
    }
    return d;
}

}  // namespace

Metric make_metric(const JetModel& model, std::vector<std::vector<Expression>> g) {
    int n = static_cast<int>(g.size());
    if (n != model.base_dim()) throw Error(ErrorCode::ValidationError, "metric dimension must equal the base dimension");
    if (n > 4) throw Error(ErrorCode::DimensionTooLarge, "metric inversion supports n <= 4");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(g[i].size()) != n) throw Error(ErrorCode::ValidationError, "metric must be square");
        for (int j = 0; j < n; ++j) {
            model.validate(g[i][j]);
            check_base_only(g[i][j], "metric components");
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!(g[i][j] == g[j][i])) throw Error(ErrorCode::ValidationError, "metric must be symmetric");
    Metric m;
    m.inverse.assign(static_cast<std::size_t>(n), std::vector<Expression>(static_cast<std::size_t>(n)));
    // invert each block of coupled coordinates separately
    std::vector<int> block(static_cast<std::size_t>(n), -1);
    int blocks = 0;
    for (int i = 0; i < n; ++i) {
        if (block[i] >= 0) continue;
        std::vector<int> stack{i};
        block[i] = blocks;
        while (!stack.empty()) {
            int k = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j)
                if (block[j] < 0 && !g[k][j].is_zero()) {
                    block[j] = blocks;
                    stack.push_back(j);
                }
        }
        ++blocks;
    }
    for (int b = 0; b < blocks; ++b) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (block[i] == b) idx.push_back(i);
        Matrix sub;
        for (int i : idx) {
            std::vector<Expression> row;
            for (int j : idx) row.push_back(g[i][j]);
            sub.push_back(std::move(row));
        }
        Expression det = determinant(sub);
        if (det.is_zero()) throw Error(ErrorCode::SingularMetric, "metric determinant vanishes");
        Expression inv_det = inverse(det);
        int k = static_cast<int>(idx.size());
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                Expression cof = k == 1 ? Expression(1) : determinant(minor_of(sub, j, i));
                m.inverse[idx[i]][idx[j]] = ((i + j) & 1 ? -cof : cof) * inv_det;
            }
    }
    m.g = std::move(g);
    return m;
}

WorldConnection::WorldConnection(int n) : n_(n), data_(static_cast<std::size_t>(n * n * n)) {}

const Expression& WorldConnection::at(int lambda, int nu, int mu) const {
    return data_.at(static_cast<std::size_t>((lambda * n_ + nu) * n_ + mu));
}

void WorldConnection::set(int lambda, int nu, int mu, Expression v) {
    data_.at(static_cast<std::size_t>((lambda * n_ + nu) * n_ + mu)) = std::move(v);
}

WorldConnection WorldConnection::negated() const {
    WorldConnection r = *this;
    for (auto& e : r.data_) e = -e;
    return r;
}

bool WorldConnection::is_symmetric() const {
    for (int l = 0; l < n_; ++l)
        for (int nu = 0; nu < n_; ++nu)
            for (int mu = l + 1; mu < n_; ++mu)
                if (!(at(l, nu, mu) == at(mu, nu, l))) return false;
    return true;
}

WorldConnection christoffel(const JetModel& model, const Metric& g) {
    int n = g.dim();
    WorldConnection gamma(n);
    Rational minus_half(-1, 2);
    for (int l = 0; l < n; ++l)
        for (int mu = l; mu < n; ++mu) {
            std::vector<Expression> lowered(static_cast<std::size_t>(n));
            for (int rho = 0; rho < n; ++rho)
                lowered[rho] = d_base(model, g.g[rho][mu], l) + d_base(model, g.g[rho][l], mu) -
                               d_base(model, g.g[l][mu], rho);
            for (int nu = 0; nu < n; ++nu) {
                Expression e;
                for (int rho = 0; rho < n; ++rho)
                    if (!g.inverse[nu][rho].is_zero()) e += g.inverse[nu][rho] * lowered[rho];
                e = e.scaled(minus_half);
                gamma.set(mu, nu, l, e);
                gamma.set(l, nu, mu, std::move(e));
            }
        }
    return gamma;
}

std::vector<Expression> metricity_residual(const JetModel& model, const Metric& g, const WorldConnection& gamma) {
    int n = g.dim();
    std::vector<Expression> out;
    for (int l = 0; l < n; ++l)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Expression e = d_base(model, g.inverse[a][b], l);
                for (int c = 0; c < n; ++c) e -= g.inverse[a][c] * gamma.at(l, b, c) + g.inverse[b][c] * gamma.at(l, a, c);
                out.push_back(clear_denominators(e));
            }
    return out;
}

WorldCurvature::WorldCurvature(int n) : n_(n), data_(static_cast<std::size_t>(n * n * n * n)) {}

const Expression& WorldCurvature::at(int lambda, int mu, int alpha, int beta) const {
    return data_.at(static_cast<std::size_t>(((lambda * n_ + mu) * n_ + alpha) * n_ + beta));
}

void WorldCurvature::set(int lambda, int mu, int alpha, int beta, Expression v) {
    data_.at(static_cast<std::size_t>(((lambda * n_ + mu) * n_ + alpha) * n_ + beta)) = std::move(v);
}

WorldCurvature world_curvature(const JetModel& model, const WorldConnection& gamma) {
    int n = gamma.dim();
    WorldCurvature r(n);
    for (int l = 0; l < n; ++l)
        for (int mu = l + 1; mu < n; ++mu)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    Expression e = d_base(model, gamma.at(mu, a, b), l) - d_base(model, gamma.at(l, a, b), mu);
                    for (int c = 0; c < n; ++c)
                        e += gamma.at(l, c, b) * gamma.at(mu, a, c) - gamma.at(mu, c, b) * gamma.at(l, a, c);
                    r.set(mu, l, a, b, -e);
                    r.set(l, mu, a, b, std::move(e));
                }
    return r;
}

std::vector<std::vector<Expression>> ricci(const WorldCurvature& r) {
    int n = r.dim();
    std::vector<std::vector<Expression>> out(static_cast<std::size_t>(n), std::vector<Expression>(static_cast<std::size_t>(n)));
    for (int mu = 0; mu < n; ++mu)
        for (int b = 0; b < n; ++b) {
            Expression e;
            for (int l = 0; l < n; ++l) e += r.at(l, mu, l, b);
            out[mu][b] = e.scaled(Rational(1, 2));
        }
    return out;
}

WorldConnection world_torsion(const WorldConnection& gamma) {
    int n = gamma.dim();
    WorldConnection t(n);
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu)
            for (int l = 0; l < n; ++l) t.set(mu, nu, l, gamma.at(mu, nu, l) - gamma.at(l, nu, mu));
    return t;
}

JetModel tangent_bundle_model(const JetModel& base) { return tensor_bundle_model(base, 1, 0); }

namespace {

std::vector<int> decode(int code, int n, int len) {
    std::vector<int> idx(static_cast<std::size_t>(len));
    for (int k = len - 1; k >= 0; --k) {
        idx[k] = code % n;
        code /= n;
    }
    return idx;
}

int encode(const std::vector<int>& idx, int n) {
    int code = 0;
    for (int k : idx) code = code * n + k;
    return code;
}

int ipow(int b, int e) {
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

JetModel tensor_bundle_model(const JetModel& base, int upper, int lower) {
    int n = base.base_dim();
    if (upper < 0 || lower < 0 || upper + lower == 0 || upper + lower > 4)
        throw Error(ErrorCode::ValidationError, "tensor type must satisfy 1 <= m + k <= 4");
    std::vector<std::string> names;
    int total = ipow(n, upper + lower);
    for (int code = 0; code < total; ++code) {
        std::vector<int> idx = decode(code, n, upper + lower);
        if (upper == 1 && lower == 0) {
            names.push_back(base.base_name(idx[0]) + "_dot");
            continue;
        }
        std::string name = "t";
        for (int k = 0; k < upper; ++k) name += std::to_string(idx[k]);
        name += "_";
        for (int k = upper; k < upper + lower; ++k) name += std::to_string(idx[k]);
        names.push_back(name);
    }
    std::vector<std::string> params;
    for (int k = 0; k < base.param_count(); ++k) params.push_back(base.param_name(k));
    return JetModel(n, names, {}, params, base.base_names());
}

std::vector<Expression> geodesic_rhs(const JetModel& tangent, const WorldConnection& gamma) {
    int n = gamma.dim();
    std::vector<Expression> out;
    for (int nu = 0; nu < n; ++nu) {
        Expression e;
        for (int l = 0; l < n; ++l)
            for (int a = 0; a < n; ++a)
                if (!gamma.at(l, nu, a).is_zero()) e += gamma.at(l, nu, a) * tangent.y(l) * tangent.y(a);
        out.push_back(e);
    }
    return out;
}

std::vector<GeodesicSample> integrate_geodesic(const JetModel& tangent, const std::vector<Expression>& rhs,
                                               std::vector<double> x0, std::vector<double> v0, double dt, int steps) {
    int n = tangent.base_dim();
    auto accel = [&](const std::vector<double>& x, const std::vector<double>& v) {
        NumericPoint p;
        for (int k = 0; k < n; ++k) {
            p[tangent.base_atom(k)] = x[k];
            p[tangent.jet_atom(k)] = v[k];
        }
        std::vector<double> a(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) a[k] = evaluate(rhs[k], p);
        return a;
    };
    auto axpy = [n](const std::vector<double>& y, const std::vector<double>& d, double h) {
        std::vector<double> r = y;
        for (int k = 0; k < n; ++k) r[k] += h * d[k];
        return r;
    };
    std::vector<GeodesicSample> out;
    out.push_back({0.0, x0, v0});
    std::vector<double> x = std::move(x0), v = std::move(v0);
    for (int s = 0; s < steps; ++s) {
        auto k1x = v;
        auto k1v = accel(x, v);
        auto k2x = axpy(v, k1v, dt / 2);
        auto k2v = accel(axpy(x, k1x, dt / 2), k2x);
        auto k3x = axpy(v, k2v, dt / 2);
        auto k3v = accel(axpy(x, k2x, dt / 2), k3x);
        auto k4x = axpy(v, k3v, dt);
        auto k4v = accel(axpy(x, k3x, dt), k4x);
        for (int k = 0; k < n; ++k) {
            x[k] += dt / 6 * (k1x[k] + 2 * k2x[k] + 2 * k3x[k] + k4x[k]);
            v[k] += dt / 6 * (k1v[k] + 2 * k2v[k] + 2 * k3v[k] + k4v[k]);
        }
        out.push_back({dt * (s + 1), x, v});
    }
    return out;
}

Connection linear_connection(const JetModel& tangent, const WorldConnection& gamma) {
    int n = gamma.dim();
    Connection c = zero_connection(tangent);
    for (int mu = 0; mu < n; ++mu)
        for (int l = 0; l < n; ++l) {
            Expression e;
            for (int nu = 0; nu < n; ++nu)
                if (!gamma.at(l, mu, nu).is_zero()) e += gamma.at(l, mu, nu) * tangent.y(nu);
            c.comps[mu][l] = e;
        }
    return c;
}

SolderingForm canonical_soldering(const JetModel& tangent) {
    SolderingForm s = zero_connection(tangent);
    for (int mu = 0; mu < tangent.base_dim(); ++mu) s.comps[mu][mu] = Expression(1);
    return s;
}

Connection cartan_connection(const JetModel& tangent, const WorldConnection& gamma) {
    return sum(linear_connection(tangent, gamma), canonical_soldering(tangent));
}

ContactDerivation canonical_lift(const JetModel& tensor_model, int upper, int lower, const std::vector<Expression>& tau) {
    int n = tensor_model.base_dim();
    if (static_cast<int>(tau.size()) != n) throw Error(ErrorCode::ValidationError, "vector field needs one component per base coordinate");
    for (const auto& e : tau) check_base_only(e, "vector field components");
    if (tensor_model.even_count() != ipow(n, upper + lower))
        throw Error(ErrorCode::ModelMismatch, "model is not a tensor bundle of the requested type");
    ContactDerivation u(tensor_model);
    for (int mu = 0; mu < n; ++mu) u.base(mu) = tau[mu];
    int len = upper + lower;
    for (int slot = 0; slot < tensor_model.even_count(); ++slot) {
        std::vector<int> idx = decode(slot, n, len);
        Expression e;
        for (int p = 0; p < len; ++p) {
            for (int nu = 0; nu < n; ++nu) {
                std::vector<int> other = idx;
                other[p] = nu;
                Expression y = tensor_model.y(encode(other, n));
                if (p < upper) {
                    e += d_base(tensor_model, tau[idx[p]], nu) * y;
                } else {
                    e -= d_base(tensor_model, tau[nu], idx[p]) * y;
                }
            }
        }
        u.field(slot) = e;
    }
    return u;
}

// ---------------------------------------------------------------- gauge

GaugeAlgebra::GaugeAlgebra(int dim) : dim_(dim), c_(static_cast<std::size_t>(dim * dim * dim)) {}

const Rational& GaugeAlgebra::c(int r, int p, int q) const {
    if (r < 0 || p < 0 || q < 0 || r >= dim_ || p >= dim_ || q >= dim_)
        throw Error(ErrorCode::IndexOutOfRange, "structure constant index out of range");
    return c_[static_cast<std::size_t>((r * dim_ + p) * dim_ + q)];
}

void GaugeAlgebra::set(int r, int p, int q, const Rational& v) {
    if (r < 0 || p < 0 || q < 0 || r >= dim_ || p >= dim_ || q >= dim_)
        throw Error(ErrorCode::IndexOutOfRange, "structure constant index out of range");
    if (p == q && !v.is_zero()) throw Error(ErrorCode::ValidationError, "structure constants must be antisymmetric");
    c_[static_cast<std::size_t>((r * dim_ + p) * dim_ + q)] = v;
    c_[static_cast<std::size_t>((r * dim_ + q) * dim_ + p)] = -v;
}

void GaugeAlgebra::validate() const {
    for (int r = 0; r < dim_; ++r)
        for (int p = 0; p < dim_; ++p)
            for (int q = 0; q < dim_; ++q)
                if (!(c(r, p, q) == -c(r, q, p)))
                    throw Error(ErrorCode::ValidationError, "structure constants must be antisymmetric");
    // Σ_m c^m_{pq}c^s_{mr} + cyclic(p, q, r) = 0
    for (int p = 0; p < dim_; ++p)
        for (int q = 0; q < dim_; ++q)
            for (int r = 0; r < dim_; ++r)
                for (int s = 0; s < dim_; ++s) {
                    Rational sum;
                    for (int m = 0; m < dim_; ++m)
                        sum = sum + c(m, p, q) * c(s, m, r) + c(m, q, r) * c(s, m, p) + c(m, r, p) * c(s, m, q);
                    if (!sum.is_zero()) throw Error(ErrorCode::ValidationError, "structure constants violate the Jacobi identity");
                }
}

GaugeAlgebra GaugeAlgebra::abelian(int dim) { return GaugeAlgebra(dim); }

GaugeAlgebra GaugeAlgebra::su2() {
    GaugeAlgebra g(3);
    g.set(2, 0, 1, 1);
    g.set(0, 1, 2, 1);
    g.set(1, 2, 0, 1);
    return g;
}

TwoFormComponents strength(const JetModel& model, const GaugeAlgebra& algebra, const PrincipalConnectionField& a) {
    int n = model.base_dim(), d = algebra.dim();
    if (static_cast<int>(a.size()) != d) throw Error(ErrorCode::AlgebraMismatch, "connection rows must match the algebra dimension");
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::AlgebraMismatch, "connection needs one entry per base coordinate");
    TwoFormComponents f(d, n);
    for (int r = 0; r < d; ++r)
        for (int l = 0; l < n; ++l)
            for (int mu = l + 1; mu < n; ++mu) {
                Expression e = d_base(model, a[r][mu], l) - d_base(model, a[r][l], mu);
                for (int p = 0; p < d; ++p)
                    for (int q = 0; q < d; ++q)
                        if (!algebra.c(r, p, q).is_zero()) e += (a[p][l] * a[q][mu]).scaled(algebra.c(r, p, q));
                f.set(r, l, mu, e);
            }
    return f;
}

JetModel gauge_field_model(const JetModel& base, int algebra_dim) {
    std::vector<std::string> names;
    for (int r = 0; r < algebra_dim; ++r)
        for (int mu = 0; mu < base.base_dim(); ++mu) names.push_back("a" + std::to_string(r) + "_" + std::to_string(mu));
    std::vector<std::string> params;
    for (int k = 0; k < base.param_count(); ++k) params.push_back(base.param_name(k));
    return JetModel(base.base_dim(), names, {}, params, base.base_names());
}

int gauge_slot(const JetModel& gauge, int r, int mu) { return r * gauge.base_dim() + mu; }

ContactDerivation principal_vector_field(const JetModel& gauge, const GaugeAlgebra& algebra,
                                         const std::vector<Expression>& xi_base,
                                         const std::vector<Expression>& xi_algebra) {
    int n = gauge.base_dim(), d = algebra.dim();
    if (static_cast<int>(xi_algebra.size()) != d) throw Error(ErrorCode::AlgebraMismatch, "generator size must match the algebra");
    if (static_cast<int>(xi_base.size()) != n || gauge.even_count() != n * d)
        throw Error(ErrorCode::ModelMismatch, "model is not a gauge-field model of this algebra");
    for (const auto& e : xi_base) check_base_only(e, "principal vector field components");
    for (const auto& e : xi_algebra) check_base_only(e, "principal vector field components");
    ContactDerivation u(gauge);
    for (int mu = 0; mu < n; ++mu) u.base(mu) = xi_base[mu];
    for (int r = 0; r < d; ++r)
        for (int mu = 0; mu < n; ++mu) {
            Expression e = d_base(gauge, xi_algebra[r], mu);
            for (int p = 0; p < d; ++p)
                for (int q = 0; q < d; ++q)
                    if (!algebra.c(r, p, q).is_zero())
                        e += (gauge.y(gauge_slot(gauge, p, mu)) * xi_algebra[q]).scaled(algebra.c(r, p, q));
            for (int nu = 0; nu < n; ++nu) e -= gauge.y(gauge_slot(gauge, r, nu)) * d_base(gauge, xi_base[nu], mu);
            u.field(gauge_slot(gauge, r, mu)) = e;
        }
    return u;
}

JetSplitting jet_splitting(const JetModel& gauge, const GaugeAlgebra& algebra) {
    int n = gauge.base_dim(), d = algebra.dim();
    if (gauge.even_count() != n * d) throw Error(ErrorCode::AlgebraMismatch, "model is not a gauge-field model of this algebra");
    auto a = [&](int r, int mu) { return gauge.y(gauge_slot(gauge, r, mu)); };
    auto a2 = [&](int r, int l, int mu) { return gauge.y(gauge_slot(gauge, r, mu), MultiIndex{l}); };
    JetSplitting s;
    s.f_part.assign(static_cast<std::size_t>(d), std::vector<std::vector<Expression>>(static_cast<std::size_t>(n), std::vector<Expression>(static_cast<std::size_t>(n))));
    s.s_part = s.f_part;
    for (int r = 0; r < d; ++r)
        for (int l = 0; l < n; ++l)
            for (int mu = 0; mu < n; ++mu) {
                Expression quad;
                for (int p = 0; p < d; ++p)
                    for (int q = 0; q < d; ++q)
                        if (!algebra.c(r, p, q).is_zero()) quad += (a(p, l) * a(q, mu)).scaled(algebra.c(r, p, q));
                s.f_part[r][l][mu] = a2(r, l, mu) - a2(r, mu, l) + quad;
                s.s_part[r][l][mu] = a2(r, l, mu) + a2(r, mu, l) - quad;
            }
    return s;
}

}  // namespace jetvar
