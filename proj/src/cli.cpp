#include "jetvar/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "jetvar/error.hpp"
#include "jetvar/model_file.hpp"
#include "jetvar/random.hpp"

namespace jetvar {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string command;
    std::string model_path;
    bool json = false;
    int order = 1;
    std::string convention = "paper";
    std::uint64_t seed = 1;
    std::string field, left, right;
};

struct Report {
    bool nonzero = false;
    std::vector<std::pair<std::string, std::string>> entries;
    std::vector<std::pair<std::string, Json>> notes;

    void entry(std::string name, std::string value) { entries.push_back({std::move(name), std::move(value)}); }
    void note(std::string key, Json value) { notes.push_back({std::move(key), std::move(value)}); }
};

const std::vector<std::string>& commands() {
    static const std::vector<std::string> all{"el",    "symmetry", "current",   "trivial",  "curvature",
                                              "torsion", "christoffel", "ricci", "geodesic", "strength",
                                              "fnbracket", "ni",     "prolong",   "selftest"};
    return all;
}

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string join_bases(const JetModel& m, std::initializer_list<int> idx) {
    std::string s;
    for (int i : idx) {
        if (!s.empty()) s += ",";
        s += m.base_name(i);
    }
    return s;
}

bool is_gauge_param(const ModelFile& f, int slot) {
    for (const std::string& name : f.gauge_param_names)
        if (f.model.find_field(name) == slot) return true;
    return false;
}

const Lagrangian& need_lagrangian(const ModelFile& f) {
    if (!f.lagrangian) throw Error(ErrorCode::MissingSection, "this command needs a [lagrangian] section");
    return *f.lagrangian;
}

const ContactDerivation& need_field(const ModelFile& f, const Options& o) {
    if (o.field.empty()) {
        if (f.vector_fields.size() == 1) return f.vector_fields.front().second;
        throw Error(ErrorCode::MissingSection, "choose a vector field with --field");
    }
    const ContactDerivation* v = f.find_vector_field(o.field);
    if (!v) throw Error(ErrorCode::MissingSection, "no [vector_field " + o.field + "] section");
    return *v;
}

WorldConnection world_gamma(const ModelFile& f) {
    if (f.metric) return christoffel(f.model, *f.metric);
    if (f.world_connection) return *f.world_connection;
    throw Error(ErrorCode::MissingSection, "this command needs a [metric] or [world_connection] section");
}

void two_form_entries(Report& r, const JetModel& m, const std::string& label,
                      const std::vector<std::string>& row_names, const TwoFormComponents& x) {
    for (int i = 0; i < x.count(); ++i)
        for (int l = 0; l < x.base_dim(); ++l)
            for (int mu = l + 1; mu < x.base_dim(); ++mu)
                r.entry(label + "[" + row_names[i] + ";" + join_bases(m, {l, mu}) + "]", m.print(x.at(i, l, mu)));
}

std::vector<std::string> even_field_names(const JetModel& m) {
    std::vector<std::string> out;
    for (int s = 0; s < m.even_count(); ++s) out.push_back(m.field_name(s));
    return out;
}

Report cmd_el(const ModelFile& f) {
    Report r;
    std::vector<Expression> e = euler_lagrange(f.model, need_lagrangian(f));
    for (int s = 0; s < f.model.field_count(); ++s)
        if (!is_gauge_param(f, s)) r.entry("E[" + f.model.field_name(s) + "]", f.model.print(e[s]));
    return r;
}

Report cmd_trivial(const ModelFile& f) {
    Report r;
    r.note("variationally trivial", is_variationally_trivial(f.model, need_lagrangian(f)));
    return r;
}

Report cmd_symmetry(const ModelFile& f, const Options& o) {
    Report r;
    const Lagrangian& L = need_lagrangian(f);
    const ContactDerivation& v = need_field(f, o);
    r.entry("lie derivative", f.model.print(lie_derivative_lagrangian(f.model, v, L)));
    r.note("classification", symmetry_kind_name(check_symmetry(f.model, v, L)));
    return r;
}

Report cmd_current(const ModelFile& f, const Options& o) {
    Report r;
    const Lagrangian& L = need_lagrangian(f);
    const ContactDerivation& v = need_field(f, o);
    std::vector<Expression> j = noether_current(f.model, v, L);
    for (int mu = 0; mu < f.model.base_dim(); ++mu) r.entry("J[" + f.model.base_name(mu) + "]", f.model.print(j[mu]));
    Expression res = conservation_residual(f.model, v, L);
    r.entry("conservation residual", f.model.print(res));
    r.nonzero = !res.is_zero();
    return r;
}

Report cmd_curvature(const ModelFile& f) {
    if (!f.connection) throw Error(ErrorCode::MissingSection, "curvature needs a [connection] section");
    Report r;
    two_form_entries(r, f.model, "R", even_field_names(f.model), curvature(f.model, *f.connection));
    return r;
}

Report cmd_torsion(const ModelFile& f) {
    Report r;
    if (f.soldering) {
        Connection gamma = f.connection ? *f.connection : zero_connection(f.model);
        two_form_entries(r, f.model, "T", even_field_names(f.model), torsion(f.model, gamma, *f.soldering));
        return r;
    }
    if (!f.world_connection)
        throw Error(ErrorCode::MissingSection, "torsion needs [soldering] or [world_connection]");
    WorldConnection t = world_torsion(*f.world_connection);
    int n = t.dim();
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu)
            for (int l = 0; l < n; ++l) r.entry("T[" + join_bases(f.model, {mu, nu, l}) + "]", f.model.print(t.at(mu, nu, l)));
    return r;
}

Report cmd_christoffel(const ModelFile& f, const Options& o) {
    if (!f.metric) throw Error(ErrorCode::MissingSection, "christoffel needs a [metric] section");
    Report r;
    WorldConnection g = christoffel(f.model, *f.metric);
    if (o.convention == "standard") g = g.negated();
    int n = g.dim();
    for (int l = 0; l < n; ++l)
        for (int nu = 0; nu < n; ++nu)
            for (int mu = 0; mu < n; ++mu)
                r.entry("Gamma[" + join_bases(f.model, {l, nu, mu}) + "]", f.model.print(g.at(l, nu, mu)));
    r.note("convention", o.convention);
    return r;
}

Report cmd_ricci(const ModelFile& f, const Options& o) {
    Report r;
    auto ric = ricci(world_curvature(f.model, world_gamma(f)));
    int n = static_cast<int>(ric.size());
    for (int mu = 0; mu < n; ++mu)
        for (int b = 0; b < n; ++b) {
            Expression v = o.convention == "standard" ? ric[mu][b].scaled(Rational(-2)) : ric[mu][b];
            r.entry("Ric[" + join_bases(f.model, {mu, b}) + "]", f.model.print(v));
        }
    r.note("convention", o.convention);
    return r;
}

Report cmd_geodesic(const ModelFile& f) {
    if (!f.geodesic) throw Error(ErrorCode::MissingSection, "geodesic needs a [geodesic] section");
    WorldConnection g = world_gamma(f);
    JetModel base(f.model.base_dim(), {}, {}, {}, f.model.base_names());
    JetModel tangent = tangent_bundle_model(base);
    const GeodesicSetup& s = *f.geodesic;
    auto samples = integrate_geodesic(tangent, geodesic_rhs(tangent, g), s.point, s.velocity, s.step, s.steps);
    const GeodesicSample& last = samples.back();
    Report r;
    r.entry("t", number(last.t));
    for (int mu = 0; mu < f.model.base_dim(); ++mu) r.entry("x[" + f.model.base_name(mu) + "]", number(last.x[mu]));
    for (int mu = 0; mu < f.model.base_dim(); ++mu) r.entry("v[" + f.model.base_name(mu) + "]", number(last.v[mu]));
    r.note("steps", s.steps);
    return r;
}

Report cmd_strength(const ModelFile& f) {
    if (!f.algebra || !f.gauge_connection)
        throw Error(ErrorCode::MissingSection, "strength needs [gauge] and [gauge_connection]");
    Report r;
    std::vector<std::string> rows;
    for (int k = 0; k < f.algebra->dim(); ++k) rows.push_back(std::to_string(k));
    two_form_entries(r, f.model, "F", rows, strength(f.model, *f.algebra, *f.gauge_connection));
    return r;
}

Report cmd_fnbracket(const ModelFile& f, const Options& o) {
    std::string left = o.left, right = o.right;
    if (left.empty() || right.empty()) {
        if (f.tangent_forms.size() < 2) throw Error(ErrorCode::MissingSection, "fnbracket needs two [tangent_form] sections");
        if (left.empty()) left = f.tangent_forms[0].first;
        if (right.empty()) right = f.tangent_forms[1].first;
    }
    const TangentValuedForm* a = f.find_tangent_form(left);
    const TangentValuedForm* b = f.find_tangent_form(right);
    if (!a || !b) throw Error(ErrorCode::MissingSection, "unknown tangent form " + (a ? right : left));
    CoordinateSet z = fibred_coordinates(f.model);
    TangentValuedForm br = fn_bracket(z, *a, *b);
    Report r;
    for (int mu = 0; mu < z.size(); ++mu)
        r.entry("[" + left + "," + right + "][" + f.model.atom_name(z.atom(mu)) + "]", to_string(z, f.model, br[mu]));
    r.note("degree", br.degree());
    return r;
}

Report cmd_ni(const ModelFile& f) {
    const Lagrangian& L = need_lagrangian(f);
    if (!f.gauge_symmetry && !f.ni_generators)
        throw Error(ErrorCode::MissingSection, "ni needs [gauge_symmetry] or [ni_generators]");
    Report r;
    if (f.gauge_symmetry) {
        std::vector<Expression> res = noether_identity_residual(f.model, *f.gauge_symmetry, L);
        for (std::size_t a = 0; a < res.size(); ++a) {
            r.entry("NI[" + f.gauge_param_names[a] + "]", f.model.print(res[a]));
            r.nonzero = r.nonzero || !res[a].is_zero();
        }
        r.note("gauge invariance", symmetry_kind_name(gauge_invariance_check(f.model, *f.gauge_symmetry, L)));
    }
    if (f.ni_generators) {
        std::vector<Expression> res = verify_complete_ni(f.model, *f.ni_generators, L);
        for (std::size_t k = 0; k < res.size(); ++k) {
            r.entry("Delta[" + std::to_string(k) + "]", f.model.print(res[k]));
            r.nonzero = r.nonzero || !res[k].is_zero();
        }
    }
    return r;
}

Report cmd_prolong(const ModelFile& f, const Options& o) {
    if (o.order < 0 || o.order > 4) throw Error(ErrorCode::OrderTooHigh, "--order must be between 0 and 4");
    const JetModel& m = f.model;
    ContactDerivation v = prolong_contact_derivation(m, need_field(f, o), o.order);
    Report r;
    for (int l = 0; l < m.base_dim(); ++l) r.entry(m.base_name(l), m.print(v.base(l)));
    for (int s = 0; s < m.field_count(); ++s) {
        r.entry(m.field_name(s), m.print(v.field(s)));
        for (int k = 1; k <= o.order; ++k)
            for (const MultiIndex& jet : multi_indices_of_order(m.base_dim(), k))
                r.entry(m.print(m.y(s, jet)), m.print(jet_component(m, v, s, jet)));
    }
    return r;
}

// Small randomized versions of the property suites.
Report cmd_selftest(const Options& o) {
    Report r;
    auto suite = [&](const std::string& name, int cases, auto&& body) {
        int failed = 0;
        for (int k = 0; k < cases; ++k)
            if (!body(o.seed * 1000 + static_cast<std::uint64_t>(k))) ++failed;
        r.entry(name, failed == 0 ? "PASS (" + std::to_string(cases) + " cases)" : "FAIL (" + std::to_string(failed) + " of " + std::to_string(cases) + ")");
        r.nonzero = r.nonzero || failed > 0;
    };
    JetModel m(2, {"u"}, {"c"}, {}, {"t", "x"});
    RandomOptions opts;
    opts.max_order = 2;
    opts.max_terms = 2;
    suite("bicomplex", 20, [&](std::uint64_t seed) {
        RandomInputs gen(m, seed, opts);
        DifferentialForm phi = gen.form(gen.integer(0, 2), gen.integer(0, 1) ? Parity::Odd : Parity::Even);
        return dH(m, dH(m, phi)).is_zero() && dV(m, dV(m, phi)).is_zero() &&
               (dH(m, dV(m, phi)) + dV(m, dH(m, phi))).is_zero() &&
               horizontalize(exterior_d(m, phi)) == dH(m, horizontalize(phi));
    });
    suite("prolongation", 10, [&](std::uint64_t seed) {
        JetModel e(2, {"y"}, {}, {}, {"t", "x"});
        RandomInputs gen(e, seed, opts);
        ContactDerivation u = gen.vector_field(), v = gen.vector_field();
        return same_up_to_order(e, prolong_vector_field(e, bracket(e, u, v, 0), 1),
                                bracket(e, prolong_vector_field(e, u, 1), prolong_vector_field(e, v, 1), 1), 1);
    });
    suite("euler-lagrange of divergences", 20, [&](std::uint64_t seed) {
        RandomInputs gen(m, seed, opts);
        Expression e = total_derivative(m, gen.expression(Parity::Even), gen.integer(0, 1));
        return is_variationally_trivial(m, Lagrangian{e, e.max_order()});
    });
    suite("first variational formula", 10, [&](std::uint64_t seed) {
        RandomInputs gen(m, seed, opts);
        Lagrangian L = make_lagrangian(m, gen.expression(Parity::Even));
        RandomOptions vo;
        vo.max_order = 1;
        RandomInputs vg(m, seed + 7, vo);
        return first_variational_residual(m, vg.contact_derivation(seed % 2 == 1), L).is_zero();
    });
    suite("eta involution", 10, [&](std::uint64_t seed) {
        RandomInputs gen(m, seed, opts);
        IndexedTuple f;
        for (const MultiIndex& l : multi_indices_up_to(2, 3))
            if (gen.integer(0, 2) == 0) {
                Expression v = gen.expression(Parity::Even);
                if (!v.is_zero()) f[l] = v;
            }
        return eta(m, eta(m, f)) == f;
    });
    r.note("seed", o.seed);
    return r;
}

Report dispatch(const Options& o, const ModelFile* f) {
    const std::string& c = o.command;
    if (c == "selftest") return cmd_selftest(o);
    if (c == "el") return cmd_el(*f);
    if (c == "trivial") return cmd_trivial(*f);
    if (c == "symmetry") return cmd_symmetry(*f, o);
    if (c == "current") return cmd_current(*f, o);
    if (c == "curvature") return cmd_curvature(*f);
    if (c == "torsion") return cmd_torsion(*f);
    if (c == "christoffel") return cmd_christoffel(*f, o);
    if (c == "ricci") return cmd_ricci(*f, o);
    if (c == "geodesic") return cmd_geodesic(*f);
    if (c == "strength") return cmd_strength(*f);
    if (c == "fnbracket") return cmd_fnbracket(*f, o);
    if (c == "ni") return cmd_ni(*f);
    if (c == "prolong") return cmd_prolong(*f, o);
    throw Error(ErrorCode::UnknownCommand, "unknown command '" + c + "'");
}

std::string base_name_of(const std::string& path) {
    std::size_t slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

Json json_report(const Options& o, const std::string& status, Json payload, double ms) {
    Json j;
    j["schema"] = 1;
    j["command"] = {{"name", o.command}, {"model", base_name_of(o.model_path)}};
    j["status"] = status;
    j["payload"] = std::move(payload);
    j["timing_ms"] = ms;
    return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Jet-bundle variational calculus engine", "jetvar"};
    app.add_option("command", o.command, "el, symmetry, current, trivial, curvature, torsion, christoffel, ricci, "
                                         "geodesic, strength, fnbracket, ni, prolong or selftest")
        ->required();
    app.add_option("model", o.model_path, "model file");
    app.add_flag("--json", o.json, "emit a JSON report");
    app.add_option("--order", o.order, "prolongation order")->check(CLI::Range(0, 4));
    app.add_option("--convention", o.convention, "Christoffel sign convention")
        ->check(CLI::IsMember({"paper", "standard"}));
    app.add_option("--seed", o.seed, "seed for selftest");
    app.add_option("--field", o.field, "vector field name");
    app.add_option("--left", o.left, "left tangent form of fnbracket");
    app.add_option("--right", o.right, "right tangent form of fnbracket");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };
    try {
        if (std::find(commands().begin(), commands().end(), o.command) == commands().end())
            throw Error(ErrorCode::UnknownCommand, "unknown command '" + o.command + "'");
        std::optional<ModelFile> model;
        if (o.command != "selftest") {
            if (o.model_path.empty()) throw Error(ErrorCode::MissingSection, "a model file is required");
            model = load_model(o.model_path);
        }
        Report r = dispatch(o, model ? &*model : nullptr);
        std::string status = r.nonzero ? "nonzero-residual" : "ok";
        if (o.json) {
            Json payload;
            Json entries = Json::array();
            for (const auto& [name, value] : r.entries) entries.push_back({{"name", name}, {"value", value}});
            payload["entries"] = entries;
            for (const auto& [key, value] : r.notes) payload[key] = value;
            out << json_report(o, status, payload, elapsed()).dump(2) << "\n";
        } else {
            for (const auto& [name, value] : r.entries) out << name << " = " << value << "\n";
            for (const auto& [key, value] : r.notes)
                out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
        return r.nonzero ? 1 : 0;
    } catch (const Error& e) {
        if (o.json) {
            Json payload{{"error", error_code_name(e.code())}, {"message", e.what()}};
            out << json_report(o, "error", payload, elapsed()).dump(2) << "\n";
        }
        err << "jetvar: " << error_code_name(e.code()) << ": " << e.what() << "\n";
        return 2;
    }
}

}  // namespace jetvar
