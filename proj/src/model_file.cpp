#include "jetvar/model_file.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "jetvar/error.hpp"

namespace jetvar {

namespace {

struct Entry {
    std::string key, value;
    int line = 0, key_col = 1, value_col = 1;
};

struct Section {
    std::string kind, name;
    int line = 0;
    std::vector<Entry> entries;
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        std::string t = trim(cur);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

class Reader {
public:
    Reader(std::string origin) : origin_(std::move(origin)) {}

    [[noreturn]] void invalid(int line, const std::string& msg) const {
        throw Error(ErrorCode::ValidationError, origin_ + ":" + std::to_string(line) + ": " + msg);
    }
    [[noreturn]] void malformed(int line, int col, const std::string& msg) const {
        throw ParseError(origin_ + ": " + msg, line, col);
    }

    std::vector<Section> sections(const std::string& text) const {
        std::vector<Section> out;
        std::istringstream in(text);
        std::string raw;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            std::size_t hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            std::string t = trim(raw);
            if (t.empty() || t[0] == ';') continue;
            int indent = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
            if (t[0] == '[') {
                if (t.back() != ']') malformed(line, indent, "unterminated section header");
                std::vector<std::string> w = words(t.substr(1, t.size() - 2));
                if (w.empty() || w.size() > 2) malformed(line, indent, "section header needs a kind and an optional name");
                out.push_back({w[0], w.size() == 2 ? w[1] : "", line, {}});
                continue;
            }
            std::size_t eq = raw.find('=');
            if (eq == std::string::npos) malformed(line, indent, "expected 'key = value'");
            if (out.empty()) malformed(line, indent, "entry outside of a section");
            Entry e;
            e.key = trim(raw.substr(0, eq));
            e.value = trim(raw.substr(eq + 1));
            e.line = line;
            e.key_col = indent;
            std::size_t vstart = raw.find_first_not_of(" \t", eq + 1);
            e.value_col = static_cast<int>(vstart == std::string::npos ? eq + 2 : vstart + 1);
            if (e.key.empty()) malformed(line, indent, "empty key");
            out.back().entries.push_back(e);
        }
        return out;
    }

    Expression expression(const JetModel& m, const Entry& e) const {
        try {
            return m.parse(e.value);
        } catch (const ParseError& pe) {
            throw ParseError(origin_ + ": " + pe.detail(), e.line, e.value_col + pe.column() - 1);
        } catch (const Error& err) {
            if (err.code() == ErrorCode::UndeclaredAtom) invalid(e.line, err.what());
            throw;
        }
    }

    Rational rational(const Entry& e) const {
        Expression v = expression(default_symbols_model(), e);
        if (!v.is_constant()) invalid(e.line, "expected a rational number");
        return v.constant_term();
    }

    double number(const Entry& e, const std::string& text) const {
        try {
            std::size_t used = 0;
            double v = std::stod(text, &used);
            if (used == text.size()) return v;
        } catch (const std::exception&) {
        }
        malformed(e.line, e.value_col, "expected a number, got '" + text + "'");
    }

    int integer(const Entry& e, const std::string& text) const {
        if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
            malformed(e.line, e.key_col, "expected an index, got '" + text + "'");
        return std::stoi(text);
    }

    bool boolean(const Entry& e) const {
        if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
        if (e.value == "false" || e.value == "no" || e.value == "0") return false;
        malformed(e.line, e.value_col, "expected true or false");
    }

    int base_index(const JetModel& m, const Entry& e, const std::string& tok) const {
        if (auto b = m.find_base(tok)) return *b;
        if (!tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos) {
            int v = std::stoi(tok);
            if (v < m.base_dim()) return v;
        }
        invalid(e.line, "undeclared base coordinate " + tok);
    }

    int field_slot(const JetModel& m, const Entry& e, const std::string& tok) const {
        if (auto f = m.find_field(tok)) return *f;
        invalid(e.line, "undeclared field " + tok);
    }

    MultiIndex multi_index(const JetModel& m, const Entry& e, const std::string& tok) const {
        try {
            return m.parse_multi_index(tok);
        } catch (const Error& err) {
            invalid(e.line, err.what());
        }
    }

    std::vector<std::string> key_words(const Entry& e, std::size_t min, std::size_t max) const {
        std::vector<std::string> w = words(e.key);
        if (w.size() < min || w.size() > max)
            malformed(e.line, e.key_col, "key '" + e.key + "' has the wrong number of parts");
        return w;
    }

    const std::string& origin() const { return origin_; }

private:
    static const JetModel& default_symbols_model() {
        static const JetModel m(1, {});
        return m;
    }
    std::string origin_;
};

const Section* find(const std::vector<Section>& all, const std::string& kind) {
    for (const Section& s : all)
        if (s.kind == kind) return &s;
    return nullptr;
}

const Entry* find_entry(const Section& s, const std::string& key) {
    for (const Entry& e : s.entries)
        if (e.key == key) return &e;
    return nullptr;
}

JetModel declared_model(const Reader& rd, const Section& s) {
    std::vector<std::string> bases, even, odd, params;
    int dim = -1;
    for (const Entry& e : s.entries) {
        if (e.key == "base") {
            if (!e.value.empty() && e.value.find_first_not_of("0123456789") == std::string::npos) {
                dim = std::stoi(e.value);
            } else {
                bases = split(e.value, ',');
                dim = static_cast<int>(bases.size());
            }
        } else if (e.key == "even") {
            even = split(e.value, ',');
        } else if (e.key == "odd") {
            odd = split(e.value, ',');
        } else if (e.key == "params") {
            params = split(e.value, ',');
        } else {
            rd.malformed(e.line, e.key_col, "unknown key '" + e.key + "' in [model]");
        }
    }
    if (dim <= 0) rd.invalid(s.line, "[model] needs a positive base dimension");
    try {
        return JetModel(dim, even, odd, params, bases);
    } catch (const Error& err) {
        rd.invalid(s.line, err.what());
    }
}

ContactDerivation read_vector_field(const Reader& rd, const JetModel& m, const Section& s) {
    std::vector<std::pair<bool, int>> where;
    std::vector<Expression> values;
    std::optional<bool> odd;
    for (const Entry& e : s.entries) {
        std::string key = rd.key_words(e, 1, 1)[0];
        Expression v = rd.expression(m, e);
        bool on_base = m.find_base(key).has_value();
        int index = on_base ? *m.find_base(key) : rd.field_slot(m, e, key);
        if (!v.is_zero() && !odd) {
            Parity p = v.parity();
            if (p == Parity::Mixed) rd.invalid(e.line, "component of mixed parity");
            bool odd_value = p == Parity::Odd;
            odd = on_base ? odd_value : odd_value != m.slot_is_odd(index);
        }
        where.push_back({on_base, index});
        values.push_back(v);
    }
    ContactDerivation v(m, odd.value_or(false));
    for (std::size_t k = 0; k < values.size(); ++k)
        (where[k].first ? v.base(where[k].second) : v.field(where[k].second)) = values[k];
    try {
        check_parity(m, v);
    } catch (const Error& err) {
        rd.invalid(s.line, "vector field " + s.name + ": " + err.what());
    }
    return v;
}

TangentValuedForm read_tangent_form(const Reader& rd, const JetModel& m, const Section& s) {
    CoordinateSet z = fibred_coordinates(m);
    auto coord = [&](const Entry& e, const std::string& tok) {
        Atom a;
        try {
            a = m.resolve(tok, nullptr);
        } catch (const Error&) {
            rd.invalid(e.line, "undeclared coordinate " + tok);
        }
        int k = z.index_of(a);
        if (k < 0) rd.invalid(e.line, "not a coordinate of the fibred chart: " + tok);
        return k;
    };
    int degree = -1;
    std::vector<PlainForm> comps(static_cast<std::size_t>(z.size()));
    for (const Entry& e : s.entries) {
        std::vector<std::string> w = rd.key_words(e, 1, 1 + static_cast<std::size_t>(z.size()));
        int mu = coord(e, w[0]);
        PlainForm f(rd.expression(m, e));
        for (std::size_t k = 1; k < w.size(); ++k) {
            if (w[k].size() < 2 || w[k][0] != 'd') rd.malformed(e.line, e.key_col, "differentials are written d<coordinate>");
            f = wedge(f, PlainForm::dz(coord(e, w[k].substr(1))));
        }
        int r = static_cast<int>(w.size()) - 1;
        if (degree >= 0 && r != degree) rd.invalid(e.line, "tangent form " + s.name + " mixes degrees");
        degree = r;
        comps[mu] += f;
    }
    TangentValuedForm out(z.size(), std::max(degree, 0));
    for (int mu = 0; mu < z.size(); ++mu)
        if (!comps[mu].is_zero()) out.set(mu, comps[mu]);
    return out;
}

std::vector<std::vector<Expression>> read_metric(const Reader& rd, const JetModel& m, const Section& s) {
    int n = m.base_dim();
    std::vector<std::vector<Expression>> g(n, std::vector<Expression>(n));
    std::vector<std::vector<int>> seen(n, std::vector<int>(n, 0));
    for (const Entry& e : s.entries) {
        std::vector<std::string> w = rd.key_words(e, 2, 2);
        int i = rd.base_index(m, e, w[0]), j = rd.base_index(m, e, w[1]);
        Expression v = rd.expression(m, e);
        if ((seen[i][j] && !(g[i][j] == v)) || (seen[j][i] && !(g[j][i] == v)))
            rd.invalid(e.line, "metric must be symmetric");
        g[i][j] = g[j][i] = v;
        seen[i][j] = seen[j][i] = 1;
    }
    return g;
}

Connection read_connection(const Reader& rd, const JetModel& m, const Section& s) {
    Connection c = zero_connection(m);
    for (const Entry& e : s.entries) {
        std::vector<std::string> w = rd.key_words(e, 2, 2);
        int i = rd.field_slot(m, e, w[0]);
        if (m.slot_is_odd(i)) rd.invalid(e.line, "connections act on even fields only");
        c.comps[i][rd.base_index(m, e, w[1])] = rd.expression(m, e);
    }
    try {
        validate_connection(m, c);
    } catch (const Error& err) {
        rd.invalid(s.line, "[" + s.kind + "]: " + err.what());
    }
    return c;
}

WorldConnection read_world_connection(const Reader& rd, const JetModel& m, const Section& s) {
    WorldConnection w(m.base_dim());
    for (const Entry& e : s.entries) {
        std::vector<std::string> k = rd.key_words(e, 3, 3);
        Expression v = rd.expression(m, e);
        for (const Atom& a : coordinate_atoms(v))
            if (a.is_jet()) rd.invalid(e.line, "world connection components depend on base coordinates only");
        w.set(rd.base_index(m, e, k[0]), rd.base_index(m, e, k[1]), rd.base_index(m, e, k[2]), v);
    }
    return w;
}

GaugeAlgebra read_algebra(const Reader& rd, const Section& s) {
    GaugeAlgebra g;
    if (const Entry* p = find_entry(s, "preset")) {
        if (p->value == "su2") {
            g = GaugeAlgebra::su2();
        } else if (p->value == "abelian") {
            const Entry* d = find_entry(s, "dim");
            g = GaugeAlgebra::abelian(d ? rd.integer(*d, d->value) : 1);
        } else {
            rd.invalid(p->line, "unknown algebra preset " + p->value);
        }
    } else {
        const Entry* d = find_entry(s, "dim");
        if (!d) rd.invalid(s.line, "[gauge] needs a preset or dim");
        g = GaugeAlgebra(rd.integer(*d, d->value));
    }
    for (const Entry& e : s.entries) {
        if (e.key == "preset" || e.key == "dim") continue;
        std::vector<std::string> w = rd.key_words(e, 4, 4);
        if (w[0] != "c") rd.malformed(e.line, e.key_col, "structure constants are written 'c r p q = value'");
        int r = rd.integer(e, w[1]), p = rd.integer(e, w[2]), q = rd.integer(e, w[3]);
        if (r >= g.dim() || p >= g.dim() || q >= g.dim()) rd.invalid(e.line, "structure constant index out of range");
        g.set(r, p, q, rd.rational(e));
    }
    try {
        g.validate();
    } catch (const Error& err) {
        rd.invalid(s.line, err.what());
    }
    return g;
}

void require_gauge_layout(const Reader& rd, const JetModel& m, const GaugeAlgebra& g, int line) {
    if (m.even_count() < m.base_dim() * g.dim())
        rd.invalid(line, "gauge presets need the fields a<r>_<mu> declared first");
}

}  // namespace

const ContactDerivation* ModelFile::find_vector_field(const std::string& name) const {
    for (const auto& [n, v] : vector_fields)
        if (n == name) return &v;
    return nullptr;
}

const TangentValuedForm* ModelFile::find_tangent_form(const std::string& name) const {
    for (const auto& [n, f] : tangent_forms)
        if (n == name) return &f;
    return nullptr;
}

ModelFile parse_model(const std::string& text, const std::string& origin) {
    Reader rd(origin);
    std::vector<Section> all = rd.sections(text);
    static const std::vector<std::string> known{"model", "lagrangian", "vector_field", "metric", "connection",
                                                "soldering", "world_connection", "gauge", "gauge_connection",
                                                "geodesic", "tangent_form", "gauge_params", "gauge_symmetry",
                                                "ni_generators"};
    for (std::size_t i = 0; i < all.size(); ++i) {
        const Section& s = all[i];
        bool named = s.kind == "vector_field" || s.kind == "tangent_form";
        if (std::find(known.begin(), known.end(), s.kind) == known.end())
            rd.malformed(s.line, 1, "unknown section [" + s.kind + "]");
        if (named == s.name.empty()) rd.malformed(s.line, 1, named ? "[" + s.kind + "] needs a name" : "[" + s.kind + "] takes no name");
        for (std::size_t j = 0; j < i; ++j)
            if (all[j].kind == s.kind && all[j].name == s.name)
                rd.invalid(s.line, "duplicate section [" + s.kind + (s.name.empty() ? "" : " " + s.name) + "]");
    }
    const Section* model_section = find(all, "model");
    if (!model_section) throw Error(ErrorCode::MissingSection, origin + ": missing [model] section");

    ModelFile out;
    out.model = declared_model(rd, *model_section);
    std::vector<int> param_slots;
    if (const Section* s = find(all, "gauge_params")) {
        bool odd = false;
        for (const Entry& e : s->entries) {
            if (e.key == "names") {
                out.gauge_param_names = split(e.value, ',');
            } else if (e.key == "odd") {
                odd = rd.boolean(e);
            } else {
                rd.malformed(e.line, e.key_col, "unknown key '" + e.key + "' in [gauge_params]");
            }
        }
        try {
            GaugeModel gm = add_gauge_parameters(out.model, out.gauge_param_names, odd);
            out.model = gm.model;
            param_slots = gm.param_slots;
        } catch (const Error& err) {
            rd.invalid(s->line, err.what());
        }
    }
    const JetModel& m = out.model;

    if (const Section* s = find(all, "gauge")) out.algebra = read_algebra(rd, *s);

    if (const Section* s = find(all, "lagrangian")) {
        Expression density;
        const Entry* preset = find_entry(*s, "preset");
        if (preset) {
            if (preset->value != "yang_mills") rd.invalid(preset->line, "unknown Lagrangian preset " + preset->value);
            if (!out.algebra) throw Error(ErrorCode::MissingSection, origin + ": the yang_mills preset needs [gauge]");
            require_gauge_layout(rd, m, *out.algebra, preset->line);
            Rational mass(0);
            if (const Entry* e = find_entry(*s, "mass_squared")) mass = rd.rational(*e);
            density = yang_mills_density(m, *out.algebra, mass);
        } else if (const Entry* e = find_entry(*s, "density")) {
            density = rd.expression(m, *e);
        } else {
            rd.invalid(s->line, "[lagrangian] needs density or preset");
        }
        for (const Entry& e : s->entries)
            if (e.key != "density" && e.key != "preset" && e.key != "mass_squared")
                rd.malformed(e.line, e.key_col, "unknown key '" + e.key + "' in [lagrangian]");
        try {
            out.lagrangian = make_lagrangian(m, density);
        } catch (const Error& err) {
            rd.invalid(s->line, err.what());
        }
    }

    for (const Section& s : all) {
        if (s.kind == "vector_field") out.vector_fields.push_back({s.name, read_vector_field(rd, m, s)});
        if (s.kind == "tangent_form") out.tangent_forms.push_back({s.name, read_tangent_form(rd, m, s)});
    }

    if (const Section* s = find(all, "metric")) {
        auto g = read_metric(rd, m, *s);
        for (const auto& row : g)
            for (const auto& v : row)
                for (const Atom& a : coordinate_atoms(v))
                    if (a.is_jet()) rd.invalid(s->line, "metric components depend on base coordinates only");
        try {
            out.metric = make_metric(m, g);
        } catch (const Error& err) {
            if (err.code() == ErrorCode::SingularMetric || err.code() == ErrorCode::DimensionTooLarge) throw;
            rd.invalid(s->line, err.what());
        }
    }
    if (const Section* s = find(all, "connection")) out.connection = read_connection(rd, m, *s);
    if (const Section* s = find(all, "soldering")) out.soldering = read_connection(rd, m, *s);
    if (const Section* s = find(all, "world_connection")) out.world_connection = read_world_connection(rd, m, *s);

    if (const Section* s = find(all, "gauge_connection")) {
        if (!out.algebra) throw Error(ErrorCode::MissingSection, origin + ": [gauge_connection] needs [gauge]");
        PrincipalConnectionField a(static_cast<std::size_t>(out.algebra->dim()),
                                   std::vector<Expression>(static_cast<std::size_t>(m.base_dim())));
        for (const Entry& e : s->entries) {
            std::vector<std::string> w = rd.key_words(e, 2, 2);
            int r = rd.integer(e, w[0]);
            if (r >= out.algebra->dim()) rd.invalid(e.line, "algebra index out of range");
            Expression v = rd.expression(m, e);
            for (const Atom& at : coordinate_atoms(v))
                if (at.is_jet()) rd.invalid(e.line, "connection components depend on base coordinates only");
            a[r][rd.base_index(m, e, w[1])] = v;
        }
        out.gauge_connection = a;
    }

    if (const Section* s = find(all, "geodesic")) {
        GeodesicSetup g;
        for (const Entry& e : s->entries) {
            if (e.key == "point" || e.key == "velocity") {
                std::vector<double>& dst = e.key == "point" ? g.point : g.velocity;
                for (const std::string& t : split(e.value, ',')) dst.push_back(rd.number(e, t));
                if (static_cast<int>(dst.size()) != m.base_dim()) rd.invalid(e.line, e.key + " needs one value per base coordinate");
            } else if (e.key == "step") {
                g.step = rd.number(e, e.value);
            } else if (e.key == "steps") {
                g.steps = rd.integer(e, e.value);
            } else {
                rd.malformed(e.line, e.key_col, "unknown key '" + e.key + "' in [geodesic]");
            }
        }
        if (g.point.empty() || g.velocity.empty()) rd.invalid(s->line, "[geodesic] needs point and velocity");
        if (!(g.step > 0) || g.steps <= 0) rd.invalid(s->line, "[geodesic] needs a positive step and step count");
        out.geodesic = g;
    }

    auto param_index = [&](const Entry& e, const std::string& tok) {
        for (std::size_t a = 0; a < out.gauge_param_names.size(); ++a)
            if (out.gauge_param_names[a] == tok) return static_cast<int>(a);
        if (!tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos &&
            std::stoi(tok) < static_cast<int>(out.gauge_param_names.size()))
            return std::stoi(tok);
        throw Error(ErrorCode::UndeclaredParameter, origin + ":" + std::to_string(e.line) + ": undeclared gauge parameter " + tok);
    };

    if (const Section* s = find(all, "gauge_symmetry")) {
        if (param_slots.empty()) throw Error(ErrorCode::MissingSection, origin + ": [gauge_symmetry] needs [gauge_params]");
        GaugeSymmetrySpec spec{param_slots, {}};
        for (const Entry& e : s->entries) {
            if (e.key == "preset") {
                if (e.value != "yang_mills") rd.invalid(e.line, "unknown gauge symmetry preset " + e.value);
                if (!out.algebra) throw Error(ErrorCode::MissingSection, origin + ": the yang_mills preset needs [gauge]");
                require_gauge_layout(rd, m, *out.algebra, e.line);
                try {
                    GaugeSymmetrySpec preset = yang_mills_gauge_spec(m, *out.algebra, param_slots);
                    spec.terms.insert(spec.terms.end(), preset.terms.begin(), preset.terms.end());
                } catch (const Error& err) {
                    rd.invalid(e.line, err.what());
                }
                continue;
            }
            std::vector<std::string> w = rd.key_words(e, 2, 3);
            GaugeTerm t;
            if (w[0][0] == '@') {
                t.on_base = true;
                t.target = rd.base_index(m, e, w[0].substr(1));
            } else {
                t.target = rd.field_slot(m, e, w[0]);
            }
            t.param = param_index(e, w[1]);
            if (w.size() == 3) t.jet = rd.multi_index(m, e, w[2]);
            t.coefficient = rd.expression(m, e);
            spec.terms.push_back(t);
        }
        try {
            build_gauge_symmetry(m, spec);
        } catch (const Error& err) {
            if (err.code() == ErrorCode::UndeclaredParameter) throw;
            rd.invalid(s->line, err.what());
        }
        out.gauge_symmetry = spec;
    }

    if (const Section* s = find(all, "ni_generators")) {
        std::vector<NIGenerator> gens;
        for (const Entry& e : s->entries) {
            if (e.key == "preset") {
                if (e.value != "yang_mills") rd.invalid(e.line, "unknown identity preset " + e.value);
                if (!out.algebra) throw Error(ErrorCode::MissingSection, origin + ": the yang_mills preset needs [gauge]");
                require_gauge_layout(rd, m, *out.algebra, e.line);
                std::vector<NIGenerator> preset = yang_mills_ni_generators(m, *out.algebra);
                if (gens.size() < preset.size()) gens.resize(preset.size());
                for (std::size_t r = 0; r < preset.size(); ++r) gens[r].insert(gens[r].end(), preset[r].begin(), preset[r].end());
                continue;
            }
            std::vector<std::string> w = rd.key_words(e, 2, 3);
            std::size_t r = static_cast<std::size_t>(rd.integer(e, w[0]));
            if (gens.size() <= r) gens.resize(r + 1);
            NITerm t;
            t.target = rd.field_slot(m, e, w[1]);
            if (w.size() == 3) t.jet = rd.multi_index(m, e, w[2]);
            t.coefficient = rd.expression(m, e);
            gens[r].push_back(t);
        }
        out.ni_generators = gens;
    }
    return out;
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ValidationError, "cannot read model file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_model(text.str(), path);
}

}  // namespace jetvar
