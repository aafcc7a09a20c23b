#include "jetvar/jet_model.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "jetvar/error.hpp"

namespace jetvar {

namespace {

bool valid_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

}  // namespace

JetModel::JetModel(int base_dim, std::vector<std::string> even_fields, std::vector<std::string> odd_fields,
                   std::vector<std::string> params, std::vector<std::string> base_names)
    : base_names_(std::move(base_names)), even_(std::move(even_fields)), odd_(std::move(odd_fields)),
      params_(std::move(params)) {
    if (base_dim < 1) throw Error(ErrorCode::ValidationError, "base dimension must be at least 1");
    if (base_dim > 64) throw Error(ErrorCode::ValidationError, "base dimension too large");
    if (base_names_.empty()) {
        for (int i = 0; i < base_dim; ++i) base_names_.push_back("x" + std::to_string(i));
    } else {
        default_bases_ = false;
    }
    if (static_cast<int>(base_names_.size()) != base_dim)
        throw Error(ErrorCode::ValidationError, "base_names must list exactly " + std::to_string(base_dim) + " names");
    std::set<std::string> seen;
    auto check = [&](const std::vector<std::string>& names) {
        for (const auto& n : names) {
            if (!valid_identifier(n)) throw Error(ErrorCode::ValidationError, "invalid name '" + n + "'");
            if (find_function(n) != nullptr)
                throw Error(ErrorCode::ValidationError, "name '" + n + "' clashes with a function");
            if (!seen.insert(n).second) throw Error(ErrorCode::ValidationError, "duplicate name '" + n + "'");
        }
    };
    check(base_names_);
    check(even_);
    check(odd_);
    check(params_);
    for (const auto& n : base_names_) single_char_bases_ = single_char_bases_ && n.size() == 1;
    if (default_bases_) single_char_bases_ = false;
}

JetModel::JetModel(const JetModel& other)
    : base_names_(other.base_names_), even_(other.even_), odd_(other.odd_), params_(other.params_),
      single_char_bases_(other.single_char_bases_), default_bases_(other.default_bases_),
      max_order_(other.max_order_.load()) {}

JetModel& JetModel::operator=(const JetModel& other) {
    base_names_ = other.base_names_;
    even_ = other.even_;
    odd_ = other.odd_;
    params_ = other.params_;
    single_char_bases_ = other.single_char_bases_;
    default_bases_ = other.default_bases_;
    max_order_.store(other.max_order_.load());
    return *this;
}

const std::string& JetModel::field_name(int slot) const {
    if (slot < 0 || slot >= field_count()) throw Error(ErrorCode::IndexOutOfRange, "field slot out of range");
    return slot < even_count() ? even_[slot] : odd_[slot - even_count()];
}

FieldRef JetModel::field_at(int slot) const {
    if (slot < 0 || slot >= field_count()) throw Error(ErrorCode::IndexOutOfRange, "field slot out of range");
    return slot < even_count() ? FieldRef{false, slot} : FieldRef{true, slot - even_count()};
}

int JetModel::slot_of(const Atom& a) const {
    if (a.kind == AtomKind::EvenJet) return a.index;
    if (a.kind == AtomKind::OddJet) return even_count() + a.index;
    throw Error(ErrorCode::IndexOutOfRange, "atom is not a jet coordinate");
}

std::optional<int> JetModel::find_base(std::string_view name) const {
    for (int i = 0; i < base_dim(); ++i)
        if (base_names_[i] == name) return i;
    return std::nullopt;
}

std::optional<int> JetModel::find_field(std::string_view name) const {
    for (int i = 0; i < field_count(); ++i)
        if (field_name(i) == name) return i;
    return std::nullopt;
}

std::optional<int> JetModel::find_param(std::string_view name) const {
    for (int i = 0; i < param_count(); ++i)
        if (params_[i] == name) return i;
    return std::nullopt;
}

Atom JetModel::base_atom(int lambda) const {
    if (lambda < 0 || lambda >= base_dim()) throw Error(ErrorCode::IndexOutOfRange, "base index out of range");
    return Atom::base(lambda);
}

Atom JetModel::jet_atom(int slot, const MultiIndex& jet) const {
    FieldRef f = field_at(slot);
    if (jet.max_index() >= base_dim()) throw Error(ErrorCode::IndexOutOfRange, "multi-index out of range");
    note_order(jet.order());
    return Atom::jet_of(f.odd, f.index, jet);
}

Atom JetModel::param_atom(int k) const {
    if (k < 0 || k >= param_count()) throw Error(ErrorCode::IndexOutOfRange, "parameter index out of range");
    return Atom::parameter(k);
}

void JetModel::note_order(int order) const {
    int cur = max_order_.load();
    while (order > cur && !max_order_.compare_exchange_weak(cur, order)) {
    }
}

std::string JetModel::multi_index_text(const MultiIndex& m) const {
    if (default_bases_) return multi_index_digits(m);
    std::string s;
    for (int i = 0; i < m.order(); ++i) {
        if (!single_char_bases_ && i > 0) s += ",";
        s += base_names_[m[i]];
    }
    return s;
}

MultiIndex JetModel::parse_multi_index(std::string_view text) const {
    std::string t = trim(text);
    std::vector<int> idx;
    auto token_index = [&](const std::string& tok) {
        if (auto b = find_base(tok)) return *b;
        if (all_digits(tok)) {
            int v = std::stoi(tok);
            if (v < base_dim()) return v;
        }
        throw Error(ErrorCode::UndeclaredAtom, "unknown base coordinate '" + tok + "' in multi-index");
    };
    if (t.empty()) return {};
    if (t.find(',') != std::string::npos || t.find(' ') != std::string::npos) {
        std::string cur;
        for (char c : t + ",") {
            if (c == ',' || c == ' ') {
                std::string tok = trim(cur);
                if (!tok.empty()) idx.push_back(token_index(tok));
                cur.clear();
            } else {
                cur += c;
            }
        }
        return MultiIndex(idx);
    }
    if (auto b = find_base(t)) return MultiIndex{*b};
    if (single_char_bases_) {
        for (char c : t) idx.push_back(token_index(std::string(1, c)));
        return MultiIndex(idx);
    }
    if (all_digits(t)) {
        for (char c : t) idx.push_back(token_index(std::string(1, c)));
        return MultiIndex(idx);
    }
    throw Error(ErrorCode::UndeclaredAtom, "cannot read multi-index '" + t + "'");
}

bool JetModel::declares(const Atom& a) const {
    switch (a.kind) {
    case AtomKind::Base: return a.index < base_dim();
    case AtomKind::Parameter: return a.index < param_count();
    case AtomKind::EvenJet: return a.index < even_count() && a.jet.max_index() < base_dim();
    case AtomKind::OddJet: return a.index < odd_count() && a.jet.max_index() < base_dim();
    case AtomKind::Function: return true;
    }
    return false;
}

void JetModel::validate(const Expression& e) const {
    for_each_atom(e, [&](const Atom& a) {
        if (!declares(a)) throw Error(ErrorCode::UndeclaredAtom, "expression references an undeclared coordinate");
        if (a.is_jet()) note_order(a.jet.order());
    });
}

std::string JetModel::atom_name(const Atom& a) const {
    switch (a.kind) {
    case AtomKind::Base: return base_names_.at(a.index);
    case AtomKind::Parameter: return params_.at(a.index);
    case AtomKind::EvenJet:
    case AtomKind::OddJet: {
        const std::string& name = field_name(slot_of(a));
        if (a.jet.empty()) return name;
        return name + "[;" + multi_index_text(a.jet) + "]";
    }
    case AtomKind::Function: break;
    }
    return "?";
}

Atom JetModel::resolve(std::string_view name, const std::string* bracket) const {
    if (bracket == nullptr) {
        if (auto b = find_base(name)) return Atom::base(*b);
        if (auto f = find_field(name)) return jet_atom(*f);
        if (auto p = find_param(name)) return Atom::parameter(*p);
        if (name.size() > 1 && name[0] == 'x' && all_digits(name.substr(1))) {
            int k = std::stoi(std::string(name.substr(1)));
            if (k < base_dim()) return Atom::base(k);
        }
        throw Error(ErrorCode::UndeclaredAtom, "undeclared field " + std::string(name));
    }
    auto semi = bracket->find(';');
    if (semi == std::string::npos)
        throw Error(ErrorCode::UndeclaredAtom, "jet coordinate " + std::string(name) + " needs ';' in brackets");
    std::string prefix = trim(std::string_view(*bracket).substr(0, semi));
    std::string_view rest = std::string_view(*bracket).substr(semi + 1);
    if (prefix.empty()) {
        if (auto f = find_field(name)) return jet_atom(*f, parse_multi_index(rest));
    } else if ((name == "y" || name == "c") && !find_field(name) && all_digits(prefix)) {
        int k = std::stoi(prefix);
        bool odd = name == "c";
        if (k < (odd ? odd_count() : even_count()))
            return jet_atom(odd ? even_count() + k : k, parse_multi_index(rest));
    }
    throw Error(ErrorCode::UndeclaredAtom, "undeclared field " + std::string(name));
}

bool JetModel::compatible_with(const JetModel& other) const {
    return base_dim() == other.base_dim() && even_count() == other.even_count() &&
           odd_count() == other.odd_count() && param_count() == other.param_count();
}

}  // namespace jetvar
