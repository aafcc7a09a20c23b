#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jetvar/expression.hpp"
#include "jetvar/syntax.hpp"

namespace jetvar {

struct FieldRef {
    bool odd = false;
    int index = 0;
    friend bool operator==(const FieldRef&, const FieldRef&) = default;
};

// Declared fibred coordinate system: base coordinates, even and odd fields,
// parameters. Fields are addressed by a slot: even fields first, then odd.
class JetModel : public SymbolTable {
public:
    JetModel(int base_dim, std::vector<std::string> even_fields,
             std::vector<std::string> odd_fields = {}, std::vector<std::string> params = {},
             std::vector<std::string> base_names = {});
    JetModel(const JetModel& other);
    JetModel& operator=(const JetModel& other);

    int base_dim() const { return static_cast<int>(base_names_.size()); }
    int even_count() const { return static_cast<int>(even_.size()); }
    int odd_count() const { return static_cast<int>(odd_.size()); }
    int field_count() const { return even_count() + odd_count(); }
    int param_count() const { return static_cast<int>(params_.size()); }

    const std::string& base_name(int lambda) const { return base_names_.at(lambda); }
    const std::string& field_name(int slot) const;
    const std::string& param_name(int k) const { return params_.at(k); }
    const std::vector<std::string>& base_names() const { return base_names_; }

    FieldRef field_at(int slot) const;
    int slot(FieldRef f) const { return f.odd ? even_count() + f.index : f.index; }
    bool slot_is_odd(int slot) const { return slot >= even_count(); }
    // Slot of a jet atom.
    int slot_of(const Atom& a) const;

    std::optional<int> find_base(std::string_view name) const;
    std::optional<int> find_field(std::string_view name) const;
    std::optional<int> find_param(std::string_view name) const;

    Atom base_atom(int lambda) const;
    Atom jet_atom(int slot, const MultiIndex& jet = {}) const;
    Atom param_atom(int k) const;
    Expression x(int lambda) const { return Expression(base_atom(lambda)); }
    Expression y(int slot, const MultiIndex& jet = {}) const { return Expression(jet_atom(slot, jet)); }

    Expression parse(std::string_view text) const { return parse_expression(text, *this); }
    std::string print(const Expression& e) const { return to_string(e, *this); }
    std::string multi_index_text(const MultiIndex& m) const;
    MultiIndex parse_multi_index(std::string_view text) const;

    bool declares(const Atom& a) const;
    // Throws UndeclaredAtom for atoms outside the model.
    void validate(const Expression& e) const;

    // Working truncation; only grows.
    int max_order() const { return max_order_.load(); }
    void note_order(int order) const;

    std::string atom_name(const Atom& a) const override;
    Atom resolve(std::string_view name, const std::string* bracket) const override;

    // Same dimensions and field parities (names may differ).
    bool compatible_with(const JetModel& other) const;

private:
    std::vector<std::string> base_names_;
    std::vector<std::string> even_;
    std::vector<std::string> odd_;
    std::vector<std::string> params_;
    bool single_char_bases_ = true;
    bool default_bases_ = true;
    mutable std::atomic<int> max_order_{0};
};

}  // namespace jetvar
