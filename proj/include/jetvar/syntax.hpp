#pragma once

#include <string>
#include <string_view>

#include "jetvar/expression.hpp"

namespace jetvar {

// Naming scheme used by the printer and parser.
class SymbolTable {
public:
    virtual ~SymbolTable() = default;
    // Display name of a non-function atom, e.g. "x0", "y[;tx]".
    virtual std::string atom_name(const Atom& a) const = 0;
    // Resolves an identifier, optionally followed by bracket content
    // (the text between '[' and ']'). Throws Error(UndeclaredAtom).
    virtual Atom resolve(std::string_view name, const std::string* bracket) const = 0;
};

// Generic names: base x0.., even jets y[i;Λ], odd jets c[a;Λ], parameters p0..
const SymbolTable& default_symbols();

// Canonical text: terms in monomial order, explicit rational coefficients.
std::string to_string(const Expression& e, const SymbolTable& names = default_symbols());
std::string to_string(const Rational& r);

// Infix grammar with + - * / ^, function calls and jet brackets.
// Throws ParseError (line 1, 1-based column) or Error(UndeclaredAtom).
Expression parse_expression(std::string_view text, const SymbolTable& names = default_symbols());

// Multi-index text helpers shared by symbol tables. Digits are used for
// indices, so "01" is (0,1); longer indices are comma separated.
std::string multi_index_digits(const MultiIndex& m);
MultiIndex parse_multi_index_digits(std::string_view text);

}  // namespace jetvar
