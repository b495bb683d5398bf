#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "osd/solved_form.hpp"
#include "osd/system.hpp"

namespace osd {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message, bool signature = false);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    /// The input used a constant or a function symbol outside {+, *}.
    bool signature() const { return signature_; }

private:
    std::size_t line_;
    std::size_t column_;
    bool signature_;
};

/// Reads the line format `X = Y + Z`, `X = Y * Z`, `X = Y`, `X =d <rhs>`,
/// `<term> =d X`, with `#` comments. Symmetric lines may use deeper terms,
/// which are decomposed into standard form with fresh names.
StandardSystem parse_problem(std::istream& in);
StandardSystem parse_problem(const std::string& text);
StandardSystem read_problem_file(const std::string& path);

void write_problem(std::ostream& out, const StandardSystem& s);

/// `X -> <term>` per binding, then an `SLP:` section when some binding is
/// a compressed lateral path `X -> [slp:Ni] * Y`.
void write_solved_form(std::ostream& out, const SolvedForm& f);
void write_substitution(std::ostream& out, const Substitution& sigma, const VarTable& vars);

/// Parses the substitution format against `vars`; unknown names, including
/// fresh `_`-prefixed ones, are registered.
SolvedForm parse_substitution(std::istream& in, VarTable vars);
SolvedForm parse_substitution(const std::string& text, VarTable vars);

}  // namespace osd
