#include "osd/text_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace osd {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message, bool signature)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      signature_(signature) {}

namespace {

enum class Tok { Ident, Number, LParen, RParen, Plus, Star, Eq, EqDown, Arrow, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t column;  // 1-based
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(const std::string& line, std::size_t line_no, bool allow_fresh) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        const std::size_t col = i + 1;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || (allow_fresh && c == '_')) {
            std::size_t j = i;
            while (j < line.size() && ident_char(line[j])) ++j;
            out.push_back({Tok::Ident, line.substr(i, j - i), col});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < line.size() && ident_char(line[j])) ++j;
            out.push_back({Tok::Number, line.substr(i, j - i), col});
            i = j;
        } else if (c == '=') {
            if (i + 1 < line.size() && line[i + 1] == 'd' && (i + 2 == line.size() || !ident_char(line[i + 2]))) {
                out.push_back({Tok::EqDown, "=d", col});
                i += 2;
            } else {
                out.push_back({Tok::Eq, "=", col});
                ++i;
            }
        } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", col});
            i += 2;
        } else if (c == '(' || c == ')' || c == '+' || c == '*') {
            const Tok k = c == '(' ? Tok::LParen : c == ')' ? Tok::RParen : c == '+' ? Tok::Plus : Tok::Star;
            out.push_back({k, std::string(1, c), col});
            ++i;
        } else if (c == '_') {
            throw ParseError(line_no, col, "identifiers must start with a letter");
        } else {
            throw ParseError(line_no, col, std::string("symbol '") + c + "' is not in the signature {+, *}", true);
        }
    }
    out.push_back({Tok::End, "", line.size() + 1});
    return out;
}

class TermParser {
public:
    TermParser(const std::vector<Token>& toks, std::size_t line_no, VarTable& vars)
        : toks_(toks), line_(line_no), vars_(vars) {}

    Term expr() {
        Term l = product();
        if (peek().kind == Tok::Plus) {
            ++pos_;
            return Term::plus(l, expr());
        }
        return l;
    }

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    [[noreturn]] void fail(const Token& t, const std::string& message, bool signature = false) const {
        throw ParseError(line_, t.column, message, signature);
    }

private:
    Term product() {
        Term l = atom();
        if (peek().kind == Tok::Star) {
            ++pos_;
            return Term::times(l, product());
        }
        return l;
    }

    Term atom() {
        const Token& t = next();
        switch (t.kind) {
            case Tok::Ident:
                if (peek().kind == Tok::LParen) fail(t, "function symbol '" + t.text + "' is not in the signature", true);
                return Term::var(vars_.intern(t.text));
            case Tok::Number: fail(t, "constant '" + t.text + "' is not allowed", true);
            case Tok::LParen: {
                Term inner = expr();
                if (next().kind != Tok::RParen) fail(toks_[pos_ - 1], "expected ')'");
                return inner;
            }
            default: fail(t, t.kind == Tok::End ? "unexpected end of line" : "unexpected '" + t.text + "'");
        }
    }

    const std::vector<Token>& toks_;
    std::size_t line_;
    VarTable& vars_;
    std::size_t pos_ = 0;
};

std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

bool is_shallow(const Term& t) { return t.is_var() || (t.left().is_var() && t.right().is_var()); }

void add_shallow(StandardSystem& s, VarId lhs, const Term& rhs, Orientation o) {
    if (rhs.is_var()) {
        s.add_var(lhs, rhs.var_id(), o);
    } else if (rhs.is_plus()) {
        s.add_sum(lhs, rhs.left().var_id(), rhs.right().var_id(), o);
    } else {
        s.add_product(lhs, rhs.left().var_id(), rhs.right().var_id(), o);
    }
}

}  // namespace

StandardSystem parse_problem(std::istream& in) {
    VarTable vars;
    struct Line {
        TermEquation eq;
        bool asymmetric;
        std::size_t number;
    };
    std::vector<Line> lines;
    std::optional<bool> asymmetric;
    std::string raw;
    for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
        const auto toks = lex(strip_comment(raw), line_no, false);
        if (toks.front().kind == Tok::End) continue;
        TermParser p(toks, line_no, vars);
        Term lhs = p.expr();
        const Token& eq = p.next();
        if (eq.kind != Tok::Eq && eq.kind != Tok::EqDown) p.fail(eq, "expected '=' or '=d'");
        Term rhs = p.expr();
        if (p.peek().kind != Tok::End) p.fail(p.peek(), "unexpected '" + p.peek().text + "'");
        const bool asym = eq.kind == Tok::EqDown;
        if (asymmetric && *asymmetric != asym) {
            throw ParseError(line_no, eq.column, "system mixes symmetric and asymmetric equations");
        }
        asymmetric = asym;
        if (lhs.is_var() && rhs.is_var() && lhs.var_id() == rhs.var_id()) {
            throw ParseError(line_no, 1, "trivial equation between a variable and itself");
        }
        if (asym) {
            const bool down = lhs.is_var();
            if (!(down || rhs.is_var()) || !is_shallow(down ? rhs : lhs)) {
                throw ParseError(line_no, eq.column, "asymmetric equations must relate a variable and a depth-1 term");
            }
        }
        lines.push_back({{lhs, rhs}, asym, line_no});
    }

    const bool all_shallow = std::all_of(lines.begin(), lines.end(), [](const Line& l) {
        return (l.eq.lhs.is_var() && is_shallow(l.eq.rhs)) || (l.eq.rhs.is_var() && is_shallow(l.eq.lhs));
    });
    if (!all_shallow) {
        std::vector<TermEquation> eqs;
        for (const auto& l : lines) eqs.push_back(l.eq);
        return decompose(std::move(vars), eqs);
    }
    StandardSystem s;
    s.vars = std::move(vars);
    for (const auto& l : lines) {
        const bool down = l.eq.lhs.is_var();
        const Orientation o = !l.asymmetric ? Orientation::Symmetric : down ? Orientation::Down : Orientation::Up;
        if (down) {
            add_shallow(s, l.eq.lhs.var_id(), l.eq.rhs, o);
        } else {
            add_shallow(s, l.eq.rhs.var_id(), l.eq.lhs, o);
        }
    }
    return s;
}

StandardSystem parse_problem(const std::string& text) {
    std::istringstream in(text);
    return parse_problem(in);
}

StandardSystem read_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_problem(in);
}

void write_problem(std::ostream& out, const StandardSystem& s) {
    for (const auto& e : s.equations) out << to_string(e, s.vars) << '\n';
}

void write_solved_form(std::ostream& out, const SolvedForm& f) {
    std::vector<SlpId> roots;
    for (const auto& b : f.bindings) {
        out << f.vars.name(b.lhs) << " -> ";
        if (b.is_lateral()) {
            out << "[slp:N" << (b.label.value + 1) << "] * " << f.vars.name(b.tail) << '\n';
            roots.push_back(b.label);
        } else {
            out << to_string(*b.term, f.vars) << '\n';
        }
    }
    if (!roots.empty()) {
        out << "SLP:\n";
        f.slps->write(out, f.vars, roots);
    }
}

void write_substitution(std::ostream& out, const Substitution& sigma, const VarTable& vars) {
    for (const auto& [v, t] : sigma.bindings) out << vars.name(v) << " -> " << to_string(t, vars) << '\n';
}

SolvedForm parse_substitution(std::istream& in, VarTable vars) {
    static const std::regex lateral(R"(^\s*\[slp:N([0-9]+)\]\s*\*\s*([A-Za-z_][A-Za-z0-9_]*)\s*$)");
    static const std::regex terminal(R"(^\s*N([0-9]+)\s*->\s*([A-Za-z_][A-Za-z0-9_]*)\s*$)");
    static const std::regex pair(R"(^\s*N([0-9]+)\s*->\s*N([0-9]+)\s+N([0-9]+)\s*$)");

    SolvedForm f;
    auto store = std::make_shared<SlpStore>();
    struct PendingLateral {
        std::size_t binding;
        unsigned long file_id;
        std::size_t line;
    };
    std::vector<PendingLateral> laterals;
    std::map<unsigned long, SlpId> ids;
    bool in_slp = false;
    std::string raw;
    for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
        const std::string line = strip_comment(raw);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::smatch m;
        if (line.find("SLP:") != std::string::npos && line.find("->") == std::string::npos) {
            in_slp = true;
            continue;
        }
        if (in_slp) {
            if (std::regex_match(line, m, terminal)) {
                ids[std::stoul(m[1])] = store->atom(vars.intern(m[2].str()));
            } else if (std::regex_match(line, m, pair)) {
                auto l = ids.find(std::stoul(m[2]));
                auto r = ids.find(std::stoul(m[3]));
                if (l == ids.end() || r == ids.end()) throw ParseError(line_no, 1, "production refers to an undefined nonterminal");
                ids[std::stoul(m[1])] = store->concat(l->second, r->second);
            } else {
                throw ParseError(line_no, 1, "expected `Ni -> a` or `Ni -> Nj Nk`");
            }
            continue;
        }
        const auto arrow = line.find("->");
        if (arrow == std::string::npos) throw ParseError(line_no, 1, "expected `X -> term`");
        const auto lhs_toks = lex(line.substr(0, arrow), line_no, true);
        if (lhs_toks.size() != 2 || lhs_toks[0].kind != Tok::Ident) throw ParseError(line_no, 1, "expected a variable before '->'");
        const VarId lhs = vars.intern(lhs_toks[0].text);
        const std::string rhs = line.substr(arrow + 2);
        if (std::regex_match(rhs, m, lateral)) {
            laterals.push_back({f.bindings.size(), std::stoul(m[1]), line_no});
            f.bindings.push_back({lhs, std::nullopt, {}, vars.intern(m[2].str())});
            continue;
        }
        const auto toks = lex(rhs, line_no, true);
        TermParser p(toks, line_no, vars);
        Term t = p.expr();
        if (p.peek().kind != Tok::End) p.fail(p.peek(), "unexpected '" + p.peek().text + "'");
        f.bindings.push_back({lhs, t, {}, {}});
    }
    for (const auto& l : laterals) {
        auto it = ids.find(l.file_id);
        if (it == ids.end()) throw ParseError(l.line, 1, "binding refers to an undefined nonterminal");
        f.bindings[l.binding].label = it->second;
    }
    f.vars = std::move(vars);
    if (!laterals.empty()) f.slps = std::move(store);
    return f;
}

SolvedForm parse_substitution(const std::string& text, VarTable vars) {
    std::istringstream in(text);
    return parse_substitution(in, std::move(vars));
}

}  // namespace osd
