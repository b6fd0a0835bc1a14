#include "polydet/text.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace polydet {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class ExprParser {
 public:
  ExprParser(std::string_view text, const std::vector<std::string>& vars, std::size_t line, std::size_t col0)
      : text_(text), vars_(vars), line_(line), col0_(col0) {}

  Polynomial parse() {
    Polynomial result(vars_.size());
    skip_ws();
    if (at_end()) fail("empty expression");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    for (;;) {
      auto [exps, coeff] = term();
      result.add_term(exps, negative ? BigInt(-coeff) : coeff);
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') fail(std::string("unexpected '") + peek() + "'");
      negative = peek() == '-';
      ++pos_;
    }
    return result;
  }

 private:
  Term term() {
    Exponents exps(vars_.size(), 0);
    std::vector<bool> used(vars_.size(), false);
    BigInt coeff = 1;
    for (;;) {
      skip_ws();
      if (at_end()) fail("expected a number or variable");
      if (is_digit(peek())) {
        coeff *= number();
      } else if (is_ident_start(peek())) {
        const std::size_t at = pos_;
        const std::size_t v = variable();
        if (used[v]) fail_at(at, "variable '" + vars_[v] + "' repeated in term; use ^");
        used[v] = true;
        skip_ws();
        unsigned e = 1;
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_ws();
          if (at_end() || !is_digit(peek())) fail("expected exponent after '^'");
          const std::size_t epos = pos_;
          BigInt big = number();
          if (big > 1'000'000) fail_at(epos, "exponent too large");
          e = static_cast<unsigned>(big);
        }
        exps[v] = e;
      } else {
        fail(std::string("unexpected '") + peek() + "'");
      }
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
    }
    return {exps, coeff};
  }

  BigInt number() {
    const std::size_t start = pos_;
    while (!at_end() && is_digit(peek())) ++pos_;
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  std::size_t variable() {
    const std::size_t start = pos_;
    while (!at_end() && is_ident_char(peek())) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) fail_at(start, "undeclared variable '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - vars_.begin());
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
    throw ParseError(what, line_, col0_ + at + 1);
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t line_;
  std::size_t col0_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> parse_vars(std::string_view line, std::size_t lineno) {
  std::vector<std::string> vars;
  std::size_t pos = 4;  // past "vars"
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos >= line.size()) break;
    const std::size_t start = pos;
    if (!is_ident_start(line[pos])) throw ParseError("invalid variable name", lineno, pos + 1);
    while (pos < line.size() && is_ident_char(line[pos])) ++pos;
    if (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos])))
      throw ParseError("invalid variable name", lineno, pos + 1);
    std::string name(line.substr(start, pos - start));
    if (std::find(vars.begin(), vars.end(), name) != vars.end())
      throw ParseError("duplicate variable '" + name + "'", lineno, start + 1);
    vars.push_back(std::move(name));
  }
  if (vars.empty()) throw ParseError("no variables declared", lineno, 1);
  return vars;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars, std::size_t line,
                            std::size_t column_offset) {
  return ExprParser(text, vars, line, column_offset).parse();
}

PolyMatrix parse_matrix(std::string_view doc) {
  std::vector<std::string> vars;
  std::vector<Polynomial> entries;
  std::size_t order = 0;
  std::size_t rows = 0;
  std::size_t lineno = 0;
  std::size_t last_line = 0;

  std::size_t pos = 0;
  while (pos <= doc.size()) {
    std::size_t nl = doc.find('\n', pos);
    if (nl == std::string_view::npos) nl = doc.size();
    std::string_view raw = doc.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string_view body = trim(raw);
    if (body.empty() || body.front() == '#') continue;
    last_line = lineno;

    if (vars.empty()) {
      const std::size_t indent = static_cast<std::size_t>(body.data() - raw.data());
      if (body.substr(0, 4) != "vars" || (body.size() > 4 && !std::isspace(static_cast<unsigned char>(body[4]))))
        throw ParseError("expected 'vars' declaration", lineno, indent + 1);
      vars = parse_vars(raw.substr(indent), lineno);
      continue;
    }

    std::size_t cells = 0;
    std::size_t start = 0;
    for (;;) {
      std::size_t semi = raw.find(';', start);
      const std::size_t stop = semi == std::string_view::npos ? raw.size() : semi;
      entries.push_back(parse_polynomial(raw.substr(start, stop - start), vars, lineno, start));
      ++cells;
      if (semi == std::string_view::npos) break;
      start = semi + 1;
    }
    if (rows == 0) order = cells;
    if (cells != order) throw ParseError("non-square matrix: row has " + std::to_string(cells) + " entries, expected " +
                                             std::to_string(order), lineno, 1);
    ++rows;
  }
  if (vars.empty()) throw ParseError("expected 'vars' declaration", std::max<std::size_t>(last_line, 1), 1);
  if (rows == 0) throw ParseError("matrix has no rows", last_line, 1);
  if (rows != order)
    throw ParseError("non-square matrix: " + std::to_string(rows) + " rows of " + std::to_string(order) + " entries",
                     last_line, 1);
  return PolyMatrix(std::move(vars), order, entries);
}

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& vars) {
  if (p.is_zero()) return "0";
  std::vector<const std::pair<const Exponents, BigInt>*> terms;
  for (const auto& t : p.terms()) terms.push_back(&t);
  auto total = [](const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0ull); };
  std::sort(terms.begin(), terms.end(), [&](auto* a, auto* b) {
    const auto da = total(a->first), db = total(b->first);
    if (da != db) return da > db;
    return a->first > b->first;
  });

  std::ostringstream os;
  bool first = true;
  for (const auto* t : terms) {
    const auto& [exps, coeff] = *t;
    const bool negative = coeff < 0;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;

    const BigInt mag = negative ? BigInt(-coeff) : coeff;
    bool wrote = false;
    if (mag != 1 || total(exps) == 0) {
      os << mag;
      wrote = true;
    }
    for (std::size_t v = 0; v < exps.size(); ++v) {
      if (exps[v] == 0) continue;
      if (wrote) os << '*';
      os << vars[v];
      if (exps[v] > 1) os << '^' << exps[v];
      wrote = true;
    }
  }
  return os.str();
}

std::string format_matrix(const PolyMatrix& m) {
  std::ostringstream os;
  os << "vars";
  for (const auto& v : m.vars()) os << ' ' << v;
  os << '\n';
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = 0; j < m.order(); ++j) os << (j ? " ; " : "") << format_polynomial(m(i, j), m.vars());
    os << '\n';
  }
  return os.str();
}

}  // namespace polydet
