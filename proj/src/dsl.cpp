#include "jetseq/dsl.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "jetseq/catalog.hpp"

namespace jetseq {

namespace {

std::string position_message(int line, int column, const std::string& message) {
  std::ostringstream out;
  out << "line " << line << ", col " << column << ": " << message;
  return out.str();
}

enum class TokenKind { kIdent, kInt, kPunct, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  int line = 1;
  int column = 1;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  size_t i = 0;
  const auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(c);
      ++i;
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = column;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok.kind = TokenKind::kIdent;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        tok.text.push_back(text[i]);
        advance(text[i]);
        ++i;
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = TokenKind::kInt;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        tok.text.push_back(text[i]);
        advance(text[i]);
        ++i;
      }
    } else if (std::string("{}();:,=*+-/").find(c) != std::string::npos) {
      tok.kind = TokenKind::kPunct;
      tok.text.assign(1, c);
      advance(c);
      ++i;
    } else {
      throw DslError(line, column, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(tok));
  }
  out.push_back({TokenKind::kEnd, "", line, column});
  return out;
}

// Orders term keys the way the jet frame does.
struct TermKeyLess {
  bool operator()(const std::pair<MultiIndex, int>& a,
                  const std::pair<MultiIndex, int>& b) const {
    return frame_less(a.first, a.second, b.first, b.second);
  }
};

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(tokenize(text)) {}

  SystemDocument run() {
    expect_keyword("system");
    doc_.name = expect_ident("a document name");
    expect_punct("{");
    expect_keyword("vars");
    doc_.variables = name_list("variable");
    expect_keyword("unknowns");
    doc_.unknowns = name_list("unknown");
    while (at_keyword("eq")) equation();
    expect_punct("}");
    if (peek().kind != TokenKind::kEnd)
      fail(peek(), "unexpected input after the closing '}'");
    return std::move(doc_);
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const Token& tok, const std::string& message) const {
    throw DslError(tok.line, tok.column, message);
  }

  bool at_keyword(const std::string& word) const {
    return peek().kind == TokenKind::kIdent && peek().text == word;
  }

  void expect_keyword(const std::string& word) {
    if (!at_keyword(word)) fail(peek(), "expected '" + word + "'");
    ++pos_;
  }

  std::string expect_ident(const std::string& what) {
    if (peek().kind != TokenKind::kIdent) fail(peek(), "expected " + what);
    return next().text;
  }

  void expect_punct(const std::string& text) {
    if (peek().kind != TokenKind::kPunct || peek().text != text)
      fail(peek(), "expected '" + text + "'");
    ++pos_;
  }

  bool take_punct(const std::string& text) {
    if (peek().kind == TokenKind::kPunct && peek().text == text) {
      ++pos_;
      return true;
    }
    return false;
  }

  long expect_int(const std::string& what) {
    if (peek().kind != TokenKind::kInt) fail(peek(), "expected " + what);
    const Token& tok = next();
    if (tok.text.size() > 18) fail(tok, "integer literal too large");
    return std::stol(tok.text);
  }

  std::vector<std::string> name_list(const std::string& what) {
    std::vector<std::string> names;
    std::set<std::string> seen;
    while (peek().kind == TokenKind::kIdent) {
      const Token& tok = peek();
      if (!seen.insert(tok.text).second) fail(tok, "duplicate " + what + " name '" + tok.text + "'");
      names.push_back(next().text);
    }
    if (names.empty()) fail(peek(), "expected at least one " + what + " name");
    expect_punct(";");
    return names;
  }

  void equation() {
    expect_keyword("eq");
    DocumentEquation eq;
    if (peek().kind == TokenKind::kIdent) eq.label = next().text;
    expect_punct(":");

    std::map<std::pair<MultiIndex, int>, Rational, TermKeyLess> combo;
    int sign = take_punct("-") ? -1 : 1;
    while (true) {
      term(sign, combo);
      if (take_punct("+")) {
        sign = 1;
        continue;
      }
      if (take_punct("-")) {
        sign = -1;
        continue;
      }
      break;
    }
    expect_punct("=");
    const Token& rhs = peek();
    if (expect_int("'0' on the right-hand side") != 0)
      fail(rhs, "the right-hand side must be 0");
    expect_punct(";");

    for (auto& [key, coeff] : combo) {
      if (coeff == 0) continue;  // cancelled terms do not count, even for the order
      if (key.first.degree() > doc_.order) doc_.order = key.first.degree();
      eq.terms.push_back({std::move(coeff), key.second, key.first});
    }
    doc_.equations.push_back(std::move(eq));
  }

  void term(int sign, std::map<std::pair<MultiIndex, int>, Rational, TermKeyLess>& combo) {
    // A second '-' here is the coefficient's own sign ("a + -2*u" and a bare
    // negated jet "-u" both read naturally).
    if (take_punct("-")) sign = -sign;
    Rational coeff = rat(sign);
    if (peek().kind == TokenKind::kInt) {
      const long num = expect_int("an integer");
      long den = 1;
      if (take_punct("/")) {
        const Token& den_tok = peek();
        den = expect_int("a denominator");
        if (den == 0) fail(den_tok, "zero denominator");
      }
      coeff = rat(sign * num, den);
      expect_punct("*");
    }

    const Token& name_tok = peek();
    const std::string name = expect_ident("an unknown name");
    int unknown = -1;
    for (size_t k = 0; k < doc_.unknowns.size(); ++k)
      if (doc_.unknowns[k] == name) unknown = static_cast<int>(k);
    if (unknown < 0) fail(name_tok, "unknown identifier '" + name + "'");

    MultiIndex mu(static_cast<int>(doc_.variables.size()));
    if (take_punct("(")) {
      do {
        const Token& idx_tok = peek();
        const long idx = expect_int("a variable index");
        if (idx < 1 || idx > static_cast<long>(doc_.variables.size()))
          fail(idx_tok, "variable index " + std::to_string(idx) + " out of range (1.." +
                            std::to_string(doc_.variables.size()) + ")");
        if (mu.degree() >= 16) fail(idx_tok, "derivative order above 16 is not supported");
        mu = mu.shifted(static_cast<int>(idx - 1));
      } while (take_punct(","));
      expect_punct(")");
    }
    combo[{std::move(mu), unknown}] += coeff;
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  SystemDocument doc_;
};

std::string rational_text(const Rational& r) { return r.get_str(); }

void print_jet(std::ostream& out, const SystemDocument& doc, int unknown, const MultiIndex& mu) {
  out << doc.unknowns[static_cast<size_t>(unknown)];
  if (mu.degree() == 0) return;
  out << '(';
  bool first = true;
  for (int i = 0; i < mu.size(); ++i)
    for (int rep = 0; rep < mu.exp[static_cast<size_t>(i)]; ++rep) {
      if (!first) out << ',';
      out << (i + 1);
      first = false;
    }
  out << ')';
}

void check_names(const std::vector<std::string>& names, const char* what, size_t expected) {
  if (names.size() != expected)
    throw std::invalid_argument(std::string(what) + " name count does not match the frame");
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size())
    throw std::invalid_argument(std::string("duplicate ") + what + " name");
}

}  // namespace

DslError::DslError(int line, int column, const std::string& message)
    : std::runtime_error(position_message(line, column, message)), line_(line), column_(column) {}

JetFrame SystemDocument::frame() const {
  return JetFrame(static_cast<int>(variables.size()), static_cast<int>(unknowns.size()), order);
}

LinearJetSystem SystemDocument::system() const {
  std::vector<Equation> eqs;
  eqs.reserve(equations.size());
  for (const auto& eq : equations) eqs.push_back(eq.terms);
  return LinearJetSystem::from_equations(frame(), eqs);
}

SystemDocument parse_document(const std::string& text) { return Parser(text).run(); }

std::string print_document(const SystemDocument& doc) {
  std::ostringstream out;
  out << "system " << doc.name << " {\n";
  out << "  vars";
  for (const auto& v : doc.variables) out << ' ' << v;
  out << ";\n  unknowns";
  for (const auto& u : doc.unknowns) out << ' ' << u;
  out << ";\n";
  for (const auto& eq : doc.equations) {
    out << "  eq";
    if (!eq.label.empty()) out << ' ' << eq.label;
    out << ':';
    if (eq.terms.empty()) {
      out << " 0*" << doc.unknowns.front();
    } else {
      for (size_t t = 0; t < eq.terms.size(); ++t) {
        const JetTerm& term = eq.terms[t];
        const bool negative = term.coeff < 0;
        if (t == 0)
          out << (negative ? " -" : " ");
        else
          out << (negative ? " - " : " + ");
        const Rational mag = negative ? Rational(-term.coeff) : term.coeff;
        if (mag != 1) out << rational_text(mag) << '*';
        print_jet(out, doc, term.unknown, term.mu);
      }
    }
    out << " = 0;\n";
  }
  out << "}\n";
  return out.str();
}

SystemDocument document_of(const LinearJetSystem& s, const std::string& name,
                           std::vector<std::string> variables,
                           std::vector<std::string> unknowns) {
  const JetFrame& frame = s.frame();
  const int n = frame.base_dim();
  const int m = frame.fiber_dim();
  if (variables.empty())
    for (int i = 1; i <= n; ++i) variables.push_back("x" + std::to_string(i));
  if (unknowns.empty()) {
    if (m == 1)
      unknowns = {"u"};
    else
      for (int k = 1; k <= m; ++k) unknowns.push_back("u" + std::to_string(k));
  }
  check_names(variables, "variable", static_cast<size_t>(n));
  check_names(unknowns, "unknown", static_cast<size_t>(m));

  SystemDocument doc;
  doc.name = name;
  doc.variables = std::move(variables);
  doc.unknowns = std::move(unknowns);
  doc.order = frame.order();

  const RationalMatrix& rows = s.equations();
  int max_degree = 0;
  for (int i = 0; i < rows.rows(); ++i) {
    DocumentEquation eq;
    for (int j = 0; j < rows.cols(); ++j) {
      if (rows.at(i, j) == 0) continue;
      const JetCoord& c = frame.coord(j);
      if (c.mu.degree() > max_degree) max_degree = c.mu.degree();
      eq.terms.push_back({rows.at(i, j), c.unknown, c.mu});
    }
    doc.equations.push_back(std::move(eq));
  }
  if (max_degree != frame.order() && rows.rows() > 0)
    throw std::invalid_argument(
        "the text form infers the order from the equations; this system's frame "
        "order exceeds every equation's order");
  if (rows.rows() == 0 && frame.order() != 0)
    throw std::invalid_argument(
        "the text form cannot state a jet order for a system with no equations");
  return doc;
}

SystemDocument catalog_document(const std::string& name) {
  const LinearJetSystem s = catalog_system(name);
  const int m = s.frame().fiber_dim();
  std::vector<std::string> unknowns;
  if (name.rfind("killing", 0) == 0 || name.rfind("conformal", 0) == 0) {
    for (int k = 1; k <= m; ++k) unknowns.push_back("xi" + std::to_string(k));
  } else if (name == "macaulay" || name == "macaulay_variant" || name == "mixed_pair") {
    unknowns = {"y"};
  } else if (name == "mixed_pair_cc2" || name == "mixed_pair_cc4") {
    unknowns = {"u", "v"};
  } else if (name == "mixed_pair_syzygy") {
    unknowns = {"U", "V"};
  }
  return document_of(s, name, {}, std::move(unknowns));
}

}  // namespace jetseq
