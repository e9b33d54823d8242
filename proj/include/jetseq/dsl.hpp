#pragma once
// Text form for linear jet systems: a declaration language with a parser and
// a canonical printer that round-trip exactly.
//
//   system mac {
//     vars x1 x2 x3;
//     unknowns y;
//     eq: y(3,3) = 0;
//     eq q23: y(2,3) - y(1,1) = 0;
//     eq: y(2,2) = 0;
//   }
//
// A jet factor is an unknown name followed by parenthesized 1-based variable
// indices, one per derivative (repeat an index for a higher derivative); a
// bare unknown is its order-0 jet. Rational coefficients attach with '*'.
// Every equation equates a linear combination to 0. The document order is the
// highest derivative order that occurs in the equations, so the canonical
// printer loses nothing.

#include <stdexcept>
#include <string>
#include <vector>

#include "jetseq/system.hpp"

namespace jetseq {

// Parse failure carrying a 1-based text position; what() includes it.
class DslError : public std::runtime_error {
 public:
  DslError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct DocumentEquation {
  std::string label;  // empty when the equation is unnamed
  // Like terms combined, zero coefficients dropped, frame order (degree
  // descending, then index ascending-lex, then unknown ascending).
  Equation terms;
  bool operator==(const DocumentEquation&) const = default;
};

struct SystemDocument {
  std::string name;
  std::vector<std::string> variables;
  std::vector<std::string> unknowns;
  int order = 0;  // highest derivative order occurring in the equations
  std::vector<DocumentEquation> equations;

  JetFrame frame() const;          // JetFrame over (variables, unknowns, order)
  LinearJetSystem system() const;  // reduced system over frame()
  bool operator==(const SystemDocument&) const = default;
};

SystemDocument parse_document(const std::string& text);
std::string print_document(const SystemDocument& doc);

// Wraps a reduced system in a document, one equation per stored row. Default
// names are x1..xn and u1..um (just "u" when there is a single unknown).
// Throws std::invalid_argument when supplied names do not match the frame,
// names repeat, or the frame order exceeds the order visible in the
// equations (the text form cannot state an order explicitly).
SystemDocument document_of(const LinearJetSystem& s, const std::string& name,
                           std::vector<std::string> variables = {},
                           std::vector<std::string> unknowns = {});

// A built-in system as a document, using its customary names (xi1..xin for
// the vector-field systems, y for the scalar ones, u/v for the pair).
SystemDocument catalog_document(const std::string& name);

}  // namespace jetseq
