#pragma once

// Dense polynomials with coefficients in a finite field, plus the little
// factoring this library needs: roots of split squarefree polynomials
// (Cantor-Zassenhaus with deterministic splitting elements) and enumeration
// of monic irreducibles.

#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/finite_field.hpp"

namespace drinfeld {

class FieldPoly {
public:
  explicit FieldPoly(FieldPtr field);
  FieldPoly(FieldPtr field, std::vector<FieldElem> ascending);

  static FieldPoly constant(const FieldElem& c);
  static FieldPoly monomial(const FieldElem& c, std::size_t k);
  static FieldPoly x(const FieldPtr& field);

  const FieldPtr& field() const { return field_; }
  const std::vector<FieldElem>& coeffs() const { return c_; }
  int degree() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  const FieldElem& leading() const;
  FieldElem coeff(std::size_t i) const;

  FieldPoly operator+(const FieldPoly& o) const;
  FieldPoly operator-(const FieldPoly& o) const;
  FieldPoly operator*(const FieldPoly& o) const;
  FieldPoly operator*(const FieldElem& c) const;
  FieldPoly operator%(const FieldPoly& m) const;
  bool operator==(const FieldPoly& o) const;
  bool operator!=(const FieldPoly& o) const { return !(*this == o); }

  FieldPoly monic() const;
  FieldElem eval(const FieldElem& x) const;

  std::string to_string(const std::string& var = "x", const std::string& coeff_var = "z") const;

private:
  void trim();

  FieldPtr field_;
  std::vector<FieldElem> c_;
};

std::pair<FieldPoly, FieldPoly> divmod(const FieldPoly& a, const FieldPoly& b);
FieldPoly gcd(FieldPoly a, FieldPoly b);
FieldPoly powmod(const FieldPoly& base, std::uint64_t e, const FieldPoly& m);
// base^{p^k} mod m by k successive p-th powers.
FieldPoly pow_p_power_mod(const FieldPoly& base, std::uint64_t k, const FieldPoly& m);

// Roots of g in its coefficient field, sorted by integer code. g must be
// nonzero; repeated roots are reported once.
std::vector<FieldElem> roots(const FieldPoly& g);

// Same, when g is known to be squarefree with all roots in the subfield of
// degree s over F_p. Cheaper than roots() when s is small.
std::vector<FieldElem> roots_in_subfield(const FieldPoly& g, unsigned s);

bool is_irreducible(const FieldPoly& f);

// All monic irreducibles of degree d over field, ordered by the integer code
// of (c_0, ..., c_{d-1}) with c_0 varying fastest.
std::vector<FieldPoly> monic_irreducibles(const FieldPtr& field, unsigned d);

}  // namespace drinfeld
