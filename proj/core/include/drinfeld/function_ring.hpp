#pragma once

// A = F_q[T] as sparse polynomials, its places (finite primes and infinity),
// rational functions, valuations, residue fields and the textual syntax used
// by the CLI.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "drinfeld/field_poly.hpp"
#include "drinfeld/matrix.hpp"

namespace drinfeld {

class ParseError : public std::invalid_argument {
public:
  ParseError(const std::string& msg, std::string token, std::size_t pos)
      : std::invalid_argument(msg + " at '" + token + "' (offset " + std::to_string(pos) + ")"),
        token_(std::move(token)), pos_(pos) {}
  const std::string& token() const { return token_; }
  std::size_t position() const { return pos_; }

private:
  std::string token_;
  std::size_t pos_;
};

class SparsePoly {
public:
  struct Term {
    std::int64_t exp;
    FieldElem coeff;
  };

  explicit SparsePoly(FieldPtr base);
  // Terms in any order; equal exponents are merged and zeros dropped.
  SparsePoly(FieldPtr base, std::vector<Term> terms);

  static SparsePoly constant(const FieldElem& c);
  static SparsePoly from_int(const FieldPtr& base, std::int64_t c);
  static SparsePoly monomial(const FieldElem& c, std::int64_t exp);
  static SparsePoly T(const FieldPtr& base);
  // Accepts e.g. "T^3+2*T+1", "T-1", "(z+1)*T^2+z" (z generates F_q).
  static SparsePoly parse(const FieldPtr& base, std::string_view text);

  const FieldPtr& base() const { return base_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == 0); }
  std::int64_t degree() const { return terms_.empty() ? -1 : terms_.back().exp; }
  std::int64_t lowest_exponent() const { return terms_.empty() ? -1 : terms_.front().exp; }
  const FieldElem& leading_coeff() const;
  FieldElem coefficient(std::int64_t exp) const;
  bool is_monic() const { return !terms_.empty() && terms_.back().coeff.is_one(); }

  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator-(const SparsePoly& o) const;
  SparsePoly operator-() const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly operator*(const FieldElem& c) const;
  SparsePoly& operator+=(const SparsePoly& o) { return *this = *this + o; }
  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }
  bool operator==(const SparsePoly& o) const;
  bool operator!=(const SparsePoly& o) const { return !(*this == o); }
  // Degree first, then coefficients from the top (matches prime enumeration
  // order within each degree).
  bool operator<(const SparsePoly& o) const;

  // f^{q^k}: coefficients are fixed, exponents scale by q^k. Throws
  // std::overflow_error when an exponent leaves int64.
  SparsePoly frobenius_twist(std::int64_t k) const;
  SparsePoly pow(std::uint64_t n) const;
  SparsePoly monic() const;
  // Multiply by T^k (k may be negative when every exponent stays >= 0).
  SparsePoly shift(std::int64_t k) const;

  // Evaluate at an element of an extension of F_q (coefficients embedded via
  // the target's copy of F_q).
  FieldElem eval(const FieldElem& t) const;

  std::string to_string(const std::string& var = "T") const;

private:
  void normalize();

  FieldPtr base_;
  std::vector<Term> terms_;  // strictly increasing exponents, nonzero coefficients
};

std::pair<SparsePoly, SparsePoly> divmod(const SparsePoly& a, const SparsePoly& b);
std::optional<SparsePoly> exact_div(const SparsePoly& a, const SparsePoly& b);
SparsePoly gcd(SparsePoly a, SparsePoly b);

bool is_irreducible(const SparsePoly& f);
// Monic irreducibles of degree d in enumeration order (constant term fastest).
std::vector<SparsePoly> primes_of_degree(const FieldPtr& fq, unsigned d);

// Conversions between SparsePoly and dense FieldPoly over F_q.
FieldPoly to_field_poly(const SparsePoly& f);
SparsePoly from_field_poly(const FieldPoly& f);

class Place {
public:
  static Place infinity();
  static Place finite(SparsePoly generator);  // must be monic irreducible
  bool is_infinity() const { return !gen_.has_value(); }
  const SparsePoly& generator() const;
  std::int64_t degree() const { return gen_ ? gen_->degree() : 1; }
  std::string to_string() const;

private:
  std::optional<SparsePoly> gen_;
};

class RationalFn {
public:
  explicit RationalFn(SparsePoly num);
  RationalFn(SparsePoly num, SparsePoly den);  // normalizes; den != 0

  const SparsePoly& num() const { return num_; }
  const SparsePoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFn operator+(const RationalFn& o) const;
  RationalFn operator-(const RationalFn& o) const;
  RationalFn operator*(const RationalFn& o) const;
  RationalFn operator/(const RationalFn& o) const;
  bool operator==(const RationalFn& o) const { return num_ == o.num_ && den_ == o.den_; }

  std::string to_string() const;

private:
  SparsePoly num_, den_;
};

// nullopt encodes +infinity (the zero function).
std::optional<std::int64_t> valuation(const SparsePoly& f, const Place& v);
std::optional<std::int64_t> valuation(const RationalFn& f, const Place& v);

// A/(ell) realized as a finite field with a distinguished image t of T.
class ResidueField {
public:
  explicit ResidueField(SparsePoly ell);  // throws on reducible ell

  const SparsePoly& prime() const { return ell_; }
  const FieldPtr& field() const { return field_; }
  const FieldElem& t() const { return t_; }
  std::int64_t degree() const { return ell_.degree(); }

  FieldElem reduce(const SparsePoly& f) const;
  FieldElem embed_scalar(const FieldElem& c) const { return field_->embed_base(c); }
  // Unique representative of degree < deg ell.
  SparsePoly lift(const FieldElem& x) const;
  // Residues print through their lift, e.g. "2*T+1".
  std::string format(const FieldElem& x) const { return lift(x).to_string(); }

private:
  SparsePoly ell_;
  FieldPtr field_;
  FieldElem t_;
  std::optional<FpMatrix> lift_matrix_;  // only when e > 1
};

}  // namespace drinfeld
