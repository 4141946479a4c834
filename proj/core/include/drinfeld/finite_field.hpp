#pragma once

// Finite fields F_{q^m} with q = p^e, always realized directly over F_p as
// F_p[x]/(f) with deg f = e*m. The copy of F_q inside is fixed by an explicit
// embedding, so every field built for the same (p, e) agrees on what "the
// constants" are.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/prime_poly.hpp"

namespace drinfeld {

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

class FieldElem {
public:
  FieldElem() = default;
  // coords are power-basis coordinates; they are reduced mod p and mod the
  // field modulus.
  FieldElem(FieldPtr field, fp::Coeffs coords);

  const FieldPtr& field() const { return field_; }
  bool valid() const { return field_ != nullptr; }

  // Internal trimmed representation.
  const fp::Coeffs& poly() const { return c_; }
  // Padded to exactly the field degree over F_p.
  fp::Coeffs coords() const;

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  FieldElem inverse() const;
  FieldElem pow(std::uint64_t e) const;
  // x^{q^k}; k is taken modulo the degree over F_q, so negative k gives the
  // inverse Frobenius (in particular q-th roots for k = -1).
  FieldElem frobenius_pow(std::int64_t k) const;
  // x^{p^k}
  FieldElem frobenius_p(std::uint64_t k) const;

  // Integer code sum c_i p^i; throws std::overflow_error when it does not fit.
  std::uint64_t index() const;

  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }
  // Total order by the integer code (highest coordinate most significant).
  bool operator<(const FieldElem& o) const;

  // Prime-field elements print as integers, others as polynomials in var.
  std::string to_string(const std::string& var = "z") const;

private:
  FieldPtr field_;
  fp::Coeffs c_;
};

class FiniteField : public std::enable_shared_from_this<FiniteField> {
public:
  // Deterministic field: modulus = smallest irreducible of degree e*m.
  static FieldPtr make(std::uint32_t p, unsigned e, unsigned m);
  // Field with a caller-chosen modulus (must be monic irreducible of degree e*m).
  static FieldPtr with_modulus(std::uint32_t p, unsigned e, unsigned m, fp::Coeffs modulus);

  std::uint32_t characteristic() const { return p_; }
  unsigned base_degree() const { return e_; }    // e
  unsigned relative_degree() const { return m_; }  // m
  unsigned degree() const { return e_ * m_; }   // over F_p
  std::uint64_t base_order() const { return q_; }
  // p^{e m} when it fits in 64 bits.
  std::optional<std::uint64_t> order() const;
  const fp::Coeffs& modulus() const { return red_.modulus(); }
  const fp::ModReducer& reducer() const { return red_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(std::int64_t c) const;
  FieldElem element(fp::Coeffs coords) const;
  FieldElem generator() const;  // class of x
  FieldElem from_index(std::uint64_t idx) const;

  // The subfield F_q as its own field object (self when m == 1).
  FieldPtr base() const;
  // Image of an element of base() in this field.
  FieldElem embed_base(const FieldElem& c) const;
  // Inverse of embed_base; nullopt when the element is not in F_q.
  std::optional<FieldElem> to_base(const FieldElem& x) const;

  // Apply the absolute Frobenius y -> y^p to coordinates (trimmed input).
  fp::Coeffs apply_frobenius_p(const fp::Coeffs& v) const;

  bool same_as(const FiniteField& o) const;

private:
  FiniteField(std::uint32_t p, unsigned e, unsigned m, fp::Coeffs modulus);
  void init_base();
  const std::vector<fp::Coeffs>& frobenius_columns() const;

  std::uint32_t p_;
  unsigned e_, m_;
  std::uint64_t q_;
  fp::ModReducer red_;
  FieldPtr base_;                         // null when m == 1
  std::vector<fp::Coeffs> base_images_;   // images of z^j, j < e
  std::vector<std::size_t> base_rows_;    // preimage solver for to_base
  std::vector<std::uint32_t> base_inv_;

  mutable std::once_flag frob_once_;
  mutable std::vector<fp::Coeffs> frob_cols_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

// Field homomorphism F -> G between fields of the same characteristic with
// deg F | deg G. The image of the generator is the smallest root of F's
// modulus in G which is also compatible with both fields' copies of F_q.
class Embedding {
public:
  static Embedding find(const FieldPtr& from, const FieldPtr& to);

  const FieldPtr& source() const { return from_; }
  const FieldPtr& target() const { return to_; }
  const FieldElem& generator_image() const { return gen_image_; }

  FieldElem operator()(const FieldElem& x) const;
  std::optional<FieldElem> preimage(const FieldElem& y) const;

private:
  FieldPtr from_, to_;
  FieldElem gen_image_;
  std::vector<fp::Coeffs> images_;  // image of x^j
  // Preimage solver: rows_ selects n_from coordinates on which the image
  // matrix is invertible; inv_ is that inverse (row-major).
  std::vector<std::size_t> rows_;
  std::vector<std::uint32_t> inv_;
};

}  // namespace drinfeld
