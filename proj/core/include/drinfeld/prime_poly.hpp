#pragma once

// Dense univariate polynomials over a prime field F_p.
//
// These are the raw kernels behind every finite-field element in the
// library: field multiplication is a polynomial product reduced by the
// field modulus, and modulus selection needs an irreducibility test.
// Coefficient vectors are ascending and trimmed (no trailing zeros); the
// zero polynomial is the empty vector.

#include <cstdint>
#include <utility>
#include <vector>

namespace drinfeld::fp {

using Coeffs = std::vector<std::uint32_t>;

bool is_prime(std::uint64_t n);

std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p);
std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p);
std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p);
std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p);
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

void trim(Coeffs& a);
int degree(const Coeffs& a);

Coeffs add(const Coeffs& a, const Coeffs& b, std::uint32_t p);
Coeffs sub(const Coeffs& a, const Coeffs& b, std::uint32_t p);
Coeffs scale(const Coeffs& a, std::uint32_t c, std::uint32_t p);
Coeffs mul(const Coeffs& a, const Coeffs& b, std::uint32_t p);

// a = q*b + r with deg r < deg b. b must be nonzero.
std::pair<Coeffs, Coeffs> divmod(const Coeffs& a, const Coeffs& b, std::uint32_t p);
Coeffs rem(const Coeffs& a, const Coeffs& b, std::uint32_t p);

// Monic gcd; gcd(0, 0) = 0.
Coeffs gcd(Coeffs a, Coeffs b, std::uint32_t p);
Coeffs make_monic(const Coeffs& a, std::uint32_t p);

// Reduction context for a fixed monic modulus. Reduction only touches the
// nonzero low-order terms of the modulus, so sparse moduli (the common case
// for the smallest irreducibles) reduce in O(len * terms).
class ModReducer {
public:
  ModReducer(Coeffs modulus, std::uint32_t p);

  void reduce(Coeffs& a) const;
  Coeffs mulmod(const Coeffs& a, const Coeffs& b) const;
  Coeffs powmod(const Coeffs& base, std::uint64_t e) const;

  int degree() const { return n_; }
  std::uint32_t prime() const { return p_; }
  const Coeffs& modulus() const { return f_; }

private:
  Coeffs f_;
  std::uint32_t p_;
  int n_;
  std::vector<std::pair<int, std::uint32_t>> low_;  // (j, p - f_j) for f_j != 0, j < n
};

// Ben-Or irreducibility test.
bool is_irreducible(const Coeffs& f, std::uint32_t p);

// Smallest monic irreducible of degree n over F_p, where candidates are
// ordered by the integer sum c_i p^i (constant term varies fastest).
Coeffs smallest_irreducible(std::uint32_t p, unsigned n);

}  // namespace drinfeld::fp
