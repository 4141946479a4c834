#pragma once

// Characteristic polynomial of Frobenius P(x) = x^r + a_1 x^{r-1} + ... + a_r
// in A[x], found from the identity
//   tau^{r d} + sum_i (phi (x) F_p)_{a_i} tau^{(r-i) d} = 0,   d = deg p,
// as an F_p-linear system in the coefficients of the a_i. Torsion and motive
// computations mod ell serve as independent oracles.

#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/drinfeld_core.hpp"

namespace drinfeld {

enum class DegreeBounds {
  Sharp,   // deg a_i <= floor(i d / r)
  Relaxed,  // deg a_i <= i d, used to test the sharper bound
};

enum class FrobeniusSource { Torsion, Motive, Auto };

struct CharPoly {
  SparsePoly prime;
  unsigned r = 0;
  std::vector<SparsePoly> a;  // a[0] = 1, a[1..r]
  FieldElem epsilon;          // a_r = epsilon * p
  // How uniqueness was reached: "unique", "epsilon-anchor" or "crt".
  std::string resolution;
  std::size_t initial_nullity = 0;  // solution-space dimension before disambiguation

  std::string to_string(const std::string& var = "x") const;
};

struct CharPolyOptions {
  DegreeBounds bounds = DegreeBounds::Sharp;
  TorsionOptions torsion{};
  // Auto uses torsion when the splitting field has at most this degree over F_p.
  unsigned auto_torsion_limit = 300;
};

CharPoly charpoly_linear_system(const DrinfeldModule& d, const SparsePoly& prime, const CharPolyOptions& opt = {});
// Same, reusing an existing reduction.
CharPoly charpoly_linear_system(const DrinfeldModule& d, const ReducedModule& red, const CharPolyOptions& opt = {});

// Closed form (-1)^r (-1)^{d(r+1)} Nr(g_r)^{-1}, as an element of F_q.
FieldElem epsilon_of(const DrinfeldModule& d, const SparsePoly& prime);
FieldElem epsilon_of(const ReducedModule& red);

// Characteristic polynomial of Frobenius on phi[ell], over F_ell.
FieldPoly charpoly_mod_l(const DrinfeldModule& d, const SparsePoly& prime, const SparsePoly& ell,
                         FrobeniusSource src = FrobeniusSource::Torsion, const CharPolyOptions& opt = {});
FieldPoly charpoly_mod_l(const ReducedModule& red, const SparsePoly& ell, FrobeniusSource src = FrobeniusSource::Torsion,
                         const CharPolyOptions& opt = {});

// P mod ell as a monic polynomial over F_ell.
FieldPoly reduce_charpoly(const CharPoly& cp, const ResidueField& fl);

// tau^{rd} + sum_i phi_{a_i} tau^{(r-i)d}, computed by independent skew products.
SkewF residual(const ReducedModule& red, const CharPoly& cp);

struct DetCheck {
  bool ok = false;
  FieldElem signed_constant;  // (-1)^r a_r mod ell
  FieldElem prime_residue;    // p mod ell
  FieldElem frobenius_det;    // det of Frobenius on phi[ell]
};

DetCheck det_check(const ReducedModule& red, const CharPoly& cp, const SparsePoly& ell,
                   FrobeniusSource src = FrobeniusSource::Auto, const CharPolyOptions& opt = {});
DetCheck det_check(const DrinfeldModule& d, const SparsePoly& prime, const SparsePoly& ell,
                   FrobeniusSource src = FrobeniusSource::Auto, const CharPolyOptions& opt = {});

// Batch evaluation over a prime list, results in input order.
std::vector<CharPoly> charpoly_batch(const DrinfeldModule& d, const std::vector<SparsePoly>& primes,
                                     unsigned threads = 1, const CharPolyOptions& opt = {});

}  // namespace drinfeld
