#pragma once

// Reduction of a Drinfeld module at a prime, height, torsion over finite
// fields with explicit Frobenius matrices, Frobenius on the reduced motive,
// and quotient isogenies by Frobenius-stable torsion subspaces.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "drinfeld/matrix.hpp"
#include "drinfeld/skew_algebra.hpp"

namespace drinfeld {

class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class ReductionType { Good, StableBad };

struct ReducedModule {
  SparsePoly prime;
  std::shared_ptr<const ResidueField> residue;
  std::vector<FieldElem> coeffs;  // reduced g_0, ..., g_r in F_p
  unsigned rank = 0;              // rank of the generic module
  unsigned reduced_rank = 0;      // largest i with nonzero reduced g_i
  ReductionType type = ReductionType::Good;
  SkewF phi_T;

  const FieldPtr& field() const { return residue->field(); }
  std::int64_t degree() const { return prime.degree(); }
  std::string type_string() const;
};

// Throws std::domain_error when every non-constant coefficient vanishes.
ReducedModule reduce_mod(const DrinfeldModule& d, const SparsePoly& prime);

// a -> phi_a in F_p{tau}.
SkewF phi_of(const ReducedModule& r, const SparsePoly& a);

struct HeightResult {
  std::int64_t h = 0;
  std::int64_t m_p = 0;   // lowest tau-exponent of the reduced phi_p
  std::int64_t m_p2 = 0;  // same for p^2
  bool consistent = false;  // m_p divisible by deg p and m_p2 = 2 m_p
};
HeightResult height(const ReducedModule& r);

// F_q-dimension of ker phi_{p^e'} over an algebraic closure.
std::int64_t torsion_at_char(const ReducedModule& r, unsigned e_prime);

struct TorsionOptions {
  unsigned max_splitting_degree = 5000;  // cap on m
  unsigned max_field_degree = 4000;      // cap on [F_p^{(m)} : F_p]
};

// Smallest m with phi[ell] contained in F_p^{(m)}: the order of tau^{deg p}
// in F_p{tau} / F_p{tau} phi_ell.
unsigned torsion_splitting_degree(const ReducedModule& r, const SparsePoly& ell, unsigned cap = 5000);

struct TorsionSpace {
  SparsePoly ell;
  std::shared_ptr<const ResidueField> fl;
  unsigned splitting_degree = 0;
  FieldPtr ext;
  Embedding emb;                          // F_p -> ext
  std::vector<FieldElem> basis;           // F_q-basis of phi[ell], r deg ell elements
  std::vector<FieldElem> module_basis;    // F_ell-basis, r elements
  MatrixFq frobenius_matrix;              // over F_ell, column k = Frob(w_k)
  FieldPoly charpoly;

  TorsionSpace(SparsePoly l, std::shared_ptr<const ResidueField> f, MatrixFq m, FieldPoly c)
      : ell(std::move(l)), fl(std::move(f)), frobenius_matrix(std::move(m)), charpoly(std::move(c)) {}
};

TorsionSpace torsion_space(const ReducedModule& r, const SparsePoly& ell, const TorsionOptions& opt = {});

// Element sum_i phi_{lift(c_i)}(w_i) of phi[ell] with F_ell-coordinates c.
FieldElem torsion_element(const ReducedModule& r, const TorsionSpace& ts, const std::vector<FieldElem>& coords);

// F_q-basis of the F_ell-span of the given torsion points.
std::vector<FieldElem> fl_span_basis(const ReducedModule& r, const TorsionSpace& ts, const std::vector<FieldElem>& gens);

// Frobenius on the reduced motive F_p{tau}/F_p{tau} phi_ell: its
// characteristic polynomial over F_ell. Needs no torsion splitting field.
FieldPoly motive_frobenius_charpoly(const ReducedModule& r, const SparsePoly& ell);

struct Isogeny {
  SkewF u;
  SkewF source_T;
  SkewF target_T;
};

class QuotientError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// u is the monic linearized polynomial vanishing exactly on the F_q-span of
// x_basis (elements of ts.ext); psi_T = (u phi_T) / u on the right. Throws
// QuotientError when the span is not Frobenius-stable or not an A-module.
Isogeny quotient_by_kernel(const ReducedModule& r, const TorsionSpace& ts, const std::vector<FieldElem>& x_basis);

// F_p-dimension of ker f on a finite field (f over that field).
std::size_t kernel_dimension(const SkewF& f, const FieldPtr& field);

}  // namespace drinfeld
