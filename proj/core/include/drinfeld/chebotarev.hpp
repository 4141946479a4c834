#pragma once

// Frobenius statistics mod ell: exact char-poly distributions on GL_r(F_ell)
// and sampled Frobenius char polys over all small primes, compared by total
// variation distance.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "drinfeld/frobenius_charpoly.hpp"

namespace drinfeld {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Coefficient indices (c_0, ..., c_{r-1}) of a monic degree-r polynomial.
using CharKey = std::vector<std::uint64_t>;
CharKey charkey(const FieldPoly& f);
FieldPoly charkey_poly(const FieldPtr& field, const CharKey& k);

enum class GLBackend {
  Enumerate,  // every matrix, budgeted
  Formula,    // counts per factorization type
  Auto,       // Enumerate for |F| <= 5 and r = 3, else Formula
};
const char* to_string(GLBackend b);

struct GLDistribution {
  unsigned r = 0;
  FieldPtr field;
  GLBackend backend = GLBackend::Auto;
  std::map<CharKey, BigInt> counts;  // only nonzero counts
  BigInt total;                      // |GL_r(F)|
};

BigInt gl_order(unsigned r, std::uint64_t field_order);

// Throws BudgetExceeded when enumeration would visit more than `budget` matrices.
GLDistribution gl_charpoly_distribution(unsigned r, const FieldPtr& field, GLBackend backend = GLBackend::Auto,
                                        std::uint64_t budget = 50'000'000, unsigned threads = 1);

struct FrobeniusSample {
  SparsePoly prime;
  FieldPoly charpoly;  // over F_ell
  FieldElem det;       // det of Frobenius on phi[ell]
  bool det_ok = false;
};

struct SampleOptions {
  unsigned threads = 1;
  double tv_threshold = 0.1;
  GLBackend backend = GLBackend::Auto;
  std::uint64_t budget = 50'000'000;
  CharPolyOptions charpoly{};
  FrobeniusSource det_source = FrobeniusSource::Motive;
};

struct SampleReport {
  explicit SampleReport(SparsePoly l) : ell(std::move(l)) {}

  std::uint32_t p = 0;
  unsigned e = 0;
  std::uint64_t q = 0;
  unsigned r = 0;
  SparsePoly ell;
  unsigned max_deg = 0;
  std::shared_ptr<const ResidueField> fl;
  std::vector<FrobeniusSample> samples;  // prime enumeration order
  std::size_t bad_primes_skipped = 0;
  std::map<CharKey, std::uint64_t> empirical;
  GLDistribution oracle;
  BigRational tv_exact;
  double tv_distance = 0;
  double tv_threshold = 0.1;
  bool irreducible_seen = false;
  bool det_covers = false;
  std::vector<std::string> warnings;
};

SampleReport sample_frobenii(const DrinfeldModule& d, const SparsePoly& ell, unsigned max_deg,
                             const SampleOptions& opt = {});

struct SurjectivityVerdict {
  bool consistent = false;
  bool evidence_only = false;  // hypotheses of the theorem not met
  std::vector<std::string> reasons;
  std::string note;
  std::string to_string() const { return consistent ? "consistent" : "flagged"; }
};

SurjectivityVerdict surjectivity_evidence(const SampleReport& report);

// The constant of the surjectivity theorem is not explicit; every verdict carries this.
extern const char* const kSurjectivityConstantNote;

}  // namespace drinfeld
