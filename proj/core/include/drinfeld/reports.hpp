#pragma once

// Run configuration, the suite registry behind `verify`, and the JSON reports
// of every subcommand. JSON is returned as text; all field elements and big
// counts are serialized as strings.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/chebotarev.hpp"
#include "drinfeld/newton_valuation.hpp"

namespace drinfeld {

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct Config {
  std::uint32_t p = 5;
  unsigned e = 1;
  unsigned r = 3;
  // Custom phi_T coefficients g_1..g_r; g_0 = T is implied.
  std::optional<std::vector<std::string>> coefficients;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t budget = 50'000'000;
  std::optional<unsigned> max_deg;  // sampling depth override

  // Throws UsageError on p not prime, r = 0, or a default family with r not
  // an odd prime or q < 3.
  void validate() const;
  std::uint64_t q() const;
  FieldPtr field() const;
  DrinfeldModule module() const;
  // Hypothesis violations that only downgrade verdicts.
  std::vector<std::string> warnings() const;
};

struct VerifyOutcome {
  std::string suite;
  bool pass = false;
  std::size_t checks = 0;
  std::string counterexample;  // JSON {inputs, expected, got}; set iff !pass
  double wall_seconds = 0;
};

// Registry order; `all` runs them in this order.
const std::vector<std::string>& suite_names();
// Throws UsageError for an unknown suite name.
std::vector<VerifyOutcome> run_suites(const Config& cfg, const std::string& suite);
// Wall times go to `timings` only, so the JSON is reproducible.
std::string verify_json(const Config& cfg, const std::vector<VerifyOutcome>& outcomes);

std::string phi_json(const Config& cfg, const SparsePoly& a);
std::string charpoly_json(const Config& cfg, const SparsePoly& prime, const std::optional<SparsePoly>& ell,
                          DegreeBounds bounds);
std::string torsion_json(const Config& cfg, const SparsePoly& prime, const SparsePoly& ell);
std::string newton_json(const Config& cfg, const SparsePoly& a, const Place& place);
std::string inertia_json(const Config& cfg, const SparsePoly& ell);
std::string sample_json(const Config& cfg, const SampleReport& rep, const SurjectivityVerdict& v);
std::string oracle_gl_json(const Config& cfg, const GLDistribution& g, const ResidueField& fl);

// Command-line entry: exit 0 on success, 1 on suite failure, 2 on usage error.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace drinfeld
