#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "drinfeld/prime_poly.hpp"

using namespace drinfeld::fp;

namespace {

// Number of monic irreducibles of degree n over F_p (Gauss).
std::uint64_t gauss_count(std::uint64_t p, unsigned n) {
  auto mobius = [](unsigned m) {
    int mu = 1;
    for (unsigned d = 2; d * d <= m; ++d) {
      if (m % d) continue;
      m /= d;
      if (m % d == 0) return 0;
      mu = -mu;
    }
    return m > 1 ? -mu : mu;
  };
  std::int64_t s = 0;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d) continue;
    std::int64_t pw = 1;
    for (unsigned i = 0; i < n / d; ++i) pw *= std::int64_t(p);
    s += mobius(d) * pw;
  }
  return std::uint64_t(s / n);
}

Coeffs from_code(std::uint64_t code, std::uint32_t p, unsigned n) {
  Coeffs c(n + 1);
  for (unsigned i = 0; i < n; ++i) {
    c[i] = std::uint32_t(code % p);
    code /= p;
  }
  c[n] = 1;
  return c;
}

// Irreducible iff no monic factor of degree 1..n/2 divides.
bool irreducible_by_trial(const Coeffs& f, std::uint32_t p) {
  const unsigned n = unsigned(degree(f));
  for (unsigned d = 1; 2 * d <= n; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      if (rem(f, from_code(code, p, d), p).empty()) return false;
    }
  }
  return n >= 1;
}

Coeffs random_poly(std::mt19937& rng, std::uint32_t p, int deg) {
  Coeffs c(std::size_t(deg + 1));
  for (auto& x : c) x = rng() % p;
  trim(c);
  return c;
}

}  // namespace

TEST_CASE("is_prime agrees with a sieve") {
  std::vector<bool> composite(2000, false);
  for (unsigned i = 2; i < 2000; ++i) {
    if (composite[i]) continue;
    for (unsigned j = 2 * i; j < 2000; j += i) composite[j] = true;
  }
  for (unsigned n = 0; n < 2000; ++n) CHECK(is_prime(n) == (n >= 2 && !composite[n]));
}

TEST_CASE("modular scalar arithmetic") {
  for (std::uint32_t p : {2U, 3U, 7U, 65521U, 4294967291U}) {
    for (std::uint32_t a = 1; a < std::min<std::uint32_t>(p, 50); ++a) {
      CHECK(mul_mod(a, inv_mod(a, p), p) == 1);
      CHECK(pow_mod(a, p - 1, p) == 1);
      CHECK(add_mod(a, sub_mod(0, a, p), p) == 0);
    }
  }
}

TEST_CASE("division reconstructs the dividend") {
  std::mt19937 rng(11);
  for (std::uint32_t p : {2U, 5U, 101U}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Coeffs a = random_poly(rng, p, int(rng() % 12));
      Coeffs b = random_poly(rng, p, int(rng() % 6));
      if (b.empty()) b = {1};
      const auto [q, r] = divmod(a, b, p);
      CHECK(degree(r) < degree(b));
      CHECK(add(mul(q, b, p), r, p) == a);
      const Coeffs g = gcd(a, b, p);
      if (!g.empty()) {
        CHECK(rem(a, g, p).empty());
        CHECK(rem(b, g, p).empty());
      }
    }
  }
}

TEST_CASE("Ben-Or agrees with trial division and Gauss counts") {
  for (std::uint32_t p : {2U, 3U, 5U}) {
    for (unsigned n = 1; n <= (p == 5 ? 4U : 6U); ++n) {
      std::uint64_t count = 1;
      for (unsigned i = 0; i < n; ++i) count *= p;
      std::uint64_t irr = 0;
      for (std::uint64_t code = 0; code < count; ++code) {
        const Coeffs f = from_code(code, p, n);
        const bool fast = is_irreducible(f, p);
        if (n <= 4) CHECK(fast == irreducible_by_trial(f, p));
        irr += fast;
      }
      CHECK(irr == gauss_count(p, n));
    }
  }
}

TEST_CASE("smallest irreducible follows the integer order") {
  CHECK(smallest_irreducible(5, 1) == Coeffs{0, 1});
  CHECK(smallest_irreducible(5, 2) == Coeffs{2, 0, 1});
  CHECK(smallest_irreducible(7, 3) == Coeffs{2, 0, 0, 1});
  CHECK(smallest_irreducible(2, 8) == Coeffs{1, 1, 0, 1, 1, 0, 0, 0, 1});
  // Nothing smaller is irreducible.
  for (std::uint32_t p : {3U, 5U}) {
    for (unsigned n = 2; n <= 4; ++n) {
      const Coeffs f = smallest_irreducible(p, n);
      std::uint64_t code = 0;
      for (unsigned i = n; i-- > 0;) code = code * p + f[i];
      for (std::uint64_t c = 0; c < code; ++c) CHECK_FALSE(is_irreducible(from_code(c, p, n), p));
    }
  }
}

TEST_CASE("ModReducer matches generic remainder") {
  std::mt19937 rng(5);
  for (std::uint32_t p : {2U, 7U, 257U}) {
    const Coeffs f = smallest_irreducible(p, 9);
    const ModReducer red(f, p);
    for (int trial = 0; trial < 100; ++trial) {
      const Coeffs a = random_poly(rng, p, 8), b = random_poly(rng, p, 8);
      CHECK(red.mulmod(a, b) == rem(mul(a, b, p), f, p));
    }
    // x^{p^9} = x in F_p[x]/(f).
    std::uint64_t pn = 1;
    for (int i = 0; i < 9 && pn < (1ULL << 40); ++i) pn *= p;
    if (pn < (1ULL << 40)) CHECK(red.powmod({0, 1}, pn) == Coeffs{0, 1});
  }
}
