#include "drinfeld/prime_poly.hpp"

#include <stdexcept>

namespace drinfeld::fp {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 17; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint64_t s = std::uint64_t(a) + b;
  return std::uint32_t(s >= p ? s - p : s);
}

std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : std::uint32_t(std::uint64_t(a) + p - b);
}

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return std::uint32_t(std::uint64_t(a) * b % p);
}

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  std::uint64_t base = a % p;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return std::uint32_t(result);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw std::domain_error("inverse of zero in F_p");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  while (new_r) {
    std::int64_t quot = r / new_r;
    std::int64_t tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return std::uint32_t(t);
}

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Coeffs& a) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i]) return int(i);
  }
  return -1;
}

Coeffs add(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = add_mod(r[i], b[i], p);
  trim(r);
  return r;
}

Coeffs sub(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = sub_mod(r[i], b[i], p);
  trim(r);
  return r;
}

Coeffs scale(const Coeffs& a, std::uint32_t c, std::uint32_t p) {
  Coeffs r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul_mod(a[i], c, p);
  trim(r);
  return r;
}

Coeffs mul(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n = a.size() + b.size() - 1;
  Coeffs r(n);
  if (p < (1U << 16)) {
    // Products are below 2^32, so a 64-bit accumulator never overflows
    // for any realistic length.
    std::vector<std::uint64_t> acc(n, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::uint64_t ai = a[i];
      if (!ai) continue;
      std::uint64_t* row = acc.data() + i;
      for (std::size_t j = 0; j < b.size(); ++j) row[j] += ai * b[j];
    }
    for (std::size_t k = 0; k < n; ++k) r[k] = std::uint32_t(acc[k] % p);
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], p), p);
      }
    }
  }
  trim(r);
  return r;
}

std::pair<Coeffs, Coeffs> divmod(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
  const int db = degree(b);
  if (db < 0) throw std::domain_error("polynomial division by zero");
  Coeffs r = a;
  trim(r);
  const int da = degree(r);
  if (da < db) return {Coeffs{}, r};
  Coeffs q(std::size_t(da - db + 1), 0);
  const std::uint32_t inv_lead = inv_mod(b[std::size_t(db)], p);
  for (int i = da; i >= db; --i) {
    const std::uint32_t c = mul_mod(r[std::size_t(i)], inv_lead, p);
    if (!c) continue;
    q[std::size_t(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      if (!b[std::size_t(j)]) continue;
      auto& slot = r[std::size_t(i - db + j)];
      slot = sub_mod(slot, mul_mod(c, b[std::size_t(j)], p), p);
    }
  }
  trim(q);
  trim(r);
  return {q, r};
}

Coeffs rem(const Coeffs& a, const Coeffs& b, std::uint32_t p) { return divmod(a, b, p).second; }

Coeffs make_monic(const Coeffs& a, std::uint32_t p) {
  const int d = degree(a);
  if (d < 0) return {};
  return scale(a, inv_mod(a[std::size_t(d)], p), p);
}

Coeffs gcd(Coeffs a, Coeffs b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

ModReducer::ModReducer(Coeffs modulus, std::uint32_t p) : f_(std::move(modulus)), p_(p) {
  trim(f_);
  n_ = fp::degree(f_);
  if (n_ < 1 || f_.back() != 1) throw std::invalid_argument("modulus must be monic of degree >= 1");
  for (int j = 0; j < n_; ++j) {
    if (f_[std::size_t(j)]) low_.emplace_back(j, p_ - f_[std::size_t(j)]);
  }
}

void ModReducer::reduce(Coeffs& a) const {
  trim(a);
  for (int i = int(a.size()) - 1; i >= n_; --i) {
    const std::uint32_t c = a[std::size_t(i)];
    if (!c) continue;
    a[std::size_t(i)] = 0;
    const int shift = i - n_;
    for (const auto& [j, neg] : low_) {
      auto& slot = a[std::size_t(shift + j)];
      slot = add_mod(slot, mul_mod(c, neg, p_), p_);
    }
  }
  if (a.size() > std::size_t(n_)) a.resize(std::size_t(n_));
  trim(a);
}

Coeffs ModReducer::mulmod(const Coeffs& a, const Coeffs& b) const {
  Coeffs r = mul(a, b, p_);
  reduce(r);
  return r;
}

Coeffs ModReducer::powmod(const Coeffs& base, std::uint64_t e) const {
  Coeffs result{1};
  Coeffs b = base;
  reduce(b);
  while (e) {
    if (e & 1) result = mulmod(result, b);
    e >>= 1;
    if (e) b = mulmod(b, b);
  }
  reduce(result);
  return result;
}

bool is_irreducible(const Coeffs& f_in, std::uint32_t p) {
  Coeffs f = f_in;
  trim(f);
  const int n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  if (f[0] == 0) return false;
  f = make_monic(f, p);
  ModReducer red(f, p);
  const Coeffs x{0, 1};
  Coeffs h = x;
  for (int i = 1; i <= n / 2; ++i) {
    h = red.powmod(h, p);
    Coeffs g = gcd(sub(h, x, p), f, p);
    if (degree(g) > 0) return false;
  }
  return true;
}

Coeffs smallest_irreducible(std::uint32_t p, unsigned n) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
  if (n == 0) throw std::invalid_argument("field degree must be positive");
  if (n == 1) return Coeffs{0, 1};
  Coeffs f(n + 1, 0);
  f[n] = 1;
  // Odometer over (c_0, ..., c_{n-1}) with c_0 the fastest digit.
  while (true) {
    std::size_t i = 0;
    while (i < n) {
      if (++f[i] < p) break;
      f[i] = 0;
      ++i;
    }
    if (i == n) throw std::logic_error("no irreducible polynomial found");
    if (f[0] != 0 && is_irreducible(f, p)) return f;
  }
}

}  // namespace drinfeld::fp
