#include "drinfeld/field_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace drinfeld {

namespace {

// Little-endian multiprecision natural number, just enough for exponents
// like (p^s - 1)/2.
struct BigNat {
  std::vector<std::uint32_t> limbs;

  static BigNat pow(std::uint32_t p, unsigned s) {
    BigNat n;
    n.limbs = {1};
    for (unsigned i = 0; i < s; ++i) {
      std::uint64_t carry = 0;
      for (auto& l : n.limbs) {
        std::uint64_t v = std::uint64_t(l) * p + carry;
        l = std::uint32_t(v);
        carry = v >> 32;
      }
      if (carry) n.limbs.push_back(std::uint32_t(carry));
    }
    return n;
  }
  void decrement() {
    for (auto& l : limbs) {
      if (l--) break;
    }
  }
  void halve() {
    std::uint32_t carry = 0;
    for (std::size_t i = limbs.size(); i-- > 0;) {
      std::uint32_t next = limbs[i] & 1;
      limbs[i] = (limbs[i] >> 1) | (carry << 31);
      carry = next;
    }
  }
  std::size_t bits() const {
    for (std::size_t i = limbs.size(); i-- > 0;) {
      if (limbs[i]) return i * 32 + 32 - std::size_t(__builtin_clz(limbs[i]));
    }
    return 0;
  }
  bool bit(std::size_t i) const { return (limbs[i / 32] >> (i % 32)) & 1; }
};

FieldPoly powmod_big(const FieldPoly& base, const BigNat& e, const FieldPoly& m) {
  FieldPoly result = FieldPoly::constant(m.field()->one()) % m;
  FieldPoly b = base % m;
  for (std::size_t i = e.bits(); i-- > 0;) {
    result = (result * result) % m;
    if (e.bit(i)) result = (result * b) % m;
  }
  return result;
}

// F_p-basis of the degree-s subfield of f, from traces of powers of x.
std::vector<FieldElem> subfield_basis(const FieldPtr& f, unsigned s) {
  const unsigned n = f->degree();
  const std::uint32_t p = f->characteristic();
  std::vector<FieldElem> basis;
  if (s == n) {
    FieldElem acc = f->one();
    for (unsigned i = 0; i < n; ++i) {
      basis.push_back(acc);
      acc *= f->generator();
    }
    return basis;
  }
  // Echelon rows keyed by pivot coordinate, for independence tests.
  std::vector<std::pair<std::size_t, fp::Coeffs>> ech;
  FieldElem xk = f->one();
  for (unsigned k = 0; k < 4 * n + 8 && basis.size() < s; ++k, xk *= f->generator()) {
    FieldElem tr = f->zero();
    FieldElem y = xk;
    for (unsigned i = 0; i < n / s; ++i) {
      tr += y;
      y = y.frobenius_p(s);
    }
    fp::Coeffs v = tr.coords();
    for (const auto& [piv, row] : ech) {
      if (v[piv]) {
        const std::uint32_t c = v[piv];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = fp::sub_mod(v[i], fp::mul_mod(c, row[i], p), p);
      }
    }
    auto it = std::find_if(v.begin(), v.end(), [](std::uint32_t c) { return c != 0; });
    if (it == v.end()) continue;
    const std::size_t piv = std::size_t(it - v.begin());
    const std::uint32_t iv = fp::inv_mod(v[piv], p);
    for (auto& c : v) c = fp::mul_mod(c, iv, p);
    for (auto& [opiv, row] : ech) {
      if (row[piv]) {
        const std::uint32_t c = row[piv];
        for (std::size_t i = 0; i < row.size(); ++i) row[i] = fp::sub_mod(row[i], fp::mul_mod(c, v[i], p), p);
      }
    }
    ech.emplace_back(piv, v);
    basis.push_back(tr);
  }
  if (basis.size() != s) throw std::logic_error("could not find a subfield basis");
  return basis;
}

// Deterministic enumeration of subfield elements: digits of idx in base p
// weight the basis.
FieldElem subfield_element(const std::vector<FieldElem>& basis, std::uint64_t idx, std::uint32_t p) {
  FieldElem out = basis.front().field()->zero();
  for (const auto& b : basis) {
    if (!idx) break;
    const std::uint32_t d = std::uint32_t(idx % p);
    idx /= p;
    if (d) out += b.field()->from_int(d) * b;
  }
  return out;
}

void split(const FieldPoly& g, unsigned s, const std::vector<FieldElem>& basis, const BigNat& half,
           std::vector<FieldElem>& out) {
  const int d = g.degree();
  if (d <= 0) return;
  if (d == 1) {
    FieldPoly mg = g.monic();
    out.push_back(-mg.coeff(0));
    return;
  }
  const FieldPtr& f = g.field();
  const std::uint32_t p = f->characteristic();
  const FieldPoly y = FieldPoly::x(f);
  const FieldPoly one = FieldPoly::constant(f->one());
  std::uint64_t limit = 1;
  for (unsigned i = 0; i < s && limit < (std::uint64_t(1) << 40); ++i) limit *= p;
  for (std::uint64_t idx = 0;; ++idx) {
    if (idx >= limit) throw std::logic_error("root splitting did not terminate (polynomial not split?)");
    const FieldElem a = subfield_element(basis, idx, p);
    FieldPoly h(f);
    if (p == 2) {
      // Absolute trace of a*y into F_2.
      FieldPoly term = (y * a) % g;
      h = term;
      for (unsigned i = 1; i < s; ++i) {
        term = (term * term) % g;
        h = h + term;
      }
    } else {
      h = powmod_big(y + FieldPoly::constant(a), half, g) - one;
    }
    FieldPoly c = gcd(h, g);
    if (c.degree() > 0 && c.degree() < d) {
      split(c, s, basis, half, out);
      split(divmod(g, c).first, s, basis, half, out);
      return;
    }
  }
}

}  // namespace

FieldPoly::FieldPoly(FieldPtr field) : field_(std::move(field)) {}

FieldPoly::FieldPoly(FieldPtr field, std::vector<FieldElem> ascending) : field_(std::move(field)), c_(std::move(ascending)) {
  trim();
}

FieldPoly FieldPoly::constant(const FieldElem& c) { return FieldPoly(c.field(), {c}); }

FieldPoly FieldPoly::monomial(const FieldElem& c, std::size_t k) {
  std::vector<FieldElem> v(k + 1, c.field()->zero());
  v[k] = c;
  return FieldPoly(c.field(), std::move(v));
}

FieldPoly FieldPoly::x(const FieldPtr& field) { return monomial(field->one(), 1); }

void FieldPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const FieldElem& FieldPoly::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

FieldElem FieldPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_->zero(); }

FieldPoly FieldPoly::operator+(const FieldPoly& o) const {
  std::vector<FieldElem> r(std::max(c_.size(), o.c_.size()), field_->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return FieldPoly(field_, std::move(r));
}

FieldPoly FieldPoly::operator-(const FieldPoly& o) const {
  std::vector<FieldElem> r(std::max(c_.size(), o.c_.size()), field_->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return FieldPoly(field_, std::move(r));
}

FieldPoly FieldPoly::operator*(const FieldPoly& o) const {
  if (c_.empty() || o.c_.empty()) return FieldPoly(field_);
  std::vector<FieldElem> r(c_.size() + o.c_.size() - 1, field_->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (!o.c_[j].is_zero()) r[i + j] += c_[i] * o.c_[j];
    }
  }
  return FieldPoly(field_, std::move(r));
}

FieldPoly FieldPoly::operator*(const FieldElem& c) const {
  std::vector<FieldElem> r;
  r.reserve(c_.size());
  for (const auto& v : c_) r.push_back(v * c);
  return FieldPoly(field_, std::move(r));
}

FieldPoly FieldPoly::operator%(const FieldPoly& m) const { return divmod(*this, m).second; }

bool FieldPoly::operator==(const FieldPoly& o) const { return c_ == o.c_; }

FieldPoly FieldPoly::monic() const {
  if (c_.empty()) return *this;
  return *this * c_.back().inverse();
}

FieldElem FieldPoly::eval(const FieldElem& x) const {
  FieldElem acc = x.field()->zero();
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::string FieldPoly::to_string(const std::string& var, const std::string& coeff_var) const {
  if (c_.empty()) return "0";
  const bool prime = field_->degree() == 1;
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    std::string cs = c_[i].to_string(coeff_var);
    if (!prime && cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += cs;
      continue;
    }
    if (!c_[i].is_one()) out += cs + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

std::pair<FieldPoly, FieldPoly> divmod(const FieldPoly& a, const FieldPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const FieldPtr& f = a.field();
  std::vector<FieldElem> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {FieldPoly(f), a};
  std::vector<FieldElem> q(std::size_t(a.degree() - db + 1), f->zero());
  const FieldElem inv = b.leading().inverse();
  const auto& bc = b.coeffs();
  for (int i = a.degree(); i >= db; --i) {
    if (r[std::size_t(i)].is_zero()) continue;
    const FieldElem c = r[std::size_t(i)] * inv;
    q[std::size_t(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      if (!bc[std::size_t(j)].is_zero()) r[std::size_t(i - db + j)] -= c * bc[std::size_t(j)];
    }
  }
  return {FieldPoly(f, std::move(q)), FieldPoly(f, std::move(r))};
}

FieldPoly gcd(FieldPoly a, FieldPoly b) {
  while (!b.is_zero()) {
    FieldPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FieldPoly powmod(const FieldPoly& base, std::uint64_t e, const FieldPoly& m) {
  BigNat n;
  n.limbs = {std::uint32_t(e), std::uint32_t(e >> 32)};
  return powmod_big(base, n, m);
}

FieldPoly pow_p_power_mod(const FieldPoly& base, std::uint64_t k, const FieldPoly& m) {
  FieldPoly h = base % m;
  const std::uint32_t p = m.field()->characteristic();
  for (std::uint64_t i = 0; i < k; ++i) h = powmod(h, p, m);
  return h;
}

std::vector<FieldElem> roots_in_subfield(const FieldPoly& g, unsigned s) {
  if (g.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  const FieldPtr& f = g.field();
  if (f->degree() % s != 0) throw std::invalid_argument("subfield degree must divide field degree");
  std::vector<FieldElem> out;
  if (g.degree() >= 1) {
    auto basis = subfield_basis(f, s);
    BigNat half = BigNat::pow(f->characteristic(), s);
    half.decrement();
    half.halve();
    split(g.monic(), s, basis, half, out);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<FieldElem> roots(const FieldPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  const FieldPtr& f = g.field();
  if (g.degree() < 1) return {};
  const FieldPoly mg = g.monic();
  const FieldPoly y = FieldPoly::x(f);
  FieldPoly yq = pow_p_power_mod(y, f->degree(), mg);
  FieldPoly split_part = gcd(yq - y, mg);
  return roots_in_subfield(split_part, f->degree());
}

bool is_irreducible(const FieldPoly& f) {
  const int d = f.degree();
  if (d < 1) return false;
  if (d == 1) return true;
  const FieldPtr& fld = f.field();
  if (fld->degree() == 1) {
    fp::Coeffs c;
    for (const auto& v : f.coeffs()) c.push_back(v.is_zero() ? 0 : v.poly()[0]);
    return fp::is_irreducible(c, fld->characteristic());
  }
  const FieldPoly m = f.monic();
  const FieldPoly y = FieldPoly::x(fld);
  FieldPoly h = y;
  for (int i = 1; i <= d / 2; ++i) {
    h = pow_p_power_mod(h, fld->degree(), m);
    if (gcd(h - y, m).degree() > 0) return false;
  }
  return true;
}

std::vector<FieldPoly> monic_irreducibles(const FieldPtr& field, unsigned d) {
  if (d == 0) throw std::invalid_argument("degree must be positive");
  const auto order = field->order();
  if (!order) throw std::overflow_error("field too large to enumerate");
  const std::uint64_t Q = *order;
  std::vector<FieldPoly> out;
  std::vector<std::uint64_t> digits(d, 0);
  std::vector<FieldElem> elems;
  for (std::uint64_t i = 0; i < Q; ++i) elems.push_back(field->from_index(i));
  const bool prime = field->degree() == 1;
  const std::uint32_t p = field->characteristic();
  fp::Coeffs fc(d + 1, 0);
  fc[d] = 1;
  while (true) {
    bool ok;
    if (prime) {
      for (unsigned i = 0; i < d; ++i) fc[i] = std::uint32_t(digits[i]);
      ok = fp::is_irreducible(fc, p);
    } else {
      std::vector<FieldElem> c;
      for (unsigned i = 0; i < d; ++i) c.push_back(elems[digits[i]]);
      c.push_back(field->one());
      ok = (d == 1 || !c[0].is_zero()) && is_irreducible(FieldPoly(field, c));
    }
    if (ok) {
      std::vector<FieldElem> c;
      for (unsigned i = 0; i < d; ++i) c.push_back(elems[digits[i]]);
      c.push_back(field->one());
      out.emplace_back(field, std::move(c));
    }
    unsigned i = 0;
    while (i < d) {
      if (++digits[i] < Q) break;
      digits[i] = 0;
      ++i;
    }
    if (i == d) break;
  }
  return out;
}

}  // namespace drinfeld
