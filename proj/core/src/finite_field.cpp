#include "drinfeld/finite_field.hpp"

#include <algorithm>
#include <stdexcept>

#include "drinfeld/field_poly.hpp"

namespace drinfeld {

namespace {

// Given k columns in F_p^n of full column rank, pick k coordinates on which
// they are invertible and return (rows, inverse of that k x k block).
void build_preimage_solver(const std::vector<fp::Coeffs>& cols, std::size_t n, std::uint32_t p,
                           std::vector<std::size_t>& rows, std::vector<std::uint32_t>& inv) {
  const std::size_t k = cols.size();
  // Row-reduce the k x n transpose; its pivot columns are the rows we want.
  std::vector<std::vector<std::uint32_t>> t(k, std::vector<std::uint32_t>(n, 0));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < cols[j].size() && i < n; ++i) t[j][i] = cols[j][i];
  }
  rows.clear();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < k; ++c) {
    std::size_t piv = r;
    while (piv < k && t[piv][c] == 0) ++piv;
    if (piv == k) continue;
    std::swap(t[piv], t[r]);
    const std::uint32_t iv = fp::inv_mod(t[r][c], p);
    for (auto& v : t[r]) v = fp::mul_mod(v, iv, p);
    for (std::size_t i = 0; i < k; ++i) {
      if (i == r || t[i][c] == 0) continue;
      const std::uint32_t f = t[i][c];
      for (std::size_t cc = c; cc < n; ++cc) {
        t[i][cc] = fp::sub_mod(t[i][cc], fp::mul_mod(f, t[r][cc], p), p);
      }
    }
    rows.push_back(c);
    ++r;
  }
  if (rows.size() != k) throw std::logic_error("embedding images are linearly dependent");
  // Invert B with B[a][j] = cols[j][rows[a]].
  std::vector<std::vector<std::uint32_t>> aug(k, std::vector<std::uint32_t>(2 * k, 0));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t j = 0; j < k; ++j) {
      aug[a][j] = rows[a] < cols[j].size() ? cols[j][rows[a]] : 0;
    }
    aug[a][k + a] = 1;
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (piv < k && aug[piv][c] == 0) ++piv;
    if (piv == k) throw std::logic_error("singular embedding block");
    std::swap(aug[piv], aug[c]);
    const std::uint32_t iv = fp::inv_mod(aug[c][c], p);
    for (auto& v : aug[c]) v = fp::mul_mod(v, iv, p);
    for (std::size_t i = 0; i < k; ++i) {
      if (i == c || aug[i][c] == 0) continue;
      const std::uint32_t f = aug[i][c];
      for (std::size_t cc = 0; cc < 2 * k; ++cc) {
        aug[i][cc] = fp::sub_mod(aug[i][cc], fp::mul_mod(f, aug[c][cc], p), p);
      }
    }
  }
  inv.assign(k * k, 0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) inv[a * k + b] = aug[a][k + b];
  }
}

fp::Coeffs combine(const std::vector<fp::Coeffs>& cols, const fp::Coeffs& v, std::uint32_t p) {
  std::size_t len = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j]) len = std::max(len, cols[j].size());
  }
  fp::Coeffs out(len, 0);
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!v[j]) continue;
    const auto& col = cols[j];
    for (std::size_t i = 0; i < col.size(); ++i) {
      out[i] = fp::add_mod(out[i], fp::mul_mod(v[j], col[i], p), p);
    }
  }
  fp::trim(out);
  return out;
}

std::optional<fp::Coeffs> solve_preimage(const std::vector<fp::Coeffs>& cols,
                                         const std::vector<std::size_t>& rows,
                                         const std::vector<std::uint32_t>& inv,
                                         const fp::Coeffs& y, std::uint32_t p) {
  const std::size_t k = rows.size();
  fp::Coeffs x(k, 0);
  for (std::size_t a = 0; a < k; ++a) {
    std::uint64_t acc = 0;
    for (std::size_t b = 0; b < k; ++b) {
      const std::uint32_t yb = rows[b] < y.size() ? y[rows[b]] : 0;
      acc = (acc + std::uint64_t(inv[a * k + b]) * yb) % p;
    }
    x[a] = std::uint32_t(acc);
  }
  fp::Coeffs back = combine(cols, x, p);
  fp::Coeffs yt = y;
  fp::trim(yt);
  if (back != yt) return std::nullopt;
  fp::trim(x);
  return x;
}

std::uint64_t checked_pow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(r, b, &r)) throw std::overflow_error("field order exceeds 64 bits");
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------- FieldElem

FieldElem::FieldElem(FieldPtr field, fp::Coeffs coords) : field_(std::move(field)), c_(std::move(coords)) {
  if (!field_) throw std::invalid_argument("field element without a field");
  const std::uint32_t p = field_->characteristic();
  for (auto& v : c_) {
    if (v >= p) v %= p;
  }
  field_->reducer().reduce(c_);
}

fp::Coeffs FieldElem::coords() const {
  fp::Coeffs out = c_;
  out.resize(field_->degree(), 0);
  return out;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  return FieldElem(field_, fp::add(c_, o.c_, field_->characteristic()));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  return FieldElem(field_, fp::sub(c_, o.c_, field_->characteristic()));
}

FieldElem FieldElem::operator-() const {
  return FieldElem(field_, fp::sub({}, c_, field_->characteristic()));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  return FieldElem(field_, field_->reducer().mulmod(c_, o.c_));
}

FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inverse(); }

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero field element");
  const std::uint32_t p = field_->characteristic();
  // Extended Euclid on (modulus, c).
  fp::Coeffs r0 = field_->modulus(), r1 = c_;
  fp::Coeffs s0{}, s1{1};
  while (fp::degree(r1) > 0) {
    auto [q, r] = fp::divmod(r0, r1, p);
    fp::Coeffs s = fp::sub(s0, fp::mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.empty()) throw std::logic_error("field modulus is not irreducible");
  return FieldElem(field_, fp::scale(s1, fp::inv_mod(r1[0], p), p));
}

FieldElem FieldElem::pow(std::uint64_t e) const {
  return FieldElem(field_, field_->reducer().powmod(c_, e));
}

FieldElem FieldElem::frobenius_p(std::uint64_t k) const {
  const unsigned n = field_->degree();
  k %= n;
  fp::Coeffs v = c_;
  for (std::uint64_t i = 0; i < k && !v.empty(); ++i) v = field_->apply_frobenius_p(v);
  return FieldElem(field_, std::move(v));
}

FieldElem FieldElem::frobenius_pow(std::int64_t k) const {
  const std::int64_t m = field_->relative_degree();
  std::int64_t kk = k % m;
  if (kk < 0) kk += m;
  return frobenius_p(std::uint64_t(kk) * field_->base_degree());
}

std::uint64_t FieldElem::index() const {
  const std::uint64_t p = field_->characteristic();
  std::uint64_t acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (__builtin_mul_overflow(acc, p, &acc) || __builtin_add_overflow(acc, c_[i], &acc)) {
      throw std::overflow_error("field element index exceeds 64 bits");
    }
  }
  return acc;
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (c_ != o.c_) return false;
  if (field_ == o.field_) return true;
  return same_field(field_, o.field_);
}

bool FieldElem::operator<(const FieldElem& o) const {
  if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

std::string FieldElem::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  if (field_->degree() == 1) return std::to_string(c_[0]);
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const std::uint32_t c = c_[i];
    if (!c) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

// -------------------------------------------------------------- FiniteField

FiniteField::FiniteField(std::uint32_t p, unsigned e, unsigned m, fp::Coeffs modulus)
    : p_(p), e_(e), m_(m), q_(checked_pow(p, e)), red_(std::move(modulus), p) {}

FieldPtr FiniteField::make(std::uint32_t p, unsigned e, unsigned m) {
  if (!fp::is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (e == 0 || m == 0) throw std::invalid_argument("field degree must be positive");
  return with_modulus(p, e, m, fp::smallest_irreducible(p, e * m));
}

FieldPtr FiniteField::with_modulus(std::uint32_t p, unsigned e, unsigned m, fp::Coeffs modulus) {
  if (!fp::is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (e == 0 || m == 0) throw std::invalid_argument("field degree must be positive");
  fp::trim(modulus);
  if (fp::degree(modulus) != int(e * m) || modulus.back() != 1) {
    throw std::invalid_argument("modulus must be monic of degree e*m");
  }
  if (!fp::is_irreducible(modulus, p)) throw std::invalid_argument("modulus is reducible");
  std::shared_ptr<FiniteField> f(new FiniteField(p, e, m, std::move(modulus)));
  f->init_base();
  return f;
}

void FiniteField::init_base() {
  const unsigned n = degree();
  if (m_ > 1) base_ = make(p_, e_, 1);
  if (e_ == 1) {
    base_images_ = {fp::Coeffs{1}};
  } else if (m_ == 1) {
    for (unsigned j = 0; j < e_; ++j) {
      fp::Coeffs v(j + 1, 0);
      v[j] = 1;
      base_images_.push_back(v);
    }
  } else {
    std::vector<FieldElem> g;
    for (auto c : base_->modulus()) g.push_back(from_int(c));
    auto rts = roots_in_subfield(FieldPoly(shared_from_this(), g), e_);
    if (rts.empty()) throw std::logic_error("F_q does not embed");
    FieldElem z = rts.front();
    FieldElem acc = one();
    for (unsigned j = 0; j < e_; ++j) {
      base_images_.push_back(acc.poly());
      acc = acc * z;
    }
  }
  build_preimage_solver(base_images_, n, p_, base_rows_, base_inv_);
}

std::optional<std::uint64_t> FiniteField::order() const {
  try {
    return checked_pow(p_, degree());
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

FieldElem FiniteField::zero() const { return FieldElem(shared_from_this(), {}); }
FieldElem FiniteField::one() const { return FieldElem(shared_from_this(), {1}); }

FieldElem FiniteField::from_int(std::int64_t c) const {
  std::int64_t r = c % std::int64_t(p_);
  if (r < 0) r += p_;
  return FieldElem(shared_from_this(), {std::uint32_t(r)});
}

FieldElem FiniteField::element(fp::Coeffs coords) const { return FieldElem(shared_from_this(), std::move(coords)); }

FieldElem FiniteField::generator() const { return FieldElem(shared_from_this(), {0, 1}); }

FieldElem FiniteField::from_index(std::uint64_t idx) const {
  fp::Coeffs v;
  while (idx) {
    v.push_back(std::uint32_t(idx % p_));
    idx /= p_;
  }
  if (v.size() > degree()) throw std::out_of_range("field index out of range");
  return FieldElem(shared_from_this(), std::move(v));
}

FieldPtr FiniteField::base() const { return m_ == 1 ? shared_from_this() : base_; }

FieldElem FiniteField::embed_base(const FieldElem& c) const {
  if (m_ == 1) return FieldElem(shared_from_this(), c.poly());
  return FieldElem(shared_from_this(), combine(base_images_, c.poly(), p_));
}

std::optional<FieldElem> FiniteField::to_base(const FieldElem& x) const {
  auto v = solve_preimage(base_images_, base_rows_, base_inv_, x.poly(), p_);
  if (!v) return std::nullopt;
  return FieldElem(base(), std::move(*v));
}

const std::vector<fp::Coeffs>& FiniteField::frobenius_columns() const {
  std::call_once(frob_once_, [this] {
    const unsigned n = degree();
    const auto& f = red_.modulus();
    std::vector<std::pair<unsigned, std::uint32_t>> low;
    for (unsigned j = 0; j < n; ++j) {
      if (f[j]) low.emplace_back(j, p_ - f[j]);
    }
    // col_j = x^{j p}: advance by p shifts, each a multiply-by-x.
    fp::Coeffs cur(n, 0);
    cur[0] = 1;
    frob_cols_.reserve(n);
    for (unsigned j = 0; j < n; ++j) {
      fp::Coeffs col = cur;
      fp::trim(col);
      frob_cols_.push_back(std::move(col));
      for (std::uint32_t s = 0; s < p_; ++s) {
        const std::uint32_t top = cur[n - 1];
        for (unsigned i = n - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top) {
          for (const auto& [i, neg] : low) cur[i] = fp::add_mod(cur[i], fp::mul_mod(top, neg, p_), p_);
        }
      }
    }
  });
  return frob_cols_;
}

fp::Coeffs FiniteField::apply_frobenius_p(const fp::Coeffs& v) const {
  if (degree() == 1) return v;
  return combine(frobenius_columns(), v, p_);
}

bool FiniteField::same_as(const FiniteField& o) const {
  return p_ == o.p_ && e_ == o.e_ && m_ == o.m_ && modulus() == o.modulus();
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

// ---------------------------------------------------------------- Embedding

Embedding Embedding::find(const FieldPtr& from, const FieldPtr& to) {
  if (from->characteristic() != to->characteristic()) {
    throw std::invalid_argument("embedding between fields of different characteristic");
  }
  if (to->degree() % from->degree() != 0) throw std::invalid_argument("source degree does not divide target degree");
  Embedding emb;
  emb.from_ = from;
  emb.to_ = to;
  const std::uint32_t p = from->characteristic();
  if (same_field(from, to)) {
    emb.gen_image_ = to->generator();
  } else {
    std::vector<FieldElem> g;
    for (auto c : from->modulus()) g.push_back(to->from_int(c));
    auto rts = roots_in_subfield(FieldPoly(to, g), from->degree());
    const bool check_base = from->base_degree() == to->base_degree() && from->base_degree() > 1;
    FieldElem z_from, z_to;
    if (check_base) {
      z_from = from->embed_base(from->base()->generator());
      z_to = to->embed_base(to->base()->generator());
    }
    for (const auto& rt : rts) {
      if (check_base) {
        FieldElem img = to->zero();
        FieldElem pw = to->one();
        for (std::size_t j = 0; j < z_from.poly().size(); ++j) {
          img += to->from_int(z_from.poly()[j]) * pw;
          pw *= rt;
        }
        if (img != z_to) continue;
      }
      emb.gen_image_ = rt;
      break;
    }
    if (!emb.gen_image_.valid()) throw std::logic_error("no compatible embedding found");
  }
  FieldElem acc = to->one();
  for (unsigned j = 0; j < from->degree(); ++j) {
    emb.images_.push_back(acc.poly());
    acc = acc * emb.gen_image_;
  }
  build_preimage_solver(emb.images_, to->degree(), p, emb.rows_, emb.inv_);
  return emb;
}

FieldElem Embedding::operator()(const FieldElem& x) const {
  return FieldElem(to_, combine(images_, x.poly(), to_->characteristic()));
}

std::optional<FieldElem> Embedding::preimage(const FieldElem& y) const {
  auto v = solve_preimage(images_, rows_, inv_, y.poly(), to_->characteristic());
  if (!v) return std::nullopt;
  return FieldElem(from_, std::move(*v));
}

}  // namespace drinfeld
