#include "drinfeld/chebotarev.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

#include "drinfeld/parallel.hpp"

namespace drinfeld {

const char* const kSurjectivityConstantNote =
    "The surjectivity theorem assumes p > c(r) for a constant c(r) that is never made explicit; whether this p "
    "exceeds c(r) is unknown, so a flagged verdict is inconclusive about the theorem.";

CharKey charkey(const FieldPoly& f) {
  if (!f.is_monic()) throw std::invalid_argument("charkey needs a monic polynomial");
  CharKey k;
  for (int i = 0; i < f.degree(); ++i) k.push_back(f.coeff(std::size_t(i)).index());
  return k;
}

FieldPoly charkey_poly(const FieldPtr& field, const CharKey& k) {
  std::vector<FieldElem> c;
  for (auto idx : k) c.push_back(field->from_index(idx));
  c.push_back(field->one());
  return FieldPoly(field, std::move(c));
}

const char* to_string(GLBackend b) {
  switch (b) {
    case GLBackend::Enumerate: return "enumerate";
    case GLBackend::Formula: return "formula";
    case GLBackend::Auto: return "auto";
  }
  return "?";
}

BigInt gl_order(unsigned r, std::uint64_t field_order) {
  BigInt qr = boost::multiprecision::pow(BigInt(field_order), r);
  BigInt out = 1, qi = 1;
  for (unsigned i = 0; i < r; ++i) {
    out *= qr - qi;
    qi *= field_order;
  }
  return out;
}

namespace {

struct Tables {
  unsigned Q = 0;
  std::vector<std::uint16_t> add, mul, neg;
};

Tables make_tables(const FieldPtr& f, unsigned Q) {
  Tables t;
  t.Q = Q;
  t.add.resize(std::size_t(Q) * Q);
  t.mul.resize(std::size_t(Q) * Q);
  t.neg.resize(Q);
  std::vector<FieldElem> el;
  for (unsigned i = 0; i < Q; ++i) el.push_back(f->from_index(i));
  for (unsigned a = 0; a < Q; ++a) {
    t.neg[a] = std::uint16_t((-el[a]).index());
    for (unsigned b = 0; b < Q; ++b) {
      t.add[a * Q + b] = std::uint16_t((el[a] + el[b]).index());
      t.mul[a * Q + b] = std::uint16_t((el[a] * el[b]).index());
    }
  }
  return t;
}

struct Minor {
  std::vector<unsigned> rows;                                 // principal index set
  std::vector<std::pair<std::vector<unsigned>, bool>> perms;  // permutation, odd
};

std::vector<std::vector<Minor>> principal_minors(unsigned r) {
  std::vector<std::vector<Minor>> by_size(r + 1);
  for (unsigned mask = 1; mask < (1U << r); ++mask) {
    Minor m;
    for (unsigned i = 0; i < r; ++i) {
      if (mask >> i & 1) m.rows.push_back(i);
    }
    std::vector<unsigned> perm(m.rows.size());
    std::iota(perm.begin(), perm.end(), 0U);
    do {
      unsigned inv = 0;
      for (std::size_t i = 0; i < perm.size(); ++i) {
        for (std::size_t j = i + 1; j < perm.size(); ++j) inv += perm[i] > perm[j];
      }
      m.perms.emplace_back(perm, inv % 2 == 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    by_size[m.rows.size()].push_back(std::move(m));
  }
  return by_size;
}

GLDistribution enumerate_gl(unsigned r, const FieldPtr& field, std::uint64_t budget, unsigned threads) {
  const auto order = field->order();
  if (!order || *order > 256) throw BudgetExceeded("field too large for enumeration");
  const unsigned Q = unsigned(*order);
  const unsigned n = r * r;
  std::uint64_t matrices = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (__builtin_mul_overflow(matrices, std::uint64_t(Q), &matrices) || matrices > budget) {
      throw BudgetExceeded("GL enumeration exceeds budget of " + std::to_string(budget) + " matrices");
    }
  }
  const Tables tb = make_tables(field, Q);
  const auto minors = principal_minors(r);
  std::uint64_t cells = 1;
  for (unsigned i = 0; i < r; ++i) cells *= Q;
  // Shard by the first row.
  const std::uint64_t blocks = cells;
  std::vector<std::vector<std::uint64_t>> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    std::vector<std::uint64_t> local(cells, 0);
    std::vector<std::uint16_t> A(n, 0);
    std::uint64_t code = b;
    for (unsigned j = 0; j < r; ++j) {
      A[j] = std::uint16_t(code % Q);
      code /= Q;
    }
    auto ad = [&](unsigned x, unsigned y) { return tb.add[x * Q + y]; };
    auto mu = [&](unsigned x, unsigned y) { return tb.mul[x * Q + y]; };
    std::vector<std::uint16_t> c(r);
    while (true) {
      // c_{r-k} = (-1)^k e_k, e_k the sum of principal k-minors.
      for (unsigned k = 1; k <= r; ++k) {
        unsigned ek = 0;
        for (const auto& m : minors[k]) {
          for (const auto& [perm, odd] : m.perms) {
            unsigned prod = 1;
            for (std::size_t i = 0; i < perm.size() && prod; ++i) prod = mu(prod, A[m.rows[i] * r + m.rows[perm[i]]]);
            ek = ad(ek, odd ? tb.neg[prod] : prod);
          }
        }
        c[r - k] = std::uint16_t(k % 2 ? tb.neg[ek] : ek);
      }
      if (c[0] != 0) {
        std::uint64_t key = 0;
        for (unsigned i = r; i-- > 0;) key = key * Q + c[i];
        ++local[key];
      }
      unsigned pos = r;
      while (pos < n && ++A[pos] == Q) A[pos++] = 0;
      if (pos == n) break;
    }
    partial[b] = std::move(local);
  });
  GLDistribution out;
  out.r = r;
  out.field = field;
  out.backend = GLBackend::Enumerate;
  std::vector<std::uint64_t> sum(cells, 0);
  for (const auto& part : partial) {
    for (std::uint64_t k = 0; k < cells; ++k) sum[k] += part[k];
  }
  for (std::uint64_t k = 0; k < cells; ++k) {
    if (!sum[k]) continue;
    CharKey key(r);
    std::uint64_t code = k;
    for (unsigned i = 0; i < r; ++i) {
      key[i] = code % Q;
      code /= Q;
    }
    out.counts[key] = sum[k];
    out.total += sum[k];
  }
  return out;
}

void partitions(unsigned n, unsigned max_part, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (unsigned k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

// Centralizer order in GL of the unipotent-type block with partition lambda
// over a field of order u: u^{sum lambda'_i^2} prod_i prod_{k<=m_i} (1 - u^{-k}).
BigRational centralizer(const std::vector<unsigned>& lambda, const BigInt& u) {
  std::vector<unsigned> conj(lambda.front(), 0);
  for (unsigned part : lambda) {
    for (unsigned i = 0; i < part; ++i) ++conj[i];
  }
  unsigned exp = 0;
  for (unsigned c : conj) exp += c * c;
  BigRational out = BigRational(boost::multiprecision::pow(u, exp));
  std::map<unsigned, unsigned> mult;
  for (unsigned part : lambda) ++mult[part];
  for (const auto& [part, m] : mult) {
    for (unsigned k = 1; k <= m; ++k) out *= BigRational(1) - BigRational(BigInt(1), boost::multiprecision::pow(u, k));
  }
  return out;
}

GLDistribution formula_gl(unsigned r, const FieldPtr& field) {
  const auto order = field->order();
  if (!order) throw std::overflow_error("field order does not fit in 64 bits");
  struct Irr {
    FieldPoly g;
    unsigned deg;
  };
  std::vector<Irr> irr;
  for (unsigned d = 1; d <= r; ++d) {
    for (auto& g : monic_irreducibles(field, d)) {
      if (d == 1 && g.coeff(0).is_zero()) continue;  // x divides no invertible char poly
      irr.push_back({std::move(g), d});
    }
  }
  std::map<std::pair<unsigned, unsigned>, BigRational> weight_cache;
  auto weight = [&](unsigned deg, unsigned m) {
    auto key = std::make_pair(deg, m);
    auto it = weight_cache.find(key);
    if (it != weight_cache.end()) return it->second;
    const BigInt u = boost::multiprecision::pow(BigInt(*order), deg);
    std::vector<std::vector<unsigned>> parts;
    std::vector<unsigned> cur;
    partitions(m, m, cur, parts);
    BigRational w = 0;
    for (const auto& lam : parts) w += BigRational(1) / centralizer(lam, u);
    return weight_cache[key] = w;
  };
  GLDistribution out;
  out.r = r;
  out.field = field;
  out.backend = GLBackend::Formula;
  out.total = gl_order(r, *order);
  const BigRational total(out.total);
  // Multisets of irreducibles with total degree r.
  auto rec = [&](auto&& self, std::size_t start, unsigned left, const FieldPoly& prod, const BigRational& w) -> void {
    if (left == 0) {
      const BigRational n = total * w;
      if (boost::multiprecision::denominator(n) != 1) throw std::logic_error("non-integral GL class count");
      out.counts[charkey(prod)] = boost::multiprecision::numerator(n);
      return;
    }
    for (std::size_t i = start; i < irr.size(); ++i) {
      if (irr[i].deg > left) continue;
      FieldPoly p = prod;
      for (unsigned m = 1; m * irr[i].deg <= left; ++m) {
        p = p * irr[i].g;
        self(self, i + 1, left - m * irr[i].deg, p, w * weight(irr[i].deg, m));
      }
    }
  };
  rec(rec, 0, r, FieldPoly::constant(field->one()), BigRational(1));
  BigInt sum = 0;
  for (const auto& [k, c] : out.counts) sum += c;
  if (sum != out.total) throw std::logic_error("GL class counts do not sum to |GL_r|");
  return out;
}

}  // namespace

GLDistribution gl_charpoly_distribution(unsigned r, const FieldPtr& field, GLBackend backend, std::uint64_t budget,
                                        unsigned threads) {
  if (r == 0) throw std::invalid_argument("GL_0 has no char polys");
  if (backend == GLBackend::Auto) {
    const auto order = field->order();
    backend = order && *order <= 5 && r == 3 ? GLBackend::Enumerate : GLBackend::Formula;
  }
  return backend == GLBackend::Enumerate ? enumerate_gl(r, field, budget, threads) : formula_gl(r, field);
}

SampleReport sample_frobenii(const DrinfeldModule& d, const SparsePoly& ell, unsigned max_deg, const SampleOptions& opt) {
  if (!ell.is_monic() || !is_irreducible(ell)) throw std::invalid_argument("ell must be a monic prime: " + ell.to_string());
  const FieldPtr& fq = d.base();
  SampleReport rep(ell);
  rep.p = fq->characteristic();
  rep.e = fq->degree();
  rep.q = d.q();
  rep.r = d.rank();
  rep.max_deg = max_deg;
  rep.tv_threshold = opt.tv_threshold;
  rep.fl = std::make_shared<const ResidueField>(ell);
  if (rep.q % rep.r != 1 % rep.r) rep.warnings.push_back("q is not 1 mod r");

  const SparsePoly t = SparsePoly::T(fq);
  std::vector<SparsePoly> primes;
  for (unsigned deg = 1; deg <= max_deg; ++deg) {
    for (auto& p : primes_of_degree(fq, deg)) {
      if (p == t || p == ell) continue;
      primes.push_back(std::move(p));
    }
  }
  std::vector<std::optional<FrobeniusSample>> slots(primes.size());
  parallel_for(primes.size(), opt.threads, [&](std::size_t i) {
    try {
      ReducedModule red = reduce_mod(d, primes[i]);
      if (red.type != ReductionType::Good) return;
      const CharPoly cp = charpoly_linear_system(d, red, opt.charpoly);
      const DetCheck dc = det_check(red, cp, ell, opt.det_source, opt.charpoly);
      slots[i] = FrobeniusSample{primes[i], reduce_charpoly(cp, *rep.fl), dc.frobenius_det, dc.ok};
    } catch (const std::exception& ex) {
      throw std::runtime_error("sampling failed at prime " + primes[i].to_string() + ": " + ex.what());
    }
  });
  for (auto& s : slots) {
    if (!s) {
      ++rep.bad_primes_skipped;
      continue;
    }
    rep.samples.push_back(std::move(*s));
  }

  const FieldPtr& f = rep.fl->field();
  std::set<std::uint64_t> dets;
  for (const auto& s : rep.samples) {
    ++rep.empirical[charkey(s.charpoly)];
    rep.irreducible_seen = rep.irreducible_seen || is_irreducible(s.charpoly);
    if (!s.det.is_zero()) dets.insert(s.det.index());
  }
  rep.det_covers = f->order() && dets.size() == *f->order() - 1;

  rep.oracle = gl_charpoly_distribution(rep.r, f, opt.backend, opt.budget, opt.threads);
  if (rep.samples.empty()) {
    rep.tv_exact = 1;
  } else {
    const BigRational n(rep.samples.size());
    const BigRational g(rep.oracle.total);
    BigRational acc = 0;
    for (const auto& [k, c] : rep.oracle.counts) {
      auto it = rep.empirical.find(k);
      const BigRational emp = it == rep.empirical.end() ? BigRational(0) : BigRational(it->second) / n;
      acc += boost::multiprecision::abs(emp - BigRational(c) / g);
    }
    for (const auto& [k, c] : rep.empirical) {
      if (!rep.oracle.counts.count(k)) acc += BigRational(c) / n;
    }
    rep.tv_exact = acc / 2;
  }
  rep.tv_distance = rep.tv_exact.convert_to<double>();
  return rep;
}

SurjectivityVerdict surjectivity_evidence(const SampleReport& rep) {
  SurjectivityVerdict v;
  v.note = kSurjectivityConstantNote;
  v.evidence_only = !rep.warnings.empty();
  if (rep.samples.empty()) {
    v.reasons.push_back("no samples");
    return v;
  }
  if (!(rep.tv_distance < rep.tv_threshold)) {
    v.reasons.push_back("tv distance " + std::to_string(rep.tv_distance) + " is not below " +
                        std::to_string(rep.tv_threshold));
  }
  if (!rep.irreducible_seen) v.reasons.push_back("no irreducible char poly observed");
  if (!rep.det_covers) v.reasons.push_back("det values do not cover F_ell^*");
  v.consistent = v.reasons.empty();
  return v;
}

}  // namespace drinfeld
