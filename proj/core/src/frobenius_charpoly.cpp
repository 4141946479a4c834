#include "drinfeld/frobenius_charpoly.hpp"

#include <optional>

#include "drinfeld/parallel.hpp"

namespace drinfeld {

namespace {

std::int64_t bound_for(unsigned i, std::int64_t d, unsigned r, DegreeBounds b) {
  return b == DegreeBounds::Sharp ? std::int64_t(i) * d / std::int64_t(r) : std::int64_t(i) * d;
}

std::vector<FieldElem> fq_basis(const FieldPtr& fq) {
  std::vector<FieldElem> out;
  FieldElem z = fq->one();
  for (unsigned s = 0; s < fq->degree(); ++s) {
    out.push_back(z);
    z *= fq->generator();
  }
  return out;
}

FieldElem sign(const FieldElem& x, unsigned r) { return r % 2 ? -x : x; }

struct System {
  std::vector<std::vector<std::uint32_t>> rows;
  std::vector<std::uint32_t> rhs;
  std::size_t cols = 0;
  std::uint32_t p = 0;

  void add(std::vector<std::uint32_t> row, std::uint32_t b) {
    rows.push_back(std::move(row));
    rhs.push_back(b);
  }
  FpMatrix matrix() const {
    FpMatrix m(rows.size(), cols, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }
};

}  // namespace

std::string CharPoly::to_string(const std::string& var) const {
  std::string out;
  for (unsigned i = 0; i <= r; ++i) {
    const SparsePoly& c = a[i];
    if (c.is_zero()) continue;
    const unsigned k = r - i;
    std::string cs = c.to_string();
    const bool compound = c.terms().size() > 1 || cs.find('+') != std::string::npos;
    if (!out.empty()) out += "+";
    if (k == 0) {
      out += cs;
      continue;
    }
    if (!(c.is_constant() && c.leading_coeff().is_one())) out += (compound ? "(" + cs + ")" : cs) + "*";
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

FieldElem epsilon_of(const ReducedModule& red) {
  const FieldPtr& f = red.field();
  const std::int64_t d = red.degree();
  const unsigned r = red.rank;
  const FieldElem& gr = red.coeffs.at(r);
  if (gr.is_zero()) throw std::invalid_argument("epsilon needs good reduction");
  FieldElem norm = f->one();
  FieldElem conj = gr;
  for (std::int64_t k = 0; k < d; ++k) {
    norm *= conj;
    conj = conj.frobenius_pow(1);
  }
  auto nb = f->to_base(norm);
  if (!nb) throw std::logic_error("norm is not in F_q");
  FieldElem eps = nb->inverse();
  if (r % 2) eps = -eps;
  if ((d * (r + 1)) % 2) eps = -eps;
  return eps;
}

FieldElem epsilon_of(const DrinfeldModule& d, const SparsePoly& prime) { return epsilon_of(reduce_mod(d, prime)); }

FieldPoly charpoly_mod_l(const ReducedModule& red, const SparsePoly& ell, FrobeniusSource src, const CharPolyOptions& opt) {
  if (src == FrobeniusSource::Auto) {
    // Probe only as far as the torsion limit allows.
    const unsigned cap = std::max(1U, opt.auto_torsion_limit / red.field()->degree());
    try {
      torsion_splitting_degree(red, ell, cap);
      src = FrobeniusSource::Torsion;
    } catch (const BudgetExceeded&) {
      src = FrobeniusSource::Motive;
    }
  }
  if (src == FrobeniusSource::Torsion) return torsion_space(red, ell, opt.torsion).charpoly;
  return motive_frobenius_charpoly(red, ell);
}

FieldPoly charpoly_mod_l(const DrinfeldModule& d, const SparsePoly& prime, const SparsePoly& ell, FrobeniusSource src,
                         const CharPolyOptions& opt) {
  return charpoly_mod_l(reduce_mod(d, prime), ell, src, opt);
}

FieldPoly reduce_charpoly(const CharPoly& cp, const ResidueField& fl) {
  std::vector<FieldElem> c(cp.r + 1, fl.field()->zero());
  for (unsigned i = 0; i <= cp.r; ++i) c[cp.r - i] = fl.reduce(cp.a[i]);
  return FieldPoly(fl.field(), std::move(c));
}

SkewF residual(const ReducedModule& red, const CharPoly& cp) {
  const std::int64_t d = red.degree();
  const unsigned r = cp.r;
  SkewF acc = SkewF::tau(red.field(), std::int64_t(r) * d);
  for (unsigned i = 1; i <= r; ++i) {
    acc = acc + phi_of(red, cp.a[i]) * SkewF::tau(red.field(), std::int64_t(r - i) * d);
  }
  return acc;
}

CharPoly charpoly_linear_system(const DrinfeldModule& dm, const ReducedModule& red, const CharPolyOptions& opt) {
  if (red.type != ReductionType::Good) {
    throw std::invalid_argument("bad reduction at " + red.prime.to_string() + " (" + red.type_string() + ")");
  }
  const FieldPtr& f = red.field();
  const FieldPtr& fq = dm.base();
  const std::uint32_t p = f->characteristic();
  const unsigned e = fq->degree();
  const unsigned r = dm.rank();
  const std::int64_t d = red.degree();
  const unsigned np = f->degree();

  std::vector<std::int64_t> bound(r + 1, 0);
  std::int64_t maxb = 0;
  for (unsigned i = 1; i <= r; ++i) {
    bound[i] = bound_for(i, d, r, opt.bounds);
    maxb = std::max(maxb, bound[i]);
  }
  // Unknown index of (i, j, s).
  std::vector<std::size_t> offset(r + 2, 0);
  for (unsigned i = 1; i <= r; ++i) offset[i + 1] = offset[i] + std::size_t(bound[i] + 1) * e;
  const std::size_t cols = offset[r + 1];
  auto idx = [&](unsigned i, std::int64_t j, unsigned s) { return offset[i] + std::size_t(j) * e + s; };

  const auto zq = fq_basis(fq);
  std::vector<FieldElem> zf;
  for (const auto& z : zq) zf.push_back(f->embed_base(z));

  std::vector<SkewF> tpow{SkewF::one(f)};
  for (std::int64_t j = 1; j <= maxb; ++j) tpow.push_back(red.phi_T * tpow.back());

  // Relaxed bounds push columns past tau^{rd}; those rows have zero RHS.
  const std::int64_t ident = std::int64_t(r) * d;
  std::int64_t top = ident;
  for (unsigned i = 1; i <= r; ++i) top = std::max(top, std::int64_t(r) * bound[i] + std::int64_t(r - i) * d);
  System sys;
  sys.cols = cols;
  sys.p = p;
  // Column data as a dense (top+1) x np block per unknown.
  std::vector<std::vector<std::uint32_t>> colv(cols, std::vector<std::uint32_t>(std::size_t(top + 1) * np, 0));
  for (unsigned i = 1; i <= r; ++i) {
    for (std::int64_t j = 0; j <= bound[i]; ++j) {
      for (unsigned s = 0; s < e; ++s) {
        const SkewF g = tpow[std::size_t(j)].scaled(zf[s]).shifted(std::int64_t(r - i) * d);
        auto& v = colv[idx(i, j, s)];
        for (const auto& t : g.terms()) {
          const auto& c = t.coeff.poly();
          for (std::size_t u = 0; u < c.size(); ++u) v[std::size_t(t.exp) * np + u] = c[u];
        }
      }
    }
  }
  for (std::size_t row = 0; row < std::size_t(top + 1) * np; ++row) {
    std::vector<std::uint32_t> rv(cols);
    bool any = false;
    for (std::size_t c = 0; c < cols; ++c) {
      rv[c] = colv[c][row];
      any = any || rv[c];
    }
    // RHS is -tau^{rd}: the constant coordinate of the top coefficient.
    const std::uint32_t b = row == std::size_t(ident) * np ? p - 1 : 0;
    if (any || b) sys.add(std::move(rv), b);
  }

  CharPoly cp{red.prime, r, {}, epsilon_of(red), "unique", 0};

  FpMatrix m = sys.matrix();
  cp.initial_nullity = m.nullity();
  if (cp.initial_nullity > 0) {
    // Anchor a_r = epsilon * p.
    if (bound[r] < d) throw std::logic_error("degree bound on a_r is below deg p");
    const SparsePoly ar = red.prime * cp.epsilon;
    for (std::int64_t j = 0; j <= bound[r]; ++j) {
      const fp::Coeffs c = ar.coefficient(j).coords();
      for (unsigned s = 0; s < e; ++s) {
        std::vector<std::uint32_t> row(cols, 0);
        row[idx(r, j, s)] = 1;
        sys.add(std::move(row), c[s]);
      }
    }
    m = sys.matrix();
    cp.resolution = "epsilon-anchor";
  }
  if (m.nullity() > 0) {
    // CRT against Frobenius char polys mod small primes ell != p.
    std::int64_t covered = 0;
    unsigned used = 0;
    for (unsigned deg = 1; m.nullity() > 0 || used < 2; ++deg) {
      if (deg > 64) throw std::logic_error("CRT disambiguation did not converge");
      for (const auto& ell : primes_of_degree(fq, deg)) {
        if (ell == red.prime) continue;
        ResidueField fl(ell);
        FieldPoly cl = charpoly_mod_l(red, ell, FrobeniusSource::Auto, opt);
        const unsigned nl = fl.field()->degree();
        for (unsigned i = 1; i <= r; ++i) {
          const fp::Coeffs target = cl.coeff(r - i).coords();
          // Images of z_s T^j in F_ell.
          std::vector<fp::Coeffs> img(cols);
          FieldElem tj = fl.field()->one();
          for (std::int64_t j = 0; j <= bound[i]; ++j) {
            for (unsigned s = 0; s < e; ++s) img[idx(i, j, s)] = (fl.embed_scalar(zq[s]) * tj).coords();
            tj *= fl.t();
          }
          for (unsigned u = 0; u < nl; ++u) {
            std::vector<std::uint32_t> row(cols, 0);
            for (std::int64_t j = 0; j <= bound[i]; ++j) {
              for (unsigned s = 0; s < e; ++s) row[idx(i, j, s)] = img[idx(i, j, s)][u];
            }
            sys.add(std::move(row), target[u]);
          }
        }
        covered += ell.degree();
        ++used;
        m = sys.matrix();
        if (m.nullity() == 0 && used >= 2 && covered > maxb) break;
      }
      if (m.nullity() == 0 && used >= 2 && covered > maxb) break;
    }
    cp.resolution = "crt";
  }

  auto sol = m.solve(sys.rhs);
  if (!sol) throw std::logic_error("char poly linear system is inconsistent at " + red.prime.to_string());
  cp.a.assign(r + 1, SparsePoly(fq));
  cp.a[0] = SparsePoly::from_int(fq, 1);
  for (unsigned i = 1; i <= r; ++i) {
    std::vector<SparsePoly::Term> terms;
    for (std::int64_t j = 0; j <= bound[i]; ++j) {
      fp::Coeffs c(e);
      for (unsigned s = 0; s < e; ++s) c[s] = (*sol)[idx(i, j, s)];
      FieldElem cj = fq->element(c);
      if (!cj.is_zero()) terms.push_back({j, cj});
    }
    cp.a[i] = SparsePoly(fq, std::move(terms));
  }
  if (!residual(red, cp).is_zero()) {
    throw std::logic_error("char poly residual identity fails at " + red.prime.to_string());
  }
  return cp;
}

CharPoly charpoly_linear_system(const DrinfeldModule& d, const SparsePoly& prime, const CharPolyOptions& opt) {
  return charpoly_linear_system(d, reduce_mod(d, prime), opt);
}

DetCheck det_check(const ReducedModule& red, const CharPoly& cp, const SparsePoly& ell, FrobeniusSource src,
                   const CharPolyOptions& opt) {
  ResidueField fl(ell);
  DetCheck dc;
  dc.signed_constant = sign(fl.reduce(cp.a[cp.r]), cp.r);
  dc.prime_residue = fl.reduce(red.prime);
  const FieldPoly frob = charpoly_mod_l(red, ell, src, opt);
  dc.frobenius_det = sign(frob.coeff(0), cp.r);
  dc.ok = dc.signed_constant == dc.prime_residue && dc.frobenius_det == dc.prime_residue;
  return dc;
}

DetCheck det_check(const DrinfeldModule& d, const SparsePoly& prime, const SparsePoly& ell, FrobeniusSource src,
                   const CharPolyOptions& opt) {
  ReducedModule red = reduce_mod(d, prime);
  return det_check(red, charpoly_linear_system(d, red, opt), ell, src, opt);
}

std::vector<CharPoly> charpoly_batch(const DrinfeldModule& d, const std::vector<SparsePoly>& primes, unsigned threads,
                                     const CharPolyOptions& opt) {
  std::vector<std::optional<CharPoly>> slots(primes.size());
  parallel_for(primes.size(), threads, [&](std::size_t i) { slots[i] = charpoly_linear_system(d, primes[i], opt); });
  std::vector<CharPoly> out;
  out.reserve(primes.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace drinfeld
