#include "drinfeld/drinfeld_core.hpp"

#include <numeric>

namespace drinfeld {

namespace {

// Incremental F_p echelon basis for span membership tests.
class Echelon {
public:
  Echelon(std::size_t n, std::uint32_t p) : n_(n), p_(p) {}

  // Reduce v against the basis; true if the residue is zero.
  bool in_span(fp::Coeffs v) const { return reduce(v) == n_; }

  // Adds v if independent; returns whether it was added.
  bool add(fp::Coeffs v) {
    const std::size_t piv = reduce(v);
    if (piv == n_) return false;
    const std::uint32_t iv = fp::inv_mod(v[piv], p_);
    for (auto& c : v) c = fp::mul_mod(c, iv, p_);
    rows_.emplace_back(piv, std::move(v));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

private:
  // Returns the first nonzero index of the reduced vector (n_ if zero).
  std::size_t reduce(fp::Coeffs& v) const {
    v.resize(n_, 0);
    for (const auto& [piv, row] : rows_) {
      const std::uint32_t c = v[piv];
      if (!c) continue;
      const std::uint32_t nc = p_ - c;
      for (std::size_t i = 0; i < n_; ++i) {
        if (row[i]) v[i] = std::uint32_t((v[i] + std::uint64_t(nc) * row[i]) % p_);
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (v[i]) return i;
    }
    return n_;
  }

  std::size_t n_;
  std::uint32_t p_;
  std::vector<std::pair<std::size_t, fp::Coeffs>> rows_;
};

// Images of the F_q power basis 1, z, ..., z^{e-1} inside field.
std::vector<FieldElem> base_basis(const FieldPtr& field) {
  const FieldPtr fq = field->base();
  std::vector<FieldElem> out;
  FieldElem z = fq->one();
  for (unsigned s = 0; s < fq->degree(); ++s) {
    out.push_back(field->embed_base(z));
    z *= fq->generator();
  }
  return out;
}

FpMatrix linear_map_matrix(const SkewF& f, const FieldPtr& field) {
  const unsigned n = field->degree();
  FpMatrix m(n, n, field->characteristic());
  for (unsigned j = 0; j < n; ++j) {
    fp::Coeffs unit(j + 1, 0);
    unit[j] = 1;
    m.set_column(j, linearized_eval(f, field->element(unit)).coords());
  }
  return m;
}

void require_prime(const SparsePoly& ell) {
  if (!ell.is_monic() || ell.degree() < 1 || !is_irreducible(ell)) {
    throw std::invalid_argument("expected a monic irreducible polynomial, got " + ell.to_string());
  }
}

}  // namespace

std::string ReducedModule::type_string() const {
  if (type == ReductionType::Good) return "Good";
  return "StableBad(" + std::to_string(reduced_rank) + ")";
}

ReducedModule reduce_mod(const DrinfeldModule& d, const SparsePoly& prime) {
  require_prime(prime);
  ReducedModule r{prime, std::make_shared<const ResidueField>(prime), {}, d.rank(), 0, ReductionType::Good,
                  SkewF(nullptr)};
  const FieldPtr& f = r.residue->field();
  std::vector<SkewF::Term> terms;
  for (unsigned i = 0; i < d.coefficients().size(); ++i) {
    FieldElem c = r.residue->reduce(d.coefficient(i));
    if (i > 0 && !c.is_zero()) r.reduced_rank = i;
    terms.push_back({std::int64_t(i), c});
    r.coeffs.push_back(std::move(c));
  }
  if (r.reduced_rank == 0) {
    throw std::domain_error("every non-constant coefficient vanishes mod " + prime.to_string() + " (unstable model)");
  }
  r.type = r.reduced_rank == d.rank() ? ReductionType::Good : ReductionType::StableBad;
  r.phi_T = SkewF(f, std::move(terms));
  return r;
}

SkewF phi_of(const ReducedModule& r, const SparsePoly& a) {
  const FieldPtr& f = r.field();
  return evaluate_in(r.phi_T, a, [&](const FieldElem& c) { return f->embed_base(c); });
}

HeightResult height(const ReducedModule& r) {
  HeightResult h;
  h.m_p = phi_of(r, r.prime).lowest_degree();
  h.m_p2 = phi_of(r, r.prime * r.prime).lowest_degree();
  const std::int64_t d = r.degree();
  h.h = h.m_p / d;
  h.consistent = h.m_p % d == 0 && h.m_p2 == 2 * h.m_p && h.h >= 1 && h.h <= std::int64_t(r.reduced_rank);
  return h;
}

std::int64_t torsion_at_char(const ReducedModule& r, unsigned e_prime) {
  SkewF f = phi_of(r, r.prime.pow(e_prime));
  return f.degree() - f.lowest_degree();
}

std::size_t kernel_dimension(const SkewF& f, const FieldPtr& field) {
  return linear_map_matrix(f, field).nullity();
}

unsigned torsion_splitting_degree(const ReducedModule& r, const SparsePoly& ell, unsigned cap) {
  const SkewF phi_l = phi_of(r, ell);
  const std::int64_t d = r.degree();
  const SkewF one = SkewF::one(r.field());
  // tau^d commutes with F_p, so tau^d * R is R shifted by d.
  SkewF cur = divmod_right(SkewF::tau(r.field(), d), phi_l).second;
  for (unsigned m = 1; m <= cap; ++m) {
    if (cur == one) return m;
    cur = divmod_right(cur.shifted(d), phi_l).second;
  }
  throw BudgetExceeded("torsion splitting degree exceeds " + std::to_string(cap) + " for ell = " + ell.to_string() +
                       " at p = " + r.prime.to_string());
}

TorsionSpace torsion_space(const ReducedModule& r, const SparsePoly& ell, const TorsionOptions& opt) {
  require_prime(ell);
  if (r.type != ReductionType::Good) throw std::invalid_argument("torsion space needs good reduction");
  if (ell == r.prime) throw std::invalid_argument("torsion at the characteristic prime is not etale");

  const FieldPtr& fp_field = r.field();
  const std::uint32_t p = fp_field->characteristic();
  const unsigned e = fp_field->base_degree();
  const unsigned d = unsigned(r.degree());
  const unsigned k = unsigned(ell.degree());
  const unsigned rk = r.rank;

  const unsigned m = torsion_splitting_degree(r, ell, opt.max_splitting_degree);
  if (std::uint64_t(e) * d * m > opt.max_field_degree) {
    throw BudgetExceeded("torsion splitting field has degree " + std::to_string(std::uint64_t(e) * d * m) +
                         " over F_p, above the budget " + std::to_string(opt.max_field_degree));
  }
  auto fl = std::make_shared<const ResidueField>(ell);
  FieldPtr ext = m == 1 ? fp_field : FiniteField::make(p, e, d * m);
  Embedding emb = Embedding::find(fp_field, ext);
  const unsigned n = ext->degree();

  const SkewF phi_t_ext = map_coefficients(r.phi_T, emb);
  const SkewF phi_l_ext = map_coefficients(phi_of(r, ell), emb);
  const auto zs = base_basis(ext);

  // Kernel of phi_ell on ext, as F_p vectors.
  const auto kernel = linear_map_matrix(phi_l_ext, ext).kernel_basis();
  if (kernel.size() != std::size_t(e) * rk * k) {
    throw std::logic_error("torsion kernel has unexpected dimension " + std::to_string(kernel.size()));
  }

  TorsionSpace ts(ell, fl, MatrixFq(fl->field(), rk, rk), FieldPoly(fl->field()));
  ts.splitting_degree = m;
  ts.ext = ext;
  ts.emb = emb;

  // F_q-basis: first kernel vectors not in the F_q-span of earlier picks.
  Echelon fq_span(n, p);
  for (const auto& v : kernel) {
    FieldElem x = ext->element(fp::Coeffs(v.begin(), v.end()));
    if (fq_span.in_span(x.coords())) continue;
    for (const auto& z : zs) fq_span.add((z * x).coords());
    ts.basis.push_back(x);
  }

  // phi_{T^j}(x) for j < k.
  auto t_powers = [&](const FieldElem& x) {
    std::vector<FieldElem> out{x};
    for (unsigned j = 1; j < k; ++j) out.push_back(linearized_eval(phi_t_ext, out.back()));
    return out;
  };

  // Module basis: first F_q-basis vectors outside the A-span of earlier picks.
  Echelon a_span(n, p);
  std::vector<std::vector<FieldElem>> picked_powers;
  for (const auto& x : ts.basis) {
    if (ts.module_basis.size() == rk) break;
    if (a_span.in_span(x.coords())) continue;
    auto pw = t_powers(x);
    for (const auto& y : pw) {
      for (const auto& z : zs) a_span.add((z * y).coords());
    }
    ts.module_basis.push_back(x);
    picked_powers.push_back(std::move(pw));
  }
  if (ts.module_basis.size() != rk) throw std::logic_error("torsion is not free of rank r over F_ell");

  // Columns z^s phi_{T^j}(w_i), ordered (i, j, s).
  FpMatrix sys(n, std::size_t(rk) * k * e, p);
  std::size_t col = 0;
  for (unsigned i = 0; i < rk; ++i) {
    for (unsigned j = 0; j < k; ++j) {
      for (unsigned s = 0; s < e; ++s) sys.set_column(col++, (zs[s] * picked_powers[i][j]).coords());
    }
  }
  const FieldPtr& fq = r.prime.base();
  std::vector<FieldElem> zq;
  {
    FieldElem z = fq->one();
    for (unsigned s = 0; s < e; ++s) {
      zq.push_back(z);
      z *= fq->generator();
    }
  }
  for (unsigned kk = 0; kk < rk; ++kk) {
    FieldElem y = ts.module_basis[kk].frobenius_pow(d);
    auto sol = sys.solve(y.coords());
    if (!sol) throw std::logic_error("Frobenius image is not in the torsion span");
    for (unsigned i = 0; i < rk; ++i) {
      SparsePoly b(fq);
      for (unsigned j = 0; j < k; ++j) {
        for (unsigned s = 0; s < e; ++s) {
          const std::uint32_t c = (*sol)[(std::size_t(i) * k + j) * e + s];
          if (c) b = b + SparsePoly::monomial(zq[s] * fq->from_int(c), j);
        }
      }
      ts.frobenius_matrix.at(i, kk) = fl->reduce(b);
    }
  }
  ts.charpoly = ts.frobenius_matrix.charpoly();
  return ts;
}

FieldElem torsion_element(const ReducedModule& r, const TorsionSpace& ts, const std::vector<FieldElem>& coords) {
  if (coords.size() != ts.module_basis.size()) throw std::invalid_argument("coordinate count must equal the rank");
  FieldElem acc = ts.ext->zero();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i].is_zero()) continue;
    const SkewF f = map_coefficients(phi_of(r, ts.fl->lift(coords[i])), ts.emb);
    acc += linearized_eval(f, ts.module_basis[i]);
  }
  return acc;
}

std::vector<FieldElem> fl_span_basis(const ReducedModule& r, const TorsionSpace& ts, const std::vector<FieldElem>& gens) {
  const FieldPtr& ext = ts.ext;
  const SkewF phi_t_ext = map_coefficients(r.phi_T, ts.emb);
  const auto zs = base_basis(ext);
  Echelon span(ext->degree(), ext->characteristic());
  std::vector<FieldElem> out;
  for (const auto& g : gens) {
    FieldElem y = g;
    for (std::int64_t j = 0; j < ts.ell.degree(); ++j) {
      if (!span.in_span(y.coords())) {
        for (const auto& z : zs) span.add((z * y).coords());
        out.push_back(y);
      }
      y = linearized_eval(phi_t_ext, y);
    }
  }
  return out;
}

FieldPoly motive_frobenius_charpoly(const ReducedModule& r, const SparsePoly& ell) {
  require_prime(ell);
  if (r.type != ReductionType::Good) throw std::invalid_argument("motive Frobenius needs good reduction");
  if (ell == r.prime) throw std::invalid_argument("ell must differ from the base prime");
  const FieldPtr& f = r.field();
  const SkewF phi_l = phi_of(r, ell);
  const std::size_t n = std::size_t(phi_l.degree());  // r deg ell
  const std::int64_t d = r.degree();
  ResidueField fl(ell);

  // Column j of Pi: tau^{d+j} mod phi_ell. Column j of Theta: tau^j phi_T mod phi_ell.
  MatrixFq pi(f, n, n), theta(f, n, n);
  SkewF cur = divmod_right(SkewF::tau(f, d), phi_l).second;
  const SkewF tau1 = SkewF::tau(f, 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& t : cur.terms()) pi.at(std::size_t(t.exp), j) = t.coeff;
    cur = divmod_right(tau1 * cur, phi_l).second;
  }
  if (ell.degree() == 1) {
    // M is r-dimensional over F_p and Pi is F_p-linear; F_ell = F_q.
    FieldPoly cp = pi.charpoly();
    std::vector<FieldElem> c;
    for (const auto& v : cp.coeffs()) {
      auto b = f->to_base(v);
      if (!b) throw std::logic_error("motive characteristic polynomial is not defined over F_q");
      c.push_back(fl.field()->embed_base(*b));
    }
    return FieldPoly(fl.field(), std::move(c));
  }
  SkewF tj = SkewF::one(f);
  for (std::size_t j = 0; j < n; ++j) {
    SkewF img = divmod_right(tj * r.phi_T, phi_l).second;
    for (const auto& t : img.terms()) theta.at(std::size_t(t.exp), j) = t.coeff;
    tj = tau1 * tj;
  }
  const unsigned e = f->base_degree();
  const unsigned big = std::lcm(unsigned(d), unsigned(ell.degree()));
  FieldPtr L = FiniteField::make(f->characteristic(), e, big);
  Embedding emb_p = Embedding::find(f, L), emb_l = Embedding::find(fl.field(), L);
  const FieldElem tl = emb_l(fl.t());
  MatrixFq pi_l(L, n, n), shifted(L, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      pi_l.at(i, j) = emb_p(pi.at(i, j));
      shifted.at(i, j) = emb_p(theta.at(i, j)) - (i == j ? tl : L->zero());
    }
  }
  const auto v = shifted.kernel_basis();
  const std::size_t rk = v.size();
  if (rk != r.rank) throw std::logic_error("motive eigenspace has unexpected dimension");
  MatrixFq basis(L, n, rk);
  for (std::size_t c = 0; c < rk; ++c) {
    for (std::size_t i = 0; i < n; ++i) basis.at(i, c) = v[c][i];
  }
  MatrixFq b(L, rk, rk);
  for (std::size_t c = 0; c < rk; ++c) {
    auto sol = basis.solve(pi_l.apply(v[c]));
    if (!sol) throw std::logic_error("Frobenius does not preserve the eigenspace");
    for (std::size_t i = 0; i < rk; ++i) b.at(i, c) = (*sol)[i];
  }
  FieldPoly cp = b.charpoly();
  std::vector<FieldElem> c;
  for (const auto& x : cp.coeffs()) {
    auto pre = emb_l.preimage(x);
    if (!pre) throw std::logic_error("motive characteristic polynomial is not defined over F_ell");
    c.push_back(*pre);
  }
  return FieldPoly(fl.field(), std::move(c));
}

Isogeny quotient_by_kernel(const ReducedModule& r, const TorsionSpace& ts, const std::vector<FieldElem>& x_basis) {
  const FieldPtr& ext = ts.ext;
  const std::uint64_t q = ext->base_order();
  SkewF u = SkewF::one(ext);
  const SkewF tau = SkewF::tau(ext, 1);
  for (const auto& x : x_basis) {
    const FieldElem y = linearized_eval(u, x);
    if (y.is_zero()) continue;
    u = (tau - SkewF::constant(ext, y.pow(q - 1))) * u;
  }
  std::vector<SkewF::Term> down;
  for (const auto& t : u.terms()) {
    auto c = ts.emb.preimage(t.coeff);
    if (!c) throw QuotientError("subspace is not Frobenius-stable: u is not defined over F_p");
    down.push_back({t.exp, *c});
  }
  SkewF u_p(r.field(), std::move(down));
  auto [psi, rem] = divmod_right(u_p * r.phi_T, u_p);
  if (!rem.is_zero()) throw QuotientError("subspace is not an A-submodule: u does not right-divide u phi_T");
  return Isogeny{u_p, r.phi_T, psi};
}

}  // namespace drinfeld
