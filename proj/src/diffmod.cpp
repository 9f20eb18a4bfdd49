#include "tannakit/diffmod.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tannakit {

void DiffField::register_endo(const std::string& name, SubstEndo sigma) {
  auto lambda = commutation_factor(sigma, der, vars);
  if (!lambda)
    throw std::invalid_argument("endomorphism '" + name + "' has no uniform commutation factor");
  endos[name] = Endo{std::move(sigma), *lambda};
}

const DiffField::Endo& DiffField::endo(const std::string& name) const {
  auto it = endos.find(name);
  if (it == endos.end()) throw std::out_of_range("unknown endomorphism '" + name + "'");
  return it->second;
}

DiffField::Endo composed_endo(const DiffField& k, const DiffField::Endo& tau,
                              const DiffField::Endo& sigma) {
  DiffField::Endo e;
  e.sigma = compose(tau.sigma, sigma.sigma, k.vars);
  e.lambda = tau.lambda * rf_substitute(sigma.lambda, tau.sigma);
  return e;
}

DiffModule make_module(const DiffField& k, Mat a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("module matrix must be square");
  if (a.vars() != k.vars) throw std::invalid_argument("module matrix over the wrong field");
  return DiffModule{a.rows(), std::move(a)};
}

DiffModule twist(const DiffField& k, const DiffModule& m, const DiffField::Endo& e) {
  (void)k;
  return DiffModule{m.dim, m.a.substituted(e.sigma).scaled(e.lambda)};
}

DiffModule twist(const DiffField& k, const DiffModule& m, const std::string& endo_name) {
  return twist(k, m, k.endo(endo_name));
}

DiffModule gauge(const DiffField& k, const DiffModule& m, const Mat& c) {
  auto cinv = mat_inverse(c);
  if (!cinv) throw std::invalid_argument("gauge matrix is singular");
  Mat res = *cinv * m.a * c - *cinv * c.derived(k.der);
  return DiffModule{m.dim, std::move(res)};
}

bool verify_gauge_equiv(const DiffField& k, const DiffModule& m, const DiffModule& n,
                        const Mat& c) {
  if (m.dim != n.dim) throw std::invalid_argument("dimension mismatch");
  return gauge(k, m, c).a.equals(n.a);
}

namespace {

RatFunc lift_rf(const RatFunc& f, const VarList& bigger) {
  return RatFunc(f.num().lifted(bigger), f.den().lifted(bigger));
}

// Drop trailing always-zero variables (the unknowns appended by solve_gauge).
MultiPoly restrict_poly(const MultiPoly& p, const VarList& smaller) {
  size_t n = smaller->size();
  std::vector<std::pair<std::vector<int>, Q>> terms;
  for (const auto& [exps, c] : p.terms()) {
    for (size_t i = n; i < exps.size(); ++i)
      if (exps[i] != 0) throw std::logic_error("polynomial not restrictable");
    terms.push_back({std::vector<int>(exps.begin(), exps.begin() + static_cast<long>(n)), c});
  }
  MultiPoly out(smaller);
  out.set_terms(std::move(terms));
  return out;
}

// Nullspace vectors arrive as Cramer minors sharing a large common polynomial
// factor.  If some component divides all the others it is (up to a constant)
// that factor, so dividing it out recovers the small projective representative.
std::vector<RatFunc> strip_common_factor(const VarList& vars, const std::vector<RatFunc>& q) {
  std::vector<size_t> nz;
  for (size_t t = 0; t < q.size(); ++t) {
    if (!q[t].den().is_constant()) return q;
    if (!q[t].is_zero()) nz.push_back(t);
  }
  if (nz.empty()) return q;
  std::sort(nz.begin(), nz.end(), [&](size_t i, size_t j) {
    return q[i].num().terms().size() < q[j].num().terms().size();
  });
  for (size_t cand : nz) {
    const MultiPoly& g = q[cand].num();
    std::vector<RatFunc> out;
    bool ok = true;
    for (const auto& f : q) {
      if (f.is_zero()) {
        out.push_back(RatFunc::zero(vars));
        continue;
      }
      auto d = f.num().divide_exact(g);
      if (!d) {
        ok = false;
        break;
      }
      out.push_back(RatFunc::from_poly(*d) / RatFunc::constant(vars, f.den().constant_value()));
    }
    if (ok) return out;
  }
  return q;
}

}  // namespace

std::optional<Mat> solve_gauge(const DiffField& k, const DiffModule& m, const DiffModule& n,
                               const std::string& deriv_var, int deg_bound,
                               const MultiPoly& denom) {
  if (m.dim != n.dim) throw std::invalid_argument("dimension mismatch");
  int d = m.dim;
  int zi = -1;
  for (size_t i = 0; i < k.vars->size(); ++i)
    if ((*k.vars)[i] == deriv_var) zi = static_cast<int>(i);
  if (zi < 0) throw std::invalid_argument("unknown derivation variable");
  int num_deg = deg_bound + denom.degree_in(zi);
  int per_entry = num_deg + 1;
  int nunk = d * d * per_entry;

  // extend the variable list with one unknown constant per ansatz coefficient
  std::vector<std::string> names = *k.vars;
  for (int t = 0; t < nunk; ++t) names.push_back("_u" + std::to_string(t));
  VarList big = make_vars(std::move(names));
  DerivationTable bigder;
  for (const auto& [v, img] : k.der.images) bigder.images[v] = lift_rf(img, big);
  for (int t = 0; t < nunk; ++t) bigder.images["_u" + std::to_string(t)] = RatFunc::zero(big);

  RatFunc den_big = RatFunc::from_poly(denom.lifted(big));
  Mat a(d, d, big), b(d, d, big), c(d, d, big);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      a.at(i, j) = lift_rf(m.a.at(i, j), big);
      b.at(i, j) = lift_rf(n.a.at(i, j), big);
      RatFunc entry = RatFunc::zero(big);
      for (int kk = 0; kk < per_entry; ++kk) {
        int t = (i * d + j) * per_entry + kk;
        std::vector<int> exps(big->size(), 0);
        exps[static_cast<size_t>(zi)] = kk;
        exps[k.vars->size() + static_cast<size_t>(t)] = 1;
        entry = entry + RatFunc::from_poly(MultiPoly::monomial(big, std::move(exps), Q(1)));
      }
      c.at(i, j) = entry / den_big;
    }

  // residual of d(C) = A C - C B, linear homogeneous in the unknowns
  Mat res = c.derived(bigder) - (a * c - c * b);
  std::vector<std::vector<MultiPoly>> rows;  // coefficients per unknown, z-stratified
  size_t base = k.vars->size();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const MultiPoly& p = res.at(i, j).num();
      std::vector<MultiPoly> per_unknown(static_cast<size_t>(nunk), MultiPoly::zero(big));
      for (const auto& [exps, coeff] : p.terms()) {
        int t = -1;
        for (int u = 0; u < nunk; ++u)
          if (exps[base + static_cast<size_t>(u)] != 0) {
            if (t >= 0 || exps[base + static_cast<size_t>(u)] != 1)
              throw std::logic_error("residual is not linear in the unknowns");
            t = u;
          }
        if (t < 0) throw std::logic_error("residual has an unknown-free term");
        std::vector<int> e = exps;
        e[base + static_cast<size_t>(t)] = 0;
        per_unknown[static_cast<size_t>(t)] =
            per_unknown[static_cast<size_t>(t)] + MultiPoly::monomial(big, std::move(e), coeff);
      }
      int max_z = 0;
      std::vector<std::vector<MultiPoly>> strata(static_cast<size_t>(nunk));
      for (int t = 0; t < nunk; ++t) {
        strata[static_cast<size_t>(t)] = per_unknown[static_cast<size_t>(t)].coefficients_in(zi);
        max_z = std::max(max_z, static_cast<int>(strata[static_cast<size_t>(t)].size()));
      }
      for (int zp = 0; zp < max_z; ++zp) {
        std::vector<MultiPoly> row;
        for (int t = 0; t < nunk; ++t) {
          const auto& s = strata[static_cast<size_t>(t)];
          row.push_back(zp < static_cast<int>(s.size()) ? s[static_cast<size_t>(zp)]
                                                        : MultiPoly::zero(big));
        }
        rows.push_back(std::move(row));
      }
    }

  // every row entry is unknown-free, so solve over the base variable list
  Mat sys(static_cast<int>(rows.size()), nunk, k.vars);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int t = 0; t < nunk; ++t)
      sys.at(static_cast<int>(r), t) =
          RatFunc::from_poly(restrict_poly(rows[r][static_cast<size_t>(t)], k.vars));
  auto sol = linear_solve(sys, std::vector<RatFunc>(rows.size(), RatFunc::zero(k.vars)));
  if (!sol || sol->nullspace.empty()) return std::nullopt;

  auto build = [&](const std::vector<RatFunc>& q) {
    Mat cand(d, d, k.vars);
    RatFunc denr = RatFunc::from_poly(denom);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        RatFunc entry = RatFunc::zero(k.vars);
        for (int kk = 0; kk < per_entry; ++kk) {
          int t = (i * d + j) * per_entry + kk;
          RatFunc coeff = q[static_cast<size_t>(t)];
          entry = entry + coeff * RatFunc::variable(k.vars, deriv_var).pow(kk);
        }
        cand.at(i, j) = entry / denr;
      }
    return cand;
  };

  std::vector<std::vector<RatFunc>> candidates = sol->nullspace;
  {  // also try the sum of all basis vectors
    std::vector<RatFunc> total(static_cast<size_t>(nunk), RatFunc::zero(big));
    for (const auto& v : sol->nullspace)
      for (size_t t = 0; t < total.size(); ++t) total[t] = total[t] + v[t];
    candidates.push_back(std::move(total));
  }
  for (const auto& q : candidates) {
    Mat cand = build(strip_common_factor(k.vars, q));
    if (determinant(cand).is_zero()) continue;
    if (verify_gauge_equiv(k, m, n, cand)) return cand;
  }
  return std::nullopt;
}

DiffModule dmod_tensor(const DiffField& k, const DiffModule& m, const DiffModule& n) {
  Mat i_m = Mat::identity(m.dim, k.vars), i_n = Mat::identity(n.dim, k.vars);
  return DiffModule{m.dim * n.dim, Mat::kronecker(m.a, i_n) + Mat::kronecker(i_m, n.a)};
}

DiffModule dmod_dual(const DiffField& k, const DiffModule& m) {
  (void)k;
  return DiffModule{m.dim, m.a.transpose().scaled(RatFunc::constant(m.a.vars(), Q(-1)))};
}

DiffModule dmod_direct_sum(const DiffField& k, const DiffModule& m, const DiffModule& n) {
  (void)k;
  return DiffModule{m.dim + n.dim, Mat::block_diag(m.a, n.a)};
}

std::optional<RatFunc> hyperexp_criterion(const Q& kappa, const VarList& vars) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(kappa) != 1) return std::nullopt;
  Int j = numerator(kappa);
  RatFunc e = RatFunc::variable(vars, "E");
  int aj = static_cast<int>(j < 0 ? -j : j);
  RatFunc p = e.pow(aj);
  return j < 0 ? p.inverse() : p;
}

std::vector<CommuteEntry> commute_up_to_gauge(const Q& s1, long long s2, long long n_min,
                                              long long n_max) {
  if (s2 == 0 || s2 == 1) throw std::invalid_argument("s2 must avoid 0 and 1");
  // sigma1/sigma2 are not represented on E (their images on exp(x) involve
  // transcendental constants), so the modules live over Q(x, m) and the
  // gauge-existence question is delegated to hyperexp_criterion over Q(x, E)
  VarList vars = make_vars({"x", "m"});
  VarList evars = make_vars({"x", "E"});
  DiffField k;
  k.vars = vars;
  k.der.images["x"] = RatFunc::one(vars);
  k.der.images["m"] = RatFunc::zero(vars);
  SubstEndo shift, scale;
  shift.images["x"] = RatFunc::variable(vars, "x") + RatFunc::constant(vars, s1);
  scale.images["x"] = RatFunc::variable(vars, "x") * RatFunc::constant(vars, Q(s2));
  k.register_endo("sigma1", shift);
  k.register_endo("sigma2", scale);

  std::vector<CommuteEntry> out;
  for (long long n = n_min; n <= n_max; ++n) {
    Mat a(1, 1, vars);
    a.at(0, 0) = RatFunc::constant(vars, Q(n)) * RatFunc::variable(vars, "x") +
                 RatFunc::variable(vars, "m");
    DiffModule base = make_module(k, a);
    DiffModule tx2 = twist(k, twist(k, base, "sigma2"), "sigma1");
    DiffModule tx3 = twist(k, twist(k, base, "sigma1"), "sigma2");
    RatFunc diff = tx2.a.at(0, 0) - tx3.a.at(0, 0);
    if (!diff.num().is_constant() || !diff.den().is_constant())
      throw std::logic_error("tx2 - tx3 is not constant");
    Q kappa = diff.num().is_zero() ? Q(0)
                                   : diff.num().constant_value() / diff.den().constant_value();
    Q expected = s1 * Q(s2) * Q(n) * Q(s2 - 1);
    if (kappa != expected) throw std::logic_error("kappa does not match s1*s2*n*(s2-1)");
    out.push_back({n, kappa, hyperexp_criterion(kappa, evars).has_value()});
  }
  return out;
}

HyperData hypergeometric_example() {
  HyperData h;
  VarList vars = make_vars({"a", "b", "c", "z"});
  h.field.vars = vars;
  h.field.der.images["a"] = RatFunc::zero(vars);
  h.field.der.images["b"] = RatFunc::zero(vars);
  h.field.der.images["c"] = RatFunc::zero(vars);
  h.field.der.images["z"] = RatFunc::one(vars);
  for (auto [name, var] : {std::pair{"sigma1", "a"}, {"sigma2", "b"}, {"sigma3", "c"}}) {
    SubstEndo s;
    s.images[var] = RatFunc::variable(vars, var) + RatFunc::one(vars);
    h.field.register_endo(name, s);
  }
  auto rf = [&](const char* text) { return parse_ratfunc(text, vars); };
  Mat a(2, 2, vars);
  a.at(0, 0) = RatFunc::zero(vars);
  a.at(0, 1) = RatFunc::one(vars);
  a.at(1, 0) = rf("a*b/(z*(1-z))");
  a.at(1, 1) = rf("((a+b+1)*z-c)/(z*(1-z))");
  h.module = make_module(h.field, a);

  // C1 and C2 carry the corrected sign in the (1,2) entry: z*(1-z), not
  // z*(z-1) as printed; with the printed entry neither gauge orientation
  // holds, and the corrected matrices are the unique solutions of
  // d(C) = A*C - C*sigma_i(A) in this shape.
  Mat c1(2, 2, vars), c2(2, 2, vars), c3(2, 2, vars);
  c1.at(0, 0) = rf("(c-z*b-a-1)/a");
  c1.at(0, 1) = rf("z*(1-z)/a");
  c1.at(1, 0) = rf("b");
  c1.at(1, 1) = rf("z-1");
  c2.at(0, 0) = rf("(c-z*a-b-1)/b");
  c2.at(0, 1) = rf("z*(1-z)/b");
  c2.at(1, 0) = rf("a");
  c2.at(1, 1) = rf("z-1");
  c3.at(0, 0) = rf("c");
  c3.at(0, 1) = rf("z");
  c3.at(1, 0) = rf("a*b/(1-z)");
  c3.at(1, 1) = rf("z*(a+b-c)/(1-z)");
  h.c = {c1, c2, c3};
  return h;
}

}  // namespace tannakit
