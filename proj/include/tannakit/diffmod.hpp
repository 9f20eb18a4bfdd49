#ifndef TANNAKIT_DIFFMOD_HPP
#define TANNAKIT_DIFFMOD_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tannakit/matrix.hpp"

namespace tannakit {

/// A differential-difference field: one derivation plus named substitution
/// endomorphisms, each stored with its commutation factor lambda satisfying
/// d(sigma(f)) = lambda * sigma(d(f)).
struct DiffField {
  VarList vars;
  DerivationTable der;

  struct Endo {
    SubstEndo sigma;
    RatFunc lambda;
  };
  std::map<std::string, Endo> endos;

  /// Computes and verifies the commutation factor; throws if none exists.
  void register_endo(const std::string& name, SubstEndo sigma);
  const Endo& endo(const std::string& name) const;
};

/// Composite twist: applying sigma then tau acts as the endomorphism
/// tau . sigma with factor lambda_tau * tau(lambda_sigma).
DiffField::Endo composed_endo(const DiffField& k, const DiffField::Endo& tau,
                              const DiffField::Endo& sigma);

/// The system dY = A*Y.
struct DiffModule {
  int dim = 0;
  Mat a;
};

DiffModule make_module(const DiffField& k, Mat a);

/// A |-> lambda * sigma(A)  (entrywise substitution, then scaling).
DiffModule twist(const DiffField& k, const DiffModule& m, const std::string& endo_name);
DiffModule twist(const DiffField& k, const DiffModule& m, const DiffField::Endo& e);

/// A |-> C^{-1} A C - C^{-1} dC.  Throws on singular C.
DiffModule gauge(const DiffField& k, const DiffModule& m, const Mat& c);

bool verify_gauge_equiv(const DiffField& k, const DiffModule& m, const DiffModule& n,
                        const Mat& c);

/// Solve d(C) = A*C - C*B with the ansatz entry = q(v)/denom, where v is the
/// distinguished derivation variable, deg_v(q) <= deg_bound + deg_v(denom),
/// and the remaining coefficients range over the parameter fraction field.
/// Returns an invertible solution or nullopt.
std::optional<Mat> solve_gauge(const DiffField& k, const DiffModule& m, const DiffModule& n,
                               const std::string& deriv_var, int deg_bound,
                               const MultiPoly& denom);

DiffModule dmod_tensor(const DiffField& k, const DiffModule& m, const DiffModule& n);
DiffModule dmod_dual(const DiffField& k, const DiffModule& m);
DiffModule dmod_direct_sum(const DiffField& k, const DiffModule& m, const DiffModule& n);

/// Solutions of d(c) = kappa*c in Q(x,E) with dx = 1, dE = E, within the
/// ansatz c = r(x)*E^j: returns E^kappa when kappa is an integer, else
/// nullopt.  `vars` must contain "x" and "E".
std::optional<RatFunc> hyperexp_criterion(const Q& kappa, const VarList& vars);

struct CommuteEntry {
  long long n = 0;
  Q kappa;  // s1*s2*n*(s2-1)
  bool equivalent = false;
};

/// ex:commuteandnot sweep: for each n, builds the eq:tx2/eq:tx3 modules and
/// decides gauge equivalence via hyperexp_criterion.
std::vector<CommuteEntry> commute_up_to_gauge(const Q& s1, long long s2, long long n_min,
                                              long long n_max);

/// The hypergeometric contiguity data of ex:hyper over Q(a,b,c,z):
/// the companion matrix A, the endomorphisms sigma_1..sigma_3, and the gauge
/// matrices (with the printed sign slip in the (1,2) entries of C1/C2
/// corrected so that gauge(A, C_i) = sigma_i(A) holds; see the tests).
struct HyperData {
  DiffField field;
  DiffModule module;
  std::vector<Mat> c;  // C1, C2, C3
};
HyperData hypergeometric_example();

}  // namespace tannakit

#endif
