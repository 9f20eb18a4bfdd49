#ifndef TANNAKIT_HOPF_HPP
#define TANNAKIT_HOPF_HPP

#include <map>
#include <string>
#include <vector>

#include "tannakit/field.hpp"
#include "tannakit/semigroup.hpp"

namespace tannakit {

/// Indexed difference indeterminate: x_{ij,w} (or y_{i,w} when j < 0).
struct DiffIndet {
  int i = 0, j = -1;
  Word w;

  bool operator==(const DiffIndet&) const = default;
  bool operator<(const DiffIndet& o) const {
    if (i != o.i) return i < o.i;
    if (j != o.j) return j < o.j;
    return w < o.w;
  }
  std::string to_string() const;
};

/// Monomial: sorted list of (indeterminate, positive exponent).
using GMono = std::vector<std::pair<DiffIndet, int>>;

GMono gmono_mul(const GMono& a, const GMono& b);
long long gmono_ord(const GMono& m);
int gmono_deg(const GMono& m);

/// Sparse difference polynomial over Q in indexed indeterminates.
class GPoly {
public:
  GPoly() = default;
  explicit GPoly(AbelianPresentation pres) : pres_(std::move(pres)) {}

  static GPoly zero(const AbelianPresentation& p);
  static GPoly constant(const AbelianPresentation& p, const Q& c);
  static GPoly indet(const AbelianPresentation& p, const DiffIndet& v);
  static GPoly monomial(const AbelianPresentation& p, GMono m, const Q& c);

  const AbelianPresentation& pres() const { return pres_; }
  const std::map<GMono, Q>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  GPoly operator+(const GPoly& o) const;
  GPoly operator-(const GPoly& o) const;
  GPoly operator*(const GPoly& o) const;
  GPoly scaled(const Q& c) const;
  bool operator==(const GPoly& o) const { return terms_ == o.terms_; }

  void add_term(GMono m, const Q& c);
  std::string to_string() const;

private:
  AbelianPresentation pres_;
  std::map<GMono, Q> terms_;
};

/// The semigroup action h(y_{i,w}) = y_{i,hw}; a ring homomorphism.
GPoly gpoly_apply(const Word& h, const GPoly& f);

/// Max word length among occurring indeterminate indices; throws on 0.
long long ord(const GPoly& f);

// --- the GL_n difference Hopf algebra -------------------------------------

struct GLn {
  int n = 1;
  AbelianPresentation pres;
};

GPoly gl_var(const GLn& g, int i, int j, const Word& w);  // x_{ij,w}, 1-based i,j
GPoly gl_det(const GLn& g, const Word& w);                // det(x_{ij,w})

/// Element of B = k{x_{ij}, 1/det}_G stored as num / prod det_w^{pow}.
/// Equality is by cross-multiplication against the determinant powers.
struct HopfElem {
  GPoly num;
  std::map<Word, long long> det_pows;

  bool is_zero() const { return num.is_zero(); }
};

HopfElem he_from_poly(GPoly p);
HopfElem he_add(const GLn& g, const HopfElem& a, const HopfElem& b);
HopfElem he_mul(const GLn& g, const HopfElem& a, const HopfElem& b);
HopfElem he_scaled(const HopfElem& a, const Q& c);
bool he_equal(const GLn& g, const HopfElem& a, const HopfElem& b);
HopfElem he_apply(const Word& h, const HopfElem& a);

/// Rank-r tensor power of B; per-slot global determinant denominators.
struct HopfTensor {
  int rank = 2;
  std::map<std::vector<GMono>, Q> terms;
  std::vector<std::map<Word, long long>> det_pows;  // one map per slot
};

HopfTensor hopf_delta(const GLn& g, const HopfElem& f);       // rank 2
HopfTensor tensor_delta_slot(const GLn& g, const HopfTensor& t, int slot);
bool tensor_equal(const GLn& g, const HopfTensor& a, const HopfTensor& b);

Q hopf_counit(const GLn& g, const HopfElem& f);
HopfElem hopf_antipode(const GLn& g, const HopfElem& f);

bool coassociativity_holds(const GLn& g, const HopfElem& f);
bool counit_law_holds(const GLn& g, const HopfElem& f);
bool antipode_law_holds(const GLn& g, const HopfElem& f);  // both sides

// --- comodules -------------------------------------------------------------

struct Comodule {
  GLn alg;
  int dim = 0;
  std::vector<std::vector<HopfElem>> rho;  // rho[i][j], coaction matrix
};

Comodule standard_comodule(const GLn& g);               // rho_ij = x_{ij,e}
Comodule det_comodule(const GLn& g);                    // 1-dim, coaction det_e
bool comodule_axioms(const Comodule& v);
Comodule twist_comodule(const Comodule& v, const Word& g);
Comodule comodule_tensor(const Comodule& v, const Comodule& w);
Comodule comodule_dual(const Comodule& v);
Comodule comodule_direct_sum(const Comodule& v, const Comodule& w);

// --- the L_{r,s,p} filtration ----------------------------------------------

struct FiltrationResult {
  int r = 0, s = 0, p = 0;
  std::vector<GMono> basis;  // each element implicitly times D_e^r
  long long dim = 0;
  bool delta_closed = false;     // Delta(L) subset L (x) B, expanded per element
  bool equivariance_ok = false;  // (phi_i (x) id) . rho = Delta . phi_i
};

FiltrationResult l_filtration(const GLn& g, int r, int s, int p, long long cap = 200000);

}  // namespace tannakit

#endif
