#ifndef TANNAKIT_COHERENCE_HPP
#define TANNAKIT_COHERENCE_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "tannakit/matrix.hpp"
#include "tannakit/semigroup.hpp"

namespace tannakit {

/// A finite skeleton of the category the action is evaluated in: objects are
/// dimensions, morphisms are explicit matrices between them.  Every coherence
/// diagram becomes a finite family of matrix equations over this data.
struct EvalMorphism {
  int src = 0, dst = 0;  // object indices
  Mat m;
};

struct EvalCategory {
  VarList vars;
  std::vector<int> object_dims;
  std::vector<EvalMorphism> morphisms;

  void validate() const;
};

/// V |-> k^pad (+) twist(V); on morphisms id_pad (+) (entrywise twist).
struct BlockFunctor {
  int pad = 0;
  SubstEndo twist;

  int dim_of(int d) const { return pad + d; }
  Mat apply(const Mat& m) const;
};

/// Component rule for a natural isomorphism between block-functor composites:
/// at an object with inner dimension d the component is diag(head, tail*I_d).
/// Because the component is a function of d alone, whiskering at composite
/// (virtual) objects stays computable.
struct IsoRule {
  Mat head;      // square block on the pad coordinates
  RatFunc tail;  // scalar on the inner coordinates

  Mat at(int inner_dim) const;
  bool invertible() const;

  static IsoRule identity(int pad_dim, const VarList& vars);
  static IsoRule scalar(int pad_dim, const RatFunc& lambda);
};

/// The finite coherence data of §3.2.3: generator functors, exchange isos
/// i_{a_i,a_j} for i > j, torsion isos I_j : T(a_{n+j})^{n_j} -> Id.
struct ActionData {
  AbelianPresentation pres;
  EvalCategory cat;
  std::vector<BlockFunctor> functors;              // one per generator
  std::map<std::pair<int, int>, IsoRule> exchange;  // key (i, j) with i > j
  std::vector<IsoRule> torsion;                     // one per torsion generator

  void validate() const;
  const BlockFunctor& functor(int gen) const;  // 1-based
  const IsoRule& exch(int i, int j) const;     // i > j
  const IsoRule& torsion_rule(int gen) const;  // gen > free_rank

  int pad_of_letters(const std::vector<int>& letters) const;
  int pad_of_word(const Word& w) const;
  SubstEndo twist_of_letters(const std::vector<int>& letters) const;
};

struct CoherenceFailure {
  std::string kind;             // "hexagon" | "torsion" | "naturality" | ...
  std::vector<long long> data;  // generator triple / word exponents involved
  int object = -1;              // object index, or inner dimension for virtual checks
  std::string detail;
};
using CoherenceReport = std::vector<CoherenceFailure>;

CoherenceReport check_hexagon(const ActionData& d);
CoherenceReport check_torsion(const ActionData& d);
CoherenceReport check_naturality(const ActionData& d);

/// Composite isos c_{w1,w2} obtained by replaying the fixed exchange schedule;
/// components are cached per (w1, w2, inner dimension).
class ActionContext {
public:
  explicit ActionContext(const ActionData& d) : data_(d) {}

  const Mat& component(const Word& w1, const Word& w2, int inner_dim);
  const ActionData& data() const { return data_; }

private:
  const ActionData& data_;
  std::map<std::tuple<std::vector<long long>, std::vector<long long>, int>, Mat> cache_;
};

/// A composite natural isomorphism evaluated at every object of the category.
struct NatIso {
  std::vector<int> src_letters, dst_letters;
  std::vector<Mat> components;  // one per object
};

NatIso extend_iso(const ActionData& d, const Word& w1, const Word& w2);

/// Brute-force check of diag:assoc over all word triples of per-word length
/// <= max_len, at every object.
CoherenceReport verify_associativity(const ActionData& d, long long max_len);

/// Per-generator components m_g : T(g) -> T'(g) of a morphism of actions.
struct MorphismData {
  std::vector<IsoRule> components;
};

/// Checks invertibility, naturality, and the diagrams diag:comm2 (exchange
/// compatibility) and diag:commfin (torsion compatibility).
CoherenceReport check_action_morphism(const ActionData& t, const ActionData& tp,
                                      const MorphismData& m);

// --- free products -------------------------------------------------------

struct FreeProductAction {
  FreeProductRegistry reg;
  std::vector<ActionData> factors;  // share one EvalCategory
};

FreeProductAction combine_free_product(const ActionData& a, const ActionData& b);
const ActionData& restrict_factor(const FreeProductAction& act, int fid);

class FreeProductContext {
public:
  explicit FreeProductContext(const FreeProductAction& act);

  Mat component(const FreeProductWord& f, const FreeProductWord& g, int inner_dim);
  int pad_of(const FreeProductWord& w) const;
  SubstEndo twist_of(const FreeProductWord& w) const;

private:
  const FreeProductAction& act_;
  std::vector<ActionContext> factor_ctx_;
};

/// All free-product normal forms with fp_length <= max_len.
std::vector<FreeProductWord> fp_words_up_to_length(const FreeProductRegistry& reg,
                                                   long long max_len);

/// diag:assoc over free-product word triples with total length <= max_total_len.
CoherenceReport verify_fp_associativity(const FreeProductAction& act, long long max_total_len);

}  // namespace tannakit

#endif
