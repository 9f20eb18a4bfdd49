#ifndef TANNAKIT_SEMIGROUP_HPP
#define TANNAKIT_SEMIGROUP_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tannakit {

/// Presentation of N^n x Z/n_1 x ... x Z/n_r with generators a_1..a_m,
/// m = n + r, ordered free part first.
struct AbelianPresentation {
  int free_rank = 0;
  std::vector<int> torsion_moduli;  // each >= 1

  int generator_count() const { return free_rank + static_cast<int>(torsion_moduli.size()); }
  bool is_torsion(int gen_index) const { return gen_index > free_rank; }  // 1-based
  int modulus(int gen_index) const {  // 1-based torsion generator
    return torsion_moduli[static_cast<size_t>(gen_index - free_rank - 1)];
  }
  void validate() const;
  bool operator==(const AbelianPresentation&) const = default;
};

/// Element in normal form: exponent vector with torsion entries reduced.
struct Word {
  std::vector<long long> exps;

  bool is_identity() const;
  bool operator==(const Word&) const = default;
  bool operator<(const Word& o) const { return exps < o.exps; }
};

Word identity_word(const AbelianPresentation& p);
Word normalize_word(const AbelianPresentation& p, const std::vector<int>& raw_indices);
Word word_from_exponents(const AbelianPresentation& p, std::vector<long long> exps);
Word multiply(const AbelianPresentation& p, const Word& a, const Word& b);
long long word_length(const Word& w);

/// Generator string a_1^{d_1}...a_m^{d_m} spelled out letter by letter
/// (1-based generator indices).
std::vector<int> word_letters(const Word& w);

/// All normal-form words with word_length <= max_len.
std::vector<Word> words_up_to_length(const AbelianPresentation& p, long long max_len);

struct ExchangeStep {
  enum class Kind { Swap, TorsionReduce };
  Kind kind;
  // Swap: letters (i, j) with i > j at positions (pos, pos+1) become (j, i).
  // TorsionReduce: n_j copies of generator `i` starting at `pos` are removed.
  int i = 0, j = 0;
  int pos = 0;
};

/// The fixed schedule of adjacent exchanges (and eager torsion reductions)
/// that turns the concatenation of the two normal-form strings into the
/// normal-form string of the product: the a_m block moves first, then
/// a_{m-1}, and so on.
std::vector<ExchangeStep> exchange_schedule(const AbelianPresentation& p, const Word& w1,
                                            const Word& w2);

/// Replay a schedule literally on a letter string (used as the executable
/// cross-check that the schedule sorts the concatenation).
std::vector<int> replay_schedule(const AbelianPresentation& p, std::vector<int> letters,
                                 const std::vector<ExchangeStep>& schedule);

// --- free products -------------------------------------------------------

struct FreeProductRegistry {
  std::vector<AbelianPresentation> factors;  // factor ids are indices
};

/// Alternating-block normal form; adjacent blocks have distinct factors and
/// no block is the identity.
struct FreeProductWord {
  std::vector<std::pair<int, Word>> blocks;

  bool is_identity() const { return blocks.empty(); }
  bool operator==(const FreeProductWord&) const = default;
  bool operator<(const FreeProductWord& o) const { return blocks < o.blocks; }
};

FreeProductWord fp_normalize(const FreeProductRegistry& reg,
                             const std::vector<std::pair<int, Word>>& blocks);
FreeProductWord fp_multiply(const FreeProductRegistry& reg, const FreeProductWord& a,
                            const FreeProductWord& b);
long long fp_length(const FreeProductWord& w);  // total block word length

std::string word_to_string(const Word& w);
std::string fp_word_to_string(const FreeProductWord& w);

}  // namespace tannakit

#endif
