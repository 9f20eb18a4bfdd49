#include "tannakit/semigroup.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tannakit {

void AbelianPresentation::validate() const {
  if (free_rank < 0) throw std::invalid_argument("negative free rank");
  for (int m : torsion_moduli)
    if (m < 1) throw std::invalid_argument("torsion modulus must be >= 1");
}

bool Word::is_identity() const {
  return std::all_of(exps.begin(), exps.end(), [](long long e) { return e == 0; });
}

Word identity_word(const AbelianPresentation& p) {
  return Word{std::vector<long long>(static_cast<size_t>(p.generator_count()), 0)};
}

Word word_from_exponents(const AbelianPresentation& p, std::vector<long long> exps) {
  if (static_cast<int>(exps.size()) != p.generator_count())
    throw std::invalid_argument("exponent vector length mismatch");
  for (size_t j = 0; j < p.torsion_moduli.size(); ++j) {
    long long& e = exps[static_cast<size_t>(p.free_rank) + j];
    long long m = p.torsion_moduli[j];
    e %= m;
    if (e < 0) e += m;
  }
  for (long long e : exps)
    if (e < 0) throw std::invalid_argument("negative exponent in free part");
  return Word{std::move(exps)};
}

Word normalize_word(const AbelianPresentation& p, const std::vector<int>& raw_indices) {
  std::vector<long long> exps(static_cast<size_t>(p.generator_count()), 0);
  for (int idx : raw_indices) {
    if (idx < 1 || idx > p.generator_count())
      throw std::out_of_range("generator index out of range");
    ++exps[static_cast<size_t>(idx - 1)];
  }
  return word_from_exponents(p, std::move(exps));
}

Word multiply(const AbelianPresentation& p, const Word& a, const Word& b) {
  if (a.exps.size() != b.exps.size() ||
      static_cast<int>(a.exps.size()) != p.generator_count())
    throw std::invalid_argument("word presentation mismatch");
  std::vector<long long> exps(a.exps.size());
  for (size_t k = 0; k < exps.size(); ++k) exps[k] = a.exps[k] + b.exps[k];
  return word_from_exponents(p, std::move(exps));
}

long long word_length(const Word& w) {
  return std::accumulate(w.exps.begin(), w.exps.end(), 0LL);
}

std::vector<int> word_letters(const Word& w) {
  std::vector<int> out;
  for (size_t k = 0; k < w.exps.size(); ++k)
    for (long long c = 0; c < w.exps[k]; ++c) out.push_back(static_cast<int>(k) + 1);
  return out;
}

std::vector<Word> words_up_to_length(const AbelianPresentation& p, long long max_len) {
  std::vector<Word> out;
  std::vector<long long> cur(static_cast<size_t>(p.generator_count()), 0);
  std::function<void(int, long long)> rec = [&](int k, long long remaining) {
    if (k == p.generator_count()) {
      out.push_back(Word{cur});
      return;
    }
    long long cap = remaining;
    if (p.is_torsion(k + 1)) cap = std::min<long long>(cap, p.modulus(k + 1) - 1);
    for (long long e = 0; e <= cap; ++e) {
      cur[static_cast<size_t>(k)] = e;
      rec(k + 1, remaining - e);
    }
    cur[static_cast<size_t>(k)] = 0;
  };
  rec(0, max_len);
  return out;
}

std::vector<ExchangeStep> exchange_schedule(const AbelianPresentation& p, const Word& w1,
                                            const Word& w2) {
  if (static_cast<int>(w1.exps.size()) != p.generator_count() ||
      w1.exps.size() != w2.exps.size())
    throw std::invalid_argument("word presentation mismatch");
  std::vector<ExchangeStep> steps;
  std::vector<int> letters = word_letters(w1);
  std::vector<int> tail = word_letters(w2);
  letters.insert(letters.end(), tail.begin(), tail.end());

  int m = p.generator_count();
  for (int v = m; v >= 1; --v) {
    long long cnt = w1.exps[static_cast<size_t>(v - 1)];
    if (cnt > 0) {
      // the w1-part occurrences of v form the first contiguous v-block
      size_t start = 0;
      while (start < letters.size() && letters[start] != v) ++start;
      size_t block = static_cast<size_t>(cnt);
      // bubble the block right past every smaller-index letter
      while (start + block < letters.size() && letters[start + block] < v) {
        for (size_t q = start + block; q > start; --q) {
          steps.push_back({ExchangeStep::Kind::Swap, v, letters[q], static_cast<int>(q - 1)});
          std::swap(letters[q - 1], letters[q]);
        }
        ++start;
      }
    }
    // eager torsion reduction once the two v-blocks are adjacent
    if (p.is_torsion(v)) {
      long long total = w1.exps[static_cast<size_t>(v - 1)] + w2.exps[static_cast<size_t>(v - 1)];
      long long mod = p.modulus(v);
      while (total >= mod) {
        size_t pos = 0;
        while (pos < letters.size() && letters[pos] != v) ++pos;
        steps.push_back(
            {ExchangeStep::Kind::TorsionReduce, v, 0, static_cast<int>(pos)});
        letters.erase(letters.begin() + static_cast<long>(pos),
                      letters.begin() + static_cast<long>(pos) + static_cast<long>(mod));
        total -= mod;
      }
    }
  }
  return steps;
}

std::vector<int> replay_schedule(const AbelianPresentation& p, std::vector<int> letters,
                                 const std::vector<ExchangeStep>& schedule) {
  for (const auto& s : schedule) {
    size_t pos = static_cast<size_t>(s.pos);
    if (s.kind == ExchangeStep::Kind::Swap) {
      if (pos + 1 >= letters.size() || letters[pos] != s.i || letters[pos + 1] != s.j)
        throw std::logic_error("schedule replay mismatch at swap");
      std::swap(letters[pos], letters[pos + 1]);
    } else {
      long long mod = p.modulus(s.i);
      for (long long k = 0; k < mod; ++k)
        if (pos + static_cast<size_t>(k) >= letters.size() ||
            letters[pos + static_cast<size_t>(k)] != s.i)
          throw std::logic_error("schedule replay mismatch at torsion reduction");
      letters.erase(letters.begin() + static_cast<long>(pos),
                    letters.begin() + static_cast<long>(pos) + static_cast<long>(mod));
    }
  }
  return letters;
}

// --- free products -------------------------------------------------------

FreeProductWord fp_normalize(const FreeProductRegistry& reg,
                             const std::vector<std::pair<int, Word>>& blocks) {
  FreeProductWord out;
  for (const auto& [fid, w] : blocks) {
    if (fid < 0 || fid >= static_cast<int>(reg.factors.size()))
      throw std::out_of_range("unknown free-product factor id");
    const auto& pres = reg.factors[static_cast<size_t>(fid)];
    if (static_cast<int>(w.exps.size()) != pres.generator_count())
      throw std::invalid_argument("block word does not match its factor presentation");
    Word cur = word_from_exponents(pres, w.exps);
    if (cur.is_identity()) continue;
    if (!out.blocks.empty() && out.blocks.back().first == fid) {
      Word merged = multiply(pres, out.blocks.back().second, cur);
      out.blocks.pop_back();
      if (!merged.is_identity()) {
        out.blocks.push_back({fid, std::move(merged)});
      } else if (!out.blocks.empty()) {
        // a cancellation can expose two same-factor neighbours; re-run on the
        // remaining prefix plus nothing new (cheap at desk scale)
        auto rest = out.blocks;
        out = fp_normalize(reg, rest);
      }
    } else {
      out.blocks.push_back({fid, std::move(cur)});
    }
  }
  return out;
}

FreeProductWord fp_multiply(const FreeProductRegistry& reg, const FreeProductWord& a,
                            const FreeProductWord& b) {
  auto blocks = a.blocks;
  blocks.insert(blocks.end(), b.blocks.begin(), b.blocks.end());
  return fp_normalize(reg, blocks);
}

long long fp_length(const FreeProductWord& w) {
  long long n = 0;
  for (const auto& [fid, word] : w.blocks) n += word_length(word);
  return n;
}

std::string word_to_string(const Word& w) {
  std::ostringstream os;
  os << "(";
  for (size_t k = 0; k < w.exps.size(); ++k) os << (k ? "," : "") << w.exps[k];
  os << ")";
  return os.str();
}

std::string fp_word_to_string(const FreeProductWord& w) {
  if (w.blocks.empty()) return "e";
  std::ostringstream os;
  for (const auto& [fid, word] : w.blocks) os << "[" << fid << ":" << word_to_string(word) << "]";
  return os.str();
}

}  // namespace tannakit
