#include "tannakit/coherence.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace tannakit {

void EvalCategory::validate() const {
  if (!vars) throw std::invalid_argument("category has no variable list");
  for (int d : object_dims)
    if (d < 0) throw std::invalid_argument("negative object dimension");
  for (const auto& f : morphisms) {
    if (f.src < 0 || f.src >= static_cast<int>(object_dims.size()) || f.dst < 0 ||
        f.dst >= static_cast<int>(object_dims.size()))
      throw std::invalid_argument("morphism endpoint out of range");
    if (f.m.rows() != object_dims[static_cast<size_t>(f.dst)] ||
        f.m.cols() != object_dims[static_cast<size_t>(f.src)])
      throw std::invalid_argument("morphism shape inconsistent with object dimensions");
  }
}

Mat BlockFunctor::apply(const Mat& m) const {
  return Mat::block_diag(Mat::identity(pad, m.vars()), m.substituted(twist));
}

Mat IsoRule::at(int inner_dim) const {
  const VarList& vars = head.vars();
  Mat inner = Mat::identity(inner_dim, vars).scaled(tail);
  return Mat::block_diag(head, inner);
}

bool IsoRule::invertible() const {
  if (tail.is_zero()) return false;
  if (head.rows() == 0) return true;
  return !determinant(head).is_zero();
}

IsoRule IsoRule::identity(int pad_dim, const VarList& vars) {
  return IsoRule{Mat::identity(pad_dim, vars), RatFunc::one(vars)};
}

IsoRule IsoRule::scalar(int pad_dim, const RatFunc& lambda) {
  return IsoRule{Mat::identity(pad_dim, lambda.vars()).scaled(lambda), lambda};
}

void ActionData::validate() const {
  pres.validate();
  cat.validate();
  int m = pres.generator_count();
  if (static_cast<int>(functors.size()) != m)
    throw std::invalid_argument("one functor per generator required");
  for (int i = 2; i <= m; ++i)
    for (int j = 1; j < i; ++j) {
      auto it = exchange.find({i, j});
      if (it == exchange.end()) throw std::invalid_argument("missing exchange iso");
      const IsoRule& rule = it->second;
      int p = functor(i).pad + functor(j).pad;
      if (rule.head.rows() != p || rule.head.cols() != p)
        throw std::invalid_argument("exchange iso head has wrong pad size");
      if (!rule.invertible()) throw std::invalid_argument("exchange iso not invertible");
    }
  if (static_cast<int>(torsion.size()) != static_cast<int>(pres.torsion_moduli.size()))
    throw std::invalid_argument("one torsion iso per torsion generator required");
  for (size_t j = 0; j < torsion.size(); ++j) {
    int gen = pres.free_rank + static_cast<int>(j) + 1;
    if (functor(gen).pad != 0)
      throw std::invalid_argument("torsion generator functors must have pad 0");
    if (torsion[j].head.rows() != 0 || torsion[j].head.cols() != 0)
      throw std::invalid_argument("torsion iso head must be empty");
    if (!torsion[j].invertible()) throw std::invalid_argument("torsion iso not invertible");
  }
}

const BlockFunctor& ActionData::functor(int gen) const {
  return functors[static_cast<size_t>(gen - 1)];
}

const IsoRule& ActionData::exch(int i, int j) const {
  auto it = exchange.find({i, j});
  if (it == exchange.end()) throw std::out_of_range("no exchange iso for this pair");
  return it->second;
}

const IsoRule& ActionData::torsion_rule(int gen) const {
  return torsion[static_cast<size_t>(gen - pres.free_rank - 1)];
}

int ActionData::pad_of_letters(const std::vector<int>& letters) const {
  int p = 0;
  for (int l : letters) p += functor(l).pad;
  return p;
}

int ActionData::pad_of_word(const Word& w) const { return pad_of_letters(word_letters(w)); }

SubstEndo ActionData::twist_of_letters(const std::vector<int>& letters) const {
  SubstEndo acc;  // identity
  for (int l : letters) acc = compose(acc, functor(l).twist, cat.vars);
  return acc;
}

namespace {

// id_{pad(prefix)} (+) sigma_prefix(base).
Mat left_whisker(const ActionData& d, const std::vector<int>& prefix, const Mat& base) {
  Mat twisted = base.substituted(d.twist_of_letters(prefix));
  return Mat::block_diag(Mat::identity(d.pad_of_letters(prefix), d.cat.vars), twisted);
}

// Component of the swap i_{letters[pos], letters[pos+1]} whiskered into the
// full string; swaps the letters in place.
Mat swap_component(const ActionData& d, std::vector<int>& letters, size_t pos, int inner_dim) {
  int i = letters[pos], j = letters[pos + 1];
  if (i <= j) throw std::logic_error("swap applied to non-inversion");
  std::vector<int> prefix(letters.begin(), letters.begin() + static_cast<long>(pos));
  std::vector<int> suffix(letters.begin() + static_cast<long>(pos) + 2, letters.end());
  Mat base = d.exch(i, j).at(inner_dim + d.pad_of_letters(suffix));
  std::swap(letters[pos], letters[pos + 1]);
  return left_whisker(d, prefix, base);
}

// Component of the torsion collapse of n_j copies of generator `gen` starting
// at pos; erases the copies in place.
Mat reduce_component(const ActionData& d, std::vector<int>& letters, size_t pos, int gen,
                     int inner_dim) {
  long long mod = d.pres.modulus(gen);
  std::vector<int> prefix(letters.begin(), letters.begin() + static_cast<long>(pos));
  std::vector<int> suffix(letters.begin() + static_cast<long>(pos) + static_cast<long>(mod),
                          letters.end());
  Mat base = d.torsion_rule(gen).at(inner_dim + d.pad_of_letters(suffix));
  letters.erase(letters.begin() + static_cast<long>(pos),
                letters.begin() + static_cast<long>(pos) + static_cast<long>(mod));
  return left_whisker(d, prefix, base);
}

Mat composite_component(const ActionData& d, const Word& w1, const Word& w2, int inner_dim) {
  std::vector<int> letters = word_letters(w1);
  std::vector<int> tail = word_letters(w2);
  letters.insert(letters.end(), tail.begin(), tail.end());
  Mat total = Mat::identity(inner_dim + d.pad_of_letters(letters), d.cat.vars);
  for (const ExchangeStep& s : exchange_schedule(d.pres, w1, w2)) {
    size_t pos = static_cast<size_t>(s.pos);
    Mat step = s.kind == ExchangeStep::Kind::Swap
                   ? swap_component(d, letters, pos, inner_dim)
                   : reduce_component(d, letters, pos, s.i, inner_dim);
    total = step * total;
  }
  return total;
}

std::string first_mismatch(const Mat& lhs, const Mat& rhs) {
  for (int r = 0; r < lhs.rows(); ++r)
    for (int c = 0; c < lhs.cols(); ++c)
      if (!lhs.at(r, c).equals(rhs.at(r, c))) {
        std::ostringstream os;
        os << "entry (" << r << "," << c << "): " << lhs.at(r, c).to_string()
           << " != " << rhs.at(r, c).to_string();
        return os.str();
      }
  return "shape mismatch";
}

}  // namespace

CoherenceReport check_hexagon(const ActionData& d) {
  CoherenceReport report;
  int m = d.pres.generator_count();
  for (int i1 = 1; i1 <= m; ++i1)
    for (int i2 = i1 + 1; i2 <= m; ++i2)
      for (int i3 = i2 + 1; i3 <= m; ++i3)
        for (size_t obj = 0; obj < d.cat.object_dims.size(); ++obj) {
          int d0 = d.cat.object_dims[obj];
          // both paths sort T_{i3} T_{i2} T_{i1} into T_{i1} T_{i2} T_{i3}
          std::vector<int> s1 = {i3, i2, i1};
          Mat p1 = swap_component(d, s1, 0, d0);
          p1 = swap_component(d, s1, 1, d0) * p1;
          p1 = swap_component(d, s1, 0, d0) * p1;
          std::vector<int> s2 = {i3, i2, i1};
          Mat p2 = swap_component(d, s2, 1, d0);
          p2 = swap_component(d, s2, 0, d0) * p2;
          p2 = swap_component(d, s2, 1, d0) * p2;
          if (!p1.equals(p2))
            report.push_back({"hexagon",
                              {i1, i2, i3},
                              static_cast<int>(obj),
                              first_mismatch(p1, p2)});
        }
  return report;
}

CoherenceReport check_torsion(const ActionData& d) {
  CoherenceReport report;
  for (size_t j = 0; j < d.torsion.size(); ++j) {
    int gen = d.pres.free_rank + static_cast<int>(j) + 1;
    long long mod = d.pres.modulus(gen);
    for (size_t obj = 0; obj < d.cat.object_dims.size(); ++obj) {
      int d0 = d.cat.object_dims[obj];
      // collapse the first n_j copies of T(a)^{n_j+1}, or the last n_j
      std::vector<int> s1(static_cast<size_t>(mod) + 1, gen);
      Mat p1 = reduce_component(d, s1, 0, gen, d0);
      std::vector<int> s2(static_cast<size_t>(mod) + 1, gen);
      Mat p2 = reduce_component(d, s2, 1, gen, d0);
      if (!p1.equals(p2))
        report.push_back(
            {"torsion", {gen}, static_cast<int>(obj), first_mismatch(p1, p2)});
    }
  }
  return report;
}

namespace {

// Naturality square of a rule from the string `src` to `dst` at a generating
// morphism.
bool natural_at(const ActionData& d, const std::vector<int>& src, const std::vector<int>& dst,
                const IsoRule& rule, const EvalMorphism& f) {
  auto apply_string = [&](const std::vector<int>& s, Mat m) {
    for (auto it = s.rbegin(); it != s.rend(); ++it) m = d.functor(*it).apply(m);
    return m;
  };
  int dx = d.cat.object_dims[static_cast<size_t>(f.src)];
  int dy = d.cat.object_dims[static_cast<size_t>(f.dst)];
  Mat lhs = rule.at(dy) * apply_string(src, f.m);
  Mat rhs = apply_string(dst, f.m) * rule.at(dx);
  return lhs.equals(rhs);
}

}  // namespace

CoherenceReport check_naturality(const ActionData& d) {
  CoherenceReport report;
  int m = d.pres.generator_count();
  for (size_t fi = 0; fi < d.cat.morphisms.size(); ++fi) {
    const auto& f = d.cat.morphisms[fi];
    for (int i = 2; i <= m; ++i)
      for (int j = 1; j < i; ++j)
        if (!natural_at(d, {i, j}, {j, i}, d.exch(i, j), f))
          report.push_back({"naturality", {i, j}, static_cast<int>(fi), "exchange iso"});
    for (size_t j = 0; j < d.torsion.size(); ++j) {
      int gen = d.pres.free_rank + static_cast<int>(j) + 1;
      std::vector<int> src(static_cast<size_t>(d.pres.modulus(gen)), gen);
      if (!natural_at(d, src, {}, d.torsion[j], f))
        report.push_back({"naturality", {gen}, static_cast<int>(fi), "torsion iso"});
    }
  }
  return report;
}

const Mat& ActionContext::component(const Word& w1, const Word& w2, int inner_dim) {
  auto key = std::make_tuple(w1.exps, w2.exps, inner_dim);
  auto it = cache_.find(key);
  if (it == cache_.end())
    it = cache_.emplace(std::move(key), composite_component(data_, w1, w2, inner_dim)).first;
  return it->second;
}

NatIso extend_iso(const ActionData& d, const Word& w1, const Word& w2) {
  NatIso iso;
  iso.src_letters = word_letters(w1);
  auto tail = word_letters(w2);
  iso.src_letters.insert(iso.src_letters.end(), tail.begin(), tail.end());
  iso.dst_letters = word_letters(multiply(d.pres, w1, w2));
  for (int d0 : d.cat.object_dims) iso.components.push_back(composite_component(d, w1, w2, d0));
  return iso;
}

CoherenceReport verify_associativity(const ActionData& d, long long max_len) {
  CoherenceReport report;
  ActionContext ctx(d);
  std::vector<Word> words = words_up_to_length(d.pres, max_len);
  for (const Word& f : words)
    for (const Word& g : words)
      for (const Word& h : words) {
        Word fg = multiply(d.pres, f, g);
        Word gh = multiply(d.pres, g, h);
        int pad_h = d.pad_of_word(h);
        SubstEndo sig_f = d.twist_of_letters(word_letters(f));
        int pad_f = d.pad_of_word(f);
        for (size_t obj = 0; obj < d.cat.object_dims.size(); ++obj) {
          int d0 = d.cat.object_dims[obj];
          Mat lhs = ctx.component(fg, h, d0) * ctx.component(f, g, d0 + pad_h);
          Mat inner = ctx.component(g, h, d0).substituted(sig_f);
          Mat rhs = ctx.component(f, gh, d0) *
                    Mat::block_diag(Mat::identity(pad_f, d.cat.vars), inner);
          if (!lhs.equals(rhs)) {
            std::vector<long long> datum;
            for (auto* w : {&f, &g, &h})
              datum.insert(datum.end(), w->exps.begin(), w->exps.end());
            report.push_back(
                {"assoc", datum, static_cast<int>(obj), first_mismatch(lhs, rhs)});
          }
        }
      }
  return report;
}

namespace {

// Horizontal composite (m_a * m_b) at inner dimension d, where m_a : T_a -> T'_a
// is applied after the a-twisted m_b.
Mat horizontal(const ActionData& t, int gen_a, const IsoRule& ma, int pad_b, const IsoRule& mb,
               int inner_dim) {
  const BlockFunctor& fa = t.functor(gen_a);
  Mat right = fa.apply(mb.at(inner_dim));
  Mat left = ma.at(pad_b + inner_dim);
  return left * right;
}

}  // namespace

CoherenceReport check_action_morphism(const ActionData& t, const ActionData& tp,
                                      const MorphismData& m) {
  CoherenceReport report;
  if (!(t.pres == tp.pres)) throw std::invalid_argument("presentation mismatch");
  int gens = t.pres.generator_count();
  if (static_cast<int>(m.components.size()) != gens)
    throw std::invalid_argument("one morphism component per generator required");
  for (int g = 1; g <= gens; ++g) {
    if (t.functor(g).pad != tp.functor(g).pad)
      throw std::invalid_argument("source/target functors must share pad dimensions");
    if (!m.components[static_cast<size_t>(g - 1)].invertible())
      report.push_back({"morphism-invertible", {g}, -1, "component not invertible"});
  }
  // naturality of each m_g
  for (size_t fi = 0; fi < t.cat.morphisms.size(); ++fi) {
    const auto& f = t.cat.morphisms[fi];
    for (int g = 1; g <= gens; ++g) {
      const IsoRule& mg = m.components[static_cast<size_t>(g - 1)];
      int dx = t.cat.object_dims[static_cast<size_t>(f.src)];
      int dy = t.cat.object_dims[static_cast<size_t>(f.dst)];
      Mat lhs = mg.at(dy) * t.functor(g).apply(f.m);
      Mat rhs = tp.functor(g).apply(f.m) * mg.at(dx);
      if (!lhs.equals(rhs))
        report.push_back({"morphism-naturality", {g}, static_cast<int>(fi), ""});
    }
  }
  // diag:comm2 — exchange compatibility
  for (int i = 2; i <= gens; ++i)
    for (int j = 1; j < i; ++j) {
      const IsoRule& mi = m.components[static_cast<size_t>(i - 1)];
      const IsoRule& mj = m.components[static_cast<size_t>(j - 1)];
      for (size_t obj = 0; obj < t.cat.object_dims.size(); ++obj) {
        int d0 = t.cat.object_dims[obj];
        Mat lhs = horizontal(t, j, mj, t.functor(i).pad, mi, d0) * t.exch(i, j).at(d0);
        Mat rhs = tp.exch(i, j).at(d0) * horizontal(t, i, mi, t.functor(j).pad, mj, d0);
        if (!lhs.equals(rhs))
          report.push_back(
              {"morphism-exchange", {i, j}, static_cast<int>(obj), first_mismatch(lhs, rhs)});
      }
    }
  // diag:commfin — torsion compatibility
  for (size_t j = 0; j < t.torsion.size(); ++j) {
    int gen = t.pres.free_rank + static_cast<int>(j) + 1;
    long long mod = t.pres.modulus(gen);
    const IsoRule& mg = m.components[static_cast<size_t>(gen - 1)];
    for (size_t obj = 0; obj < t.cat.object_dims.size(); ++obj) {
      int d0 = t.cat.object_dims[obj];
      Mat h = mg.at(d0);
      for (long long k = 1; k < mod; ++k) h = mg.at(d0) * t.functor(gen).apply(h);
      Mat lhs = tp.torsion[j].at(d0) * h;
      Mat rhs = t.torsion[j].at(d0);
      if (!lhs.equals(rhs))
        report.push_back(
            {"morphism-torsion", {gen}, static_cast<int>(obj), first_mismatch(lhs, rhs)});
    }
  }
  return report;
}

// --- free products -------------------------------------------------------

FreeProductAction combine_free_product(const ActionData& a, const ActionData& b) {
  if (a.cat.vars != b.cat.vars || a.cat.object_dims != b.cat.object_dims)
    throw std::invalid_argument("free product requires a shared evaluation category");
  FreeProductAction act;
  act.reg.factors = {a.pres, b.pres};
  act.factors = {a, b};
  return act;
}

const ActionData& restrict_factor(const FreeProductAction& act, int fid) {
  return act.factors.at(static_cast<size_t>(fid));
}

FreeProductContext::FreeProductContext(const FreeProductAction& act) : act_(act) {
  for (const auto& f : act.factors) factor_ctx_.emplace_back(f);
}

int FreeProductContext::pad_of(const FreeProductWord& w) const {
  int p = 0;
  for (const auto& [fid, word] : w.blocks)
    p += act_.factors[static_cast<size_t>(fid)].pad_of_word(word);
  return p;
}

SubstEndo FreeProductContext::twist_of(const FreeProductWord& w) const {
  SubstEndo acc;
  const VarList& vars = act_.factors.front().cat.vars;
  for (const auto& [fid, word] : w.blocks) {
    const ActionData& f = act_.factors[static_cast<size_t>(fid)];
    acc = compose(acc, f.twist_of_letters(word_letters(word)), vars);
  }
  return acc;
}

Mat FreeProductContext::component(const FreeProductWord& f, const FreeProductWord& g,
                                  int inner_dim) {
  const VarList& vars = act_.factors.front().cat.vars;
  int dim = inner_dim + pad_of(f) + pad_of(g);
  if (f.blocks.empty() || g.blocks.empty()) return Mat::identity(dim, vars);
  auto [tf, u] = f.blocks.back();
  auto [tg, v] = g.blocks.front();
  if (tf != tg) return Mat::identity(dim, vars);  // eq:case1

  const ActionData& fac = act_.factors[static_cast<size_t>(tf)];
  FreeProductWord fpre{std::vector<std::pair<int, Word>>(f.blocks.begin(), f.blocks.end() - 1)};
  FreeProductWord grest{std::vector<std::pair<int, Word>>(g.blocks.begin() + 1, g.blocks.end())};
  // eq:case2 — whisker the inner factor's composite iso
  Mat base = factor_ctx_[static_cast<size_t>(tf)].component(u, v, inner_dim + pad_of(grest));
  Mat step = Mat::block_diag(Mat::identity(pad_of(fpre), vars), base.substituted(twist_of(fpre)));
  Word uv = multiply(fac.pres, u, v);
  if (!uv.is_identity()) return step;
  // merged block cancelled; the exposed neighbours may merge in turn
  return component(fpre, grest, inner_dim) * step;
}

std::vector<FreeProductWord> fp_words_up_to_length(const FreeProductRegistry& reg,
                                                   long long max_len) {
  std::vector<FreeProductWord> out;
  std::vector<std::pair<int, Word>> cur;
  std::function<void(long long)> rec = [&](long long remaining) {
    out.push_back(FreeProductWord{cur});
    for (int fid = 0; fid < static_cast<int>(reg.factors.size()); ++fid) {
      if (!cur.empty() && cur.back().first == fid) continue;
      for (const Word& w : words_up_to_length(reg.factors[static_cast<size_t>(fid)], remaining)) {
        if (w.is_identity()) continue;
        cur.push_back({fid, w});
        rec(remaining - word_length(w));
        cur.pop_back();
      }
    }
  };
  rec(max_len);
  std::sort(out.begin(), out.end());
  return out;
}

CoherenceReport verify_fp_associativity(const FreeProductAction& act, long long max_total_len) {
  CoherenceReport report;
  FreeProductContext ctx(act);
  const auto& cat = act.factors.front().cat;
  std::vector<FreeProductWord> words = fp_words_up_to_length(act.reg, max_total_len);
  for (const auto& f : words)
    for (const auto& g : words) {
      if (fp_length(f) + fp_length(g) > max_total_len) continue;
      FreeProductWord fg = fp_multiply(act.reg, f, g);
      for (const auto& h : words) {
        if (fp_length(f) + fp_length(g) + fp_length(h) > max_total_len) continue;
        FreeProductWord gh = fp_multiply(act.reg, g, h);
        int pad_h = ctx.pad_of(h);
        int pad_f = ctx.pad_of(f);
        SubstEndo sig_f = ctx.twist_of(f);
        for (size_t obj = 0; obj < cat.object_dims.size(); ++obj) {
          int d0 = cat.object_dims[obj];
          Mat lhs = ctx.component(fg, h, d0) * ctx.component(f, g, d0 + pad_h);
          Mat inner = ctx.component(g, h, d0).substituted(sig_f);
          Mat rhs = ctx.component(f, gh, d0) *
                    Mat::block_diag(Mat::identity(pad_f, cat.vars), inner);
          if (!lhs.equals(rhs))
            report.push_back({"fp-assoc",
                              {fp_length(f), fp_length(g), fp_length(h)},
                              static_cast<int>(obj),
                              fp_word_to_string(f) + " " + fp_word_to_string(g) + " " +
                                  fp_word_to_string(h)});
        }
      }
    }
  return report;
}

}  // namespace tannakit
