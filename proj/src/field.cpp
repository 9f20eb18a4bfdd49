#include "tannakit/field.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace tannakit {

Q parse_q(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Q(Int(s));
  Int n(s.substr(0, slash)), d(s.substr(slash + 1));
  if (d == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return Q(n, d);
}

std::string q_to_string(const Q& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

VarList make_vars(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool grlex_less(const std::vector<int>& a, const std::vector<int>& b) {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly MultiPoly::zero(const VarList& vars) { return MultiPoly(vars); }

MultiPoly MultiPoly::constant(const VarList& vars, const Q& c) {
  MultiPoly p(vars);
  if (c != 0) p.terms_.push_back({std::vector<int>(vars->size(), 0), c});
  return p;
}

MultiPoly MultiPoly::variable(const VarList& vars, const std::string& name) {
  auto it = std::find(vars->begin(), vars->end(), name);
  if (it == vars->end()) throw std::invalid_argument("unknown variable: " + name);
  std::vector<int> e(vars->size(), 0);
  e[static_cast<size_t>(it - vars->begin())] = 1;
  return monomial(vars, std::move(e), Q(1));
}

MultiPoly MultiPoly::monomial(const VarList& vars, std::vector<int> exps, const Q& c) {
  MultiPoly p(vars);
  if (exps.size() != vars->size()) throw std::invalid_argument("exponent vector length mismatch");
  if (c != 0) p.terms_.push_back({std::move(exps), c});
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(terms_[0].first.begin(), terms_[0].first.end(), [](int e) { return e == 0; }));
}

Q MultiPoly::constant_value() const {
  if (terms_.empty()) return Q(0);
  if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
  return terms_[0].second;
}

int MultiPoly::total_degree() const {
  int d = 0;
  for (auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

int MultiPoly::degree_in(int var_index) const {
  int d = 0;
  for (auto& [e, c] : terms_) d = std::max(d, e[static_cast<size_t>(var_index)]);
  return d;
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (vars_ == o.vars_) return;
  if (!vars_ || !o.vars_ || *vars_ != *o.vars_)
    throw std::invalid_argument("polynomial variable lists differ");
}

void MultiPoly::set_terms(std::vector<std::pair<std::vector<int>, Q>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return grlex_less(a.first, b.first); });
  terms_.clear();
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().first == t.first)
      terms_.back().second += t.second;
    else
      terms_.push_back(std::move(t));
    if (!terms_.empty() && terms_.back().second == 0) terms_.pop_back();
  }
  // a merge may have zeroed an interior coefficient
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                              [](const auto& t) { return t.second == 0; }),
               terms_.end());
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r(vars_);
  auto t = terms_;
  t.insert(t.end(), o.terms_.begin(), o.terms_.end());
  r.set_terms(std::move(t));
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(vars_);
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r(vars_);
  if (terms_.empty() || o.terms_.empty()) return r;
  if (terms_.size() == 1 && o.terms_.size() == 1) {
    std::vector<int> e = terms_[0].first;
    for (size_t k = 0; k < e.size(); ++k) e[k] += o.terms_[0].first[k];
    Q c = terms_[0].second * o.terms_[0].second;
    if (c != 0) r.terms_.push_back({std::move(e), std::move(c)});
    return r;
  }
  std::vector<std::pair<std::vector<int>, Q>> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (auto& [ea, ca] : terms_)
    for (auto& [eb, cb] : o.terms_) {
      std::vector<int> e = ea;
      for (size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
      acc.push_back({std::move(e), ca * cb});
    }
  r.set_terms(std::move(acc));
  return r;
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  MultiPoly r = constant(vars_, Q(1));
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  check_compatible(o);
  return terms_ == o.terms_;
}

MultiPoly MultiPoly::scaled(const Q& c) const {
  MultiPoly r(vars_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

MultiPoly MultiPoly::partial(int var_index) const {
  MultiPoly r(vars_);
  std::vector<std::pair<std::vector<int>, Q>> acc;
  for (auto& [e, c] : terms_) {
    int k = e[static_cast<size_t>(var_index)];
    if (k == 0) continue;
    std::vector<int> e2 = e;
    e2[static_cast<size_t>(var_index)] = k - 1;
    acc.push_back({std::move(e2), c * k});
  }
  r.set_terms(std::move(acc));
  return r;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& d) const {
  check_compatible(d);
  if (d.is_zero()) return std::nullopt;
  MultiPoly q(vars_);
  MultiPoly rem = *this;
  const auto& dlt = d.terms_.back();  // grlex-leading term
  std::vector<std::pair<std::vector<int>, Q>> qterms;
  while (!rem.is_zero()) {
    const auto& rlt = rem.terms_.back();
    std::vector<int> e(rlt.first.size());
    for (size_t k = 0; k < e.size(); ++k) {
      e[k] = rlt.first[k] - dlt.first[k];
      if (e[k] < 0) return std::nullopt;
    }
    Q c = rlt.second / dlt.second;
    MultiPoly t = monomial(vars_, e, c);
    qterms.push_back({std::move(e), std::move(c)});
    rem = rem - t * d;
  }
  q.set_terms(std::move(qterms));
  return q;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(int var_index) const {
  int d = degree_in(var_index);
  std::vector<std::vector<std::pair<std::vector<int>, Q>>> buckets(static_cast<size_t>(d) + 1);
  for (auto& [e, c] : terms_) {
    std::vector<int> e2 = e;
    int k = e2[static_cast<size_t>(var_index)];
    e2[static_cast<size_t>(var_index)] = 0;
    buckets[static_cast<size_t>(k)].push_back({std::move(e2), c});
  }
  std::vector<MultiPoly> out;
  for (auto& b : buckets) {
    MultiPoly p(vars_);
    p.set_terms(std::move(b));
    out.push_back(std::move(p));
  }
  return out;
}

MultiPoly MultiPoly::lifted(const VarList& bigger) const {
  std::vector<size_t> where(vars_->size());
  for (size_t i = 0; i < vars_->size(); ++i) {
    auto it = std::find(bigger->begin(), bigger->end(), (*vars_)[i]);
    if (it == bigger->end()) throw std::invalid_argument("lifted: missing variable " + (*vars_)[i]);
    where[i] = static_cast<size_t>(it - bigger->begin());
  }
  MultiPoly r(bigger);
  std::vector<std::pair<std::vector<int>, Q>> acc;
  for (auto& [e, c] : terms_) {
    std::vector<int> e2(bigger->size(), 0);
    for (size_t i = 0; i < e.size(); ++i) e2[where[i]] = e[i];
    acc.push_back({std::move(e2), c});
  }
  r.set_terms(std::move(acc));
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // print leading term first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Q& c = it->second;
    Q ac = c < 0 ? Q(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool has_var = std::any_of(it->first.begin(), it->first.end(), [](int e) { return e > 0; });
    if (ac != 1 || !has_var) os << q_to_string(ac);
    bool star = (ac != 1);
    for (size_t k = 0; k < it->first.size(); ++k) {
      int e = it->first[k];
      if (e == 0) continue;
      if (star) os << "*";
      os << (*vars_)[k];
      if (e > 1) os << "^" << e;
      star = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("rational function with zero denominator");
  normalize();
}

RatFunc RatFunc::zero(const VarList& vars) {
  return RatFunc(MultiPoly::zero(vars), MultiPoly::constant(vars, Q(1)));
}
RatFunc RatFunc::one(const VarList& vars) { return constant(vars, Q(1)); }
RatFunc RatFunc::constant(const VarList& vars, const Q& c) {
  return RatFunc(MultiPoly::constant(vars, c), MultiPoly::constant(vars, Q(1)));
}
RatFunc RatFunc::variable(const VarList& vars, const std::string& name) {
  return RatFunc(MultiPoly::variable(vars, name), MultiPoly::constant(vars, Q(1)));
}
RatFunc RatFunc::from_poly(MultiPoly p) {
  MultiPoly one = MultiPoly::constant(p.vars(), Q(1));
  return RatFunc(std::move(p), std::move(one));
}

bool RatFunc::is_one() const { return num_ == den_; }

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(den_.vars(), Q(1));
    return;
  }
  // fast path: both already integer-content-1 constants are rare enough not to matter
  Int lcm_den = 1;
  for (auto& [e, c] : num_.terms()) lcm_den = lcm(lcm_den, Int(denominator(c)));
  for (auto& [e, c] : den_.terms()) lcm_den = lcm(lcm_den, Int(denominator(c)));
  Int g = 0;
  auto fold = [&](const MultiPoly& p) {
    for (auto& [e, c] : p.terms()) g = gcd(g, Int(numerator(c) * (lcm_den / denominator(c))));
  };
  fold(num_);
  fold(den_);
  Q scale(lcm_den, g);
  if (den_.terms().back().second < 0) scale = -scale;
  if (scale != 1) {
    num_ = num_.scaled(scale);
    den_ = den_.scaled(scale);
  }
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero()) return *this;
  if (o.is_zero()) return o;
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r = one(vars());
  RatFunc base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool RatFunc::equals(const RatFunc& o) const { return num_ * o.den_ == o.num_ * den_; }

bool rf_equals(const RatFunc& f, const RatFunc& g) { return f.equals(g); }

std::string RatFunc::to_string() const {
  if (den_.is_constant() && den_.constant_value() == 1) return num_.to_string();
  std::string n = num_.to_string(), d = den_.to_string();
  if (num_.terms().size() > 1) n = "(" + n + ")";
  if (den_.terms().size() > 1) d = "(" + d + ")";
  return n + " / " + d;
}

// ---------------------------------------------------------------------------

const RatFunc& DerivationTable::at(const std::string& v) const {
  auto it = images.find(v);
  if (it == images.end()) throw std::invalid_argument("derivation table missing variable " + v);
  return it->second;
}

static RatFunc poly_derive(const MultiPoly& p, const DerivationTable& table) {
  RatFunc acc = RatFunc::zero(p.vars());
  for (size_t v = 0; v < p.vars()->size(); ++v) {
    const RatFunc& dv = table.at((*p.vars())[v]);
    if (dv.is_zero()) continue;
    MultiPoly pv = p.partial(static_cast<int>(v));
    if (pv.is_zero()) continue;
    acc = acc + RatFunc::from_poly(pv) * dv;
  }
  return acc;
}

RatFunc rf_derive(const RatFunc& f, const DerivationTable& table) {
  RatFunc dp = poly_derive(f.num(), table);
  RatFunc dq = poly_derive(f.den(), table);
  RatFunc q = RatFunc::from_poly(f.den());
  RatFunc p = RatFunc::from_poly(f.num());
  return (dp * q - p * dq) / (q * q);
}

static RatFunc poly_substitute(const MultiPoly& p, const SubstEndo& sigma) {
  const VarList& vars = p.vars();
  std::vector<const RatFunc*> images(vars->size(), nullptr);
  std::vector<RatFunc> id_cache;
  id_cache.reserve(vars->size());
  for (size_t v = 0; v < vars->size(); ++v) {
    auto it = sigma.images.find((*vars)[v]);
    if (it != sigma.images.end()) {
      images[v] = &it->second;
    } else {
      id_cache.push_back(RatFunc::variable(vars, (*vars)[v]));
      images[v] = nullptr;  // patched below, after id_cache stops reallocating
    }
  }
  size_t idc = 0;
  for (size_t v = 0; v < vars->size(); ++v)
    if (!images[v]) images[v] = &id_cache[idc++];

  RatFunc acc = RatFunc::zero(vars);
  for (auto& [e, c] : p.terms()) {
    RatFunc term = RatFunc::constant(vars, c);
    for (size_t v = 0; v < e.size(); ++v)
      if (e[v] != 0) term = term * images[v]->pow(e[v]);
    acc = acc + term;
  }
  return acc;
}

RatFunc rf_substitute(const RatFunc& f, const SubstEndo& sigma) {
  if (sigma.is_identity()) return f;
  RatFunc n = poly_substitute(f.num(), sigma);
  RatFunc d = poly_substitute(f.den(), sigma);
  if (d.is_zero()) throw std::domain_error("substitution maps denominator to zero");
  return n / d;
}

SubstEndo compose(const SubstEndo& tau, const SubstEndo& sigma, const VarList& vars) {
  SubstEndo out;
  for (auto& name : *vars) {
    auto it = sigma.images.find(name);
    RatFunc image =
        it != sigma.images.end() ? rf_substitute(it->second, tau)
                                 : (tau.images.count(name) ? tau.images.at(name)
                                                           : RatFunc::variable(vars, name));
    // drop trivial entries to keep is_identity meaningful
    if (!image.equals(RatFunc::variable(vars, name))) out.images[name] = std::move(image);
  }
  return out;
}

std::optional<RatFunc> commutation_factor(const SubstEndo& sigma, const DerivationTable& table,
                                          const VarList& vars) {
  std::optional<RatFunc> lambda;
  for (auto& name : *vars) {
    RatFunc sv = sigma.images.count(name) ? sigma.images.at(name) : RatFunc::variable(vars, name);
    RatFunc lhs = rf_derive(sv, table);
    RatFunc rhs = rf_substitute(table.at(name), sigma);
    if (rhs.is_zero()) {
      if (!lhs.is_zero()) return std::nullopt;
      continue;
    }
    RatFunc cand = lhs / rhs;
    if (!lambda)
      lambda = cand;
    else if (!lambda->equals(cand))
      return std::nullopt;
  }
  if (!lambda) lambda = RatFunc::one(vars);
  return lambda;
}

// ---------------------------------------------------------------------------
// Expression parser: expr := term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
// factor := ('-')* base ('^' int)?; base := integer | variable | '(' expr ')'

namespace {
struct Parser {
  const std::string& s;
  const VarList& vars;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }

  RatFunc expr() {
    RatFunc r = term();
    for (;;) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }
  RatFunc term() {
    RatFunc r = factor();
    for (;;) {
      if (eat('*'))
        r = r * factor();
      else if (eat('/'))
        r = r / factor();
      else
        return r;
    }
  }
  RatFunc factor() {
    if (eat('-')) return -factor();
    RatFunc b = base();
    if (eat('^')) {
      bool neg = eat('-');
      std::string digits = read_digits();
      if (digits.empty()) throw std::invalid_argument("expected exponent in expression");
      int e = std::stoi(digits);
      b = b.pow(neg ? -e : e);
    }
    return b;
  }
  std::string read_digits() {
    skip();
    std::string d;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) d += s[pos++];
    return d;
  }
  RatFunc base() {
    skip();
    if (pos >= s.size()) throw std::invalid_argument("unexpected end of expression");
    if (eat('(')) {
      RatFunc r = expr();
      if (!eat(')')) throw std::invalid_argument("expected ')' in expression");
      return r;
    }
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits = read_digits();
      return RatFunc::constant(vars, Q(Int(digits)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        name += s[pos++];
      return RatFunc::variable(vars, name);
    }
    throw std::invalid_argument(std::string("unexpected character '") + c + "' in expression");
  }
};
}  // namespace

RatFunc parse_ratfunc(const std::string& text, const VarList& vars) {
  Parser p{text, vars};
  RatFunc r = p.expr();
  p.skip();
  if (p.pos != text.size()) throw std::invalid_argument("trailing input in expression: " + text);
  return r;
}

}  // namespace tannakit
