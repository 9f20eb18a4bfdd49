#ifndef TANNAKIT_FIELD_HPP
#define TANNAKIT_FIELD_HPP

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tannakit {

using Int = boost::multiprecision::cpp_int;
using Q = boost::multiprecision::cpp_rational;

Q parse_q(const std::string& s);
std::string q_to_string(const Q& q);

/// Ordered variable list shared between polynomials of the same field.
using VarList = std::shared_ptr<const std::vector<std::string>>;

VarList make_vars(std::vector<std::string> names);

// Graded lexicographic order on exponent vectors.
bool grlex_less(const std::vector<int>& a, const std::vector<int>& b);

/// Sparse multivariate polynomial over Q.
///
/// Terms are kept sorted grlex-ascending with no zero coefficients, so two
/// equal polynomials have identical representations.
class MultiPoly {
public:
  MultiPoly() = default;
  explicit MultiPoly(VarList vars) : vars_(std::move(vars)) {}

  static MultiPoly zero(const VarList& vars);
  static MultiPoly constant(const VarList& vars, const Q& c);
  static MultiPoly variable(const VarList& vars, const std::string& name);
  static MultiPoly monomial(const VarList& vars, std::vector<int> exps, const Q& c);

  const VarList& vars() const { return vars_; }
  const std::vector<std::pair<std::vector<int>, Q>>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Throws if not constant.
  Q constant_value() const;

  int total_degree() const;
  int degree_in(int var_index) const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly pow(int e) const;
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly scaled(const Q& c) const;
  MultiPoly partial(int var_index) const;

  /// Exact division; returns std::nullopt when `d` does not divide exactly.
  std::optional<MultiPoly> divide_exact(const MultiPoly& d) const;

  /// Collect coefficients of powers of one variable: result[k] is the
  /// coefficient polynomial of v^k (with v's exponent zeroed out).
  std::vector<MultiPoly> coefficients_in(int var_index) const;

  /// Re-express this polynomial over a superset variable list.
  MultiPoly lifted(const VarList& bigger) const;

  std::string to_string() const;

  // Internal: set terms from an accumulation map, dropping zeros.
  void set_terms(std::vector<std::pair<std::vector<int>, Q>> terms);

private:
  void check_compatible(const MultiPoly& o) const;
  VarList vars_;
  std::vector<std::pair<std::vector<int>, Q>> terms_;
};

/// Rational function stored as an unreduced fraction of polynomials.
///
/// Equality is by cross-multiplication; after every arithmetic operation the
/// fraction is scaled so both parts have integer coefficients with content 1
/// and the denominator's grlex-leading coefficient is positive.
class RatFunc {
public:
  RatFunc() = default;
  RatFunc(MultiPoly num, MultiPoly den);

  static RatFunc zero(const VarList& vars);
  static RatFunc one(const VarList& vars);
  static RatFunc constant(const VarList& vars, const Q& c);
  static RatFunc variable(const VarList& vars, const std::string& name);
  static RatFunc from_poly(MultiPoly p);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const VarList& vars() const { return num_.vars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc inverse() const;
  RatFunc pow(int e) const;

  bool equals(const RatFunc& o) const;

  std::string to_string() const;

private:
  void normalize();
  MultiPoly num_, den_;
};

bool rf_equals(const RatFunc& f, const RatFunc& g);

/// Per-variable images of the derivation (e.g. dx = 1, dE = E, da = 0).
struct DerivationTable {
  std::map<std::string, RatFunc> images;
  const RatFunc& at(const std::string& v) const;
};

/// Substitution endomorphism given by per-variable images; variables absent
/// from the map are fixed.
struct SubstEndo {
  std::map<std::string, RatFunc> images;
  bool is_identity() const { return images.empty(); }
};

RatFunc rf_derive(const RatFunc& f, const DerivationTable& table);
RatFunc rf_substitute(const RatFunc& f, const SubstEndo& sigma);
MultiPoly poly_derive_num_check(const MultiPoly& p, const DerivationTable& table);

/// sigma followed by tau (tau applied second): (tau . sigma)(v) = tau(sigma(v)).
SubstEndo compose(const SubstEndo& tau, const SubstEndo& sigma, const VarList& vars);

/// The unique lambda with d(sigma(v)) = lambda * sigma(d(v)) for every
/// variable, or nullopt if no uniform lambda exists.
std::optional<RatFunc> commutation_factor(const SubstEndo& sigma, const DerivationTable& table,
                                          const VarList& vars);

/// Parse the small expression grammar: + - * / ^, parentheses, integers,
/// variables from `vars`.
RatFunc parse_ratfunc(const std::string& text, const VarList& vars);

}  // namespace tannakit

#endif
