// tannakit: batch front end over the library modules.  Subcommands load JSON
// inputs, run checks, and emit either human-readable lines or a JSON report
// ({"schema": 1, ...}).  Exit codes: 0 all checks pass, 1 a check failed or
// nothing was found, 2 malformed input (diagnostic mentions "parse").
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tannakit/coherence.hpp"
#include "tannakit/diffmod.hpp"
#include "tannakit/hopf.hpp"
#include "tannakit/semigroup.hpp"

using nlohmann::json;
using namespace tannakit;

namespace {

struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseFailure("cannot parse " + what + ": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseFailure("cannot parse input: unable to open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_json_text(ss.str(), path);
}

RatFunc rf_from_json(const json& j, const VarList& vars) {
  if (!j.is_string()) throw ParseFailure("cannot parse rational function: expected a string");
  try {
    return parse_ratfunc(j.get<std::string>(), vars);
  } catch (const std::exception& e) {
    throw ParseFailure("cannot parse rational function '" + j.get<std::string>() +
                       "': " + e.what());
  }
}

VarList vars_from_json(const json& j) {
  if (!j.is_array()) throw ParseFailure("cannot parse variable list");
  return make_vars(j.get<std::vector<std::string>>());
}

AbelianPresentation pres_from_json(const json& j) {
  if (!j.is_object() || !j.contains("free") || !j.contains("torsion"))
    throw ParseFailure("cannot parse presentation: need {\"free\": n, \"torsion\": [...]}");
  AbelianPresentation p;
  p.free_rank = j.at("free").get<int>();
  p.torsion_moduli = j.at("torsion").get<std::vector<int>>();
  try {
    p.validate();
  } catch (const std::exception& e) {
    throw ParseFailure(std::string("cannot parse presentation: ") + e.what());
  }
  return p;
}

Mat mat_from_json(const json& j, const VarList& vars) {
  if (!j.is_array()) throw ParseFailure("cannot parse matrix: expected nested arrays");
  int rows = static_cast<int>(j.size());
  int cols = rows == 0 ? 0 : static_cast<int>(j.at(0).size());
  Mat m(rows, cols, vars);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j.at(static_cast<size_t>(i)).size()) != cols)
      throw ParseFailure("cannot parse matrix: ragged rows");
    for (int c = 0; c < cols; ++c)
      m.at(i, c) = rf_from_json(j.at(static_cast<size_t>(i)).at(static_cast<size_t>(c)), vars);
  }
  return m;
}

json mat_to_json(const Mat& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
    out.push_back(std::move(row));
  }
  return out;
}

SubstEndo endo_from_json(const json& j, const VarList& vars) {
  SubstEndo s;
  if (j.is_null()) return s;
  if (!j.is_object()) throw ParseFailure("cannot parse endomorphism: expected {var: image}");
  for (auto it = j.begin(); it != j.end(); ++it) s.images[it.key()] = rf_from_json(*it, vars);
  return s;
}

IsoRule iso_from_json(const json& j, const VarList& vars) {
  if (!j.is_object() || !j.contains("head") || !j.contains("tail"))
    throw ParseFailure("cannot parse iso rule: need {\"head\": [[...]], \"tail\": \"...\"}");
  return IsoRule{mat_from_json(j.at("head"), vars), rf_from_json(j.at("tail"), vars)};
}

ActionData action_from_json(const json& j) {
  if (!j.is_object()) throw ParseFailure("cannot parse action data: expected an object");
  ActionData d;
  d.pres = pres_from_json(j.at("presentation"));
  VarList vars = vars_from_json(j.value("vars", json::array({"t"})));
  d.cat.vars = vars;
  const json& cat = j.at("category");
  d.cat.object_dims = cat.at("dims").get<std::vector<int>>();
  for (const json& m : cat.value("morphisms", json::array())) {
    EvalMorphism em;
    em.src = m.at("src").get<int>();
    em.dst = m.at("dst").get<int>();
    em.m = mat_from_json(m.at("matrix"), vars);
    d.cat.morphisms.push_back(std::move(em));
  }
  for (const json& f : j.at("functors")) {
    BlockFunctor bf;
    bf.pad = f.value("pad", 0);
    bf.twist = endo_from_json(f.value("twist", json()), vars);
    d.functors.push_back(std::move(bf));
  }
  json ex = j.value("exchange", json::object());
  for (const auto& [key, val] : ex.items()) {
    int a = 0, b = 0;
    if (std::sscanf(key.c_str(), "(%d,%d)", &a, &b) != 2)
      throw ParseFailure("cannot parse exchange key '" + key + "': expected \"(i,j)\"");
    d.exchange[{a, b}] = iso_from_json(val, vars);
  }
  for (const json& t : j.value("torsion", json::array()))
    d.torsion.push_back(iso_from_json(t, vars));
  try {
    d.validate();
  } catch (const std::exception& e) {
    throw ParseFailure(std::string("cannot parse action data: ") + e.what());
  }
  return d;
}

DiffField field_from_json(const json& j) {
  if (!j.is_object()) throw ParseFailure("cannot parse field: expected an object");
  DiffField k;
  k.vars = vars_from_json(j.at("vars"));
  const json& der = j.at("der");
  for (auto it = der.begin(); it != der.end(); ++it)
    k.der.images[it.key()] = rf_from_json(*it, k.vars);
  json en = j.value("endos", json::object());
  for (const auto& [name, val] : en.items()) {
    try {
      k.register_endo(name, endo_from_json(val, k.vars));
    } catch (const std::exception& e) {
      throw ParseFailure("cannot parse endomorphism '" + name + "': " + e.what());
    }
  }
  return k;
}

std::pair<DiffField, DiffModule> module_from_json(const json& j) {
  DiffField k = field_from_json(j.at("field"));
  Mat a = mat_from_json(j.at("matrix"), k.vars);
  if (j.contains("dim") && j.at("dim").get<int>() != a.rows())
    throw ParseFailure("cannot parse module: dim does not match the matrix");
  DiffModule m = make_module(k, std::move(a));
  return {std::move(k), std::move(m)};
}

json failure_to_json(const CoherenceFailure& f) {
  return json{{"kind", f.kind}, {"data", f.data}, {"object", f.object}, {"detail", f.detail}};
}

// --- report accumulation ----------------------------------------------------

struct Report {
  json checks = json::array();
  json extra = json::object();
  bool any_fail = false;

  void add(const std::string& name, const std::string& status, json witness = json()) {
    json c{{"name", name}, {"status", status}};
    if (!witness.is_null()) c["witness"] = std::move(witness);
    if (status != "pass") any_fail = true;
    checks.push_back(std::move(c));
  }
  void add_bool(const std::string& name, bool ok, json witness = json()) {
    add(name, ok ? "pass" : "fail", ok ? json() : std::move(witness));
  }
};

bool g_json = false;

int emit(const std::string& command, const Report& r,
         std::chrono::steady_clock::time_point start) {
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  if (g_json) {
    json out{{"schema", 1},
             {"command", command},
             {"status", r.any_fail ? "fail" : "pass"},
             {"checks", r.checks},
             {"wall_ms", ms}};
    if (!r.extra.empty()) out["result"] = r.extra;
    std::cout << out.dump(2) << "\n";
  } else {
    for (const json& c : r.checks) {
      std::cout << c.at("name").get<std::string>() << ": "
                << c.at("status").get<std::string>() << "\n";
      if (c.contains("witness")) std::cout << "  witness: " << c.at("witness").dump() << "\n";
    }
    if (!r.extra.empty()) std::cout << r.extra.dump(2) << "\n";
  }
  return r.any_fail ? 1 : 0;
}

// --- fixtures ---------------------------------------------------------------

// Runs one named paper fixture; `expected[check] = status` is filled for the
// meta-suite.  Returns the raw report.
Report run_fixture(const std::string& name, const std::string& fixtures_dir) {
  Report r;
  std::string base = fixtures_dir + "/paper/";
  if (name == "counterexample") {
    ActionData d = action_from_json(read_json_file(base + "counterexample.json"));
    auto hex = check_hexagon(d);
    auto ass = verify_associativity(d, 1);
    r.add_bool("hexagon", hex.empty(), hex.empty() ? json() : failure_to_json(hex[0]));
    r.add_bool("associativity(1)", ass.empty(), ass.empty() ? json() : failure_to_json(ass[0]));
  } else if (name == "torsion") {
    json j = read_json_file(base + "torsion.json");
    ActionData d = action_from_json(j.at("action"));
    for (const json& entry : j.at("b_values")) {
      d.torsion[0].tail = rf_from_json(entry.at("b"), d.cat.vars);
      auto rep = check_torsion(d);
      r.add_bool("torsion b=" + entry.at("b").get<std::string>(), rep.empty(),
                 rep.empty() ? json() : failure_to_json(rep[0]));
    }
  } else if (name == "contiguity") {
    json j = read_json_file(base + "contiguity.json");
    auto [k, m] = module_from_json(j.at("module"));
    int i = 1;
    for (const json& cj : j.at("c")) {
      Mat c = mat_from_json(cj, k.vars);
      DiffModule t = twist(k, m, "sigma" + std::to_string(i));
      r.add_bool("gauge(A,C" + std::to_string(i) + ") = sigma" + std::to_string(i) + "(A)",
                 verify_gauge_equiv(k, m, t, c), mat_to_json(c));
      ++i;
    }
  } else if (name == "commute") {
    json j = read_json_file(base + "commute.json");
    const json& good = j.at("good");
    auto sweep = commute_up_to_gauge(parse_q(good.at("s1").get<std::string>()),
                                     good.at("s2").get<long long>(),
                                     good.at("n_min").get<long long>(),
                                     good.at("n_max").get<long long>());
    bool all_eq = true;
    for (const auto& e : sweep) all_eq = all_eq && e.equivalent;
    r.add_bool("commute s1=" + good.at("s1").get<std::string>() + " all n", all_eq);
    const json& bad = j.at("bad");
    auto bsweep = commute_up_to_gauge(parse_q(bad.at("s1").get<std::string>()),
                                      bad.at("s2").get<long long>(),
                                      bad.at("n_min").get<long long>(),
                                      bad.at("n_max").get<long long>());
    bool none_eq = true;
    for (const auto& e : bsweep) none_eq = none_eq && !e.equivalent;
    r.add_bool("not-commute s1=" + bad.at("s1").get<std::string>(), none_eq);

    // the twisted 1x1 matrices printed in the paper, verbatim
    VarList vars = make_vars({"x", "m", "n", "s1", "s2"});
    DiffField k;
    k.vars = vars;
    k.der.images["x"] = RatFunc::one(vars);
    for (const char* v : {"m", "n", "s1", "s2"}) k.der.images[v] = RatFunc::zero(vars);
    SubstEndo shift, scale;
    shift.images["x"] = parse_ratfunc("x+s1", vars);
    scale.images["x"] = parse_ratfunc("s2*x", vars);
    k.register_endo("sigma1", shift);
    k.register_endo("sigma2", scale);
    Mat a(1, 1, vars);
    a.at(0, 0) = parse_ratfunc("n*x+m", vars);
    DiffModule base = make_module(k, a);
    DiffModule tx2 = twist(k, twist(k, base, "sigma2"), "sigma1");
    DiffModule tx3 = twist(k, twist(k, base, "sigma1"), "sigma2");
    r.add_bool("eq:tx2", tx2.a.at(0, 0).equals(rf_from_json(j.at("tx2"), vars)));
    r.add_bool("eq:tx3", tx3.a.at(0, 0).equals(rf_from_json(j.at("tx3"), vars)));
  } else {
    throw ParseFailure("cannot parse fixture name '" + name +
                       "': expected counterexample|torsion|contiguity|commute|all");
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  auto start = std::chrono::steady_clock::now();
  std::string command;
  for (int i = 1; i < argc; ++i) command += std::string(i > 1 ? " " : "") + argv[i];

  CLI::App app{"tannakit: exact checks for semigroup actions on tensor categories"};
  app.require_subcommand(1);
  long long seed = 0;
  app.add_flag("--json", g_json, "emit a JSON report (schema 1)");
  app.add_option("--seed", seed, "seed for randomized sweeps");

  // semigroup
  auto* sg = app.add_subcommand("semigroup", "word normal forms and schedules");
  sg->require_subcommand(1);
  std::string sg_pres, sg_word, sg_w1, sg_w2;
  auto* sg_norm = sg->add_subcommand("normalize", "normal form of a raw generator string");
  sg_norm->add_option("--pres", sg_pres)->required();
  sg_norm->add_option("--word", sg_word)->required();
  auto* sg_mul = sg->add_subcommand("multiply", "product of two normal-form words");
  sg_mul->add_option("--pres", sg_pres)->required();
  sg_mul->add_option("--w1", sg_w1)->required();
  sg_mul->add_option("--w2", sg_w2)->required();
  auto* sg_sched = sg->add_subcommand("schedule", "exchange schedule for a product");
  sg_sched->add_option("--pres", sg_pres)->required();
  sg_sched->add_option("--w1", sg_w1)->required();
  sg_sched->add_option("--w2", sg_w2)->required();

  // coherence
  auto* co = app.add_subcommand("coherence", "hexagon/torsion/associativity checks");
  co->require_subcommand(1);
  std::string co_action;
  long long co_maxlen = 2;
  auto* co_check = co->add_subcommand("check", "run all coherence checks on action data");
  co_check->add_option("--action", co_action, "action data JSON file")->required();
  co_check->add_option("--max-len", co_maxlen, "associativity word length bound");

  // diffmod
  auto* dm = app.add_subcommand("diffmod", "differential module twists and gauges");
  dm->require_subcommand(1);
  std::string dm_module, dm_target, dm_c, dm_endo, dm_var = "x", dm_denom = "1", dm_json_out;
  int dm_deg = 0;
  long long dm_s2 = 2, dm_nmin = 0, dm_nmax = 0;
  std::string dm_s1_str = "1/2";
  auto* dm_twist = dm->add_subcommand("twist", "A -> lambda * sigma(A)");
  dm_twist->add_option("--module", dm_module)->required();
  dm_twist->add_option("--endo", dm_endo)->required();
  dm_twist->add_option("--json-out", dm_json_out);
  auto* dm_gauge = dm->add_subcommand("gauge", "A -> C^-1 A C - C^-1 dC");
  dm_gauge->add_option("--module", dm_module)->required();
  dm_gauge->add_option("--c", dm_c, "gauge matrix JSON file")->required();
  dm_gauge->add_option("--json-out", dm_json_out);
  auto* dm_verify = dm->add_subcommand("verify", "check gauge(A, C) = B");
  dm_verify->add_option("--module", dm_module)->required();
  dm_verify->add_option("--target", dm_target)->required();
  dm_verify->add_option("--c", dm_c)->required();
  auto* dm_solve = dm->add_subcommand("solve", "bounded-ansatz gauge solver");
  dm_solve->add_option("--module", dm_module)->required();
  dm_solve->add_option("--target", dm_target)->required();
  dm_solve->add_option("--var", dm_var, "derivation variable");
  dm_solve->add_option("--deg", dm_deg, "numerator degree bound");
  dm_solve->add_option("--denom", dm_denom, "fixed denominator polynomial");
  dm_solve->add_option("--json-out", dm_json_out);
  auto* dm_cont = dm->add_subcommand("contiguity", "verify the hypergeometric gauge identities");
  auto* dm_comm = dm->add_subcommand("commute-check", "twisted-module equivalence sweep");
  dm_comm->add_option("--s1", dm_s1_str);
  dm_comm->add_option("--s2", dm_s2);
  dm_comm->add_option("--nmin", dm_nmin);
  dm_comm->add_option("--nmax", dm_nmax);

  // hopf
  auto* hp = app.add_subcommand("hopf", "difference Hopf algebra checks");
  hp->require_subcommand(1);
  int hp_n = 2, hp_r = 0, hp_s = 1, hp_p = 1, hp_count = 25, hp_free = 1;
  std::vector<int> hp_torsion;
  std::string hp_poly;
  auto* hp_ax = hp->add_subcommand("check-axioms", "Hopf axioms on generators + random elements");
  hp_ax->add_option("--n", hp_n);
  hp_ax->add_option("--count", hp_count, "number of random elements");
  auto* hp_ord = hp->add_subcommand("ord", "max index word length of a difference polynomial");
  hp_ord->add_option("--poly", hp_poly, "monomial list JSON")->required();
  hp_ord->add_option("--free", hp_free);
  hp_ord->add_option("--torsion", hp_torsion);
  auto* hp_fil = hp->add_subcommand("filtration", "L_{r,s,p} basis and certificate");
  hp_fil->add_option("--n", hp_n);
  hp_fil->add_option("--r", hp_r);
  hp_fil->add_option("--s", hp_s);
  hp_fil->add_option("--p", hp_p);
  hp_fil->add_option("--free", hp_free);
  hp_fil->add_option("--torsion", hp_torsion);

  // paper-examples
  auto* pe = app.add_subcommand("paper-examples", "run the pinned paper fixtures");
  std::string pe_name, pe_fixtures = "fixtures";
  pe->add_option("name", pe_name, "counterexample|torsion|contiguity|commute|all")->required();
  pe->add_option("--fixtures", pe_fixtures, "fixtures directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "cannot parse command line: " << e.what() << "\n";
    return 2;
  }

  try {
    Report r;

    if (sg_norm->parsed()) {
      AbelianPresentation p = pres_from_json(parse_json_text(sg_pres, "--pres"));
      auto raw = parse_json_text(sg_word, "--word").get<std::vector<int>>();
      Word w = normalize_word(p, raw);
      r.extra["word"] = w.exps;
      if (!g_json) {
        std::cout << json(w.exps).dump() << "\n";
        return 0;
      }
    } else if (sg_mul->parsed() || sg_sched->parsed()) {
      AbelianPresentation p = pres_from_json(parse_json_text(sg_pres, "--pres"));
      Word w1 = word_from_exponents(p, parse_json_text(sg_w1, "--w1").get<std::vector<long long>>());
      Word w2 = word_from_exponents(p, parse_json_text(sg_w2, "--w2").get<std::vector<long long>>());
      if (sg_mul->parsed()) {
        r.extra["word"] = multiply(p, w1, w2).exps;
      } else {
        json steps = json::array();
        for (const ExchangeStep& s : exchange_schedule(p, w1, w2))
          steps.push_back(json{{"kind", s.kind == ExchangeStep::Kind::Swap ? "swap" : "reduce"},
                               {"i", s.i},
                               {"j", s.j},
                               {"pos", s.pos}});
        r.extra["schedule"] = std::move(steps);
      }
      if (!g_json) {
        std::cout << r.extra.dump() << "\n";
        return 0;
      }
    } else if (co_check->parsed()) {
      ActionData d = action_from_json(read_json_file(co_action));
      for (auto [name, rep] : {std::pair{"hexagon", check_hexagon(d)},
                               {"torsion", check_torsion(d)},
                               {"naturality", check_naturality(d)}}) {
        json wit = json::array();
        for (const auto& f : rep) wit.push_back(failure_to_json(f));
        r.add_bool(name, rep.empty(), std::move(wit));
      }
      auto ass = verify_associativity(d, co_maxlen);
      json wit = json::array();
      for (const auto& f : ass) wit.push_back(failure_to_json(f));
      r.add_bool("associativity(" + std::to_string(co_maxlen) + ")", ass.empty(),
                 std::move(wit));
    } else if (dm_twist->parsed()) {
      auto [k, m] = module_from_json(read_json_file(dm_module));
      DiffModule t = twist(k, m, dm_endo);
      r.extra["matrix"] = mat_to_json(t.a);
      r.add("twist", "pass");
    } else if (dm_gauge->parsed()) {
      auto [k, m] = module_from_json(read_json_file(dm_module));
      Mat c = mat_from_json(read_json_file(dm_c), k.vars);
      r.extra["matrix"] = mat_to_json(gauge(k, m, c).a);
      r.add("gauge", "pass");
    } else if (dm_verify->parsed()) {
      auto [k, m] = module_from_json(read_json_file(dm_module));
      auto [k2, n] = module_from_json(read_json_file(dm_target));
      (void)k2;
      Mat c = mat_from_json(read_json_file(dm_c), k.vars);
      r.add_bool("gauge-equivalence", verify_gauge_equiv(k, m, n, c));
    } else if (dm_solve->parsed()) {
      auto [k, m] = module_from_json(read_json_file(dm_module));
      auto [k2, n] = module_from_json(read_json_file(dm_target));
      (void)k2;
      MultiPoly denom = parse_ratfunc(dm_denom, k.vars).num();
      auto c = solve_gauge(k, m, n, dm_var, dm_deg, denom);
      if (c) {
        r.extra["matrix"] = mat_to_json(*c);
        r.add("solve", "pass");
      } else {
        r.add("solve", "none-found", json("no invertible gauge within the ansatz"));
      }
    } else if (dm_cont->parsed()) {
      HyperData h = hypergeometric_example();
      for (int i = 0; i < 3; ++i) {
        DiffModule t = twist(h.field, h.module, "sigma" + std::to_string(i + 1));
        r.add_bool("gauge(A,C" + std::to_string(i + 1) + ")",
                   verify_gauge_equiv(h.field, h.module, t, h.c[static_cast<size_t>(i)]));
      }
    } else if (dm_comm->parsed()) {
      auto sweep = commute_up_to_gauge(parse_q(dm_s1_str), dm_s2, dm_nmin, dm_nmax);
      json entries = json::array();
      for (const auto& e : sweep) {
        entries.push_back(json{{"n", e.n}, {"kappa", q_to_string(e.kappa)},
                               {"equivalent", e.equivalent}});
        r.add_bool("commute n=" + std::to_string(e.n), e.equivalent,
                   json{{"kappa", q_to_string(e.kappa)}});
      }
      r.extra["sweep"] = std::move(entries);
    } else if (hp_ax->parsed()) {
      GLn g{hp_n, AbelianPresentation{1, {}}};
      Word e = identity_word(g.pres);
      bool ok = true;
      for (int i = 1; i <= g.n && ok; ++i)
        for (int j = 1; j <= g.n && ok; ++j) {
          HopfElem x = he_from_poly(gl_var(g, i, j, e));
          ok = coassociativity_holds(g, x) && counit_law_holds(g, x) && antipode_law_holds(g, x);
        }
      r.add_bool("generators", ok);
      std::mt19937 rng(static_cast<unsigned>(seed));
      std::uniform_int_distribution<int> coeff(-3, 3), idx(1, g.n), deg(0, 2), wexp(0, 1);
      bool rok = true;
      for (int t = 0; t < hp_count && rok; ++t) {
        GPoly f = GPoly::zero(g.pres);
        for (int term = 0; term < 3; ++term) {
          GMono mono;
          int d = deg(rng);
          for (int kk = 0; kk < d; ++kk)
            mono = gmono_mul(mono, {{DiffIndet{idx(rng), idx(rng),
                                               word_from_exponents(g.pres, {wexp(rng)})},
                                     1}});
          f.add_term(mono, Q(coeff(rng)));
        }
        HopfElem he = he_from_poly(f);
        rok = coassociativity_holds(g, he) && counit_law_holds(g, he) &&
              antipode_law_holds(g, he);
      }
      r.add_bool("random elements", rok);
    } else if (hp_ord->parsed()) {
      AbelianPresentation p{hp_free, hp_torsion};
      json pj = parse_json_text(hp_poly, "--poly");
      GPoly f = GPoly::zero(p);
      for (const json& term : pj) {
        GMono mono;
        for (const json& fac : term.value("mono", json::array())) {
          Word w = word_from_exponents(p, fac.at("w").get<std::vector<long long>>());
          mono = gmono_mul(mono, {{DiffIndet{fac.at("i").get<int>(), fac.value("j", -1), w},
                                   fac.value("e", 1)}});
        }
        f.add_term(mono, parse_q(term.at("coeff").get<std::string>()));
      }
      if (f.is_zero()) throw ParseFailure("cannot parse polynomial: ord of zero is undefined");
      r.extra["ord"] = ord(f);
      r.add("ord", "pass");
    } else if (hp_fil->parsed()) {
      GLn g{hp_n, AbelianPresentation{hp_free, hp_torsion}};
      FiltrationResult res = l_filtration(g, hp_r, hp_s, hp_p);
      r.extra["dim"] = res.dim;
      json basis = json::array();
      for (const GMono& m : res.basis) {
        json bm = json::array();
        for (const auto& [v, e] : m) bm.push_back(json{{"indet", v.to_string()}, {"e", e}});
        basis.push_back(std::move(bm));
      }
      r.extra["basis"] = std::move(basis);
      r.add_bool("delta-closed", res.delta_closed);
      r.add_bool("equivariance", res.equivariance_ok);
    } else if (pe->parsed()) {
      if (pe_name == "all") {
        // each fixture's expected status is pinned; the suite passes when the
        // observed statuses match the pins
        struct Pin {
          const char* name;
          bool expect_clean;  // raw report has no failing check
        };
        bool meta_ok = true;
        for (const Pin& pin : {Pin{"counterexample", false}, Pin{"torsion", false},
                               Pin{"contiguity", true}, Pin{"commute", true}}) {
          Report raw = run_fixture(pin.name, pe_fixtures);
          bool match = raw.any_fail != pin.expect_clean;
          meta_ok = meta_ok && match;
          r.add(std::string(pin.name), match ? "pass" : "fail",
                json{{"expected", pin.expect_clean ? "clean" : "failing"},
                     {"observed", raw.any_fail ? "failing" : "clean"},
                     {"checks", raw.checks}});
        }
        (void)meta_ok;
      } else {
        r = run_fixture(pe_name, pe_fixtures);
      }
    }

    return emit(command, r, start);
  } catch (const ParseFailure& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
