#include "tasks.hpp"

#include <algorithm>
#include <set>

#include "edc/engine.hpp"
#include "edc/exact.hpp"
#include "edc/gmodule.hpp"
#include "edc/spectral.hpp"

namespace edc::cli {

namespace {

Json rational_array(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_string(x));
  return out;
}

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Json slot_json(const SlotKey& key) {
  return Json{{"level", key.i}, {"cech_degree", key.j}, {"slot", key.k}, {"patch", key.cech}};
}

// Nonzero blocks only, in slot order.
Json render(const Assembly& A, const TripleCochain& c) {
  Json out = Json::array();
  for (const auto& [key, v] : c.blocks) {
    if (all_zero(v)) continue;
    Json b = slot_json(key);
    b["where"] = A.describe(key);
    b["values"] = rational_array(v);
    out.push_back(b);
  }
  return out;
}

Json conventions() {
  return Json{{"model", kConventions},
              {"degree_shift", "Deligne degree m is model degree m + 1"},
              {"T", "Q/Z"},
              {"R", "Q"},
              {"rationals", "strings \"p/q\""}};
}

EngineOptions engine_options(const TaskSpec& t) {
  EngineOptions o;
  o.cover = t.cover;
  return o;
}

[[noreturn]] void input_error(const std::string& path, const std::string& why) { throw InputError(path + ": " + why); }

TripleCochain cochain_from(const GeometryModel& M, const CochainPayload& p, const std::string& path) {
  const Assembly& A = M.assembly();
  try {
    switch (p.kind) {
      case CochainPayload::Kind::Zero: return M.zero();
      case CochainPayload::Kind::Coordinates: return M.representative(p.values);
      case CochainPayload::Kind::Form: return form_level_zero(M, p.values);
      case CochainPayload::Kind::Blocks: {
        TripleCochain c = M.zero();
        for (std::size_t b = 0; b < p.blocks.size(); ++b) {
          const auto& [key, v] = p.blocks[b];
          const std::string bp = path + ".blocks[" + std::to_string(b) + "]";
          if (key.i + key.j + key.k != M.model_degree())
            input_error(bp, "level + cech_degree + slot must be " + std::to_string(M.model_degree()));
          if (key.i < 0 || key.j < 0 || key.k < 0 || key.i >= A.spec().levels() || key.cech < 0 ||
              key.cech >= A.level(key.i).count(key.j))
            input_error(bp, "no such block");
          const int dim = A.slot_dim(key);
          if (dim == 0) input_error(bp, "no such block");
          if (static_cast<int>(v.size()) != dim) input_error(bp + ".values", "expected " + std::to_string(dim) + " entries");
          if (key.k == 0 && !is_integer(v[0])) input_error(bp + ".values", "the integer slot needs an integer");
          auto& dst = A.block(c, key);
          for (int e = 0; e < dim; ++e) dst[e] += v[e];
        }
        return c;
      }
    }
  } catch (const PreconditionError& e) {
    input_error(path, e.what());
  }
  return M.zero();
}

Json module_entries(const std::map<Bidegree, MixedModule>& E) {
  Json out = Json::array();
  for (const auto& [bd, m] : E) out.push_back(Json{{"p", bd.first}, {"q", bd.second}, {"module", m.str()}});
  return out;
}

void compute(const Problem& pr, const SimplicialAction& a, RunResult& out) {
  const TaskSpec& t = pr.task;
  Json results = Json::array();
  for (int m = t.m_lo; m <= t.m_hi; ++m) {
    const CohomologyResult r = equivariant_deligne(a, t.N, m, engine_options(t));
    Json reps = Json::array();
    for (std::size_t i = 0; i < r.representatives.size(); ++i) reps.push_back(render(*r.assembly, r.triple(i)));
    results.push_back(Json{{"m", m}, {"group", r.group.str()}, {"representatives", reps}});
    out.summary.push_back("H^" + std::to_string(m) + "(F(" + std::to_string(t.N) + ")) = " + r.group.str());
  }
  if (t.m_lo == t.m_hi) out.report["result"] = results[0]["group"];
  out.report["cohomology"] = results;
}

void spectral(const Problem& pr, const SimplicialAction& a, RunResult& out) {
  const TaskSpec& t = pr.task;
  const SpectralSequence S = spectral_sequence(a, t.N, t.max_page, t.m_lo, t.m_hi, engine_options(t));
  Json pages = Json::array();
  bool squares = true;
  for (const auto& page : S.pages) {
    Json d = Json::array();
    for (const auto& diff : page.d) {
      if (diff.is_zero()) continue;
      Json images = Json::array();
      for (const auto& img : diff.images) images.push_back(rational_array(img));
      d.push_back(Json{{"from", {diff.from.first, diff.from.second}}, {"to", {diff.to.first, diff.to.second}},
                       {"images", images}});
    }
    squares = squares && page.d_squared_zero;
    pages.push_back(Json{{"r", page.r}, {"entries", module_entries(page.E)}, {"differentials", d},
                         {"d_squared_zero", page.d_squared_zero}});
  }
  Json total = Json::array();
  for (const auto& [n, m] : S.total) {
    total.push_back(Json{{"m", n}, {"module", m.str()}});
    out.summary.push_back("H^" + std::to_string(n) + " = " + m.str());
  }
  Json graded = Json::array();
  for (const auto& [n, pieces] : S.graded) {
    Json g = Json::array();
    for (const auto& m : pieces) g.push_back(m.str());
    graded.push_back(Json{{"m", n}, {"pieces", g}});
  }
  out.report["pages"] = pages;
  out.report["E_infinity"] = module_entries(S.E_infinity);
  out.report["total"] = total;
  out.report["graded"] = graded;
  out.report["consistent"] = S.consistent;
  out.report["notes"] = S.notes;
  if (!S.consistent || !squares) {
    out.exit_code = kVerificationFailed;
    out.summary.push_back(!squares ? "FAIL: d_r squares to a nonzero map" : "FAIL: E_infinity disagrees with the total cohomology");
  }
}

void verify(const Problem& pr, const SimplicialAction& a, RunResult& out) {
  const TaskSpec& t = pr.task;
  Json failures = Json::array();
  {
    ModelSpec spec;
    spec.action = a;
    spec.N = t.N;
    spec.m_lo = t.m_lo;
    spec.m_hi = t.m_hi;
    spec.cover = t.cover;
    const Assembly A(std::move(spec));
    Json d2 = Json::array();
    for (int s = A.total_lo(); s + 2 <= A.total_hi(); ++s) {
      const bool zero = A.differential(s + 1).compose_after(A.differential(s)).is_zero();
      d2.push_back(Json{{"model_degree", s}, {"zero", zero}});
      if (!zero) failures.push_back("D^2 != 0 from model degree " + std::to_string(s));
    }
    out.report["d_squared"] = d2;
  }
  Json sequences = Json::array();
  for (const auto& name : t.sequences) {
    const ExactSequenceReport R = verify_exact_sequence(a, t.N, parse_sequence_kind(name), t.m_lo, t.m_hi);
    Json terms = Json::array();
    for (const auto& term : R.terms) {
      Json j{{"name", term.name}, {"m", term.degree}, {"computed", term.computed.str()}};
      if (!term.identification.empty()) j["identification"] = term.identification;
      if (term.expected) j["expected"] = term.expected->str();
      j["matches"] = term.matches();
      terms.push_back(j);
    }
    Json checks = Json::array();
    for (const auto& c : R.checks)
      checks.push_back(Json{{"spot", c.spot}, {"m", c.degree}, {"composite_zero", c.composite_zero}, {"exact", c.exact}});
    for (const auto& f : R.failures) failures.push_back(name + ": " + f);
    sequences.push_back(Json{{"sequence", name}, {"terms", terms}, {"checks", checks}, {"ok", R.ok()}});
    out.summary.push_back(name + " sequence: " + (R.ok() ? "exact" : "FAILED"));
  }
  out.report["sequences"] = sequences;
  out.report["failures"] = failures;
  if (!failures.empty()) out.exit_code = kVerificationFailed;
}

SearchDomain domain_of(const TaskSpec& t) {
  SearchDomain d;
  d.denominator_bound = t.denominator_bound;
  return d;
}

void describe_classes(const GeometryModel& M, RunResult& out) {
  Json reps = Json::array();
  for (std::size_t i = 0; i < M.classes().representatives.size(); ++i)
    reps.push_back(render(M.assembly(), M.classes().triple(i)));
  out.report["classes"] = Json{{"group", M.classes().group.str()}, {"representatives", reps}};
  out.summary.push_back(std::string(to_string(M.kind())) + " classes: " + M.classes().group.str());
}

Json cocycle_report(const GeometryModel& M, const TripleCochain& c, bool& valid) {
  const Validation v = validate(M, c);
  valid = v.ok();
  Json j{{"cochain", render(M.assembly(), c)}, {"valid", valid}};
  if (!valid) {
    Json vs = Json::array();
    for (const auto& x : v.violations) vs.push_back(Json{{"condition", x.condition}, {"block", x.where}});
    j["violations"] = vs;
    return j;
  }
  j["class"] = rational_array(class_of(M, c));
  j["curvature"] = rational_array(geometry_curvature(M, c));
  const FlatTest f = flat_test(M, c);
  j["flat"] = f.flat;
  return j;
}

GeometryModel model_for(const SimplicialAction& a, const TaskSpec& t) {
  try {
    return GeometryModel(a, t.geometry, t.geometry_N.value_or(-1));
  } catch (const PreconditionError& e) {
    input_error("task.N", e.what());
  }
}

void classify(const Problem& pr, const SimplicialAction& a, RunResult& out) {
  const TaskSpec& t = pr.task;
  const GeometryModel M = model_for(a, t);
  describe_classes(M, out);
  std::vector<TripleCochain> cs;
  Json cocycles = Json::array();
  bool all_valid = true;
  for (std::size_t i = 0; i < t.cocycles.size(); ++i) {
    cs.push_back(cochain_from(M, t.cocycles[i], "task.cocycles[" + std::to_string(i) + "]"));
    bool valid = false;
    cocycles.push_back(cocycle_report(M, cs.back(), valid));
    if (!valid) {
      all_valid = false;
      out.summary.push_back("cocycle " + std::to_string(i) + ": " + validate(M, cs.back()).summary() + " fails");
    }
  }
  out.report["cocycles"] = cocycles;
  Json pairs = Json::array();
  if (all_valid)
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t k = i + 1; k < cs.size(); ++k) {
        const Isomorphism iso = isomorphic(M, cs[i], cs[k]);
        Json j{{"first", i}, {"second", k}, {"isomorphic", iso.isomorphic}};
        if (iso.isomorphic)
          j["witness"] = render(M.assembly(), iso.witness);
        else
          j["certificate"] = Json{{"summand", iso.generator}, {"difference", rational_string(iso.difference)}};
        pairs.push_back(j);
      }
  out.report["isomorphisms"] = pairs;
  if (t.search) {
    bool complete = false;
    const auto found = enumerate_cocycles(M, domain_of(t), &complete);
    std::set<std::vector<Rational>> classes;
    for (const auto& c : found) classes.insert(class_of(M, c));
    out.report["enumeration"] = Json{{"denominator_bound", t.denominator_bound},
                                     {"cocycles", found.size()},
                                     {"classes", classes.size()},
                                     {"complete", complete}};
    out.summary.push_back("bounded enumeration: " + std::to_string(found.size()) + " cocycles in " +
                          std::to_string(classes.size()) + " classes");
  }
  if (!all_valid) out.exit_code = kVerificationFailed;
}

void obstruct(const Problem& pr, const SimplicialAction& a, RunResult& out) {
  const TaskSpec& t = pr.task;
  const GeometryModel M = model_for(a, t);
  const TripleCochain c0 = cochain_from(M, t.level0, "task.level0");
  Obstructions O;
  try {
    O = obstructions(M, c0);
  } catch (const PreconditionError& e) {
    input_error("task.level0", e.what());
  }
  Json stages = Json::array();
  for (const auto& s : O.stages) {
    stages.push_back(Json{{"page", s.page},
                          {"target", {s.target.first, s.target.second}},
                          {"group", s.group.str()},
                          {"value", rational_array(s.value)},
                          {"vanishes", s.vanishes}});
    out.summary.push_back("d_" + std::to_string(s.page) + " obstruction in " + s.group.str() + ": " +
                          (s.vanishes ? "vanishes" : "nonzero"));
  }
  out.report["stages"] = stages;
  out.report["extends"] = O.extends();
  if (O.extension) out.report["extension"] = render(M.assembly(), *O.extension);
  out.summary.push_back(O.extends() ? "extends to an equivariant cocycle" : "does not extend");
  if (t.search) {
    bool complete = false;
    const auto e = bounded_extension(M, c0, domain_of(t), &complete);
    Json s{{"denominator_bound", t.denominator_bound}, {"found", e.has_value()}, {"complete", complete}};
    if (e) s["extension"] = render(M.assembly(), *e);
    out.report["search"] = s;
    const bool contradicts = (e && !O.extends()) || (!e && complete && O.extends());
    if (contradicts) {
      out.exit_code = kVerificationFailed;
      out.summary.push_back("FAIL: bounded search disagrees with the obstructions");
    }
  }
}

GroupCochain gamma_from(const FiniteGroup& G, const GammaPayload& g) {
  if (g.discrete_torsion) {
    if (G.order() != 4 || G.names() != std::vector<std::string>{"e", "a", "b", "ab"})
      input_error("task.gamma.discrete_torsion", "defined for the klein4 group");
    return discrete_torsion_klein4();
  }
  const int n = G.order();
  GroupCochain out{2, std::vector<Rational>(n * n, Rational(0))};
  for (const auto& [gh, v] : g.values) {
    const int x = G.index_of(gh.first), y = G.index_of(gh.second);
    if (x < 0 || y < 0) input_error("task.gamma.values." + gh.first + "," + gh.second, "no group element of that name");
    out.values[x * n + y] = v;
  }
  return out;
}

void twist(const Problem& pr, const SimplicialAction& a, RunResult& out) {
  const TaskSpec& t = pr.task;
  const GeometryModel M = model_for(a, t);
  const TripleCochain base = cochain_from(M, t.base, "task.base");
  bool valid = false;
  out.report["base"] = cocycle_report(M, base, valid);
  if (!valid) {
    out.exit_code = kVerificationFailed;
    out.summary.push_back("base cocycle is invalid: " + validate(M, base).summary());
    return;
  }
  const GroupCochain gamma = gamma_from(a.group, t.gamma);
  const MixedModule H2 = group_cohomology(GModule::trivial(a.group, MixedModule::parse("(Q/Z)^1")), 2);
  out.report["group_cohomology_H2"] = H2.str();
  if (!is_cocycle_mod_integers(a.group, gamma)) input_error("task.gamma", "not a group 2-cocycle mod Z");
  const TripleCochain twisted = twist_gerbe(M, base, gamma);
  out.report["twisted"] = cocycle_report(M, twisted, valid);
  if (!valid) {
    out.exit_code = kVerificationFailed;
    out.summary.push_back("FAIL: twisted cochain is not a cocycle");
    return;
  }
  const Isomorphism iso = isomorphic(M, twisted, base);
  Json j{{"isomorphic", iso.isomorphic}};
  if (iso.isomorphic)
    j["witness"] = render(M.assembly(), iso.witness);
  else
    j["certificate"] = Json{{"summand", iso.generator}, {"difference", rational_string(iso.difference)}};
  out.report["comparison"] = j;
  out.summary.push_back("H^2_group(G, Q/Z) = " + H2.str() + "; twist " +
                        (iso.isomorphic ? "keeps the class" : "changes the class"));
}

}  // namespace

RunResult run_task(Problem problem, const RunOptions& options) {
  TaskSpec& t = problem.task;
  if (options.window) {
    if (options.window->first < 0 || options.window->first > options.window->second)
      throw InputError("--window: expected 0 <= a <= b");
    t.m_lo = options.window->first;
    t.m_hi = options.window->second;
  }
  if (options.denominator_bound) {
    if (*options.denominator_bound < 1) throw InputError("--denom-bound: must be positive");
    t.denominator_bound = *options.denominator_bound;
  }
  if (options.threads < 1) throw InputError("--threads: must be positive");
  const SimplicialAction a = build_action(problem);

  RunResult out;
  out.report["task"] = to_json(problem);
  out.report["conventions"] = conventions();
  try {
    switch (t.kind) {
      case TaskKind::Compute: compute(problem, a, out); break;
      case TaskKind::Spectral: spectral(problem, a, out); break;
      case TaskKind::Verify: verify(problem, a, out); break;
      case TaskKind::Classify: classify(problem, a, out); break;
      case TaskKind::Obstruct: obstruct(problem, a, out); break;
      case TaskKind::Twist: twist(problem, a, out); break;
    }
  } catch (const PreconditionError& e) {
    throw InputError(std::string("task: ") + e.what());
  }
  out.report["status"] = out.exit_code == kSuccess ? "ok" : "verification failed";
  return out;
}

}  // namespace edc::cli
