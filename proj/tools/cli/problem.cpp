#include "problem.hpp"

#include <fstream>
#include <map>

#include "edc/fixtures.hpp"
#include "edc/nerve.hpp"

namespace edc::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) { throw InputError(path + ": " + why); }

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(at(path, key), "missing");
  return *it;
}

void only_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) fail(at(path, k), "unknown field");
  }
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const long long v = j.get<long long>();
  if (v < -1000000 || v > 1000000) fail(path, "integer out of range");
  return static_cast<int>(v);
}

bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

const std::string& as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get_ref<const std::string&>();
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::vector<Rational> rationals(const Json& j, const std::string& path) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) out.push_back(parse_rational(j[i], at(path, i)));
  return out;
}

Json rational_array(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_string(x));
  return out;
}

GeometryKind parse_geometry(const Json& j, const std::string& path) {
  const std::string& s = as_string(j, path);
  if (s == "bundle") return GeometryKind::Bundle;
  if (s == "gerbe") return GeometryKind::Gerbe;
  fail(path, "expected \"bundle\" or \"gerbe\"");
}

CochainPayload parse_payload(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  only_keys(j, {"zero", "coordinates", "form", "blocks"}, path);
  if (j.size() != 1) fail(path, "expected exactly one of zero, coordinates, form, blocks");
  CochainPayload p;
  if (j.contains("zero")) {
    if (!as_bool(j["zero"], at(path, "zero"))) fail(at(path, "zero"), "must be true when given");
  } else if (j.contains("coordinates")) {
    p.kind = CochainPayload::Kind::Coordinates;
    p.values = rationals(j["coordinates"], at(path, "coordinates"));
  } else if (j.contains("form")) {
    p.kind = CochainPayload::Kind::Form;
    p.values = rationals(j["form"], at(path, "form"));
  } else {
    p.kind = CochainPayload::Kind::Blocks;
    const std::string bp = at(path, "blocks");
    const Json& blocks = as_array(j["blocks"], bp);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const std::string p_b = at(bp, b);
      if (!blocks[b].is_object()) fail(p_b, "expected an object");
      only_keys(blocks[b], {"level", "cech_degree", "slot", "patch", "values"}, p_b);
      SlotKey key;
      key.i = as_int(require(blocks[b], "level", p_b), at(p_b, "level"));
      key.j = as_int(require(blocks[b], "cech_degree", p_b), at(p_b, "cech_degree"));
      key.k = as_int(require(blocks[b], "slot", p_b), at(p_b, "slot"));
      key.cech = as_int(require(blocks[b], "patch", p_b), at(p_b, "patch"));
      p.blocks.emplace_back(key, rationals(require(blocks[b], "values", p_b), at(p_b, "values")));
    }
  }
  return p;
}

Json payload_json(const CochainPayload& p) {
  Json out = Json::object();
  switch (p.kind) {
    case CochainPayload::Kind::Zero: out["zero"] = true; break;
    case CochainPayload::Kind::Coordinates: out["coordinates"] = rational_array(p.values); break;
    case CochainPayload::Kind::Form: out["form"] = rational_array(p.values); break;
    case CochainPayload::Kind::Blocks: {
      Json blocks = Json::array();
      for (const auto& [key, v] : p.blocks)
        blocks.push_back(Json{{"level", key.i}, {"cech_degree", key.j}, {"slot", key.k}, {"patch", key.cech},
                              {"values", rational_array(v)}});
      out["blocks"] = blocks;
      break;
    }
  }
  return out;
}

GammaPayload parse_gamma(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  only_keys(j, {"discrete_torsion", "values"}, path);
  GammaPayload g;
  if (j.contains("discrete_torsion")) g.discrete_torsion = as_bool(j["discrete_torsion"], at(path, "discrete_torsion"));
  if (j.contains("values")) {
    const std::string vp = at(path, "values");
    if (!j["values"].is_object()) fail(vp, "expected an object keyed by \"g,h\"");
    for (const auto& [k, v] : j["values"].items()) {
      const auto comma = k.find(',');
      if (comma == std::string::npos) fail(at(vp, k), "key must name two elements as \"g,h\"");
      g.values.push_back({{k.substr(0, comma), k.substr(comma + 1)}, parse_rational(v, at(vp, k))});
    }
  }
  if (g.discrete_torsion == !g.values.empty()) fail(path, "give either discrete_torsion or values");
  return g;
}

TaskKind parse_task_kind(const Json& j, const std::string& path) {
  static const std::map<std::string, TaskKind> kinds{{"compute", TaskKind::Compute},   {"spectral", TaskKind::Spectral},
                                                     {"verify", TaskKind::Verify},     {"classify", TaskKind::Classify},
                                                     {"obstruct", TaskKind::Obstruct}, {"twist", TaskKind::Twist}};
  const std::string& s = as_string(j, path);
  auto it = kinds.find(s);
  if (it == kinds.end()) fail(path, "unknown task '" + s + "' (expected compute, spectral, verify, classify, obstruct or twist)");
  return it->second;
}

TaskSpec parse_task(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  TaskSpec t;
  t.kind = parse_task_kind(require(j, "type", path), at(path, "type"));
  switch (t.kind) {
    case TaskKind::Compute: only_keys(j, {"type", "N", "m", "window", "cover"}, path); break;
    case TaskKind::Spectral: only_keys(j, {"type", "N", "m", "window", "max_page"}, path); break;
    case TaskKind::Verify: only_keys(j, {"type", "N", "m", "window", "sequences"}, path); break;
    case TaskKind::Classify:
      only_keys(j, {"type", "geometry", "N", "cocycles", "enumerate", "denominator_bound"}, path);
      break;
    case TaskKind::Obstruct:
      only_keys(j, {"type", "geometry", "N", "level0", "search", "denominator_bound"}, path);
      break;
    case TaskKind::Twist: only_keys(j, {"type", "N", "base", "gamma"}, path); break;
  }
  const bool geometric = t.kind == TaskKind::Classify || t.kind == TaskKind::Obstruct || t.kind == TaskKind::Twist;
  if (j.contains("N")) {
    const int N = as_int(j["N"], at(path, "N"));
    if (N < 0) fail(at(path, "N"), "must be non-negative");
    if (geometric)
      t.geometry_N = N;
    else
      t.N = N;
  }
  if (j.contains("m") && j.contains("window")) fail(at(path, "window"), "give either m or window");
  if (j.contains("m")) {
    t.m_lo = t.m_hi = as_int(j["m"], at(path, "m"));
    if (t.m_lo < 0) fail(at(path, "m"), "must be non-negative");
  } else if (j.contains("window")) {
    const std::string wp = at(path, "window");
    if (!j["window"].is_array() || j["window"].size() != 2) fail(wp, "expected [m_lo, m_hi]");
    t.m_lo = as_int(j["window"][0], at(wp, 0));
    t.m_hi = as_int(j["window"][1], at(wp, 1));
    if (t.m_lo < 0 || t.m_lo > t.m_hi) fail(wp, "expected 0 <= m_lo <= m_hi");
  } else if (!geometric) {
    fail(at(path, "m"), "missing (or give window)");
  }
  if (j.contains("cover")) {
    const std::string& c = as_string(j["cover"], at(path, "cover"));
    if (c == "copywise")
      t.cover = CoverKind::Copywise;
    else if (c == "inductive")
      t.cover = CoverKind::Inductive;
    else
      fail(at(path, "cover"), "expected \"copywise\" or \"inductive\"");
  }
  if (j.contains("max_page")) {
    t.max_page = as_int(j["max_page"], at(path, "max_page"));
    if (t.max_page < 1) fail(at(path, "max_page"), "must be at least 1");
  }
  if (j.contains("sequences")) {
    const std::string sp = at(path, "sequences");
    t.sequences.clear();
    for (std::size_t i = 0; i < as_array(j["sequences"], sp).size(); ++i) {
      const std::string& s = as_string(j["sequences"][i], at(sp, i));
      if (s != "integral" && s != "forms") fail(at(sp, i), "expected \"integral\" or \"forms\"");
      t.sequences.push_back(s);
    }
  }
  if (t.kind == TaskKind::Twist)
    t.geometry = GeometryKind::Gerbe;
  else if (geometric)
    t.geometry = parse_geometry(require(j, "geometry", path), at(path, "geometry"));
  if (j.contains("denominator_bound")) {
    t.denominator_bound = as_int(j["denominator_bound"], at(path, "denominator_bound"));
    if (t.denominator_bound < 1) fail(at(path, "denominator_bound"), "must be positive");
  }
  if (j.contains("enumerate")) t.search = as_bool(j["enumerate"], at(path, "enumerate"));
  if (j.contains("search")) t.search = as_bool(j["search"], at(path, "search"));
  if (t.kind == TaskKind::Classify) {
    const std::string cp = at(path, "cocycles");
    if (j.contains("cocycles"))
      for (std::size_t i = 0; i < as_array(j["cocycles"], cp).size(); ++i)
        t.cocycles.push_back(parse_payload(j["cocycles"][i], at(cp, i)));
  }
  if (t.kind == TaskKind::Obstruct) t.level0 = parse_payload(require(j, "level0", path), at(path, "level0"));
  if (t.kind == TaskKind::Twist) {
    if (j.contains("base")) t.base = parse_payload(j["base"], at(path, "base"));
    t.gamma = parse_gamma(require(j, "gamma", path), at(path, "gamma"));
  }
  return t;
}

Json task_json(const TaskSpec& t) {
  Json out{{"type", to_string(t.kind)}};
  const bool geometric = t.kind == TaskKind::Classify || t.kind == TaskKind::Obstruct || t.kind == TaskKind::Twist;
  if (geometric) {
    if (t.kind != TaskKind::Twist) out["geometry"] = to_string(t.geometry);
    if (t.geometry_N) out["N"] = *t.geometry_N;
  } else {
    out["N"] = t.N;
    if (t.m_lo == t.m_hi)
      out["m"] = t.m_lo;
    else
      out["window"] = Json::array({t.m_lo, t.m_hi});
  }
  switch (t.kind) {
    case TaskKind::Compute: out["cover"] = t.cover == CoverKind::Copywise ? "copywise" : "inductive"; break;
    case TaskKind::Spectral: out["max_page"] = t.max_page; break;
    case TaskKind::Verify: out["sequences"] = t.sequences; break;
    case TaskKind::Classify: {
      Json cs = Json::array();
      for (const auto& c : t.cocycles) cs.push_back(payload_json(c));
      out["cocycles"] = cs;
      out["enumerate"] = t.search;
      out["denominator_bound"] = t.denominator_bound;
      break;
    }
    case TaskKind::Obstruct:
      out["level0"] = payload_json(t.level0);
      out["search"] = t.search;
      out["denominator_bound"] = t.denominator_bound;
      break;
    case TaskKind::Twist: {
      out["base"] = payload_json(t.base);
      Json g = Json::object();
      if (t.gamma.discrete_torsion) {
        g["discrete_torsion"] = true;
      } else {
        Json v = Json::object();
        for (const auto& [gh, x] : t.gamma.values) v[gh.first + "," + gh.second] = rational_string(x);
        g["values"] = v;
      }
      out["gamma"] = g;
      break;
    }
  }
  return out;
}

std::vector<std::vector<int>> int_matrix(const Json& j, const std::string& path) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) {
    out.emplace_back();
    for (std::size_t k = 0; k < as_array(j[i], at(path, i)).size(); ++k) out.back().push_back(as_int(j[i][k], at(at(path, i), k)));
  }
  return out;
}

}  // namespace

const char* to_string(TaskKind k) {
  switch (k) {
    case TaskKind::Compute: return "compute";
    case TaskKind::Spectral: return "spectral";
    case TaskKind::Verify: return "verify";
    case TaskKind::Classify: return "classify";
    case TaskKind::Obstruct: return "obstruct";
    case TaskKind::Twist: return "twist";
  }
  return "?";
}

Rational parse_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(path, "expected a rational as \"p/q\" or an integer");
  const std::string& s = j.get_ref<const std::string&>();
  const auto slash = s.find('/');
  auto digits = [](const std::string& t, bool sign) {
    std::size_t i = sign && !t.empty() && t[0] == '-' ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  const std::string num = s.substr(0, slash), den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits(num, true) || !digits(den, false)) fail(path, "malformed rational '" + s + "'");
  Integer d(den);
  if (d == 0) fail(path, "zero denominator in '" + s + "'");
  Rational r(Integer(num), d);
  r.canonicalize();
  return r;
}

std::string rational_string(const Rational& r) { return r.get_str(); }

Problem parse_problem(const Json& j) {
  if (!j.is_object()) fail("(root)", "expected an object");
  only_keys(j, {"group", "complex", "action", "task"}, "");
  Problem p;

  const Json& g = require(j, "group", "");
  if (g.is_string()) {
    p.group.preset = g.get<std::string>();
  } else if (g.is_object()) {
    only_keys(g, {"elements", "table"}, "group");
    const Json& el = as_array(require(g, "elements", "group"), "group.elements");
    for (std::size_t i = 0; i < el.size(); ++i) p.group.elements.push_back(as_string(el[i], at("group.elements", i)));
    p.group.table = int_matrix(require(g, "table", "group"), "group.table");
  } else {
    fail("group", "expected a preset name or {elements, table}");
  }

  const Json& c = require(j, "complex", "");
  if (c.is_string()) {
    p.complex.preset = c.get<std::string>();
  } else if (c.is_object()) {
    only_keys(c, {"vertices", "facets"}, "complex");
    const Json& v = require(c, "vertices", "complex");
    std::map<std::string, int> label_index;
    if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        p.complex.labels.push_back(as_string(v[i], at("complex.vertices", i)));
        if (!label_index.emplace(p.complex.labels.back(), static_cast<int>(i)).second)
          fail(at("complex.vertices", i), "duplicate vertex label");
      }
      p.complex.vertices = static_cast<int>(v.size());
    } else {
      p.complex.vertices = as_int(v, "complex.vertices");
      if (p.complex.vertices < 1) fail("complex.vertices", "must be positive");
    }
    const Json& f = as_array(require(c, "facets", "complex"), "complex.facets");
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::string fp = at("complex.facets", i);
      std::vector<int> facet;
      for (std::size_t k = 0; k < as_array(f[i], fp).size(); ++k) {
        const std::string ep = at(fp, k);
        int idx;
        if (f[i][k].is_string()) {
          auto it = label_index.find(f[i][k].get<std::string>());
          if (it == label_index.end()) fail(ep, "unknown vertex label");
          idx = it->second;
        } else {
          idx = as_int(f[i][k], ep);
        }
        if (idx < 0 || idx >= p.complex.vertices) fail(ep, "vertex index out of range");
        for (int seen : facet)
          if (seen == idx) fail(ep, "repeated vertex in a facet");
        facet.push_back(idx);
      }
      if (facet.empty()) fail(fp, "empty facet");
      p.complex.facets.push_back(facet);
    }
  } else {
    fail("complex", "expected a preset name or {vertices, facets}");
  }

  if (j.contains("action")) {
    const Json& a = j["action"];
    if (!a.is_object()) fail("action", "expected an object mapping generator names to vertex permutations");
    for (const auto& [name, perm] : a.items()) {
      const std::string ap = at("action", name);
      std::vector<int> images;
      for (std::size_t k = 0; k < as_array(perm, ap).size(); ++k) images.push_back(as_int(perm[k], at(ap, k)));
      p.action.emplace_back(name, images);
    }
  }
  p.task = parse_task(require(j, "task", ""), "task");
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": not valid JSON (" + std::string(e.what()) + ")");
  }
  return parse_problem(j);
}

Json to_json(const Problem& p) {
  Json out;
  if (!p.group.preset.empty())
    out["group"] = p.group.preset;
  else
    out["group"] = Json{{"elements", p.group.elements}, {"table", p.group.table}};
  if (!p.complex.preset.empty()) {
    out["complex"] = p.complex.preset;
  } else {
    Json c;
    if (p.complex.labels.empty())
      c["vertices"] = p.complex.vertices;
    else
      c["vertices"] = p.complex.labels;
    c["facets"] = p.complex.facets;
    out["complex"] = c;
  }
  if (!p.action.empty()) {
    Json a = Json::object();
    for (const auto& [name, images] : p.action) a[name] = images;
    out["action"] = a;
  }
  out["task"] = task_json(p.task);
  return out;
}

SimplicialAction build_action(const Problem& p) {
  FiniteGroup G;
  try {
    G = p.group.preset.empty() ? FiniteGroup::from_table(p.group.elements, p.group.table)
                               : fixtures::group_preset(p.group.preset);
  } catch (const InputError& e) {
    fail("group", e.what());
  }
  SimplicialComplex X;
  try {
    X = p.complex.preset.empty() ? SimplicialComplex::from_facets(p.complex.facets, p.complex.vertices, p.complex.labels)
                                 : fixtures::complex_preset(p.complex.preset);
  } catch (const InputError& e) {
    fail("complex", e.what());
  }
  std::vector<std::pair<int, std::vector<int>>> gens;
  for (const auto& [name, images] : p.action) {
    const int g = G.index_of(name);
    if (g < 0) fail(at("action", name), "no group element of that name");
    if (static_cast<int>(images.size()) != X.num_vertices())
      fail(at("action", name), "expected " + std::to_string(X.num_vertices()) + " vertex images");
    gens.emplace_back(g, images);
  }
  // Errors from here on already start with "action:".
  const SimplicialAction a =
      gens.empty() ? SimplicialAction::trivial_action(G, X) : SimplicialAction::from_generators(G, X, gens);
  const ActionReport rep = validate_action(a);
  if (!rep.ok()) fail("action", rep.failures.front());
  return a;
}

}  // namespace edc::cli
