#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "edc/assembly.hpp"
#include "edc/geometry.hpp"

namespace edc::cli {

using Json = nlohmann::ordered_json;

// Either a preset name or an explicit multiplication table.
struct GroupSpec {
  std::string preset;
  std::vector<std::string> elements;
  std::vector<std::vector<int>> table;
};

// Either a preset name or facets over vertices 0..n-1 (optionally labelled).
struct ComplexSpec {
  std::string preset;
  int vertices = -1;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> facets;
};

// Cocycle input of the geometry tasks.
struct CochainPayload {
  enum class Kind { Zero, Coordinates, Form, Blocks };
  Kind kind = Kind::Zero;
  std::vector<Rational> values;  // Coordinates, Form
  std::vector<std::pair<SlotKey, std::vector<Rational>>> blocks;
};

struct GammaPayload {
  bool discrete_torsion = false;
  std::vector<std::pair<std::pair<std::string, std::string>, Rational>> values;  // (g, h) -> γ(g, h)
};

enum class TaskKind { Compute, Spectral, Verify, Classify, Obstruct, Twist };
const char* to_string(TaskKind k);

struct TaskSpec {
  TaskKind kind = TaskKind::Compute;
  int N = 1;
  int m_lo = 0, m_hi = 0;
  CoverKind cover = CoverKind::Copywise;
  int max_page = 3;                 // spectral
  std::vector<std::string> sequences{"integral", "forms"};  // verify
  GeometryKind geometry = GeometryKind::Bundle;  // classify, obstruct, twist
  std::optional<int> geometry_N;    // N of the geometry model; default degree + 1
  int denominator_bound = 8;
  bool search = false;              // classify: bounded enumeration; obstruct: bounded extension search
  std::vector<CochainPayload> cocycles;  // classify
  CochainPayload level0;                 // obstruct
  CochainPayload base;                   // twist
  GammaPayload gamma;                    // twist
};

struct Problem {
  GroupSpec group;
  ComplexSpec complex;
  std::vector<std::pair<std::string, std::vector<int>>> action;  // generator name -> vertex images
  TaskSpec task;
};

// Throws InputError("<field path>: <reason>") on schema violations.
Problem parse_problem(const Json& j);
Problem load_problem(const std::string& path);
// Canonical serialization; parse_problem(to_json(p)) reproduces p.
Json to_json(const Problem& p);

// The action described by the file, checked for the simplicial identities.
SimplicialAction build_action(const Problem& p);

Rational parse_rational(const Json& j, const std::string& path);
std::string rational_string(const Rational& r);

}  // namespace edc::cli
