#pragma once

#include <optional>

#include "edc/engine.hpp"

namespace edc {

// The two short exact sequences of complexes around F̄(N), in the Z(N+1)-model:
//   Integral: {0 -> A^1 -> ... -> A^N}  ->  F̄(N)  ->  {T -> 0 -> ...}
//   Forms:    {T -> A^1 -> ... -> A^N_cl}  ->  F̄(N)  ->  {0 -> ... -> 0 -> A^{N+1}_cl}
enum class SequenceKind { Integral, Forms };
const char* to_string(SequenceKind k);
SequenceKind parse_sequence_kind(const std::string& s);

struct SequenceTerm {
  std::string name;  // "sub", "total" or "quotient"
  int degree = 0;    // Deligne degree m
  MixedModule computed;
  std::string identification;  // what the independent oracle computes; empty when none applies
  std::optional<MixedModule> expected;
  bool matches() const { return !expected || *expected == computed; }
};

// One spot of the long exact sequence: the image of the incoming map against the kernel of
// the outgoing one, as subgroups of cochains.
struct ExactnessCheck {
  std::string spot;
  int degree = 0;
  bool composite_zero = true;  // image ⊆ kernel
  bool exact = true;           // kernel ⊆ image
  // Generators of one side written in the generators of the other, each re-verified.
  std::vector<Quotient::Witness> image_in_kernel, kernel_in_image;
};

struct ExactSequenceReport {
  SequenceKind kind = SequenceKind::Integral;
  int N = 0, m_lo = 0, m_hi = 0;
  std::vector<SequenceTerm> terms;
  std::vector<ExactnessCheck> checks;
  std::vector<std::string> failures;  // each names the term or spot
  bool ok() const { return failures.empty(); }
};

ExactSequenceReport verify_exact_sequence(const SimplicialAction& a, int N, SequenceKind which, int m_lo, int m_hi,
                                          const EngineOptions& opts = {});

// Restriction of the model to the slots kmin..kmax, a subquotient complex. Slot 1 alone is the
// rational-function model, whose cohomology vanishes in positive degrees.
MixedComplex slot_complex(const Assembly& A, int kmin, int kmax);

// x ⊆ y, treating rational span generators as lines.
bool subgroup_contained(const Subgroup& x, const Subgroup& y);

}  // namespace edc
