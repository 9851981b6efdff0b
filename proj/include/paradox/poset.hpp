#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "paradox/core.hpp"
#include "paradox/parity_vector.hpp"

namespace paradox {

enum class PosetRelation { Less, Equal, Greater, Incomparable };

std::string_view to_string(PosetRelation r);

// Unordered majorization: V <= W iff both have the same length and weight and
// every proper prefix sum of V is at most the matching prefix sum of W.
PosetRelation compare(const ParityVector& v, const ParityVector& w);

// Upper covers of v: every vector obtained by turning one adjacent "01" into "10".
std::vector<ParityVector> covers(const ParityVector& v);

inline constexpr std::size_t kDefaultHasseCap = 16;

struct HasseDiagram {
  std::size_t length = 0;
  std::size_t ones = 0;
  std::vector<ParityVector> nodes;                      // lexicographic order
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (lower, upper)

  std::vector<std::size_t> sources() const;
  std::vector<std::size_t> sinks() const;
  // Graphviz text: one node per vector labelled in run-length form, one edge per cover.
  std::string to_dot() const;
};

// All C(j, q) vectors of length j with q ones, linked by the covering
// relation. Throws std::invalid_argument if q > j or j exceeds the cap.
HasseDiagram hasse(std::size_t j, std::size_t q, std::size_t cap = kDefaultHasseCap);

struct MonotonicityViolation {
  std::uint64_t lower;  // V_j(lower) strictly precedes V_j(upper)
  std::uint64_t upper;
  Dyadic lower_remainder;
  Dyadic upper_remainder;
};

struct MonotonicityReport {
  std::size_t length = 0;
  std::uint64_t ordered_pairs = 0;
  std::vector<MonotonicityViolation> violations;
};

// Over all residues 1..2^j: whenever V_j(m) < V_j(n), checks E_j(m) > E_j(n).
MonotonicityReport check_remainder_monotonicity(std::size_t j);

}  // namespace paradox
