#include "paradox/poset.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace paradox {

std::string_view to_string(PosetRelation r) {
  switch (r) {
    case PosetRelation::Less: return "less";
    case PosetRelation::Equal: return "equal";
    case PosetRelation::Greater: return "greater";
    case PosetRelation::Incomparable: return "incomparable";
  }
  return "?";
}

PosetRelation compare(const ParityVector& v, const ParityVector& w) {
  if (v.size() != w.size() || v.ones() != w.ones()) return PosetRelation::Incomparable;
  bool v_below = false;  // some prefix of v is strictly smaller
  bool w_below = false;
  long long sv = 0;
  long long sw = 0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    sv += v[k];
    sw += w[k];
    if (sv < sw) v_below = true;
    if (sw < sv) w_below = true;
    if (v_below && w_below) return PosetRelation::Incomparable;
  }
  if (v_below) return PosetRelation::Less;
  if (w_below) return PosetRelation::Greater;
  return PosetRelation::Equal;
}

std::vector<ParityVector> covers(const ParityVector& v) {
  std::vector<ParityVector> out;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (!v[i] && v[i + 1]) {
      ParityVector w = v;
      w.set(i, true);
      w.set(i + 1, false);
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<std::size_t> HasseDiagram::sources() const {
  std::vector<bool> has_in(nodes.size(), false);
  for (const auto& [lo, hi] : edges) has_in[hi] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!has_in[i]) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> HasseDiagram::sinks() const {
  std::vector<bool> has_out(nodes.size(), false);
  for (const auto& [lo, hi] : edges) has_out[lo] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!has_out[i]) out.push_back(i);
  }
  return out;
}

std::string HasseDiagram::to_dot() const {
  std::ostringstream os;
  os << "digraph parity_vectors_" << length << "_" << ones << " {\n";
  os << "  rankdir=BT;\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    os << "  v" << nodes[i].to_string() << " [label=\"<" << nodes[i].run_length()
       << ">\"];\n";
  }
  for (const auto& [lo, hi] : edges) {
    os << "  v" << nodes[lo].to_string() << " -> v" << nodes[hi].to_string() << ";\n";
  }
  os << "}\n";
  return os.str();
}

HasseDiagram hasse(std::size_t j, std::size_t q, std::size_t cap) {
  if (q > j) throw std::invalid_argument("ones-count exceeds length");
  if (j > cap) {
    throw std::invalid_argument("length " + std::to_string(j) + " exceeds Hasse cap " +
                                std::to_string(cap));
  }
  HasseDiagram d;
  d.length = j;
  d.ones = q;

  // Lexicographic enumeration of weight-q words, starting from 0^{j-q} 1^q.
  std::vector<bool> bits(j, false);
  std::fill(bits.end() - static_cast<std::ptrdiff_t>(q), bits.end(), true);
  do {
    ParityVector v(j);
    for (std::size_t i = 0; i < j; ++i) v.set(i, bits[i]);
    d.nodes.push_back(std::move(v));
  } while (std::next_permutation(bits.begin(), bits.end()));

  std::map<ParityVector, std::size_t> index;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) index.emplace(d.nodes[i], i);
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    for (const ParityVector& up : covers(d.nodes[i])) d.edges.emplace_back(i, index.at(up));
  }
  return d;
}

MonotonicityReport check_remainder_monotonicity(std::size_t j) {
  if (j < 1 || j > 16) throw std::invalid_argument("monotonicity check supports 1 <= j <= 16");
  const std::uint64_t count = std::uint64_t{1} << j;

  struct Residue {
    std::uint64_t n;
    ParityVector v;
    Dyadic e;
  };
  std::vector<std::vector<Residue>> by_weight(j + 1);
  for (std::uint64_t n = 1; n <= count; ++n) {
    const Trajectory t = trajectory(Natural(n), j, Formalism::Shortcut);
    ParityVector v(j);
    for (std::size_t k = 0; k < j; ++k) v.set(k, mpz_odd_p(t.iterates[k].get_mpz_t()));
    by_weight[v.ones()].push_back({n, std::move(v), t.final_form().remainder});
  }

  MonotonicityReport report;
  report.length = j;
  for (const auto& group : by_weight) {
    for (const Residue& a : group) {
      for (const Residue& b : group) {
        if (compare(a.v, b.v) != PosetRelation::Less) continue;
        ++report.ordered_pairs;
        if (!(a.e > b.e)) report.violations.push_back({a.n, b.n, a.e, b.e});
      }
    }
  }
  return report;
}

}  // namespace paradox
