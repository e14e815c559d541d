#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "pilotwave/hilbert/linalg.hpp"

namespace pilotwave {

inline constexpr double kRayTol = 1e-10;

class IncompleteAssignment : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Value 0 on a ray u means v(S_u²) = 0, i.e. the ray is the one picked out
// of its triad. A triad takes exactly one 0 (sum rule S_u² + S_v² + S_w² = 2);
// an orthogonal pair outside every triad takes at most one 0 (complete it to
// a triad with u × v).
struct ContextHypergraph {
  std::size_t nodes = 0;
  std::vector<Eigen::Vector3d> rays;  // empty for an abstract node set
  std::vector<std::array<std::size_t, 3>> triads;
  std::vector<std::array<std::size_t, 2>> pairs;

  bool geometric() const noexcept { return !rays.empty(); }
  // Index ranges, distinct members, unit rays, orthogonality within kRayTol.
  void validate() const;
};

ContextHypergraph abstract_hypergraph(std::size_t nodes, std::vector<std::array<std::size_t, 3>> triads,
                                      std::vector<std::array<std::size_t, 2>> pairs = {});

// Normalizes, merges rays equal up to sign, and derives every mutually
// orthogonal triple and every orthogonal pair not covered by a triple.
ContextHypergraph derive_contexts(const std::vector<Eigen::Vector3d>& rays);

// The 33 rays with normalized components built from {0, ±1, ±√2}.
std::vector<Eigen::Vector3d> peres33_rays();
ContextHypergraph peres33();

// Text format: three reals per ray line, `#` comments, optional
// `[contexts]` section listing 0-based ray indices (3 per triad, 2 per pair).
ContextHypergraph read_ray_file(std::istream& in);
ContextHypergraph read_ray_file(const std::string& path);
void write_ray_file(std::ostream& out, const ContextHypergraph& hg);

// Entries are 0, 1, or −1 for unassigned.
using ValueAssignment = std::vector<int>;

struct Violation {
  std::string kind;  // "triad", "pair", "eigenvalue", "product", "sum"
  std::vector<std::size_t> members;
  std::string detail;
};

// Throws IncompleteAssignment when any node is unassigned.
std::vector<Violation> check_value_map(const ValueAssignment& values, const ContextHypergraph& hg);

// Operator form: v(A) must be an eigenvalue; for each supplied relation on a
// commuting pair the product rule v(A)v(B) = s·v(C) with AB = sC, or the sum
// rule v(A) + v(B) = v(C) with A + B = C.
struct OperatorRelation {
  enum class Kind { kProduct, kSum } kind = Kind::kProduct;
  std::size_t a = 0, b = 0, c = 0;
  int sign = 1;
};

std::vector<Violation> check_value_map(const std::vector<std::optional<double>>& values,
                                       const std::vector<HermitianOperator>& ops,
                                       const std::vector<OperatorRelation>& relations, double tol = 1e-9);

struct SearchOptions {
  bool count_all = false;  // enumerate every satisfying assignment
  bool parallel = false;   // split the first branching level across threads
  unsigned threads = 0;
};

struct SearchStats {
  std::uint64_t nodes_visited = 0;
  std::uint64_t conflicts = 0;
  std::size_t max_depth = 0;
  double elapsed_seconds = 0.0;
};

struct SearchResult {
  bool satisfiable = false;
  ValueAssignment witness;  // filled when satisfiable
  std::uint64_t solutions = 0;  // complete assignments, valid when count_all
  SearchStats stats;
  const char* verdict() const noexcept { return satisfiable ? "Satisfiable" : "Unsatisfiable"; }
};

// Exhaustive backtracking with unit propagation, branching on the open triad
// with the fewest unassigned rays. Unsatisfiable only after the whole tree.
SearchResult ks_search(const ContextHypergraph& hg, const SearchOptions& options = {});

nlohmann::ordered_json to_json(const SearchResult& r, bool include_timing = true);

}  // namespace pilotwave
