#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pilotwave/hilbert/linalg.hpp"

namespace pilotwave {

// Pauli matrices and the 2×2 identity.
struct Pauli {
  Matrix i, x, y, z;
};
const Pauli& pauli();

// 3×3 grid of two-qubit observables, row-major:
//   X⊗I  I⊗X  X⊗X
//   I⊗Z  Z⊗I  Z⊗Z
//   X⊗Z  Z⊗X  Y⊗Y
struct MerminSquare {
  std::array<Matrix, 9> ops;
  std::array<std::string, 9> names;
};
const MerminSquare& mermin_square();

// Optional relabeling: rows and columns permuted, then optionally transposed.
struct MerminLabeling {
  std::array<int, 3> rows{0, 1, 2};
  std::array<int, 3> cols{0, 1, 2};
  bool transpose = false;
};

struct ContradictionReport {
  // Constraint order: rows 0..2 then columns 0..2. Signs are read off the
  // operator products, not assumed.
  std::array<int, 6> product_signs{};
  double max_commutator = 0.0;      // over all commuting pairs within a line
  double max_product_residual = 0.0;  // ‖ABC − s·I‖
  double max_hermiticity = 0.0;
  bool operators_ok = false;
  std::uint32_t assignments = 512;
  std::uint32_t satisfying_all = 0;
  // satisfying[k]: assignments meeting every constraint except k.
  std::array<std::uint32_t, 6> satisfying_without{};
  // A ±1 witness for each five-constraint subset (0 when none exists).
  std::array<std::array<int, 9>, 6> five_witness{};
  double elapsed_seconds = 0.0;

  bool contradiction() const noexcept { return operators_ok && satisfying_all == 0; }
};

ContradictionReport mermin_square_check(const MerminLabeling& labeling = {});

nlohmann::ordered_json to_json(const ContradictionReport& r, bool include_timing = true);

}  // namespace pilotwave
