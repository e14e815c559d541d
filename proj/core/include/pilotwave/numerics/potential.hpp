#pragma once

#include <cstddef>
#include <span>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "pilotwave/numerics/grid.hpp"

namespace pilotwave {

struct FreePotential {};

// ½ ω² |x|².
struct HarmonicPotential {
  double omega = 1.0;
};

// Zero inside [left, right] along the first axis, `height` outside. A large
// finite wall stands in for the hard box so one solver handles every case.
struct BoxPotential {
  double left = 0.0;
  double right = 1.0;
  double height = 1e6;
};

enum class FieldOrientation { kNormal = 1, kReversed = -1 };

// Impulsive Stern-Gerlach coupling V = -s·λ·z·σ_z for t in [0, window], zero
// afterwards; s = +1 for the normal field gradient and -1 when reversed. The
// spin-up component is pushed towards +z in the normal orientation.
struct SternGerlachPotential {
  double coupling = 1.0;
  double window = 1.0;
  FieldOrientation orientation = FieldOrientation::kNormal;
};

// Tabulated values per node, either shared by all components or one table
// per spinor component (diagonal coupling).
struct TabulatedPotential {
  std::vector<std::vector<double>> values;
};

class Potential {
 public:
  using Kind = std::variant<FreePotential, HarmonicPotential, BoxPotential, SternGerlachPotential,
                            TabulatedPotential>;

  Potential() = default;
  // Implicit from any alternative, so FreePotential{} etc. can be passed
  // where a Potential is expected.
  template <class K>
    requires(!std::is_same_v<std::remove_cvref_t<K>, Potential> && std::is_constructible_v<Kind, K &&>)
  Potential(K&& kind) : kind_(std::forward<K>(kind)) {}  // NOLINT(google-explicit-constructor)

  const Kind& kind() const noexcept { return kind_; }
  bool time_dependent() const noexcept;
  // True when V vanishes identically at time t.
  bool free_at(double t) const noexcept;
  // Number of spinor components the potential distinguishes (1 or 2).
  std::size_t components() const noexcept;

  // Values of the (diagonal) potential for one component at time t.
  void evaluate(const Grid& grid, double t, std::size_t component, std::span<double> out) const;
  std::vector<double> evaluate(const Grid& grid, double t, std::size_t component) const;

  // max |V| over the grid and over all times the potential can take.
  double max_abs(const Grid& grid) const;

  // Throws InvalidArgument if this potential cannot act on a field with the
  // given grid and component count.
  void check_compatible(const Grid& grid, std::size_t components) const;

 private:
  Kind kind_{FreePotential{}};
};

}  // namespace pilotwave
