#include "pilotwave/hilbert/mermin.hpp"

#include <algorithm>
#include <chrono>

namespace pilotwave {

const Pauli& pauli() {
  static const Pauli p = [] {
    const std::complex<double> i{0.0, 1.0};
    Pauli out;
    out.i = Matrix::Identity(2, 2);
    out.x = Matrix::Zero(2, 2);
    out.y = Matrix::Zero(2, 2);
    out.z = Matrix::Zero(2, 2);
    out.x(0, 1) = out.x(1, 0) = 1.0;
    out.y(0, 1) = -i;
    out.y(1, 0) = i;
    out.z(0, 0) = 1.0;
    out.z(1, 1) = -1.0;
    return out;
  }();
  return p;
}

const MerminSquare& mermin_square() {
  static const MerminSquare sq = [] {
    const auto& p = pauli();
    MerminSquare s;
    s.ops = {kron(p.x, p.i), kron(p.i, p.x), kron(p.x, p.x),  //
             kron(p.i, p.z), kron(p.z, p.i), kron(p.z, p.z),  //
             kron(p.x, p.z), kron(p.z, p.x), kron(p.y, p.y)};
    s.names = {"XI", "IX", "XX", "IZ", "ZI", "ZZ", "XZ", "ZX", "YY"};
    return s;
  }();
  return sq;
}

namespace {

std::array<std::array<int, 3>, 6> lines(const MerminLabeling& lab) {
  // Cell (r, c) of the relabeled square holds original cell (rows[r], cols[c]),
  // or the transpose of that.
  auto cell = [&](int r, int c) {
    int rr = lab.rows[static_cast<std::size_t>(r)], cc = lab.cols[static_cast<std::size_t>(c)];
    if (lab.transpose) std::swap(rr, cc);
    return rr * 3 + cc;
  };
  std::array<std::array<int, 3>, 6> out{};
  for (int k = 0; k < 3; ++k) {
    out[static_cast<std::size_t>(k)] = {cell(k, 0), cell(k, 1), cell(k, 2)};
    out[static_cast<std::size_t>(k + 3)] = {cell(0, k), cell(1, k), cell(2, k)};
  }
  return out;
}

}  // namespace

ContradictionReport mermin_square_check(const MerminLabeling& lab) {
  for (const auto* perm : {&lab.rows, &lab.cols}) {
    auto s = *perm;
    std::sort(s.begin(), s.end());
    if (s != std::array<int, 3>{0, 1, 2}) throw InvalidArgument("relabeling must be a permutation of 0, 1, 2");
  }
  const auto start = std::chrono::steady_clock::now();
  const auto& sq = mermin_square();
  const auto ls = lines(lab);
  ContradictionReport rep;

  for (const auto& m : sq.ops) rep.max_hermiticity = std::max(rep.max_hermiticity, max_abs(m - m.adjoint()));
  bool signs_ok = true;
  const Matrix id = Matrix::Identity(4, 4);
  for (std::size_t k = 0; k < 6; ++k) {
    const auto& l = ls[k];
    const Matrix& a = sq.ops[static_cast<std::size_t>(l[0])];
    const Matrix& b = sq.ops[static_cast<std::size_t>(l[1])];
    const Matrix& c = sq.ops[static_cast<std::size_t>(l[2])];
    rep.max_commutator =
        std::max({rep.max_commutator, commutator_norm(a, b), commutator_norm(b, c), commutator_norm(a, c)});
    const Matrix prod = a * b * c;
    const int s = prod(0, 0).real() >= 0.0 ? 1 : -1;
    rep.product_signs[k] = s;
    const double res = max_abs(prod - static_cast<double>(s) * id);
    rep.max_product_residual = std::max(rep.max_product_residual, res);
    signs_ok = signs_ok && res < 1e-12;
  }
  rep.operators_ok = signs_ok && rep.max_commutator < 1e-12 && rep.max_hermiticity < 1e-12;

  for (std::uint32_t bits = 0; bits < 512; ++bits) {
    std::array<int, 9> v{};
    for (int i = 0; i < 9; ++i) v[static_cast<std::size_t>(i)] = (bits >> i) & 1u ? -1 : 1;
    std::array<bool, 6> ok{};
    int met = 0;
    for (std::size_t k = 0; k < 6; ++k) {
      const auto& l = ls[k];
      const int p = v[static_cast<std::size_t>(l[0])] * v[static_cast<std::size_t>(l[1])] * v[static_cast<std::size_t>(l[2])];
      ok[k] = p == rep.product_signs[k];
      met += ok[k];
    }
    if (met == 6) ++rep.satisfying_all;
    for (std::size_t k = 0; k < 6; ++k) {
      if (met - static_cast<int>(ok[k]) == 5) {
        if (rep.satisfying_without[k]++ == 0) rep.five_witness[k] = v;
      }
    }
  }
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

nlohmann::ordered_json to_json(const ContradictionReport& r, bool include_timing) {
  const auto& sq = mermin_square();
  nlohmann::ordered_json j;
  j["operators"] = sq.names;
  j["row_signs"] = {r.product_signs[0], r.product_signs[1], r.product_signs[2]};
  j["column_signs"] = {r.product_signs[3], r.product_signs[4], r.product_signs[5]};
  j["max_commutator"] = r.max_commutator;
  j["max_product_residual"] = r.max_product_residual;
  j["operators_ok"] = r.operators_ok;
  j["assignments"] = r.assignments;
  j["satisfying_all"] = r.satisfying_all;
  j["satisfying_without"] = r.satisfying_without;
  j["five_witness"] = r.five_witness;
  j["contradiction"] = r.contradiction();
  if (include_timing) j["elapsed"] = r.elapsed_seconds;
  return j;
}

}  // namespace pilotwave
