#include "pilotwave/hilbert/kochen_specker.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "pilotwave/text.hpp"

namespace pilotwave {

namespace {

bool same_ray(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return (a - b).norm() < kRayTol || (a + b).norm() < kRayTol;
}

bool orthogonal(const Eigen::Vector3d& a, const Eigen::Vector3d& b) { return std::abs(a.dot(b)) < kRayTol; }

// Merges ±duplicates; returns the node index of every input ray.
std::vector<std::size_t> merge_rays(const std::vector<Eigen::Vector3d>& in, std::vector<Eigen::Vector3d>& out) {
  std::vector<std::size_t> index;
  index.reserve(in.size());
  for (const auto& raw : in) {
    if (!raw.allFinite() || raw.norm() < 1e-12) throw InvalidArgument("ray must be finite and nonzero");
    const Eigen::Vector3d r = raw.normalized();
    std::size_t k = 0;
    while (k < out.size() && !same_ray(out[k], r)) ++k;
    if (k == out.size()) out.push_back(r);
    index.push_back(k);
  }
  return index;
}

template <std::size_t K>
std::array<std::size_t, K> sorted(std::array<std::size_t, K> a) {
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace

void ContextHypergraph::validate() const {
  if (geometric() && rays.size() != nodes) throw InvalidArgument("ray count does not match node count");
  for (const auto& r : rays) {
    if (!(std::abs(r.norm() - 1.0) < kRayTol)) throw InvalidArgument("ray is not unit norm");
  }
  auto check = [&](const auto& members) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (members[i] >= nodes) throw InvalidArgument("context refers to a missing ray");
      for (std::size_t j = 0; j < i; ++j) {
        if (members[i] == members[j]) throw InvalidArgument("context repeats a ray");
        if (geometric() && !orthogonal(rays[members[i]], rays[members[j]]))
          throw InvalidArgument("context rays are not mutually orthogonal");
      }
    }
  };
  for (const auto& t : triads) check(t);
  for (const auto& p : pairs) check(p);
}

ContextHypergraph abstract_hypergraph(std::size_t nodes, std::vector<std::array<std::size_t, 3>> triads,
                                      std::vector<std::array<std::size_t, 2>> pairs) {
  ContextHypergraph hg;
  hg.nodes = nodes;
  hg.triads = std::move(triads);
  hg.pairs = std::move(pairs);
  hg.validate();
  return hg;
}

ContextHypergraph derive_contexts(const std::vector<Eigen::Vector3d>& input) {
  ContextHypergraph hg;
  merge_rays(input, hg.rays);
  const std::size_t n = hg.rays.size();
  hg.nodes = n;
  std::vector<std::vector<char>> orth(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) orth[i][j] = orth[j][i] = orthogonal(hg.rays[i], hg.rays[j]);
  std::vector<std::vector<char>> covered(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!orth[i][j]) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (orth[i][k] && orth[j][k]) {
          hg.triads.push_back({i, j, k});
          covered[i][j] = covered[i][k] = covered[j][k] = 1;
        }
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (orth[i][j] && !covered[i][j]) hg.pairs.push_back({i, j});
  hg.validate();
  return hg;
}

std::vector<Eigen::Vector3d> peres33_rays() {
  const double r2 = std::sqrt(2.0);
  const std::array<double, 5> vals{0.0, 1.0, -1.0, r2, -r2};
  std::vector<Eigen::Vector3d> rays;
  for (double a : vals)
    for (double b : vals)
      for (double c : vals) {
        const Eigen::Vector3d v(a, b, c);
        int zeros = 0, ones = 0, roots = 0;
        for (int i = 0; i < 3; ++i) {
          const double m = std::abs(v[i]);
          if (m == 0.0) ++zeros;
          else if (m == 1.0) ++ones;
          else ++roots;
        }
        // Admissible patterns: (1,0,0), (1,1,0), (1,√2,0), (1,1,√2) up to
        // order and signs.
        const bool ok = (zeros == 2 && ones == 1) || (zeros == 1 && ones == 2) ||
                        (zeros == 1 && ones == 1 && roots == 1) || (zeros == 0 && ones == 2 && roots == 1);
        if (!ok) continue;
        const Eigen::Vector3d u = v.normalized();
        if (std::none_of(rays.begin(), rays.end(), [&](const auto& w) { return same_ray(u, w); })) rays.push_back(u);
      }
  return rays;
}

ContextHypergraph peres33() { return derive_contexts(peres33_rays()); }

ContextHypergraph read_ray_file(std::istream& in) {
  std::vector<Eigen::Vector3d> raw;
  std::vector<std::vector<std::size_t>> contexts;
  bool in_contexts = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    const std::string where = "ray file line " + std::to_string(lineno);
    if (tok.size() == 1 && tok[0] == "[contexts]") {
      if (in_contexts) throw InvalidArgument(where + ": duplicate [contexts] section");
      in_contexts = true;
      continue;
    }
    if (!in_contexts) {
      if (tok.size() != 3) throw InvalidArgument(where + ": expected three components");
      Eigen::Vector3d r;
      for (int i = 0; i < 3; ++i)
        if (!parse_double(tok[static_cast<std::size_t>(i)], r[i])) throw InvalidArgument(where + ": bad number");
      raw.push_back(r);
    } else {
      if (tok.size() != 2 && tok.size() != 3) throw InvalidArgument(where + ": a context lists 2 or 3 ray indices");
      std::vector<std::size_t> c;
      for (const auto& t : tok) {
        std::size_t v = 0;
        auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (res.ec != std::errc() || res.ptr != t.data() + t.size()) throw InvalidArgument(where + ": bad index");
        c.push_back(v);
      }
      contexts.push_back(std::move(c));
    }
  }
  if (raw.empty()) throw InvalidArgument("ray file has no rays");
  if (!in_contexts) return derive_contexts(raw);

  ContextHypergraph hg;
  const auto index = merge_rays(raw, hg.rays);
  hg.nodes = hg.rays.size();
  for (const auto& c : contexts) {
    for (auto i : c)
      if (i >= raw.size()) throw InvalidArgument("context index " + std::to_string(i) + " out of range");
    if (c.size() == 3) {
      const auto t = sorted(std::array<std::size_t, 3>{index[c[0]], index[c[1]], index[c[2]]});
      if (std::find(hg.triads.begin(), hg.triads.end(), t) == hg.triads.end()) hg.triads.push_back(t);
    } else {
      const auto p = sorted(std::array<std::size_t, 2>{index[c[0]], index[c[1]]});
      if (std::find(hg.pairs.begin(), hg.pairs.end(), p) == hg.pairs.end()) hg.pairs.push_back(p);
    }
  }
  hg.validate();
  return hg;
}

ContextHypergraph read_ray_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open ray file " + path);
  return read_ray_file(in);
}

void write_ray_file(std::ostream& out, const ContextHypergraph& hg) {
  if (!hg.geometric()) throw InvalidArgument("abstract hypergraph has no rays to write");
  out << "# " << hg.rays.size() << " rays, " << hg.triads.size() << " triads, " << hg.pairs.size() << " pairs\n";
  for (const auto& r : hg.rays)
    out << format_double(r.x()) << ' ' << format_double(r.y()) << ' ' << format_double(r.z()) << '\n';
  out << "[contexts]\n";
  for (const auto& t : hg.triads) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& p : hg.pairs) out << p[0] << ' ' << p[1] << '\n';
}

std::vector<Violation> check_value_map(const ValueAssignment& values, const ContextHypergraph& hg) {
  if (values.size() != hg.nodes) throw InvalidArgument("assignment size does not match the ray count");
  std::vector<Violation> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == -1) throw IncompleteAssignment("ray " + std::to_string(i) + " has no value");
    if (values[i] != 0 && values[i] != 1)
      out.push_back({"eigenvalue", {i}, "value " + std::to_string(values[i]) + " is not an eigenvalue of S^2 (0 or 1)"});
  }
  for (const auto& t : hg.triads) {
    const int zeros = (values[t[0]] == 0) + (values[t[1]] == 0) + (values[t[2]] == 0);
    const int ones = (values[t[0]] == 1) + (values[t[1]] == 1) + (values[t[2]] == 1);
    if (zeros != 1 || ones != 2) {
      out.push_back({"triad",
                     {t[0], t[1], t[2]},
                     "values (" + std::to_string(values[t[0]]) + "," + std::to_string(values[t[1]]) + "," +
                         std::to_string(values[t[2]]) + ") are not a permutation of (1,1,0)"});
    }
  }
  for (const auto& p : hg.pairs) {
    if (values[p[0]] == 0 && values[p[1]] == 0) out.push_back({"pair", {p[0], p[1]}, "orthogonal rays both valued 0"});
  }
  return out;
}

std::vector<Violation> check_value_map(const std::vector<std::optional<double>>& values,
                                       const std::vector<HermitianOperator>& ops,
                                       const std::vector<OperatorRelation>& relations, double tol) {
  if (values.size() != ops.size()) throw InvalidArgument("assignment size does not match the operator count");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!values[i]) throw IncompleteAssignment("operator " + std::to_string(i) + " has no value");
  std::vector<Violation> out;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const Eigensystem es = eigendecompose(ops[i]);
    const double v = *values[i];
    const bool hit = (es.values.array() - v).abs().minCoeff() < tol;
    if (!hit) out.push_back({"eigenvalue", {i}, "value " + format_double(v) + " is not an eigenvalue"});
  }
  for (const auto& r : relations) {
    if (r.a >= ops.size() || r.b >= ops.size() || r.c >= ops.size())
      throw InvalidArgument("relation refers to a missing operator");
    const Matrix& a = ops[r.a].matrix();
    const Matrix& b = ops[r.b].matrix();
    const Matrix& c = ops[r.c].matrix();
    if (a.rows() != b.rows() || a.rows() != c.rows()) throw InvalidArgument("relation mixes dimensions");
    if (commutator_norm(a, b) > tol) throw InvalidArgument("relation on a non-commuting pair");
    const double va = *values[r.a], vb = *values[r.b], vc = *values[r.c];
    if (r.kind == OperatorRelation::Kind::kProduct) {
      if (r.sign != 1 && r.sign != -1) throw InvalidArgument("product relation sign must be +1 or -1");
      if (max_abs(a * b - static_cast<double>(r.sign) * c) > tol)
        throw InvalidArgument("product relation does not hold as an operator identity");
      if (std::abs(va * vb - r.sign * vc) > tol)
        out.push_back({"product", {r.a, r.b, r.c}, "v(A)v(B) differs from v(AB)"});
    } else {
      if (max_abs(a + b - c) > tol) throw InvalidArgument("sum relation does not hold as an operator identity");
      if (std::abs(va + vb - vc) > tol) out.push_back({"sum", {r.a, r.b, r.c}, "v(A)+v(B) differs from v(A+B)"});
    }
  }
  return out;
}

namespace {

class Solver {
 public:
  Solver(const ContextHypergraph& hg, bool count_all) : hg_(hg), count_all_(count_all) {
    triads_of_.resize(hg.nodes);
    partners_.resize(hg.nodes);
    for (std::size_t t = 0; t < hg.triads.size(); ++t)
      for (auto n : hg.triads[t]) triads_of_[n].push_back(t);
    for (const auto& p : hg.pairs) {
      partners_[p[0]].push_back(p[1]);
      partners_[p[1]].push_back(p[0]);
    }
    values_.assign(hg.nodes, -1);
  }

  // Assigns and propagates; on conflict everything set here is undone.
  bool decide(std::size_t node, int value) {
    const std::size_t mark = trail_.size();
    if (set(node, value) && propagate()) return true;
    undo(mark);
    return false;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      values_[trail_.back()] = -1;
      trail_.pop_back();
    }
    queue_.clear();
  }

  std::size_t trail_size() const { return trail_.size(); }

  // Branch alternatives at the current node; empty means a leaf.
  std::vector<std::pair<std::size_t, int>> branches() const {
    std::size_t best = hg_.triads.size(), best_open = 4;
    for (std::size_t t = 0; t < hg_.triads.size(); ++t) {
      int open = 0;
      bool has_zero = false;
      for (auto n : hg_.triads[t]) {
        open += values_[n] == -1;
        has_zero = has_zero || values_[n] == 0;
      }
      if (open > 0 && !has_zero && static_cast<std::size_t>(open) < best_open) {
        best = t;
        best_open = static_cast<std::size_t>(open);
      }
    }
    std::vector<std::pair<std::size_t, int>> out;
    if (best < hg_.triads.size()) {
      for (auto n : hg_.triads[best])
        if (values_[n] == -1) out.push_back({n, 0});
      return out;
    }
    for (std::size_t n = 0; n < hg_.nodes; ++n) {
      if (values_[n] != -1) continue;
      for (auto m : partners_[n]) {
        if (values_[m] == -1) return {{n, 0}, {n, 1}};
      }
    }
    return out;
  }

  // Returns true to stop the search.
  bool search(std::size_t depth) {
    ++stats.nodes_visited;
    stats.max_depth = std::max(stats.max_depth, depth);
    const auto alts = branches();
    if (alts.empty()) return leaf();
    for (const auto& [node, value] : alts) {
      const std::size_t mark = trail_.size();
      if (!decide(node, value)) {
        ++stats.conflicts;
        continue;
      }
      if (search(depth + 1)) return true;
      undo(mark);
    }
    return false;
  }

  SearchStats stats;
  std::uint64_t solutions = 0;
  ValueAssignment witness;

 private:
  bool leaf() {
    // Every triad is resolved and no pair has two open ends, so the
    // remaining rays are unconstrained.
    const auto open = static_cast<std::size_t>(std::count(values_.begin(), values_.end(), -1));
    if (witness.empty()) {
      witness = values_;
      for (auto& v : witness)
        if (v == -1) v = 1;
    }
    solutions += std::uint64_t{1} << open;
    return !count_all_;
  }

  bool set(std::size_t node, int value) {
    if (values_[node] == value) return true;
    if (values_[node] != -1) return false;
    values_[node] = value;
    trail_.push_back(node);
    queue_.push_back(node);
    return true;
  }

  bool propagate() {
    while (!queue_.empty()) {
      const std::size_t n = queue_.back();
      queue_.pop_back();
      for (auto t : triads_of_[n]) {
        int zeros = 0, open = 0;
        for (auto m : hg_.triads[t]) {
          zeros += values_[m] == 0;
          open += values_[m] == -1;
        }
        if (zeros > 1 || (zeros == 0 && open == 0)) return false;
        for (auto m : hg_.triads[t]) {
          if (values_[m] != -1) continue;
          if (zeros == 1 && !set(m, 1)) return false;
          if (zeros == 0 && open == 1 && !set(m, 0)) return false;
        }
      }
      if (values_[n] == 0) {
        for (auto m : partners_[n])
          if (!set(m, 1)) return false;
      }
    }
    return true;
  }

  const ContextHypergraph& hg_;
  bool count_all_;
  std::vector<std::vector<std::size_t>> triads_of_;
  std::vector<std::vector<std::size_t>> partners_;
  ValueAssignment values_;
  std::vector<std::size_t> trail_;
  std::vector<std::size_t> queue_;
};

}  // namespace

SearchResult ks_search(const ContextHypergraph& hg, const SearchOptions& options) {
  hg.validate();
  if (options.count_all && hg.nodes > 63) throw InvalidArgument("counting mode supports at most 63 rays");
  const auto start = std::chrono::steady_clock::now();
  SearchResult result;

  if (!options.parallel) {
    Solver s(hg, options.count_all);
    s.search(0);
    result.stats = s.stats;
    result.solutions = s.solutions;
    result.witness = s.witness;
  } else {
    Solver root(hg, options.count_all);
    const auto alts = root.branches();
    result.stats.nodes_visited = 1;
    if (alts.empty()) {
      root.search(0);
      result.stats = root.stats;
      result.solutions = root.solutions;
      result.witness = root.witness;
    } else {
      std::vector<Solver> subs(alts.size(), root);
      std::vector<char> rejected(alts.size(), 0);
      const unsigned hw = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
      const std::size_t workers = std::min<std::size_t>(hw, alts.size());
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t i = w; i < alts.size(); i += workers) {
            if (!subs[i].decide(alts[i].first, alts[i].second)) {
              rejected[i] = 1;
              continue;
            }
            subs[i].search(1);
          }
        });
      }
      for (auto& t : pool) t.join();
      for (std::size_t i = 0; i < alts.size(); ++i) {
        result.stats.conflicts += subs[i].stats.conflicts + static_cast<std::uint64_t>(rejected[i]);
        result.stats.nodes_visited += subs[i].stats.nodes_visited;
        result.stats.max_depth = std::max(result.stats.max_depth, subs[i].stats.max_depth);
        result.solutions += subs[i].solutions;
        if (result.witness.empty() && !subs[i].witness.empty()) result.witness = subs[i].witness;
      }
    }
  }
  result.satisfiable = !result.witness.empty();
  if (!options.count_all) result.solutions = result.satisfiable ? 1 : 0;
  result.stats.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

nlohmann::ordered_json to_json(const SearchResult& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["verdict"] = r.verdict();
  j["witness"] = r.satisfiable ? nlohmann::ordered_json(r.witness) : nlohmann::ordered_json(nullptr);
  j["solutions"] = r.solutions;
  j["nodes_visited"] = r.stats.nodes_visited;
  j["conflicts"] = r.stats.conflicts;
  j["max_depth"] = r.stats.max_depth;
  if (include_timing) j["elapsed"] = r.stats.elapsed_seconds;
  return j;
}

}  // namespace pilotwave
