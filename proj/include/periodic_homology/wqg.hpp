#pragma once

// Weighted quotient graphs of d-periodic graphs: weight lattices, H_0 and
// H_1 generators of the periodic graph, and Betti numbers of finite windows.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "periodic_homology/errors.hpp"
#include "periodic_homology/lattice_algebra.hpp"

namespace periodic_homology {

struct WqgEdge {
  std::string id;
  std::size_t tail = 0;
  std::size_t head = 0;
  ZVector weight;
};

class WeightedQuotientGraph {
 public:
  WeightedQuotientGraph() = default;

  /// Edges given as (id, tail, head, weight) with vertex indices. An edge
  /// whose tail index exceeds its head index is flipped and its weight negated.
  WeightedQuotientGraph(std::size_t d, std::vector<std::string> vertices, std::vector<WqgEdge> edges)
      : d_(d), vertices_(std::move(vertices)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (!vertex_index_.emplace(vertices_[i], i).second)
        throw Error(ErrorKind::parse_error, "duplicate vertex id '" + vertices_[i] + "'");
    }
    for (auto& e : edges) add_edge(std::move(e));
  }

  std::size_t d() const { return d_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<WqgEdge>& edges() const { return edges_; }
  const WqgEdge& edge(std::size_t i) const { return edges_.at(i); }

  std::size_t vertex_index(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) throw Error(ErrorKind::unknown_vertex, "unknown vertex '" + id + "'");
    return it->second;
  }

  std::size_t edge_index(const std::string& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) throw Error(ErrorKind::invalid_path, "unknown edge '" + id + "'");
    return it->second;
  }

 private:
  void add_edge(WqgEdge e) {
    if (e.weight.size() != d_)
      throw Error(ErrorKind::dimension_mismatch, "edge '" + e.id + "' has weight of length " +
                                                     std::to_string(e.weight.size()) + ", expected " + std::to_string(d_));
    if (e.tail >= vertices_.size() || e.head >= vertices_.size())
      throw Error(ErrorKind::unknown_vertex, "edge '" + e.id + "' references a missing vertex");
    if (e.tail > e.head) {
      std::swap(e.tail, e.head);
      for (auto& x : e.weight) x = -x;
    }
    if (!edge_index_.emplace(e.id, edges_.size()).second)
      throw Error(ErrorKind::parse_error, "duplicate edge id '" + e.id + "'");
    edges_.push_back(std::move(e));
  }

  std::size_t d_ = 0;
  std::vector<std::string> vertices_;
  std::vector<WqgEdge> edges_;
  std::map<std::string, std::size_t> vertex_index_;
  std::map<std::string, std::size_t> edge_index_;
};

inline WeightedQuotientGraph parse_wqg(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw Error(ErrorKind::parse_error, "WQG document must be a JSON object");
    const long long d = doc.at("d").get<long long>();
    if (d < 0) throw Error(ErrorKind::parse_error, "d must be nonnegative");
    std::vector<std::string> vertices = doc.at("vertices").get<std::vector<std::string>>();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < vertices.size(); ++i) index.emplace(vertices[i], i);
    std::vector<WqgEdge> edges;
    const auto& jedges = doc.contains("edges") ? doc.at("edges") : nlohmann::json::array();
    if (!jedges.is_array()) throw Error(ErrorKind::parse_error, "edges must be an array");
    for (const auto& je : jedges) {
      WqgEdge e;
      e.id = je.at("id").get<std::string>();
      const auto tail = je.at("tail").get<std::string>();
      const auto head = je.at("head").get<std::string>();
      auto t = index.find(tail);
      auto h = index.find(head);
      if (t == index.end()) throw Error(ErrorKind::unknown_vertex, "edge '" + e.id + "' has unknown tail '" + tail + "'");
      if (h == index.end()) throw Error(ErrorKind::unknown_vertex, "edge '" + e.id + "' has unknown head '" + head + "'");
      e.tail = t->second;
      e.head = h->second;
      e.weight = je.at("weight").get<ZVector>();
      edges.push_back(std::move(e));
    }
    return WeightedQuotientGraph(static_cast<std::size_t>(d), std::move(vertices), std::move(edges));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::parse_error, ex.what());
  }
}

inline WeightedQuotientGraph parse_wqg(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::parse_error, ex.what());
  }
  return parse_wqg(doc);
}

// ---------------------------------------------------------------------------
// Paths

enum class Direction { forward, reverse };

struct PathStep {
  std::size_t edge = 0;
  Direction direction = Direction::forward;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

/// Steps listed in traversal order, starting at `start`.
struct EdgePath {
  std::size_t start = 0;
  std::vector<PathStep> steps;

  friend bool operator==(const EdgePath&, const EdgePath&) = default;
};

/// Final vertex of p; throws InvalidPath if consecutive steps do not meet.
inline std::size_t path_end(const WeightedQuotientGraph& q, const EdgePath& p) {
  if (p.start >= q.vertex_count()) throw Error(ErrorKind::invalid_path, "path starts at a missing vertex");
  std::size_t at = p.start;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto& s = p.steps[i];
    if (s.edge >= q.edge_count()) throw Error(ErrorKind::invalid_path, "path uses a missing edge");
    const auto& e = q.edge(s.edge);
    const std::size_t from = s.direction == Direction::forward ? e.tail : e.head;
    const std::size_t to = s.direction == Direction::forward ? e.head : e.tail;
    if (from != at)
      throw Error(ErrorKind::invalid_path, "step " + std::to_string(i) + " along '" + e.id + "' does not start at " +
                                               q.vertices()[at]);
    at = to;
  }
  return at;
}

inline ZVector path_weight(const WeightedQuotientGraph& q, const EdgePath& p) {
  path_end(q, p);
  ZVector w(q.d(), 0);
  for (const auto& s : p.steps) {
    const auto& e = q.edge(s.edge);
    const long long sign = s.direction == Direction::forward ? 1 : -1;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += sign * e.weight[i];
  }
  return w;
}

inline EdgePath reversed(const WeightedQuotientGraph& q, const EdgePath& p) {
  EdgePath out;
  out.start = path_end(q, p);
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) {
    out.steps.push_back(
        PathStep{it->edge, it->direction == Direction::forward ? Direction::reverse : Direction::forward});
  }
  return out;
}

/// a followed by b.
inline EdgePath concatenate(const WeightedQuotientGraph& q, const EdgePath& a, const EdgePath& b) {
  if (path_end(q, a) != b.start) throw Error(ErrorKind::invalid_path, "paths do not meet");
  EdgePath out = a;
  out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
  return out;
}

/// p^k for a closed path p; negative k traverses the reverse.
inline EdgePath power(const WeightedQuotientGraph& q, const EdgePath& p, long long k) {
  if (path_end(q, p) != p.start) throw Error(ErrorKind::not_a_cycle, "only closed paths can be raised to a power");
  const EdgePath base = k < 0 ? reversed(q, p) : p;
  const long long count = k < 0 ? -k : k;
  if (count > 0 && static_cast<double>(count) * static_cast<double>(base.steps.size()) > 1e7)
    throw Error(ErrorKind::invalid_argument, "path power too long");
  EdgePath out;
  out.start = p.start;
  for (long long i = 0; i < count; ++i) out.steps.insert(out.steps.end(), base.steps.begin(), base.steps.end());
  return out;
}

inline bool is_closed(const WeightedQuotientGraph& q, const EdgePath& p) { return path_end(q, p) == p.start; }

/// Edge ids in traversal order, reversed steps marked with "^-1".
inline std::string path_to_string(const WeightedQuotientGraph& q, const EdgePath& p) {
  std::string out;
  for (const auto& s : p.steps) {
    if (!out.empty()) out += ' ';
    out += q.edge(s.edge).id;
    if (s.direction == Direction::reverse) out += "^-1";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Components and spanning trees

struct SpanningTree {
  std::size_t root = 0;
  std::vector<std::size_t> vertices;   // sorted
  std::vector<std::size_t> edges;      // all component edges, input order
  std::vector<std::size_t> tree_edges; // input order
  std::vector<std::size_t> non_tree_edges;
  std::map<std::size_t, std::size_t> parent_edge;  // vertex -> tree edge to its parent
  std::map<std::size_t, ZVector> potential;        // weight of the tree path from the root
};

namespace detail {

inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency(const WeightedQuotientGraph& q) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(q.vertex_count());
  for (std::size_t i = 0; i < q.edge_count(); ++i) {
    const auto& e = q.edge(i);
    adj[e.tail].emplace_back(i, e.head);
    if (e.head != e.tail) adj[e.head].emplace_back(i, e.tail);
  }
  // Scanning edges in input order is already guaranteed by construction.
  return adj;
}

}  // namespace detail

/// Connected components as sorted vertex lists, ordered by smallest vertex.
inline std::vector<std::vector<std::size_t>> connected_components(const WeightedQuotientGraph& q) {
  const auto adj = detail::adjacency(q);
  std::vector<int> seen(q.vertex_count(), 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (seen[v]) continue;
    std::vector<std::size_t> comp;
    std::deque<std::size_t> queue{v};
    seen[v] = 1;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      comp.push_back(u);
      for (const auto& [e, w] : adj[u]) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

/// Spanning trees of every component. By default BFS from the lowest vertex,
/// scanning incident edges in input order. `tree` may instead name the tree
/// edges explicitly (they must form a spanning forest).
inline std::vector<SpanningTree> spanning_forest(const WeightedQuotientGraph& q,
                                                 const std::optional<std::vector<std::size_t>>& tree = std::nullopt) {
  std::vector<char> allowed(q.edge_count(), 1);
  if (tree) {
    std::fill(allowed.begin(), allowed.end(), 0);
    for (auto e : *tree) {
      if (e >= q.edge_count()) throw Error(ErrorKind::invalid_argument, "tree edge index out of range");
      allowed[e] = 1;
    }
  }
  const auto comps = connected_components(q);
  std::vector<std::size_t> component_of(q.vertex_count());
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (auto v : comps[c]) component_of[v] = c;

  const auto adj = detail::adjacency(q);
  std::vector<SpanningTree> out(comps.size());
  std::vector<char> in_tree(q.edge_count(), 0);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    auto& t = out[c];
    t.vertices = comps[c];
    t.root = comps[c].front();
    t.potential[t.root] = ZVector(q.d(), 0);
    std::deque<std::size_t> queue{t.root};
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (const auto& [e, w] : adj[u]) {
        if (!allowed[e] || t.potential.count(w)) continue;
        const auto& edge = q.edge(e);
        ZVector phi = t.potential[u];
        const long long sign = edge.tail == u ? 1 : -1;
        for (std::size_t i = 0; i < phi.size(); ++i) phi[i] += sign * edge.weight[i];
        t.potential[w] = std::move(phi);
        t.parent_edge[w] = e;
        in_tree[e] = 1;
        queue.push_back(w);
      }
    }
    if (t.potential.size() != t.vertices.size())
      throw Error(ErrorKind::invalid_argument, "given tree edges do not span component " + std::to_string(c));
  }
  if (tree) {
    for (auto e : *tree)
      if (!in_tree[e]) throw Error(ErrorKind::invalid_argument, "given tree edges contain a cycle");
  }
  for (std::size_t e = 0; e < q.edge_count(); ++e) {
    auto& t = out[component_of[q.edge(e).tail]];
    t.edges.push_back(e);
    (in_tree[e] ? t.tree_edges : t.non_tree_edges).push_back(e);
  }
  return out;
}

/// Tree path from the root to v.
inline EdgePath tree_path(const WeightedQuotientGraph& q, const SpanningTree& t, std::size_t v) {
  std::vector<PathStep> rev;
  std::size_t at = v;
  while (at != t.root) {
    const auto e = t.parent_edge.at(at);
    const auto& edge = q.edge(e);
    // Step from the parent towards `at`.
    if (edge.head == at) {
      rev.push_back(PathStep{e, Direction::forward});
      at = edge.tail;
    } else {
      rev.push_back(PathStep{e, Direction::reverse});
      at = edge.head;
    }
  }
  EdgePath out;
  out.start = t.root;
  out.steps.assign(rev.rbegin(), rev.rend());
  return out;
}

/// Cycle through the root closed by the non-tree edge e: root to head(e),
/// back along e, then tail(e) to the root. Its weight is
/// phi(head) - w(e) - phi(tail).
inline EdgePath fundamental_cycle(const WeightedQuotientGraph& q, const SpanningTree& t, std::size_t e) {
  const auto& edge = q.edge(e);
  EdgePath out = tree_path(q, t, edge.head);
  out.steps.push_back(PathStep{e, Direction::reverse});
  const auto back = reversed(q, tree_path(q, t, edge.tail));
  out.steps.insert(out.steps.end(), back.steps.begin(), back.steps.end());
  return out;
}

inline ZVector fundamental_weight(const WeightedQuotientGraph& q, const SpanningTree& t, std::size_t e) {
  const auto& edge = q.edge(e);
  ZVector w = t.potential.at(edge.head);
  const auto& a = t.potential.at(edge.tail);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= edge.weight[i] + a[i];
  return w;
}

/// W_{Q_i} for every component, generated by fundamental-cycle weights.
inline std::vector<IntegerLattice> weight_lattice(const WeightedQuotientGraph& q,
                                                  const std::optional<std::vector<std::size_t>>& tree = std::nullopt) {
  std::vector<IntegerLattice> out;
  for (const auto& t : spanning_forest(q, tree)) {
    std::vector<ZVector> gens;
    for (auto e : t.non_tree_edges) gens.push_back(fundamental_weight(q, t, e));
    out.emplace_back(q.d(), gens);
  }
  return out;
}

inline LatticeIndex betti0_periodic(const WeightedQuotientGraph& q) {
  BigInt total = 0;
  for (const auto& w : weight_lattice(q)) {
    const auto idx = w.index();
    if (!idx.finite) return LatticeIndex::infinite();
    total += idx.value;
  }
  return LatticeIndex{true, total};
}

inline long long binomial(long long n, long long k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline long long h1_generator_count(const WeightedQuotientGraph& q) {
  if (!betti0_periodic(q).finite)
    throw Error(ErrorKind::infinite_components, "a component has a weight lattice of infinite index");
  const long long comps = static_cast<long long>(connected_components(q).size());
  const long long d = static_cast<long long>(q.d());
  return static_cast<long long>(q.edge_count()) - static_cast<long long>(q.vertex_count()) +
         comps * binomial(d - 1, 2);
}

struct WindowBetti {
  BigInt beta0;
  BigInt beta1;
};

/// Betti numbers of the n_1 x ... x n_d window with periodic boundary.
inline WindowBetti corollary_betti(const WeightedQuotientGraph& q, const ZVector& n) {
  if (n.size() != q.d()) throw Error(ErrorKind::dimension_mismatch, "window vector length differs from d");
  BigInt volume = 1;
  for (auto x : n) {
    if (x < 1) throw Error(ErrorKind::invalid_argument, "window sizes must be positive");
    volume *= static_cast<long>(x);
  }
  WindowBetti out;
  out.beta0 = 0;
  for (const auto& w : weight_lattice(q)) out.beta0 += index_mod(w, n);
  const long long diff = static_cast<long long>(q.edge_count()) - static_cast<long long>(q.vertex_count());
  out.beta1 = BigInt(static_cast<long>(diff)) * volume + out.beta0;
  return out;
}

enum class CycleClass { liftable, toroidal };

inline const char* to_string(CycleClass c) { return c == CycleClass::liftable ? "Liftable" : "Toroidal"; }

inline CycleClass classify_quotient_cycle(const WeightedQuotientGraph& q, const EdgePath& c) {
  if (!is_closed(q, c)) throw Error(ErrorKind::not_a_cycle, "path is not closed");
  const auto w = path_weight(q, c);
  return std::all_of(w.begin(), w.end(), [](long long x) { return x == 0; }) ? CycleClass::liftable
                                                                             : CycleClass::toroidal;
}

// ---------------------------------------------------------------------------
// H_1 generators

struct RecordedCycle {
  std::size_t edge = 0;  // the non-tree edge that closes the cycle
  EdgePath path;
  ZVector weight;
};

enum class GeneratorKind { commutator, shortcut };

struct H1Generator {
  GeneratorKind kind = GeneratorKind::commutator;
  std::size_t component = 0;
  EdgePath cycle;
  // commutator: indices (j, k) into p
  std::size_t j = 0;
  std::size_t k = 0;
  // shortcut: index into ell, relation N w(ell_j) = sum c_k w(p_k) + sum d_k w(ell_k)
  BigInt multiplier = 0;
  std::vector<BigInt> c;
  std::vector<BigInt> d;
};

struct ComponentReport {
  SpanningTree tree;
  IntegerLattice lattice;
  LatticeIndex index;
  std::vector<ZVector> cosets;
  std::vector<RecordedCycle> p;
  std::vector<RecordedCycle> ell;
  std::vector<H1Generator> generators;
};

struct GeneratorReport {
  std::size_t d = 0;
  std::vector<ComponentReport> components;
  LatticeIndex betti0;
  long long h1_count = 0;
};

struct GeneratorOptions {
  /// Explicit spanning forest given by edge indices; BFS when absent.
  std::optional<std::vector<std::size_t>> tree;
};

inline GeneratorReport construct_generators(const WeightedQuotientGraph& q, const GeneratorOptions& options = {}) {
  GeneratorReport report;
  report.d = q.d();
  const auto forest = spanning_forest(q, options.tree);
  BigInt beta0 = 0;
  for (std::size_t ci = 0; ci < forest.size(); ++ci) {
    ComponentReport comp;
    comp.tree = forest[ci];
    std::vector<ZVector> gens;
    for (auto e : comp.tree.non_tree_edges) gens.push_back(fundamental_weight(q, comp.tree, e));
    comp.lattice = IntegerLattice(q.d(), gens);
    comp.index = comp.lattice.index();
    if (!comp.index.finite)
      throw Error(ErrorKind::infinite_components,
                  "component " + std::to_string(ci) + " has a weight lattice of infinite index");
    beta0 += comp.index.value;
    comp.cosets = comp.lattice.coset_representatives();

    // Step 1: edges whose cycle raises the rank of the span of recorded weights.
    std::vector<ZVector> p_weights;
    std::vector<std::size_t> rest;
    for (auto e : comp.tree.non_tree_edges) {
      auto w = fundamental_weight(q, comp.tree, e);
      auto trial = p_weights;
      trial.push_back(w);
      if (IntegerLattice(q.d(), trial).rank() > p_weights.size()) {
        p_weights = std::move(trial);
        comp.p.push_back(RecordedCycle{e, fundamental_cycle(q, comp.tree, e), std::move(w)});
      } else {
        rest.push_back(e);
      }
    }

    // Commutators of p_j and p_k: p_j, p_k, p_j^-1, p_k^-1.
    for (std::size_t j = 0; j < comp.p.size(); ++j) {
      for (std::size_t k = j + 1; k < comp.p.size(); ++k) {
        H1Generator g;
        g.kind = GeneratorKind::commutator;
        g.component = ci;
        g.j = j;
        g.k = k;
        const auto& pj = comp.p[j].path;
        const auto& pk = comp.p[k].path;
        g.cycle = concatenate(q, concatenate(q, pj, pk), concatenate(q, reversed(q, pj), reversed(q, pk)));
        comp.generators.push_back(std::move(g));
      }
    }

    // Step 2: every remaining edge gives ell_j and a shortcut cycle.
    std::vector<ZVector> span = p_weights;
    for (auto e : rest) {
      RecordedCycle l{e, fundamental_cycle(q, comp.tree, e), fundamental_weight(q, comp.tree, e)};
      IntegerLattice lat(q.d(), span);
      const auto order = lat.order_of(l.weight);
      if (!order) throw Error(ErrorKind::infinite_components, "cycle weight outside the rational span");
      const long long big_n = to_int64(*order);
      ZVector target = l.weight;
      for (auto& x : target) x *= big_n;
      const auto coeffs = lat.solve(target);
      if (!coeffs) throw Error(ErrorKind::invalid_argument, "relation solve failed");

      H1Generator g;
      g.kind = GeneratorKind::shortcut;
      g.component = ci;
      g.j = comp.ell.size();
      g.multiplier = *order;
      g.c.assign(coeffs->begin(), coeffs->begin() + static_cast<long>(p_weights.size()));
      g.d.assign(coeffs->begin() + static_cast<long>(p_weights.size()), coeffs->end());
      EdgePath cyc = power(q, l.path, big_n);
      for (std::size_t i = 0; i < g.d.size(); ++i)
        cyc = concatenate(q, cyc, power(q, comp.ell[i].path, -to_int64(g.d[i])));
      for (std::size_t i = 0; i < g.c.size(); ++i)
        cyc = concatenate(q, cyc, power(q, comp.p[i].path, -to_int64(g.c[i])));
      g.cycle = std::move(cyc);
      comp.generators.push_back(std::move(g));
      span.push_back(l.weight);
      comp.ell.push_back(std::move(l));
    }
    report.components.push_back(std::move(comp));
  }
  report.betti0 = LatticeIndex{true, beta0};
  report.h1_count = h1_generator_count(q);
  return report;
}

/// Checks N w(ell_j) = sum c_k w(p_k) + sum d_k w(ell_k) using path weights.
inline bool shortcut_relation_holds(const WeightedQuotientGraph& q, const ComponentReport& comp, const H1Generator& g) {
  if (g.kind != GeneratorKind::shortcut) return false;
  std::vector<BigInt> lhs(q.d()), rhs(q.d());
  const auto wl = path_weight(q, comp.ell.at(g.j).path);
  for (std::size_t i = 0; i < q.d(); ++i) lhs[i] = g.multiplier * static_cast<long>(wl[i]);
  for (std::size_t k = 0; k < g.c.size(); ++k) {
    const auto w = path_weight(q, comp.p.at(k).path);
    for (std::size_t i = 0; i < q.d(); ++i) rhs[i] += g.c[k] * static_cast<long>(w[i]);
  }
  for (std::size_t k = 0; k < g.d.size(); ++k) {
    const auto w = path_weight(q, comp.ell.at(k).path);
    for (std::size_t i = 0; i < q.d(); ++i) rhs[i] += g.d[k] * static_cast<long>(w[i]);
  }
  return lhs == rhs;
}

}  // namespace periodic_homology
