#pragma once

// Associated digraph, strongly connected components and the Frobenius
// normal form (block lower triangular permutation with independent blocks
// first).

#include "ddsing/matrix.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <span>
#include <vector>

namespace ddsing {

struct Digraph {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> adjacency;  // sorted, no self-loops

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& a : adjacency) m += a.size();
    return m;
  }
};

/// Edge i -> j for every structurally nonzero a_ij with j != i. No tolerance:
/// a tiny entry is still an edge.
template <class T>
Digraph associated_digraph(const Matrix<T>& a) {
  Digraph g{a.size(), std::vector<std::vector<std::size_t>>(a.size())};
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != i && !scalar_traits<T>::is_zero(a(i, j))) g.adjacency[i].push_back(j);
  return g;
}

/// Tarjan's algorithm with an explicit call stack. Components come out in
/// reverse topological order of the condensation: every edge between two
/// components points from a later component to an earlier one. Vertices
/// inside a component are sorted ascending.
inline std::vector<std::vector<std::size_t>> strongly_connected_components(const Digraph& g) {
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  const std::size_t n = g.n;
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  struct Frame {
    std::size_t v;
    std::size_t next_edge;
  };
  std::vector<Frame> calls;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    calls.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!calls.empty()) {
      Frame& f = calls.back();
      const auto& succ = g.adjacency[f.v];
      if (f.next_edge < succ.size()) {
        const std::size_t w = succ[f.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      calls.pop_back();
      if (!calls.empty()) low[calls.back().v] = std::min(low[calls.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }
  return components;
}

inline bool is_strongly_connected(const Digraph& g) {
  return g.n <= 1 || strongly_connected_components(g).size() == 1;
}

template <class T>
bool is_irreducible(const Matrix<T>& a) {
  return is_strongly_connected(associated_digraph(a));
}

struct FrobeniusForm {
  std::vector<std::size_t> permutation;          // old index -> new index
  std::vector<std::vector<std::size_t>> blocks;  // original indices, ascending, in block order
  std::vector<bool> independent;                 // per block
  std::size_t independent_count = 0;             // s
  std::size_t dependent_count = 0;               // k

  std::size_t size() const { return permutation.size(); }

  /// new index -> old index
  std::vector<std::size_t> order() const {
    std::vector<std::size_t> out(permutation.size());
    for (std::size_t old = 0; old < permutation.size(); ++old) out[permutation[old]] = old;
    return out;
  }

  /// First new index of each block, plus a trailing n.
  std::vector<std::size_t> offsets() const {
    std::vector<std::size_t> out{0};
    for (const auto& b : blocks) out.push_back(out.back() + b.size());
    return out;
  }

  /// Block id (position in block order) containing each original index.
  std::vector<std::size_t> block_of() const {
    std::vector<std::size_t> out(permutation.size());
    for (std::size_t p = 0; p < blocks.size(); ++p)
      for (auto v : blocks[p]) out[v] = p;
    return out;
  }

  bool operator==(const FrobeniusForm&) const = default;
};

/// Frobenius normal form from the SCC condensation. Independent blocks
/// (components with no edge leaving them) come first; the remaining blocks
/// follow in a topological order where each block is placed after every
/// block it has entries in. Ties in both groups go to the smallest original
/// index.
template <class T>
FrobeniusForm frobenius_normal_form(const Matrix<T>& a) {
  const Digraph g = associated_digraph(a);
  auto comps = strongly_connected_components(g);
  const std::size_t m = comps.size();

  std::vector<std::size_t> comp_of(g.n);
  for (std::size_t c = 0; c < m; ++c)
    for (auto v : comps[c]) comp_of[v] = c;

  // predecessors[d]: components with entries in component d
  std::vector<std::vector<std::size_t>> predecessors(m);
  std::vector<std::size_t> out_degree(m, 0);
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<std::size_t> succ;
    for (auto v : comps[c])
      for (auto w : g.adjacency[v])
        if (comp_of[w] != c) succ.push_back(comp_of[w]);
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    out_degree[c] = succ.size();
    for (auto d : succ) predecessors[d].push_back(c);
  }

  auto by_min_index = [&](std::size_t x, std::size_t y) { return comps[x].front() > comps[y].front(); };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_min_index)> ready(by_min_index);

  std::vector<std::size_t> sinks;
  for (std::size_t c = 0; c < m; ++c)
    if (out_degree[c] == 0) sinks.push_back(c);
  std::sort(sinks.begin(), sinks.end(), [&](auto x, auto y) { return comps[x].front() < comps[y].front(); });

  std::vector<std::size_t> block_order;
  block_order.reserve(m);
  auto place = [&](std::size_t c) {
    block_order.push_back(c);
    for (auto p : predecessors[c])
      if (--out_degree[p] == 0) ready.push(p);
  };
  for (auto c : sinks) place(c);
  while (!ready.empty()) {
    auto c = ready.top();
    ready.pop();
    place(c);
  }

  FrobeniusForm form;
  form.permutation.resize(g.n);
  std::size_t next = 0;
  for (auto c : block_order) {
    for (auto v : comps[c]) form.permutation[v] = next++;
    form.blocks.push_back(comps[c]);
  }
  form.independent_count = sinks.size();
  form.dependent_count = m - sinks.size();
  form.independent.assign(m, false);
  std::fill(form.independent.begin(), form.independent.begin() + static_cast<std::ptrdiff_t>(sinks.size()), true);
  return form;
}

/// P^T A P for the permutation old -> new: B(new(i), new(j)) = A(i, j).
template <class T>
Matrix<T> permute(const Matrix<T>& a, std::span<const std::size_t> permutation) {
  const std::size_t n = a.size();
  if (permutation.size() != n) throw Error(Errc::DimensionMismatch, "permutation length differs from n");
  std::vector<bool> seen(n, false);
  for (auto p : permutation) {
    if (p >= n || seen[p]) throw Error(Errc::DimensionMismatch, "permutation is not a bijection");
    seen[p] = true;
  }
  Matrix<T> b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(permutation[i], permutation[j]) = a(i, j);
  return b;
}

template <class T>
Matrix<T> permute(const Matrix<T>& a, const FrobeniusForm& form) {
  return permute(a, std::span<const std::size_t>(form.permutation));
}

}  // namespace ddsing
