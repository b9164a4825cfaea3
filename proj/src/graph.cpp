#include "padyn/graph.hpp"

#include <algorithm>
#include <utility>

namespace padyn {

Digraph Digraph::reversed() const {
  Digraph r(adj_.size());
  for (std::size_t v = 0; v < adj_.size(); ++v) {
    for (int w : adj_[v]) {
      r.adj_[w].push_back(static_cast<int>(v));
    }
  }
  return r;
}

std::vector<bool> Digraph::reachable_from(std::size_t source) const {
  std::vector<bool> seen(adj_.size(), false);
  std::vector<int>  stack{static_cast<int>(source)};
  seen[source] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj_[v]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

// Iterative Tarjan.
std::vector<int> strongly_connected_components(Digraph const& g, int* count) {
  int const        n = static_cast<int>(g.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<int> stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::pair<int, std::size_t>> call;
  int next = 0, ncomp = 0;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) {
      continue;
    }
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i == 0 && index[v] == -1) {
        index[v] = low[v] = next++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      auto const& out = g.out(v);
      if (i < out.size()) {
        int w = out[i++];
        if (index[w] == -1) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w]     = ncomp;
        } while (w != v);
        ++ncomp;
      }
      int const done = v;
      call.pop_back();
      if (!call.empty()) {
        int parent  = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  if (count != nullptr) {
    *count = ncomp;
  }
  return comp;
}

namespace {

std::vector<std::vector<int>> group_by(std::vector<int> const& comp, int count,
                                       std::vector<bool> const& keep) {
  std::vector<std::vector<int>> out(count);
  for (int v = 0; v < static_cast<int>(comp.size()); ++v) {
    out[comp[v]].push_back(v);
  }
  std::vector<std::vector<int>> result;
  for (int c = 0; c < count; ++c) {
    if (keep[c]) {
      result.push_back(std::move(out[c]));
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace

std::vector<std::vector<int>> sink_components(Digraph const& g) {
  int  count = 0;
  auto comp  = strongly_connected_components(g, &count);
  std::vector<bool> sink(count, true);
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (int w : g.out(v)) {
      if (comp[w] != comp[v]) {
        sink[comp[v]] = false;
      }
    }
  }
  return group_by(comp, count, sink);
}

std::vector<std::vector<int>> components(Digraph const& g) {
  int  count = 0;
  auto comp  = strongly_connected_components(g, &count);
  return group_by(comp, count, std::vector<bool>(count, true));
}

bool strongly_connected_on(Digraph const& g, std::vector<int> const& subset) {
  if (subset.size() <= 1) {
    return true;
  }
  auto fwd = g.reachable_from(subset.front());
  auto bwd = g.reversed().reachable_from(subset.front());
  return std::all_of(subset.begin(), subset.end(), [&](int v) { return fwd[v] && bwd[v]; });
}

bool strongly_connected(Digraph const& g) {
  std::vector<int> all(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    all[v] = static_cast<int>(v);
  }
  return strongly_connected_on(g, all);
}

}  // namespace padyn
