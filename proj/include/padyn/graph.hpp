// Finite directed graphs on dense integer vertices: SCCs, sink components,
// reachability. Used by every orbit-closure and minimality computation.

#ifndef PADYN_GRAPH_HPP_
#define PADYN_GRAPH_HPP_

#include <cstddef>
#include <vector>

namespace padyn {

class Digraph {
 public:
  explicit Digraph(std::size_t vertices = 0) : adj_(vertices) {}

  std::size_t add_vertex() {
    adj_.emplace_back();
    return adj_.size() - 1;
  }
  void add_edge(std::size_t from, std::size_t to) { adj_.at(from).push_back(static_cast<int>(to)); }

  [[nodiscard]] std::size_t                    size() const noexcept { return adj_.size(); }
  [[nodiscard]] std::vector<int> const&        out(std::size_t v) const { return adj_[v]; }
  [[nodiscard]] Digraph                        reversed() const;
  [[nodiscard]] std::vector<bool>              reachable_from(std::size_t source) const;

 private:
  std::vector<std::vector<int>> adj_;
};

// Component id per vertex; ids are in reverse topological order (a sink
// component is discovered first), as produced by Tarjan's algorithm.
std::vector<int> strongly_connected_components(Digraph const& g, int* count = nullptr);

// Components with no edge leaving them, as sorted vertex lists, ordered by
// their smallest vertex.
std::vector<std::vector<int>> sink_components(Digraph const& g);

// All components as sorted vertex lists, ordered by smallest vertex.
std::vector<std::vector<int>> components(Digraph const& g);

// Forward and reverse search from the first vertex in `subset` both reach all
// of `subset` (an empty or singleton subset counts as connected).
bool strongly_connected_on(Digraph const& g, std::vector<int> const& subset);
bool strongly_connected(Digraph const& g);

}  // namespace padyn

#endif  // PADYN_GRAPH_HPP_
