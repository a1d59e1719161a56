#ifndef EIG_CORE_HPP
#define EIG_CORE_HPP

#include "eig/numbers.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace eig {

enum class Side { A, B };

inline Side opposite(Side s) { return s == Side::A ? Side::B : Side::A; }

// One side of one edge, located at a vertex. Ends are the addressable
// unit throughout: every construction manipulates ends, not whole edges.
struct End {
  std::string edge;
  Side side = Side::A;

  bool operator==(const End& o) const { return edge == o.edge && side == o.side; }
  bool operator<(const End& o) const {
    if (edge != o.edge) return edge < o.edge;
    return static_cast<int>(side) < static_cast<int>(o.side);
  }
};

struct Edge {
  std::string id;
  std::string va;
  Int ia;  // index of the end at va (side A)
  std::string vb;
  Int ib;  // index of the end at vb (side B)

  bool is_loop() const { return va == vb; }
  const std::string& vertex(Side s) const { return s == Side::A ? va : vb; }
  const Int& index(Side s) const { return s == Side::A ? ia : ib; }
};

// Finite connected graph with a positive integer index on each edge-end.
// Loops and parallel edges are permitted. Immutable after construction;
// construction validates indices >= 1, endpoint references and
// connectivity.
class EdgeIndexedGraph {
 public:
  EdgeIndexedGraph(std::vector<std::string> vertices, std::vector<Edge> edges);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_vertex(const std::string& v) const;
  bool has_edge(const std::string& e) const;
  const Edge& edge(const std::string& id) const;

  // Ends located at v; a loop at v contributes both of its ends.
  const std::vector<End>& ends_at(const std::string& v) const;

  const std::string& end_vertex(const End& e) const { return edge(e.edge).vertex(e.side); }
  const Int& end_index(const End& e) const { return edge(e.edge).index(e.side); }

  std::size_t valence(const std::string& v) const { return ends_at(v).size(); }

  bool operator==(const EdgeIndexedGraph& o) const;

 private:
  std::vector<std::string> vertices_;          // sorted
  std::vector<Edge> edges_;                    // sorted by id
  std::map<std::string, std::size_t> edge_ix_;
  std::map<std::string, std::vector<End>> ends_;
};

enum class Trichotomy { Bounded, LineLike, Bushy };

std::string to_string(Trichotomy t);

// Closed walk given as (edge, traversal direction); forward means A -> B.
struct CycleStep {
  std::string edge;
  bool forward = true;
};
using Cycle = std::vector<CycleStep>;

Int total_index(const EdgeIndexedGraph& g, const std::string& v);
bool is_thorn(const EdgeIndexedGraph& g, const std::string& v);

struct ThornlessCore {
  EdgeIndexedGraph graph;
  std::vector<std::string> removed;  // thorn vertices in trim order
};

// Iteratively trims thorns in identifier order. When the core degenerates
// to a single vertex the survivor depends on that order; downstream users
// only consume the trichotomy class, which does not.
ThornlessCore thornless_core(const EdgeIndexedGraph& g);

bool is_orbifold(const EdgeIndexedGraph& g);
Trichotomy trichotomy(const EdgeIndexedGraph& g);

// Product of the canonical cocycle xi(e) = I(head end) / I(tail end)
// along the walk.
Rat cycle_value(const EdgeIndexedGraph& g, const Cycle& c);

bool is_unimodular(const EdgeIndexedGraph& g);

struct Subdivision {
  EdgeIndexedGraph graph;
  // For each subdivided edge e: the new interior vertex is e + ".m" and
  // the halves are e + ".a" (keeps the A-side outer end) and e + ".b".
  std::map<std::string, std::string> mid_vertex;
};

Subdivision subdivide(const EdgeIndexedGraph& g, const std::set<std::string>& edges);

struct Isomorphism {
  std::map<std::string, std::string> vertex_map;
  std::map<std::string, std::string> edge_map;
};

// Canonical labeling by exhaustive backtracking with invariant pruning;
// fine at the graph sizes this library deals with. edge_color, when given,
// must be respected by any isomorphism (used to keep blowup forests
// marked during deduplication).
std::string canonical_string(const EdgeIndexedGraph& g,
                             const std::map<std::string, int>* edge_color = nullptr);

std::vector<std::string> canonical_vertex_order(
    const EdgeIndexedGraph& g, const std::map<std::string, int>* edge_color = nullptr);

std::optional<Isomorphism> are_isomorphic(const EdgeIndexedGraph& g1,
                                          const EdgeIndexedGraph& g2,
                                          const std::map<std::string, int>* color1 = nullptr,
                                          const std::map<std::string, int>* color2 = nullptr);

bool has_index1_edge(const EdgeIndexedGraph& g);

void require_bushy(const EdgeIndexedGraph& g, const char* who);
void require_thornless(const EdgeIndexedGraph& g, const char* who);

}  // namespace eig

#endif
