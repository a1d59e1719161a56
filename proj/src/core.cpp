#include "eig/core.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace eig {

EdgeIndexedGraph::EdgeIndexedGraph(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (vertices_.empty()) throw std::invalid_argument("graph needs at least one vertex");
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw std::invalid_argument("duplicate vertex identifier");
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (!edge_ix_.emplace(e.id, i).second)
      throw std::invalid_argument("duplicate edge identifier: " + e.id);
    if (!std::binary_search(vertices_.begin(), vertices_.end(), e.va) ||
        !std::binary_search(vertices_.begin(), vertices_.end(), e.vb))
      throw std::invalid_argument("edge " + e.id + " references an unknown vertex");
    if (e.ia < 1 || e.ib < 1)
      throw std::invalid_argument("edge " + e.id + " has an index < 1");
  }
  for (const std::string& v : vertices_) ends_[v] = {};
  for (const Edge& e : edges_) {
    ends_[e.va].push_back({e.id, Side::A});
    ends_[e.vb].push_back({e.id, Side::B});
  }
  for (auto& [v, list] : ends_) std::sort(list.begin(), list.end());

  // connectivity
  std::set<std::string> seen;
  std::queue<std::string> bfs;
  bfs.push(vertices_.front());
  seen.insert(vertices_.front());
  while (!bfs.empty()) {
    std::string v = bfs.front();
    bfs.pop();
    for (const End& end : ends_.at(v)) {
      const std::string& w = edge(end.edge).vertex(opposite(end.side));
      if (seen.insert(w).second) bfs.push(w);
    }
  }
  if (seen.size() != vertices_.size())
    throw std::invalid_argument("graph is not connected");
}

bool EdgeIndexedGraph::has_vertex(const std::string& v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool EdgeIndexedGraph::has_edge(const std::string& e) const { return edge_ix_.count(e) != 0; }

const Edge& EdgeIndexedGraph::edge(const std::string& id) const {
  auto it = edge_ix_.find(id);
  if (it == edge_ix_.end()) throw std::invalid_argument("unknown edge: " + id);
  return edges_[it->second];
}

const std::vector<End>& EdgeIndexedGraph::ends_at(const std::string& v) const {
  auto it = ends_.find(v);
  if (it == ends_.end()) throw std::invalid_argument("unknown vertex: " + v);
  return it->second;
}

bool EdgeIndexedGraph::operator==(const EdgeIndexedGraph& o) const {
  if (vertices_ != o.vertices_ || edges_.size() != o.edges_.size()) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge &a = edges_[i], &b = o.edges_[i];
    if (a.id != b.id || a.va != b.va || a.vb != b.vb || a.ia != b.ia || a.ib != b.ib)
      return false;
  }
  return true;
}

std::string to_string(Trichotomy t) {
  switch (t) {
    case Trichotomy::Bounded: return "bounded";
    case Trichotomy::LineLike: return "line-like";
    case Trichotomy::Bushy: return "bushy";
  }
  return "?";
}

Int total_index(const EdgeIndexedGraph& g, const std::string& v) {
  Int total = 0;
  for (const End& e : g.ends_at(v)) total += g.end_index(e);
  return total;
}

bool is_thorn(const EdgeIndexedGraph& g, const std::string& v) {
  return total_index(g, v) == 1;
}

ThornlessCore thornless_core(const EdgeIndexedGraph& g) {
  std::vector<std::string> verts = g.vertices();
  std::vector<Edge> edges = g.edges();
  std::vector<std::string> removed;
  for (;;) {
    std::string thorn;
    for (const std::string& v : verts) {
      Int total = 0;
      for (const Edge& e : edges) {
        if (e.va == v) total += e.ia;
        if (e.vb == v) total += e.ib;
      }
      if (total == 1) {
        thorn = v;
        break;
      }
    }
    if (thorn.empty()) break;
    removed.push_back(thorn);
    verts.erase(std::find(verts.begin(), verts.end(), thorn));
    edges.erase(std::remove_if(edges.begin(), edges.end(),
                               [&](const Edge& e) { return e.va == thorn || e.vb == thorn; }),
                edges.end());
  }
  return {EdgeIndexedGraph(std::move(verts), std::move(edges)), std::move(removed)};
}

bool is_orbifold(const EdgeIndexedGraph& g) {
  for (const std::string& v : g.vertices())
    if (total_index(g, v) != 2) return false;
  return true;
}

Trichotomy trichotomy(const EdgeIndexedGraph& g) {
  ThornlessCore core = thornless_core(g);
  if (core.graph.vertices().size() == 1 && core.graph.edges().empty())
    return Trichotomy::Bounded;
  if (is_orbifold(core.graph)) return Trichotomy::LineLike;
  return Trichotomy::Bushy;
}

Rat cycle_value(const EdgeIndexedGraph& g, const Cycle& c) {
  if (c.empty()) throw std::invalid_argument("empty cycle");
  // walk validation: consecutive ends share a vertex, walk closes up
  std::string start, at;
  bool first = true;
  Rat value = 1;
  for (const CycleStep& step : c) {
    const Edge& e = g.edge(step.edge);
    const std::string& tail = step.forward ? e.va : e.vb;
    const std::string& head = step.forward ? e.vb : e.va;
    const Int& tail_ix = step.forward ? e.ia : e.ib;
    const Int& head_ix = step.forward ? e.ib : e.ia;
    if (first) {
      start = tail;
      first = false;
    } else if (at != tail) {
      throw std::invalid_argument("cycle steps do not chain at " + tail);
    }
    at = head;
    value *= Rat(head_ix) / Rat(tail_ix);
  }
  if (at != start) throw std::invalid_argument("cycle does not close up");
  return value;
}

bool is_unimodular(const EdgeIndexedGraph& g) {
  // A positive rational vertex potential exists iff every fundamental
  // cycle has xi-product 1. BFS a spanning tree and check closures.
  std::map<std::string, Rat> pot;
  pot[g.vertices().front()] = 1;
  std::queue<std::string> bfs;
  bfs.push(g.vertices().front());
  std::set<std::string> tree_edges;
  while (!bfs.empty()) {
    std::string v = bfs.front();
    bfs.pop();
    for (const End& end : g.ends_at(v)) {
      const Edge& e = g.edge(end.edge);
      const std::string& w = e.vertex(opposite(end.side));
      if (!pot.count(w)) {
        // crossing e from v: potential ratio is I(far end)/I(near end)
        pot[w] = pot[v] * Rat(e.index(opposite(end.side))) / Rat(e.index(end.side));
        tree_edges.insert(e.id);
        bfs.push(w);
      }
    }
  }
  for (const Edge& e : g.edges()) {
    if (tree_edges.count(e.id)) continue;
    if (pot.at(e.vb) * Rat(e.ia) != pot.at(e.va) * Rat(e.ib)) return false;
  }
  return true;
}

Subdivision subdivide(const EdgeIndexedGraph& g, const std::set<std::string>& which) {
  std::vector<std::string> verts = g.vertices();
  std::vector<Edge> edges;
  std::map<std::string, std::string> mid;
  for (const std::string& id : which)
    if (!g.has_edge(id)) throw std::invalid_argument("unknown edge: " + id);
  for (const Edge& e : g.edges()) {
    if (!which.count(e.id)) {
      edges.push_back(e);
      continue;
    }
    std::string m = e.id + ".m";
    if (g.has_vertex(m) || g.has_edge(e.id + ".a") || g.has_edge(e.id + ".b"))
      throw std::invalid_argument("subdivision name clash on edge " + e.id);
    verts.push_back(m);
    mid[e.id] = m;
    edges.push_back({e.id + ".a", e.va, e.ia, m, 1});
    edges.push_back({e.id + ".b", m, 1, e.vb, e.ib});
  }
  return {EdgeIndexedGraph(std::move(verts), std::move(edges)), std::move(mid)};
}

namespace {

// Canonical labeling: depth-first over vertex orderings, appending per
// vertex one row that lists its invariant plus all edges back into the
// already-placed prefix. The minimal row sequence is the canonical form.
struct Canonicalizer {
  const EdgeIndexedGraph& g;
  const std::map<std::string, int>* color;
  std::vector<std::string> names;
  std::map<std::string, int> pos_of;           // placed vertices -> position
  std::vector<int> order;                      // positions -> vertex number
  std::vector<std::string> rows;
  std::vector<std::string> best_rows;
  std::vector<int> best_order;
  std::vector<std::string> invariant;

  explicit Canonicalizer(const EdgeIndexedGraph& graph, const std::map<std::string, int>* col)
      : g(graph), color(col), names(graph.vertices()) {
    invariant.resize(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
      std::vector<std::string> sig;
      for (const End& end : g.ends_at(names[i])) {
        const Edge& e = g.edge(end.edge);
        std::ostringstream t;
        t << e.index(end.side).str() << ':' << e.index(opposite(end.side)).str() << ':'
          << (e.is_loop() ? 'L' : 'e') << ':' << edge_color(e.id);
        sig.push_back(t.str());
      }
      std::sort(sig.begin(), sig.end());
      std::ostringstream inv;
      inv << total_index(g, names[i]).str() << '/' << g.valence(names[i]);
      for (const std::string& s : sig) inv << '|' << s;
      invariant[i] = inv.str();
    }
  }

  int edge_color(const std::string& id) const {
    if (!color) return 0;
    auto it = color->find(id);
    return it == color->end() ? 0 : it->second;
  }

  std::string row_for(int vnum) const {
    const std::string& v = names[vnum];
    std::vector<std::string> back;
    for (const End& end : g.ends_at(v)) {
      const Edge& e = g.edge(end.edge);
      if (e.is_loop()) {
        if (end.side == Side::B) continue;  // record loops once
        std::string lo = e.ia.str(), hi = e.ib.str();
        if (e.ib < e.ia) std::swap(lo, hi);  // loop side labels carry no meaning
        std::ostringstream t;
        t << "L" << ':' << lo << ':' << hi << ':' << edge_color(e.id);
        back.push_back(t.str());
        continue;
      }
      const std::string& w = e.vertex(opposite(end.side));
      auto it = pos_of.find(w);
      if (it == pos_of.end()) continue;  // counted when the far endpoint lands
      std::ostringstream t;
      t << it->second << ':' << e.index(end.side).str() << ':'
        << e.index(opposite(end.side)).str() << ':' << edge_color(e.id);
      back.push_back(t.str());
    }
    std::sort(back.begin(), back.end());
    std::ostringstream row;
    row << invariant[vnum];
    for (const std::string& b : back) row << ';' << b;
    return row.str();
  }

  void dfs() {
    std::size_t k = order.size();
    if (k == names.size()) {
      if (best_rows.empty() || rows < best_rows) {
        best_rows = rows;
        best_order = order;
      }
      return;
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (pos_of.count(names[i])) continue;
      pos_of[names[i]] = static_cast<int>(k);
      order.push_back(static_cast<int>(i));
      rows.push_back(row_for(static_cast<int>(i)));
      bool viable = best_rows.empty();
      if (!viable) {
        // compare prefix against the incumbent
        int cmp = 0;
        for (std::size_t j = 0; j <= k && cmp == 0; ++j)
          cmp = rows[j].compare(best_rows[j]);
        viable = cmp <= 0;
      }
      if (viable) dfs();
      rows.pop_back();
      order.pop_back();
      pos_of.erase(names[i]);
    }
  }
};

}  // namespace

std::vector<std::string> canonical_vertex_order(const EdgeIndexedGraph& g,
                                                const std::map<std::string, int>* edge_color) {
  Canonicalizer c(g, edge_color);
  c.dfs();
  std::vector<std::string> out;
  for (int i : c.best_order) out.push_back(c.names[i]);
  return out;
}

std::string canonical_string(const EdgeIndexedGraph& g,
                             const std::map<std::string, int>* edge_color) {
  Canonicalizer c(g, edge_color);
  c.dfs();
  std::ostringstream s;
  for (const std::string& r : c.best_rows) s << r << '\n';
  return s.str();
}

std::optional<Isomorphism> are_isomorphic(const EdgeIndexedGraph& g1,
                                          const EdgeIndexedGraph& g2,
                                          const std::map<std::string, int>* color1,
                                          const std::map<std::string, int>* color2) {
  if (g1.vertices().size() != g2.vertices().size() || g1.edges().size() != g2.edges().size())
    return std::nullopt;
  if (canonical_string(g1, color1) != canonical_string(g2, color2)) return std::nullopt;
  std::vector<std::string> o1 = canonical_vertex_order(g1, color1);
  std::vector<std::string> o2 = canonical_vertex_order(g2, color2);
  Isomorphism iso;
  std::map<std::string, int> pos;
  for (std::size_t i = 0; i < o1.size(); ++i) {
    iso.vertex_map[o1[i]] = o2[i];
    pos[o2[i]] = static_cast<int>(i);
  }
  // match edges: within each (endpoint positions, indices, color) class,
  // pair off in sorted-id order
  auto key = [&](const EdgeIndexedGraph& g, const Edge& e,
                 const std::map<std::string, int>& p,
                 const std::map<std::string, int>* color) {
    int pa = p.at(e.va), pb = p.at(e.vb);
    std::string ia = e.ia.str(), ib = e.ib.str();
    if (pb < pa || (pb == pa && ib < ia)) {
      std::swap(pa, pb);
      std::swap(ia, ib);
    }
    int col = 0;
    if (color) {
      auto it = color->find(e.id);
      col = it == color->end() ? 0 : it->second;
    }
    (void)g;
    return std::to_string(pa) + "," + std::to_string(pb) + "," + ia + "," + ib + "," +
           std::to_string(col);
  };
  std::map<std::string, int> pos1;
  for (std::size_t i = 0; i < o1.size(); ++i) pos1[o1[i]] = static_cast<int>(i);
  std::map<std::string, std::vector<std::string>> c1, c2;
  for (const Edge& e : g1.edges()) c1[key(g1, e, pos1, color1)].push_back(e.id);
  for (const Edge& e : g2.edges()) c2[key(g2, e, pos, color2)].push_back(e.id);
  for (auto& [k, list1] : c1) {
    auto it = c2.find(k);
    if (it == c2.end() || it->second.size() != list1.size()) return std::nullopt;
    for (std::size_t i = 0; i < list1.size(); ++i) iso.edge_map[list1[i]] = it->second[i];
  }
  return iso;
}

bool has_index1_edge(const EdgeIndexedGraph& g) {
  for (const Edge& e : g.edges())
    if (e.ia == 1 || e.ib == 1) return true;
  return false;
}

void require_bushy(const EdgeIndexedGraph& g, const char* who) {
  Trichotomy t = trichotomy(g);
  if (t != Trichotomy::Bushy)
    throw std::invalid_argument(std::string(who) + ": input is not bushy (trichotomy: " +
                                to_string(t) + ")");
}

void require_thornless(const EdgeIndexedGraph& g, const char* who) {
  for (const std::string& v : g.vertices())
    if (is_thorn(g, v))
      throw std::invalid_argument(std::string(who) + ": input has a thorn at vertex " + v);
}

}  // namespace eig
