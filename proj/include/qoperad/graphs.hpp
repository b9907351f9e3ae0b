#pragma once

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qoperad/util.hpp"

namespace qop {

// Connected multigraph with labeled legs. Vertices 0..V-1; edges stored as
// ordered pairs (u <= v), sorted; legs[j] is the vertex carrying leg j.
// Half-edge ids: edge i owns 2i (at the u end) and 2i+1 (at the v end);
// leg j is half-edge 2E + j.
struct Graph {
  int V = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> legs;

  int E() const { return static_cast<int>(edges.size()); }
  int n() const { return static_cast<int>(legs.size()); }
  int loop_order() const { return E() - V + 1; }
  int n_half() const { return 2 * E() + n(); }

  int he_vertex(int h) const {
    if (h < 2 * E()) return h % 2 == 0 ? edges[h / 2].first : edges[h / 2].second;
    return legs[h - 2 * E()];
  }

  std::vector<std::vector<int>> stars() const {
    std::vector<std::vector<int>> s(V);
    for (int h = 0; h < n_half(); ++h) s[he_vertex(h)].push_back(h);
    return s;
  }

  std::vector<int> valences() const {
    std::vector<int> val(V, 0);
    for (auto& [u, v] : edges) {
      ++val[u];
      ++val[v];
    }
    for (int v : legs) ++val[v];
    return val;
  }

  bool connected() const {
    if (V == 0) return false;
    std::vector<int> parent(V);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto& [u, v] : edges) parent[find(u)] = find(v);
    int root = find(0);
    for (int v = 1; v < V; ++v)
      if (find(v) != root) return false;
    return true;
  }

  std::vector<int> encode() const {
    std::vector<int> out;
    out.push_back(V);
    for (auto& [u, v] : edges) {
      out.push_back(u);
      out.push_back(v);
    }
    out.push_back(-1);
    for (int v : legs) out.push_back(v);
    return out;
  }

  Graph permuted(const std::vector<int>& sigma) const {
    Graph h;
    h.V = V;
    for (auto& [u, v] : edges) {
      int a = sigma[u], b = sigma[v];
      h.edges.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(h.edges.begin(), h.edges.end());
    for (int v : legs) h.legs.push_back(sigma[v]);
    return h;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.V == b.V && a.edges == b.edges && a.legs == b.legs;
  }
};

// Half-edge bijection realizing an isomorphism; legs are always fixed by
// automorphisms and permuted consistently under relabelings.
using HalfEdgeMap = std::vector<int>;

namespace detail {

inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Given a vertex permutation with graph.permuted(sigma) == graph, emits
// every compatible half-edge bijection: parallel edges may permute and
// self-loops may flip.
template <typename Fn>
void expand_vertex_aut(const Graph& g, const std::vector<int>& sigma, Fn&& fn) {
  // group edge indices by their (unordered) endpoint pair
  std::map<std::pair<int, int>, std::vector<int>> classes;
  for (int i = 0; i < g.E(); ++i) classes[g.edges[i]].push_back(i);
  // target class of each source class under sigma
  std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;  // (src, dst)
  for (auto& [key, src] : classes) {
    std::pair<int, int> tgt = {sigma[key.first], sigma[key.second]};
    if (tgt.first > tgt.second) std::swap(tgt.first, tgt.second);
    auto it = classes.find(tgt);
    if (it == classes.end() || it->second.size() != src.size()) return;  // not an aut
    pairs.push_back({src, it->second});
  }

  HalfEdgeMap base(g.n_half());
  for (int j = 0; j < g.n(); ++j) base[2 * g.E() + j] = 2 * g.E() + j;

  std::function<void(std::size_t, HalfEdgeMap&)> rec = [&](std::size_t ci, HalfEdgeMap& he) {
    if (ci == pairs.size()) {
      fn(he);
      return;
    }
    auto& [src, dst] = pairs[ci];
    std::vector<int> assign(dst.begin(), dst.end());
    std::sort(assign.begin(), assign.end());
    do {
      // orientation choices per edge (2 for self-loops, forced otherwise)
      std::function<void(std::size_t)> orient = [&](std::size_t k) {
        if (k == src.size()) {
          rec(ci + 1, he);
          return;
        }
        int e = src[k], f = assign[k];
        auto [u, v] = g.edges[e];
        auto [fu, fv] = g.edges[f];
        bool self = u == v;
        if (self) {
          for (int o = 0; o < 2; ++o) {
            he[2 * e] = 2 * f + o;
            he[2 * e + 1] = 2 * f + 1 - o;
            orient(k + 1);
          }
        } else {
          if (sigma[u] == fu && sigma[v] == fv) {
            he[2 * e] = 2 * f;
            he[2 * e + 1] = 2 * f + 1;
            orient(k + 1);
          }
          if (sigma[u] == fv && sigma[v] == fu) {
            he[2 * e] = 2 * f + 1;
            he[2 * e + 1] = 2 * f;
            orient(k + 1);
          }
        }
      };
      orient(0);
    } while (std::next_permutation(assign.begin(), assign.end()));
  };
  rec(0, base);
}

}  // namespace detail

// All automorphisms of g as half-edge bijections (legs fixed pointwise).
inline std::vector<HalfEdgeMap> automorphisms(const Graph& g) {
  std::vector<HalfEdgeMap> out;
  for (const auto& sigma : detail::all_permutations(g.V)) {
    if (!(g.permuted(sigma) == g)) continue;
    detail::expand_vertex_aut(g, sigma, [&](const HalfEdgeMap& he) { out.push_back(he); });
  }
  return out;
}

inline long vertex_automorphism_count(const Graph& g) {
  long c = 0;
  for (const auto& sigma : detail::all_permutations(g.V))
    if (g.permuted(sigma) == g) ++c;
  return c;
}

// Canonical representative of the isomorphism class (minimal encoding over
// vertex permutations) plus one vertex permutation realizing it.
inline std::pair<Graph, std::vector<int>> canonical_graph(const Graph& g) {
  Graph best;
  std::vector<int> best_sigma;
  std::vector<int> best_enc;
  for (const auto& sigma : detail::all_permutations(g.V)) {
    Graph h = g.permuted(sigma);
    std::vector<int> enc = h.encode();
    if (best_enc.empty() || enc < best_enc) {
      best_enc = enc;
      best = h;
      best_sigma = sigma;
    }
  }
  return {best, best_sigma};
}

// A half-edge map g -> g.permuted(sigma)-as-sorted, resolving parallel-edge
// and self-loop ambiguities deterministically (the orbit minimization over
// automorphisms downstream makes the choice immaterial).
inline HalfEdgeMap half_edge_map_for(const Graph& g, const std::vector<int>& sigma,
                                     const Graph& target) {
  std::map<std::pair<int, int>, std::vector<int>> tclasses;
  for (int i = 0; i < target.E(); ++i) tclasses[target.edges[i]].push_back(i);
  std::map<std::pair<int, int>, std::size_t> used;
  HalfEdgeMap he(g.n_half(), -1);
  for (int e = 0; e < g.E(); ++e) {
    auto [u, v] = g.edges[e];
    std::pair<int, int> key = {std::min(sigma[u], sigma[v]), std::max(sigma[u], sigma[v])};
    int f = tclasses.at(key)[used[key]++];
    if (sigma[u] <= sigma[v]) {
      he[2 * e] = 2 * f;
      he[2 * e + 1] = 2 * f + 1;
    } else {
      he[2 * e] = 2 * f + 1;
      he[2 * e + 1] = 2 * f;
    }
  }
  for (int j = 0; j < g.n(); ++j) he[2 * g.E() + j] = 2 * target.E() + j;
  return he;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

// One canonical representative per isomorphism class of connected,
// at-least-trivalent multigraphs of loop order g with n labeled legs.
inline std::vector<Graph> enumerate_graphs_nocache(int g, int n) {
  if (2 * g + n < 3) throw std::invalid_argument("enumerate_graphs: need 2g + n >= 3");
  std::vector<Graph> reps;
  std::vector<std::vector<int>> seen;
  int vmax = std::max(1, 2 * g - 2 + n);
  for (int V = 1; V <= vmax; ++V) {
    int E = V + g - 1;
    if (E < 0) continue;
    if (3 * V > 2 * E + n) continue;
    // candidate edge slots
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < V; ++u)
      for (int v = u; v < V; ++v) slots.push_back({u, v});
    // multisets of E slots
    std::vector<int> pick(E, 0);
    std::function<void(int, int)> rec_edges = [&](int pos, int start) {
      if (pos == E) {
        Graph base;
        base.V = V;
        for (int t = 0; t < E; ++t) base.edges.push_back(slots[pick[t]]);
        std::sort(base.edges.begin(), base.edges.end());
        // legs
        std::vector<int> leg(n, 0);
        std::function<void(int)> rec_legs = [&](int lpos) {
          if (lpos == n) {
            Graph cand = base;
            cand.legs = leg;
            auto val = cand.valences();
            for (int v = 0; v < V; ++v)
              if (val[v] < 3) return;
            if (!cand.connected()) return;
            auto [canon, sigma] = canonical_graph(cand);
            auto enc = canon.encode();
            auto it = std::lower_bound(seen.begin(), seen.end(), enc);
            if (it != seen.end() && *it == enc) return;
            seen.insert(it, enc);
            reps.push_back(canon);
            return;
          }
          for (int v = 0; v < V; ++v) {
            leg[lpos] = v;
            rec_legs(lpos + 1);
          }
        };
        rec_legs(0);
        return;
      }
      for (int s = start; s < static_cast<int>(slots.size()); ++s) {
        pick[pos] = s;
        rec_edges(pos + 1, s);
      }
    };
    rec_edges(0, 0);
  }
  std::sort(reps.begin(), reps.end(),
            [](const Graph& a, const Graph& b) { return a.encode() < b.encode(); });
  return reps;
}

// ---------------------------------------------------------------------------
// Text format and cache
// ---------------------------------------------------------------------------

inline std::string graph_to_text(const Graph& g) {
  std::ostringstream os;
  os << g.V << " " << g.E() << " " << g.n() << " " << g.loop_order() << "\n";
  for (auto& [u, v] : g.edges) os << u << " " << v << "\n";
  for (int j = 0; j < g.n(); ++j) os << "leg " << (j + 1) << " -> " << g.legs[j] << "\n";
  return os.str();
}

inline Graph graph_from_text(std::istream& is) {
  Graph g;
  int E = 0, n = 0, loops = 0;
  if (!(is >> g.V >> E >> n >> loops)) throw std::runtime_error("graph_from_text: bad header");
  for (int i = 0; i < E; ++i) {
    int u, v;
    if (!(is >> u >> v)) throw std::runtime_error("graph_from_text: bad edge");
    g.edges.push_back({u, v});
  }
  for (int j = 0; j < n; ++j) {
    std::string kw, arrow;
    int l, v;
    if (!(is >> kw >> l >> arrow >> v) || kw != "leg" || arrow != "->")
      throw std::runtime_error("graph_from_text: bad leg line");
    g.legs.push_back(v);
  }
  if (g.loop_order() != loops) throw std::runtime_error("graph_from_text: loop order mismatch");
  return g;
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string cache_dir() {
  const char* env = std::getenv("QBV_CACHE");
  return env && *env ? std::string(env) : std::string(".qbv-cache");
}

// Cached enumeration. Cache files carry a content hash; a stale or damaged
// file is silently regenerated. Writes go through a temp file + rename so
// concurrent readers never see partial content.
inline std::vector<Graph> enumerate_graphs(int g, int n) {
  if (2 * g + n < 3) throw std::invalid_argument("enumerate_graphs: need 2g + n >= 3");
  namespace fs = std::filesystem;
  fs::path dir = cache_dir();
  fs::path file = dir / ("graphs-g" + std::to_string(g) + "-n" + std::to_string(n) + ".txt");

  auto try_load = [&]() -> std::vector<Graph> {
    std::ifstream in(file);
    if (!in) return {};
    std::string header;
    std::getline(in, header);
    std::uint64_t hash = 0;
    std::size_t count = 0;
    {
      std::istringstream hs(header);
      std::string tag;
      if (!(hs >> tag >> count >> std::hex >> hash) || tag != "#qop-graphs") return {};
    }
    std::ostringstream body;
    body << in.rdbuf();
    if (fnv1a(body.str()) != hash) return {};
    std::istringstream bs(body.str());
    std::vector<Graph> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(graph_from_text(bs));
    return out;
  };

  auto loaded = try_load();
  if (!loaded.empty()) return loaded;

  std::vector<Graph> reps = enumerate_graphs_nocache(g, n);
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ostringstream body;
  for (const auto& gr : reps) body << graph_to_text(gr);
  std::string content = body.str();
  std::ostringstream full;
  full << "#qop-graphs " << reps.size() << " " << std::hex << fnv1a(content) << "\n" << content;
  fs::path tmp = file;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    out << full.str();
  }
  fs::rename(tmp, file, ec);
  if (ec) fs::remove(tmp, ec);
  return reps;
}

}  // namespace qop
