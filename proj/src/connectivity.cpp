#include "perc/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace perc {

void UnionFind::reset(int n) {
  parent_.resize(n);
  size_.assign(n, 1);
  std::iota(parent_.begin(), parent_.end(), 0);
}

int UnionFind::find(int x) {
  int root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const int next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool UnionFind::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

void label_clusters(const TriangularDomain& d, const Coloring& c, Color color, ClusterLabeling& out,
                    UnionFind& uf) {
  const int n = d.site_count();
  uf.reset(n);
  for (int s = 0; s < n; ++s) {
    if (!has_color(c, s, color)) continue;
    const auto& nb = d.neighbors(s);
    for (int k = 0; k < 3; ++k) {
      const int u = nb[k];
      if (u >= 0 && u < n && has_color(c, u, color)) uf.unite(s, u);
    }
  }
  out.color = color;
  out.cluster.assign(n, -1);
  out.arc_flags.clear();
  out.sizes.clear();
  std::vector<std::int32_t>& id = out.cluster;
  for (int s = 0; s < n; ++s) {
    if (!has_color(c, s, color)) continue;
    const int root = uf.find(s);
    if (id[root] < 0) {
      id[root] = static_cast<int>(out.arc_flags.size());
      out.arc_flags.push_back(0);
      out.sizes.push_back(0);
    }
    const int k = id[root];
    id[s] = k;
    out.arc_flags[k] |= d.touch_mask(s);
    ++out.sizes[k];
  }
}

ClusterLabeling label_clusters(const TriangularDomain& d, const Coloring& c, Color color) {
  ClusterLabeling out;
  UnionFind uf;
  label_clusters(d, c, color, out, uf);
  return out;
}

bool crossing_exists(const ClusterLabeling& l, int arc_a, int arc_b) {
  return count_spanning_clusters(l, arc_a, arc_b) > 0;
}

int count_spanning_clusters(const ClusterLabeling& l, int arc_a, int arc_b) {
  if (arc_a == arc_b) throw std::invalid_argument("arcs must be distinct");
  const std::uint32_t m = (1u << arc_a) | (1u << arc_b);
  int n = 0;
  for (auto f : l.arc_flags) n += (f & m) == m;
  return n;
}

Axial central_site(const TriangularDomain& d) {
  double cx = 0, cy = 0;
  for (int s = 0; s < d.site_count(); ++s) {
    const Point p = d.plane(s);
    cx += p.x;
    cy += p.y;
  }
  cx /= d.site_count();
  cy /= d.site_count();
  int best = 0;
  double bd = std::numeric_limits<double>::max();
  for (int s = 0; s < d.site_count(); ++s) {
    const Point p = d.plane(s);
    const double dd = (p.x - cx) * (p.x - cx) + (p.y - cy) * (p.y - cy);
    if (dd < bd - 1e-12) { bd = dd; best = s; }
  }
  return d.coord(best);
}

Annulus make_annulus(const TriangularDomain& d, Axial center, int r, int R) {
  if (r < 1 || R < r + 2) throw std::invalid_argument("annulus needs 1 <= r and r + 2 <= R");
  Annulus a;
  a.center = center;
  a.r = r;
  a.R = R;
  a.local.assign(d.site_count(), -1);
  for (int dy = -R + 1; dy < R; ++dy)
    for (int dx = -R + 1; dx < R; ++dx) {
      const Axial p{center.x + dx, center.y + dy};
      const int dist = hex_distance(p, center);
      if (dist >= R) continue;
      const int s = d.site_at(p);
      if (s < 0) throw std::out_of_range("annulus does not fit in the domain");
      if (dist < r) continue;
      a.local[s] = static_cast<int>(a.sites.size());
      a.sites.push_back(s);
      if (dist == r) a.inner.push_back(s);
      if (dist == R - 1) a.outer.push_back(s);
    }
  auto ccw = [&](std::vector<int>& ring) {
    std::sort(ring.begin(), ring.end(), [&](int u, int v) {
      const Axial p = d.coord(u) - center, q = d.coord(v) - center;
      return std::atan2(p.y * 0.8660254037844386, p.x + 0.5 * p.y) <
             std::atan2(q.y * 0.8660254037844386, q.x + 0.5 * q.y);
    });
  };
  ccw(a.inner);
  ccw(a.outer);
  return a;
}

namespace {

// Walks the interface entering the annulus through inner edge i and reports
// whether it leaves through the outer ring.
bool interface_reaches_outer(const TriangularDomain& d, const Coloring& c, const Annulus& a, int i) {
  const int n = static_cast<int>(a.inner.size());
  int left = a.inner[i], right = a.inner[(i + 1) % n];
  auto ahead = [&](int l, int rgt) {
    const int k = offset_index(d.coord(rgt) - d.coord(l));
    return d.neighbors(l)[(k + 1) % 6];
  };
  if (hex_distance(d.coord(ahead(left, right)), a.center) != a.r + 1) std::swap(left, right);
  const std::size_t guard = 6 * a.sites.size() + 16;
  for (std::size_t step = 0; step < guard; ++step) {
    const int w = ahead(left, right);
    if (w >= d.site_count() || a.local[w] < 0)
      return hex_distance(d.coord(w), a.center) == a.R;
    if (c.blue(w) == c.blue(left)) left = w;
    else right = w;
  }
  throw std::logic_error("annulus interface did not terminate");
}

// Unit-capacity vertex-disjoint path search between the rings, inside one
// cluster, stopping once `bound` paths are found.
int disjoint_crossings(const TriangularDomain& d, const Annulus& a, const std::vector<int>& member,
                       int cluster, int bound) {
  std::vector<int> ids;
  for (std::size_t i = 0; i < a.sites.size(); ++i)
    if (member[i] == cluster) ids.push_back(static_cast<int>(i));
  const int m = static_cast<int>(ids.size());
  std::vector<int> pos(a.sites.size(), -1);
  for (int j = 0; j < m; ++j) pos[ids[j]] = j;
  // Nodes: 2j = in, 2j+1 = out, 2m = source, 2m+1 = sink.
  const int src = 2 * m, snk = 2 * m + 1;
  struct Arc { int to, cap, rev; };
  std::vector<std::vector<Arc>> g(2 * m + 2);
  auto add = [&](int u, int v) {
    g[u].push_back({v, 1, static_cast<int>(g[v].size())});
    g[v].push_back({u, 0, static_cast<int>(g[u].size()) - 1});
  };
  for (int j = 0; j < m; ++j) {
    const int s = a.sites[ids[j]];
    add(2 * j, 2 * j + 1);
    const int dist = hex_distance(d.coord(s), a.center);
    if (dist == a.r) add(src, 2 * j);
    if (dist == a.R - 1) add(2 * j + 1, snk);
    for (int u : d.neighbors(s)) {
      if (u < 0 || u >= d.site_count() || a.local[u] < 0) continue;
      const int q = pos[a.local[u]];
      if (q >= 0) add(2 * j + 1, 2 * q);
    }
  }
  int flow = 0;
  std::vector<std::pair<int, int>> prev(g.size());
  while (flow < bound) {
    std::fill(prev.begin(), prev.end(), std::pair<int, int>{-1, -1});
    std::vector<int> queue{src};
    prev[src] = {src, -1};
    for (std::size_t h = 0; h < queue.size() && prev[snk].first < 0; ++h) {
      const int u = queue[h];
      for (std::size_t e = 0; e < g[u].size(); ++e) {
        const Arc& arc = g[u][e];
        if (arc.cap > 0 && prev[arc.to].first < 0) {
          prev[arc.to] = {u, static_cast<int>(e)};
          queue.push_back(arc.to);
        }
      }
    }
    if (prev[snk].first < 0) break;
    for (int v = snk; v != src;) {
      auto [u, e] = prev[v];
      g[u][e].cap -= 1;
      g[v][g[u][e].rev].cap += 1;
      v = u;
    }
    ++flow;
  }
  return flow;
}

}  // namespace

std::vector<int> crossing_interfaces(const TriangularDomain& d, const Coloring& c, const Annulus& a) {
  std::vector<int> out;
  const int n = static_cast<int>(a.inner.size());
  for (int i = 0; i < n; ++i)
    if (c.blue(a.inner[i]) != c.blue(a.inner[(i + 1) % n]) && interface_reaches_outer(d, c, a, i))
      out.push_back(i);
  return out;
}

bool arm_event(const TriangularDomain& d, const Coloring& c, const Annulus& a, std::string_view pattern) {
  const int k = static_cast<int>(pattern.size());
  if (k == 0) return true;
  for (char ch : pattern)
    if (ch != 'B' && ch != 'Y') throw std::invalid_argument("pattern characters must be B or Y");

  // Same-color clusters inside the annulus.
  const int na = static_cast<int>(a.sites.size());
  UnionFind uf(na);
  for (int i = 0; i < na; ++i) {
    const int s = a.sites[i];
    for (int kk = 0; kk < 3; ++kk) {
      const int u = d.neighbors(s)[kk];
      if (u >= 0 && u < d.site_count() && a.local[u] >= 0 && c.blue(u) == c.blue(s))
        uf.unite(i, a.local[u]);
    }
  }
  std::vector<int> member(na);
  for (int i = 0; i < na; ++i) member[i] = uf.find(i);

  struct Sector { char color; int cluster; int cap; bool exact; };
  std::vector<Sector> sectors;
  const auto cuts = crossing_interfaces(d, c, a);
  const int n = static_cast<int>(a.inner.size());
  if (cuts.empty()) {
    // No interface crosses, so at most one color crosses, in one cluster.
    std::vector<char> at_outer(na, 0);
    for (int s : a.outer) at_outer[member[a.local[s]]] = 1;
    for (int s : a.inner) {
      const int root = member[a.local[s]];
      if (at_outer[root]) {
        const char col = c.blue(s) ? 'B' : 'Y';
        for (char ch : pattern)
          if (ch != col) return false;
        return disjoint_crossings(d, a, member, root, k) >= k;
      }
    }
    return false;
  }
  for (int i : cuts) {
    const int s = a.inner[(i + 1) % n];
    sectors.push_back({c.blue(s) ? 'B' : 'Y', member[a.local[s]], 1, false});
  }
  const int m = static_cast<int>(sectors.size());
  auto capacity = [&](Sector& sec) {
    if (!sec.exact) {
      sec.cap = disjoint_crossings(d, a, member, sec.cluster, k);
      sec.exact = true;
    }
    return sec.cap;
  };
  // Greedy placement for every starting sector and pattern rotation.
  for (int start = 0; start < m; ++start)
    for (int rot = 0; rot < k; ++rot) {
      int sec = start, used = 0, advanced = 0;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j) {
        const char want = pattern[(rot + j) % k];
        while (true) {
          Sector& cur = sectors[sec];
          if (cur.color == want && (used == 0 || used < capacity(cur))) break;
          sec = (sec + 1) % m;
          used = 0;
          if (++advanced >= m) { ok = false; break; }
        }
        ++used;
      }
      if (ok) return true;
    }
  return false;
}

bool arm_event(const TriangularDomain& d, const Coloring& c, int r, int R, std::string_view pattern) {
  return arm_event(d, c, make_annulus(d, central_site(d), r, R), pattern);
}

}  // namespace perc
