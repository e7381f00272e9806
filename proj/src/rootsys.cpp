#include "rootsys.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace ceppa {

FamilyType parse_family(const std::string& s) {
  if (s == "A" || s == "a") return FamilyType::A;
  if (s == "D" || s == "d") return FamilyType::D;
  if (s == "E" || s == "e") return FamilyType::E;
  fail(errc::unsupported_type, "family must be A, D or E, got '" + s + "'");
}

std::string family_name(FamilyType f) {
  switch (f) {
    case FamilyType::A: return "A";
    case FamilyType::D: return "D";
    case FamilyType::E: return "E";
  }
  return "?";
}

namespace {

std::vector<std::pair<int, int>> diagram_edges(FamilyType family, int rank) {
  std::vector<std::pair<int, int>> edges;
  switch (family) {
    case FamilyType::A:
      require(rank >= 1, errc::unsupported_type, "type A needs rank >= 1");
      for (int i = 0; i + 1 < rank; ++i) edges.emplace_back(i, i + 1);
      break;
    case FamilyType::D:
      // the two short-leg tips are vertices 0 and 1, the nodal vertex is
      // last, and the long leg runs 2..rank-2 ascending toward it
      require(rank >= 4, errc::unsupported_type, "type D needs rank >= 4");
      edges.emplace_back(0, rank - 1);
      edges.emplace_back(1, rank - 1);
      edges.emplace_back(rank - 2, rank - 1);
      for (int i = 2; i + 1 < rank - 1; ++i) edges.emplace_back(i, i + 1);
      break;
    case FamilyType::E:
      require(rank >= 6 && rank <= 8, errc::unsupported_type, "type E needs rank 6, 7 or 8");
      edges.emplace_back(0, 2);
      edges.emplace_back(1, 3);
      for (int i = 2; i + 1 < rank; ++i) edges.emplace_back(i, i + 1);
      break;
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

int RootSystem::root_id(const std::vector<int>& coeff) const {
  auto it = index.find(coeff);
  return it == index.end() ? -1 : it->second;
}

int RootSystem::simple_root_id(int vertex) const {
  std::vector<int> e(rank, 0);
  e[vertex] = 1;
  return root_id(e);
}

int RootSystem::inner(int rid_a, int rid_b) const {
  const auto& a = roots[rid_a];
  const auto& b = roots[rid_b];
  int s = 0;
  for (int i = 0; i < rank; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank; ++j)
      if (b[j] != 0 && cartan[i][j] != 0) s += a[i] * cartan[i][j] * b[j];
  }
  return s;
}

int RootSystem::inner_simple(int rid, int vertex) const {
  const auto& a = roots[rid];
  int s = 2 * a[vertex];
  for (int u : adj[vertex]) s -= a[u];
  return s;
}

RootSystem build_root_system(FamilyType family, int rank) {
  RootSystem rs;
  rs.family = family;
  rs.rank = rank;
  rs.edges = diagram_edges(family, rank);

  rs.adj.assign(rank, {});
  for (auto [u, v] : rs.edges) {
    rs.adj[u].push_back(v);
    rs.adj[v].push_back(u);
  }
  for (auto& nb : rs.adj) std::sort(nb.begin(), nb.end());

  rs.cartan.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) rs.cartan[i][i] = 2;
  for (auto [u, v] : rs.edges) rs.cartan[u][v] = rs.cartan[v][u] = -1;

  // bipartite signs by breadth-first search from vertex 0
  rs.eps.assign(rank, 0);
  rs.eps[0] = 1;
  std::queue<int> bfs;
  bfs.push(0);
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    for (int u : rs.adj[v])
      if (rs.eps[u] == 0) {
        rs.eps[u] = -rs.eps[v];
        bfs.push(u);
      }
  }
  require(std::count(rs.eps.begin(), rs.eps.end(), 0) == 0, errc::internal, "diagram is not connected");

  // close the simple roots under addition: alpha + alpha_j is a root exactly
  // when (alpha, alpha_j) = -1
  std::vector<std::vector<int>> level;
  for (int v = 0; v < rank; ++v) {
    std::vector<int> e(rank, 0);
    e[v] = 1;
    level.push_back(e);
  }
  std::sort(level.begin(), level.end());
  rs.by_height.assign(1, {});  // heights are 1-based
  int ht = 1;
  while (!level.empty()) {
    rs.by_height.push_back({});
    for (auto& coeff : level) {
      int id = int(rs.roots.size());
      rs.index[coeff] = id;
      rs.roots.push_back(coeff);
      rs.height.push_back(ht);
      rs.by_height[ht].push_back(id);
    }
    std::set<std::vector<int>> next;
    for (auto& coeff : level) {
      for (int j = 0; j < rank; ++j) {
        int pair = 2 * coeff[j];
        for (int u : rs.adj[j]) pair -= coeff[u];
        if (pair == -1) {
          auto up = coeff;
          ++up[j];
          next.insert(std::move(up));
        }
      }
    }
    level.assign(next.begin(), next.end());
    ++ht;
  }

  rs.num_roots = int(rs.roots.size());
  int top = int(rs.by_height.size()) - 1;
  require(int(rs.by_height[top].size()) == 1, errc::internal, "highest root is not unique");
  rs.theta = rs.by_height[top][0];
  rs.coxeter = top + 1;
  require(rs.num_roots * 2 == rs.coxeter * rank, errc::internal, "root count does not match the Coxeter number");

  // exponents: the multiset {m_i} is dual to the partition of roots by height
  for (int j = 1; j <= rank; ++j) {
    int m = 0;
    for (int p = 1; p <= top; ++p)
      if (int(rs.by_height[p].size()) >= j) ++m;
    rs.exponents.push_back(m);
  }
  std::sort(rs.exponents.begin(), rs.exponents.end());
  for (int i = 0; i < rank; ++i)
    require(rs.exponents[i] + rs.exponents[rank - 1 - i] == rs.coxeter, errc::internal,
            "exponents are not palindromic");

  for (int v = 0; v < rank; ++v)
    if (rs.adj[v].size() == 3) rs.nodal = v;
  if (rs.nodal >= 0) {
    for (int start : rs.adj[rs.nodal]) {
      int len = 0, prev = rs.nodal, cur = start;
      while (true) {
        ++len;
        int nxt = -1;
        for (int u : rs.adj[cur])
          if (u != prev) nxt = u;
        if (nxt < 0) break;
        prev = cur;
        cur = nxt;
      }
      rs.legs.push_back(len);
    }
    std::sort(rs.legs.begin(), rs.legs.end());
  }

  return rs;
}

QMatrix cartan_qmatrix(const RootSystem& rs) {
  QMatrix c(rs.rank, rs.rank);
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j) c.at(i, j) = rs.cartan[i][j];
  return c;
}

QMatrix adjacency_qmatrix(const RootSystem& rs) {
  QMatrix c(rs.rank, rs.rank);
  for (auto [u, v] : rs.edges) c.at(u, v) = c.at(v, u) = 1;
  return c;
}

Rat weight_pair(const RootSystem& rs, const std::vector<Rat>& mu, int root_id) {
  require(int(mu.size()) == rs.rank, errc::bad_argument, "weight has the wrong length");
  Rat s = 0;
  const auto& a = rs.roots[root_id];
  for (int i = 0; i < rs.rank; ++i)
    if (a[i] != 0) s += mu[i] * a[i];
  return s;
}

bool is_regular(const RootSystem& rs, const std::vector<Rat>& mu) {
  for (int id = 0; id < rs.num_roots; ++id)
    if (weight_pair(rs, mu, id) == 0) return false;
  return true;
}

std::vector<Rat> rho_weight(int rank) { return std::vector<Rat>(rank, Rat(1)); }

std::vector<int> height_counts(const RootSystem& rs) {
  std::vector<int> n;
  for (int p = 1; p < rs.coxeter; ++p) n.push_back(int(rs.by_height[p].size()));
  return n;
}

std::vector<int> nodal_height_counts(const RootSystem& rs) {
  require(rs.nodal >= 0, errc::no_nodal_vertex, "type A has no trivalent vertex");
  auto full = height_counts(rs);
  std::vector<int> n;
  for (int p = 1; p < rs.coxeter; ++p) {
    int count = 0;
    for (int id : rs.by_height[p])
      if (rs.roots[id][rs.nodal] > 0) ++count;
    int formula = full[p - 1];
    for (int l : rs.legs) formula -= std::max(l - (p - 1), 0);
    require(count == formula, errc::internal, "nodal height count breaks the leg formula");
    n.push_back(count);
  }
  return n;
}

namespace {

// Shared driver for the descending recursion from the highest root.
template <typename T, typename Step>
std::vector<T> descend(const RootSystem& rs, Step step) {
  std::vector<T> w(rs.num_roots, T(0));
  w[rs.theta] = T(1);
  for (int p = rs.coxeter - 2; p >= 1; --p) {
    for (int id : rs.by_height[p]) {
      T sum(0);
      for (int j = 0; j < rs.rank; ++j) {
        if (rs.inner_simple(id, j) != -1) continue;
        auto up = rs.roots[id];
        ++up[j];
        sum += w[rs.root_id(up)];
      }
      w[id] = step(id, sum);
    }
  }
  return w;
}

}  // namespace

std::vector<Rat> path_weights(const RootSystem& rs, const std::vector<Rat>& mu) {
  require(is_regular(rs, mu), errc::irregular_weight, "weight pairs to zero against some root");
  return descend<Rat>(rs, [&](int id, const Rat& sum) -> Rat { return sum / weight_pair(rs, mu, id); });
}

std::vector<Int> path_counts(const RootSystem& rs) {
  return descend<Int>(rs, [](int, const Int& sum) -> Int { return sum; });
}

}  // namespace ceppa
