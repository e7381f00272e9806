#include "lietheory.hpp"

#include <algorithm>
#include <random>

namespace ceppa {

std::vector<std::vector<int>> asymmetry_matrix(const RootSystem& rs) {
  std::vector P(rs.rank, std::vector<int>(rs.rank, 0));
  for (int i = 0; i < rs.rank; ++i) P[i][i] = 1;
  for (auto [u, v] : rs.edges) P[u][v] = 1;
  return P;
}

int epsilon_sign(const std::vector<std::vector<int>>& P, const std::vector<int>& a,
                 const std::vector<int>& b) {
  int parity = 0;
  int n = int(P.size());
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n; ++j) parity += a[i] * b[j] * P[i][j];
  }
  return (parity % 2) ? -1 : 1;
}

namespace {

void check_jacobi_triple(const NilpotentLie& lie, int a, int b, int c) {
  auto term = [&](int x, int y, int z) -> int {
    int inner = lie.coeff[y][z];
    if (inner == 0) return 0;
    return inner * lie.coeff[x][lie.sum_id[y][z]];
  };
  if (term(a, b, c) + term(b, c, a) + term(c, a, b) != 0)
    fail(errc::jacobi_failure, "jacobi identity fails on roots " + std::to_string(a) + ", " +
                                   std::to_string(b) + ", " + std::to_string(c));
}

}  // namespace

NilpotentLie build_nilpotent(const RootSystem& rs, std::uint64_t seed, int random_triples) {
  int N = rs.num_roots;
  NilpotentLie lie;
  lie.rs = &rs;
  lie.sum_id.assign(N, std::vector<int>(N, -1));
  lie.coeff.assign(N, std::vector<int>(N, 0));

  auto P = asymmetry_matrix(rs);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      std::vector<int> sum = rs.roots[a];
      for (int i = 0; i < rs.rank; ++i) sum[i] += rs.roots[b][i];
      int sid = rs.root_id(sum);
      if (sid < 0) continue;
      lie.sum_id[a][b] = sid;
      lie.coeff[a][b] = epsilon_sign(P, rs.roots[a], rs.roots[b]);
    }

  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      require(lie.coeff[a][b] == -lie.coeff[b][a], errc::jacobi_failure,
              "bracket is not antisymmetric");

  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j) {
      if (i == j) continue;
      int si = rs.simple_root_id(i), sj = rs.simple_root_id(j);
      bool adjacent = rs.cartan[i][j] == -1;
      if (adjacent) {
        int ij = lie.sum_id[si][sj];
        require(ij >= 0 && lie.coeff[si][ij] == 0, errc::jacobi_failure,
                "serre relation fails on adjacent vertices");
      } else {
        require(lie.coeff[si][sj] == 0, errc::jacobi_failure,
                "serre relation fails on distant vertices");
      }
    }

  for (int a = 0; a < N; ++a) {
    if (rs.height[a] == 1) continue;
    bool decomposable = false;
    for (int i = 0; i < rs.rank && !decomposable; ++i) {
      std::vector<int> down = rs.roots[a];
      down[i] -= 1;
      int did = rs.root_id(down);
      decomposable = did >= 0 && lie.coeff[rs.simple_root_id(i)][did] != 0;
    }
    require(decomposable, errc::jacobi_failure, "root space is not generated");
  }

  if (N <= 100) {
    for (int a = 0; a < N; ++a)
      for (int b = a; b < N; ++b)
        for (int c = b; c < N; ++c) check_jacobi_triple(lie, a, b, c);
  } else {
    for (int a = 0; a < N; ++a)
      for (int b = a; b < N; ++b) {
        if (lie.coeff[a][b] == 0) continue;
        for (int c = 0; c < N; ++c) check_jacobi_triple(lie, a, b, c);
      }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, N - 1);
    for (int t = 0; t < random_triples; ++t)
      check_jacobi_triple(lie, pick(rng), pick(rng), pick(rng));
  }

  return lie;
}

std::vector<int> lusztig_rescale(const NilpotentLie& lie) {
  const RootSystem& rs = *lie.rs;
  std::vector<int> c(rs.num_roots, 0);
  for (int i = 0; i < rs.rank; ++i) c[rs.simple_root_id(i)] = 1;
  for (int p = 2; p < rs.coxeter; ++p)
    for (int a : rs.by_height[p]) {
      for (int i = 0; i < rs.rank; ++i) {
        std::vector<int> down = rs.roots[a];
        down[i] -= 1;
        int b = rs.root_id(down);
        if (b < 0) continue;
        int cand = c[b] * lie.coeff[rs.simple_root_id(i)][b] * rs.eps[i];
        if (c[a] == 0)
          c[a] = cand;
        else
          require(c[a] == cand, errc::inconsistent_scaling,
                  "scaling signs disagree between decompositions of root " + std::to_string(a));
      }
      require(c[a] != 0, errc::internal, "root has no decomposition");
    }
  return c;
}

QMatrix l_operator(const NilpotentLie& lie, const std::vector<Rat>& mu,
                   const std::vector<Rat>& lambda, const std::vector<int>& scale) {
  const RootSystem& rs = *lie.rs;
  require(is_regular(rs, mu), errc::irregular_weight, "weight pairs to zero against some root");
  int N = rs.num_roots;
  QMatrix m(N, N);
  for (int a = 0; a < N; ++a) {
    Rat inv = Rat(-1) / weight_pair(rs, mu, a);
    if (!lambda.empty()) m.at(a, a) = inv * weight_pair(rs, lambda, a);
    for (int i = 0; i < rs.rank; ++i) {
      int si = rs.simple_root_id(i);
      if (lie.coeff[si][a] == 0) continue;
      int up = lie.sum_id[si][a];
      Rat entry = inv * rs.eps[i] * lie.coeff[si][a];
      if (!scale.empty()) entry *= Rat(scale[a] * scale[up]);  // each sign is +-1
      m.at(up, a) = entry;
    }
  }
  return m;
}

std::vector<QMatrix> t_matrices(const RootSystem& rs, const std::vector<Rat>& mu) {
  require(is_regular(rs, mu), errc::irregular_weight, "weight pairs to zero against some root");
  std::vector<QMatrix> out;
  for (int p = 1; p + 1 < rs.coxeter; ++p) {
    const auto& lo = rs.by_height[p];
    const auto& hi = rs.by_height[p + 1];
    QMatrix t(int(hi.size()), int(lo.size()));
    for (int r = 0; r < int(hi.size()); ++r)
      for (int i = 0; i < rs.rank; ++i) {
        std::vector<int> down = rs.roots[hi[r]];
        down[i] -= 1;
        int did = rs.root_id(down);
        if (did < 0) continue;
        int col = int(std::find(lo.begin(), lo.end(), did) - lo.begin());
        t.at(r, col) = Rat(1) / weight_pair(rs, mu, did);
      }
    out.push_back(std::move(t));
  }
  return out;
}

QMatrix height_block(const RootSystem& rs, const QMatrix& m, int from_height) {
  const auto& lo = rs.by_height[from_height];
  const auto& hi = rs.by_height[from_height + 1];
  QMatrix out(int(hi.size()), int(lo.size()));
  for (int r = 0; r < int(hi.size()); ++r)
    for (int c = 0; c < int(lo.size()); ++c) out.at(r, c) = m.at(hi[r], lo[c]);
  return out;
}

std::vector<int> t_rank_chain(const RootSystem& rs, const std::vector<Rat>& mu) {
  std::vector<int> out{rs.rank};
  auto ts = t_matrices(rs, mu);
  QMatrix acc = QMatrix::identity(rs.rank);
  for (const auto& t : ts) {
    acc = t * acc;
    out.push_back(rank(acc));
  }
  return out;
}

std::vector<Rat> t_path_traces(const RootSystem& rs, const std::vector<Rat>& mu) {
  auto ts = t_matrices(rs, mu);
  QMatrix acc = QMatrix::identity(rs.rank);
  for (const auto& t : ts) acc = t * acc;
  require(acc.rows() == 1, errc::internal, "top height is not a single root");
  std::vector<Rat> out(rs.rank);
  for (int i = 0; i < rs.rank; ++i) {
    int id = rs.simple_root_id(i);
    const auto& lo = rs.by_height[1];
    int col = int(std::find(lo.begin(), lo.end(), id) - lo.begin());
    out[i] = acc.at(0, col);
  }
  return out;
}

namespace {

bool all_zero(const std::vector<Rat>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

}  // namespace

bool t_membership(const RootSystem& rs, const std::vector<Rat>& mu, const std::vector<Rat>& phi,
                  int s) {
  require(int(phi.size()) == rs.rank, errc::bad_argument, "phi has the wrong length");
  require(s >= 0, errc::bad_argument, "negative degree");
  if (s == 0) return all_zero(phi);
  if (s >= rs.coxeter - 1) return true;
  auto ts = t_matrices(rs, mu);
  std::vector<Rat> v;
  for (int id : rs.by_height[1]) {
    int vertex = -1;
    for (int i = 0; i < rs.rank; ++i)
      if (rs.roots[id][i] == 1) vertex = i;
    v.push_back(phi[vertex]);
  }
  for (int k = 0; k < s; ++k) v = ts[k].apply(v);
  return all_zero(v);
}

bool l_membership(const NilpotentLie& lie, const std::vector<Rat>& mu,
                  const std::vector<Rat>& phi, int s) {
  const RootSystem& rs = *lie.rs;
  require(int(phi.size()) == rs.rank, errc::bad_argument, "phi has the wrong length");
  require(s >= 0, errc::bad_argument, "negative degree");
  if (s == 0) return all_zero(phi);
  if (s >= rs.coxeter - 1) return true;
  QMatrix l = l_operator(lie, mu, {}, lusztig_rescale(lie));
  std::vector<Rat> v(rs.num_roots);
  for (int i = 0; i < rs.rank; ++i) v[rs.simple_root_id(i)] = phi[i];
  for (int k = 0; k < s; ++k) v = l.apply(v);
  return all_zero(v);
}

namespace {

std::vector<Rat> spectral_points(const RootSystem& rs, const std::vector<Rat>& mu,
                                 const std::vector<Rat>& lambda) {
  require(is_regular(rs, mu), errc::irregular_weight, "weight pairs to zero against some root");
  std::vector<Rat> x(rs.num_roots);
  for (int a = 0; a < rs.num_roots; ++a)
    x[a] = -weight_pair(rs, lambda, a) / weight_pair(rs, mu, a);
  return x;
}

}  // namespace

QMatrix w_lambda_scalar(const RootSystem& rs, const std::vector<Rat>& mu,
                        const std::vector<Rat>& lambda) {
  std::vector<Rat> x = spectral_points(rs, mu, lambda);
  std::vector<Rat> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          errc::non_generic_lambda, "spectral points collide");
  int len = rs.coxeter - 1;
  QMatrix sys(rs.num_roots, rs.rank * len);
  for (int a = 0; a < rs.num_roots; ++a) {
    Rat pw(1);
    for (int k = 0; k < len; ++k) {
      for (int i = 0; i < rs.rank; ++i)
        sys.at(a, i * len + k) = pw * Rat(rs.eps[i] * rs.roots[a][i]);
      pw *= x[a];
    }
  }
  return kernel_basis(sys);
}

QMatrix w_lambda_operator(const NilpotentLie& lie, const std::vector<Rat>& mu,
                          const std::vector<Rat>& lambda) {
  const RootSystem& rs = *lie.rs;
  QMatrix l = l_operator(lie, mu, lambda, lusztig_rescale(lie));
  int len = rs.coxeter - 1;
  QMatrix sys(rs.num_roots, rs.rank * len);
  for (int i = 0; i < rs.rank; ++i) {
    std::vector<Rat> v(rs.num_roots);
    v[rs.simple_root_id(i)] = 1;
    for (int k = 0; k < len; ++k) {
      for (int a = 0; a < rs.num_roots; ++a) sys.at(a, i * len + k) = v[a];
      v = l.apply(v);
    }
  }
  return kernel_basis(sys);
}

}  // namespace ceppa
