#include "avgjohn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <thread>

#include "avgjohn/errors.hpp"

namespace avgjohn {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : edges_(std::move(edges)), adj_(n) {
  if (n > kMaxGraphOrder) throw ValidationError("graph order exceeds 4096");
  std::set<Edge> seen;
  for (auto& [u, v] : edges_) {
    if (u >= n || v >= n) throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("self-loops are not allowed");
    const Edge key{std::min(u, v), std::max(u, v)};
    if (!seen.insert(key).second) throw ValidationError("duplicate edge");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

long Graph::degree() const {
  if (adj_.empty()) return -1;
  const std::size_t d = adj_[0].size();
  for (const auto& nb : adj_)
    if (nb.size() != d) return -1;
  return static_cast<long>(d);
}

Graph hypercube(int k) {
  if (k < 1 || k > 12) throw ValidationError("hypercube dimension must lie in [1, 12]");
  const std::size_t n = std::size_t{1} << k;
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v)
    for (int b = 0; b < k; ++b) {
      const std::size_t u = v ^ (std::size_t{1} << b);
      if (v < u) edges.emplace_back(v, u);
    }
  return Graph(n, std::move(edges));
}

Graph cycle(std::size_t n) {
  if (n < 3) throw ValidationError("cycle needs at least 3 vertices");
  if (n > kMaxGraphOrder) throw ValidationError("graph order exceeds 4096");
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph(n, std::move(edges));
}

Graph complete(std::size_t n) {
  if (n < 2) throw ValidationError("complete graph needs at least 2 vertices");
  if (n > kMaxGraphOrder) throw ValidationError("graph order exceeds 4096");
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

bool is_connected(const Graph& g) {
  if (g.size() == 0) return true;
  std::vector<char> seen(g.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t u : g.neighbors(v))
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count == g.size();
}

Graph random_regular(std::size_t n, std::size_t degree, std::uint64_t seed) {
  if (n < 2 || n > kMaxGraphOrder) throw ValidationError("random regular graph order out of range");
  if (degree < 1 || degree >= n) throw ValidationError("degree must lie in [1, n)");
  if ((n * degree) % 2 != 0) throw ValidationError("n * degree must be even");
  constexpr int kConnectAttempts = 100;
  constexpr long kPairingDraws = 200000;
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> stubs(n * degree);
  for (int attempt = 0; attempt < kConnectAttempts; ++attempt) {
    for (long draw = 0; draw < kPairingDraws; ++draw) {
      for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = i / degree;
      std::shuffle(stubs.begin(), stubs.end(), rng);
      std::set<Edge> seen;
      bool simple = true;
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < stubs.size(); i += 2) {
        const std::size_t u = std::min(stubs[i], stubs[i + 1]);
        const std::size_t v = std::max(stubs[i], stubs[i + 1]);
        if (u == v || !seen.insert({u, v}).second) {
          simple = false;
          break;
        }
        edges.emplace_back(u, v);
      }
      if (!simple) continue;
      Graph g(n, std::move(edges));
      if (is_connected(g)) return g;
      break;  // simple but disconnected: counts as one connectivity attempt
    }
  }
  throw NumericalFailure("random regular generation failed after 100 attempts");
}

unsigned thread_count() {
  if (const char* env = std::getenv("AVGJOHN_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
  }
  return 1;
}

FiniteMetricSpace bfs_metric(const Graph& g) {
  const std::size_t n = g.size();
  if (n == 0) throw ValidationError("graph is empty");
  Matrix d(n, n, -1.0);
  auto run = [&](std::size_t first, std::size_t stride) {
    std::vector<std::size_t> queue(n);
    for (std::size_t s = first; s < n; s += stride) {
      double* row = d.row(s);
      row[s] = 0.0;
      std::size_t head = 0, tail = 0;
      queue[tail++] = s;
      while (head < tail) {
        const std::size_t v = queue[head++];
        for (std::size_t u : g.neighbors(v))
          if (row[u] < 0.0) {
            row[u] = row[v] + 1.0;
            queue[tail++] = u;
          }
      }
    }
  };
  const unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(n));
  if (workers <= 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(run, t, workers);
    for (auto& th : pool) th.join();
  }
  for (double v : d.data())
    if (v < 0.0) throw ValidationError("graph is disconnected");
  return FiniteMetricSpace::trusted(std::move(d));
}

double distance_moment(const FiniteMetricSpace& m, double s, const ProbabilityWeights& w) {
  if (!(s > 0.0)) throw ValidationError("moment exponent must be positive");
  return std::pow(pair_moment(m.matrix(), w, s), 1.0 / s);
}

bool is_prime(int q) {
  if (q < 2) return false;
  for (int f = 2; f * f <= q; ++f)
    if (q % f == 0) return false;
  return true;
}

std::vector<int> mat_mul_mod(const std::vector<int>& a, const std::vector<int>& b, int k, int q) {
  std::vector<int> c(static_cast<std::size_t>(k * k), 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      int acc = 0;
      for (int l = 0; l < k; ++l) acc += a[i * k + l] * b[l * k + j];
      c[i * k + j] = acc % q;
    }
  return c;
}

namespace {

std::uint64_t encode(const std::vector<int>& x, int q) {
  std::uint64_t code = 0;
  for (int v : x) code = code * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(v);
  return code;
}

double sl_order(int k, int q) {
  double order = std::pow(q, k * (k - 1) / 2.0);
  for (int i = 2; i <= k; ++i) order *= std::pow(q, i) - 1.0;
  return order;
}

}  // namespace

std::size_t CayleyGroup::index_of(const std::vector<int>& x) const {
  const std::uint64_t code = encode(x, q);
  auto it = std::lower_bound(keys.begin(), keys.end(), code);
  if (it == keys.end() || *it != code) throw ValidationError("matrix is not a group element");
  return key_index[static_cast<std::size_t>(it - keys.begin())];
}

CayleyGroup cayley_sl(int k, int q) {
  if (k < 2) throw ValidationError("SL_k needs k >= 2");
  if (!is_prime(q)) throw ValidationError("field order must be prime");
  if (sl_order(k, q) > static_cast<double>(kMaxGraphOrder))
    throw ValidationError("group order exceeds the 4096 cap");

  CayleyGroup grp;
  grp.k = k;
  grp.q = q;
  const std::size_t kk = static_cast<std::size_t>(k * k);
  std::vector<int> id(kk, 0);
  for (int i = 0; i < k; ++i) id[i * k + i] = 1;

  std::set<std::uint64_t> gen_seen;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      for (int sign : {1, q - 1}) {
        auto g = id;
        g[i * k + j] = sign % q;
        if (gen_seen.insert(encode(g, q)).second) grp.generators.push_back(g);
      }
    }

  std::vector<std::pair<std::uint64_t, std::size_t>> index;
  auto lookup = [&](std::uint64_t code) -> long {
    auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(code, std::size_t{0}));
    if (it != index.end() && it->first == code) return static_cast<long>(it->second);
    return -1;
  };
  auto insert = [&](std::uint64_t code, std::size_t idx) {
    auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(code, std::size_t{0}));
    index.insert(it, {code, idx});
  };

  grp.elements.push_back(id);
  insert(encode(id, q), 0);
  std::set<Edge> edge_set;
  for (std::size_t head = 0; head < grp.elements.size(); ++head) {
    const auto x = grp.elements[head];
    for (const auto& g : grp.generators) {
      auto y = mat_mul_mod(x, g, k, q);
      const std::uint64_t code = encode(y, q);
      long idx = lookup(code);
      if (idx < 0) {
        idx = static_cast<long>(grp.elements.size());
        grp.elements.push_back(std::move(y));
        insert(code, static_cast<std::size_t>(idx));
      }
      const std::size_t u = static_cast<std::size_t>(idx);
      if (u != head) edge_set.insert({std::min(head, u), std::max(head, u)});
    }
  }
  grp.graph = Graph(grp.elements.size(), {edge_set.begin(), edge_set.end()});
  for (const auto& [code, idx] : index) {
    grp.keys.push_back(code);
    grp.key_index.push_back(idx);
  }
  for (const auto& x : grp.elements) {
    std::string s = "[";
    for (int i = 0; i < k; ++i) {
      if (i) s += ";";
      for (int j = 0; j < k; ++j) {
        if (j) s += ",";
        s += std::to_string(x[i * k + j]);
      }
    }
    grp.labels.push_back(s + "]");
  }
  return grp;
}

}  // namespace avgjohn
