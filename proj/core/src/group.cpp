#include "schurkit/group.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace schurkit {

namespace {

constexpr int kMaxTableOrder = 1024;  // keeps the O(n^2) tables small

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

}  // namespace

Group::Group(std::vector<int> factors) : factors_(std::move(factors)) {
  long long order = 1;
  for (int f : factors_) {
    if (f < 2) throw std::invalid_argument("cyclic factor must be >= 2");
    order *= f;
    if (order > kMaxTableOrder) throw std::invalid_argument("group order too large");
  }
  order_ = static_cast<int>(order);

  long long exp = 1;
  for (int f : factors_) exp = lcm_ll(exp, f);
  exponent_ = static_cast<int>(exp);

  const int k = static_cast<int>(factors_.size());
  mul_.resize(static_cast<std::size_t>(order_) * order_);
  inv_.resize(order_);
  std::vector<int> ca(k), cb(k);
  for (int a = 0; a < order_; ++a) {
    int t = a;
    for (int i = 0; i < k; ++i) {
      ca[i] = t % factors_[i];
      t /= factors_[i];
    }
    // inverse
    int invIdx = 0, stride = 1;
    for (int i = 0; i < k; ++i) {
      invIdx += ((factors_[i] - ca[i]) % factors_[i]) * stride;
      stride *= factors_[i];
    }
    inv_[a] = invIdx;
    for (int b = 0; b < order_; ++b) {
      t = b;
      for (int i = 0; i < k; ++i) {
        cb[i] = t % factors_[i];
        t /= factors_[i];
      }
      int idx = 0;
      stride = 1;
      for (int i = 0; i < k; ++i) {
        idx += ((ca[i] + cb[i]) % factors_[i]) * stride;
        stride *= factors_[i];
      }
      mul_[static_cast<std::size_t>(a) * order_ + b] = idx;
    }
  }

  elt_order_.resize(order_);
  for (int a = 0; a < order_; ++a) {
    int k2 = 1, x = a;
    while (x != 0) {
      x = mul(x, a);
      ++k2;
    }
    elt_order_[a] = k2;
  }
}

int Group::pow(int a, long long m) const {
  int ord = elt_order_[a];
  long long e = m % ord;
  if (e < 0) e += ord;
  int r = 0, base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

std::vector<int> Group::coords_of(int idx) const {
  std::vector<int> c(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    c[i] = idx % factors_[i];
    idx /= factors_[i];
  }
  return c;
}

int Group::index_of(const std::vector<int>& coords) const {
  if (coords.size() != factors_.size())
    throw std::invalid_argument("coordinate arity mismatch");
  int idx = 0, stride = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    int c = coords[i] % factors_[i];
    if (c < 0) c += factors_[i];
    idx += c * stride;
    stride *= factors_[i];
  }
  return idx;
}

bool Group::is_p_group(int* p_out) const {
  if (order_ == 1) return false;
  int n = order_, p = 2;
  while (n % p != 0) ++p;
  while (n % p == 0) n /= p;
  if (n != 1) return false;
  if (p_out) *p_out = p;
  return true;
}

std::vector<int> Group::invariant_factors() const {
  if (order_ == 1) return {};
  // collect the p-power parts of each factor, per prime
  std::vector<std::pair<int, std::vector<int>>> parts;  // (prime, powers desc)
  for (int f : factors_) {
    int n = f;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      int q = 1;
      while (n % p == 0) {
        n /= p;
        q *= p;
      }
      auto it = std::find_if(parts.begin(), parts.end(),
                             [&](auto& pr) { return pr.first == p; });
      if (it == parts.end()) {
        parts.push_back({p, {q}});
      } else {
        it->second.push_back(q);
      }
    }
    if (n > 1) {
      auto it = std::find_if(parts.begin(), parts.end(),
                             [&](auto& pr) { return pr.first == n; });
      if (it == parts.end()) {
        parts.push_back({n, {n}});
      } else {
        it->second.push_back(n);
      }
    }
  }
  std::size_t depth = 0;
  for (auto& [p, powers] : parts) {
    std::sort(powers.rbegin(), powers.rend());
    depth = std::max(depth, powers.size());
  }
  std::vector<int> inv(depth, 1);
  for (auto& [p, powers] : parts)
    for (std::size_t j = 0; j < powers.size(); ++j) inv[j] *= powers[j];
  std::reverse(inv.begin(), inv.end());  // ascending, d_i | d_{i+1}
  return inv;
}

bool Group::sylow_shape_ok() const {
  std::vector<std::pair<int, std::vector<int>>> parts;
  for (int f : factors_) {
    int n = f;
    int p = 2;
    while (n > 1) {
      while (n % p != 0 && p * p <= n) ++p;
      if (n % p != 0) p = n;
      int q = 1;
      while (n % p == 0) {
        n /= p;
        q *= p;
      }
      auto it = std::find_if(parts.begin(), parts.end(),
                             [&](auto& pr) { return pr.first == p; });
      if (it == parts.end()) {
        parts.push_back({p, {q}});
      } else {
        it->second.push_back(q);
      }
    }
  }
  for (auto& [p, powers] : parts) {
    bool elementary = std::all_of(powers.begin(), powers.end(),
                                  [&](int q) { return q == p; });
    bool c4 = (p == 2 && powers.size() == 1 && powers[0] == 4);
    if (!elementary && !c4) return false;
  }
  return true;
}

std::string Group::describe() const {
  if (factors_.empty()) return "C1";
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += "x";
    s += "C" + std::to_string(factors_[i]);
  }
  return s;
}

bool Subgroup::contains(int e) const {
  return std::binary_search(elements.begin(), elements.end(), e);
}

ElemSet Subgroup::mask() const {
  ElemSet m = 0;
  for (int e : elements) {
    if (e >= 64) throw std::invalid_argument("subgroup does not fit a 64-bit mask");
    m = set_insert(m, e);
  }
  return m;
}

namespace {

// Greedy generating subset of a closed element list.
std::vector<int> reduce_generators(const Group& g, const std::vector<int>& elements) {
  std::vector<int> gens;
  std::vector<char> span(g.order(), 0);
  span[0] = 1;
  int span_size = 1;
  for (int e : elements) {
    if (span[e]) continue;
    gens.push_back(e);
    // close span under the new generator
    std::vector<int> cur;
    for (int x = 0; x < g.order(); ++x)
      if (span[x]) cur.push_back(x);
    std::queue<int> q;
    for (int x : cur) q.push(x);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      int y = g.mul(x, e);
      if (!span[y]) {
        span[y] = 1;
        ++span_size;
        q.push(y);
      }
    }
    if (span_size == static_cast<int>(elements.size())) break;
  }
  return gens;
}

}  // namespace

Subgroup generate_subgroup(const Group& g, const std::vector<int>& gens) {
  std::vector<char> in(g.order(), 0);
  in[0] = 1;
  std::queue<int> q;
  q.push(0);
  for (int e : gens) {
    if (e < 0 || e >= g.order()) throw std::invalid_argument("generator out of range");
    if (!in[e]) {
      in[e] = 1;
      q.push(e);
    }
  }
  std::vector<int> base = gens;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int e : base) {
      int y = g.mul(x, e);
      if (!in[y]) {
        in[y] = 1;
        q.push(y);
      }
    }
    int y = g.inv(x);
    if (!in[y]) {
      in[y] = 1;
      q.push(y);
    }
  }
  Subgroup s;
  for (int x = 0; x < g.order(); ++x)
    if (in[x]) s.elements.push_back(x);
  s.generators = reduce_generators(g, s.elements);
  return s;
}

Subgroup radical(const Group& g, const std::vector<int>& x) {
  if (x.empty()) throw std::invalid_argument("radical of the empty set");
  std::vector<char> in(g.order(), 0);
  for (int e : x) {
    if (e < 0 || e >= g.order()) throw std::invalid_argument("element out of range");
    in[e] = 1;
  }
  Subgroup r;
  for (int c = 0; c < g.order(); ++c) {
    bool ok = true;
    for (int e : x) {
      if (!in[g.mul(c, e)]) {
        ok = false;
        break;
      }
    }
    if (ok) r.elements.push_back(c);
  }
  r.generators = reduce_generators(g, r.elements);
  return r;
}

std::vector<Subgroup> subgroup_lattice(const Group& g, int bound) {
  if (g.order() > bound)
    throw BudgetExceeded("subgroup lattice: group order " + std::to_string(g.order()) +
                         " exceeds bound " + std::to_string(bound));
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> out;
  std::queue<Subgroup> work;
  Subgroup triv;
  triv.elements = {0};
  seen.insert(triv.elements);
  out.push_back(triv);
  work.push(triv);
  while (!work.empty()) {
    Subgroup h = work.front();
    work.pop();
    for (int e = 1; e < g.order(); ++e) {
      if (h.contains(e)) continue;
      std::vector<int> gens = h.generators;
      gens.push_back(e);
      Subgroup bigger = generate_subgroup(g, gens);
      if (seen.insert(bigger.elements).second) {
        out.push_back(bigger);
        work.push(bigger);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.elements.size() != b.elements.size())
      return a.elements.size() < b.elements.size();
    return a.elements < b.elements;
  });
  return out;
}

std::vector<std::pair<int, int>> abelian_basis(const std::vector<std::vector<int>>& table) {
  const int m = static_cast<int>(table.size());
  if (m == 0) throw std::invalid_argument("empty multiplication table");
  if (m == 1) return {};

  std::vector<int> ord(m, 1);
  for (int a = 1; a < m; ++a) {
    int x = a, k = 1;
    while (x != 0) {
      x = table[x][a];
      ++k;
    }
    ord[a] = k;
  }
  // candidates by decreasing order, then index; DFS with backtracking.
  std::vector<int> cand(m - 1);
  std::iota(cand.begin(), cand.end(), 1);
  std::sort(cand.begin(), cand.end(), [&](int a, int b) {
    if (ord[a] != ord[b]) return ord[a] > ord[b];
    return a < b;
  });

  std::vector<std::pair<int, int>> basis;
  std::vector<char> span(m, 0);
  span[0] = 1;
  int span_size = 1;

  std::vector<int> span_list = {0};

  auto dfs = [&](auto&& self) -> bool {
    if (span_size == m) return true;
    for (int gID : cand) {
      if (span[gID]) continue;
      // powers of g must avoid span until they wrap to 0
      bool indep = true;
      int x = gID;
      while (x != 0) {
        if (span[x]) {
          indep = false;
          break;
        }
        x = table[x][gID];
      }
      if (!indep) continue;
      // extend span by <g>
      std::vector<int> added;
      int p = gID;
      while (p != 0) {
        for (int s : span_list) {
          int y = table[s][p];
          if (!span[y]) {
            span[y] = 1;
            added.push_back(y);
          }
        }
        p = table[p][gID];
      }
      for (int y : added) span_list.push_back(y);
      span_size += static_cast<int>(added.size());
      basis.push_back({gID, ord[gID]});
      if (self(self)) return true;
      basis.pop_back();
      span_size -= static_cast<int>(added.size());
      span_list.resize(span_list.size() - added.size());
      for (int y : added) span[y] = 0;
    }
    return false;
  };
  if (!dfs(dfs)) throw PropertyViolation("no cyclic basis found: table is not an abelian group");
  return basis;
}

namespace {

// Shared by make_section and as_group: turn a coset/element table plus basis
// into a Group and the index maps.
struct TableGroupResult {
  Group group;
  std::vector<int> table_to_group;  // table index -> group element index
  std::vector<int> group_to_table;
};

TableGroupResult materialize(const std::vector<std::vector<int>>& table) {
  const int m = static_cast<int>(table.size());
  auto basis = abelian_basis(table);
  std::vector<int> factors;
  for (auto& [gen, o] : basis) factors.push_back(o);
  Group grp(factors);
  std::vector<int> t2g(m, -1), g2t(m, -1);
  // enumerate all mixed-radix tuples over the basis
  for (int idx = 0; idx < m; ++idx) {
    int t = idx, prod = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      int a = t % basis[i].second;
      t /= basis[i].second;
      int pw = 0, b = basis[i].first;
      for (int j = 0; j < a; ++j) pw = table[pw][b];
      prod = table[prod][pw];
    }
    // idx is a valid Group element index because factor strides match basis order
    t2g[prod] = idx;
    g2t[idx] = prod;
  }
  for (int i = 0; i < m; ++i)
    if (t2g[i] < 0) throw PropertyViolation("basis enumeration did not cover the table");
  return {std::move(grp), std::move(t2g), std::move(g2t)};
}

}  // namespace

Section make_section(const Group& g, const Subgroup& upper, const Subgroup& lower) {
  for (int e : lower.elements)
    if (!upper.contains(e))
      throw std::invalid_argument("section: lower subgroup not contained in upper");

  std::vector<int> coset_id(g.order(), -1);
  std::vector<std::vector<int>> cosets;
  for (int u : upper.elements) {
    if (coset_id[u] >= 0) continue;
    std::vector<int> c;
    for (int l : lower.elements) c.push_back(g.mul(l, u));
    std::sort(c.begin(), c.end());
    for (int e : c) coset_id[e] = static_cast<int>(cosets.size());
    cosets.push_back(std::move(c));
  }

  const int m = static_cast<int>(cosets.size());
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      table[i][j] = coset_id[g.mul(cosets[i][0], cosets[j][0])];

  TableGroupResult tg = materialize(table);

  Section s{upper, lower, std::move(cosets), std::move(tg.group), {}, {}};
  s.pi.assign(g.order(), -1);
  for (int e = 0; e < g.order(); ++e)
    if (coset_id[e] >= 0) s.pi[e] = tg.table_to_group[coset_id[e]];
  s.rep_of.resize(m);
  for (int q = 0; q < m; ++q) s.rep_of[q] = s.cosets[tg.group_to_table[q]][0];
  return s;
}

EmbeddedGroup as_group(const Group& g, const Subgroup& u) {
  const int m = u.order();
  std::vector<int> local(g.order(), -1);
  for (int i = 0; i < m; ++i) local[u.elements[i]] = i;
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int prod = g.mul(u.elements[i], u.elements[j]);
      if (local[prod] < 0) throw std::invalid_argument("element list is not closed");
      table[i][j] = local[prod];
    }
  TableGroupResult tg = materialize(table);
  EmbeddedGroup out{std::move(tg.group), {}, {}};
  out.to_parent.resize(m);
  for (int q = 0; q < m; ++q) out.to_parent[q] = u.elements[tg.group_to_table[q]];
  out.from_parent.assign(g.order(), -1);
  for (int q = 0; q < m; ++q) out.from_parent[out.to_parent[q]] = q;
  return out;
}

bool is_automorphism(const Group& g, const std::vector<int>& image) {
  if (static_cast<int>(image.size()) != g.order()) return false;
  std::vector<char> seen(g.order(), 0);
  for (int v : image) {
    if (v < 0 || v >= g.order() || seen[v]) return false;
    seen[v] = 1;
  }
  if (image[0] != 0) return false;
  for (int a = 0; a < g.order(); ++a)
    for (int b = a; b < g.order(); ++b)
      if (image[g.mul(a, b)] != g.mul(image[a], image[b])) return false;
  return true;
}

AutomorphismGroup automorphism_group(const Group& g) {
  const int n = g.order();
  const int k = static_cast<int>(g.factors().size());

  // images of the k standard generators determine the endomorphism
  std::vector<int> basis_idx(k);
  {
    int stride = 1;
    for (int i = 0; i < k; ++i) {
      basis_idx[i] = stride;
      stride *= g.factors()[i];
    }
  }
  std::vector<std::vector<int>> choices(k);
  for (int i = 0; i < k; ++i)
    for (int x = 0; x < n; ++x)
      if (g.factors()[i] % g.element_order(x) == 0) choices[i].push_back(x);

  std::vector<GroupAutomorphism> all;
  std::vector<int> pick(k);
  std::vector<int> image(n);
  std::vector<char> seen(n);

  auto emit = [&]() {
    // image of every element from generator images, walking indices in
    // mixed-radix order: image[idx] = image[prev] * pick[digit]
    image[0] = 0;
    std::vector<int> coords(k, 0);
    for (int idx = 1; idx < n; ++idx) {
      int i = 0;
      while (coords[i] + 1 == g.factors()[i]) {
        coords[i] = 0;
        ++i;
      }
      ++coords[i];
      int val = 0;
      for (int j = 0; j < k; ++j) val = g.mul(val, g.pow(pick[j], coords[j]));
      image[idx] = val;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int v : image) {
      if (seen[v]) return;
      seen[v] = 1;
    }
    all.push_back(GroupAutomorphism{image});
  };

  auto rec = [&](auto&& self, int i) -> void {
    if (i == k) {
      emit();
      return;
    }
    for (int x : choices[i]) {
      pick[i] = x;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  std::sort(all.begin(), all.end());

  // greedy generating subset
  AutomorphismGroup out;
  out.all = std::move(all);
  std::set<std::vector<int>> closure;
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  closure.insert(id);
  for (std::size_t i = 0; i < out.all.size(); ++i) {
    if (closure.count(out.all[i].image)) continue;
    out.generator_indices.push_back(static_cast<int>(i));
    // close under composition with everything reached so far
    std::queue<std::vector<int>> q;
    closure.insert(out.all[i].image);
    q.push(out.all[i].image);
    while (!q.empty()) {
      auto f = q.front();
      q.pop();
      std::vector<std::vector<int>> snapshot(closure.begin(), closure.end());
      for (const auto& h : snapshot) {
        std::vector<int> fh(n), hf(n);
        for (int x = 0; x < n; ++x) {
          fh[x] = h[f[x]];
          hf[x] = f[h[x]];
        }
        if (closure.insert(fh).second) q.push(fh);
        if (closure.insert(hf).second) q.push(hf);
      }
    }
    if (closure.size() == out.all.size()) break;
  }
  return out;
}

int coset_order_lift(const Group& g, const Subgroup& l, int x, int y) {
  if (!g.sylow_shape_ok())
    throw std::invalid_argument("order lift needs elementary or C4 Sylow subgroups");
  if (l.contains(x) || l.contains(y))
    throw std::invalid_argument("order lift: x and y must lie outside the subgroup");
  int ox = g.element_order(x);
  bool odd_prime = (ox % 2 == 1);
  if (odd_prime) {
    for (int d = 3; d * d <= ox; d += 2)
      if (ox % d == 0) {
        odd_prime = false;
        break;
      }
  }
  if (!(ox == 4 || (odd_prime && ox > 1)))
    throw std::invalid_argument("order lift: |x| must be an odd prime or 4");

  auto coset_order = [&](int e) {
    int k = 1, v = e;
    while (!l.contains(v)) {
      v = g.mul(v, e);
      ++k;
    }
    return k;
  };
  if (coset_order(x) != coset_order(y))
    throw std::invalid_argument("order lift: coset orders differ");

  for (int le : l.elements) {
    int cand = g.mul(le, y);
    if (g.element_order(cand) == ox) return cand;
  }
  throw PropertyViolation("order lift failed: no coset element of the required order");
}

}  // namespace schurkit
