#include "schurkit/sring.hpp"

#include <algorithm>
#include <numeric>

namespace schurkit {

std::string format_set(ElemSet s) {
  std::string out = "{";
  bool first = true;
  for (int e : set_to_vector(s)) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

SRing::SRing(const SRing& o) : g_(o.g_), classes_(o.classes_), class_of_(o.class_of_) {
  std::lock_guard<std::mutex> lk(o.mu_);
  cache_ = o.cache_;
}

SRing& SRing::operator=(const SRing& o) {
  if (this == &o) return *this;
  g_ = o.g_;
  classes_ = o.classes_;
  class_of_ = o.class_of_;
  std::lock_guard<std::mutex> lk(o.mu_);
  cache_ = o.cache_;
  return *this;
}

SRing::SRing(SRing&& o) noexcept
    : g_(std::move(o.g_)),
      classes_(std::move(o.classes_)),
      class_of_(std::move(o.class_of_)),
      cache_(std::move(o.cache_)) {}

SRing& SRing::operator=(SRing&& o) noexcept {
  g_ = std::move(o.g_);
  classes_ = std::move(o.classes_);
  class_of_ = std::move(o.class_of_);
  cache_ = std::move(o.cache_);
  return *this;
}

SRing SRing::validate(GroupPtr g, const std::vector<std::vector<int>>& classes) {
  std::vector<ElemSet> masks;
  masks.reserve(classes.size());
  for (const auto& c : classes) {
    for (int e : c)
      if (e < 0 || e >= g->order())
        throw std::invalid_argument("class element " + std::to_string(e) + " out of range");
    masks.push_back(vector_to_set(c));
  }
  return validate(std::move(g), masks);
}

SRing SRing::validate(GroupPtr g, const std::vector<ElemSet>& classes) {
  if (!g) throw std::invalid_argument("null group");
  const int n = g->order();
  if (n > 64) throw std::invalid_argument("ring layer handles groups of order <= 64");

  SRing a;
  a.g_ = std::move(g);
  a.classes_ = classes;
  std::sort(a.classes_.begin(), a.classes_.end(), [](ElemSet x, ElemSet y) {
    if (set_size(x) != set_size(y)) return set_size(x) < set_size(y);
    return set_min(x) < set_min(y);
  });

  // partition check
  ElemSet seen = 0;
  for (ElemSet c : a.classes_) {
    if (c == 0) throw std::invalid_argument("empty class in partition");
    if (seen & c)
      throw std::invalid_argument("classes overlap at " + format_set(seen & c));
    seen |= c;
  }
  if (seen != full_set(n)) throw std::invalid_argument("classes do not cover the group");

  // axiom 1: the identity is alone in its class
  if (a.classes_[0] != set_insert(0, a.g_->identity())) {
    ElemSet idcl = 0;
    for (ElemSet c : a.classes_)
      if (set_contains(c, a.g_->identity())) idcl = c;
    throw AxiomViolation(1, "identity class " + format_set(idcl) + " is not {e}");
  }

  a.class_of_.assign(n, -1);
  for (std::size_t i = 0; i < a.classes_.size(); ++i)
    for (int e : set_to_vector(a.classes_[i])) a.class_of_[e] = static_cast<int>(i);

  // axiom 2: the inverse of a class is a class
  for (ElemSet c : a.classes_) {
    ElemSet inv = 0;
    for (int e : set_to_vector(c)) inv = set_insert(inv, a.g_->inv(e));
    if (std::find(a.classes_.begin(), a.classes_.end(), inv) == a.classes_.end())
      throw AxiomViolation(2, "class " + format_set(c) + " has inverse " + format_set(inv) +
                                  " which is not a class");
  }

  // axiom 3: for each pair of classes the product counts are constant on
  // every class
  const int r = a.rank();
  for (int xi = 0; xi < r; ++xi)
    for (int yi = 0; yi < r; ++yi) {
      std::vector<int> cnt(n, 0);
      for (int x : set_to_vector(a.classes_[xi]))
        for (int y : set_to_vector(a.classes_[yi])) cnt[a.g_->mul(x, y)]++;
      for (int zi = 0; zi < r; ++zi) {
        auto z = set_to_vector(a.classes_[zi]);
        for (int e : z)
          if (cnt[e] != cnt[z[0]])
            throw AxiomViolation(
                3, "product of " + format_set(a.classes_[xi]) + " and " +
                       format_set(a.classes_[yi]) + " is not constant on " +
                       format_set(a.classes_[zi]));
      }
    }

  return a;
}

bool SRing::is_a_set(ElemSet x) const {
  ElemSet rest = x;
  while (rest) {
    int e = set_min(rest);
    ElemSet c = classes_[class_of_[e]];
    if ((x & c) != c) return false;
    rest &= ~c;
  }
  return true;
}

ASet SRing::aset(ElemSet x) const {
  if (!is_a_set(x))
    throw std::invalid_argument(format_set(x) + " is not a union of classes");
  return ASet{x};
}

std::vector<Subgroup> SRing::a_subgroups() const {
  std::vector<Subgroup> out;
  for (Subgroup& s : subgroup_lattice(*g_))
    if (is_a_set(s.mask())) out.push_back(std::move(s));
  return out;
}

const std::vector<int>& SRing::constants_row(int xi, int yi) const {
  if (xi < 0 || xi >= rank() || yi < 0 || yi >= rank())
    throw std::invalid_argument("class index out of range");
  std::lock_guard<std::mutex> lk(mu_);
  auto key = std::make_pair(xi, yi);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  std::vector<int> cnt(g_->order(), 0);
  for (int x : set_to_vector(classes_[xi]))
    for (int y : set_to_vector(classes_[yi])) cnt[g_->mul(x, y)]++;
  std::vector<int> row(rank(), 0);
  for (int zi = 0; zi < rank(); ++zi) row[zi] = cnt[set_min(classes_[zi])];
  return cache_.emplace(key, std::move(row)).first->second;
}

std::vector<std::tuple<int, int, int, int>> SRing::nonzero_constants() const {
  std::vector<std::tuple<int, int, int, int>> out;
  for (int xi = 0; xi < rank(); ++xi)
    for (int yi = 0; yi < rank(); ++yi) {
      const std::vector<int>& row = constants_row(xi, yi);
      for (int zi = 0; zi < rank(); ++zi)
        if (row[zi]) out.emplace_back(xi, yi, zi, row[zi]);
    }
  return out;
}

SRing quotient_sring(const SRing& a, const Section& s) {
  if (!a.is_a_set(s.upper.mask()) || !a.is_a_set(s.lower.mask()))
    throw std::invalid_argument("not an A-section: upper " + format_set(s.upper.mask()) +
                                " or lower " + format_set(s.lower.mask()) +
                                " is not a union of classes");
  std::vector<ElemSet> images;
  for (ElemSet c : a.classes()) {
    if ((c & s.upper.mask()) == 0) continue;
    if ((c & ~s.upper.mask()) != 0)
      throw PropertyViolation("class " + format_set(c) + " straddles the upper subgroup");
    ElemSet img = 0;
    for (int e : set_to_vector(c)) img = set_insert(img, s.pi[e]);
    if (std::find(images.begin(), images.end(), img) == images.end())
      images.push_back(img);
  }
  return SRing::validate(std::make_shared<Group>(s.quotient), images);
}

ElemSet power_map_classes(const SRing& a, int class_index, long long m) {
  if (class_index < 0 || class_index >= a.rank())
    throw std::invalid_argument("class index out of range");
  if (std::gcd(m, static_cast<long long>(a.group().order())) != 1)
    throw std::invalid_argument("exponent " + std::to_string(m) +
                                " shares a factor with the group order");
  ElemSet out = 0;
  for (int x : set_to_vector(a.classes()[class_index]))
    out = set_insert(out, a.group().pow(x, m));
  if (std::find(a.classes().begin(), a.classes().end(), out) == a.classes().end())
    throw PropertyViolation("power image " + format_set(out) +
                            " of a class is not a class; the ring is corrupt");
  return out;
}

ASet sylow_power_set(const SRing& a, const ASet& x, int p) {
  const Group& g = a.group();
  if (p < 2 || g.order() % p != 0)
    throw std::invalid_argument(std::to_string(p) + " does not divide the group order");
  ElemSet h = 0;
  for (int e = 0; e < g.order(); ++e)
    if (g.pow(e, p) == g.identity()) h = set_insert(h, e);
  ElemSet out = 0;
  for (int e : set_to_vector(x.elements)) {
    ElemSet coset = 0;
    for (int l : set_to_vector(h)) coset = set_insert(coset, g.mul(l, e));
    if (set_size(x.elements & coset) % p != 0) out = set_insert(out, g.pow(e, p));
  }
  if (!a.is_a_set(out))
    throw PropertyViolation("p-power set " + format_set(out) +
                            " is not an A-set; the ring is corrupt");
  return ASet{out};
}

int intersection_numbers(const SRing& a, const Subgroup& h, int class_index) {
  if (class_index < 0 || class_index >= a.rank())
    throw std::invalid_argument("class index out of range");
  if (!a.is_a_set(h.mask()))
    throw std::invalid_argument("subgroup " + format_set(h.mask()) + " is not an A-subgroup");
  const Group& g = a.group();
  ElemSet x = a.classes()[class_index];
  int common = -1;
  for (int e : set_to_vector(x)) {
    ElemSet coset = 0;
    for (int l : h.elements) coset = set_insert(coset, g.mul(l, e));
    int c = set_size(x & coset);
    if (common < 0) common = c;
    if (c != common)
      throw PropertyViolation("coset intersection sizes differ on " + format_set(x));
  }
  return common;
}

LemmaVerdict separat_check(const SRing& a, int class_index, const Subgroup& h) {
  if (class_index < 0 || class_index >= a.rank())
    throw std::invalid_argument("class index out of range");
  const Group& g = a.group();
  ElemSet x = a.classes()[class_index];
  ElemSet inside = x & h.mask();
  ElemSet outside = x & ~h.mask();
  if (inside == 0 || outside == 0) return LemmaVerdict::not_applicable;

  Subgroup span_inside = generate_subgroup(g, set_to_vector(inside));
  ElemSet rad_outside = radical(g, set_to_vector(outside)).mask();
  if ((span_inside.mask() & ~rad_outside) != 0) return LemmaVerdict::not_applicable;

  Subgroup span_x = generate_subgroup(g, set_to_vector(x));
  ElemSet rad_x = radical(g, set_to_vector(x)).mask();
  if (x != (span_x.mask() & ~rad_x))
    throw PropertyViolation("class " + format_set(x) +
                            " is not its span minus its radical");
  if ((rad_x & ~h.mask()) != 0)
    throw PropertyViolation("radical " + format_set(rad_x) + " escapes " +
                            format_set(h.mask()));
  return LemmaVerdict::holds;
}

bool is_p_sring(const SRing& a, int p) {
  int q = 0;
  if (!a.group().is_p_group(&q) || q != p)
    throw std::invalid_argument("group is not a " + std::to_string(p) + "-group");
  for (ElemSet c : a.classes()) {
    int s = set_size(c);
    while (s % p == 0) s /= p;
    if (s != 1) return false;
  }
  return true;
}

bool rationality(const SRing& a, ElemSet x) {
  const Group& g = a.group();
  for (int m = 1; m < g.order(); ++m) {
    if (std::gcd(m, g.order()) != 1) continue;
    ElemSet img = 0;
    for (int e : set_to_vector(x)) img = set_insert(img, g.pow(e, m));
    if (img != x) return false;
  }
  return true;
}

}  // namespace schurkit
