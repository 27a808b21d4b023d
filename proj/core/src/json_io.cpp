#include "schurkit/json_io.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace schurkit {

namespace {

using Json = nlohmann::ordered_json;

Json parse(const std::string& text, const char* who) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw std::invalid_argument(std::string(who) + ": malformed JSON");
  return j;
}

std::vector<int> int_array(const Json& j, const char* who) {
  if (!j.is_array()) throw std::invalid_argument(std::string(who) + ": expected an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const Json& v : j) {
    if (!v.is_number_integer())
      throw std::invalid_argument(std::string(who) + ": expected integer entries");
    out.push_back(v.get<int>());
  }
  return out;
}

Json group_json(const Group& g) {
  Json j;
  j["factors"] = g.factors();
  return j;
}

Group group_from(const Json& j, const char* who) {
  if (!j.is_object() || !j.contains("factors"))
    throw std::invalid_argument(std::string(who) + ": expected {\"factors\":[...]}");
  return Group(int_array(j["factors"], who));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string group_to_json(const Group& g) { return dump(group_json(g)); }

Group group_from_json(const std::string& text) {
  return group_from(parse(text, "group_from_json"), "group_from_json");
}

std::string sring_to_json(const SRing& a) {
  Json j;
  j["group"] = group_json(a.group());
  Json classes = Json::array();
  for (ElemSet x : a.classes()) classes.push_back(set_to_vector(x));
  j["classes"] = std::move(classes);
  return dump(j);
}

SRing sring_from_json(const std::string& text) {
  const Json j = parse(text, "sring_from_json");
  if (!j.is_object() || !j.contains("group") || !j.contains("classes"))
    throw std::invalid_argument("sring_from_json: expected {\"group\":...,\"classes\":...}");
  auto g = std::make_shared<Group>(group_from(j["group"], "sring_from_json").factors());
  if (!j["classes"].is_array())
    throw std::invalid_argument("sring_from_json: classes must be an array");
  std::vector<std::vector<int>> classes;
  for (const Json& c : j["classes"]) classes.push_back(int_array(c, "sring_from_json"));
  return SRing::validate(g, classes);
}

std::string structure_constants_csv(const SRing& a) {
  std::ostringstream out;
  out << "X,Y,Z,c\n";
  for (const auto& [x, y, z, c] : a.nonzero_constants())
    out << x << ',' << y << ',' << z << ',' << c << '\n';
  return out.str();
}

std::string perm_to_json(const Perm& p) {
  Json j = p.images();
  return dump(j);
}

Perm perm_from_json(const std::string& text) {
  const Json j = parse(text, "perm_from_json");
  std::vector<int> img = int_array(j, "perm_from_json");
  std::vector<char> seen(img.size(), 0);
  for (int v : img) {
    if (v < 0 || v >= static_cast<int>(img.size()) || seen[v])
      throw std::invalid_argument("perm_from_json: image array is not a permutation");
    seen[v] = 1;
  }
  return Perm(std::move(img));
}

std::string permgroup_to_json(const PermGroup& k) {
  Json j;
  j["degree"] = k.degree();
  Json gens = Json::array();
  for (const Perm& p : k.generators()) gens.push_back(p.images());
  j["generators"] = std::move(gens);
  j["order"] = k.order();
  return dump(j);
}

PermGroup permgroup_from_json(const std::string& text) {
  const Json j = parse(text, "permgroup_from_json");
  if (!j.is_object() || !j.contains("degree") || !j.contains("generators") ||
      !j.contains("order"))
    throw std::invalid_argument(
        "permgroup_from_json: expected {\"degree\":...,\"generators\":...,\"order\":...}");
  const int degree = j["degree"].get<int>();
  std::vector<Perm> gens;
  for (const Json& arr : j["generators"]) {
    std::vector<int> img = int_array(arr, "permgroup_from_json");
    if (static_cast<int>(img.size()) != degree)
      throw std::invalid_argument("permgroup_from_json: generator degree mismatch");
    gens.push_back(Perm(std::move(img)));
  }
  const std::uint64_t claimed = j["order"].get<std::uint64_t>();
  PermGroup k = gens.empty() ? PermGroup::trivial(degree) : [&] {
    ClosureOptions opts;
    opts.max_order = UINT64_MAX;
    return PermGroup::close(std::move(gens), opts);
  }();
  if (k.order() != claimed)
    throw std::invalid_argument("permgroup_from_json: claimed order " +
                                std::to_string(claimed) + " but closure has order " +
                                std::to_string(k.order()));
  return k;
}

std::string decomposition_to_json(const DecompositionReport& rep) {
  Json j;
  j["kind"] = to_string(rep.kind);
  j["statements"] = {{"rank2", rep.statement1},
                     {"tensor", rep.statement2},
                     {"s_wreath", rep.statement3}};
  Json tensors = Json::array();
  for (const auto& [left, right] : rep.tensor_witnesses) {
    Json w;
    w["left"] = left.elements;
    w["right"] = right.elements;
    tensors.push_back(std::move(w));
  }
  j["tensor_witnesses"] = std::move(tensors);
  Json wreaths = Json::array();
  for (const SectionWitness& sw : rep.swreath_witnesses) {
    Json w;
    w["upper"] = sw.section.upper.elements;
    w["lower"] = sw.section.lower.elements;
    w["nontrivial"] = sw.nontrivial;
    w["conditions"] = {{"ca", sw.flags.ca}, {"caa", sw.flags.caa}, {"caaa", sw.flags.caaa}};
    wreaths.push_back(std::move(w));
  }
  j["s_wreath_witnesses"] = std::move(wreaths);
  return dump(j);
}

}  // namespace schurkit
