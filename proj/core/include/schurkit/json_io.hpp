#pragma once

#include <string>

#include "schurkit/group.hpp"
#include "schurkit/perm.hpp"
#include "schurkit/sring.hpp"
#include "schurkit/sring_build.hpp"

namespace schurkit {

// JSON text interfaces.  All emitters are deterministic (fixed key order,
// two-space indent, '\n' line ends); all loaders validate the payload and
// throw std::invalid_argument on malformed input.

std::string group_to_json(const Group& g);       // {"factors":[4,3,3]}
Group group_from_json(const std::string& text);

// {"group":{"factors":[...]},"classes":[[indices],...]}; re-validated on load
std::string sring_to_json(const SRing& a);
SRing sring_from_json(const std::string& text);

// header "X,Y,Z,c" then one row per nonzero structure constant
std::string structure_constants_csv(const SRing& a);

std::string perm_to_json(const Perm& p);  // image array
Perm perm_from_json(const std::string& text);

// {"degree":n,"generators":[[...],...],"order":k}; the claimed order is
// re-verified against a fresh closure on load
std::string permgroup_to_json(const PermGroup& k);
PermGroup permgroup_from_json(const std::string& text);

// named witnesses: subgroup element lists, section pairs, condition flags
std::string decomposition_to_json(const DecompositionReport& rep);

}  // namespace schurkit
