#pragma once

#include <string>

#include <json.hpp>

#include "lcg/group.hpp"
#include "lcg/minimizer.hpp"
#include "lcg/prop42.hpp"
#include "lcg/search.hpp"
#include "lcg/subgroups.hpp"
#include "lcg/theorems.hpp"

namespace lcg {

using nlohmann::json;

inline constexpr const char* kSchema = "lcg-report/1";
inline constexpr const char* kVersion = "0.1.0";

// Group specs: cyclic, table, dihedral, quaternion, symmetric, alternating,
// affine_grid, padic_affine, product. Throws InputError on malformed specs.
GroupModel build_group(const json& spec);
GroupSet parse_set(const GroupModel& G, const json& spec);
Element parse_element(const GroupModel& G, const json& spec);
Ball parse_ball(const json& spec);

// Reads a file, or parses the argument itself when it starts with '{' or '['.
json load_json(const std::string& path_or_inline);
std::string read_text(const std::string& path);

json to_json(const HaarValue& v);
json to_json(const GroupModel& G, const Element& x);
json to_json(const GroupModel& G, const GroupSet& s);
json to_json(const GroupModel& G, const SetBracket& b);
json to_json(const GroupModel& G, const SubgroupWitness& w);
json to_json(const GroupModel& G, const InequalityReport& r);
json to_json(const GroupModel& G, const KneserReport& r);
json to_json(const GroupModel& G, const NormalizedPair& p);
json to_json(const GroupModel& G, const MinimizerPair& p);
json to_json(const ClaimsReport& c);
json to_json(const GroupModel& G, const Prop42Report& r);
json to_json(const GroupModel& G, const ExtremalWitness& w);
json to_json(const Example41& e);
json describe_group(const GroupModel& G);

}  // namespace lcg
