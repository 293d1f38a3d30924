#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "starclean/groups.hpp"

namespace starclean {

/// A parsed group description: at most one presentation atom plus cyclic factors.
struct GroupSpec {
  std::optional<SLCParams> slc;   // abelian factors folded into slc->abelian when present
  std::vector<std::uint64_t> abelian;
  std::string canonical_text;
};

/**
 * `Q8`, `Cn`, `Di[k=..,k2=..,k3=..]` joined by `x`, e.g. `D1[k=1]xC3`, `Q8xC7`,
 * `C2xC4`; or a config object `{type: "D2", k: 1, abelian: [3]}`.
 */
GroupSpec parse_group_spec(std::string_view text);

/// A built group, with its SLC structure when the spec names a presentation.
struct GroupInput {
  GroupPtr group;
  std::optional<SLCStructure> slc;
  std::string text;
};

GroupInput build_group(const GroupSpec& spec, std::size_t max_order = kDefaultMaxGroupOrder);
inline GroupInput build_group(std::string_view text, std::size_t max_order = kDefaultMaxGroupOrder) {
  return build_group(parse_group_spec(text), max_order);
}

}  // namespace starclean
