#include "starclean/witness.hpp"

namespace starclean {

C2Extension extend_c2(const GroupPtr& h, const InvolutionMap& sigma_h) {
  if (sigma_h.image.size() != h->order()) throw InvalidParameter("extend_c2: involution is defined on a different group");
  const auto c2 = build_cyclic(2);
  C2Extension ext;
  ext.group = direct_product(*h, *c2, kDefaultMaxGroupOrder);
  ext.a = static_cast<GroupIndex>(h->identity() * 2 + 1);
  ext.embed.resize(h->order());
  for (std::size_t g = 0; g < h->order(); ++g) ext.embed[g] = static_cast<GroupIndex>(2 * g);
  ext.sigma.group = ext.group;
  ext.sigma.image.resize(ext.group->order());
  for (std::size_t g = 0; g < h->order(); ++g) {
    for (GroupIndex e = 0; e < 2; ++e) ext.sigma.image[2 * g + e] = 2 * sigma_h(static_cast<GroupIndex>(g)) + e;
  }
  return ext;
}

}  // namespace starclean
