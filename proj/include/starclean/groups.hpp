#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace starclean {

using GroupIndex = std::uint32_t;

inline constexpr std::size_t kDefaultMaxGroupOrder = 4096;
/// Above this order the O(n^3) associativity check only runs on request.
inline constexpr std::size_t kEagerAssociativityLimit = 512;

/**
 * A finite group given by its full multiplication table.
 *
 * Elements are dense indices 0..order-1. The table is row-major:
 * mul(a, b) = table[a * order + b]. Instances are immutable once built and
 * are passed around as shared_ptr<const FiniteGroup>.
 */
class FiniteGroup {
 public:
  /// Validates closure, identity, inverses, and (up to kEagerAssociativityLimit)
  /// associativity. Throws InvalidParameter on a malformed table.
  FiniteGroup(std::vector<GroupIndex> table, std::vector<std::string> names,
              std::map<std::string, GroupIndex> generators);

  std::size_t order() const { return order_; }
  GroupIndex identity() const { return identity_; }
  GroupIndex mul(GroupIndex a, GroupIndex b) const { return table_[a * order_ + b]; }
  GroupIndex inverse(GroupIndex g) const { return inverse_[g]; }
  GroupIndex power(GroupIndex g, std::int64_t e) const;
  GroupIndex commutator(GroupIndex g, GroupIndex h) const;

  std::size_t element_order(GroupIndex g) const;
  std::size_t exponent() const;
  bool is_abelian() const;

  /// Exhaustive O(n^3) associativity test.
  bool check_associative() const;

  const std::string& name(GroupIndex g) const { return names_[g]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<GroupIndex> find(std::string_view name) const;

  const std::map<std::string, GroupIndex>& generators() const { return generators_; }
  std::optional<GroupIndex> generator(std::string_view name) const;

  std::span<const GroupIndex> table() const { return table_; }
  std::span<const GroupIndex> inverses() const { return inverse_; }

 private:
  std::size_t order_ = 0;
  std::vector<GroupIndex> table_;
  std::vector<GroupIndex> inverse_;
  GroupIndex identity_ = 0;
  std::vector<std::string> names_;
  std::map<std::string, GroupIndex> generators_;
  std::map<std::string, GroupIndex, std::less<>> by_name_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct Subgroup {
  GroupPtr parent;
  std::vector<GroupIndex> members;  // sorted

  std::size_t size() const { return members.size(); }
  bool contains(GroupIndex g) const;
};

/// Presentation types of the indecomposable SLC 2-groups.
enum class Presentation { D1 = 1, D2, D3, D4, D5 };

std::string to_string(Presentation p);

struct SLCParams {
  Presentation type = Presentation::D2;
  unsigned k = 1;
  unsigned k2 = 0;  // 0 = not used by the presentation
  unsigned k3 = 0;
  std::vector<std::uint64_t> abelian;  // invariant factors of A
};

/**
 * An SLC-group D_i x A realized with the normal form t_j * a^e * kappa,
 * t_j in {1, x, y, xy}, e in [0, m), kappa in K.
 *
 * Index layout: ((j * (m/2) + i) * |K| + kappa) * 2 + delta with
 * e = i + delta * m/2, so the identity is index 0 and multiplying by s
 * flips the lowest bit.
 */
struct SLCStructure {
  struct Coordinates {
    std::uint8_t j = 0;      // transversal slot 0..3 for 1, x, y, xy
    std::uint32_t i = 0;     // a-exponent modulo m/2
    std::uint32_t kappa = 0; // index into k_elements
    std::uint8_t delta = 0;  // power of s
  };

  GroupPtr group;
  SLCParams params;
  GroupIndex s = 0;
  GroupIndex x = 0;
  GroupIndex y = 0;
  GroupIndex a = 0;
  std::optional<GroupIndex> b;
  std::optional<GroupIndex> c;
  std::vector<GroupIndex> abelian_generators;  // one per invariant factor of A
  Subgroup center;
  std::array<GroupIndex, 4> transversal{};
  Subgroup k_subgroup;
  std::vector<GroupIndex> k_elements;  // K in kappa order, k_elements[0] = 1
  std::vector<Coordinates> coords;     // per group element

  std::size_t m() const { return std::size_t{1} << params.k; }
  std::size_t half_m() const { return m() / 2; }
  std::size_t k_order() const { return k_elements.size(); }
  GroupIndex element_at(unsigned j, std::size_t i, std::size_t kappa, unsigned delta) const;
  /// G = Q8 x A, i.e. type D2 with m = 2.
  bool is_q8_times_abelian() const { return params.type == Presentation::D2 && params.k == 1; }
};

struct InvolutionMap {
  GroupPtr group;
  std::vector<GroupIndex> image;

  GroupIndex operator()(GroupIndex g) const { return image[g]; }
  /// Exhaustive check of (gh)* = h*g* and g** = g.
  bool is_valid() const;
};

GroupPtr build_abelian(std::span<const std::uint64_t> invariant_factors,
                       std::size_t max_order = kDefaultMaxGroupOrder);
GroupPtr build_cyclic(std::uint64_t n, std::size_t max_order = kDefaultMaxGroupOrder);

SLCStructure build_slc(const SLCParams& params, std::size_t max_order = kDefaultMaxGroupOrder);

GroupPtr direct_product(const FiniteGroup& g, const FiniteGroup& h,
                        std::size_t max_order = kDefaultMaxGroupOrder);

Subgroup center(const GroupPtr& g);
Subgroup commutator_subgroup(const GroupPtr& g);
/// Smallest subgroup containing the given elements.
Subgroup generated_subgroup(const GroupPtr& g, std::span<const GroupIndex> gens);
bool is_slc(const GroupPtr& g);

InvolutionMap canonical_involution(const SLCStructure& slc);
InvolutionMap classical_involution(const GroupPtr& g);
/// Identity map; an involution only when the group is abelian.
InvolutionMap identity_involution(const GroupPtr& g);

/// Quotient by a central subgroup of order two generated by `s`.
struct CentralQuotient {
  GroupPtr quotient;
  std::vector<GroupIndex> coset_of;        // G -> G/<s>
  std::vector<GroupIndex> representative;  // G/<s> -> smallest index in the coset
};
CentralQuotient quotient_by_central_involution(const GroupPtr& g, GroupIndex s);

}  // namespace starclean
