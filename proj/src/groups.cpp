#include "starclean/groups.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "starclean/errors.hpp"
#include "starclean/numtheory.hpp"

namespace starclean {

FiniteGroup::FiniteGroup(std::vector<GroupIndex> table, std::vector<std::string> names,
                         std::map<std::string, GroupIndex> generators)
    : order_(names.size()),
      table_(std::move(table)),
      names_(std::move(names)),
      generators_(std::move(generators)) {
  const std::size_t n = order_;
  if (n == 0) throw InvalidParameter("group must be non-empty");
  if (table_.size() != n * n) throw InvalidParameter("multiplication table is not order x order");
  for (GroupIndex v : table_) {
    if (v >= n) throw InvalidParameter("multiplication table entry out of range");
  }

  // Identity: the row acting as the identity permutation.
  bool found = false;
  for (GroupIndex e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (GroupIndex g = 0; g < n && ok; ++g) ok = mul(e, g) == g && mul(g, e) == g;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw InvalidParameter("multiplication table has no identity");

  // Latin square <=> unique solutions of ax = b and xa = b.
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  for (std::size_t r = 0; r < n; ++r) {
    ++stamp;
    for (std::size_t c = 0; c < n; ++c) {
      GroupIndex v = table_[r * n + c];
      if (seen[v] == stamp) throw InvalidParameter("multiplication table row is not a permutation");
      seen[v] = stamp;
    }
    ++stamp;
    for (std::size_t c = 0; c < n; ++c) {
      GroupIndex v = table_[c * n + r];
      if (seen[v] == stamp) throw InvalidParameter("multiplication table column is not a permutation");
      seen[v] = stamp;
    }
  }

  inverse_.assign(n, 0);
  for (GroupIndex g = 0; g < n; ++g) {
    for (GroupIndex h = 0; h < n; ++h) {
      if (mul(g, h) == identity_) {
        inverse_[g] = h;
        break;
      }
    }
    if (mul(inverse_[g], g) != identity_) throw InvalidParameter("element without two-sided inverse");
  }

  if (n <= kEagerAssociativityLimit && !check_associative()) {
    throw InvalidParameter("multiplication table is not associative");
  }

  for (GroupIndex g = 0; g < n; ++g) {
    if (!by_name_.emplace(names_[g], g).second) {
      throw InvalidParameter("duplicate element name '" + names_[g] + "'");
    }
  }
  for (const auto& [name, g] : generators_) {
    if (g >= n) throw InvalidParameter("generator '" + name + "' out of range");
  }
}

GroupIndex FiniteGroup::power(GroupIndex g, std::int64_t e) const {
  if (e < 0) {
    g = inverse(g);
    e = -e;
  }
  GroupIndex result = identity_;
  GroupIndex base = g;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

GroupIndex FiniteGroup::commutator(GroupIndex g, GroupIndex h) const {
  return mul(mul(inverse(g), inverse(h)), mul(g, h));
}

std::size_t FiniteGroup::element_order(GroupIndex g) const {
  std::size_t k = 1;
  GroupIndex cur = g;
  while (cur != identity_) {
    cur = mul(cur, g);
    ++k;
  }
  return k;
}

std::size_t FiniteGroup::exponent() const {
  std::uint64_t e = 1;
  for (GroupIndex g = 0; g < order_; ++g) e = nt::lcm(e, element_order(g));
  return e;
}

bool FiniteGroup::is_abelian() const {
  for (GroupIndex g = 0; g < order_; ++g) {
    for (GroupIndex h = g + 1; h < order_; ++h) {
      if (mul(g, h) != mul(h, g)) return false;
    }
  }
  return true;
}

bool FiniteGroup::check_associative() const {
  const std::size_t n = order_;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const GroupIndex ab = table_[a * n + b];
      const GroupIndex* row_ab = &table_[ab * n];
      const GroupIndex* row_b = &table_[b * n];
      const GroupIndex* row_a = &table_[a * n];
      for (std::size_t c = 0; c < n; ++c) {
        if (row_ab[c] != row_a[row_b[c]]) return false;
      }
    }
  }
  return true;
}

std::optional<GroupIndex> FiniteGroup::find(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<GroupIndex> FiniteGroup::generator(std::string_view name) const {
  auto it = generators_.find(std::string(name));
  if (it == generators_.end()) return std::nullopt;
  return it->second;
}

bool Subgroup::contains(GroupIndex g) const {
  return std::binary_search(members.begin(), members.end(), g);
}

std::string to_string(Presentation p) { return "D" + std::to_string(static_cast<int>(p)); }

namespace {

std::string power_name(const std::string& base, std::uint64_t e) {
  if (e == 0) return {};
  if (e == 1) return base;
  return base + "^" + std::to_string(e);
}

std::string join_names(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += '*';
    out += p;
  }
  return out.empty() ? "1" : out;
}

std::uint64_t checked_order(std::span<const std::uint64_t> factors, std::uint64_t base,
                            std::size_t max_order) {
  std::uint64_t order = base;
  for (std::uint64_t f : factors) {
    if (f == 0) throw InvalidParameter("invariant factors must be >= 1");
    if (order > max_order / f) {
      throw CapacityError("group order exceeds the configured budget of " +
                          std::to_string(max_order));
    }
    order *= f;
  }
  if (order > max_order) {
    throw CapacityError("group order exceeds the configured budget of " + std::to_string(max_order));
  }
  return order;
}

/// Mixed-radix digits, most significant first.
std::vector<std::uint64_t> to_digits(std::uint64_t index, std::span<const std::uint64_t> radices) {
  std::vector<std::uint64_t> d(radices.size());
  for (std::size_t r = radices.size(); r-- > 0;) {
    d[r] = index % radices[r];
    index /= radices[r];
  }
  return d;
}

std::uint64_t from_digits(std::span<const std::uint64_t> d, std::span<const std::uint64_t> radices) {
  std::uint64_t index = 0;
  for (std::size_t r = 0; r < radices.size(); ++r) index = index * radices[r] + d[r];
  return index;
}

}  // namespace

GroupPtr build_abelian(std::span<const std::uint64_t> invariant_factors, std::size_t max_order) {
  std::vector<std::uint64_t> radices;
  std::vector<std::size_t> labels;
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
    if (invariant_factors[i] == 0) throw InvalidParameter("invariant factors must be >= 1");
    if (invariant_factors[i] > 1) {
      radices.push_back(invariant_factors[i]);
      labels.push_back(i + 1);
    }
  }
  const std::uint64_t n = checked_order(radices, 1, max_order);

  std::vector<std::vector<std::uint64_t>> digits(n);
  for (std::uint64_t g = 0; g < n; ++g) digits[g] = to_digits(g, radices);

  std::vector<GroupIndex> table(n * n);
  std::vector<std::uint64_t> tmp(radices.size());
  for (std::uint64_t g = 0; g < n; ++g) {
    for (std::uint64_t h = 0; h < n; ++h) {
      for (std::size_t r = 0; r < radices.size(); ++r) tmp[r] = (digits[g][r] + digits[h][r]) % radices[r];
      table[g * n + h] = static_cast<GroupIndex>(from_digits(tmp, radices));
    }
  }

  std::vector<std::string> names(n);
  for (std::uint64_t g = 0; g < n; ++g) {
    std::vector<std::string> parts;
    for (std::size_t r = 0; r < radices.size(); ++r) {
      parts.push_back(power_name("c" + std::to_string(labels[r]), digits[g][r]));
    }
    names[g] = join_names(parts);
  }
  std::map<std::string, GroupIndex> gens;
  for (std::size_t r = 0; r < radices.size(); ++r) {
    std::vector<std::uint64_t> d(radices.size(), 0);
    d[r] = 1;
    gens.emplace("c" + std::to_string(labels[r]), static_cast<GroupIndex>(from_digits(d, radices)));
  }
  return std::make_shared<FiniteGroup>(std::move(table), std::move(names), std::move(gens));
}

GroupPtr build_cyclic(std::uint64_t n, std::size_t max_order) {
  const std::uint64_t f[] = {n};
  return build_abelian(f, max_order);
}

GroupIndex SLCStructure::element_at(unsigned j, std::size_t i, std::size_t kappa,
                                    unsigned delta) const {
  return static_cast<GroupIndex>(((j * half_m() + i) * k_order() + kappa) * 2 + delta);
}

SLCStructure build_slc(const SLCParams& params, std::size_t max_order) {
  const Presentation type = params.type;
  const bool uses_b = type == Presentation::D3 || type == Presentation::D4 || type == Presentation::D5;
  const bool uses_c = type == Presentation::D5;
  if (params.k < 1) throw InvalidParameter("k must be >= 1");
  if (uses_b && params.k2 < 1) throw InvalidParameter(to_string(type) + " requires k2 >= 1");
  if (uses_c && params.k3 < 1) throw InvalidParameter(to_string(type) + " requires k3 >= 1");
  if (!uses_b && params.k2 != 0) throw InvalidParameter(to_string(type) + " does not use k2");
  if (!uses_c && params.k3 != 0) throw InvalidParameter(to_string(type) + " does not use k3");
  if (params.k > 20 || params.k2 > 20 || params.k3 > 20) {
    throw CapacityError("exponent parameters too large");
  }

  const std::uint64_t m = std::uint64_t{1} << params.k;
  const std::uint64_t half = m / 2;

  // K = <b> x <c> x A, as mixed-radix digits (b, c, A factors).
  std::vector<std::uint64_t> k_radices;
  std::vector<std::string> k_labels;
  if (uses_b) {
    k_radices.push_back(std::uint64_t{1} << params.k2);
    k_labels.emplace_back("b");
  }
  if (uses_c) {
    k_radices.push_back(std::uint64_t{1} << params.k3);
    k_labels.emplace_back("c");
  }
  const std::size_t a_offset = k_radices.size();
  std::vector<std::size_t> a_labels;
  for (std::size_t r = 0; r < params.abelian.size(); ++r) {
    if (params.abelian[r] == 0) throw InvalidParameter("invariant factors must be >= 1");
    if (params.abelian[r] > 1) {
      k_radices.push_back(params.abelian[r]);
      k_labels.push_back("c" + std::to_string(r + 1));
      a_labels.push_back(r + 1);
    }
  }
  std::vector<std::uint64_t> all_factors = k_radices;
  all_factors.push_back(m);
  const std::uint64_t n = checked_order(all_factors, 4, max_order);
  const std::uint64_t k_order = n / (4 * m);

  // Central elements x^2 and y^2 as (a-exponent, b-exponent, c-exponent).
  struct Central {
    std::uint64_t a = 0, b = 0, c = 0;
  };
  Central x2, y2;
  switch (type) {
    case Presentation::D1: break;
    case Presentation::D2: x2.a = 1; y2.a = 1; break;
    case Presentation::D3: y2.b = 1; break;
    case Presentation::D4: x2.a = 1; y2.b = 1; break;
    case Presentation::D5: x2.b = 1; y2.c = 1; break;
  }

  struct Word {
    unsigned ex, ey;
    std::uint64_t e;                   // a-exponent in [0, m)
    std::vector<std::uint64_t> kdig;   // K digits
  };
  auto decode = [&](std::uint64_t g) {
    Word w;
    const unsigned delta = g % 2;
    g /= 2;
    const std::uint64_t kappa = g % k_order;
    g /= k_order;
    const std::uint64_t i = g % half;
    const unsigned j = static_cast<unsigned>(g / half);
    w.ex = j & 1U;
    w.ey = j >> 1U;
    w.e = i + delta * half;
    w.kdig = to_digits(kappa, k_radices);
    return w;
  };
  auto encode = [&](const Word& w) {
    const unsigned j = w.ex | (w.ey << 1U);
    const std::uint64_t i = w.e % half;
    const unsigned delta = static_cast<unsigned>(w.e / half);
    const std::uint64_t kappa = from_digits(w.kdig, k_radices);
    return static_cast<GroupIndex>(((j * half + i) * k_order + kappa) * 2 + delta);
  };

  std::vector<Word> words(n);
  for (std::uint64_t g = 0; g < n; ++g) words[g] = decode(g);

  auto add_central = [&](Word& w, const Central& z) {
    w.e += z.a;
    if (uses_b) w.kdig[0] += z.b;
    if (uses_c) w.kdig[1] += z.c;
  };

  std::vector<GroupIndex> table(n * n);
  for (std::uint64_t g = 0; g < n; ++g) {
    const Word& u = words[g];
    for (std::uint64_t h = 0; h < n; ++h) {
      const Word& v = words[h];
      // x^{ex} y^{ey} x^{fx} y^{fy} = x^{ex+fx} y^{ey+fy} s^{ey*fx}
      Word w;
      w.e = u.e + v.e + half * (u.ey * v.ex);
      w.kdig.resize(k_radices.size());
      for (std::size_t r = 0; r < k_radices.size(); ++r) w.kdig[r] = u.kdig[r] + v.kdig[r];
      unsigned sx = u.ex + v.ex;
      unsigned sy = u.ey + v.ey;
      if (sx == 2) {
        add_central(w, x2);
        sx = 0;
      }
      if (sy == 2) {
        add_central(w, y2);
        sy = 0;
      }
      w.ex = sx;
      w.ey = sy;
      w.e %= m;
      for (std::size_t r = 0; r < k_radices.size(); ++r) w.kdig[r] %= k_radices[r];
      table[g * n + h] = encode(w);
    }
  }

  static constexpr const char* kT[] = {"", "x", "y", "x*y"};
  std::vector<std::string> names(n);
  for (std::uint64_t g = 0; g < n; ++g) {
    const Word& w = words[g];
    std::vector<std::string> parts{kT[w.ex | (w.ey << 1U)], power_name("a", w.e)};
    for (std::size_t r = 0; r < k_radices.size(); ++r) parts.push_back(power_name(k_labels[r], w.kdig[r]));
    names[g] = join_names(parts);
  }

  auto central_word = [&](std::uint64_t e, std::size_t digit, std::uint64_t value) {
    Word w{0, 0, e, std::vector<std::uint64_t>(k_radices.size(), 0)};
    if (digit < k_radices.size()) w.kdig[digit] = value;
    return encode(w);
  };

  SLCStructure slc;
  std::map<std::string, GroupIndex> gens;
  const GroupIndex x_idx = encode(Word{1, 0, 0, std::vector<std::uint64_t>(k_radices.size(), 0)});
  const GroupIndex y_idx = encode(Word{0, 1, 0, std::vector<std::uint64_t>(k_radices.size(), 0)});
  gens.emplace("x", x_idx);
  gens.emplace("y", y_idx);
  gens.emplace("a", central_word(m > 1 ? 1 : 0, k_radices.size(), 0));
  gens.emplace("s", central_word(half, k_radices.size(), 0));
  if (uses_b) gens.emplace("b", central_word(0, 0, 1));
  if (uses_c) gens.emplace("c", central_word(0, 1, 1));
  for (std::size_t r = 0; r < a_labels.size(); ++r) {
    gens.emplace("c" + std::to_string(a_labels[r]), central_word(0, a_offset + r, 1));
  }

  auto group = std::make_shared<const FiniteGroup>(std::move(table), std::move(names), gens);

  slc.group = group;
  slc.params = params;
  slc.x = x_idx;
  slc.y = y_idx;
  slc.a = gens.at("a");
  slc.s = gens.at("s");
  if (uses_b) slc.b = gens.at("b");
  if (uses_c) slc.c = gens.at("c");
  for (std::size_t r = 0; r < a_labels.size(); ++r) {
    slc.abelian_generators.push_back(gens.at("c" + std::to_string(a_labels[r])));
  }
  slc.transversal = {group->identity(), x_idx, y_idx, group->mul(x_idx, y_idx)};
  slc.center = center(group);

  slc.k_elements.resize(k_order);
  for (std::uint64_t kappa = 0; kappa < k_order; ++kappa) {
    slc.k_elements[kappa] = static_cast<GroupIndex>(kappa * 2);
  }
  slc.k_subgroup.parent = group;
  slc.k_subgroup.members = slc.k_elements;
  std::sort(slc.k_subgroup.members.begin(), slc.k_subgroup.members.end());

  slc.coords.resize(n);
  for (std::uint64_t g = 0; g < n; ++g) {
    std::uint64_t rest = g;
    SLCStructure::Coordinates c;
    c.delta = static_cast<std::uint8_t>(rest % 2);
    rest /= 2;
    c.kappa = static_cast<std::uint32_t>(rest % k_order);
    rest /= k_order;
    c.i = static_cast<std::uint32_t>(rest % half);
    c.j = static_cast<std::uint8_t>(rest / half);
    slc.coords[g] = c;
  }
  return slc;
}

GroupPtr direct_product(const FiniteGroup& g, const FiniteGroup& h, std::size_t max_order) {
  const std::uint64_t ng = g.order();
  const std::uint64_t nh = h.order();
  if (ng * nh > max_order) {
    throw CapacityError("group order exceeds the configured budget of " + std::to_string(max_order));
  }
  const std::uint64_t n = ng * nh;
  std::vector<GroupIndex> table(n * n);
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t b = 0; b < n; ++b) {
      const GroupIndex p = g.mul(static_cast<GroupIndex>(a / nh), static_cast<GroupIndex>(b / nh));
      const GroupIndex q = h.mul(static_cast<GroupIndex>(a % nh), static_cast<GroupIndex>(b % nh));
      table[a * n + b] = static_cast<GroupIndex>(p * nh + q);
    }
  }
  auto strip = [](const std::string& s) { return s == "1" ? std::string() : s; };
  std::vector<std::string> names(n);
  for (std::uint64_t a = 0; a < n; ++a) {
    names[a] = join_names({strip(g.name(static_cast<GroupIndex>(a / nh))),
                           strip(h.name(static_cast<GroupIndex>(a % nh)))});
  }
  // Name collisions between factors get a prime on the right factor.
  bool clash = false;
  {
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    clash = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
  }
  if (clash) {
    for (std::uint64_t a = 0; a < n; ++a) {
      const std::string right = strip(h.name(static_cast<GroupIndex>(a % nh)));
      names[a] = join_names({strip(g.name(static_cast<GroupIndex>(a / nh))),
                             right.empty() ? std::string() : "(" + right + ")'"});
    }
  }
  std::map<std::string, GroupIndex> gens;
  for (const auto& [name, idx] : g.generators()) {
    gens.emplace(name, static_cast<GroupIndex>(idx * nh + h.identity()));
  }
  for (const auto& [name, idx] : h.generators()) {
    const GroupIndex v = static_cast<GroupIndex>(g.identity() * nh + idx);
    if (!gens.emplace(name, v).second) gens.emplace(name + "'", v);
  }
  return std::make_shared<const FiniteGroup>(std::move(table), std::move(names), std::move(gens));
}

Subgroup center(const GroupPtr& g) {
  Subgroup z{g, {}};
  for (GroupIndex a = 0; a < g->order(); ++a) {
    bool central = true;
    for (GroupIndex b = 0; b < g->order() && central; ++b) central = g->mul(a, b) == g->mul(b, a);
    if (central) z.members.push_back(a);
  }
  return z;
}

Subgroup generated_subgroup(const GroupPtr& g, std::span<const GroupIndex> gens) {
  std::vector<bool> in(g->order(), false);
  std::vector<GroupIndex> members{g->identity()};
  in[g->identity()] = true;
  // Closure by right multiplication with generators; finite, so inverses come for free.
  for (std::size_t pos = 0; pos < members.size(); ++pos) {
    for (GroupIndex t : gens) {
      const GroupIndex v = g->mul(members[pos], t);
      if (!in[v]) {
        in[v] = true;
        members.push_back(v);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup{g, std::move(members)};
}

Subgroup commutator_subgroup(const GroupPtr& g) {
  std::vector<bool> seen(g->order(), false);
  std::vector<GroupIndex> comms;
  for (GroupIndex a = 0; a < g->order(); ++a) {
    for (GroupIndex b = 0; b < g->order(); ++b) {
      const GroupIndex c = g->commutator(a, b);
      if (!seen[c]) {
        seen[c] = true;
        comms.push_back(c);
      }
    }
  }
  return generated_subgroup(g, comms);
}

bool is_slc(const GroupPtr& g) {
  const Subgroup z = center(g);
  if (z.size() * 4 != g->order()) return false;
  for (GroupIndex a = 0; a < g->order(); ++a) {
    if (!z.contains(g->mul(a, a))) return false;
  }
  return true;
}

bool InvolutionMap::is_valid() const {
  const std::size_t n = group->order();
  if (image.size() != n) return false;
  for (GroupIndex g = 0; g < n; ++g) {
    if (image[g] >= n || image[image[g]] != g) return false;
  }
  for (GroupIndex g = 0; g < n; ++g) {
    for (GroupIndex h = 0; h < n; ++h) {
      if (image[group->mul(g, h)] != group->mul(image[h], image[g])) return false;
    }
  }
  return true;
}

InvolutionMap canonical_involution(const SLCStructure& slc) {
  const auto& g = slc.group;
  InvolutionMap inv{g, std::vector<GroupIndex>(g->order())};
  for (GroupIndex a = 0; a < g->order(); ++a) {
    inv.image[a] = slc.center.contains(a) ? a : g->mul(slc.s, a);
  }
  return inv;
}

InvolutionMap classical_involution(const GroupPtr& g) {
  return InvolutionMap{g, std::vector<GroupIndex>(g->inverses().begin(), g->inverses().end())};
}

InvolutionMap identity_involution(const GroupPtr& g) {
  InvolutionMap inv{g, std::vector<GroupIndex>(g->order())};
  std::iota(inv.image.begin(), inv.image.end(), GroupIndex{0});
  return inv;
}

CentralQuotient quotient_by_central_involution(const GroupPtr& g, GroupIndex s) {
  const std::size_t n = g->order();
  if (g->mul(s, s) != g->identity() || s == g->identity()) {
    throw InvalidParameter("quotient: s must have order 2");
  }
  for (GroupIndex a = 0; a < n; ++a) {
    if (g->mul(a, s) != g->mul(s, a)) throw InvalidParameter("quotient: s must be central");
  }
  CentralQuotient q;
  q.coset_of.assign(n, 0);
  std::vector<bool> done(n, false);
  for (GroupIndex a = 0; a < n; ++a) {
    if (done[a]) continue;
    const GroupIndex b = g->mul(a, s);
    done[a] = done[b] = true;
    q.coset_of[a] = q.coset_of[b] = static_cast<GroupIndex>(q.representative.size());
    q.representative.push_back(std::min(a, b));
  }
  const std::size_t nq = q.representative.size();
  std::vector<GroupIndex> table(nq * nq);
  for (std::size_t u = 0; u < nq; ++u) {
    for (std::size_t v = 0; v < nq; ++v) {
      table[u * nq + v] = q.coset_of[g->mul(q.representative[u], q.representative[v])];
    }
  }
  std::vector<std::string> names(nq);
  for (std::size_t u = 0; u < nq; ++u) {
    const std::string& rep = g->name(q.representative[u]);
    names[u] = rep == "1" ? "1" : rep + "<s>";
  }
  std::map<std::string, GroupIndex> gens;
  for (const auto& [name, idx] : g->generators()) {
    if (name != "s") gens.emplace(name, q.coset_of[idx]);
  }
  q.quotient = std::make_shared<const FiniteGroup>(std::move(table), std::move(names), std::move(gens));
  return q;
}

}  // namespace starclean
