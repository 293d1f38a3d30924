#include "starclean/squares.hpp"

#include <functional>

#include "starclean/errors.hpp"
#include "starclean/numtheory.hpp"

namespace starclean {

std::string to_string(SquaresStatus s) {
  switch (s) {
    case SquaresStatus::Solution: return "Solution";
    case SquaresStatus::NoSolution: return "NoSolution";
    case SquaresStatus::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(Level l) {
  switch (l) {
    case Level::Level2: return "Level2";
    case Level::Level4: return "Level4";
    case Level::TwoOrFour: return "TwoOrFour";
  }
  return "?";
}

Level level_classify_prime(std::uint64_t p) {
  if (p < 3 || !nt::is_prime(p)) throw InvalidParameter("level_classify_prime: p must be an odd prime");
  switch (p % 8) {
    case 3:
    case 5: return Level::Level2;
    case 7: return Level::Level4;
    default: return Level::TwoOrFour;
  }
}

ThreeSquaresResult<GaloisField> three_squares_large_field(const GaloisField& f) {
  ThreeSquaresResult<GaloisField> out;
  const auto minus_one = f.neg(f.one());
  if (auto r = f.sqrt(minus_one)) {
    out.status = SquaresStatus::Solution;
    out.solution = std::array<GaloisField::Elem, 3>{*r, 0, 0};
    out.basis = "euler-criterion";
    return out;
  }
  for (std::uint64_t x = 1; x < f.cardinality(); ++x) {
    const auto rest = f.sub(minus_one, f.mul(x, x));
    if (auto y = f.sqrt(rest)) {
      out.status = SquaresStatus::Solution;
      out.solution = std::array<GaloisField::Elem, 3>{x, *y, 0};
      out.basis = "euler-criterion";
      return out;
    }
  }
  throw std::logic_error("three_squares_large_field: -1 is always a sum of two squares");
}

namespace {

using IVec = std::vector<std::int64_t>;

struct IVecHash {
  std::size_t operator()(const IVec& v) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    return h;
  }
};

IVec int_mul(const IVec& a, const IVec& b, const std::vector<std::int64_t>& phi) {
  const std::size_t n = a.size();
  IVec r(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) r[i + j] += a[i] * b[j];
  }
  for (std::size_t i = r.size(); i-- > n;) {
    const std::int64_t lead = r[i];
    if (lead == 0) continue;
    for (std::size_t j = 0; j <= n; ++j) r[i - n + j] -= lead * phi[j];
  }
  r.resize(n);
  return r;
}

/// Calls visit(v) for every integer vector of dimension n and L1 norm exactly w.
/// Stops when visit returns false; returns false in that case.
bool for_each_of_norm(std::size_t n, int w, const std::function<bool(const IVec&)>& visit) {
  IVec v(n, 0);
  std::function<bool(std::size_t, int)> rec = [&](std::size_t pos, int rem) -> bool {
    if (pos + 1 == n) {
      if (rem == 0) {
        v[pos] = 0;
        return visit(v);
      }
      for (int sgn : {1, -1}) {
        v[pos] = sgn * rem;
        if (!visit(v)) return false;
      }
      v[pos] = 0;
      return true;
    }
    for (int a = 0; a <= rem; ++a) {
      for (int sgn : {1, -1}) {
        if (a == 0 && sgn < 0) continue;
        v[pos] = sgn * a;
        if (!rec(pos + 1, rem - a)) return false;
      }
    }
    v[pos] = 0;
    return true;
  };
  return rec(0, w);
}

CycElem to_cyc(const IVec& v, std::int64_t denom) {
  CycElem e;
  e.c.reserve(v.size());
  for (auto x : v) e.c.emplace_back(mpq_class(static_cast<long>(x), static_cast<unsigned long>(denom)));
  for (auto& q : e.c) q.canonicalize();
  return e;
}

/// Maps an element of Q(zeta_e) into Q(zeta_d) for e | d.
CycElem embed(const Cyclotomic& from, const CycElem& x, const Cyclotomic& to) {
  const std::int64_t step = static_cast<std::int64_t>(to.order() / from.order());
  CycElem acc = to.zero();
  for (std::size_t i = 0; i < x.c.size(); ++i) {
    if (sgn(x.c[i]) == 0) continue;
    acc = to.add(acc, to.mul(to.from_rational(x.c[i]), to.zeta_power(static_cast<std::int64_t>(i) * step)));
  }
  return acc;
}

}  // namespace

std::optional<std::pair<CycElem, CycElem>> two_squares_search(const Cyclotomic& f, int height_bound,
                                                              std::size_t max_candidates) {
  const std::size_t n = f.dimension();
  const auto& phi = f.phi();
  IVec minus_one(n, 0), minus_four(n, 0);
  minus_one[0] = -1;
  minus_four[0] = -4;

  std::vector<IVec> cands;
  std::unordered_map<IVec, std::size_t, IVecHash> square_of;
  std::optional<std::pair<CycElem, CycElem>> hit;

  auto visit = [&](const IVec& x) -> bool {
    if (cands.size() >= max_candidates) return false;
    const IVec x2 = int_mul(x, x, phi);
    square_of.emplace(x2, cands.size());
    cands.push_back(x);
    for (int half = 0; half < 2; ++half) {
      IVec need = half ? minus_four : minus_one;
      for (std::size_t i = 0; i < n; ++i) need[i] -= x2[i];
      auto it = square_of.find(need);
      if (it != square_of.end()) {
        const std::int64_t den = half ? 2 : 1;
        hit = std::make_pair(to_cyc(x, den), to_cyc(cands[it->second], den));
        return false;
      }
    }
    return true;
  };
  for (int w = 0; w <= height_bound && !hit && cands.size() < max_candidates; ++w) {
    for_each_of_norm(n, w, visit);
  }
  if (hit) {
    const auto& [x, y] = *hit;
    const auto s = f.add(f.add(f.mul(x, x), f.mul(y, y)), f.one());
    if (!f.is_zero(s)) throw std::logic_error("two_squares_search: certificate failed to verify");
  }
  return hit;
}

ThreeSquaresResult<Rationals> solve_three_squares(const Rationals&, int) {
  ThreeSquaresResult<Rationals> out;
  out.status = SquaresStatus::NoSolution;
  out.basis = "formally-real";
  return out;
}

ThreeSquaresResult<Cyclotomic> solve_three_squares(const Cyclotomic& f, int height_bound) {
  ThreeSquaresResult<Cyclotomic> out;
  const std::uint64_t d = f.order();
  auto with_pair = [&](const CycElem& x, const CycElem& y, std::string basis) {
    out.status = SquaresStatus::Solution;
    out.solution = std::array<CycElem, 3>{x, y, f.zero()};
    out.basis = std::move(basis);
    return out;
  };
  if (d % 4 == 0) return with_pair(f.zeta_power(static_cast<std::int64_t>(d / 4)), f.zero(), "contains-i");

  const std::uint64_t odd = d % 2 == 0 ? d / 2 : d;
  const auto factors = nt::factorize(odd);
  for (auto [p, e] : factors) {
    (void)e;
    if (level_classify_prime(p) != Level::Level2) continue;
    const Cyclotomic sub(p);
    if (auto pair = two_squares_search(sub, height_bound)) {
      return with_pair(embed(sub, pair->first, f), embed(sub, pair->second, f),
                       "level-2 subfield Q(zeta" + std::to_string(p) + ")");
    }
    out.status = SquaresStatus::Solution;
    out.basis = "level-table Q(zeta" + std::to_string(p) + ")";
    return out;
  }
  if (factors.size() == 1 && factors[0].second == 1 && level_classify_prime(factors[0].first) == Level::Level4) {
    out.status = SquaresStatus::NoSolution;
    out.basis = "level-table (level 4)";
    return out;
  }
  const Cyclotomic base(odd);
  if (auto pair = two_squares_search(base, height_bound)) {
    return with_pair(embed(base, pair->first, f), embed(base, pair->second, f), "bounded-search");
  }
  out.status = SquaresStatus::Unknown;
  out.basis = "bounded-search exhausted at height " + std::to_string(height_bound);
  return out;
}

ThreeSquaresResult<ZmodN> solve_three_squares(const ZmodN& r, int) {
  if (r.cardinality() <= kSquareTableLimit) return three_squares_finite(r);
  ThreeSquaresResult<ZmodN> out;
  if (r.is_field()) {
    const GaloisField f(r.modulus(), 1);
    auto res = three_squares_large_field(f);
    out.status = res.status;
    out.basis = res.basis;
    const auto& v = *res.solution;
    out.solution = std::array<ZmodN::Elem, 3>{static_cast<ZmodN::Elem>(v[0]), static_cast<ZmodN::Elem>(v[1]),
                                               static_cast<ZmodN::Elem>(v[2])};
    return out;
  }
  out.basis = "ring too large for exhaustive search";
  return out;
}

ThreeSquaresResult<GaloisField> solve_three_squares(const GaloisField& f, int) {
  if (f.cardinality() <= kSquareTableLimit) return three_squares_finite(f);
  return three_squares_large_field(f);
}

ThreeSquaresReport solve_three_squares(const CoefficientRing& ring, int height_bound) {
  return std::visit(
      [&](const auto& r) {
        auto res = solve_three_squares(r, height_bound);
        ThreeSquaresReport rep;
        rep.status = res.status;
        rep.basis = res.basis;
        rep.ring = r.name();
        if (res.solution) {
          const auto& v = *res.solution;
          rep.solution = std::array<std::string, 3>{r.format(v[0]), r.format(v[1]), r.format(v[2])};
        }
        return rep;
      },
      ring);
}

}  // namespace starclean
