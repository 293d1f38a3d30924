#include "starclean/decide.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "starclean/canonical.hpp"
#include "starclean/errors.hpp"
#include "starclean/numtheory.hpp"

namespace starclean {

std::string to_string(Status s) {
  switch (s) {
    case Status::StarClean: return "StarClean";
    case Status::NotStarClean: return "NotStarClean";
    case Status::Unknown: return "Unknown";
  }
  return "?";
}

Status status_from_string(const std::string& s) {
  if (s == "StarClean") return Status::StarClean;
  if (s == "NotStarClean") return Status::NotStarClean;
  if (s == "Unknown") return Status::Unknown;
  throw ParseError("unknown verdict '" + s + "'", 0);
}

bool Verdict::cites(const std::string& tag) const {
  return std::any_of(reasons.begin(), reasons.end(), [&](const Reason& r) { return r.citation == tag; });
}

json to_json(const Verdict& v) {
  json reasons = json::array();
  for (const auto& r : v.reasons) {
    reasons.push_back({{"criterion", r.criterion}, {"citation", r.citation}, {"certified", r.certified}, {"data", r.data}});
  }
  return {{"verdict", to_string(v.status)}, {"reasons", reasons}, {"certificates", v.certificates},
          {"degenerate", v.degenerate}};
}

Verdict verdict_from_json(const json& j) {
  Verdict v;
  v.status = status_from_string(j.at("verdict").get<std::string>());
  for (const auto& r : j.at("reasons")) {
    v.reasons.push_back(Reason{r.at("criterion").get<std::string>(), r.at("citation").get<std::string>(),
                               r.value("data", json::object()), r.value("certified", false)});
  }
  v.certificates = j.value("certificates", json::array());
  v.degenerate = j.value("degenerate", false);
  return v;
}

namespace {

template <Ring R>
json elem_json(const GroupRing<R>& gr, const GRElem<R>& a) {
  json out = json::object();
  for (GroupIndex g : gr.support(a)) out[gr.group().name(g)] = gr.ring().format(a.c[g]);
  return out;
}

template <Ring R>
json form_json(const GroupRing<R>& gr, const FCanonicalForm<R>& f) {
  static const char* kT[4] = {"1", "x", "y", "xy"};
  const auto& slc = *f.slc;
  json rows = json::array();
  for (unsigned j = 0; j < 4; ++j) {
    json entries = json::array();
    for (std::size_t i = 0; i < slc.half_m(); ++i) {
      json x = json::object();
      for (std::size_t k = 0; k < slc.k_order(); ++k) {
        if (!gr.ring().is_zero(f.x[j][i][k])) x[slc.group->name(slc.k_elements[k])] = gr.ring().format(f.x[j][i][k]);
      }
      if (!x.empty()) entries.push_back({{"i", i}, {"x", x}});
    }
    rows.push_back({{"t", kT[j]}, {"entries", entries}});
  }
  return rows;
}

template <class F>
decltype(auto) with_ring(const CoefficientRing& ring, F&& f) {
  return std::visit(std::forward<F>(f), ring);
}

bool is_rationals(const CoefficientRing& r) { return std::holds_alternative<Rationals>(r); }

std::set<std::uint64_t> element_orders(const FiniteGroup& a) {
  std::set<std::uint64_t> out;
  for (std::size_t g = 0; g < a.order(); ++g) out.insert(a.element_order(static_cast<GroupIndex>(g)));
  return out;
}

/// The abelian factor of an SLC structure as a standalone group.
GroupPtr abelian_factor(const SLCStructure& slc) { return build_abelian(slc.params.abelian); }

bool ring_is_local(const CoefficientRing& r) {
  if (ring_is_field(r)) return true;
  if (const auto* z = std::get_if<ZmodN>(&r)) return z->is_local();
  return false;
}

template <Ring R>
json three_squares_json(const R& ring, const ThreeSquaresResult<R>& res) {
  json j = {{"ring", ring.name()}, {"status", to_string(res.status)}, {"basis", res.basis}};
  if (res.solution) {
    json sol = json::array();
    for (const auto& v : *res.solution) sol.push_back(ring.format(v));
    j["solution"] = sol;
  }
  return j;
}

json three_squares_json(const ThreeSquaresReport& rep) {
  json j = {{"ring", rep.ring}, {"status", to_string(rep.status)}, {"basis", rep.basis}};
  if (rep.solution) j["solution"] = json::array({(*rep.solution)[0], (*rep.solution)[1], (*rep.solution)[2]});
  return j;
}

template <Ring R>
json brute_json(const GroupRing<R>& gr, const BruteResult<R>& b) {
  json j = {{"result", to_string(b.status)}, {"sampled", b.sampled},  {"checked", b.checked},
            {"candidates", b.candidates},   {"cardinality", b.cardinality}};
  if (!b.note.empty()) j["note"] = b.note;
  if (b.counterexample) j["counterexample"] = elem_json(gr, *b.counterexample);
  return j;
}

std::string structure_text(const SLCStructure& slc) {
  std::string s = to_string(slc.params.type) + " with m = " + std::to_string(slc.m());
  if (!slc.params.abelian.empty()) {
    s += ", A = ";
    for (std::size_t i = 0; i < slc.params.abelian.size(); ++i) {
      s += (i ? " x C" : "C") + std::to_string(slc.params.abelian[i]);
    }
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

bool PerlisWalkerDecomposition::mass_ok() const {
  std::uint64_t total = 0;
  for (const auto& c : components) total += c.multiplicity * c.degree;
  return total == group_order;
}

PerlisWalkerDecomposition perlis_walker(const CoefficientRing& field, const FiniteGroup& a) {
  if (!a.is_abelian()) throw InvalidParameter("perlis_walker: group must be abelian");
  if (!ring_is_field(field)) throw InvalidParameter("perlis_walker: coefficients must form a field");
  const std::uint64_t ch = ring_characteristic(field);
  if (ch != 0 && a.order() % ch == 0) {
    throw HypothesisViolation("perlis_walker: characteristic " + std::to_string(ch) + " divides |A|");
  }
  std::map<std::uint64_t, std::uint64_t> count;
  for (std::size_t g = 0; g < a.order(); ++g) ++count[a.element_order(static_cast<GroupIndex>(g))];
  PerlisWalkerDecomposition out;
  out.group_order = a.order();
  for (auto [d, n] : count) {
    const std::uint64_t deg = extension_degree(field, d);
    if (n % deg != 0) throw std::logic_error("perlis_walker: multiplicity not integral");
    out.components.push_back({d, n / deg, deg});
  }
  return out;
}

std::optional<std::vector<CoefficientRing>> field_components(const CoefficientRing& ring) {
  if (const auto* z = std::get_if<ZmodN>(&ring)) {
    std::vector<CoefficientRing> out;
    for (auto [p, e] : nt::factorize(z->modulus())) {
      if (e > 1) return std::nullopt;
      out.emplace_back(GaloisField(p, 1));
    }
    return out;
  }
  return std::vector<CoefficientRing>{ring};
}

// ---------------------------------------------------------------------------

Verdict necessary_conditions(const SLCStructure& slc, const CoefficientRing& ring, const DecideOptions& opt) {
  return with_ring(ring, [&](const auto& r) {
    using R = std::decay_t<decltype(r)>;
    Verdict v;
    GroupRing<R> gr(slc.group, r);
    const bool q8a = slc.is_q8_times_abelian();
    v.reasons.push_back({"G = Q8 x A", "TheoremA", {{"holds", q8a}, {"structure", structure_text(slc)}}, true});

    auto out = generate_witness(gr, slc, opt.height_bound);
    if (out.witness) {
      const auto& w = *out.witness;
      auto chk = check_witness(gr, slc, w, opt.condition2_budget);
      json cert = {{"kind", "witness"},
                   {"case_tag", case_tag(w.which)},
                   {"detail", w.detail},
                   {"gamma", elem_json(gr, w.gamma)},
                   {"tau_w", elem_json(gr, w.tau_w)},
                   {"check", {{"status", to_string(chk.status)}, {"method", chk.method}}},
                   {"problem_element", elem_json(gr, problem_element(gr, slc.s, w))}};
      if (chk.counterexample) cert["check"]["counterexample"] = elem_json(gr, *chk.counterexample);
      if (out.equation) cert["equation"] = three_squares_json(r, *out.equation);
      v.certificates.push_back(cert);
      const bool ok = chk.status == WitnessStatus::Valid;
      v.reasons.push_back({"non-*-clean witness (" + w.detail + ")", case_tag(w.which),
                           {{"check", to_string(chk.status)}, {"method", chk.method}}, ok});
      v.status = ok ? Status::NotStarClean : Status::Unknown;
      return v;
    }
    v.reasons.push_back({"A has no element of order 4", "TheoremA.1", json::object(), true});
    v.reasons.push_back({"A has no element of prime order p with p | 2^n + 1", "TheoremA.2", json::object(), true});
    const auto& eq = *out.equation;
    const bool eq_solvable = eq.status == SquaresStatus::Solution;
    v.reasons.push_back({eq_solvable ? "X^2+Y^2+Z^2+1 = 0 is solvable in " + r.name() + " (no explicit solution)"
                                     : "X^2+Y^2+Z^2+1 = 0 over " + r.name() + ": " + to_string(eq.status),
                         "TheoremA", three_squares_json(r, eq), eq.status == SquaresStatus::NoSolution});
    v.status = Status::Unknown;
    return v;
  });
}

Verdict direct_sum_reduce(const std::vector<Verdict>& components) {
  Verdict v;
  if (components.empty()) {
    v.status = Status::StarClean;
    v.degenerate = true;
    v.reasons.push_back({"empty direct sum", "Proposition2.6", json::object(), true});
    return v;
  }
  bool any_not = false, any_unknown = false;
  for (const auto& c : components) {
    any_not |= c.status == Status::NotStarClean;
    any_unknown |= c.status == Status::Unknown;
    v.reasons.insert(v.reasons.end(), c.reasons.begin(), c.reasons.end());
    for (const auto& cert : c.certificates) v.certificates.push_back(cert);
  }
  v.status = any_not ? Status::NotStarClean : (any_unknown ? Status::Unknown : Status::StarClean);
  if (components.size() > 1) {
    v.reasons.push_back({"componentwise over " + std::to_string(components.size()) + " summands", "Proposition2.6",
                         json::object(), v.status != Status::Unknown});
  }
  return v;
}

Verdict theorem_c_decide(const std::vector<CoefficientRing>& fields, const FiniteGroup& a, int height_bound) {
  if (!a.is_abelian()) throw InvalidParameter("theorem_c_decide: A must be abelian");
  const auto orders = element_orders(a);
  std::vector<Verdict> parts;
  for (const auto& f : fields) {
    if (!ring_is_field(f)) throw InvalidParameter("theorem_c_decide: " + ring_name(f) + " is not a field");
    const std::uint64_t ch = ring_characteristic(f);
    if (ch != 0 && (8 * a.order()) % ch == 0) {
      throw HypothesisViolation("theorem_c_decide: characteristic of " + ring_name(f) + " divides |G|");
    }
    Verdict part;
    part.status = Status::StarClean;
    for (std::uint64_t d : orders) {
      const CoefficientRing ext = extend_with_root(f, d);
      const auto rep = solve_three_squares(ext, height_bound);
      json data = three_squares_json(rep);
      data["field"] = ring_name(f);
      data["d"] = d;
      const std::string crit = "X^2+Y^2+Z^2+1 = 0 over " + ring_name(f) + "(zeta" + std::to_string(d) + ") = " +
                               rep.ring + ": " + to_string(rep.status);
      if (rep.status == SquaresStatus::Solution && rep.solution) {
        part.reasons.push_back({crit, "TheoremC", data, true});
        json cert = data;
        cert["kind"] = "equation";
        part.certificates.push_back(cert);
        part.status = Status::NotStarClean;
      } else if (rep.status == SquaresStatus::NoSolution) {
        part.reasons.push_back({crit, "TheoremC", data, true});
      } else {
        part.reasons.push_back({crit + (rep.status == SquaresStatus::Solution ? " (no explicit solution)" : ""),
                                "TheoremC", data, false});
        if (part.status == Status::StarClean) part.status = Status::Unknown;
      }
    }
    parts.push_back(std::move(part));
  }
  return direct_sum_reduce(parts);
}

Verdict theorem_b_decide(const CoefficientRing& ring, unsigned rank, std::optional<bool> clean,
                         const std::string& clean_source, int height_bound) {
  Verdict v;
  const auto rep = solve_three_squares(ring, height_bound);
  json data = three_squares_json(rep);
  data["rank"] = rank;
  const bool solved = rep.status == SquaresStatus::Solution && rep.solution.has_value();
  v.reasons.push_back({"X^2+Y^2+Z^2+1 = 0 over " + rep.ring + ": " + to_string(rep.status), "TheoremB", data,
                       solved || rep.status == SquaresStatus::NoSolution});
  json clean_data = {{"source", clean_source}};
  clean_data["clean"] = clean ? json(*clean) : json(nullptr);
  v.reasons.push_back({std::string("RG clean: ") + (clean ? (*clean ? "true" : "false") : "unknown"),
                       clean_source.empty() ? "TheoremB" : clean_source, clean_data, clean.has_value()});
  if (solved) {
    json cert = data;
    cert["kind"] = "equation";
    v.certificates.push_back(cert);
    v.status = Status::NotStarClean;
  } else if (clean && !*clean) {
    v.status = Status::NotStarClean;
  } else if (clean && *clean && rep.status == SquaresStatus::NoSolution) {
    v.status = Status::StarClean;
  } else {
    v.status = Status::Unknown;
  }
  return v;
}

Verdict decide(const SLCStructure& slc, const CoefficientRing& ring, const DecideOptions& opt) {
  Verdict v = necessary_conditions(slc, ring, opt);
  const auto a = abelian_factor(slc);
  const auto orders = element_orders(*a);

  if (v.status == Status::NotStarClean) {
    if (is_rationals(ring) && slc.is_q8_times_abelian()) {
      for (std::uint64_t d : orders) {
        if (nt::is_prime(d) && (d % 8 == 3 || d % 8 == 5)) {
          v.reasons.push_back({"A has an element of prime order " + std::to_string(d) + ", " + std::to_string(d) +
                                   " mod 8 = " + std::to_string(d % 8),
                               "CorollaryA.1", {{"p", d}}, true});
          break;
        }
      }
    }
    return v;
  }
  if (!slc.is_q8_times_abelian()) return v;
  // Here no witness exists; an uncertified solvable equation leaves Unknown.
  if (v.reasons.back().data.value("status", "") == "Solution") return v;

  const std::uint64_t order = slc.group->order();
  if (auto comps = field_components(ring)) {
    bool coprime = true;
    for (const auto& f : *comps) {
      const std::uint64_t ch = ring_characteristic(f);
      if (ch != 0 && order % ch == 0) coprime = false;
    }
    if (coprime) {
      Verdict c = theorem_c_decide(*comps, *a, opt.height_bound);
      v.status = c.status;
      v.reasons.insert(v.reasons.end(), c.reasons.begin(), c.reasons.end());
      for (const auto& cert : c.certificates) v.certificates.push_back(cert);
      if (v.status == Status::StarClean && is_rationals(ring) && slc.params.abelian.size() == 1) {
        const std::uint64_t p = slc.params.abelian[0];
        if (nt::is_prime(p) && p % 8 == 7) {
          v.reasons.push_back({"A = C" + std::to_string(p) + ", p = 7 mod 8 over Q", "CorollaryA.2", {{"p", p}}, true});
        }
      }
      return v;
    }
    v.reasons.push_back({"characteristic divides |G|: modular case", "TheoremC", json::object(), false});
  }
  if (a->exponent() <= 2) {
    unsigned rank = 0;
    for (std::size_t n = a->order(); n > 1; n /= 2) ++rank;
    std::optional<bool> clean;
    std::string source;
    if (ring_is_local(ring)) {
      clean = true;
      source = "KnownFact.Z10";
    } else {
      with_ring(ring, [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (FiniteRing<R>) {
          GroupRing<R> gr(slc.group, r);
          BruteOptions bo{opt.budget, opt.samples, opt.seed, slc.s};
          auto res = brute_clean(gr, bo);
          if (res.status == BruteStatus::False) clean = false;
          if (res.status == BruteStatus::True && !res.sampled) clean = true;
          source = "brute-force";
        }
      });
    }
    Verdict b = theorem_b_decide(ring, rank, clean, source, opt.height_bound);
    v.status = b.status;
    v.reasons.insert(v.reasons.end(), b.reasons.begin(), b.reasons.end());
    for (const auto& cert : b.certificates) v.certificates.push_back(cert);
    return v;
  }
  v.reasons.push_back({"no decision criterion applies", "none", json::object(), false});
  v.status = Status::Unknown;
  return v;
}

// ---------------------------------------------------------------------------
// Reports

InvolutionKind parse_involution(const std::string& s) {
  if (s == "canonical") return InvolutionKind::Canonical;
  if (s == "classical") return InvolutionKind::Classical;
  if (s == "identity") return InvolutionKind::Identity;
  throw ParseError("involution must be canonical, classical or identity", 0);
}

std::string to_string(InvolutionKind k) {
  switch (k) {
    case InvolutionKind::Canonical: return "canonical";
    case InvolutionKind::Classical: return "classical";
    case InvolutionKind::Identity: return "identity";
  }
  return "?";
}

InvolutionMap make_involution(const GroupInput& g, InvolutionKind k) {
  switch (k) {
    case InvolutionKind::Canonical:
      if (g.slc) return canonical_involution(*g.slc);
      if (g.group->is_abelian()) return identity_involution(g.group);
      throw InvalidParameter("canonical involution needs an SLC group");
    case InvolutionKind::Classical: return classical_involution(g.group);
    case InvolutionKind::Identity:
      if (!g.group->is_abelian()) throw InvalidParameter("the identity map is an involution only on abelian groups");
      return identity_involution(g.group);
  }
  throw InvalidParameter("unknown involution");
}

namespace {

GroupInput require_slc(const std::string& text) {
  auto g = build_group(text);
  if (!g.slc) throw InvalidParameter("'" + text + "' is not an SLC group (needs a Q8 or Di factor)");
  return g;
}

json header(const std::string& command, const GroupInput& g, const CoefficientRing& r) {
  return {{"command", command}, {"group", g.text}, {"order", g.group->order()}, {"ring", ring_name(r)}};
}

template <Ring R>
json explain_forms(const GroupRing<R>& gr, const SLCStructure& slc, const DecideOptions& opt) {
  json out = json::object();
  auto w = generate_witness(gr, slc, opt.height_bound);
  auto oms = one_minus_s(gr, slc.s);
  out["one_minus_s"] = form_json(gr, decompose_f(gr, slc, oms));
  if (w.witness) {
    const auto h = problem_element(gr, slc.s, *w.witness);
    out["problem_element"] = form_json(gr, decompose_f(gr, slc, h));
    const auto quarter = gr.ring().inverse(gr.ring().from_int(4));
    const auto t = gr.mul(gr.mul(gr.scalar_mul(quarter, w.witness->gamma), w.witness->tau_w), oms);
    out["quarter_gamma_tau"] = form_json(gr, decompose_f(gr, slc, t));
  }
  return out;
}

template <class T>
bool same_set(std::vector<T> a, std::vector<T> b, auto less) {
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  return a == b;
}

}  // namespace

json decide_report(const std::string& group, const std::string& ring, const DecideOptions& opt, bool explain) {
  const auto g = require_slc(group);
  const auto r = make_ring(ring);
  json rep = header("decide", g, r);
  const Verdict v = decide(*g.slc, r, opt);
  rep.update(to_json(v));
  if (explain) {
    rep["explain"] = with_ring(r, [&](const auto& rr) {
      using R = std::decay_t<decltype(rr)>;
      return explain_forms(GroupRing<R>(g.group, rr), *g.slc, opt);
    });
  }
  return rep;
}

json brute_report(const std::string& group, const std::string& ring, InvolutionKind inv, const DecideOptions& opt) {
  const auto g = build_group(group);
  const auto r = make_ring(ring);
  json rep = header("brute", g, r);
  rep["involution"] = to_string(inv);
  with_ring(r, [&](const auto& rr) {
    using R = std::decay_t<decltype(rr)>;
    if constexpr (FiniteRing<R>) {
      GroupRing<R> gr(g.group, rr);
      const auto sigma = make_involution(g, inv);
      BruteOptions bo{opt.budget, opt.samples, opt.seed, std::nullopt};
      const auto res = brute_star_clean(gr, sigma, bo);
      rep["star_clean"] = brute_json(gr, res);
      Status st = Status::Unknown;
      if (res.status == BruteStatus::False) st = Status::NotStarClean;
      if (res.status == BruteStatus::True && !res.sampled) st = Status::StarClean;
      rep["verdict"] = to_string(st);
    } else {
      throw InvalidParameter("brute force needs a finite coefficient ring");
    }
  });
  return rep;
}

json witness_report(const std::string& group, const std::string& ring, const DecideOptions& opt) {
  const auto g = require_slc(group);
  const auto r = make_ring(ring);
  json rep = header("witness", g, r);
  with_ring(r, [&](const auto& rr) {
    using R = std::decay_t<decltype(rr)>;
    GroupRing<R> gr(g.group, rr);
    const auto& slc = *g.slc;
    auto out = generate_witness(gr, slc, opt.height_bound);
    if (out.equation) rep["equation"] = three_squares_json(rr, *out.equation);
    if (!out.witness) {
      rep["witness"] = nullptr;
      rep["verdict"] = to_string(Status::Unknown);
      return;
    }
    const auto& w = *out.witness;
    const auto chk = check_witness(gr, slc, w, opt.condition2_budget);
    json wj = {{"case_tag", case_tag(w.which)},
               {"detail", w.detail},
               {"gamma", elem_json(gr, w.gamma)},
               {"tau_w", elem_json(gr, w.tau_w)},
               {"status", to_string(chk.status)},
               {"method", chk.method}};
    if (chk.counterexample) wj["counterexample"] = elem_json(gr, *chk.counterexample);
    const auto h = problem_element(gr, slc.s, w);
    wj["problem_element"] = elem_json(gr, h);
    if constexpr (FiniteRing<R>) {
      try {
        const auto d = element_star_clean(gr, canonical_involution(slc), h, slc.s, opt.budget);
        wj["problem_element_decomposes"] = d.has_value();
      } catch (const BudgetExceeded& e) {
        wj["problem_element_decomposes"] = nullptr;
      }
    }
    rep["witness"] = wj;
    rep["verdict"] = to_string(chk.status == WitnessStatus::Valid ? Status::NotStarClean : Status::Unknown);
  });
  return rep;
}

json canonical_report(const std::string& group, const std::string& ring, const DecideOptions& opt) {
  const auto g = require_slc(group);
  const auto r = make_ring(ring);
  json rep = header("canonical", g, r);
  with_ring(r, [&](const auto& rr) {
    using R = std::decay_t<decltype(rr)>;
    GroupRing<R> gr(g.group, rr);
    const auto& slc = *g.slc;
    rep["forms"] = explain_forms(gr, slc, opt);
    if constexpr (FiniteRing<R>) {
      auto fp = f_projections(gr, slc, opt.budget);
      auto exhaustive = gr.projections(canonical_involution(slc), opt.budget, Component::F, slc.s);
      json list = json::array();
      for (const auto& p : fp) list.push_back(gr.format(p));
      rep["f_projections"] = list;
      rep["exhaustive_count"] = exhaustive.size();
      rep["agree"] = same_set(fp, exhaustive, [](const GRElem<R>& x, const GRElem<R>& y) {
        for (std::size_t i = 0; i < x.c.size(); ++i) {
          if (x.c[i] != y.c[i]) return x.c[i] < y.c[i];
        }
        return false;
      });
    }
  });
  return rep;
}

json lift_report(const std::string& group, const std::string& ring, InvolutionKind inv, std::size_t count,
                 const DecideOptions& opt) {
  const auto h = build_group(group);
  const auto r = make_ring(ring);
  json rep = header("lift", h, r);
  rep["involution"] = to_string(inv);
  with_ring(r, [&](const auto& rr) {
    using R = std::decay_t<decltype(rr)>;
    if constexpr (FiniteRing<R>) {
      GroupRing<R> rh(h.group, rr);
      const auto sigma = make_involution(h, inv);
      const auto ext = extend_c2(h.group, sigma);
      GroupRing<R> rg(ext.group, rr);
      const auto proj = rh.projections(sigma, opt.budget);
      std::mt19937_64 rng(opt.seed);
      std::uniform_int_distribution<std::uint64_t> coin(0, rr.cardinality() - 1);
      auto random_decomposition = [&]() {
        GRElem<R> u;
        do {
          u = rh.zero();
          for (auto& c : u.c) c = rr.element_at(coin(rng));
        } while (!rh.is_unit(u));
        const auto& p = proj[std::uniform_int_distribution<std::size_t>(0, proj.size() - 1)(rng)];
        return StarCleanDecomposition<R>{u, p};
      };
      std::size_t valid = 0;
      json examples = json::array();
      for (std::size_t i = 0; i < count; ++i) {
        const auto delta = random_decomposition();
        const auto quot = random_decomposition();
        const auto lifted = lift_c2(rh, sigma, rg, ext, delta, std::optional{quot});
        const auto target = rg.add(lifted.unit, lifted.projection);
        if (validate_decomposition(rg, ext.sigma, target, lifted)) ++valid;
        if (examples.size() < 3) {
          examples.push_back(json{{"target", elem_json(rg, target)},
                              {"unit", elem_json(rg, lifted.unit)},
                              {"projection", elem_json(rg, lifted.projection)}});
        }
      }
      rep["lifted_group"] = h.text + "xC2";
      rep["count"] = count;
      rep["valid"] = valid;
      rep["examples"] = examples;
      rep["verdict"] = to_string(valid == count ? Status::StarClean : Status::NotStarClean);
    } else {
      throw InvalidParameter("lift needs a finite coefficient ring");
    }
  });
  return rep;
}

json crossval_report(const std::string& group, const std::string& ring, InvolutionKind inv, const DecideOptions& opt) {
  const auto g = build_group(group);
  const auto r = make_ring(ring);
  json rep = header("crossval", g, r);
  rep["involution"] = to_string(inv);
  with_ring(r, [&](const auto& rr) {
    using R = std::decay_t<decltype(rr)>;
    if constexpr (FiniteRing<R>) {
      GroupRing<R> gr(g.group, rr);
      const auto sigma = make_involution(g, inv);
      std::optional<GroupIndex> s;
      if (g.slc) s = g.slc->s;
      BruteOptions bo{opt.budget, opt.samples, opt.seed, s};
      const auto clean = brute_clean(gr, bo);
      const auto star = brute_star_clean(gr, sigma, bo);
      rep["clean"] = brute_json(gr, clean);
      rep["star_clean"] = brute_json(gr, star);

      const bool theory_applies = g.slc && sigma.image == canonical_involution(*g.slc).image;
      if (!theory_applies) {
        rep["theory"] = "N/A";
        rep["agree"] = nullptr;
        Status st = Status::Unknown;
        if (star.status == BruteStatus::False) st = Status::NotStarClean;
        if (star.status == BruteStatus::True && !star.sampled) st = Status::StarClean;
        rep["verdict"] = to_string(st);
        return;
      }
      const Verdict v = decide(*g.slc, r, opt);
      rep["theory"] = to_json(v);
      bool agree = true;
      if (v.status == Status::NotStarClean && star.status == BruteStatus::True && !star.sampled) agree = false;
      if (v.status == Status::StarClean && star.status == BruteStatus::False) agree = false;

      // The witness's problem element must resist decomposition.
      auto w = generate_witness(gr, *g.slc, opt.height_bound);
      if (w.witness && check_witness(gr, *g.slc, *w.witness, opt.condition2_budget).status == WitnessStatus::Valid) {
        const auto h = problem_element(gr, g.slc->s, *w.witness);
        const auto d = element_star_clean(gr, sigma, h, g.slc->s, opt.budget);
        rep["problem_element"] = elem_json(gr, h);
        rep["problem_element_decomposes"] = d.has_value();
        if (d) agree = false;
      }
      rep["agree"] = agree;
      if (!agree) throw DiscrepancyError("theory and brute force disagree on " + g.text + " over " + rr.name());
      Status st = v.status;
      if (st == Status::Unknown && star.status == BruteStatus::False) st = Status::NotStarClean;
      if (st == Status::Unknown && star.status == BruteStatus::True && !star.sampled) st = Status::StarClean;
      rep["verdict"] = to_string(st);
    } else {
      throw InvalidParameter("cross-validation needs a finite coefficient ring");
    }
  });
  return rep;
}

json levels_report(std::uint64_t prime) {
  const Level l = level_classify_prime(prime);
  const auto n = nt::exists_n_dividing(prime);
  json rep = {{"command", "levels"}, {"prime", prime}, {"p_mod_8", prime % 8}, {"level", to_string(l)}};
  rep["exists_n"] = n ? json(*n) : json(nullptr);
  rep["multiplicative_order_of_2"] = nt::multiplicative_order(2, prime);
  return rep;
}

}  // namespace starclean
