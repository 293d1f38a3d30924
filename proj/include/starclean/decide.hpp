#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "starclean/brute.hpp"
#include "starclean/parse.hpp"

namespace starclean {

using nlohmann::json;

enum class Status { StarClean, NotStarClean, Unknown };
std::string to_string(Status s);
Status status_from_string(const std::string& s);

struct Reason {
  std::string criterion;
  std::string citation;
  json data = json::object();
  bool certified = false;

  friend bool operator==(const Reason&, const Reason&) = default;
};

struct Verdict {
  Status status = Status::Unknown;
  std::vector<Reason> reasons;
  json certificates = json::array();
  bool degenerate = false;

  bool cites(const std::string& tag) const;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

json to_json(const Verdict& v);
Verdict verdict_from_json(const json& j);

struct DecideOptions {
  int height_bound = kDefaultHeightBound;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t condition2_budget = kDefaultCondition2Budget;
  std::uint64_t samples = kDefaultSampleCount;
  std::uint64_t seed = 1;
};

// ---------------------------------------------------------------------------
// Number-theoretic side

using nt::exists_n_dividing;

struct PWComponent {
  std::uint64_t d = 1;
  std::uint64_t multiplicity = 1;
  std::uint64_t degree = 1;
  friend bool operator==(const PWComponent&, const PWComponent&) = default;
};

struct PerlisWalkerDecomposition {
  std::vector<PWComponent> components;
  std::uint64_t group_order = 1;
  /// sum a_d * degree == |A|.
  bool mass_ok() const;
};

/// F A = sum_d a_d F(zeta_d), for abelian A with char F not dividing |A|.
PerlisWalkerDecomposition perlis_walker(const CoefficientRing& field, const FiniteGroup& a);

/// Simple components of a semisimple coefficient ring (fields and squarefree Z/n), else nullopt.
std::optional<std::vector<CoefficientRing>> field_components(const CoefficientRing& ring);

// ---------------------------------------------------------------------------
// Theory side

/// Structure test, order-4 and excluded-prime tests on A, then the equation over R.
Verdict necessary_conditions(const SLCStructure& slc, const CoefficientRing& ring, const DecideOptions& opt = {});

/// StarClean iff X^2+Y^2+Z^2+1 = 0 is unsolvable in every F_i(zeta_d), d an element order of A.
Verdict theorem_c_decide(const std::vector<CoefficientRing>& fields, const FiniteGroup& a,
                         int height_bound = kDefaultHeightBound);

/// Q8 x C2^rank: StarClean iff clean and the equation has no solution in R.
Verdict theorem_b_decide(const CoefficientRing& ring, unsigned rank, std::optional<bool> clean,
                         const std::string& clean_source, int height_bound = kDefaultHeightBound);

/// StarClean iff every component is; empty input is vacuously StarClean and flagged degenerate.
Verdict direct_sum_reduce(const std::vector<Verdict>& components);

/// Full theory-side pipeline for the canonical involution.
Verdict decide(const SLCStructure& slc, const CoefficientRing& ring, const DecideOptions& opt = {});

// ---------------------------------------------------------------------------
// Reports (JSON) shared by the command line and the Python module

enum class InvolutionKind { Canonical, Classical, Identity };
InvolutionKind parse_involution(const std::string& s);
std::string to_string(InvolutionKind k);
InvolutionMap make_involution(const GroupInput& g, InvolutionKind k);

json decide_report(const std::string& group, const std::string& ring, const DecideOptions& opt, bool explain);
json brute_report(const std::string& group, const std::string& ring, InvolutionKind inv, const DecideOptions& opt);
json witness_report(const std::string& group, const std::string& ring, const DecideOptions& opt);
json canonical_report(const std::string& group, const std::string& ring, const DecideOptions& opt);
json lift_report(const std::string& group, const std::string& ring, InvolutionKind inv, std::size_t count,
                 const DecideOptions& opt);
/// Throws DiscrepancyError when a definite theory verdict contradicts brute force.
json crossval_report(const std::string& group, const std::string& ring, InvolutionKind inv, const DecideOptions& opt);
json levels_report(std::uint64_t prime);

}  // namespace starclean
