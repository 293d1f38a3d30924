#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "starclean/decide.hpp"
#include "starclean/errors.hpp"

using namespace starclean;

namespace {

struct Job {
  std::string command;
  std::string group;
  std::string ring;
  std::string involution = "canonical";
  std::uint64_t prime = 0;
  std::size_t count = 100;
  bool as_json = false;
  bool explain = false;
  bool timings = false;
  DecideOptions opt;
};

int exit_code(const json& rep) {
  if (!rep.contains("verdict")) return 0;
  switch (status_from_string(rep["verdict"].get<std::string>())) {
    case Status::StarClean: return 0;
    case Status::NotStarClean: return 1;
    case Status::Unknown: return 2;
  }
  return 2;
}

json run(const Job& job) {
  const auto inv = parse_involution(job.involution);
  if (job.command == "decide") return decide_report(job.group, job.ring, job.opt, job.explain);
  if (job.command == "brute") return brute_report(job.group, job.ring, inv, job.opt);
  if (job.command == "witness") return witness_report(job.group, job.ring, job.opt);
  if (job.command == "canonical") return canonical_report(job.group, job.ring, job.opt);
  if (job.command == "lift") return lift_report(job.group, job.ring, inv, job.count, job.opt);
  if (job.command == "crossval") return crossval_report(job.group, job.ring, inv, job.opt);
  if (job.command == "levels") return levels_report(job.prime);
  throw InvalidParameter("unknown command " + job.command);
}

std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void print_text(const json& rep, std::ostream& os) {
  if (rep["command"] == "levels") {
    os << "p = " << rep["prime"] << " (" << rep["p_mod_8"] << " mod 8): " << scalar(rep["level"]);
    if (!rep["exists_n"].is_null()) os << ", p | 2^" << rep["exists_n"] << " + 1";
    os << "\n";
    return;
  }
  os << scalar(rep["command"]) << " " << scalar(rep["group"]) << " over " << scalar(rep["ring"]);
  if (rep.contains("verdict")) os << ": " << scalar(rep["verdict"]);
  os << "\n";
  if (rep.contains("reasons")) {
    for (const auto& r : rep["reasons"]) {
      os << "  [" << scalar(r["citation"]) << "] " << scalar(r["criterion"])
         << (r["certified"].get<bool>() ? "" : " (uncertified)") << "\n";
    }
  }
  for (const auto& [k, v] : rep.items()) {
    if (k == "command" || k == "group" || k == "ring" || k == "verdict" || k == "reasons" || k == "degenerate" ||
        k == "order") {
      continue;
    }
    if (k == "certificates" && v.empty()) continue;
    os << "  " << k << ": " << (v.is_structured() ? v.dump() : scalar(v)) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide *-cleanness of group rings RG for SLC groups G"};
  app.require_subcommand(1);
  Job job;

  auto common = [&](CLI::App* sub, bool needs_group) {
    if (needs_group) {
      sub->add_option("--group,-g", job.group, "group, e.g. Q8xC7, D1[k=1]xC3, C2xC4")->required();
      sub->add_option("--ring,-r", job.ring, "ring: Z/n, Fp, Fp^k, Q, Q(zetad)")->required();
    }
    sub->add_option("--involution", job.involution, "canonical, classical or identity")
        ->check(CLI::IsMember({"canonical", "classical", "identity"}));
    sub->add_option("--budget", job.opt.budget, "enumeration budget");
    sub->add_option("--height-bound", job.opt.height_bound, "search height for sums of squares");
    sub->add_option("--seed", job.opt.seed, "sampling seed");
    sub->add_option("--samples", job.opt.samples, "samples when enumeration exceeds the budget");
    sub->add_flag("--json", job.as_json, "JSON report");
    sub->add_flag("--timings", job.timings, "include wall-clock timings");
  };

  for (const char* name : {"decide", "brute", "witness", "canonical", "crossval"}) {
    auto* sub = app.add_subcommand(name);
    common(sub, true);
    if (std::string(name) == "decide") sub->add_flag("--explain", job.explain, "dump canonical forms of cited elements");
  }
  auto* lift = app.add_subcommand("lift", "lift random decompositions from RH to R[H x C2]");
  common(lift, true);
  lift->add_option("--count", job.count, "number of random decompositions");
  auto* levels = app.add_subcommand("levels", "level of Q(zeta_p) and the least n with p | 2^n + 1");
  common(levels, false);
  levels->add_option("--prime,-p", job.prime)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }
  job.command = app.get_subcommands().front()->get_name();

  try {
    const auto t0 = std::chrono::steady_clock::now();
    json rep = run(job);
    if (job.timings) {
      rep["timings"] = {
          {"total_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()}};
    }
    if (job.as_json) {
      std::cout << rep.dump(2) << "\n";
    } else {
      print_text(rep, std::cout);
    }
    return exit_code(rep);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 5;
  } catch (const DiscrepancyError& e) {
    std::cerr << "discrepancy: " << e.what() << "\n";
    return 6;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 7;
  }
}
