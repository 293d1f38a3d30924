#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "starclean/decide.hpp"
#include "starclean/errors.hpp"

namespace py = pybind11;
using namespace starclean;

namespace {

DecideOptions options(int height_bound, std::uint64_t budget, std::uint64_t samples, std::uint64_t seed) {
  DecideOptions o;
  o.height_bound = height_bound;
  o.budget = budget;
  o.samples = samples;
  o.seed = seed;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "*-cleanness of group rings";

  static py::exception<CapacityError> capacity(m, "CapacityError", PyExc_RuntimeError);
  static py::exception<DiscrepancyError> discrepancy(m, "DiscrepancyError", PyExc_AssertionError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const CapacityError& e) {
      capacity(e.what());
    } catch (const DiscrepancyError& e) {
      discrepancy(e.what());
    }
  });

#define OPTS                                                                                        \
  py::arg("height_bound") = kDefaultHeightBound, py::arg("budget") = kDefaultBudget,              \
      py::arg("samples") = kDefaultSampleCount, py::arg("seed") = 1

  m.def(
      "decide",
      [](const std::string& g, const std::string& r, bool explain, int h, std::uint64_t b, std::uint64_t s,
         std::uint64_t seed) { return decide_report(g, r, options(h, b, s, seed), explain).dump(); },
      py::arg("group"), py::arg("ring"), py::arg("explain") = false, OPTS);
  m.def(
      "brute",
      [](const std::string& g, const std::string& r, const std::string& inv, int h, std::uint64_t b, std::uint64_t s,
         std::uint64_t seed) { return brute_report(g, r, parse_involution(inv), options(h, b, s, seed)).dump(); },
      py::arg("group"), py::arg("ring"), py::arg("involution") = "canonical", OPTS);
  m.def(
      "witness",
      [](const std::string& g, const std::string& r, int h, std::uint64_t b, std::uint64_t s, std::uint64_t seed) {
        return witness_report(g, r, options(h, b, s, seed)).dump();
      },
      py::arg("group"), py::arg("ring"), OPTS);
  m.def(
      "canonical",
      [](const std::string& g, const std::string& r, int h, std::uint64_t b, std::uint64_t s, std::uint64_t seed) {
        return canonical_report(g, r, options(h, b, s, seed)).dump();
      },
      py::arg("group"), py::arg("ring"), OPTS);
  m.def(
      "lift",
      [](const std::string& g, const std::string& r, const std::string& inv, std::size_t count, int h,
         std::uint64_t b, std::uint64_t s, std::uint64_t seed) {
        return lift_report(g, r, parse_involution(inv), count, options(h, b, s, seed)).dump();
      },
      py::arg("group"), py::arg("ring"), py::arg("involution") = "canonical", py::arg("count") = 100, OPTS);
  m.def(
      "crossval",
      [](const std::string& g, const std::string& r, const std::string& inv, int h, std::uint64_t b, std::uint64_t s,
         std::uint64_t seed) { return crossval_report(g, r, parse_involution(inv), options(h, b, s, seed)).dump(); },
      py::arg("group"), py::arg("ring"), py::arg("involution") = "canonical", OPTS);
  m.def("levels", [](std::uint64_t p) { return levels_report(p).dump(); }, py::arg("prime"));
  m.def("exists_n_dividing", &nt::exists_n_dividing, py::arg("p"));
  m.def(
      "perlis_walker",
      [](const std::string& ring, const std::vector<std::uint64_t>& a) {
        std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> out;
        for (const auto& c : perlis_walker(make_ring(ring), *build_abelian(a)).components) {
          out.emplace_back(c.d, c.multiplicity, c.degree);
        }
        return out;
      },
      py::arg("ring"), py::arg("abelian"));
  m.def(
      "three_squares",
      [](const std::string& ring, int h) {
        const auto rep = solve_three_squares(make_ring(ring), h);
        py::dict d;
        d["ring"] = rep.ring;
        d["status"] = to_string(rep.status);
        d["basis"] = rep.basis;
        d["solution"] = rep.solution ? py::cast(std::vector<std::string>(rep.solution->begin(), rep.solution->end()))
                                     : py::none();
        return d;
      },
      py::arg("ring"), py::arg("height_bound") = kDefaultHeightBound);
  m.def("ring_name", [](const std::string& r) { return ring_name(make_ring(r)); }, py::arg("ring"));
  m.def(
      "group_order", [](const std::string& g) { return build_group(g).group->order(); }, py::arg("group"));
}
