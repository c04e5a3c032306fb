// Python bindings. Big integers cross the boundary as Python ints (via
// decimal text); results are plain classes with read-only attributes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cyclebound/bounds.hpp"
#include "cyclebound/catalog.hpp"
#include "cyclebound/cycles.hpp"
#include "cyclebound/dynamics.hpp"
#include "cyclebound/error.hpp"
#include "cyclebound/min_m.hpp"
#include "cyclebound/report.hpp"

namespace py = pybind11;
using namespace cyclebound;

namespace pybind11::detail {

template <>
struct type_caster<mpz_class> {
  PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

  bool load(handle src, bool) {
    if (!src || !PyLong_Check(src.ptr())) return false;
    const std::string text = py::str(src);
    return value.set_str(text, 10) == 0;
  }

  static handle cast(const mpz_class& v, return_value_policy, handle) {
    return PyLong_FromString(v.get_str(10).c_str(), nullptr, 10);
  }
};

}  // namespace pybind11::detail

namespace {

PqSystem make_system(std::uint64_t p, std::uint64_t q) { return PqSystem::make(p, q); }

py::dict interval_dict(const Interval& v, unsigned precision_bits) {
  py::dict d;
  d["lower"] = fixed_string(v.lower(), 30);
  d["upper"] = fixed_string(v.upper(), 30);
  d["approx"] = v.approx();
  d["precision_bits"] = precision_bits;
  return d;
}

}  // namespace

PYBIND11_MODULE(_cyclebound, m) {
  m.doc() = "Odd-only (px+q) maps: trajectories, cycles, certified bounds and minimal-m searches.";

  static py::exception<Error> error_type(m, "CycleboundError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type.ptr())(std::string(to_string(e.kind())) + ": " + e.what());
      exc.attr("kind") = to_string(e.kind());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::enum_<LoopClass>(m, "LoopClass")
      .value("ALPHA", LoopClass::Alpha)
      .value("BETA", LoopClass::Beta)
      .value("BOUNDARY_EQUALITY", LoopClass::BoundaryEquality)
      .def("__str__", [](LoopClass c) { return std::string(to_string(c)); });

  py::class_<StepRecord>(m, "StepRecord")
      .def_readonly("input", &StepRecord::input)
      .def_readonly("k", &StepRecord::k)
      .def_readonly("output", &StepRecord::output)
      .def("__repr__", [](const StepRecord& s) {
        return "StepRecord(input=" + s.input.get_str() + ", k=" + std::to_string(s.k) + ", output=" +
               s.output.get_str() + ")";
      });

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("start", &Trajectory::start)
      .def_readonly("steps", &Trajectory::steps)
      .def_readonly("s_partial", &Trajectory::s_partial)
      .def_readonly("returned_to_start_at", &Trajectory::returned_to_start_at)
      .def_readonly("closed_cycle", &Trajectory::closed_cycle)
      .def_property_readonly("odd_values", &Trajectory::odd_values)
      .def_property_readonly("k_sequence", &Trajectory::k_sequence)
      .def("__len__", &Trajectory::length);

  py::class_<CycleRecord>(m, "CycleRecord")
      .def_property_readonly("p", [](const CycleRecord& r) { return r.system.p; })
      .def_property_readonly("q", [](const CycleRecord& r) { return r.system.q; })
      .def_readonly("elements", &CycleRecord::elements)
      .def_readonly("k_sequence", &CycleRecord::k_sequence)
      .def_readonly("s_m", &CycleRecord::s_m)
      .def_readonly("a_min", &CycleRecord::a_min)
      .def_readonly("loop_class", &CycleRecord::loop_class)
      .def_property_readonly("m", &CycleRecord::m)
      .def("catalog_line", [](const CycleRecord& r) { return to_catalog_line(r); })
      .def("__eq__", [](const CycleRecord& a, const CycleRecord& b) { return a == b; })
      .def("__repr__", [](const CycleRecord& r) { return "CycleRecord(" + to_catalog_line(r) + ")"; });

  py::class_<CycleSearchReport>(m, "CycleSearchReport")
      .def_readonly("start", &CycleSearchReport::start)
      .def_property_readonly("outcome", [](const CycleSearchReport& r) { return std::string(to_string(r.outcome)); })
      .def_readonly("cycle", &CycleSearchReport::cycle)
      .def_readonly("steps", &CycleSearchReport::steps)
      .def_readonly("last_bits", &CycleSearchReport::last_bits);

  py::class_<CycleSweep>(m, "CycleSweep")
      .def_readonly("cycles", &CycleSweep::cycles)
      .def_readonly("suspects", &CycleSweep::suspects);

  py::class_<BoundCheck>(m, "BoundCheck")
      .def_readonly("passed", &BoundCheck::pass)
      .def_readonly("equality", &BoundCheck::equality)
      .def_readonly("loop_class", &BoundCheck::loop_class)
      .def_readonly("transcript", &BoundCheck::transcript);

  py::class_<NearTie>(m, "NearTie")
      .def_readonly("m", &NearTie::m)
      .def_readonly("accepted", &NearTie::accepted)
      .def_readonly("decided_at_bits", &NearTie::decided_at_bits)
      .def_readonly("exact", &NearTie::exact)
      .def_readonly("margin", &NearTie::margin);

  py::class_<MinMResult>(m, "MinMResult")
      .def_readonly("minimal_m", &MinMResult::minimal_m)
      .def_property_readonly("search", [](const MinMResult& r) { return std::string(to_string(r.search)); })
      .def_readonly("a_min", &MinMResult::a_min_input)
      .def_readonly("precision_bits", &MinMResult::precision_bits)
      .def_readonly("threshold", &MinMResult::threshold)
      .def_readonly("near_ties", &MinMResult::near_ties)
      .def_readonly("chunk_size", &MinMResult::chunk_size)
      .def_readonly("workers", &MinMResult::workers);

  m.def(
      "t_step",
      [](const BigInt& a, std::uint64_t p, std::uint64_t q) {
        const StepRecord s = t_step(a, make_system(p, q));
        return py::make_tuple(s.output, s.k);
      },
      py::arg("a"), py::arg("p") = 3, py::arg("q") = 1, "One odd-to-odd step; returns (next, k).");

  m.def(
      "t_trajectory",
      [](const BigInt& a, std::size_t max_steps, std::uint64_t p, std::uint64_t q, bool stop_on_return,
         bool stop_on_cycle) {
        TrajectoryOptions o;
        o.max_steps = max_steps;
        o.stop_on_return = stop_on_return;
        o.stop_on_cycle = stop_on_cycle;
        py::gil_scoped_release release;
        return t_trajectory(a, make_system(p, q), o);
      },
      py::arg("a"), py::arg("max_steps"), py::arg("p") = 3, py::arg("q") = 1, py::arg("stop_on_return") = false,
      py::arg("stop_on_cycle") = false);

  m.def(
      "coefficient_cm",
      [](const Trajectory& t, std::size_t m_) { return coefficient_cm(t, m_); }, py::arg("trajectory"), py::arg("m"));

  m.def(
      "verify_linear_form",
      [](const Trajectory& t, std::size_t m_) {
        const IdentityCheck c = verify_linear_form(t, m_);
        return py::make_tuple(c.pass, c.residual);
      },
      py::arg("trajectory"), py::arg("m"), "Returns (passed, residual).");

  m.def(
      "verify_product_identity",
      [](const std::vector<BigInt>& values, std::uint64_t p, std::uint64_t q) {
        const IdentityCheck c = verify_product_identity(values, make_system(p, q));
        return py::make_tuple(c.pass, c.residual);
      },
      py::arg("values"), py::arg("p") = 3, py::arg("q") = 1);

  m.def(
      "make_cycle",
      [](const std::vector<BigInt>& values, std::uint64_t p, std::uint64_t q) {
        return make_cycle_record(values, make_system(p, q));
      },
      py::arg("values"), py::arg("p") = 3, py::arg("q") = 1);

  m.def(
      "find_cycle_from",
      [](const BigInt& start, std::uint64_t p, std::uint64_t q, std::size_t max_steps, std::size_t max_bits) {
        py::gil_scoped_release release;
        return find_cycle_from(start, make_system(p, q), CycleLimits{max_steps, max_bits});
      },
      py::arg("start"), py::arg("p") = 3, py::arg("q") = 1, py::arg("max_steps") = 100000,
      py::arg("max_bits") = 512);

  m.def(
      "enumerate_cycles",
      [](std::uint64_t p, std::uint64_t q, std::uint64_t limit, std::size_t max_steps, std::size_t max_bits,
         unsigned workers) {
        py::gil_scoped_release release;
        return enumerate_cycles(make_system(p, q), limit, CycleLimits{max_steps, max_bits}, workers);
      },
      py::arg("p"), py::arg("q"), py::arg("limit"), py::arg("max_steps") = 100000, py::arg("max_bits") = 512,
      py::arg("workers") = 1);

  m.def(
      "classify",
      [](std::uint64_t m_, const BigInt& a_min, std::uint64_t p, std::uint64_t q) {
        return classify(m_, a_min, make_system(p, q));
      },
      py::arg("m"), py::arg("a_min"), py::arg("p") = 3, py::arg("q") = 1);

  m.def("exact_bound_check", &exact_bound_check, py::arg("cycle"));

  m.def(
      "check_sandwich",
      [](const CycleRecord& r) {
        const SandwichCheck s = check_sandwich(r);
        return s.pass();
      },
      py::arg("cycle"));

  m.def(
      "log2_frac",
      [](std::uint64_t p, unsigned bits) {
        const FixedFraction f = log2_frac(p, bits);
        return py::make_tuple(f.numerator, f.hex(), f.decimal(static_cast<int>(bits * 3 / 10)));
      },
      py::arg("p"), py::arg("bits") = 64, "Returns (numerator, hex, decimal) of frac(log2 p) to `bits` bits.");

  m.def(
      "alpha_bound",
      [](std::uint64_t m_, std::uint64_t p, std::uint64_t q, unsigned bits) {
        const BoundValue v = alpha_bound(m_, make_system(p, q), bits);
        return interval_dict(v.value, v.precision_bits);
      },
      py::arg("m"), py::arg("p") = 3, py::arg("q") = 1, py::arg("bits") = kDefaultBoundBits);

  m.def(
      "beta_bound",
      [](std::uint64_t m_, std::uint64_t p, std::uint64_t q, unsigned bits) {
        const BoundValue v = beta_bound(m_, make_system(p, q), bits);
        return interval_dict(v.value, v.precision_bits);
      },
      py::arg("m"), py::arg("p") = 3, py::arg("q") = 1, py::arg("bits") = kDefaultBoundBits);

  m.def(
      "rhs_threshold",
      [](const BigInt& a_min, std::uint64_t p, std::uint64_t q, unsigned bits) {
        const BoundValue v = rhs_threshold(a_min, make_system(p, q), bits);
        return interval_dict(v.value, v.precision_bits);
      },
      py::arg("a_min"), py::arg("p") = 3, py::arg("q") = 1, py::arg("bits") = kDefaultBoundBits);

  m.def(
      "min_m_alpha",
      [](const BigInt& a_min, std::uint64_t p, std::uint64_t q, unsigned bits) {
        return min_m_alpha(a_min, make_system(p, q), bits);
      },
      py::arg("a_min"), py::arg("p") = 3, py::arg("q") = 1, py::arg("bits") = kDefaultAlphaBits);

  m.def(
      "min_m_beta_scan",
      [](const BigInt& a_min, std::uint64_t p, std::uint64_t q, unsigned precision_bits, std::uint64_t chunk_size,
         unsigned workers) {
        ScanConfig c;
        c.precision_bits = precision_bits;
        c.chunk_size = chunk_size;
        c.workers = workers;
        py::gil_scoped_release release;
        return min_m_beta_scan(a_min, make_system(p, q), c);
      },
      py::arg("a_min"), py::arg("p") = 3, py::arg("q") = 1, py::arg("precision_bits") = 128,
      py::arg("chunk_size") = std::uint64_t{1} << 24, py::arg("workers") = 0);

  m.def("canonical_a_min", &canonical_a_min);
}
