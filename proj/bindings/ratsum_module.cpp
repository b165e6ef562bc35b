#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ratsum/counting.hpp"
#include "ratsum/core.hpp"
#include "ratsum/envelopes.hpp"
#include "ratsum/expsum.hpp"
#include "ratsum/moments.hpp"

namespace py = pybind11;
using namespace ratsum;

namespace {

ShiftVector shift_from_list(const std::vector<i64>& raw, const FieldContext& ctx, bool residue) {
  if (residue) return make_shift_residue(raw, ctx);
  return make_shift_integer(raw, static_cast<int>(raw.size()));
}

}  // namespace

PYBIND11_MODULE(_ratsum, m) {
  m.doc() = "Exact counts, moments and bound verification for rational exponential sums";

  py::register_exception<error>(m, "Error");

  py::class_<FieldContext>(m, "FieldContext")
      .def_readonly("p", &FieldContext::p)
      .def_readonly("d", &FieldContext::d)
      .def("__repr__", [](const FieldContext& ctx) {
        return "FieldContext(p=" + std::to_string(ctx.p) + ", d=" + std::to_string(ctx.d) + ")";
      });

  m.def("validate_context", &validate_context, py::arg("p"), py::arg("d"));
  m.def("is_prime", &is_prime_u64, py::arg("n"));

  m.def(
      "power_sum_vector",
      [](u64 n, const FieldContext& ctx, const std::string& domain) {
        return power_sum_vector(n, ctx, domain == "integer" ? Domain::integer : Domain::residue)
            .components;
      },
      py::arg("n"), py::arg("ctx"), py::arg("domain") = "residue");

  m.def(
      "additive_character",
      [](i64 z, u64 p) { return additive_character(z, p); }, py::arg("z"), py::arg("p"));

  m.def(
      "exp_sum",
      [](const std::vector<i64>& coeffs, u64 N, const FieldContext& ctx) {
        return exp_sum(make_coefficients(coeffs, ctx), N, ctx);
      },
      py::arg("coeffs"), py::arg("N"), py::arg("ctx"));

  m.def(
      "exp_sum_weighted",
      [](const std::vector<i64>& coeffs, const std::vector<Complex>& gamma, u64 N,
         const FieldContext& ctx) {
        WeightSequence weights;
        weights.gamma = gamma;
        return exp_sum_weighted(make_coefficients(coeffs, ctx), weights, N, ctx);
      },
      py::arg("coeffs"), py::arg("gamma"), py::arg("N"), py::arg("ctx"));

  m.def(
      "shifted_exp_sum",
      [](const std::vector<i64>& coeffs, const std::vector<i64>& shift, u64 N,
         const FieldContext& ctx) {
        return shifted_exp_sum(make_coefficients(coeffs, ctx), make_shift_residue(shift, ctx), N,
                               ctx);
      },
      py::arg("coeffs"), py::arg("shift"), py::arg("N"), py::arg("ctx"));

  m.def(
      "weil_margin",
      [](const std::vector<i64>& coeffs, const FieldContext& ctx) {
        return weil_margin(make_coefficients(coeffs, ctx), ctx);
      },
      py::arg("coeffs"), py::arg("ctx"));

  m.def(
      "count_mod_solutions",
      [](int s, u64 N, const std::vector<i64>& shift, const FieldContext& ctx, bool naive) {
        ShiftVector h = shift_from_list(shift, ctx, true);
        u128 value = naive ? count_mod_solutions_naive(s, N, h, ctx)
                           : count_mod_solutions(s, N, h, ctx);
        return py::int_(py::str(u128_to_string(value)));
      },
      py::arg("s"), py::arg("N"), py::arg("shift"), py::arg("ctx"), py::arg("naive") = false);

  m.def(
      "count_integer_solutions",
      [](int s, u64 N, const std::vector<i64>& shift, bool naive) {
        ShiftVector h = make_shift_integer(shift, static_cast<int>(shift.size()));
        u128 value =
            naive ? count_integer_solutions_naive(s, N, h) : count_integer_solutions(s, N, h);
        return py::int_(py::str(u128_to_string(value)));
      },
      py::arg("s"), py::arg("N"), py::arg("shift"), py::arg("naive") = false);

  m.def(
      "count_window_solutions",
      [](int s, u64 N, const std::vector<u64>& sides, const FieldContext& ctx) {
        u128 value = count_window_solutions(s, N, make_window(sides, ctx), ctx);
        return py::int_(py::str(u128_to_string(value)));
      },
      py::arg("s"), py::arg("N"), py::arg("sides"), py::arg("ctx"));

  m.def(
      "decompose_mod_count",
      [](int s, u64 N, const FieldContext& ctx) {
        auto result = decompose_mod_count(s, N, ctx);
        py::list terms;
        for (const auto& [mv, count] : result.terms)
          terms.append(py::make_tuple(mv, py::int_(py::str(u128_to_string(count)))));
        py::dict out;
        out["threshold_k"] = result.threshold_k;
        out["terms"] = terms;
        out["reconstructed"] = py::int_(py::str(u128_to_string(result.reconstructed)));
        return out;
      },
      py::arg("s"), py::arg("N"), py::arg("ctx"));

  py::class_<MomentRecord>(m, "MomentRecord")
      .def_readonly("p", &MomentRecord::p)
      .def_readonly("d", &MomentRecord::d)
      .def_readonly("s_or_k", &MomentRecord::s_or_k)
      .def_readonly("N", &MomentRecord::N)
      .def_readonly("set_kind", &MomentRecord::set_kind)
      .def_readonly("method", &MomentRecord::method)
      .def_readonly("value", &MomentRecord::value)
      .def_readonly("stderr", &MomentRecord::stderr_value)
      .def_readonly("seed", &MomentRecord::seed)
      .def_property_readonly("exact",
                             [](const MomentRecord& rec) -> py::object {
                               if (!rec.exact) return py::none();
                               return py::int_(py::str(u128_to_string(*rec.exact)));
                             })
      .def_readonly("flags", &MomentRecord::flags);

  m.def(
      "moment_full",
      [](int s, u64 N, const FieldContext& ctx, const std::string& method, u64 samples,
         u64 seed) {
        MomentMethod mm = method == "dft"      ? MomentMethod::dft
                          : method == "sample" ? MomentMethod::sample
                                               : MomentMethod::count;
        return moment_full(s, N, ctx, mm, SampleSpec{samples, seed});
      },
      py::arg("s"), py::arg("N"), py::arg("ctx"), py::arg("method") = "count",
      py::arg("samples") = 0, py::arg("seed") = 0);

  m.def(
      "moment_restricted_box",
      [](const std::vector<i64>& offsets, u64 side, int exponent, u64 N,
         const FieldContext& ctx) {
        return moment_restricted(BoxSet{offsets, side}, exponent, N, ctx);
      },
      py::arg("offsets"), py::arg("side"), py::arg("exponent"), py::arg("N"), py::arg("ctx"));

  m.def(
      "moment_restricted_moment_curve",
      [](int exponent, u64 N, const FieldContext& ctx) {
        return moment_restricted(MomentCurve{}, exponent, N, ctx);
      },
      py::arg("exponent"), py::arg("N"), py::arg("ctx"));

  m.def(
      "moment_weighted_box",
      [](const std::vector<i64>& offsets, u64 side, const std::vector<Complex>& gamma, int s,
         u64 N, const FieldContext& ctx) {
        WeightSequence weights;
        weights.gamma = gamma;
        return moment_weighted_box(BoxSet{offsets, side}, weights, s, N, ctx);
      },
      py::arg("offsets"), py::arg("side"), py::arg("gamma"), py::arg("s"), py::arg("N"),
      py::arg("ctx"));

  m.def(
      "maximal_operator",
      [](const std::vector<int>& perm, int k, const std::vector<i64>& fixed, u64 N,
         const FieldContext& ctx) {
        return maximal_operator(PermutedSplit{perm, k, fixed}, N, ctx).value;
      },
      py::arg("perm"), py::arg("k"), py::arg("fixed"), py::arg("N"), py::arg("ctx"));

  m.def(
      "determine_k",
      [](int s, u64 N, u64 p) -> py::object {
        auto k = determine_k(s, N, p);
        if (!k) return py::none();
        return py::int_(*k);
      },
      py::arg("s"), py::arg("N"), py::arg("p"));

  m.def(
      "envelope_value",
      [](const std::string& kind, const py::kwargs& kwargs) {
        auto parsed = envelope_kind_from_string(kind);
        if (!parsed) raise(errc::schema_error, "unknown bound tag \"" + kind + "\"");
        EnvelopeParams params;
        for (auto item : kwargs) {
          std::string key = py::cast<std::string>(item.first);
          if (key == "p") {
            params.p = py::cast<u64>(item.second);
          } else if (key == "d") {
            params.d = py::cast<int>(item.second);
          } else if (key == "s") {
            params.s = py::cast<int>(item.second);
          } else if (key == "N") {
            params.N = py::cast<u64>(item.second);
          } else if (key == "H") {
            params.H = py::cast<u64>(item.second);
          } else if (key == "k") {
            params.k = py::cast<int>(item.second);
          } else if (key == "t") {
            params.t = py::cast<int>(item.second);
          } else if (key == "shift") {
            params.shift = py::cast<std::vector<i64>>(item.second);
          } else if (key == "gamma") {
            params.gamma = py::cast<std::string>(item.second);
          } else {
            raise(errc::schema_error, "unknown envelope parameter \"" + key + "\"");
          }
        }
        return envelope_value(*parsed, params);
      },
      py::arg("kind"));
}
