#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tubal/catalog.hpp"
#include "tubal/discovery.hpp"
#include "tubal/io.hpp"
#include "tubal/tsvd.hpp"

namespace py = pybind11;
using namespace tubal;

namespace {

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ComplexArray = py::array_t<cdouble, py::array::c_style | py::array::forcecast>;

// numpy arrays are (m, p, n) in C order; Tensor3 keeps frontal slices contiguous.
Tensor3 to_tensor(const RealArray& a) {
  if (a.ndim() != 3) throw py::value_error("expected a 3-d array of shape (m, p, n)");
  const Index m = a.shape(0), p = a.shape(1), n = a.shape(2);
  Tensor3 t(m, p, n);
  auto r = a.unchecked<3>();
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < p; ++j)
      for (Index k = 0; k < n; ++k) t(i, j, k) = r(i, j, k);
  return t;
}

RealArray to_array(const Tensor3& t) {
  RealArray a({t.rows(), t.cols(), t.tube_size()});
  auto w = a.mutable_unchecked<3>();
  for (Index i = 0; i < t.rows(); ++i)
    for (Index j = 0; j < t.cols(); ++j)
      for (Index k = 0; k < t.tube_size(); ++k) w(i, j, k) = t(i, j, k);
  return a;
}

ComplexArray to_array(const TransformedTensor& t) {
  ComplexArray a({t.rows(), t.cols(), t.tube_size()});
  auto w = a.mutable_unchecked<3>();
  for (Index k = 0; k < t.tube_size(); ++k) {
    const auto s = t.slice(k);
    for (Index i = 0; i < t.rows(); ++i)
      for (Index j = 0; j < t.cols(); ++j) w(i, j, k) = s(i, j);
  }
  return a;
}

Tube to_tube(const RealVector& v) { return Tube(v); }

BlackBoxOp wrap_op(Index n, std::function<RealVector(const RealVector&, const RealVector&)> fn) {
  return {n, [fn = std::move(fn)](const Tube& a, const Tube& b) {
            py::gil_scoped_acquire gil;
            return Tube(fn(a.data(), b.data()));
          }};
}

}  // namespace

PYBIND11_MODULE(_tubal, m) {
  m.doc() = "Tubal tensor algebra: *_M products, t-SVD and tubal ring discovery";

  static py::exception<Error> tubal_error(m, "TubalError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = tubal_error;
      py::object inst = err(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(err.ptr(), inst.ptr());
    }
  });

  py::class_<TransformSpec>(m, "TransformSpec")
      .def(py::init([](const ComplexMatrix& mat, double tol) { return validate_transform(mat, tol); }),
           py::arg("matrix"), py::arg("tol") = TransformSpec::kDefaultTol)
      .def_property_readonly("n", &TransformSpec::n)
      .def_property_readonly("matrix", &TransformSpec::matrix)
      .def_property_readonly("inverse", &TransformSpec::inverse)
      .def_property_readonly("realness", &TransformSpec::realness)
      .def_property_readonly("unitary_scale", &TransformSpec::unitary_scale)
      .def_property_readonly("row_classes",
                             [](const TransformSpec& s) {
                               std::vector<std::pair<Index, Index>> out;
                               for (const auto& rc : s.row_classes()) out.emplace_back(rc.first, rc.second);
                               return out;
                             })
      .def("forward", [](const TransformSpec& s, const RealVector& a) { return s.forward(to_tube(a)); })
      .def("backward", [](const TransformSpec& s, const ComplexVector& v) { return s.backward(v).data(); })
      .def("__repr__", [](const TransformSpec& s) {
        return "<TransformSpec n=" + std::to_string(s.n()) + " realness=" + std::to_string(s.realness()) + ">";
      });

  m.def("dft", &dft, py::arg("n"));
  m.def("skew_dft", &skew_dft, py::arg("n"));
  m.def("walsh_hadamard", &walsh_hadamard, py::arg("n"));
  m.def("split_complex", &split_complex);
  m.def("complex_field", &complex_field);
  m.def("identity_transform", &identity_transform, py::arg("n"));
  m.def("canonical_transform", &canonical_transform, py::arg("n"), py::arg("m"));
  m.def("vandermonde", [](const std::vector<cdouble>& roots) { return vandermonde(roots); }, py::arg("roots"));
  m.def("transform_from_name", &transform_from_name, py::arg("name"), py::arg("n"));
  m.def("isomorphism_to_canonical", &isomorphism_to_canonical, py::arg("spec"));

  // Tube ring
  m.def("star", [](const TransformSpec& s, const RealVector& a, const RealVector& b) {
    return star(s, to_tube(a), to_tube(b)).data();
  });
  m.def("unit", [](const TransformSpec& s) { return unit(s).data(); });
  m.def("conjugate", [](const TransformSpec& s, const RealVector& a) { return conjugate(s, to_tube(a)).data(); });
  m.def(
      "weak_inverse",
      [](const TransformSpec& s, const RealVector& a, std::optional<double> zero_tol) {
        return weak_inverse(s, to_tube(a), zero_tol).data();
      },
      py::arg("spec"), py::arg("a"), py::arg("zero_tol") = py::none());
  m.def("leq", [](const TransformSpec& s, const RealVector& a, const RealVector& b) {
    return leq(s, to_tube(a), to_tube(b));
  });

  // Tensors
  m.def("tensor_star", [](const TransformSpec& s, const RealArray& a, const RealArray& b) {
    return to_array(tensor_star(s, to_tensor(a), to_tensor(b)));
  });
  m.def("herm_transpose", [](const TransformSpec& s, const RealArray& a) {
    return to_array(herm_transpose(s, to_tensor(a)));
  });
  m.def("identity_tensor", [](const TransformSpec& s, Index size) { return to_array(identity_tensor(s, size)); });
  m.def("to_transform", [](const TransformSpec& s, const RealArray& a) {
    return to_array(to_transform(s, to_tensor(a)));
  });

  // t-SVD
  py::class_<TSVDFactors>(m, "TSVD")
      .def_property_readonly("U", [](const TSVDFactors& f) { return to_array(f.U); })
      .def_property_readonly("S", [](const TSVDFactors& f) { return to_array(f.S); })
      .def_property_readonly("V", [](const TSVDFactors& f) { return to_array(f.V); })
      .def_property_readonly("sigma",
                             [](const TSVDFactors& f) {
                               RealMatrix out(static_cast<Index>(f.sigma.size()), f.tube_size());
                               for (Index i = 0; i < out.rows(); ++i) out.row(i) = f.sigma[i].data().transpose();
                               return out;
                             })
      .def_property_readonly("sigma_hat", [](const TSVDFactors& f) { return f.sigma_hat; })
      .def("reconstruct", [](const TSVDFactors& f) { return to_array(reconstruct(f)); })
      .def("rank", [](const TSVDFactors& f, std::optional<double> tol) { return m_rank(f, tol); },
           py::arg("rank_tol") = py::none())
      .def("multirank", [](const TSVDFactors& f, std::optional<double> tol) { return multirank(f, tol).r; },
           py::arg("rank_tol") = py::none())
      .def("truncate", [](const TSVDFactors& f, Index k) { return to_array(truncate_rank(f, k)); })
      .def("truncate_multirank",
           [](const TSVDFactors& f, std::vector<Index> r) { return to_array(truncate_multirank(f, MultiRank{r})); })
      .def("tail_error", [](const TSVDFactors& f, Index k) { return tail_error(f, k); })
      .def("tail_error_multirank",
           [](const TSVDFactors& f, std::vector<Index> r) { return tail_error(f, MultiRank{r}); });
  m.def("tsvd", [](const TransformSpec& s, const RealArray& a) { return tsvd(s, to_tensor(a)); });

  // Discovery
  py::class_<DiscoveryReport>(m, "DiscoveryReport")
      .def_property_readonly("is_tubal", &DiscoveryReport::is_tubal)
      .def_property_readonly("transform", [](const DiscoveryReport& r) { return r.transform; })
      .def_property_readonly("reason",
                             [](const DiscoveryReport& r) -> std::optional<std::string> {
                               if (!r.reason) return std::nullopt;
                               return std::string(to_string(*r.reason));
                             })
      .def_property_readonly("eigenvector_condition",
                             [](const DiscoveryReport& r) { return r.diagnostics.eigenvector_condition; })
      .def_property_readonly("max_residual", [](const DiscoveryReport& r) { return r.diagnostics.max_residual; })
      .def_property_readonly("trials_used", [](const DiscoveryReport& r) { return r.diagnostics.trials_used; })
      .def_property_readonly("detail", [](const DiscoveryReport& r) { return r.diagnostics.detail; });

  m.def(
      "classify_ring",
      [](std::function<RealVector(const RealVector&, const RealVector&)> fn, Index n, std::uint64_t seed) {
        DiscoveryOptions o;
        o.seed = seed;
        return classify_ring(wrap_op(n, std::move(fn)), o);
      },
      py::arg("op"), py::arg("n"), py::arg("seed") = 0);
  m.def(
      "find_transform",
      [](std::function<RealVector(const RealVector&, const RealVector&)> fn, Index n, std::uint64_t seed) {
        DiscoveryOptions o;
        o.seed = seed;
        return find_transform(wrap_op(n, std::move(fn)), o);
      },
      py::arg("op"), py::arg("n"), py::arg("seed") = 0);
  m.def("equivalent_transforms", &equivalent_transforms, py::arg("m1"), py::arg("m2"), py::arg("tol") = 1e-8);
  m.def("idempotent_of", [](const TransformSpec& s, const RealVector& a) { return idempotent_of(s, to_tube(a)).data(); });

  // Files
  m.def("read_tensor", [](const std::string& path) { return to_array(read_tensor_file(path)); });
  m.def("write_tensor", [](const std::string& path, const RealArray& a) { write_tensor_file(path, to_tensor(a)); });
}
