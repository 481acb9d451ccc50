#pragma once

// Shared generators and brute-force oracles for the test suites. Nothing here
// goes through the transform-domain code paths it is used to check.

#include <random>
#include <string>
#include <vector>

#include "tubal/catalog.hpp"
#include "tubal/tensor.hpp"

namespace tubal::testing {

inline Tube random_tube(std::mt19937_64& rng, Index n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  RealVector v(n);
  for (Index i = 0; i < n; ++i) v[i] = dist(rng);
  return Tube(std::move(v));
}

inline Tensor3 random_tensor(std::mt19937_64& rng, Index m, Index p, Index n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Tensor3 t(m, p, n);
  for (double& v : t.data()) v = dist(rng);
  return t;
}

inline RealMatrix random_matrix(std::mt19937_64& rng, Index m, Index n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  RealMatrix x(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) x(i, j) = dist(rng);
  return x;
}

/// max |x - y| / (1 + max(|x|, |y|)).
inline double rel_gap(const Tube& x, const Tube& y) {
  return (x - y).max_abs() / (1.0 + std::max(x.max_abs(), y.max_abs()));
}

inline double rel_gap(const Tensor3& x, const Tensor3& y) {
  return frobenius_norm(x - y) / (1.0 + std::max(frobenius_norm(x), frobenius_norm(y)));
}

struct NamedSpec {
  std::string name;
  TransformSpec spec;
};

/// X^3 - 2: one real root and a conjugate pair.
inline TransformSpec cubic_vandermonde() {
  const double r = std::cbrt(2.0);
  const cdouble w = std::polar(1.0, 2.0 * 3.14159265358979323846 / 3.0);
  const std::vector<cdouble> roots{r, r * w, r * std::conj(w)};
  return vandermonde(roots);
}

/// Every named ring with tube length up to max_n.
inline std::vector<NamedSpec> catalog_specs(Index max_n = 8) {
  std::vector<NamedSpec> out;
  for (Index n = 1; n <= max_n; ++n) {
    out.push_back({"dft" + std::to_string(n), dft(n)});
    out.push_back({"skew-dft" + std::to_string(n), skew_dft(n)});
    out.push_back({"identity" + std::to_string(n), identity_transform(n)});
    if (is_power_of_two(n)) out.push_back({"wht" + std::to_string(n), walsh_hadamard(n)});
    for (Index m = n % 2; m <= n; m += 2) {
      out.push_back({"canonical" + std::to_string(n) + "," + std::to_string(m), canonical_transform(n, m)});
    }
  }
  if (max_n >= 2) {
    out.push_back({"split-complex", split_complex()});
    out.push_back({"complex-field", complex_field()});
  }
  if (max_n >= 3) out.push_back({"vandermonde-cubic", cubic_vandermonde()});
  return out;
}

/// Catalog specs with M = c W, W unitary.
inline std::vector<NamedSpec> scaled_unitary_specs(Index max_n = 8) {
  std::vector<NamedSpec> out;
  for (auto& s : catalog_specs(max_n)) {
    if (s.spec.unitary_scale()) out.push_back(std::move(s));
  }
  return out;
}

/// (A *_M B)_{ij} = sum_k A_{ik} *_M B_{kj}, straight from the definition.
inline Tensor3 direct_tensor_star(const TransformSpec& spec, const Tensor3& a, const Tensor3& b) {
  Tensor3 c(a.rows(), b.cols(), a.tube_size());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      Tube acc = Tube::zeros(a.tube_size());
      for (Index k = 0; k < a.cols(); ++k) acc += star(spec, a.tube(i, k), b.tube(k, j));
      c.set_tube(i, j, acc);
    }
  }
  return c;
}

inline ComplexMatrix triple_loop_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c = ComplexMatrix::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j)
      for (Index k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

/// Random B with *_M-rank at most k: an m x k x n tensor times a k x p x n one.
inline Tensor3 random_low_rank(const TransformSpec& spec, std::mt19937_64& rng, Index m, Index p, Index k) {
  if (k == 0) return Tensor3(m, p, spec.n());
  return tensor_star(spec, random_tensor(rng, m, k, spec.n()), random_tensor(rng, k, p, spec.n()));
}

}  // namespace tubal::testing
