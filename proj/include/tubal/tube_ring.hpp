#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tubal/error.hpp"

namespace tubal {

using Index = Eigen::Index;
using cdouble = std::complex<double>;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Transform-domain image of a tube, M*a.
using ComplexTube = Eigen::VectorXcd;

/// A real length-n vector: the scalar of the tubal algebra.
class Tube {
 public:
  Tube() = default;
  explicit Tube(RealVector data);
  Tube(std::initializer_list<double> values);

  static Tube zeros(Index n) { return Tube(RealVector::Zero(n)); }
  static Tube ones(Index n) { return Tube(RealVector::Ones(n)); }
  static Tube basis(Index n, Index i);

  Index size() const noexcept { return data_.size(); }
  double operator[](Index i) const { return data_[i]; }
  double& operator[](Index i) { return data_[i]; }
  const RealVector& data() const noexcept { return data_; }
  RealVector& data() noexcept { return data_; }

  double max_abs() const { return size() == 0 ? 0.0 : data_.cwiseAbs().maxCoeff(); }

  Tube& operator+=(const Tube& rhs);
  Tube& operator-=(const Tube& rhs);
  Tube& operator*=(double s);

  friend Tube operator+(Tube lhs, const Tube& rhs) { return lhs += rhs; }
  friend Tube operator-(Tube lhs, const Tube& rhs) { return lhs -= rhs; }
  friend Tube operator*(Tube lhs, double s) { return lhs *= s; }
  friend Tube operator*(double s, Tube rhs) { return rhs *= s; }
  friend bool operator==(const Tube& a, const Tube& b) { return a.data_ == b.data_; }

 private:
  RealVector data_;
};

/// Row of M that is real, or one of a pair of mutually conjugate rows.
struct RowClass {
  enum class Kind { Real, ConjPair };
  Kind kind;
  Index first;
  Index second;  // equals first for Real rows

  bool operator==(const RowClass&) const = default;
};

/// An invertible complex n x n matrix M whose rows are either real or come
/// in conjugate pairs, so that M^{-1}(Ma .* Mb) stays real for real a, b.
///
/// Instances are immutable and only obtainable through validate_transform
/// (or the catalog constructors built on it).
class TransformSpec {
 public:
  static constexpr double kDefaultTol = 1e-9;
  static constexpr double kUnitaryScaleTol = 1e-8;

  Index n() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const ComplexMatrix& inverse() const noexcept { return inverse_; }
  const std::vector<RowClass>& row_classes() const noexcept { return row_classes_; }
  Index realness() const noexcept { return realness_; }
  bool is_real_like() const noexcept { return realness_ == n(); }
  /// |c| when M = c W with W unitary.
  std::optional<double> unitary_scale() const noexcept { return unitary_scale_; }
  double tol() const noexcept { return tol_; }
  /// Row order with real rows first and conjugate partners adjacent.
  const std::vector<Index>& canonical_order() const noexcept { return order_; }
  /// Content hash of M; tensors in the transform domain carry it.
  std::uint64_t id() const noexcept { return id_; }

  /// M * a.
  ComplexTube forward(const Tube& a) const;
  /// M^{-1} * v, checking that the imaginary residue is within tolerance.
  Tube backward(const ComplexTube& v) const;

 private:
  friend TransformSpec validate_transform(ComplexMatrix m, double tol);
  TransformSpec() = default;

  ComplexMatrix matrix_;
  ComplexMatrix inverse_;
  std::vector<RowClass> row_classes_;
  std::vector<Index> order_;
  Index realness_ = 0;
  std::optional<double> unitary_scale_;
  double tol_ = kDefaultTol;
  std::uint64_t id_ = 0;
};

/// Validates M and classifies its rows.
///
/// Throws Error with BadDimension (not square, empty), InvalidArgument
/// (tol <= 0 or non-finite entries), Singular or InvalidRowStructure.
TransformSpec validate_transform(ComplexMatrix m, double tol = TransformSpec::kDefaultTol);

/// Drops the imaginary part of v after checking max|Im v| <= tol * (1 + max|Re v|).
RealVector strip_imaginary(const ComplexVector& v, double tol);

/// a *_M b = M^{-1}(Ma .* Mb).
Tube star(const TransformSpec& spec, const Tube& a, const Tube& b);

/// e_M = M^{-1} * ones.
Tube unit(const TransformSpec& spec);

/// a* = M^{-1} conj(M a).
Tube conjugate(const TransformSpec& spec, const Tube& a);

/// a^- = M^{-1} (M a)^+, where entries with modulus <= zero_tol * max|Ma| are
/// treated as zero. The default zero_tol is n * machine epsilon.
Tube weak_inverse(const TransformSpec& spec, const Tube& a,
                  std::optional<double> zero_tol = std::nullopt);

/// a <=_M b: M(b - a) is real and non-negative, within the spec tolerance.
bool leq(const TransformSpec& spec, const Tube& a, const Tube& b);

/// M_{n,m}: m leading identity rows followed by (n-m)/2 blocks
/// [[1, -i], [1, i]] / sqrt(2).
TransformSpec canonical_transform(Index n, Index m);

/// Real invertible M' with T(x) = M' x an isomorphism from K_M onto the
/// canonical ring of the same realness.
RealMatrix isomorphism_to_canonical(const TransformSpec& spec);

}  // namespace tubal
