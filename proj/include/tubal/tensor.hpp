#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tubal/tube_ring.hpp"

namespace tubal {

using RowMajorReal = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowMajorComplex = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Real m x p x n tensor, viewed as an m x p matrix of length-n tubes.
///
/// Storage is slice-major: frontal slice k is contiguous and row-major, so
/// element (i, j, k) lives at k*m*p + i*p + j.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(Index m, Index p, Index n);
  Tensor3(Index m, Index p, Index n, std::vector<double> data);

  Index rows() const noexcept { return m_; }
  Index cols() const noexcept { return p_; }
  Index tube_size() const noexcept { return n_; }
  Index size() const noexcept { return m_ * p_ * n_; }

  double operator()(Index i, Index j, Index k) const { return data_[offset(i, j, k)]; }
  double& operator()(Index i, Index j, Index k) { return data_[offset(i, j, k)]; }

  Tube tube(Index i, Index j) const;
  void set_tube(Index i, Index j, const Tube& t);

  Eigen::Map<const RowMajorReal> slice(Index k) const {
    return {data_.data() + k * m_ * p_, m_, p_};
  }
  Eigen::Map<RowMajorReal> slice(Index k) { return {data_.data() + k * m_ * p_, m_, p_}; }

  /// Fibers as the columns' transpose: row r = i*p + j holds tube (i, j).
  Eigen::Map<const RealMatrix> fibers() const { return {data_.data(), m_ * p_, n_}; }

  /// Sub-tensor of rows [i0, i0+m) and columns [j0, j0+p).
  Tensor3 block(Index i0, Index j0, Index m, Index p) const;

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  Tensor3& operator+=(const Tensor3& rhs);
  Tensor3& operator-=(const Tensor3& rhs);
  Tensor3& operator*=(double s);
  friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
  friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
  friend Tensor3 operator*(Tensor3 a, double s) { return a *= s; }
  friend Tensor3 operator*(double s, Tensor3 a) { return a *= s; }
  friend bool operator==(const Tensor3&, const Tensor3&) = default;

  double max_abs() const;

 private:
  Index offset(Index i, Index j, Index k) const { return k * m_ * p_ + i * p_ + j; }

  Index m_ = 0, p_ = 0, n_ = 0;
  std::vector<double> data_;
};

/// A tensor in the transform domain of one specific TransformSpec.
class TransformedTensor {
 public:
  TransformedTensor() = default;
  TransformedTensor(Index m, Index p, Index n, std::uint64_t spec_id);

  Index rows() const noexcept { return m_; }
  Index cols() const noexcept { return p_; }
  Index tube_size() const noexcept { return n_; }
  std::uint64_t spec_id() const noexcept { return spec_id_; }

  cdouble operator()(Index i, Index j, Index k) const { return data_[k * m_ * p_ + i * p_ + j]; }
  cdouble& operator()(Index i, Index j, Index k) { return data_[k * m_ * p_ + i * p_ + j]; }

  Eigen::Map<const RowMajorComplex> slice(Index k) const {
    return {data_.data() + k * m_ * p_, m_, p_};
  }
  Eigen::Map<RowMajorComplex> slice(Index k) { return {data_.data() + k * m_ * p_, m_, p_}; }

  Eigen::Map<const ComplexMatrix> fibers() const { return {data_.data(), m_ * p_, n_}; }
  Eigen::Map<ComplexMatrix> fibers() { return {data_.data(), m_ * p_, n_}; }

  double frobenius_norm() const;

 private:
  Index m_ = 0, p_ = 0, n_ = 0;
  std::uint64_t spec_id_ = 0;
  std::vector<cdouble> data_;
};

/// A column of m tubes (an m x 1 x n tensor); element of the free module K_M^m.
class OrientedMatrix {
 public:
  OrientedMatrix() = default;
  explicit OrientedMatrix(Tensor3 t);

  Index rows() const noexcept { return t_.rows(); }
  Index tube_size() const noexcept { return t_.tube_size(); }
  Tube tube(Index i) const { return t_.tube(i, 0); }
  const Tensor3& tensor() const noexcept { return t_; }

 private:
  Tensor3 t_;
};

/// X (m x n) -> oriented matrix whose i-th tube is row i of X.
OrientedMatrix twist(const RealMatrix& x);
RealMatrix squeeze(const OrientedMatrix& u);

/// A-hat = A x_3 M.
TransformedTensor to_transform(const TransformSpec& spec, const Tensor3& a);
/// Inverse of to_transform; throws ResidualImaginary or SpecMismatch.
Tensor3 from_transform(const TransformSpec& spec, const TransformedTensor& a_hat);

/// Slice-by-slice matrix product.
TransformedTensor facewise_product(const TransformedTensor& a, const TransformedTensor& b);

/// A *_M B for A (m x p x n) and B (p x l x n), computed in the transform domain.
Tensor3 tensor_star(const TransformSpec& spec, const Tensor3& a, const Tensor3& b);

/// (A^H)_{ij} = conjugate(A_{ji}).
Tensor3 herm_transpose(const TransformSpec& spec, const Tensor3& a);

/// Diagonal tubes e_M, zero elsewhere.
Tensor3 identity_tensor(const TransformSpec& spec, Index m);

/// r *_M A applied tube-wise.
Tensor3 scale_by_tube(const TransformSpec& spec, const Tube& r, const Tensor3& a);

/// A *_M X for an oriented matrix X.
OrientedMatrix apply(const TransformSpec& spec, const Tensor3& a, const OrientedMatrix& x);

/// sum_i u_i^* *_M v_i.
Tube mdot(const TransformSpec& spec, const OrientedMatrix& u, const OrientedMatrix& v);

double frobenius_inner(const Tensor3& a, const Tensor3& b);
double frobenius_norm(const Tensor3& a);

/// Tube viewed as a 1 x 1 x n tensor and back.
Tensor3 as_tensor(const Tube& t);

}  // namespace tubal
