#include "tubal/tensor.hpp"

#include <cmath>
#include <sstream>

namespace tubal {

namespace {

[[noreturn]] void shape_error(const char* what, Index a, Index b) {
  std::ostringstream os;
  os << what << " (" << a << " vs " << b << ")";
  throw Error(ErrorCode::ShapeMismatch, os.str());
}

void require_dims(Index m, Index p, Index n) {
  if (m < 0 || p < 0 || n < 1) {
    std::ostringstream os;
    os << "invalid tensor dimensions " << m << "x" << p << "x" << n;
    throw Error(ErrorCode::ShapeMismatch, os.str());
  }
}

void require_same_shape(const Tensor3& a, const Tensor3& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.tube_size() != b.tube_size()) {
    throw Error(ErrorCode::ShapeMismatch, "tensor dimensions differ");
  }
}

void require_spec(const TransformSpec& spec, Index n) {
  if (spec.n() != n) shape_error("tube length does not match transform", n, spec.n());
}

}  // namespace

// ---------------------------------------------------------------------------
// Tensor3

Tensor3::Tensor3(Index m, Index p, Index n) : m_(m), p_(p), n_(n) {
  require_dims(m, p, n);
  data_.assign(static_cast<std::size_t>(m * p * n), 0.0);
}

Tensor3::Tensor3(Index m, Index p, Index n, std::vector<double> data)
    : m_(m), p_(p), n_(n), data_(std::move(data)) {
  require_dims(m, p, n);
  if (static_cast<Index>(data_.size()) != m * p * n) {
    shape_error("payload length does not match dimensions", static_cast<Index>(data_.size()),
                m * p * n);
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "tensor entries must be finite");
  }
}

Tube Tensor3::tube(Index i, Index j) const {
  RealVector t(n_);
  for (Index k = 0; k < n_; ++k) t[k] = (*this)(i, j, k);
  return Tube(std::move(t));
}

void Tensor3::set_tube(Index i, Index j, const Tube& t) {
  if (t.size() != n_) shape_error("tube length", t.size(), n_);
  for (Index k = 0; k < n_; ++k) (*this)(i, j, k) = t[k];
}

Tensor3 Tensor3::block(Index i0, Index j0, Index m, Index p) const {
  if (i0 < 0 || j0 < 0 || m < 0 || p < 0 || i0 + m > m_ || j0 + p > p_) {
    throw Error(ErrorCode::ShapeMismatch, "block out of range");
  }
  Tensor3 out(m, p, n_);
  for (Index k = 0; k < n_; ++k) out.slice(k) = slice(k).block(i0, j0, m, p);
  return out;
}

Tensor3& Tensor3::operator+=(const Tensor3& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Tensor3& Tensor3::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

// ---------------------------------------------------------------------------
// TransformedTensor

TransformedTensor::TransformedTensor(Index m, Index p, Index n, std::uint64_t spec_id)
    : m_(m), p_(p), n_(n), spec_id_(spec_id) {
  require_dims(m, p, n);
  data_.assign(static_cast<std::size_t>(m * p * n), cdouble(0.0));
}

double TransformedTensor::frobenius_norm() const {
  double s = 0.0;
  for (const cdouble& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Oriented matrices

OrientedMatrix::OrientedMatrix(Tensor3 t) : t_(std::move(t)) {
  if (t_.cols() != 1) shape_error("oriented matrix must have one column", t_.cols(), 1);
}

OrientedMatrix twist(const RealMatrix& x) {
  Tensor3 t(x.rows(), 1, x.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index k = 0; k < x.cols(); ++k) t(i, 0, k) = x(i, k);
  }
  return OrientedMatrix(std::move(t));
}

RealMatrix squeeze(const OrientedMatrix& u) {
  RealMatrix x(u.rows(), u.tube_size());
  for (Index i = 0; i < u.rows(); ++i) {
    for (Index k = 0; k < u.tube_size(); ++k) x(i, k) = u.tensor()(i, 0, k);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Transform domain

TransformedTensor to_transform(const TransformSpec& spec, const Tensor3& a) {
  require_spec(spec, a.tube_size());
  TransformedTensor out(a.rows(), a.cols(), a.tube_size(), spec.id());
  // each fiber row r: a_hat_r^T = a_r^T M^T
  out.fibers().noalias() = a.fibers().cast<cdouble>() * spec.matrix().transpose();
  return out;
}

Tensor3 from_transform(const TransformSpec& spec, const TransformedTensor& a_hat) {
  if (a_hat.spec_id() != spec.id()) {
    throw Error(ErrorCode::SpecMismatch, "tensor was transformed by a different spec");
  }
  require_spec(spec, a_hat.tube_size());
  const ComplexMatrix back = a_hat.fibers() * spec.inverse().transpose();
  Tensor3 out(a_hat.rows(), a_hat.cols(), a_hat.tube_size());
  if (back.size() == 0) return out;
  const double im = back.imag().cwiseAbs().maxCoeff();
  const double scale = 1.0 + back.real().cwiseAbs().maxCoeff();
  if (!(im <= spec.tol() * scale)) {
    std::ostringstream os;
    os << "imaginary residue " << im << " exceeds " << spec.tol() * scale;
    throw Error(ErrorCode::ResidualImaginary, os.str());
  }
  Eigen::Map<RealMatrix>(out.data().data(), back.rows(), back.cols()) = back.real();
  return out;
}

TransformedTensor facewise_product(const TransformedTensor& a, const TransformedTensor& b) {
  if (a.spec_id() != b.spec_id()) {
    throw Error(ErrorCode::SpecMismatch, "operands live in different transform domains");
  }
  if (a.tube_size() != b.tube_size()) shape_error("tube lengths differ", a.tube_size(), b.tube_size());
  if (a.cols() != b.rows()) shape_error("inner dimensions differ", a.cols(), b.rows());
  TransformedTensor c(a.rows(), b.cols(), a.tube_size(), a.spec_id());
  for (Index k = 0; k < a.tube_size(); ++k) c.slice(k).noalias() = a.slice(k) * b.slice(k);
  return c;
}

Tensor3 tensor_star(const TransformSpec& spec, const Tensor3& a, const Tensor3& b) {
  if (a.cols() != b.rows()) shape_error("inner dimensions differ", a.cols(), b.rows());
  if (a.tube_size() != b.tube_size()) shape_error("tube lengths differ", a.tube_size(), b.tube_size());
  return from_transform(spec, facewise_product(to_transform(spec, a), to_transform(spec, b)));
}

Tensor3 herm_transpose(const TransformSpec& spec, const Tensor3& a) {
  require_spec(spec, a.tube_size());
  Tensor3 out(a.cols(), a.rows(), a.tube_size());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) out.set_tube(j, i, conjugate(spec, a.tube(i, j)));
  }
  return out;
}

Tensor3 identity_tensor(const TransformSpec& spec, Index m) {
  if (m < 1) throw Error(ErrorCode::ShapeMismatch, "identity tensor size must be positive");
  const Tube e = unit(spec);
  Tensor3 out(m, m, spec.n());
  for (Index i = 0; i < m; ++i) out.set_tube(i, i, e);
  return out;
}

Tensor3 scale_by_tube(const TransformSpec& spec, const Tube& r, const Tensor3& a) {
  require_spec(spec, a.tube_size());
  Tensor3 out(a.rows(), a.cols(), a.tube_size());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) out.set_tube(i, j, star(spec, r, a.tube(i, j)));
  }
  return out;
}

OrientedMatrix apply(const TransformSpec& spec, const Tensor3& a, const OrientedMatrix& x) {
  return OrientedMatrix(tensor_star(spec, a, x.tensor()));
}

Tube mdot(const TransformSpec& spec, const OrientedMatrix& u, const OrientedMatrix& v) {
  if (u.rows() != v.rows()) shape_error("oriented matrices differ in length", u.rows(), v.rows());
  if (u.tube_size() != v.tube_size()) shape_error("tube lengths differ", u.tube_size(), v.tube_size());
  require_spec(spec, u.tube_size());
  // M(u*) = conj(M u), so the sum can be accumulated in the transform domain.
  ComplexTube acc = ComplexTube::Zero(spec.n());
  for (Index i = 0; i < u.rows(); ++i) {
    acc += spec.forward(u.tube(i)).conjugate().cwiseProduct(spec.forward(v.tube(i)));
  }
  return spec.backward(acc);
}

double frobenius_inner(const Tensor3& a, const Tensor3& b) {
  require_same_shape(a, b);
  double s = 0.0;
  const auto da = a.data(), db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) s += da[i] * db[i];
  return s;
}

double frobenius_norm(const Tensor3& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

Tensor3 as_tensor(const Tube& t) {
  Tensor3 out(1, 1, t.size());
  out.set_tube(0, 0, t);
  return out;
}

}  // namespace tubal
