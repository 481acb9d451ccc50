#include "tubal/tube_ring.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

namespace tubal {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::InvalidRowStructure: return "InvalidRowStructure";
    case ErrorCode::ResidualImaginary: return "ResidualImaginary";
    case ErrorCode::ParityMismatch: return "ParityMismatch";
    case ErrorCode::DuplicateRoots: return "DuplicateRoots";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::SvdNoConvergence: return "SvdNoConvergence";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::NotScaledUnitary: return "NotScaledUnitary";
    case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Tube

Tube::Tube(RealVector data) : data_(std::move(data)) {
  if (!data_.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "tube entries must be finite");
  }
}

Tube::Tube(std::initializer_list<double> values) : data_(static_cast<Index>(values.size())) {
  Index i = 0;
  for (double v : values) data_[i++] = v;
  if (!data_.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "tube entries must be finite");
  }
}

Tube Tube::basis(Index n, Index i) {
  RealVector e = RealVector::Zero(n);
  e[i] = 1.0;
  return Tube(std::move(e));
}

namespace {

void require_same_length(Index a, Index b) {
  if (a != b) {
    std::ostringstream os;
    os << "tube lengths differ (" << a << " vs " << b << ")";
    throw Error(ErrorCode::BadDimension, os.str());
  }
}

}  // namespace

Tube& Tube::operator+=(const Tube& rhs) {
  require_same_length(size(), rhs.size());
  data_ += rhs.data_;
  return *this;
}

Tube& Tube::operator-=(const Tube& rhs) {
  require_same_length(size(), rhs.size());
  data_ -= rhs.data_;
  return *this;
}

Tube& Tube::operator*=(double s) {
  data_ *= s;
  return *this;
}

// ---------------------------------------------------------------------------
// TransformSpec

namespace {

std::uint64_t hash_matrix(const ComplexMatrix& m) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* p, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ULL;
    }
  };
  const auto n = static_cast<std::uint64_t>(m.rows());
  mix(&n, sizeof n);
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      double parts[2] = {m(i, j).real(), m(i, j).imag()};
      // +0.0 and -0.0 hash alike
      for (double& x : parts) x += 0.0;
      mix(parts, sizeof parts);
    }
  }
  return h;
}

}  // namespace

TransformSpec validate_transform(ComplexMatrix m, double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  }
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << "transform must be a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorCode::BadDimension, os.str());
  }
  if (!m.real().allFinite() || !m.imag().allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "transform has non-finite entries");
  }
  const Index n = m.rows();

  Eigen::FullPivLU<ComplexMatrix> lu(m);
  if (!lu.isInvertible()) throw Error(ErrorCode::Singular, "transform matrix is not invertible");
  ComplexMatrix inv = lu.inverse();
  const double inv_residual = (m * inv - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(inv_residual <= tol)) {
    std::ostringstream os;
    os << "|M M^-1 - I|_max = " << inv_residual << " exceeds " << tol;
    throw Error(ErrorCode::Singular, os.str());
  }

  const double thresh = tol * m.cwiseAbs().maxCoeff();
  std::vector<bool> is_real(n), assigned(n, false);
  for (Index j = 0; j < n; ++j) is_real[j] = m.row(j).imag().cwiseAbs().maxCoeff() <= thresh;

  TransformSpec spec;
  for (Index j = 0; j < n; ++j) {
    if (is_real[j]) {
      spec.row_classes_.push_back({RowClass::Kind::Real, j, j});
      spec.order_.push_back(j);
      assigned[j] = true;
    }
  }
  spec.realness_ = static_cast<Index>(spec.order_.size());

  for (Index j = 0; j < n; ++j) {
    if (assigned[j]) continue;
    Index partner = -1;
    int candidates = 0;
    for (Index k = 0; k < n; ++k) {
      if (k == j || assigned[k]) continue;
      const double d = (m.row(j) - m.row(k).conjugate()).cwiseAbs().maxCoeff();
      if (d <= thresh) {
        partner = k;
        ++candidates;
      }
    }
    if (candidates != 1) {
      std::ostringstream os;
      os << "row " << j << " is complex with " << candidates
         << " conjugate partner candidates (need exactly one)";
      throw Error(ErrorCode::InvalidRowStructure, os.str());
    }
    assigned[j] = assigned[partner] = true;
    spec.row_classes_.push_back({RowClass::Kind::ConjPair, j, partner});
    spec.order_.push_back(j);
    spec.order_.push_back(partner);
  }

  // M^{-1} conj(M) must be real for conjugation to map R^n into itself.
  const ComplexMatrix conj_map = inv * m.conjugate();
  const double conj_scale = 1.0 + conj_map.real().cwiseAbs().maxCoeff();
  if (conj_map.imag().cwiseAbs().maxCoeff() > tol * conj_scale * static_cast<double>(n)) {
    throw Error(ErrorCode::InvalidRowStructure, "M^-1 conj(M) is not real");
  }

  const double c = m.norm() / std::sqrt(static_cast<double>(n));
  const double c2 = c * c;
  const double unitary_residual =
      (m.adjoint() * m - c2 * ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (unitary_residual <= TransformSpec::kUnitaryScaleTol * c2) spec.unitary_scale_ = c;

  spec.id_ = hash_matrix(m);
  spec.tol_ = tol;
  spec.matrix_ = std::move(m);
  spec.inverse_ = std::move(inv);
  return spec;
}

RealVector strip_imaginary(const ComplexVector& v, double tol) {
  RealVector re = v.real();
  if (v.size() == 0) return re;
  const double im = v.imag().cwiseAbs().maxCoeff();
  const double scale = 1.0 + re.cwiseAbs().maxCoeff();
  if (!(im <= tol * scale)) {
    std::ostringstream os;
    os << "imaginary residue " << im << " exceeds " << tol * scale;
    throw Error(ErrorCode::ResidualImaginary, os.str());
  }
  return re;
}

ComplexTube TransformSpec::forward(const Tube& a) const {
  require_same_length(n(), a.size());
  return matrix_ * a.data().cast<cdouble>();
}

Tube TransformSpec::backward(const ComplexTube& v) const {
  require_same_length(n(), v.size());
  return Tube(strip_imaginary(inverse_ * v, tol_));
}

// ---------------------------------------------------------------------------
// Ring operations

Tube star(const TransformSpec& spec, const Tube& a, const Tube& b) {
  return spec.backward(spec.forward(a).cwiseProduct(spec.forward(b)));
}

Tube unit(const TransformSpec& spec) {
  return spec.backward(ComplexTube::Ones(spec.n()));
}

Tube conjugate(const TransformSpec& spec, const Tube& a) {
  return spec.backward(spec.forward(a).conjugate());
}

Tube weak_inverse(const TransformSpec& spec, const Tube& a, std::optional<double> zero_tol) {
  ComplexTube v = spec.forward(a);
  const double rel = zero_tol.value_or(static_cast<double>(spec.n()) *
                                       std::numeric_limits<double>::epsilon());
  const double cutoff = rel * v.cwiseAbs().maxCoeff();
  for (Index i = 0; i < v.size(); ++i) {
    v[i] = std::abs(v[i]) > cutoff ? cdouble(1.0) / v[i] : cdouble(0.0);
  }
  return spec.backward(v);
}

bool leq(const TransformSpec& spec, const Tube& a, const Tube& b) {
  const ComplexTube d = spec.forward(b - a);
  const double scale = 1.0 + d.cwiseAbs().maxCoeff();
  const double bound = spec.tol() * scale;
  return d.imag().cwiseAbs().maxCoeff() <= bound && d.real().minCoeff() >= -bound;
}

TransformSpec canonical_transform(Index n, Index m) {
  if (n < 1 || m < 0 || m > n) {
    std::ostringstream os;
    os << "canonical transform needs 0 <= m <= n and n >= 1, got n=" << n << " m=" << m;
    throw Error(ErrorCode::BadDimension, os.str());
  }
  if ((n - m) % 2 != 0) {
    throw Error(ErrorCode::ParityMismatch, "n and m must have the same parity");
  }
  const double h = 1.0 / std::sqrt(2.0);
  ComplexMatrix mat = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < m; ++i) mat(i, i) = 1.0;
  for (Index i = m; i < n; i += 2) {
    mat(i, i) = h;
    mat(i, i + 1) = cdouble(0.0, -h);
    mat(i + 1, i) = h;
    mat(i + 1, i + 1) = cdouble(0.0, h);
  }
  return validate_transform(std::move(mat));
}

RealMatrix isomorphism_to_canonical(const TransformSpec& spec) {
  const Index n = spec.n();
  const auto& order = spec.canonical_order();
  ComplexMatrix permuted(n, n);
  for (Index i = 0; i < n; ++i) permuted.row(i) = spec.matrix().row(order[i]);

  const TransformSpec canon = canonical_transform(n, spec.realness());
  const ComplexMatrix mprime = canon.inverse() * permuted;
  const double scale = 1.0 + mprime.real().cwiseAbs().maxCoeff();
  if (mprime.imag().cwiseAbs().maxCoeff() > spec.tol() * scale * static_cast<double>(n)) {
    throw Error(ErrorCode::ResidualImaginary, "canonical isomorphism is not real");
  }
  return mprime.real();
}

}  // namespace tubal
