#include "tubal/catalog.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "tubal/io.hpp"

namespace tubal {

namespace {

void require_positive(Index n) {
  if (n < 1) throw Error(ErrorCode::BadDimension, "dimension must be at least 1");
}

void require_length(const Tube& t, Index n) {
  if (t.size() != n) {
    std::ostringstream os;
    os << "expected tube of length " << n << ", got " << t.size();
    throw Error(ErrorCode::BadDimension, os.str());
  }
}

}  // namespace

bool is_power_of_two(Index n) { return n >= 1 && (n & (n - 1)) == 0; }

TransformSpec dft(Index n) {
  require_positive(n);
  ComplexMatrix f(n, n);
  const double theta = -2.0 * std::numbers::pi / static_cast<double>(n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      // reduce the exponent first so large jk keeps full accuracy
      f(j, k) = std::polar(1.0, theta * static_cast<double>((j * k) % n));
    }
  }
  return validate_transform(std::move(f));
}

TransformSpec skew_dft(Index n) {
  require_positive(n);
  ComplexMatrix f = dft(n).matrix();
  for (Index k = 0; k < n; ++k) {
    f.col(k) *= std::polar(1.0, std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  }
  return validate_transform(std::move(f));
}

TransformSpec walsh_hadamard(Index n) {
  if (!is_power_of_two(n)) {
    throw Error(ErrorCode::BadDimension, "Walsh-Hadamard needs n a power of two");
  }
  ComplexMatrix h(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      h(j, k) = (std::popcount(static_cast<std::uint64_t>(j & k)) % 2 == 0) ? 1.0 : -1.0;
    }
  }
  return validate_transform(std::move(h));
}

TransformSpec split_complex() {
  ComplexMatrix m(2, 2);
  m << 1.0, 1.0, 1.0, -1.0;
  return validate_transform(std::move(m));
}

TransformSpec complex_field() {
  ComplexMatrix m(2, 2);
  m << 1.0, cdouble(0.0, 1.0), 1.0, cdouble(0.0, -1.0);
  return validate_transform(std::move(m));
}

TransformSpec identity_transform(Index n) {
  require_positive(n);
  return validate_transform(ComplexMatrix::Identity(n, n));
}

TransformSpec vandermonde(std::span<const cdouble> roots) {
  const auto n = static_cast<Index>(roots.size());
  require_positive(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(roots[i]), std::abs(roots[j])});
      if (std::abs(roots[i] - roots[j]) <= TransformSpec::kDefaultTol * scale) {
        std::ostringstream os;
        os << "roots " << i << " and " << j << " coincide";
        throw Error(ErrorCode::DuplicateRoots, os.str());
      }
    }
  }
  ComplexMatrix v(n, n);
  for (Index j = 0; j < n; ++j) {
    cdouble p = 1.0;
    for (Index k = 0; k < n; ++k) {
      v(j, k) = p;
      p *= roots[j];
    }
  }
  return validate_transform(std::move(v));
}

TransformSpec transform_from_name(std::string_view name, Index n) {
  auto fixed_two = [&](TransformSpec (*make)(), std::string_view label) {
    if (n != 2) {
      throw Error(ErrorCode::BadDimension, std::string(label) + " requires tube length 2");
    }
    return make();
  };
  if (name == "dft") return dft(n);
  if (name == "skew-dft") return skew_dft(n);
  if (name == "wht") return walsh_hadamard(n);
  if (name == "split-complex") return fixed_two(&split_complex, name);
  if (name == "complex-field") return fixed_two(&complex_field, name);
  if (name == "identity") return identity_transform(n);
  if (name.starts_with("canonical:")) {
    const std::string_view args = name.substr(10);
    const auto comma = args.find(',');
    long long cn = -1, cm = -1;
    bool ok = comma != std::string_view::npos;
    if (ok) {
      auto r1 = std::from_chars(args.data(), args.data() + comma, cn);
      auto r2 = std::from_chars(args.data() + comma + 1, args.data() + args.size(), cm);
      ok = r1.ec == std::errc() && r1.ptr == args.data() + comma && r2.ec == std::errc() &&
           r2.ptr == args.data() + args.size();
    }
    if (!ok) throw Error(ErrorCode::InvalidArgument, "expected canonical:n,m");
    if (cn != n) {
      throw Error(ErrorCode::BadDimension, "canonical:n,m must have n equal to the tube length");
    }
    return canonical_transform(static_cast<Index>(cn), static_cast<Index>(cm));
  }
  if (name.starts_with("file:")) {
    TransformSpec spec = read_transform_file(std::string(name.substr(5)));
    if (spec.n() != n) {
      throw Error(ErrorCode::BadDimension, "transform file dimension does not match tube length");
    }
    return spec;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown transform '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Oracles

BlackBoxOp circ_conv_op(Index n) {
  require_positive(n);
  return {n, [n](const Tube& a, const Tube& b) {
            require_length(a, n);
            require_length(b, n);
            Tube c = Tube::zeros(n);
            for (Index i = 0; i < n; ++i) {
              for (Index j = 0; j < n; ++j) c[i] += a[j] * b[(i - j + n) % n];
            }
            return c;
          }};
}

BlackBoxOp negacyclic_conv_op(Index n) {
  require_positive(n);
  return {n, [n](const Tube& a, const Tube& b) {
            require_length(a, n);
            require_length(b, n);
            Tube c = Tube::zeros(n);
            for (Index i = 0; i < n; ++i) {
              for (Index j = 0; j < n; ++j) {
                const Index d = i + j;
                if (d < n) {
                  c[d] += a[i] * b[j];
                } else {
                  c[d - n] -= a[i] * b[j];  // X^n = -1
                }
              }
            }
            return c;
          }};
}

BlackBoxOp xor_conv_op(Index n) {
  if (!is_power_of_two(n)) throw Error(ErrorCode::BadDimension, "XOR convolution needs n = 2^k");
  return {n, [n](const Tube& a, const Tube& b) {
            require_length(a, n);
            require_length(b, n);
            Tube c = Tube::zeros(n);
            for (Index i = 0; i < n; ++i) {
              for (Index j = 0; j < n; ++j) c[i] += a[j] * b[i ^ j];
            }
            return c;
          }};
}

BlackBoxOp dual_numbers_op() {
  return {2, [](const Tube& a, const Tube& b) {
            require_length(a, 2);
            require_length(b, 2);
            return Tube{a[0] * b[0], a[0] * b[1] + a[1] * b[0]};
          }};
}

BlackBoxOp split_complex_op() {
  return {2, [](const Tube& a, const Tube& b) {
            require_length(a, 2);
            require_length(b, 2);
            return Tube{a[0] * b[0] + a[1] * b[1], a[0] * b[1] + a[1] * b[0]};
          }};
}

BlackBoxOp complex_field_op() {
  return {2, [](const Tube& a, const Tube& b) {
            require_length(a, 2);
            require_length(b, 2);
            return Tube{a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]};
          }};
}

BlackBoxOp from_transform_op(TransformSpec spec) {
  const Index n = spec.n();
  return {n, [spec = std::move(spec)](const Tube& a, const Tube& b) { return star(spec, a, b); }};
}

double group_ring_wht_equivalence_check(int k, int trials, std::uint64_t seed) {
  if (k < 0 || k > 20) throw Error(ErrorCode::BadDimension, "k out of range");
  const Index n = Index{1} << k;
  const TransformSpec spec = walsh_hadamard(n);
  const BlackBoxOp op = xor_conv_op(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto draw = [&] {
    RealVector v(n);
    for (Index i = 0; i < n; ++i) v[i] = dist(rng);
    return Tube(std::move(v));
  };
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Tube a = draw(), b = draw();
    worst = std::max(worst, (op(a, b) - star(spec, a, b)).max_abs());
  }
  return worst;
}

}  // namespace tubal
