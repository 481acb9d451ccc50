#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "tubal/tube_ring.hpp"

namespace tubal {

// Named tubal rings. All constructors return validated specs.

/// F[j,k] = w^{jk}, w = exp(-2 pi i / n), unnormalized.
TransformSpec dft(Index n);
/// F_n * diag(1, e^{i pi/n}, ..., e^{i(n-1)pi/n}); diagonalizes products mod X^n + 1.
TransformSpec skew_dft(Index n);
/// Unnormalized +-1 Sylvester Hadamard matrix; n must be a power of two.
TransformSpec walsh_hadamard(Index n);
/// [[1, 1], [1, -1]].
TransformSpec split_complex();
/// [[1, i], [1, -i]].
TransformSpec complex_field();
TransformSpec identity_transform(Index n);
/// M[j,k] = roots[j]^k. Roots must be distinct and closed under conjugation.
TransformSpec vandermonde(std::span<const cdouble> roots);

/// Resolves the command-line transform names: dft, skew-dft, wht,
/// split-complex, complex-field, identity, canonical:n,m, file:PATH.
/// `n` is the tube length the transform must act on.
TransformSpec transform_from_name(std::string_view name, Index n);

/// A deterministic binary operation on R^n, treated as a black box.
struct BlackBoxOp {
  Index n = 0;
  std::function<Tube(const Tube&, const Tube&)> eval;

  Tube operator()(const Tube& a, const Tube& b) const { return eval(a, b); }
};

// Brute-force products, computed with O(n^2) sums and never through a
// transform matrix.

/// c_i = sum_j a_j b_{(i - j) mod n}, i.e. circ(a) * b.
BlackBoxOp circ_conv_op(Index n);
/// Coefficient product of polynomials modulo X^n + 1.
BlackBoxOp negacyclic_conv_op(Index n);
/// c_i = sum_j a_j b_{i xor j}; n must be a power of two.
BlackBoxOp xor_conv_op(Index n);
/// (a1 + a2 eps)(b1 + b2 eps) with eps^2 = 0; n = 2.
BlackBoxOp dual_numbers_op();
/// (a1 + a2 j)(b1 + b2 j) with j^2 = 1; n = 2.
BlackBoxOp split_complex_op();
/// Ordinary complex multiplication on R^2.
BlackBoxOp complex_field_op();
/// a *_M b for the given spec.
BlackBoxOp from_transform_op(TransformSpec spec);

/// Max over random trials of |xor_conv(a, b) - star_WHT(a, b)|_max for n = 2^k.
double group_ring_wht_equivalence_check(int k, int trials, std::uint64_t seed = 0);

bool is_power_of_two(Index n);

}  // namespace tubal
