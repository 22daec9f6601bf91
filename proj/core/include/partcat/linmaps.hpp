#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "partcat/monomial.hpp"
#include "partcat/partition.hpp"
#include "partcat/span_basis.hpp"
#include "partcat/tensor_map.hpp"

namespace partcat {

/// T_π at matrix size n: entry 1 at (j-tuple, i-tuple) iff every block of π
/// carries a single index value. Has exactly n^{#blocks} nonzero entries.
TensorMap build_map(const Partition& pi, std::size_t n);

/// ⟨T_π, T_σ⟩ = n^{|π ∨ σ|}.
Index gram_entry(const Partition& pi, const Partition& sigma, std::size_t n);

enum class SpanBackend { echelon, gram };

/// Coefficients c with target = Σ c_i basis_i, or nullopt. Maps that depend
/// on earlier ones get coefficient zero, so both backends return the same
/// representative.
std::optional<std::vector<Rational>> span_membership(const TensorMap& target,
                                                     const std::vector<TensorMap>& basis,
                                                     SpanBackend backend = SpanBackend::echelon);

/// Exact test of g^{⊗lower} t = t g^{⊗upper}; black letters use the entrywise
/// conjugate of g.
bool intertwines(const TensorMap& t, const MonomialMatrix& g);

/// Dense colored tensor power g^{⊗w}.
Eigen::MatrixXcd tensor_power(const Eigen::MatrixXcd& g, const ColoredWord& w);

/// Floating check with residual tolerance relative to the largest entry of t.
bool intertwines(const TensorMap& t, const Eigen::MatrixXcd& g, double tolerance = 1e-8);

/// Largest |entry| of g^{⊗lower} t - t g^{⊗upper}.
double intertwining_residual(const TensorMap& t, const Eigen::MatrixXcd& g);

/// Dense matrix of t (rows = lower tuples).
Eigen::MatrixXd dense(const TensorMap& t);

}  // namespace partcat
