#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace partcat {

/// Exact monomial matrix with root-of-unity entries: g e_i = ζ^{phase[i]} e_{perm[i]}
/// where ζ = exp(2πi/m). Covers S_N, H_N^s and H_N^{s,d} for every s.
struct MonomialMatrix {
  std::size_t m = 1;
  std::vector<std::size_t> perm;
  std::vector<std::size_t> phase;

  std::size_t n() const noexcept { return perm.size(); }

  static MonomialMatrix identity(std::size_t n, std::size_t m = 1);
  /// Re-expresses the phases over a multiple of m.
  MonomialMatrix lifted(std::size_t new_m) const;

  /// Product a*b (apply b first); phase orders must agree.
  friend MonomialMatrix operator*(const MonomialMatrix& a, const MonomialMatrix& b);
  MonomialMatrix inverse() const;
  /// Permutation sign times the product of the entries, as an exponent of ζ.
  std::size_t det_phase() const;
  int perm_sign() const;

  Eigen::MatrixXcd dense() const;

  friend bool operator==(const MonomialMatrix&, const MonomialMatrix&) = default;
  friend auto operator<=>(const MonomialMatrix& a, const MonomialMatrix& b) {
    if (auto c = a.perm <=> b.perm; c != 0) return c;
    return a.phase <=> b.phase;
  }
};

}  // namespace partcat
