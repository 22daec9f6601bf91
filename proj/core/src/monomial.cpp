#include "partcat/monomial.hpp"

#include <numbers>
#include <numeric>

#include "partcat/errors.hpp"

namespace partcat {

MonomialMatrix MonomialMatrix::identity(std::size_t n, std::size_t m) {
  MonomialMatrix g;
  g.m = m;
  g.perm.resize(n);
  std::iota(g.perm.begin(), g.perm.end(), 0);
  g.phase.assign(n, 0);
  return g;
}

MonomialMatrix MonomialMatrix::lifted(std::size_t new_m) const {
  if (new_m % m != 0) throw PreconditionError("monomial: cannot lift phases to a non-multiple");
  MonomialMatrix g = *this;
  g.m = new_m;
  for (auto& p : g.phase) p *= new_m / m;
  return g;
}

MonomialMatrix operator*(const MonomialMatrix& a, const MonomialMatrix& b) {
  if (a.m != b.m || a.n() != b.n()) throw PreconditionError("monomial product: shape mismatch");
  MonomialMatrix c;
  c.m = a.m;
  c.perm.resize(a.n());
  c.phase.resize(a.n());
  for (std::size_t i = 0; i < a.n(); ++i) {
    c.perm[i] = a.perm[b.perm[i]];
    c.phase[i] = (b.phase[i] + a.phase[b.perm[i]]) % a.m;
  }
  return c;
}

MonomialMatrix MonomialMatrix::inverse() const {
  MonomialMatrix g;
  g.m = m;
  g.perm.resize(n());
  g.phase.resize(n());
  for (std::size_t i = 0; i < n(); ++i) {
    g.perm[perm[i]] = i;
    g.phase[perm[i]] = (m - phase[i]) % m;
  }
  return g;
}

int MonomialMatrix::perm_sign() const {
  std::vector<bool> seen(n(), false);
  int sign = 1;
  for (std::size_t i = 0; i < n(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

std::size_t MonomialMatrix::det_phase() const {
  std::size_t e = 0;
  for (auto p : phase) e = (e + p) % m;
  if (perm_sign() < 0) {
    if (m % 2 != 0) throw PreconditionError("monomial: odd phase order cannot express -1");
    e = (e + m / 2) % m;
  }
  return e;
}

Eigen::MatrixXcd MonomialMatrix::dense() const {
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n(), n());
  for (std::size_t i = 0; i < n(); ++i) {
    const double angle = 2 * std::numbers::pi * static_cast<double>(phase[i]) / static_cast<double>(m);
    g(perm[i], i) = std::polar(1.0, angle);
  }
  return g;
}

}  // namespace partcat
