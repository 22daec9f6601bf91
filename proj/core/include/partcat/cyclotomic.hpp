#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "partcat/sparse_vector.hpp"

namespace partcat {

/// Element of the cyclotomic field Q(ζ_m), ζ_m = exp(2πi/m), stored as its
/// reduced coefficient vector modulo the m-th cyclotomic polynomial, so
/// equality is coefficientwise.
class Cyclotomic {
 public:
  explicit Cyclotomic(std::size_t m = 1);
  Cyclotomic(std::size_t m, const Rational& q);

  /// ζ_m^e.
  static Cyclotomic root(std::size_t m, std::size_t e);
  /// Σ_e counts[e] ζ_m^e (group-ring form, length m).
  static Cyclotomic from_powers(std::size_t m, const std::vector<Rational>& counts);

  std::size_t order() const noexcept { return m_; }
  const std::vector<Rational>& coefficients() const noexcept { return c_; }

  bool is_rational() const;
  /// Throws PreconditionError when not rational.
  Rational rational() const;
  std::complex<double> value() const;
  Cyclotomic conjugate() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& q);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend bool operator==(const Cyclotomic&, const Cyclotomic&) = default;

  /// Rational value when possible, else "a0 + a1*z + ..." with z = ζ_m.
  std::string str() const;

 private:
  void reduce(std::vector<Rational> full);

  std::size_t m_;
  std::vector<Rational> c_;
};

/// Integer coefficients of Φ_m, lowest degree first.
const std::vector<long>& cyclotomic_polynomial(std::size_t m);

}  // namespace partcat
