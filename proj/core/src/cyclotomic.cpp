#include "partcat/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "partcat/errors.hpp"

namespace partcat {

namespace {

// Exact division of integer polynomials (divisor monic).
std::vector<long> divide(std::vector<long> num, const std::vector<long>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const long c = num[i];
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(std::size_t m) {
  static std::map<std::size_t, std::vector<long>> cache;
  static std::mutex lock;
  if (m == 0) throw PreconditionError("cyclotomic: order must be positive");
  {
    std::lock_guard guard(lock);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  std::vector<long> p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (std::size_t d = 1; d < m; ++d) {
    if (m % d == 0) p = divide(p, cyclotomic_polynomial(d));
  }
  std::lock_guard guard(lock);
  return cache.emplace(m, std::move(p)).first->second;
}

Cyclotomic::Cyclotomic(std::size_t m) : m_(m), c_(cyclotomic_polynomial(m).size() - 1, 0) {}

Cyclotomic::Cyclotomic(std::size_t m, const Rational& q) : Cyclotomic(m) { c_[0] = q; }

Cyclotomic Cyclotomic::root(std::size_t m, std::size_t e) {
  std::vector<Rational> full(m, 0);
  full[e % m] = 1;
  return from_powers(m, full);
}

Cyclotomic Cyclotomic::from_powers(std::size_t m, const std::vector<Rational>& counts) {
  if (counts.size() != m) throw PreconditionError("cyclotomic: need one count per power");
  Cyclotomic out(m);
  out.reduce(counts);
  return out;
}

void Cyclotomic::reduce(std::vector<Rational> full) {
  const auto& phi = cyclotomic_polynomial(m_);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = full.size(); i-- > deg;) {
    if (sgn(full[i]) == 0) continue;
    const Rational c = full[i];
    for (std::size_t j = 0; j <= deg; ++j) full[i - deg + j] -= c * phi[j];
  }
  full.resize(deg);
  c_ = std::move(full);
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (sgn(c_[i]) != 0) return false;
  }
  return true;
}

Rational Cyclotomic::rational() const {
  if (!is_rational()) throw PreconditionError("cyclotomic: value is not rational: " + str());
  return c_[0];
}

std::complex<double> Cyclotomic::value() const {
  std::complex<double> s = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    s += c_[i].get_d() * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(i) /
                                             static_cast<double>(m_));
  }
  return s;
}

Cyclotomic Cyclotomic::conjugate() const {
  std::vector<Rational> full(m_, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) full[(m_ - i) % m_] += c_[i];
  return from_powers(m_, full);
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.m_ != m_) throw PreconditionError("cyclotomic: orders differ");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (o.m_ != m_) throw PreconditionError("cyclotomic: orders differ");
  std::vector<Rational> full(c_.empty() ? 0 : 2 * c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) full[i + j] += c_[i] * o.c_[j];
  }
  reduce(std::move(full));
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& q) {
  for (auto& x : c_) x *= q;
  return *this;
}

std::string Cyclotomic::str() const {
  if (is_rational()) return c_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i].get_str();
    if (i > 0) os << "*z" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  os << " (z = exp(2*pi*i/" << m_ << "))";
  return os.str();
}

}  // namespace partcat
