#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "partcat/cyclotomic.hpp"
#include "partcat/monomial.hpp"
#include "partcat/span_basis.hpp"

namespace partcat {

enum class GroupKind { SN, HNs, HNsd, Finite, ON, UN, UNd, BN, CN, Conjugated };

std::string to_string(GroupKind kind);

/// A matrix group at fixed size n. Monomial kinds (SN, HNs, HNsd, Finite) are
/// exact: their elements carry root-of-unity phases over ζ_m. The others are
/// handled through a seeded Haar sampler.
struct GroupModel {
  GroupKind kind = GroupKind::SN;
  std::size_t n = 1;
  std::size_t s = 1;
  std::size_t d = 1;
  std::uint64_t seed = 0;
  std::vector<MonomialMatrix> given;  ///< Finite: generators or full element list
  std::shared_ptr<const GroupModel> base;
  Eigen::MatrixXcd conjugator;  ///< Conjugated: g ↦ F g F^*

  static GroupModel SN(std::size_t n);
  static GroupModel HNs(std::size_t n, std::size_t s);
  /// Requires 2 | d | lcm(2, s); throws PreconditionError otherwise.
  static GroupModel HNsd(std::size_t n, std::size_t s, std::size_t d);
  /// The group generated by the given monomial matrices.
  static GroupModel finite(std::vector<MonomialMatrix> generators);
  static GroupModel trivial(std::size_t n);
  static GroupModel ON(std::size_t n, std::uint64_t seed = 0);
  static GroupModel UN(std::size_t n, std::uint64_t seed = 0);
  static GroupModel UNd(std::size_t n, std::size_t d, std::uint64_t seed = 0);
  static GroupModel BN(std::size_t n, std::uint64_t seed = 0);
  static GroupModel CN(std::size_t n, std::uint64_t seed = 0);
  static GroupModel conjugated(const GroupModel& base, Eigen::MatrixXcd f);

  bool exact() const;
  /// Phase order used for exact elements (always even).
  std::size_t phase_order() const;
  /// True when all elements are real matrices.
  bool real() const;
  std::string name() const;
};

/// {"kind":"HNsd","N":3,"s":4,"d":2}; Finite takes "generators" as a list of
/// {"perm":[...],"phase":[...],"m":m}; sampled kinds accept "seed".
GroupModel group_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GroupModel& g);

/// Full enumeration, sorted, without duplicates. Throws PreconditionError for
/// sampled kinds and BudgetExceededError past `limit` elements.
std::vector<MonomialMatrix> elements(const GroupModel& g, std::size_t limit = 2'000'000);

/// A generating set (for exact kinds).
std::vector<MonomialMatrix> generators(const GroupModel& g);

/// Reproducible Haar sampler. Exact kinds are sampled uniformly from their
/// elements.
class HaarSampler {
 public:
  HaarSampler(const GroupModel& g, std::uint64_t seed);
  Eigen::MatrixXcd next();

 private:
  GroupModel g_;
  std::mt19937_64 rng_;
  std::vector<MonomialMatrix> finite_;
  std::shared_ptr<HaarSampler> inner_;
};

/// One sample; throws PreconditionError for exact kinds.
Eigen::MatrixXcd haar_sample(const GroupModel& g, std::uint64_t seed);

/// Haar samples on the classical groups (exposed for tests).
Eigen::MatrixXcd haar_orthogonal(std::size_t n, std::mt19937_64& rng);
Eigen::MatrixXcd haar_unitary(std::size_t n, std::mt19937_64& rng);
/// Real orthogonal F with first column (1,…,1)/√n.
Eigen::MatrixXd flat_frame(std::size_t n);

enum class FixMethod { automatic, exact_average, generator_check, sampled };

std::string to_string(FixMethod method);

struct FixOptions {
  FixMethod method = FixMethod::automatic;
  std::size_t samples = 2000;
  double threshold = 1e-6;  ///< relative to the top eigenvalue
  Index budget = Index{1} << 24;  ///< max n^{|upper|+|lower|}
};

/// Hom(u^{⊗upper}, u^{⊗lower}). Exact methods fill `basis`. The sampled method
/// computes the common fixed space of the sampled tensor powers as the kernel
/// of H = avg (A - I)^*(A - I) on the one-row space and stores an
/// orthonormal basis in `numeric`.
struct IntertwinerSpace {
  ColoredWord upper, lower;
  std::size_t n = 0;
  FixMethod method = FixMethod::exact_average;
  std::optional<SpanBasis> basis;
  Eigen::MatrixXcd numeric;
  std::vector<double> spectrum;  ///< eigenvalues of H, ascending
  double threshold = 0;
  std::size_t samples = 0;
  bool ill_conditioned = false;

  std::size_t dim() const;
  /// ‖t - P t‖ / ‖t‖ with P the orthogonal projection onto the space.
  double residual(const TensorMap& t) const;
  bool contains(const TensorMap& t, double tolerance = 1e-6) const;
};

IntertwinerSpace intertwiner_space(const GroupModel& g, const ColoredWord& upper,
                                   const ColoredWord& lower, const FixOptions& options = {});

/// Fix(u^{⊗w}) for a monomial group, as rational vectors on the one-row word
/// w. Throws PreconditionError when the space has no rational basis.
std::vector<SparseVector> fixed_vectors_average(const std::vector<MonomialMatrix>& elements,
                                                const ColoredWord& w, std::size_t n);
std::vector<SparseVector> fixed_vectors_generators(const std::vector<MonomialMatrix>& gens,
                                                   const ColoredWord& w, std::size_t n);

struct MomentReport {
  std::size_t k = 0;
  Rational t;
  bool exact = false;
  std::optional<Cyclotomic> value;
  std::complex<double> estimate;
  std::size_t samples = 0;
};

/// E[χ_t^k] with χ_t = Σ_{i ≤ ⌊tN⌋} u_ii. Exact average for exact kinds,
/// otherwise an estimate over `samples` Haar samples.
MomentReport character_moment(const GroupModel& g, std::size_t k, const Rational& t,
                              std::size_t samples = 2000);
nlohmann::json to_json(const MomentReport& r);

}  // namespace partcat
