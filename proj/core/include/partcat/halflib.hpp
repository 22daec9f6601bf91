#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "partcat/categories.hpp"
#include "partcat/partition.hpp"
#include "partcat/tensor_map.hpp"

namespace partcat {

enum class Flavor { real, complex };

/// F with F e₀ = ξ/√n, and R = F·P where P projects onto span(e₁,…,e_{n−1}).
/// F is floating; RR* = I − J/n is kept exactly.
struct IsometryPair {
  std::size_t n = 0;
  Flavor flavor = Flavor::real;
  Eigen::MatrixXcd f;
  std::vector<std::vector<Rational>> rr_star;

  Eigen::MatrixXcd r() const;
};

/// Real: the Householder reflection swapping e₀ and ξ/√n. Complex: the
/// Fourier matrix ω^{jk}/√n.
IsometryPair build_F(std::size_t n, Flavor flavor = Flavor::real);
/// Any unitary F whose first column is ξ/√n (checked to 1e-10).
IsometryPair isometry_from_frame(const Eigen::MatrixXcd& f);
/// Max deviation from the invariants: F unitary, first column ξ/√n,
/// R R* = I − J/n.
double isometry_defect(const IsometryPair& pair);

/// The crossing that the half-liberated relations conjugate: legs = 3 gives
/// e_i⊗e_j⊗e_k ↦ e_k⊗e_j⊗e_i in Hom(k, reverse k); legs = 4 gives
/// e_a⊗e_b⊗e_c⊗e_d ↦ e_c⊗e_d⊗e_a⊗e_b in Hom(k, k₃k₄k₁k₂).
Partition crossing_base(const ColoredWord& upper);

/// R^{⊗L} T_base R^{*⊗L}, exact. The crossing permutes tensor factors, so
/// R^{*⊗L} moves through it and the map is (RR*)^{⊗L} T_base.
TensorMap t_conjugated(const IsometryPair& pair, const ColoredWord& upper);
TensorMap t_conjugated(const IsometryPair& pair, std::size_t legs);
/// Same product formed literally in floating point (R on white legs, R̄ on
/// black legs). Used to check independence of F.
Eigen::MatrixXcd t_conjugated_numeric(const IsometryPair& pair, const ColoredWord& upper);

/// The expanded formula: each output factor is either the permuted e_x or
/// ξ' = ξ/n, with sign (−1)^{#ξ'}. 8 terms at 3 legs, 16 at 4 legs.
TensorMap t_explicit(std::size_t n, const ColoredWord& upper);
TensorMap t_explicit(std::size_t n, std::size_t legs = 3);

struct MobiusTerm {
  Partition pi;
  std::int64_t mu = 0;      ///< Möbius function on [π, base]
  std::size_t broken = 0;   ///< pairs split into two singletons
};

/// Every π ≤ base obtained by splitting pairs of `base` into singletons.
/// Throws PreconditionError unless base is a pairing.
std::vector<MobiusTerm> mobius_terms(const Partition& base);
/// Σ μ(π, base) n^{−broken} T_π.
TensorMap t_mobius(std::size_t n, const Partition& base);

struct TripleCheck {
  std::size_t n = 0;
  ColoredWord upper;
  bool conjugated_eq_explicit = false;
  bool explicit_eq_mobius = false;
  bool ok() const { return conjugated_eq_explicit && explicit_eq_mobius; }
};

TripleCheck verify_triple(std::size_t n, const ColoredWord& upper);

enum class RelationTarget { BNo, CNo, CNx, CNoo, UNss };

std::string to_string(RelationTarget t);
RelationTarget relation_target_from_string(const std::string& s);

struct Relation {
  std::string label;
  TensorMap map;  ///< carries its word pair
};

/// Defining relations: BNo one (ooo, real), CNo eight (every coloring of
/// three legs), CNx one (obo), CNoo two, UNss the two generator diagrams.
std::vector<Relation> emit_relations(RelationTarget target, std::size_t n);

/// {π : T_π in the linear category generated by the BNo relation and the
/// singleton}, real mode, within the bound at size n.
PartitionTable half_envelope(std::size_t n, std::size_t bound);

}  // namespace partcat
