#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "treerep/dense.hpp"
#include "treerep/group.hpp"
#include "treerep/tree.hpp"

// Residuals of the operator identities, each computed at the dense level.
// Every function returns a max-abs entry (or norm) that should be ~0.
namespace treerep::identities {

struct ShiftIdentities {
  double p_pstar = 0.0;       // PP* - (Q + p0)
  double p_plus_pstar = 0.0;  // P + P* - S
};
ShiftIdentities shift_identities(const RootedTree& rooted);

// ||P^(max depth + 1)||_max; exactly 0 on every finite tree.
double nilpotency(const RootedTree& rooted);

// T_t T_t* - (1 - tS + t²Q)
double deformation_gram(const RootedTree& rooted, double t);
// [T_t T_t*, π0(g)]
double commutator(const RootedTree& rooted, double t, const Automorphism& g);

struct ResolventIdentities {
  double path_sum = 0.0;  // resolvent(δx) vs Σ_{y∈[x0,x]} z^{d(y,x)} δy
  double neumann = 0.0;   // resolvent(δx) vs Σ_k z^k P^k δx (dense powers)
  double inverse = 0.0;   // (1 - zP)·resolvent - 1
};
ResolventIdentities resolvent_identities(const RootedTree& rooted, std::complex<double> z);

struct CoboundaryIdentities {
  double one_minus_p = 0.0;         // 1 - P - (bF + p0)
  double one_minus_p_fstar = 0.0;   // (1 - P)F* - b
  double resolvent_b = 0.0;         // (1 - P)⁻¹ b - F*
  double fstar_f = 0.0;             // F*F - (1 - p0)
  double f_fstar = 0.0;             // FF* - 1
  double max() const;
};
CoboundaryIdentities coboundary_identities(const RootedTree& rooted);

// max over named operators and random vector pairs of |<A*u, v> - <u, Av>|.
double adjoint_consistency(const RootedTree& rooted, std::uint64_t seed, std::size_t trials = 8);

struct GroupLaws {
  double pi0_homomorphism = 0.0;
  double pi1_homomorphism = 0.0;
  double pi0_unitary = 0.0;
  double pi1_unitary = 0.0;
  double s_q_commute = 0.0;
  double b_equivariance = 0.0;  // b π1(g) - π0(g) b
};
GroupLaws group_laws(const Tree& tree, std::span<const Automorphism> elements,
                     std::span<const std::pair<std::size_t, std::size_t>> pairs);

// Pairs (i, j) for homomorphism checks: all pairs when the group is small,
// otherwise every element against an evenly spaced subset of `width` elements.
std::vector<std::pair<std::size_t, std::size_t>> homomorphism_pairs(std::size_t group_size, std::size_t width = 64);

}  // namespace treerep::identities
