#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "wavebem/basis.hpp"

namespace wavebem {

// Which side of the boundary the representation is taken from; it fixes the
// weight of the identity term in the second-kind equation.
enum class Sign { interior, exterior };

inline double identity_weight(Sign s) { return s == Sign::interior ? -0.5 : 0.5; }
inline Strand opposite(Strand s) { return s == Strand::left ? Strand::right : Strand::left; }

// Coupling part of the boundary operator: the trace read off the opposite
// strand, delayed by the crossing time L and scaled by -1/2 (zero where the
// delayed argument is negative).
TraceFunction apply_K(const TraceFunction& v, double L);

// (sign * Id + K) v, represented on the merged partition of both terms.
TraceFunction apply_second_kind(const TraceFunction& v, double L, Sign sign);

Eigen::MatrixXd mass_matrix(const DiscreteSpace& space);

// Galerkin matrix of sign * Id + K; every entry is integrated exactly.
Eigen::MatrixXd assemble_matrix(const DiscreteSpace& space, Sign sign);

struct QuadratureSpec {
  int gauss_order = 8;
  // Locations where the data is not smooth; elements are split there so the
  // quadrature only sees smooth pieces.
  std::vector<double> kinks_left, kinks_right;
};

Eigen::VectorXd assemble_rhs(const DiscreteSpace& space,
                             const std::function<double(double)>& g0,
                             const std::function<double(double)>& gL,
                             const QuadratureSpec& quad = {});

// <f, basis_i> for every dof of the space; exact for piecewise polynomial f.
Eigen::VectorXd pair_with_basis(const DiscreteSpace& space, const TraceFunction& f);

}  // namespace wavebem
