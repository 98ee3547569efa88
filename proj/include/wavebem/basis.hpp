#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "wavebem/mesh.hpp"

namespace wavebem {

enum class Strand { left, right };

enum class SpaceKind {
  pw_constant,         // piecewise constants, one dof per element
  pw_linear_zero_init  // continuous piecewise linears vanishing at t = 0
};

// Piecewise polynomial on one strand's partition. Values are stored per
// element as the pair (lo, hi) at the element's endpoints, so jumps across
// breakpoints are representable; degree lives on the owning TraceFunction.
struct StrandFunction {
  std::vector<double> breaks;
  std::vector<double> lo, hi;
};

// A function on both lateral strands, extended by zero to t < 0. Evaluation
// at a breakpoint takes the limit from the right (from the left at t = T);
// evaluation past T throws std::domain_error.
struct TraceFunction {
  double T = 0.0;
  int degree = 0;
  StrandFunction left, right;

  const StrandFunction& strand(Strand s) const {
    return s == Strand::left ? left : right;
  }
  double eval(Strand s, double t) const;
  double eval_left_limit(Strand s, double t) const;
};

struct DiscreteSpace {
  SpaceKind kind;
  LateralMesh mesh;

  int left_dof_count() const;
  int right_dof_count() const;
  int dof_count() const { return left_dof_count() + right_dof_count(); }
  const std::vector<double>& strand_breaks(Strand s) const {
    return s == Strand::left ? mesh.left_breaks : mesh.right_breaks;
  }
};

// Expand a coefficient vector (left-strand dofs first, then right) into the
// trace function it represents.
TraceFunction to_trace(const DiscreteSpace& space, const Eigen::VectorXd& coeffs);

// Coefficients of the interpolant of (g0, gL): nodal values for the piecewise
// linear space, midpoint values for piecewise constants. For the zero-initial
// space the data must vanish at t = 0 (throws PreconditionError otherwise).
Eigen::VectorXd nodal_interpolate(const DiscreteSpace& space,
                                  const std::function<double(double)>& g0,
                                  const std::function<double(double)>& gL);

}  // namespace wavebem
