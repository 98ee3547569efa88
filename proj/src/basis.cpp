#include "wavebem/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wavebem/errors.hpp"

namespace wavebem {

namespace {

double eval_on(const StrandFunction& f, int degree, double t, bool from_left) {
  const auto& b = f.breaks;
  if (t < b.front()) return 0.0;
  std::size_t k;
  if (from_left) {
    auto it = std::lower_bound(b.begin(), b.end(), t);
    if (it != b.end() && *it == t) {
      if (it == b.begin()) return 0.0;
      return f.hi[static_cast<std::size_t>(it - b.begin()) - 1];
    }
    k = static_cast<std::size_t>(it - b.begin()) - 1;
  } else {
    auto it = std::upper_bound(b.begin(), b.end(), t);
    if (it == b.end()) return f.hi.back();
    k = static_cast<std::size_t>(it - b.begin()) - 1;
  }
  if (degree == 0) return f.lo[k];
  const double w = b[k + 1] - b[k];
  return f.lo[k] + (f.hi[k] - f.lo[k]) * (t - b[k]) / w;
}

}  // namespace

double TraceFunction::eval(Strand s, double t) const {
  if (t > T) throw std::domain_error("TraceFunction::eval: t exceeds final time");
  return eval_on(strand(s), degree, t, /*from_left=*/t >= T);
}

double TraceFunction::eval_left_limit(Strand s, double t) const {
  if (t > T) throw std::domain_error("TraceFunction::eval_left_limit: t exceeds final time");
  return eval_on(strand(s), degree, t, /*from_left=*/true);
}

int DiscreteSpace::left_dof_count() const {
  const int elems = static_cast<int>(mesh.left_breaks.size()) - 1;
  return elems;  // pwc: one per element; pwl: nodes minus the t=0 node
}

int DiscreteSpace::right_dof_count() const {
  return static_cast<int>(mesh.right_breaks.size()) - 1;
}

TraceFunction to_trace(const DiscreteSpace& space, const Eigen::VectorXd& coeffs) {
  if (coeffs.size() != space.dof_count())
    throw std::invalid_argument("to_trace: coefficient count does not match space");
  TraceFunction f;
  f.T = space.mesh.T;
  f.degree = space.kind == SpaceKind::pw_constant ? 0 : 1;
  int offset = 0;
  for (Strand s : {Strand::left, Strand::right}) {
    const auto& breaks = space.strand_breaks(s);
    const int elems = static_cast<int>(breaks.size()) - 1;
    StrandFunction& sf = s == Strand::left ? f.left : f.right;
    sf.breaks = breaks;
    sf.lo.resize(elems);
    sf.hi.resize(elems);
    if (space.kind == SpaceKind::pw_constant) {
      for (int e = 0; e < elems; ++e) sf.lo[e] = sf.hi[e] = coeffs[offset + e];
    } else {
      for (int e = 0; e < elems; ++e) {
        sf.lo[e] = e == 0 ? 0.0 : coeffs[offset + e - 1];
        sf.hi[e] = coeffs[offset + e];
      }
    }
    offset += elems;
  }
  return f;
}

Eigen::VectorXd nodal_interpolate(const DiscreteSpace& space,
                                  const std::function<double(double)>& g0,
                                  const std::function<double(double)>& gL) {
  Eigen::VectorXd coeffs(space.dof_count());
  int offset = 0;
  for (Strand s : {Strand::left, Strand::right}) {
    const auto& breaks = space.strand_breaks(s);
    const auto& g = s == Strand::left ? g0 : gL;
    const int elems = static_cast<int>(breaks.size()) - 1;
    if (space.kind == SpaceKind::pw_constant) {
      for (int e = 0; e < elems; ++e)
        coeffs[offset + e] = g(0.5 * (breaks[e] + breaks[e + 1]));
    } else {
      double scale = 1.0;
      for (int e = 0; e < elems; ++e) {
        coeffs[offset + e] = g(breaks[e + 1]);
        scale = std::max(scale, std::abs(coeffs[offset + e]));
      }
      if (std::abs(g(0.0)) > 1e-12 * scale)
        throw PreconditionError("nodal_interpolate: data does not vanish at t = 0");
    }
    offset += elems;
  }
  return coeffs;
}

}  // namespace wavebem
