#include "wavebem/operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wavebem/quadrature.hpp"

namespace wavebem {

namespace {

int find_element(const std::vector<double>& breaks, double t) {
  auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
  int k = static_cast<int>(it - breaks.begin()) - 1;
  return std::clamp(k, 0, static_cast<int>(breaks.size()) - 2);
}

double element_value(const StrandFunction& f, int degree, int e, double t) {
  if (degree == 0) return f.lo[e];
  const double w = f.breaks[e + 1] - f.breaks[e];
  return f.lo[e] + (f.hi[e] - f.lo[e]) * (t - f.breaks[e]) / w;
}

// -1/2 src(t - L) on [0, T], with the zero extension filling [0, L].
StrandFunction delayed_half(const StrandFunction& src, int degree, double L, double T) {
  StrandFunction out;
  out.breaks = {0.0};
  auto push = [&](double b, double lo, double hi) {
    out.breaks.push_back(b);
    out.lo.push_back(lo);
    out.hi.push_back(hi);
  };
  if (L >= T) {
    push(T, 0.0, 0.0);
    return out;
  }
  push(L, 0.0, 0.0);
  for (std::size_t e = 0; e + 1 < src.breaks.size(); ++e) {
    double a = src.breaks[e] + L, b = src.breaks[e + 1] + L;
    if (a >= T) break;
    const double lo = -0.5 * src.lo[e];
    double hi;
    if (b <= T) {
      hi = -0.5 * src.hi[e];
    } else {
      b = T;
      hi = -0.5 * element_value(src, degree, static_cast<int>(e), T - L);
    }
    push(b, lo, hi);
    if (b == T) break;
  }
  return out;
}

StrandFunction combine(const StrandFunction& f, double cf,
                       const StrandFunction& g, double cg, int degree) {
  StrandFunction out;
  out.breaks = f.breaks;
  out.breaks.insert(out.breaks.end(), g.breaks.begin(), g.breaks.end());
  std::sort(out.breaks.begin(), out.breaks.end());
  out.breaks.erase(std::unique(out.breaks.begin(), out.breaks.end()), out.breaks.end());
  const std::size_t elems = out.breaks.size() - 1;
  out.lo.resize(elems);
  out.hi.resize(elems);
  for (std::size_t e = 0; e < elems; ++e) {
    const double c0 = out.breaks[e], c1 = out.breaks[e + 1];
    const double mid = 0.5 * (c0 + c1);
    const int ef = find_element(f.breaks, mid), eg = find_element(g.breaks, mid);
    out.lo[e] = cf * element_value(f, degree, ef, c0) + cg * element_value(g, degree, eg, c0);
    out.hi[e] = cf * element_value(f, degree, ef, c1) + cg * element_value(g, degree, eg, c1);
  }
  return out;
}

// Active dofs of one element together with their shape functions. For the
// zero-initial linear space the first element's rising node is its only dof.
struct ElementDofs {
  int count = 0;
  int dof[2];
  // shape s in {0: constant one, 1: falling (t-b)/(a-b), 2: rising (t-a)/(b-a)}
  int shape[2];
};

ElementDofs element_dofs(SpaceKind kind, int e, int offset) {
  ElementDofs d;
  if (kind == SpaceKind::pw_constant) {
    d.count = 1;
    d.dof[0] = offset + e;
    d.shape[0] = 0;
    return d;
  }
  if (e > 0) {
    d.dof[d.count] = offset + e - 1;
    d.shape[d.count] = 1;
    ++d.count;
  }
  d.dof[d.count] = offset + e;
  d.shape[d.count] = 2;
  ++d.count;
  return d;
}

double shape_value(int shape, double a, double b, double t) {
  if (shape == 0) return 1.0;
  const double w = b - a;
  return shape == 1 ? (b - t) / w : (t - a) / w;
}

}  // namespace

TraceFunction apply_K(const TraceFunction& v, double L) {
  TraceFunction w;
  w.T = v.T;
  w.degree = v.degree;
  w.left = delayed_half(v.right, v.degree, L, v.T);
  w.right = delayed_half(v.left, v.degree, L, v.T);
  return w;
}

TraceFunction apply_second_kind(const TraceFunction& v, double L, Sign sign) {
  const TraceFunction kv = apply_K(v, L);
  const double c = identity_weight(sign);
  TraceFunction w;
  w.T = v.T;
  w.degree = v.degree;
  w.left = combine(v.left, c, kv.left, 1.0, v.degree);
  w.right = combine(v.right, c, kv.right, 1.0, v.degree);
  return w;
}

Eigen::MatrixXd mass_matrix(const DiscreteSpace& space) {
  const int n = space.dof_count();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  int offset = 0;
  for (Strand s : {Strand::left, Strand::right}) {
    const auto& b = space.strand_breaks(s);
    const int elems = static_cast<int>(b.size()) - 1;
    for (int e = 0; e < elems; ++e) {
      const double w = b[e + 1] - b[e];
      if (space.kind == SpaceKind::pw_constant) {
        M(offset + e, offset + e) = w;
      } else {
        const int d1 = offset + e;
        M(d1, d1) += w / 3.0;
        if (e > 0) {
          const int d0 = offset + e - 1;
          M(d0, d0) += w / 3.0;
          M(d0, d1) += w / 6.0;
          M(d1, d0) += w / 6.0;
        }
      }
    }
    offset += elems;
  }
  return M;
}

Eigen::MatrixXd assemble_matrix(const DiscreteSpace& space, Sign sign) {
  Eigen::MatrixXd A = identity_weight(sign) * mass_matrix(space);
  const double L = space.mesh.L;
  const GaussRule& g2 = gauss_rule(2);
  const int nl = space.left_dof_count();
  for (Strand s : {Strand::left, Strand::right}) {
    const auto& rb = space.strand_breaks(s);
    const auto& cb = space.strand_breaks(opposite(s));
    const int row_off = s == Strand::left ? 0 : nl;
    const int col_off = s == Strand::left ? nl : 0;
    const int row_elems = static_cast<int>(rb.size()) - 1;
    const int col_elems = static_cast<int>(cb.size()) - 1;
    for (int re = 0; re < row_elems; ++re) {
      const double ra = rb[re], rz = rb[re + 1];
      if (rz <= cb.front() + L) continue;
      const ElementDofs rd = element_dofs(space.kind, re, row_off);
      int ce = find_element(cb, std::max(ra - L, cb.front()));
      for (; ce < col_elems && cb[ce] + L < rz; ++ce) {
        const double c0 = std::max(ra, cb[ce] + L);
        const double c1 = std::min(rz, cb[ce + 1] + L);
        if (!(c1 > c0)) continue;
        const ElementDofs cd = element_dofs(space.kind, ce, col_off);
        const double mid = 0.5 * (c0 + c1), half = 0.5 * (c1 - c0);
        for (std::size_t q = 0; q < g2.nodes.size(); ++q) {
          for (double t : {mid - half * g2.nodes[q], mid + half * g2.nodes[q]}) {
            const double wq = -0.5 * g2.weights[q] * half;
            for (int i = 0; i < rd.count; ++i) {
              const double ri = shape_value(rd.shape[i], ra, rz, t);
              for (int j = 0; j < cd.count; ++j) {
                const double cj = shape_value(cd.shape[j], cb[ce], cb[ce + 1], t - L);
                A(rd.dof[i], cd.dof[j]) += wq * ri * cj;
              }
            }
          }
        }
      }
    }
  }
  return A;
}

Eigen::VectorXd assemble_rhs(const DiscreteSpace& space,
                             const std::function<double(double)>& g0,
                             const std::function<double(double)>& gL,
                             const QuadratureSpec& quad) {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(space.dof_count());
  int offset = 0;
  for (Strand s : {Strand::left, Strand::right}) {
    const auto& b = space.strand_breaks(s);
    const auto& g = s == Strand::left ? g0 : gL;
    const auto& kinks = s == Strand::left ? quad.kinks_left : quad.kinks_right;
    const int elems = static_cast<int>(b.size()) - 1;
    for (int e = 0; e < elems; ++e) {
      const ElementDofs d = element_dofs(space.kind, e, offset);
      for (int i = 0; i < d.count; ++i) {
        auto integrand = [&](double t) {
          return g(t) * shape_value(d.shape[i], b[e], b[e + 1], t);
        };
        rhs[d.dof[i]] +=
            gauss_integrate_split(integrand, b[e], b[e + 1], kinks, quad.gauss_order);
      }
    }
    offset += elems;
  }
  return rhs;
}

Eigen::VectorXd pair_with_basis(const DiscreteSpace& space, const TraceFunction& f) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.dof_count());
  const GaussRule& g2 = gauss_rule(2);
  int offset = 0;
  for (Strand s : {Strand::left, Strand::right}) {
    const auto& b = space.strand_breaks(s);
    const StrandFunction& fs = f.strand(s);
    const int elems = static_cast<int>(b.size()) - 1;
    for (int e = 0; e < elems; ++e) {
      std::vector<double> cuts{b[e]};
      for (double c : fs.breaks)
        if (c > b[e] && c < b[e + 1]) cuts.push_back(c);
      cuts.push_back(b[e + 1]);
      std::sort(cuts.begin(), cuts.end());
      const ElementDofs d = element_dofs(space.kind, e, offset);
      for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const int ef = find_element(fs.breaks, 0.5 * (cuts[c] + cuts[c + 1]));
        const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
        const double half = 0.5 * (cuts[c + 1] - cuts[c]);
        for (std::size_t q = 0; q < g2.nodes.size(); ++q) {
          for (double t : {mid - half * g2.nodes[q], mid + half * g2.nodes[q]}) {
            const double fv = element_value(fs, f.degree, ef, t);
            for (int i = 0; i < d.count; ++i)
              out[d.dof[i]] +=
                  g2.weights[q] * half * fv * shape_value(d.shape[i], b[e], b[e + 1], t);
          }
        }
      }
    }
    offset += elems;
  }
  return out;
}

}  // namespace wavebem
