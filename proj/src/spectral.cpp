#include "wavebem/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "wavebem/errors.hpp"

namespace wavebem {

Eigen::ArrayXd lambda_array(int modes) {
  if (modes < 1) throw std::invalid_argument("lambda_array: modes must be positive");
  Eigen::ArrayXd lam(modes);
  for (int k = 0; k < modes; ++k) lam[k] = lambda_k(k);
  return lam;
}

namespace {

// int_a^b (alpha + beta t) sin(omega t) dt for every mode at once, given the
// endpoint trig values; follows from the antiderivative
// -(alpha + beta t) cos(omega t)/omega + beta sin(omega t)/omega^2.
Eigen::ArrayXd linear_sine_integral(double alpha, double beta, double a, double b,
                                    const Eigen::ArrayXd& cos_a, const Eigen::ArrayXd& sin_a,
                                    const Eigen::ArrayXd& cos_b, const Eigen::ArrayXd& sin_b,
                                    const Eigen::ArrayXd& omega) {
  return ((alpha + beta * a) * cos_a - (alpha + beta * b) * cos_b) / omega +
         beta * (sin_b - sin_a) / omega.square();
}

Eigen::VectorXd strand_sine_coeffs(const StrandFunction& f, int degree, double T, int modes) {
  const Eigen::ArrayXd omega = lambda_array(modes) / T;
  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(modes);
  Eigen::ArrayXd cos_a = Eigen::ArrayXd::Ones(modes);
  Eigen::ArrayXd sin_a = Eigen::ArrayXd::Zero(modes);
  for (std::size_t e = 0; e + 1 < f.breaks.size(); ++e) {
    const double a = f.breaks[e], b = f.breaks[e + 1];
    Eigen::ArrayXd cos_b = (omega * b).cos();
    Eigen::ArrayXd sin_b = (omega * b).sin();
    const double slope = degree == 0 ? 0.0 : (f.hi[e] - f.lo[e]) / (b - a);
    acc += linear_sine_integral(f.lo[e] - slope * a, slope, a, b, cos_a, sin_a, cos_b,
                                sin_b, omega);
    cos_a.swap(cos_b);
    sin_a.swap(sin_b);
  }
  return (acc * (2.0 / T)).matrix();
}

// Sine coefficients of every basis function on one strand (modes x dofs).
Eigen::MatrixXd strand_basis_coeffs(const std::vector<double>& breaks, SpaceKind kind,
                                    double T, int modes) {
  const int elems = static_cast<int>(breaks.size()) - 1;
  const Eigen::ArrayXd omega = lambda_array(modes) / T;
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(modes, elems);
  Eigen::ArrayXd cos_a = Eigen::ArrayXd::Ones(modes);
  Eigen::ArrayXd sin_a = Eigen::ArrayXd::Zero(modes);
  for (int e = 0; e < elems; ++e) {
    const double a = breaks[e], b = breaks[e + 1], w = b - a;
    Eigen::ArrayXd cos_b = (omega * b).cos();
    Eigen::ArrayXd sin_b = (omega * b).sin();
    if (kind == SpaceKind::pw_constant) {
      S.col(e) += linear_sine_integral(1.0, 0.0, a, b, cos_a, sin_a, cos_b, sin_b, omega)
                      .matrix();
    } else {
      // rising shape (t - a)/w belongs to the dof of node e + 1
      S.col(e) += linear_sine_integral(-a / w, 1.0 / w, a, b, cos_a, sin_a, cos_b, sin_b,
                                       omega)
                      .matrix();
      if (e > 0)
        S.col(e - 1) += linear_sine_integral(b / w, -1.0 / w, a, b, cos_a, sin_a, cos_b,
                                             sin_b, omega)
                            .matrix();
    }
    cos_a.swap(cos_b);
    sin_a.swap(sin_b);
  }
  return (2.0 / T) * S;
}

Eigen::MatrixXd weighted_gram(const DiscreteSpace& space, int modes,
                              const Eigen::ArrayXd& weights, bool* modes_adequate) {
  if (modes_adequate) *modes_adequate = modes >= space.dof_count();
  const int n = space.dof_count();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  int offset = 0;
  for (Strand s : {Strand::left, Strand::right}) {
    const auto& breaks = space.strand_breaks(s);
    const int m = static_cast<int>(breaks.size()) - 1;
    const Eigen::MatrixXd S = strand_basis_coeffs(breaks, space.kind, space.mesh.T, modes);
    G.block(offset, offset, m, m) =
        S.transpose() * weights.matrix().asDiagonal() * S;
    offset += m;
  }
  return 0.5 * (G + G.transpose());
}

double trace_scale(const TraceFunction& f) {
  double s = 1.0;
  for (const StrandFunction* sf : {&f.left, &f.right})
    for (std::size_t e = 0; e < sf->lo.size(); ++e)
      s = std::max({s, std::abs(sf->lo[e]), std::abs(sf->hi[e])});
  return s;
}

}  // namespace

SpectralCoeffs sine_coefficients(const TraceFunction& f, int modes) {
  SpectralCoeffs c;
  c.T = f.T;
  c.left = strand_sine_coeffs(f.left, f.degree, f.T, modes);
  c.right = strand_sine_coeffs(f.right, f.degree, f.T, modes);
  return c;
}

double eval_sine_series(const SpectralCoeffs& c, Strand s, double t) {
  const Eigen::VectorXd& v = s == Strand::left ? c.left : c.right;
  double sum = 0.0;
  for (int k = 0; k < v.size(); ++k) sum += v[k] * std::sin(lambda_k(k) * t / c.T);
  return sum;
}

double eval_cosine_series(const CosineSeries& c, Strand s, double t) {
  const Eigen::VectorXd& v = s == Strand::left ? c.left : c.right;
  double sum = 0.0;
  for (int k = 0; k < v.size(); ++k) sum += v[k] * std::cos(lambda_k(k) * t / c.T);
  return sum;
}

double h_half_norm(const SpectralCoeffs& c) {
  const Eigen::ArrayXd lam = lambda_array(static_cast<int>(c.left.size()));
  const double s = (c.left.array().square() * lam).sum() +
                   (c.right.array().square() * lam).sum();
  return std::sqrt(0.5 * s);
}

double h_half_norm(const TraceFunction& f, int modes) {
  const double tol = 1e-10 * trace_scale(f);
  if (std::abs(f.eval(Strand::left, 0.0)) > tol ||
      std::abs(f.eval(Strand::right, 0.0)) > tol)
    throw PreconditionError("h_half_norm: function does not vanish at t = 0");
  return h_half_norm(sine_coefficients(f, modes));
}

double dual_norm(const SpectralCoeffs& c) {
  const Eigen::ArrayXd lam = lambda_array(static_cast<int>(c.left.size()));
  const double s = (c.left.array().square() / lam).sum() +
                   (c.right.array().square() / lam).sum();
  return c.T * std::sqrt(0.5 * s);
}

double dual_norm(const TraceFunction& f, int modes) {
  return dual_norm(sine_coefficients(f, modes));
}

double tail_fraction(const SpectralCoeffs& c, int tail_modes) {
  const int modes = static_cast<int>(c.left.size());
  const Eigen::ArrayXd lam = lambda_array(modes);
  const Eigen::ArrayXd energy =
      (c.left.array().square() + c.right.array().square()) * lam;
  const double total = energy.sum();
  if (total <= 0.0) return 0.0;
  const int tail = std::clamp(tail_modes, 0, modes);
  return energy.tail(tail).sum() / total;
}

Eigen::MatrixXd primal_gram(const DiscreteSpace& space, int modes, bool* modes_adequate) {
  if (space.kind != SpaceKind::pw_linear_zero_init)
    throw std::invalid_argument("primal_gram: needs the zero-initial linear space");
  return weighted_gram(space, modes, 0.5 * lambda_array(modes), modes_adequate);
}

Eigen::MatrixXd dual_gram(const DiscreteSpace& space, int modes, bool* modes_adequate) {
  if (space.kind != SpaceKind::pw_linear_zero_init)
    throw std::invalid_argument("dual_gram: needs the zero-initial linear space");
  const double T = space.mesh.T;
  return weighted_gram(space, modes, 0.5 * T * T / lambda_array(modes), modes_adequate);
}

CosineSeries ht_forward(const SpectralCoeffs& c) {
  return CosineSeries{c.T, c.left, c.right};
}

double QuadraticTrace::eval(Strand s, double t) const {
  if (t < 0.0 || t > T) throw std::domain_error("QuadraticTrace::eval: t outside [0, T]");
  const QuadraticStrand& f = s == Strand::left ? left : right;
  auto it = std::upper_bound(f.breaks.begin(), f.breaks.end(), t);
  int e = static_cast<int>(it - f.breaks.begin()) - 1;
  e = std::clamp(e, 0, static_cast<int>(f.breaks.size()) - 2);
  const double x = t - f.breaks[e];
  const auto& c = f.coef[e];
  return c[0] + x * (c[1] + x * c[2]);
}

QuadraticTrace antiderivative_back(const TraceFunction& f) {
  QuadraticTrace out;
  out.T = f.T;
  for (Strand s : {Strand::left, Strand::right}) {
    const StrandFunction& sf = f.strand(s);
    QuadraticStrand& q = s == Strand::left ? out.left : out.right;
    q.breaks = sf.breaks;
    const int elems = static_cast<int>(sf.breaks.size()) - 1;
    q.coef.resize(elems);
    double value_at_b = 0.0;
    for (int e = elems - 1; e >= 0; --e) {
      const double w = sf.breaks[e + 1] - sf.breaks[e];
      const double slope = f.degree == 0 ? 0.0 : (sf.hi[e] - sf.lo[e]) / w;
      const double c1 = sf.lo[e], c2 = 0.5 * slope;
      const double c0 = value_at_b - c1 * w - c2 * w * w;
      q.coef[e] = {c0, c1, c2};
      value_at_b = c0;
    }
  }
  return out;
}

double pair_cosine(const CosineSeries& h, const QuadraticTrace& q) {
  const int modes = static_cast<int>(h.left.size());
  const Eigen::ArrayXd omega = lambda_array(modes) / h.T;
  double total = 0.0;
  for (Strand s : {Strand::left, Strand::right}) {
    const Eigen::VectorXd& hk = s == Strand::left ? h.left : h.right;
    const QuadraticStrand& qs = s == Strand::left ? q.left : q.right;
    Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(modes);
    Eigen::ArrayXd cos_a = Eigen::ArrayXd::Ones(modes);
    Eigen::ArrayXd sin_a = Eigen::ArrayXd::Zero(modes);
    for (std::size_t e = 0; e + 1 < qs.breaks.size(); ++e) {
      const double a = qs.breaks[e], b = qs.breaks[e + 1], w = b - a;
      const auto& c = qs.coef[e];
      Eigen::ArrayXd cos_b = (omega * b).cos();
      Eigen::ArrayXd sin_b = (omega * b).sin();
      const double qa = c[0], qb = c[0] + w * (c[1] + w * c[2]);
      const double qpa = c[1], qpb = c[1] + 2.0 * c[2] * w;
      const double qpp = 2.0 * c[2];
      acc += (qb * sin_b - qa * sin_a) / omega + (qpb * cos_b - qpa * cos_a) / omega.square() -
             qpp * (sin_b - sin_a) / omega.cube();
      cos_a.swap(cos_b);
      sin_a.swap(sin_b);
    }
    total += (hk.array() * acc).sum();
  }
  return total;
}

}  // namespace wavebem
