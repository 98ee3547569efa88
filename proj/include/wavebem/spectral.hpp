#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <numbers>
#include <vector>

#include "wavebem/basis.hpp"

namespace wavebem {

// Frequencies lambda_k = pi/2 + k*pi of the sine system sin(lambda_k t / T),
// which is L2-orthogonal on (0, T) with norm squared T/2 and spans the
// functions vanishing at t = 0.
inline double lambda_k(int k) { return (0.5 + k) * std::numbers::pi; }
Eigen::ArrayXd lambda_array(int modes);

// Default truncation used when a caller does not fix the mode count.
inline int default_mode_count(int dof_count) { return std::max(512, 8 * dof_count); }

// Sine coefficients of a two-strand function: f ~ sum_k c_k sin(lambda_k t/T).
struct SpectralCoeffs {
  double T = 0.0;
  Eigen::VectorXd left, right;
};

// Matching cosine series sum_k c_k cos(lambda_k t / T); the system with the
// same frequencies is also L2-orthogonal with norm squared T/2.
struct CosineSeries {
  double T = 0.0;
  Eigen::VectorXd left, right;
};

// Exact per-element integration of the piecewise polynomial against each mode.
SpectralCoeffs sine_coefficients(const TraceFunction& f, int modes);

double eval_sine_series(const SpectralCoeffs& c, Strand s, double t);
double eval_cosine_series(const CosineSeries& c, Strand s, double t);

// Norms induced by mode weights lambda_k/2 (fractional order 1/2, zero-initial
// side) and T^2/(2 lambda_k) (its dual). h_half_norm requires f(0) = 0 on both
// strands and throws PreconditionError otherwise.
double h_half_norm(const SpectralCoeffs& c);
double h_half_norm(const TraceFunction& f, int modes);
double dual_norm(const SpectralCoeffs& c);
double dual_norm(const TraceFunction& f, int modes);

// Fraction of the weighted energy carried by the last tail_modes modes; a
// diagnostic for whether the truncation was generous enough.
double tail_fraction(const SpectralCoeffs& c, int tail_modes);

// Gram matrices of the basis in the two norms, block diagonal over strands.
// When modes < dof_count the matrix is rank deficient; *modes_adequate (if
// given) reports modes >= dof_count.
Eigen::MatrixXd primal_gram(const DiscreteSpace& space, int modes,
                            bool* modes_adequate = nullptr);
Eigen::MatrixXd dual_gram(const DiscreteSpace& space, int modes,
                          bool* modes_adequate = nullptr);

// Transform sending each sine mode to the cosine mode of the same frequency
// with the same coefficient.
CosineSeries ht_forward(const SpectralCoeffs& c);

// Piecewise quadratic on each strand, stored as local coefficients
// c0 + c1 (t - a) + c2 (t - a)^2 per element.
struct QuadraticStrand {
  std::vector<double> breaks;
  std::vector<std::array<double, 3>> coef;
};
struct QuadraticTrace {
  double T = 0.0;
  QuadraticStrand left, right;
  double eval(Strand s, double t) const;
};

// F(t) = -int_t^T f(s) ds, the antiderivative pinned to F(T) = 0; it satisfies
// F' = f, and on a single sine mode gives -(T/lambda_k) cos(lambda_k t / T).
QuadraticTrace antiderivative_back(const TraceFunction& f);

// Exact L2 pairing int_Sigma (cosine series) * (piecewise quadratic).
double pair_cosine(const CosineSeries& h, const QuadraticTrace& q);

}  // namespace wavebem
