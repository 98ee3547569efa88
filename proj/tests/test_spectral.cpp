#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <numbers>

#include "wavebem/basis.hpp"
#include "wavebem/errors.hpp"
#include "wavebem/mesh.hpp"
#include "wavebem/quadrature.hpp"
#include "wavebem/spectral.hpp"

using namespace wavebem;

namespace {
DiscreteSpace linear_space(int per_strand, double T = 6.0) {
  return DiscreteSpace{SpaceKind::pw_linear_zero_init, uniform_mesh(3.0, T, per_strand)};
}

Eigen::VectorXd wiggle(int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = std::sin(2.3 * i + 0.4);
  return v;
}
}  // namespace

TEST_CASE("mode frequencies are the odd half multiples of pi") {
  CHECK(lambda_k(0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(lambda_k(3) == doctest::Approx(3.5 * std::numbers::pi).epsilon(1e-15));
  const Eigen::ArrayXd lam = lambda_array(4);
  REQUIRE(lam.size() == 4);
  CHECK(lam[2] == doctest::Approx(lambda_k(2)));
  CHECK_THROWS_AS(lambda_array(0), std::invalid_argument);
}

TEST_CASE("closed-form sine coefficients agree with quadrature") {
  const double T = 6.0;
  const DiscreteSpace space = linear_space(5);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(space.dof_count());
  c[2] = 1.0;
  c[7] = -0.5;
  const TraceFunction f = to_trace(space, c);
  const SpectralCoeffs sc = sine_coefficients(f, 20);
  for (int k : {0, 1, 7, 19}) {
    for (Strand s : {Strand::left, Strand::right}) {
      auto integrand = [&](double t) {
        return f.eval(s, t) * std::sin(lambda_k(k) * t / T);
      };
      const double want = (2.0 / T) * gauss_integrate_split(
                                          integrand, 0.0, T,
                                          space.strand_breaks(s), 16);
      const double got = (s == Strand::left ? sc.left : sc.right)[k];
      CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("partial sums converge back to the expanded function") {
  const DiscreteSpace space = linear_space(4);
  const TraceFunction f = to_trace(space, wiggle(space.dof_count()));
  const SpectralCoeffs sc = sine_coefficients(f, 4096);
  for (double t : {0.9, 2.3, 5.1}) {
    CHECK(eval_sine_series(sc, Strand::left, t) ==
          doctest::Approx(f.eval(Strand::left, t)).epsilon(1e-3));
  }
}

TEST_CASE("single modes have the advertised norms and duality product") {
  const double T = 6.0;
  for (int k : {0, 1, 5, 40}) {
    SpectralCoeffs c;
    c.T = T;
    c.left = Eigen::VectorXd::Zero(64);
    c.right = Eigen::VectorXd::Zero(64);
    c.left[k] = 1.0;
    const double p2 = h_half_norm(c) * h_half_norm(c);
    const double d2 = dual_norm(c) * dual_norm(c);
    CHECK(p2 == doctest::Approx(lambda_k(k) / 2).epsilon(1e-12));
    CHECK(d2 == doctest::Approx(T * T / (2 * lambda_k(k))).epsilon(1e-12));
    CHECK(p2 * d2 == doctest::Approx(T * T / 4).epsilon(1e-12));
  }
}

TEST_CASE("gram matrices realize the norms of the expansion") {
  const DiscreteSpace space = linear_space(4);
  const int K = 600;
  const Eigen::VectorXd x = wiggle(space.dof_count());
  const TraceFunction f = to_trace(space, x);
  const SpectralCoeffs sc = sine_coefficients(f, K);

  const Eigen::MatrixXd Gp = primal_gram(space, K);
  const double primal2 = h_half_norm(sc) * h_half_norm(sc);
  CHECK(x.dot(Gp * x) == doctest::Approx(primal2).epsilon(1e-12));

  const Eigen::MatrixXd Gd = dual_gram(space, K);
  const double dual2 = dual_norm(sc) * dual_norm(sc);
  CHECK(x.dot(Gd * x) == doctest::Approx(dual2).epsilon(1e-12));

  CHECK(Eigen::LLT<Eigen::MatrixXd>(Gp).info() == Eigen::Success);
  CHECK(Eigen::LLT<Eigen::MatrixXd>(Gd).info() == Eigen::Success);
}

TEST_CASE("the transform keeps coefficients and changes the mode system") {
  SpectralCoeffs c;
  c.T = 6.0;
  c.left = wiggle(8);
  c.right = 2.0 * wiggle(8);
  const CosineSeries h = ht_forward(c);
  CHECK(h.T == c.T);
  CHECK((h.left - c.left).cwiseAbs().maxCoeff() == 0.0);
  CHECK((h.right - c.right).cwiseAbs().maxCoeff() == 0.0);
  // the sine series vanishes at 0, the transformed one picks up the full sum
  CHECK(eval_sine_series(c, Strand::left, 0.0) == 0.0);
  CHECK(eval_cosine_series(h, Strand::left, 0.0) ==
        doctest::Approx(c.left.sum()).epsilon(1e-14));
}

TEST_CASE("backward antiderivative is pinned at the horizon") {
  const DiscreteSpace space = linear_space(5);
  const TraceFunction f = to_trace(space, wiggle(space.dof_count()));
  const QuadraticTrace F = antiderivative_back(f);
  CHECK(F.eval(Strand::left, 6.0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(F.eval(Strand::right, 6.0) == doctest::Approx(0.0).epsilon(1e-13));
  for (double t : {0.0, 1.7, 4.2}) {
    for (Strand s : {Strand::left, Strand::right}) {
      auto integrand = [&](double x) { return f.eval(s, x); };
      const double want = -gauss_integrate_split(integrand, t, 6.0,
                                                 space.strand_breaks(s), 8);
      CHECK(F.eval(s, t) == doctest::Approx(want).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(F.eval(Strand::left, 6.5), std::domain_error);
}

TEST_CASE("antiderivative of a pure mode is the matching cosine") {
  const double T = 6.0;
  for (int k : {0, 1, 4}) {
    for (double t : {0.0, 2.2, 5.9}) {
      auto mode = [&](double x) { return std::sin(lambda_k(k) * x / T); };
      const double backward = -gauss_integrate(mode, t, T, 16);
      const double closed = -(T / lambda_k(k)) * std::cos(lambda_k(k) * t / T);
      CHECK(backward == doctest::Approx(closed).epsilon(1e-13));
    }
  }
}

TEST_CASE("spectral dual gram equals the transform pairing up to global sign") {
  const DiscreteSpace space = linear_space(3);
  const int n = space.dof_count();
  const int K = 400;
  const Eigen::MatrixXd My = dual_gram(space, K);

  Eigen::MatrixXd direct(n, n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd ei = Eigen::VectorXd::Zero(n);
    ei[i] = 1.0;
    const CosineSeries hi = ht_forward(sine_coefficients(to_trace(space, ei), K));
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd ej = Eigen::VectorXd::Zero(n);
      ej[j] = 1.0;
      direct(i, j) = pair_cosine(hi, antiderivative_back(to_trace(space, ej)));
    }
  }
  CHECK((direct - direct.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((My + direct).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("tail fraction exposes insufficient truncation") {
  const DiscreteSpace space = linear_space(8);
  const TraceFunction f = to_trace(space, wiggle(space.dof_count()));
  const SpectralCoeffs wide = sine_coefficients(f, 4096);
  const SpectralCoeffs tight = sine_coefficients(f, 32);
  CHECK(tail_fraction(wide, 64) < 1e-4);
  CHECK(tail_fraction(tight, 8) > tail_fraction(wide, 64));
}

TEST_CASE("norm and gram preconditions") {
  const DiscreteSpace space = linear_space(4);
  const DiscreteSpace pwc{SpaceKind::pw_constant, space.mesh};
  CHECK_THROWS_AS(h_half_norm(to_trace(pwc, Eigen::VectorXd::Ones(pwc.dof_count())), 32),
                  PreconditionError);
  CHECK_THROWS_AS(primal_gram(pwc, 32), std::invalid_argument);
  CHECK_THROWS_AS(dual_gram(pwc, 32), std::invalid_argument);

  bool adequate = true;
  primal_gram(space, 2, &adequate);
  CHECK_FALSE(adequate);
  primal_gram(space, space.dof_count(), &adequate);
  CHECK(adequate);
}
