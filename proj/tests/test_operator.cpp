#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Core>
#include <cmath>
#include <numbers>

#include "wavebem/basis.hpp"
#include "wavebem/mesh.hpp"
#include "wavebem/operator.hpp"

using namespace wavebem;

namespace {
DiscreteSpace make_space(SpaceKind kind, int per_strand, double T = 6.0) {
  return DiscreteSpace{kind, uniform_mesh(3.0, T, per_strand)};
}
}  // namespace

TEST_CASE("the coupling delays by the crossing time, swaps strands and halves") {
  const DiscreteSpace space = make_space(SpaceKind::pw_linear_zero_init, 6);
  // v vanishes on the left strand, v(L, t) = t on the right strand
  Eigen::VectorXd c = Eigen::VectorXd::Zero(space.dof_count());
  for (int i = 0; i < 6; ++i) c[6 + i] = space.mesh.right_breaks[i + 1];
  const TraceFunction v = to_trace(space, c);
  const TraceFunction kv = apply_K(v, 3.0);

  for (double t : {0.1, 1.0, 2.9}) CHECK(kv.eval(Strand::left, t) == 0.0);
  for (double t : {3.0, 3.5, 5.0, 6.0})
    CHECK(kv.eval(Strand::left, t) == doctest::Approx(-0.5 * (t - 3.0)).epsilon(1e-14));
  for (double t : {0.5, 3.5, 6.0}) CHECK(kv.eval(Strand::right, t) == 0.0);
}

TEST_CASE("applying the coupling twice shifts by twice the crossing time") {
  for (SpaceKind kind : {SpaceKind::pw_constant, SpaceKind::pw_linear_zero_init}) {
    const DiscreteSpace space = make_space(kind, 7, 9.0);
    Eigen::VectorXd c(space.dof_count());
    for (int i = 0; i < c.size(); ++i) c[i] = std::sin(1.0 + i);
    const TraceFunction v = to_trace(space, c);
    const TraceFunction kk = apply_K(apply_K(v, 3.0), 3.0);
    for (double t : {0.3, 2.9, 4.1, 6.05, 7.7, 8.9}) {
      for (Strand s : {Strand::left, Strand::right}) {
        const double want = t >= 6.0 ? 0.25 * v.eval(s, t - 6.0) : 0.0;
        CHECK(kk.eval(s, t) == doctest::Approx(want).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("mass matrix of piecewise constants is the diagonal of widths") {
  LateralMesh m{3.0, 6.0, {0.0, 1.0, 2.5, 6.0}, {0.0, 2.0, 6.0}};
  m.validate();
  const Eigen::MatrixXd M = mass_matrix(DiscreteSpace{SpaceKind::pw_constant, m});
  Eigen::VectorXd w(5);
  w << 1.0, 1.5, 3.5, 2.0, 4.0;
  CHECK((M - Eigen::MatrixXd(w.asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("mass matrix of hat functions is tridiagonal per strand") {
  LateralMesh m{3.0, 6.0, {0.0, 1.0, 2.5, 6.0}, {0.0, 2.0, 6.0}};
  m.validate();
  const Eigen::MatrixXd M = mass_matrix(DiscreteSpace{SpaceKind::pw_linear_zero_init, m});
  // left strand widths 1, 1.5, 3.5; dofs at nodes 1, 2.5, 6
  CHECK(M(0, 0) == doctest::Approx((1.0 + 1.5) / 3));
  CHECK(M(1, 1) == doctest::Approx((1.5 + 3.5) / 3));
  CHECK(M(2, 2) == doctest::Approx(3.5 / 3));  // terminal half hat
  CHECK(M(0, 1) == doctest::Approx(1.5 / 6));
  CHECK(M(1, 2) == doctest::Approx(3.5 / 6));
  CHECK(M(0, 2) == 0.0);
  CHECK(M(0, 3) == 0.0);  // strands do not couple in the mass
  CHECK((M - M.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("a horizon at most the crossing time gives a pure identity system") {
  for (SpaceKind kind : {SpaceKind::pw_constant, SpaceKind::pw_linear_zero_init}) {
    const DiscreteSpace space{kind, uniform_mesh(3.0, 2.0, 8)};
    const Eigen::MatrixXd M = mass_matrix(space);
    for (Sign sign : {Sign::interior, Sign::exterior}) {
      const Eigen::MatrixXd A = assemble_matrix(space, sign);
      CHECK((A - identity_weight(sign) * M).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("exterior and interior matrices differ exactly by the mass") {
  for (SpaceKind kind : {SpaceKind::pw_constant, SpaceKind::pw_linear_zero_init}) {
    const DiscreteSpace space = make_space(kind, 12);
    const Eigen::MatrixXd D = assemble_matrix(space, Sign::exterior) -
                              assemble_matrix(space, Sign::interior);
    CHECK((D - mass_matrix(space)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("matrix action agrees with applying the operator") {
  for (SpaceKind kind : {SpaceKind::pw_constant, SpaceKind::pw_linear_zero_init}) {
    const DiscreteSpace space = make_space(kind, 10);
    const Eigen::MatrixXd A = assemble_matrix(space, Sign::interior);
    Eigen::VectorXd c(space.dof_count());
    for (int i = 0; i < c.size(); ++i) c[i] = std::cos(0.7 * i);
    const TraceFunction image = apply_second_kind(to_trace(space, c), 3.0, Sign::interior);
    const Eigen::VectorXd direct = pair_with_basis(space, image);
    CHECK((A * c - direct).cwiseAbs().maxCoeff() < 1e-13 * direct.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("right-hand side of representable data matches the exact pairing") {
  const DiscreteSpace space = make_space(SpaceKind::pw_linear_zero_init, 9);
  auto ident = [](double t) { return t; };
  const Eigen::VectorXd rhs = assemble_rhs(space, ident, ident, {});
  const Eigen::VectorXd nodal = nodal_interpolate(space, ident, ident);
  const Eigen::VectorXd exact = pair_with_basis(space, to_trace(space, nodal));
  CHECK((rhs - exact).cwiseAbs().maxCoeff() < 1e-13 * exact.cwiseAbs().maxCoeff());
}

TEST_CASE("constant data integrates to the element widths") {
  LateralMesh m{3.0, 6.0, {0.0, 1.0, 2.5, 6.0}, {0.0, 2.0, 6.0}};
  m.validate();
  const DiscreteSpace space{SpaceKind::pw_constant, m};
  auto one = [](double) { return 1.0; };
  const Eigen::VectorXd rhs = assemble_rhs(space, one, one, {});
  Eigen::VectorXd w(5);
  w << 1.0, 1.5, 3.5, 2.0, 4.0;
  CHECK((rhs - w).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("splitting at kinks restores full quadrature accuracy") {
  const DiscreteSpace space = make_space(SpaceKind::pw_linear_zero_init, 4);
  auto folded = [](double t) { return std::abs(std::sin(std::numbers::pi * t)); };
  QuadratureSpec kinks;
  kinks.kinks_left = kinks.kinks_right = {1, 2, 3, 4, 5};

  // against a fine brute-force reference without kink information
  QuadratureSpec brute;
  brute.gauss_order = 16;
  const DiscreteSpace fine = make_space(SpaceKind::pw_linear_zero_init, 3 * 64);
  Eigen::VectorXd ref_fine = assemble_rhs(fine, folded, folded, brute);
  // fold the fine rhs back: hats of the coarse mesh are sums of fine hats
  // with weights given by evaluation at the fine nodes
  Eigen::VectorXd ref = Eigen::VectorXd::Zero(space.dof_count());
  for (int dof = 0; dof < space.dof_count(); ++dof) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(space.dof_count());
    e[dof] = 1.0;
    const TraceFunction hat = to_trace(space, e);
    const Eigen::VectorXd fine_vals = nodal_interpolate(
        fine, [&](double t) { return hat.eval(Strand::left, t); },
        [&](double t) { return hat.eval(Strand::right, t); });
    ref[dof] = fine_vals.dot(ref_fine);
  }

  const Eigen::VectorXd with_kinks = assemble_rhs(space, folded, folded, kinks);
  CHECK((with_kinks - ref).cwiseAbs().maxCoeff() < 1e-9);
}
