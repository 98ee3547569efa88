#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "wavebem/basis.hpp"
#include "wavebem/errors.hpp"
#include "wavebem/experiments.hpp"
#include "wavebem/mesh.hpp"
#include "wavebem/operator.hpp"
#include "wavebem/solver.hpp"

using namespace wavebem;

TEST_CASE("reference data sets are well formed") {
  for (char id : {'a', 'b'}) {
    const ProblemSpec p = make_problem(id, 3.0, 6.0);
    CHECK(p.g0(0.0) == 0.0);
    CHECK(std::abs(p.gL(3.0)) < 1e-15);
    // data on the right strand is the left data delayed by the crossing time
    for (double t : {0.4, 1.1, 2.7}) {
      CHECK(p.gL(t + 3.0) == doctest::Approx(p.g0(t)).epsilon(1e-13));
      CHECK(p.density0(t) == doctest::Approx(-2.0 * p.g0(t)).epsilon(1e-13));
      CHECK(p.densityL(t) == 0.0);
    }
  }
  CHECK_THROWS_AS(make_problem('c', 3.0, 6.0), std::invalid_argument);
}

TEST_CASE("closed-form densities satisfy the interior equation") {
  CHECK(exact_density_residual(make_problem('a', 3.0, 6.0)) <= 1e-10);
  CHECK(exact_density_residual(make_problem('b', 3.0, 6.0)) <= 1e-10);
  CHECK(exact_density_residual(make_problem('a', 3.0, 12.0)) <= 1e-10);
}

TEST_CASE("l2 error functional measured against a hand-built density") {
  const DiscreteSpace space{SpaceKind::pw_constant, uniform_mesh(3.0, 6.0, 8)};
  ProblemSpec p;
  p.L = 3.0;
  p.T = 6.0;
  p.density0 = [](double t) { return t < 3.0 ? 2.0 : 5.0; };
  p.densityL = [](double) { return -1.0; };
  p.density_kinks_left = {3.0};

  Eigen::VectorXd c(space.dof_count());
  for (int e = 0; e < 8; ++e) {
    const double mid = 0.5 * (space.mesh.left_breaks[e] + space.mesh.left_breaks[e + 1]);
    c[e] = mid < 3.0 ? 2.0 : 5.0;
    c[8 + e] = -1.0;
  }
  CHECK(l2_error(space, c, p) == 0.0);

  Eigen::VectorXd off = c;
  off[0] += 0.25;
  const double w = 6.0 / 8;
  CHECK(l2_error(space, off, p) == doctest::Approx(0.25 * std::sqrt(w)).epsilon(1e-13));
}

TEST_CASE("fractional error vanishes when the density lives on the mesh") {
  const DiscreteSpace space{SpaceKind::pw_linear_zero_init, uniform_mesh(3.0, 6.0, 8)};
  ProblemSpec p;
  p.L = 3.0;
  p.T = 6.0;
  p.density0 = [](double t) { return std::min(t, 6.0 - t); };
  p.densityL = [](double) { return 0.0; };
  p.density_kinks_left = {3.0};

  const Eigen::VectorXd c = nodal_interpolate(space, p.density0, p.densityL);
  CHECK(h_half_error(space, c, p) < 1e-10);

  Eigen::VectorXd off = c;
  off[2] += 0.1;
  CHECK(h_half_error(space, off, p) > 1e-3);
  CHECK_THROWS_AS(
      h_half_error(DiscreteSpace{SpaceKind::pw_constant, space.mesh},
                   Eigen::VectorXd::Zero(16), p),
      std::invalid_argument);
}

TEST_CASE("study meshes have the requested totals") {
  CHECK(study_mesh(MeshFamily::uniform, 3.0, 6.0, 64).total_elements() == 64);
  CHECK(study_mesh(MeshFamily::uniform, 3.0, 6.0, 64).left_elements() == 32);
  CHECK_THROWS_AS(study_mesh(MeshFamily::uniform, 3.0, 6.0, 63), std::invalid_argument);

  const LateralMesh sp = study_mesh(MeshFamily::shifted_pair, 3.0, 6.0, 16);
  CHECK(sp.total_elements() == 16);
  CHECK(satisfies_slice_shift(sp));
  CHECK_THROWS_AS(study_mesh(MeshFamily::shifted_pair, 3.0, 6.0, 12),
                  std::invalid_argument);
  CHECK_THROWS_AS(study_mesh(MeshFamily::shifted_pair, 3.0, 6.2, 16),
                  std::invalid_argument);

  const LateralMesh nu = study_mesh(MeshFamily::nonuniform_initial, 3.0,
                                    2.0 * std::numbers::pi, 128);
  CHECK(nu.total_elements() == 128);
  CHECK(nu.left_elements() == 80);
  CHECK_THROWS_AS(
      study_mesh(MeshFamily::nonuniform_initial, 3.0, 2.0 * std::numbers::pi, 100),
      std::invalid_argument);
}

TEST_CASE("convergence study rows, orders and serialization") {
  StudyConfig cfg;
  cfg.problem = 'a';
  cfg.space = SpaceKind::pw_constant;
  cfg.norm = ErrorNorm::l2;
  cfg.levels = 3;
  const auto rows = convergence_study(cfg);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].N == 64);
  CHECK(rows[1].N == 128);
  CHECK(rows[2].N == 256);
  CHECK(std::isnan(rows[0].eoc));
  CHECK(rows[1].eoc == doctest::Approx(std::log2(rows[0].error / rows[1].error)));
  for (const auto& r : rows) CHECK(r.kappa == doctest::Approx(2.618).epsilon(2e-3));
  CHECK(rows[2].error < rows[1].error);

  const std::string csv = records_to_csv(rows);
  CHECK(csv.rfind("N,error,eoc,kappa\n", 0) == 0);
  CHECK(csv == records_to_csv(rows));
  // the first data line carries an empty eoc field
  std::istringstream in(csv);
  std::string header, line1;
  std::getline(in, header);
  std::getline(in, line1);
  CHECK(line1.rfind("64,", 0) == 0);
  CHECK(line1.find(",,") != std::string::npos);

  const nlohmann::json j =
      nlohmann::json::parse(records_to_json(rows, "a", "p0", "uniform", "l2"));
  CHECK(j.at("schema") == 1);
  CHECK(j.at("problem") == "a");
  CHECK(j.at("rows").size() == 3);
  CHECK(j.at("rows")[0].at("eoc").is_null());
  CHECK(j.at("rows")[1].at("eoc").is_number());
}

TEST_CASE("ellipticity constants by horizon length") {
  // one slice: the operator is exactly half the identity
  CHECK(ellipticity_min(uniform_mesh(3.0, 2.0, 8), SpaceKind::pw_constant,
                        Sign::interior) == doctest::Approx(0.5).epsilon(1e-13));
  // two slices: bounded below by sin^2(pi/6) = 1/4
  const double two = ellipticity_min(uniform_mesh(3.0, 6.0, 16),
                                     SpaceKind::pw_linear_zero_init, Sign::interior);
  CHECK(two >= 0.25 - 1e-10);
  CHECK(two < 0.5);
  // the bound is monotone in the slice count
  const double three = ellipticity_min(uniform_mesh(3.0, 9.0, 18),
                                       SpaceKind::pw_linear_zero_init, Sign::interior);
  const double s3 = std::sin(std::numbers::pi / 8);
  CHECK(three >= s3 * s3 - 1e-10);
}

TEST_CASE("inf-sup studies stay positive and behave monotonically") {
  const double beta = infsup_for_mesh(uniform_mesh(3.0, 6.0, 16), Sign::interior);
  CHECK(beta > 0.0);
  CHECK(beta < 1.0);
  // exterior differs from interior only by the identity sign; both admissible
  CHECK(infsup_for_mesh(uniform_mesh(3.0, 6.0, 16), Sign::exterior) > 0.0);

  const auto sweep = infsup_refinement_study(MeshFamily::uniform, 3.0, 6.0, 16, 3,
                                             Sign::interior);
  REQUIRE(sweep.size() == 3);
  CHECK(sweep[0].param == 16.0);
  CHECK(sweep[1].param == 32.0);
  CHECK(sweep[0].dofs == 16);
  for (const auto& r : sweep) CHECK(r.beta > 0.0);

  const auto horizon =
      infsup_horizon_study(3.0, 3.0, 0.75, 0.75, 1, 3, Sign::interior);
  REQUIRE(horizon.size() == 3);
  CHECK(horizon[0].param == 1.0);
  CHECK(horizon[0].beta > horizon[1].beta);
  CHECK(horizon[1].beta > horizon[2].beta);

  const std::string csv = infsup_to_csv(sweep);
  CHECK(csv.rfind("param,dofs,beta\n", 0) == 0);
  const nlohmann::json j = nlohmann::json::parse(infsup_to_json(sweep, "refinement"));
  CHECK(j.at("schema") == 1);
  CHECK(j.at("mode") == "refinement");
  CHECK(j.at("rows").size() == 3);
}

TEST_CASE("matrix files round trip") {
  const DiscreteSpace space{SpaceKind::pw_constant, uniform_mesh(3.0, 6.0, 4)};
  const Eigen::MatrixXd A = assemble_matrix(space, Sign::interior);

  const std::string csv_path = "test_matrix_out.csv";
  write_matrix_csv(A, csv_path);
  std::ifstream csv(csv_path);
  REQUIRE(csv.good());
  std::string line;
  int lines = 0;
  while (std::getline(csv, line)) ++lines;
  CHECK(lines == A.rows());
  csv.close();
  std::remove(csv_path.c_str());

  const std::string bin_path = "test_matrix_out.bin";
  write_matrix_binary(A, bin_path, "p0", "interior");
  std::ifstream bin(bin_path, std::ios::binary);
  REQUIRE(bin.good());
  std::string header;
  std::getline(bin, header);
  const nlohmann::json meta = nlohmann::json::parse(header);
  CHECK(meta.at("rows") == A.rows());
  CHECK(meta.at("cols") == A.cols());
  CHECK(meta.at("space") == "p0");
  std::vector<double> data(A.size());
  bin.read(reinterpret_cast<char*>(data.data()),
           static_cast<std::streamsize>(sizeof(double) * data.size()));
  REQUIRE(bin.gcount() == static_cast<std::streamsize>(sizeof(double) * data.size()));
  bool same = true;
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) same = same && data[i * A.cols() + j] == A(i, j);
  CHECK(same);
  bin.close();
  std::remove(bin_path.c_str());
}

TEST_CASE("incompatible study configurations are rejected") {
  StudyConfig cfg;
  cfg.space = SpaceKind::pw_constant;
  cfg.norm = ErrorNorm::h_half;
  cfg.levels = 1;
  CHECK_THROWS_AS(convergence_study(cfg), std::invalid_argument);

  StudyConfig odd;
  odd.base_total = 63;
  odd.levels = 1;
  CHECK_THROWS_AS(convergence_study(odd), std::invalid_argument);
}
