#pragma once

#include <Eigen/Core>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "wavebem/basis.hpp"
#include "wavebem/operator.hpp"

namespace wavebem {

// A Dirichlet data set together with the exact density of the interior
// second-kind equation and the locations where either is not smooth.
struct ProblemSpec {
  char id = 'a';
  double L = 3.0, T = 6.0;
  std::function<double(double)> g0, gL;
  std::function<double(double)> density0, densityL;
  std::vector<double> data_kinks_left, data_kinks_right;
  std::vector<double> density_kinks_left, density_kinks_right;
};

// 'a': a compactly supported polynomial pulse travelling across the strip.
// 'b': the rectified travelling wave |sin(pi (x - t))| / 2.
// The data must be compatible with a density supported on the left strand
// (checked by sampling; PreconditionError otherwise).
ProblemSpec make_problem(char id, double L, double T);

// L2 size of the defect when the exact density is inserted into the interior
// equation; a roundoff-level value certifies the closed forms.
double exact_density_residual(const ProblemSpec& p, int gauss_order = 8);

// L2 distance between the discrete solution and the exact density.
double l2_error(const DiscreteSpace& space, const Eigen::VectorXd& coeffs,
                const ProblemSpec& p, int gauss_order = 8);

// Fractional-order error: the exact density is interpolated on the
// once-refined mesh, the discrete solution is prolongated there, and the
// difference is measured in the order-1/2 norm. modes <= 0 picks the default
// count for the refined space.
double h_half_error(const DiscreteSpace& space, const Eigen::VectorXd& coeffs,
                    const ProblemSpec& p, int modes = 0);

enum class MeshFamily { uniform, shifted_pair, nonuniform_initial };
enum class ErrorNorm { l2, h_half };

struct StudyConfig {
  char problem = 'a';
  SpaceKind space = SpaceKind::pw_linear_zero_init;
  MeshFamily family = MeshFamily::uniform;
  ErrorNorm norm = ErrorNorm::h_half;
  Sign sign = Sign::interior;
  double L = 3.0, T = 6.0;
  int levels = 6;
  int base_total = 64;  // total element count of the first row
  int modes = 0;        // 0 = automatic
  int quad_order = 8;
};

struct ConvergenceRecord {
  int N = 0;  // total number of elements over both strands
  double error = 0.0;
  double eoc = std::numeric_limits<double>::quiet_NaN();
  double kappa = 0.0;
};

// Mesh of the requested family with the given total element count.
LateralMesh study_mesh(MeshFamily family, double L, double T, int total_elems);

// One solve per refinement level: error, observed order, condition number.
std::vector<ConvergenceRecord> convergence_study(const StudyConfig& cfg);

// Discrete inf-sup constant of the operator on the zero-initial linear space,
// fractional norm on the trial side and its dual on the test side.
double infsup_for_mesh(const LateralMesh& mesh, Sign sign, int modes = 0);

struct InfSupRow {
  double param = 0.0;  // refinement level's element count, or the horizon index
  int dofs = 0;
  double beta = 0.0;
};

std::vector<InfSupRow> infsup_refinement_study(MeshFamily family, double L, double T,
                                               int base_total, int levels, Sign sign,
                                               int modes = 0);

// Horizon T = n * step for n in [n_min, n_max], element sizes h0 and hL held
// fixed per strand.
std::vector<InfSupRow> infsup_horizon_study(double L, double step, double h0, double hL,
                                            int n_min, int n_max, Sign sign,
                                            int modes = 0);

// Smallest Rayleigh quotient of the symmetrized operator in L2.
double ellipticity_min(const LateralMesh& mesh, SpaceKind kind, Sign sign);

std::string records_to_csv(const std::vector<ConvergenceRecord>& rows);
std::string records_to_json(const std::vector<ConvergenceRecord>& rows,
                            const std::string& problem, const std::string& space,
                            const std::string& family, const std::string& norm);
std::string infsup_to_csv(const std::vector<InfSupRow>& rows);
std::string infsup_to_json(const std::vector<InfSupRow>& rows, const std::string& mode);

void write_text_file(const std::string& path, const std::string& text);
void write_matrix_csv(const Eigen::MatrixXd& A, const std::string& path);
// Compact layout: one JSON header line (dims, space, sign), then the entries
// row-major as native 8-byte floats.
void write_matrix_binary(const Eigen::MatrixXd& A, const std::string& path,
                         const std::string& space_name, const std::string& sign_name);

}  // namespace wavebem
