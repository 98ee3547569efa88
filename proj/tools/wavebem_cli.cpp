#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "wavebem/wavebem.h"

namespace {

struct MeshDel {
  void operator()(wb_mesh* p) const { wb_mesh_free(p); }
};
struct SpaceDel {
  void operator()(wb_space* p) const { wb_space_free(p); }
};
struct SystemDel {
  void operator()(wb_system* p) const { wb_system_free(p); }
};
struct StudyDel {
  void operator()(wb_study* p) const { wb_study_free(p); }
};
using MeshPtr = std::unique_ptr<wb_mesh, MeshDel>;
using SpacePtr = std::unique_ptr<wb_space, SpaceDel>;
using SystemPtr = std::unique_ptr<wb_system, SystemDel>;
using StudyPtr = std::unique_ptr<wb_study, StudyDel>;

int die(wb_status status, const std::string& what) {
  std::fprintf(stderr, "error: %s: %s (%s)\n", what.c_str(),
               wb_last_error_message(), wb_status_message(status));
  return 1;
}

#define CHECKED(call)                                          \
  do {                                                         \
    if (wb_status status_ = (call); status_ != WB_OK)          \
      return die(status_, #call);                              \
  } while (0)

int family_id(const std::string& name) {
  if (name == "shifted_pair") return WB_FAMILY_SHIFTED_PAIR;
  if (name == "nonuniform") return WB_FAMILY_NONUNIFORM;
  return WB_FAMILY_UNIFORM;
}

struct CommonOpts {
  std::string problem = "a";
  std::string space = "p0";
  std::string mesh = "uniform";
  std::string sign = "interior";
  std::string norm = "auto";
  std::string output;
  std::string format = "csv";
  double L = 3.0, T = 6.0;
  int N = 64;
  int levels = 6;
  int modes = 0;
};

void add_domain_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--L", o.L, "Spatial interval length")->check(CLI::PositiveNumber);
  cmd->add_option("--T", o.T, "Time horizon")->check(CLI::PositiveNumber);
}

void add_problem_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--problem", o.problem, "Data set: smooth pulse (a) or rectified wave (b)")
      ->check(CLI::IsMember({"a", "b"}));
  cmd->add_option("--space", o.space, "Trial space: piecewise constant or linear")
      ->check(CLI::IsMember({"p0", "p1"}));
  cmd->add_option("--mesh", o.mesh, "Mesh family")
      ->check(CLI::IsMember({"uniform", "shifted_pair", "nonuniform"}));
  cmd->add_option("--sign", o.sign, "Interior (-1/2) or exterior (+1/2) equation")
      ->check(CLI::IsMember({"interior", "exterior"}));
  cmd->add_option("--modes", o.modes, "Spectral truncation, 0 = automatic");
}

void add_output_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--output", o.output,
                  "Output file, or directory for an auto-named file");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

// p0 defaults to the L2 error; p1 to the fractional norm.  The fractional
// norm is undefined on p0 and rejected.
bool resolve_norm(CommonOpts& o) {
  if (o.norm == "auto") o.norm = o.space == "p0" ? "l2" : "hhalf";
  if (o.norm == "hhalf" && o.space == "p0") {
    std::fprintf(stderr,
                 "error: the fractional norm needs --space p1 "
                 "(p0 solutions have no H^{1/2} trace)\n");
    return false;
  }
  return true;
}

std::string resolve_output(const std::string& out, const std::string& stem,
                           const std::string& ext) {
  namespace fs = std::filesystem;
  if (out.empty()) return out;
  if (out.back() == '/' || fs::is_directory(out))
    return (fs::path(out) / (stem + "." + ext)).string();
  return out;
}

int write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  f.close();
  if (!f) {
    std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
    return 1;
  }
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

std::string study_text(const wb_study* study, const std::string& format) {
  size_t needed = 0;
  auto fetch = format == "json" ? wb_study_json : wb_study_csv;
  fetch(study, nullptr, 0, &needed);
  std::string text(needed, '\0');
  fetch(study, text.data(), needed, &needed);
  text.resize(needed - 1);
  return text;
}

int emit_study(const wb_study* study, const CommonOpts& o, const std::string& stem) {
  const std::string path = resolve_output(o.output, stem, o.format);
  if (path.empty()) return 0;
  return write_file(path, study_text(study, o.format));
}

void print_convergence(const wb_study* study) {
  int rows = 0;
  wb_study_row_count(study, &rows);
  std::printf("%8s  %10s  %6s  %8s\n", "N", "error", "eoc", "kappa");
  for (int i = 0; i < rows; ++i) {
    double N, err, eoc, kappa;
    wb_study_cell(study, i, 0, &N);
    wb_study_cell(study, i, 1, &err);
    wb_study_cell(study, i, 2, &eoc);
    wb_study_cell(study, i, 3, &kappa);
    if (std::isnan(eoc))
      std::printf("%8d  %10.3E  %6s  %8.4g\n", static_cast<int>(N), err, "-", kappa);
    else
      std::printf("%8d  %10.3E  %6.2f  %8.4g\n", static_cast<int>(N), err, eoc, kappa);
  }
}

void print_infsup(const wb_study* study, const char* param_name) {
  int rows = 0;
  wb_study_row_count(study, &rows);
  std::printf("%10s  %8s  %10s\n", param_name, "dofs", "beta");
  for (int i = 0; i < rows; ++i) {
    double param, dofs, beta;
    wb_study_cell(study, i, 0, &param);
    wb_study_cell(study, i, 1, &dofs);
    wb_study_cell(study, i, 2, &beta);
    std::printf("%10.6g  %8d  %10.4g\n", param, static_cast<int>(dofs), beta);
  }
}

struct SolveOpts {
  CommonOpts common;
  std::string dump_matrix, dump_matrix_binary;
};

int run_solve(SolveOpts& o) {
  CommonOpts& c = o.common;
  if (!resolve_norm(c)) return 2;
  const int linear = c.space == "p1";
  const int exterior = c.sign == "exterior";

  wb_mesh* mesh_raw = nullptr;
  CHECKED(wb_mesh_create_family(family_id(c.mesh), c.L, c.T, c.N, &mesh_raw));
  MeshPtr mesh(mesh_raw);
  wb_space* space_raw = nullptr;
  CHECKED(wb_space_create(mesh.get(), linear, &space_raw));
  SpacePtr space(space_raw);
  wb_system* sys_raw = nullptr;
  CHECKED(wb_system_assemble(space.get(), exterior, c.problem[0], 0, &sys_raw));
  SystemPtr sys(sys_raw);

  int dofs = 0;
  CHECKED(wb_system_dim(sys.get(), &dofs));
  std::vector<double> z(dofs);
  CHECKED(wb_system_solve(sys.get(), z.data()));
  double kappa = 0.0;
  CHECKED(wb_system_condition_number(sys.get(), &kappa));

  double err = 0.0;
  if (c.norm == "l2")
    CHECKED(wb_l2_error(space.get(), z.data(), c.problem[0], &err));
  else
    CHECKED(wb_h_half_error(space.get(), z.data(), c.problem[0], c.modes, &err));

  std::printf("N=%d dofs=%d %s_error=%.3E kappa=%.4g\n", c.N, dofs,
              c.norm.c_str(), err, kappa);

  if (!o.dump_matrix.empty())
    CHECKED(wb_system_write_matrix_csv(sys.get(), o.dump_matrix.c_str()));
  if (!o.dump_matrix_binary.empty())
    CHECKED(wb_system_write_matrix_binary(sys.get(), o.dump_matrix_binary.c_str()));

  const std::string stem = "solve_" + c.problem + "_" + c.space + "_" + c.mesh +
                           "_N" + std::to_string(c.N);
  const std::string path = resolve_output(c.output, stem, c.format);
  if (path.empty()) return 0;
  if (c.format == "csv") {
    char line[128];
    std::snprintf(line, sizeof line, "%d,%.17g,,%.17g\n", c.N, err, kappa);
    return write_file(path, std::string("N,error,eoc,kappa\n") + line);
  }
  nlohmann::json j{{"schema", 1},
                   {"subcommand", "solve"},
                   {"problem", c.problem},
                   {"space", c.space},
                   {"family", c.mesh},
                   {"sign", c.sign},
                   {"N", c.N},
                   {"dofs", dofs},
                   {"error_norm", c.norm},
                   {"error", err},
                   {"kappa", kappa},
                   {"coefficients", z}};
  return write_file(path, j.dump(2) + "\n");
}

int run_convergence(CommonOpts& o) {
  if (!resolve_norm(o)) return 2;
  wb_study* raw = nullptr;
  CHECKED(wb_convergence_study(o.problem[0], o.space == "p1", family_id(o.mesh),
                               o.norm == "l2", o.sign == "exterior", o.L, o.T,
                               o.levels, o.N, o.modes, &raw));
  StudyPtr study(raw);
  print_convergence(study.get());
  return emit_study(study.get(), o,
                    "convergence_" + o.problem + "_" + o.space + "_" + o.mesh);
}

struct InfSupOpts {
  CommonOpts common;
  std::string mode = "refinement";
  double step = 3.0;
  double h0 = 3.0 / 16, hL = 3.0 / 16;
  int n_min = 2, n_max = 6;
};

int run_infsup(InfSupOpts& o) {
  CommonOpts& c = o.common;
  const int exterior = c.sign == "exterior";
  wb_study* raw = nullptr;
  if (o.mode == "refinement") {
    CHECKED(wb_infsup_refinement_study(family_id(c.mesh), c.L, c.T, c.N, c.levels,
                                       exterior, c.modes, &raw));
  } else {
    CHECKED(wb_infsup_horizon_study(c.L, o.step, o.h0, o.hL, o.n_min, o.n_max,
                                    exterior, c.modes, &raw));
  }
  StudyPtr study(raw);
  print_infsup(study.get(), o.mode == "refinement" ? "N" : "n");
  const std::string stem = o.mode == "refinement"
                               ? "infsup_refinement_" + c.mesh
                               : "infsup_horizon";
  return emit_study(study.get(), c, stem);
}

int run_condnum(CommonOpts& o) {
  wb_mesh* mesh_raw = nullptr;
  CHECKED(wb_mesh_create_family(family_id(o.mesh), o.L, o.T, o.N, &mesh_raw));
  MeshPtr mesh(mesh_raw);
  wb_space* space_raw = nullptr;
  CHECKED(wb_space_create(mesh.get(), o.space == "p1", &space_raw));
  SpacePtr space(space_raw);
  wb_system* sys_raw = nullptr;
  CHECKED(wb_system_assemble(space.get(), o.sign == "exterior", '\0', 0, &sys_raw));
  SystemPtr sys(sys_raw);
  double kappa = 0.0;
  CHECKED(wb_system_condition_number(sys.get(), &kappa));
  std::printf("%.4g\n", kappa);

  const std::string stem =
      "condnum_" + o.space + "_" + o.mesh + "_N" + std::to_string(o.N);
  const std::string path = resolve_output(o.output, stem, o.format);
  if (path.empty()) return 0;
  if (o.format == "csv") {
    char line[64];
    std::snprintf(line, sizeof line, "%d,%.17g\n", o.N, kappa);
    return write_file(path, std::string("N,kappa\n") + line);
  }
  nlohmann::json j{{"schema", 1},   {"subcommand", "condnum"},
                   {"space", o.space}, {"family", o.mesh},
                   {"sign", o.sign},   {"N", o.N},
                   {"kappa", kappa}};
  return write_file(path, j.dump(2) + "\n");
}

void report_check(const char* name, int passed, const char* detail, void*) {
  if (passed)
    std::printf("PASS %s\n", name);
  else
    std::printf("FAIL %s: %s\n", name, detail);
}

int run_verify(unsigned seed) {
  int failures = 0;
  CHECKED(wb_verify(seed, report_check, nullptr, &failures));
  std::printf("%s (%d failing)\n", failures == 0 ? "all checks passed" : "FAILURES",
              failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("WAVEBEM_THREADS"))
    wb_set_thread_count(std::atoi(env));

  CLI::App app{"Space-time Galerkin boundary elements for the 1d wave equation"};
  app.require_subcommand(1);

  SolveOpts solve_opts;
  auto* solve = app.add_subcommand(
      "solve", "Assemble and solve one system, report error and conditioning");
  add_problem_flags(solve, solve_opts.common);
  add_domain_flags(solve, solve_opts.common);
  add_output_flags(solve, solve_opts.common);
  solve->add_option("--N", solve_opts.common.N, "Total elements over both strands")
      ->check(CLI::PositiveNumber);
  solve->add_option("--norm", solve_opts.common.norm, "Error norm")
      ->check(CLI::IsMember({"auto", "l2", "hhalf"}));
  solve->add_option("--dump-matrix", solve_opts.dump_matrix,
                    "Write the system matrix as CSV");
  solve->add_option("--dump-matrix-binary", solve_opts.dump_matrix_binary,
                    "Write the system matrix in the binary layout");

  CommonOpts conv_opts;
  auto* conv = app.add_subcommand(
      "convergence", "Refinement study: error, observed order, conditioning");
  add_problem_flags(conv, conv_opts);
  add_domain_flags(conv, conv_opts);
  add_output_flags(conv, conv_opts);
  conv->add_option("--levels", conv_opts.levels, "Number of refinement levels")
      ->check(CLI::PositiveNumber);
  conv->add_option("--base-N", conv_opts.N, "Total elements on the coarsest level")
      ->check(CLI::PositiveNumber);
  conv->add_option("--norm", conv_opts.norm, "Error norm")
      ->check(CLI::IsMember({"auto", "l2", "hhalf"}));

  InfSupOpts is_opts;
  auto* infsup = app.add_subcommand(
      "infsup", "Discrete inf-sup constants under refinement or growing horizon");
  add_problem_flags(infsup, is_opts.common);
  add_domain_flags(infsup, is_opts.common);
  add_output_flags(infsup, is_opts.common);
  infsup->add_option("--mode", is_opts.mode, "Sweep refinement levels or the horizon")
      ->check(CLI::IsMember({"refinement", "horizon"}));
  infsup->add_option("--levels", is_opts.common.levels, "Refinement levels")
      ->check(CLI::PositiveNumber);
  infsup->add_option("--base-N", is_opts.common.N,
                     "Total elements on the coarsest level")
      ->check(CLI::PositiveNumber);
  infsup->add_option("--step", is_opts.step, "Horizon increment per n")
      ->check(CLI::PositiveNumber);
  infsup->add_option("--h0", is_opts.h0, "Left strand element width (horizon mode)")
      ->check(CLI::PositiveNumber);
  infsup->add_option("--hL", is_opts.hL, "Right strand element width (horizon mode)")
      ->check(CLI::PositiveNumber);
  infsup->add_option("--n-min", is_opts.n_min, "Smallest horizon multiple");
  infsup->add_option("--n-max", is_opts.n_max, "Largest horizon multiple");

  CommonOpts cond_opts;
  auto* condnum = app.add_subcommand(
      "condnum", "Spectral condition number of the assembled matrix");
  add_problem_flags(condnum, cond_opts);
  add_domain_flags(condnum, cond_opts);
  add_output_flags(condnum, cond_opts);
  condnum->add_option("--N", cond_opts.N, "Total elements over both strands")
      ->check(CLI::PositiveNumber);

  unsigned seed = 7;
  auto* verify = app.add_subcommand("verify", "Run the full invariant suite");
  verify->add_option("--seed", seed, "Seed for the randomized property checks");

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) return run_solve(solve_opts);
  if (conv->parsed()) return run_convergence(conv_opts);
  if (infsup->parsed()) return run_infsup(is_opts);
  if (condnum->parsed()) return run_condnum(cond_opts);
  return run_verify(seed);
}
