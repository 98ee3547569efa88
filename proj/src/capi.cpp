#include "wavebem/wavebem.h"

#include <Eigen/Core>
#include <cstring>
#include <ios>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavebem/errors.hpp"
#include "wavebem/experiments.hpp"
#include "wavebem/mesh.hpp"
#include "wavebem/operator.hpp"
#include "wavebem/solver.hpp"
#include "wavebem/verify.hpp"

using namespace wavebem;

struct wb_mesh {
  LateralMesh m;
};

struct wb_space {
  DiscreteSpace s;
};

struct wb_system {
  DiscreteSpace space;
  Sign sign = Sign::interior;
  Eigen::MatrixXd A;
  Eigen::VectorXd rhs;
};

struct wb_study {
  std::vector<ConvergenceRecord> conv;
  std::vector<InfSupRow> infsup;
  bool is_convergence = false;
  std::string csv, json;
};

namespace {

thread_local std::string g_last_error;

wb_status fail(wb_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <class F>
wb_status guarded(F&& body) noexcept {
  try {
    body();
    return WB_OK;
  } catch (const PreconditionError& e) {
    return fail(WB_ERR_PRECONDITION, e.what());
  } catch (const SingularMatrixError& e) {
    return fail(WB_ERR_SINGULAR_MATRIX, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(WB_ERR_IO, e.what());
  } catch (const std::domain_error& e) {
    return fail(WB_ERR_OUT_OF_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(WB_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(WB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(WB_ERR_INTERNAL, "unknown failure");
  }
}

bool all_set(const void* p) { return p != nullptr; }

template <class... Rest>
bool all_set(const void* p, Rest... rest) {
  return p != nullptr && all_set(rest...);
}

template <class... Ptr>
wb_status check_args(Ptr... ptrs) {
  if (!all_set(ptrs...)) return fail(WB_ERR_INVALID_ARGUMENT, "null argument");
  return WB_OK;
}

MeshFamily to_family(int family) {
  switch (family) {
    case WB_FAMILY_UNIFORM:
      return MeshFamily::uniform;
    case WB_FAMILY_SHIFTED_PAIR:
      return MeshFamily::shifted_pair;
    case WB_FAMILY_NONUNIFORM:
      return MeshFamily::nonuniform_initial;
    default:
      throw std::invalid_argument("unknown mesh family " + std::to_string(family));
  }
}

const char* family_name(int family) {
  switch (family) {
    case WB_FAMILY_UNIFORM:
      return "uniform";
    case WB_FAMILY_SHIFTED_PAIR:
      return "shifted_pair";
    default:
      return "nonuniform";
  }
}

void copy_text(const std::string& text, char* buf, size_t cap, size_t* needed) {
  *needed = text.size() + 1;
  if (buf != nullptr && cap >= *needed) std::memcpy(buf, text.c_str(), *needed);
}

}  // namespace

extern "C" {

const char* wb_status_message(wb_status status) {
  switch (status) {
    case WB_OK:
      return "ok";
    case WB_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case WB_ERR_PRECONDITION:
      return "precondition violated";
    case WB_ERR_SINGULAR_MATRIX:
      return "singular or ill-conditioned matrix";
    case WB_ERR_OUT_OF_DOMAIN:
      return "evaluation outside the domain";
    case WB_ERR_IO:
      return "file I/O failure";
    default:
      return "internal error";
  }
}

const char* wb_last_error_message(void) { return g_last_error.c_str(); }

void wb_set_thread_count(int n) { Eigen::setNbThreads(n > 0 ? n : 0); }

wb_status wb_mesh_create_uniform(double L, double T, int elements_per_strand,
                                 wb_mesh** out) {
  if (wb_status s = check_args(out); s != WB_OK) return s;
  return guarded([&] { *out = new wb_mesh{uniform_mesh(L, T, elements_per_strand)}; });
}

wb_status wb_mesh_create_shifted_pair(double L, int slices, wb_mesh** out) {
  if (wb_status s = check_args(out); s != WB_OK) return s;
  return guarded([&] {
    *out = new wb_mesh{shifted_pair_mesh(L, slices, {L / 3}, {2 * L / 3})};
  });
}

wb_status wb_mesh_create_nonuniform(wb_mesh** out) {
  if (wb_status s = check_args(out); s != WB_OK) return s;
  return guarded([&] { *out = new wb_mesh{nonuniform_initial_mesh()}; });
}

wb_status wb_mesh_create_family(int family, double L, double T,
                                int total_elements, wb_mesh** out) {
  if (wb_status s = check_args(out); s != WB_OK) return s;
  return guarded([&] {
    *out = new wb_mesh{study_mesh(to_family(family), L, T, total_elements)};
  });
}

wb_status wb_mesh_refine(const wb_mesh* mesh, wb_mesh** out) {
  if (wb_status s = check_args(mesh, out); s != WB_OK) return s;
  return guarded([&] { *out = new wb_mesh{refine(mesh->m)}; });
}

wb_status wb_mesh_slice_count(const wb_mesh* mesh, int* out) {
  if (wb_status s = check_args(mesh, out); s != WB_OK) return s;
  return guarded([&] { *out = slice_count(mesh->m.L, mesh->m.T).n; });
}

wb_status wb_mesh_element_count(const wb_mesh* mesh, int* out) {
  if (wb_status s = check_args(mesh, out); s != WB_OK) return s;
  return guarded([&] { *out = mesh->m.total_elements(); });
}

wb_status wb_mesh_satisfies_slice_shift(const wb_mesh* mesh, double rel_tol,
                                        int* out) {
  if (wb_status s = check_args(mesh, out); s != WB_OK) return s;
  return guarded([&] { *out = satisfies_slice_shift(mesh->m, rel_tol) ? 1 : 0; });
}

wb_status wb_mesh_to_json(const wb_mesh* mesh, char* buf, size_t cap,
                          size_t* needed) {
  if (wb_status s = check_args(mesh, needed); s != WB_OK) return s;
  return guarded([&] { copy_text(mesh_to_json(mesh->m), buf, cap, needed); });
}

wb_status wb_mesh_from_json(const char* json, wb_mesh** out) {
  if (wb_status s = check_args(json, out); s != WB_OK) return s;
  return guarded([&] { *out = new wb_mesh{mesh_from_json(json)}; });
}

void wb_mesh_free(wb_mesh* mesh) { delete mesh; }

wb_status wb_space_create(const wb_mesh* mesh, int piecewise_linear,
                          wb_space** out) {
  if (wb_status s = check_args(mesh, out); s != WB_OK) return s;
  return guarded([&] {
    const SpaceKind kind =
        piecewise_linear ? SpaceKind::pw_linear_zero_init : SpaceKind::pw_constant;
    *out = new wb_space{DiscreteSpace{kind, mesh->m}};
  });
}

wb_status wb_space_dof_count(const wb_space* space, int* out) {
  if (wb_status s = check_args(space, out); s != WB_OK) return s;
  return guarded([&] { *out = space->s.dof_count(); });
}

void wb_space_free(wb_space* space) { delete space; }

wb_status wb_system_assemble(const wb_space* space, int exterior, char problem,
                             int quad_order, wb_system** out) {
  if (wb_status s = check_args(space, out); s != WB_OK) return s;
  return guarded([&] {
    auto sys = new wb_system;
    sys->space = space->s;
    sys->sign = exterior ? Sign::exterior : Sign::interior;
    try {
      sys->A = assemble_matrix(sys->space, sys->sign);
      if (problem == '\0') {
        sys->rhs = Eigen::VectorXd::Zero(sys->space.dof_count());
      } else {
        const ProblemSpec p =
            make_problem(problem, sys->space.mesh.L, sys->space.mesh.T);
        QuadratureSpec quad;
        if (quad_order > 0) quad.gauss_order = quad_order;
        quad.kinks_left = p.data_kinks_left;
        quad.kinks_right = p.data_kinks_right;
        sys->rhs = assemble_rhs(sys->space, p.g0, p.gL, quad);
      }
    } catch (...) {
      delete sys;
      throw;
    }
    *out = sys;
  });
}

wb_status wb_system_dim(const wb_system* system, int* out) {
  if (wb_status s = check_args(system, out); s != WB_OK) return s;
  *out = static_cast<int>(system->A.rows());
  return WB_OK;
}

wb_status wb_system_copy_matrix(const wb_system* system, double* out) {
  if (wb_status s = check_args(system, out); s != WB_OK) return s;
  return guarded([&] {
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        out, system->A.rows(), system->A.cols()) = system->A;
  });
}

wb_status wb_system_copy_rhs(const wb_system* system, double* out) {
  if (wb_status s = check_args(system, out); s != WB_OK) return s;
  return guarded([&] {
    Eigen::Map<Eigen::VectorXd>(out, system->rhs.size()) = system->rhs;
  });
}

wb_status wb_system_solve(const wb_system* system, double* out) {
  if (wb_status s = check_args(system, out); s != WB_OK) return s;
  return guarded([&] {
    Eigen::Map<Eigen::VectorXd>(out, system->rhs.size()) =
        solve_dense(system->A, system->rhs);
  });
}

wb_status wb_system_condition_number(const wb_system* system, double* out) {
  if (wb_status s = check_args(system, out); s != WB_OK) return s;
  return guarded([&] { *out = condition_number_2(system->A); });
}

wb_status wb_system_write_matrix_csv(const wb_system* system, const char* path) {
  if (wb_status s = check_args(system, path); s != WB_OK) return s;
  return guarded([&] { write_matrix_csv(system->A, path); });
}

wb_status wb_system_write_matrix_binary(const wb_system* system,
                                        const char* path) {
  if (wb_status s = check_args(system, path); s != WB_OK) return s;
  return guarded([&] {
    const char* space = system->space.kind == SpaceKind::pw_constant ? "p0" : "p1";
    const char* sign = system->sign == Sign::interior ? "interior" : "exterior";
    write_matrix_binary(system->A, path, space, sign);
  });
}

void wb_system_free(wb_system* system) { delete system; }

wb_status wb_l2_error(const wb_space* space, const double* coeffs, char problem,
                      double* out) {
  if (wb_status s = check_args(space, coeffs, out); s != WB_OK) return s;
  return guarded([&] {
    const ProblemSpec p = make_problem(problem, space->s.mesh.L, space->s.mesh.T);
    const Eigen::Map<const Eigen::VectorXd> c(coeffs, space->s.dof_count());
    *out = l2_error(space->s, c, p);
  });
}

wb_status wb_h_half_error(const wb_space* space, const double* coeffs,
                          char problem, int modes, double* out) {
  if (wb_status s = check_args(space, coeffs, out); s != WB_OK) return s;
  return guarded([&] {
    const ProblemSpec p = make_problem(problem, space->s.mesh.L, space->s.mesh.T);
    const Eigen::Map<const Eigen::VectorXd> c(coeffs, space->s.dof_count());
    *out = h_half_error(space->s, c, p, modes);
  });
}

wb_status wb_exact_density_residual(char problem, double L, double T,
                                    double* out) {
  if (wb_status s = check_args(out); s != WB_OK) return s;
  return guarded([&] { *out = exact_density_residual(make_problem(problem, L, T)); });
}

wb_status wb_infsup_for_mesh(const wb_mesh* mesh, int exterior, int modes,
                             double* out) {
  if (wb_status s = check_args(mesh, out); s != WB_OK) return s;
  return guarded([&] {
    *out = infsup_for_mesh(mesh->m, exterior ? Sign::exterior : Sign::interior,
                           modes);
  });
}

wb_status wb_ellipticity_min(const wb_mesh* mesh, int piecewise_linear,
                             int exterior, double* out) {
  if (wb_status s = check_args(mesh, out); s != WB_OK) return s;
  return guarded([&] {
    const SpaceKind kind =
        piecewise_linear ? SpaceKind::pw_linear_zero_init : SpaceKind::pw_constant;
    *out = ellipticity_min(mesh->m, kind,
                           exterior ? Sign::exterior : Sign::interior);
  });
}

wb_status wb_convergence_study(char problem, int piecewise_linear, int family,
                               int use_l2_norm, int exterior, double L, double T,
                               int levels, int base_total, int modes,
                               wb_study** out) {
  if (wb_status s = check_args(out); s != WB_OK) return s;
  return guarded([&] {
    StudyConfig cfg;
    cfg.problem = problem;
    cfg.space =
        piecewise_linear ? SpaceKind::pw_linear_zero_init : SpaceKind::pw_constant;
    cfg.family = to_family(family);
    cfg.norm = use_l2_norm ? ErrorNorm::l2 : ErrorNorm::h_half;
    cfg.sign = exterior ? Sign::exterior : Sign::interior;
    cfg.L = L;
    cfg.T = T;
    cfg.levels = levels;
    cfg.base_total = base_total;
    cfg.modes = modes;
    if (cfg.space == SpaceKind::pw_constant && cfg.norm == ErrorNorm::h_half)
      throw std::invalid_argument(
          "the fractional norm needs the piecewise linear space");
    auto study = new wb_study;
    try {
      study->conv = convergence_study(cfg);
      study->is_convergence = true;
      study->csv = records_to_csv(study->conv);
      study->json = records_to_json(study->conv, std::string(1, problem),
                                    piecewise_linear ? "p1" : "p0",
                                    family_name(family),
                                    use_l2_norm ? "l2" : "hhalf");
    } catch (...) {
      delete study;
      throw;
    }
    *out = study;
  });
}

wb_status wb_infsup_refinement_study(int family, double L, double T,
                                     int base_total, int levels, int exterior,
                                     int modes, wb_study** out) {
  if (wb_status s = check_args(out); s != WB_OK) return s;
  return guarded([&] {
    auto study = new wb_study;
    try {
      study->infsup = infsup_refinement_study(
          to_family(family), L, T, base_total, levels,
          exterior ? Sign::exterior : Sign::interior, modes);
      study->csv = infsup_to_csv(study->infsup);
      study->json = infsup_to_json(study->infsup, "refinement");
    } catch (...) {
      delete study;
      throw;
    }
    *out = study;
  });
}

wb_status wb_infsup_horizon_study(double L, double step, double h0, double hL,
                                  int n_min, int n_max, int exterior, int modes,
                                  wb_study** out) {
  if (wb_status s = check_args(out); s != WB_OK) return s;
  return guarded([&] {
    auto study = new wb_study;
    try {
      study->infsup =
          infsup_horizon_study(L, step, h0, hL, n_min, n_max,
                               exterior ? Sign::exterior : Sign::interior, modes);
      study->csv = infsup_to_csv(study->infsup);
      study->json = infsup_to_json(study->infsup, "horizon");
    } catch (...) {
      delete study;
      throw;
    }
    *out = study;
  });
}

wb_status wb_study_row_count(const wb_study* study, int* out) {
  if (wb_status s = check_args(study, out); s != WB_OK) return s;
  *out = static_cast<int>(study->is_convergence ? study->conv.size()
                                                : study->infsup.size());
  return WB_OK;
}

wb_status wb_study_col_count(const wb_study* study, int* out) {
  if (wb_status s = check_args(study, out); s != WB_OK) return s;
  *out = study->is_convergence ? 4 : 3;
  return WB_OK;
}

wb_status wb_study_cell(const wb_study* study, int row, int col, double* out) {
  if (wb_status s = check_args(study, out); s != WB_OK) return s;
  return guarded([&] {
    int rows = 0, cols = 0;
    wb_study_row_count(study, &rows);
    wb_study_col_count(study, &cols);
    if (row < 0 || row >= rows || col < 0 || col >= cols)
      throw std::invalid_argument("study cell out of range");
    if (study->is_convergence) {
      const ConvergenceRecord& r = study->conv[row];
      const double cells[4] = {static_cast<double>(r.N), r.error, r.eoc, r.kappa};
      *out = cells[col];
    } else {
      const InfSupRow& r = study->infsup[row];
      const double cells[3] = {r.param, static_cast<double>(r.dofs), r.beta};
      *out = cells[col];
    }
  });
}

wb_status wb_study_csv(const wb_study* study, char* buf, size_t cap,
                       size_t* needed) {
  if (wb_status s = check_args(study, needed); s != WB_OK) return s;
  copy_text(study->csv, buf, cap, needed);
  return WB_OK;
}

wb_status wb_study_json(const wb_study* study, char* buf, size_t cap,
                        size_t* needed) {
  if (wb_status s = check_args(study, needed); s != WB_OK) return s;
  copy_text(study->json, buf, cap, needed);
  return WB_OK;
}

void wb_study_free(wb_study* study) { delete study; }

wb_status wb_verify(unsigned seed, wb_report_fn report, void* user,
                    int* failures) {
  if (wb_status s = check_args(failures); s != WB_OK) return s;
  return guarded([&] {
    int failed = 0;
    for (const CheckResult& r : run_verification(seed)) {
      if (!r.passed) ++failed;
      if (report != nullptr)
        report(r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), user);
    }
    *failures = failed;
  });
}

}  // extern "C"
