#ifndef WAVEBEM_H
#define WAVEBEM_H

/* C interface to the space-time boundary element solver.
 *
 * All functions return wb_status; WB_OK is 0.  On failure the thread-local
 * message from wb_last_error_message() describes what went wrong.  Handles
 * are opaque and freed with the matching *_free function; freeing NULL is a
 * no-op.  Functions that produce text use a two-call pattern: pass NULL/0 to
 * learn the required buffer size (including the terminating NUL) via *needed,
 * then call again with a large enough buffer.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wb_status {
  WB_OK = 0,
  WB_ERR_INVALID_ARGUMENT = 1,
  WB_ERR_PRECONDITION = 2,
  WB_ERR_SINGULAR_MATRIX = 3,
  WB_ERR_OUT_OF_DOMAIN = 4,
  WB_ERR_IO = 5,
  WB_ERR_INTERNAL = 6
} wb_status;

/* Static description of a status code. */
const char* wb_status_message(wb_status status);

/* Message for the most recent failure on the calling thread. */
const char* wb_last_error_message(void);

/* Upper bound on threads used by dense linear algebra; n <= 0 resets to the
 * library default. */
void wb_set_thread_count(int n);

typedef struct wb_mesh wb_mesh;
typedef struct wb_space wb_space;
typedef struct wb_system wb_system;
typedef struct wb_study wb_study;

/* Mesh families for wb_mesh_create_family. */
enum {
  WB_FAMILY_UNIFORM = 0,
  WB_FAMILY_SHIFTED_PAIR = 1,
  WB_FAMILY_NONUNIFORM = 2
};

/* Uniform mesh with elements_per_strand elements on each boundary strand. */
wb_status wb_mesh_create_uniform(double L, double T, int elements_per_strand,
                                 wb_mesh** out);

/* Mesh of `slices` slabs of width L whose right strand is the left strand
 * shifted by L, seeded with one interior node per slab on each strand. */
wb_status wb_mesh_create_shifted_pair(double L, int slices, wb_mesh** out);

/* The fixed non-smooth starting mesh (L = 3, T = 2*pi, 40/24 elements). */
wb_status wb_mesh_create_nonuniform(wb_mesh** out);

/* Family member with total_elements elements across both strands, as used by
 * the refinement studies.  family is one of the WB_FAMILY_* values. */
wb_status wb_mesh_create_family(int family, double L, double T,
                                int total_elements, wb_mesh** out);

wb_status wb_mesh_refine(const wb_mesh* mesh, wb_mesh** out);
wb_status wb_mesh_slice_count(const wb_mesh* mesh, int* out);
wb_status wb_mesh_element_count(const wb_mesh* mesh, int* out);

/* *out = 1 when every breakpoint below T - L reappears shifted by L on the
 * other strand and T is a multiple of L, else 0. */
wb_status wb_mesh_satisfies_slice_shift(const wb_mesh* mesh, double rel_tol,
                                        int* out);

wb_status wb_mesh_to_json(const wb_mesh* mesh, char* buf, size_t cap,
                          size_t* needed);
wb_status wb_mesh_from_json(const char* json, wb_mesh** out);
void wb_mesh_free(wb_mesh* mesh);

/* piecewise_linear = 0: piecewise constants; 1: continuous piecewise linears
 * vanishing at t = 0.  The space keeps its own copy of the mesh. */
wb_status wb_space_create(const wb_mesh* mesh, int piecewise_linear,
                          wb_space** out);
wb_status wb_space_dof_count(const wb_space* space, int* out);
void wb_space_free(wb_space* space);

/* Galerkin system for (sign/2 Id + K) z = g.  exterior = 0 takes the interior
 * sign (-1/2), nonzero the exterior sign (+1/2).  problem is 'a' or 'b' for
 * the two reference data sets, or '\0' for a zero right-hand side (matrix
 * studies).  quad_order <= 0 selects the default Gauss order. */
wb_status wb_system_assemble(const wb_space* space, int exterior, char problem,
                             int quad_order, wb_system** out);
wb_status wb_system_dim(const wb_system* system, int* out);

/* Copies the dim*dim matrix in row-major order. */
wb_status wb_system_copy_matrix(const wb_system* system, double* out);
wb_status wb_system_copy_rhs(const wb_system* system, double* out);

/* LU solve with residual check; out receives dim coefficients. */
wb_status wb_system_solve(const wb_system* system, double* out);
wb_status wb_system_condition_number(const wb_system* system, double* out);
wb_status wb_system_write_matrix_csv(const wb_system* system, const char* path);
wb_status wb_system_write_matrix_binary(const wb_system* system,
                                        const char* path);
void wb_system_free(wb_system* system);

/* L2(Sigma) distance between the coefficient expansion and the closed-form
 * density of the given problem. */
wb_status wb_l2_error(const wb_space* space, const double* coeffs, char problem,
                      double* out);

/* H^{1/2}(Sigma) distance, measured against the nodal interpolant of the
 * closed-form density on the once-refined mesh.  modes <= 0 selects the
 * default truncation.  Requires a piecewise linear space. */
wb_status wb_h_half_error(const wb_space* space, const double* coeffs,
                          char problem, int modes, double* out);

/* L2 defect of the closed-form density in the interior equation; small values
 * certify the analytic solution used by the error measures. */
wb_status wb_exact_density_residual(char problem, double L, double T,
                                    double* out);

/* Discrete inf-sup constant of the system on this mesh in the
 * H^{1/2} x dual pairing (piecewise linear trial and test space). */
wb_status wb_infsup_for_mesh(const wb_mesh* mesh, int exterior, int modes,
                             double* out);

/* Largest c with |w'Aw| >= c w'Mw over the discrete space, 0 when the
 * symmetric part is indefinite. */
wb_status wb_ellipticity_min(const wb_mesh* mesh, int piecewise_linear,
                             int exterior, double* out);

/* Refinement study: rows of (N, error, eoc, kappa) over `levels` meshes
 * starting at base_total total elements.  use_l2_norm selects the L2 error;
 * otherwise the H^{1/2} error (piecewise linear only). */
wb_status wb_convergence_study(char problem, int piecewise_linear, int family,
                               int use_l2_norm, int exterior, double L, double T,
                               int levels, int base_total, int modes,
                               wb_study** out);

/* Inf-sup constants under mesh refinement at fixed T; rows of
 * (level, dofs, beta). */
wb_status wb_infsup_refinement_study(int family, double L, double T,
                                     int base_total, int levels, int exterior,
                                     int modes, wb_study** out);

/* Inf-sup constants for growing T = n*step at fixed element widths h0, hL on
 * the two strands; rows of (n, dofs, beta) for n in [n_min, n_max]. */
wb_status wb_infsup_horizon_study(double L, double step, double h0, double hL,
                                  int n_min, int n_max, int exterior, int modes,
                                  wb_study** out);

wb_status wb_study_row_count(const wb_study* study, int* out);
wb_status wb_study_col_count(const wb_study* study, int* out);

/* Cell value; eoc of the first row reads as NaN. */
wb_status wb_study_cell(const wb_study* study, int row, int col, double* out);

wb_status wb_study_csv(const wb_study* study, char* buf, size_t cap,
                       size_t* needed);
wb_status wb_study_json(const wb_study* study, char* buf, size_t cap,
                        size_t* needed);
void wb_study_free(wb_study* study);

/* One line per property check; detail is empty for passes.  user is handed
 * through untouched. */
typedef void (*wb_report_fn)(const char* name, int passed, const char* detail,
                             void* user);

/* Runs the full invariant suite; *failures receives the number of failing
 * checks.  report may be NULL. */
wb_status wb_verify(unsigned seed, wb_report_fn report, void* user,
                    int* failures);

#ifdef __cplusplus
}
#endif

#endif
