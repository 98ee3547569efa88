#include "wavebem/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "wavebem/errors.hpp"
#include "wavebem/quadrature.hpp"
#include "wavebem/solver.hpp"
#include "wavebem/spectral.hpp"

namespace wavebem {

namespace {

constexpr double pi = std::numbers::pi;

// offset + integers, intersected with (0, T)
std::vector<double> integer_grid(double offset, double T) {
  std::vector<double> out;
  double t = offset - std::floor(offset);
  if (t == 0.0) t = 1.0;
  for (; t < T; t += 1.0) out.push_back(t);
  return out;
}

double pulse(double s) {  // supported on [0, 2], triple zeros at both ends
  if (s <= 0.0 || s >= 2.0) return 0.0;
  const double a = s - 2.0;
  return 0.5 * a * a * a * s * s * s;
}

std::vector<double> uniform_breaks(double T, int N) {
  std::vector<double> b(N + 1);
  for (int i = 0; i <= N; ++i) b[i] = (T * i) / N;
  b.front() = 0.0;
  b.back() = T;
  return b;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ProblemSpec make_problem(char id, double L, double T) {
  if (!(L > 0.0) || !(T > 0.0))
    throw std::invalid_argument("make_problem: L and T must be positive");
  ProblemSpec p;
  p.id = id;
  p.L = L;
  p.T = T;
  if (id == 'a') {
    p.g0 = [](double t) { return pulse(t); };
    p.gL = [L](double t) { return pulse(t - L); };
    p.density0 = [](double t) { return -2.0 * pulse(t); };
    p.densityL = [](double) { return 0.0; };
    p.data_kinks_left = {2.0};
    p.data_kinks_right = {L, L + 2.0};
    p.density_kinks_left = {2.0};
  } else if (id == 'b') {
    p.g0 = [](double t) { return 0.5 * std::abs(std::sin(pi * t)); };
    p.gL = [L](double t) {
      return t <= L ? 0.0 : 0.5 * std::abs(std::sin(pi * (t - L)));
    };
    p.density0 = [](double t) { return -std::abs(std::sin(pi * t)); };
    p.densityL = [](double) { return 0.0; };
    p.data_kinks_left = integer_grid(0.0, T);
    p.data_kinks_right = integer_grid(L, T);
    p.density_kinks_left = integer_grid(0.0, T);
  } else {
    throw std::invalid_argument("make_problem: unknown problem id");
  }
  // The density lives on the left strand only when the data on the right
  // strand is the left data delayed by one crossing: g0(s) = gL(s + L).
  if (T > L) {
    double scale = 1.0, worst = 0.0;
    const int samples = 257;
    for (int i = 0; i < samples; ++i) {
      const double s = (T - L) * i / (samples - 1);
      const double v0 = p.g0(s), vL = p.gL(s + L);
      scale = std::max({scale, std::abs(v0), std::abs(vL)});
      worst = std::max(worst, std::abs(v0 - vL));
    }
    if (worst > 1e-12 * scale)
      throw PreconditionError("make_problem: data is not compatible with a one-sided density");
  }
  return p;
}

double exact_density_residual(const ProblemSpec& p, int gauss_order) {
  const double L = p.L;
  auto r0 = [&](double t) {
    double v = -0.5 * p.density0(t) - p.g0(t);
    if (t >= L) v -= 0.5 * p.densityL(t - L);
    return v;
  };
  auto rL = [&](double t) {
    double v = -0.5 * p.densityL(t) - p.gL(t);
    if (t >= L) v -= 0.5 * p.density0(t - L);
    return v;
  };
  std::vector<double> kinks_left = p.data_kinks_left, kinks_right = p.data_kinks_right;
  for (double k : p.density_kinks_left) {
    kinks_left.push_back(k);
    kinks_right.push_back(k + L);
  }
  for (double k : p.density_kinks_right) {
    kinks_right.push_back(k);
    kinks_left.push_back(k + L);
  }
  kinks_left.push_back(L);
  kinks_right.push_back(L);
  auto sq = [](auto f) {
    return [f](double t) {
      const double v = f(t);
      return v * v;
    };
  };
  const double acc = gauss_integrate_split(sq(r0), 0.0, p.T, kinks_left, gauss_order) +
                     gauss_integrate_split(sq(rL), 0.0, p.T, kinks_right, gauss_order);
  return std::sqrt(acc);
}

double l2_error(const DiscreteSpace& space, const Eigen::VectorXd& coeffs,
                const ProblemSpec& p, int gauss_order) {
  const TraceFunction zh = to_trace(space, coeffs);
  double acc = 0.0;
  for (Strand s : {Strand::left, Strand::right}) {
    const auto& breaks = space.strand_breaks(s);
    const StrandFunction& f = zh.strand(s);
    const auto& zd = s == Strand::left ? p.density0 : p.densityL;
    const auto& kinks = s == Strand::left ? p.density_kinks_left : p.density_kinks_right;
    for (std::size_t e = 0; e + 1 < breaks.size(); ++e) {
      const double a = breaks[e], w = breaks[e + 1] - a;
      const double lo = f.lo[e], slope = (f.hi[e] - f.lo[e]) / w;
      auto err2 = [&](double t) {
        const double d = zd(t) - (lo + slope * (t - a));
        return d * d;
      };
      acc += gauss_integrate_split(err2, a, breaks[e + 1], kinks, gauss_order);
    }
  }
  return std::sqrt(acc);
}

double h_half_error(const DiscreteSpace& space, const Eigen::VectorXd& coeffs,
                    const ProblemSpec& p, int modes) {
  if (space.kind != SpaceKind::pw_linear_zero_init)
    throw std::invalid_argument("h_half_error: needs the zero-initial linear space");
  const DiscreteSpace rspace{space.kind, refine(space.mesh)};
  const Eigen::VectorXd interp = nodal_interpolate(rspace, p.density0, p.densityL);
  const TraceFunction zh = to_trace(space, coeffs);
  Eigen::VectorXd prolonged(rspace.dof_count());
  int offset = 0;
  for (Strand s : {Strand::left, Strand::right}) {
    const auto& rb = rspace.strand_breaks(s);
    for (std::size_t i = 1; i < rb.size(); ++i)
      prolonged[offset + static_cast<int>(i) - 1] = zh.eval(s, rb[i]);
    offset += static_cast<int>(rb.size()) - 1;
  }
  const Eigen::VectorXd diff = interp - prolonged;
  const int K = modes > 0 ? modes : default_mode_count(rspace.dof_count());
  return h_half_norm(to_trace(rspace, diff), K);
}

LateralMesh study_mesh(MeshFamily family, double L, double T, int total_elems) {
  if (family == MeshFamily::uniform) {
    if (total_elems < 2 || total_elems % 2 != 0)
      throw std::invalid_argument("study_mesh: total element count must be even");
    return uniform_mesh(L, T, total_elems / 2);
  }
  LateralMesh m;
  if (family == MeshFamily::shifted_pair) {
    const int n = static_cast<int>(std::lround(T / L));
    if (n < 1 || std::abs(T - n * L) > 1e-9 * T)
      throw std::invalid_argument("study_mesh: horizon must be a multiple of L");
    m = shifted_pair_mesh(L, n, {L / 3.0}, {2.0 * L / 3.0});
  } else {
    m = nonuniform_initial_mesh();
  }
  while (m.total_elements() < total_elems) m = refine(m);
  if (m.total_elements() != total_elems)
    throw std::invalid_argument("study_mesh: element count not reachable by bisection");
  return m;
}

std::vector<ConvergenceRecord> convergence_study(const StudyConfig& cfg) {
  if (cfg.levels < 1) throw std::invalid_argument("convergence_study: levels must be positive");
  std::vector<ConvergenceRecord> rows;
  for (int lev = 0; lev < cfg.levels; ++lev) {
    const LateralMesh mesh =
        study_mesh(cfg.family, cfg.L, cfg.T, cfg.base_total << lev);
    const DiscreteSpace space{cfg.space, mesh};
    const ProblemSpec p = make_problem(cfg.problem, mesh.L, mesh.T);
    const QuadratureSpec quad{cfg.quad_order, p.data_kinks_left, p.data_kinks_right};
    const Eigen::MatrixXd A = assemble_matrix(space, cfg.sign);
    const Eigen::VectorXd rhs = assemble_rhs(space, p.g0, p.gL, quad);
    const Eigen::VectorXd x = solve_dense(A, rhs);
    ConvergenceRecord rec;
    rec.N = mesh.total_elements();
    rec.error = cfg.norm == ErrorNorm::l2 ? l2_error(space, x, p, cfg.quad_order)
                                          : h_half_error(space, x, p, cfg.modes);
    rec.kappa = condition_number_2(A);
    rows.push_back(rec);
  }
  for (std::size_t i = 1; i < rows.size(); ++i)
    rows[i].eoc = std::log2(rows[i - 1].error / rows[i].error);
  return rows;
}

double infsup_for_mesh(const LateralMesh& mesh, Sign sign, int modes) {
  const DiscreteSpace space{SpaceKind::pw_linear_zero_init, mesh};
  const int K = modes > 0 ? modes : default_mode_count(space.dof_count());
  const Eigen::MatrixXd B = assemble_matrix(space, sign);
  const Eigen::MatrixXd Mx = primal_gram(space, K);
  const Eigen::MatrixXd My = dual_gram(space, K);
  return infsup_constant(B, Mx, My);
}

std::vector<InfSupRow> infsup_refinement_study(MeshFamily family, double L, double T,
                                               int base_total, int levels, Sign sign,
                                               int modes) {
  std::vector<InfSupRow> rows;
  for (int lev = 0; lev < levels; ++lev) {
    const LateralMesh mesh = study_mesh(family, L, T, base_total << lev);
    const DiscreteSpace space{SpaceKind::pw_linear_zero_init, mesh};
    rows.push_back({static_cast<double>(mesh.total_elements()), space.dof_count(),
                    infsup_for_mesh(mesh, sign, modes)});
  }
  return rows;
}

std::vector<InfSupRow> infsup_horizon_study(double L, double step, double h0, double hL,
                                            int n_min, int n_max, Sign sign, int modes) {
  if (n_min < 1 || n_max < n_min)
    throw std::invalid_argument("infsup_horizon_study: bad horizon range");
  std::vector<InfSupRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    const double T = n * step;
    const int N0 = static_cast<int>(std::lround(T / h0));
    const int NL = static_cast<int>(std::lround(T / hL));
    LateralMesh mesh{L, T, uniform_breaks(T, N0), uniform_breaks(T, NL)};
    mesh.validate();
    const DiscreteSpace space{SpaceKind::pw_linear_zero_init, mesh};
    rows.push_back({static_cast<double>(n), space.dof_count(),
                    infsup_for_mesh(mesh, sign, modes)});
  }
  return rows;
}

double ellipticity_min(const LateralMesh& mesh, SpaceKind kind, Sign sign) {
  const DiscreteSpace space{kind, mesh};
  const auto [lo, hi] =
      symmetric_rayleigh_range(assemble_matrix(space, sign), mass_matrix(space));
  if (lo > 0.0) return lo;        // symmetric part positive definite
  if (hi < 0.0) return -hi;       // negative definite: bound on |quotient|
  return 0.0;                     // indefinite: the quotient can vanish
}

std::string records_to_csv(const std::vector<ConvergenceRecord>& rows) {
  std::ostringstream out;
  out << "N,error,eoc,kappa\n";
  for (const auto& r : rows) {
    out << r.N << ',' << fmt(r.error) << ',';
    if (!std::isnan(r.eoc)) out << fmt(r.eoc);
    out << ',' << fmt(r.kappa) << '\n';
  }
  return out.str();
}

std::string records_to_json(const std::vector<ConvergenceRecord>& rows,
                            const std::string& problem, const std::string& space,
                            const std::string& family, const std::string& norm) {
  nlohmann::json j;
  j["schema"] = 1;
  j["problem"] = problem;
  j["space"] = space;
  j["family"] = family;
  j["norm"] = norm;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["N"] = r.N;
    row["error"] = r.error;
    if (std::isnan(r.eoc))
      row["eoc"] = nullptr;
    else
      row["eoc"] = r.eoc;
    row["kappa"] = r.kappa;
    j["rows"].push_back(row);
  }
  return j.dump(2);
}

std::string infsup_to_csv(const std::vector<InfSupRow>& rows) {
  std::ostringstream out;
  out << "param,dofs,beta\n";
  for (const auto& r : rows)
    out << fmt(r.param) << ',' << r.dofs << ',' << fmt(r.beta) << '\n';
  return out.str();
}

std::string infsup_to_json(const std::vector<InfSupRow>& rows, const std::string& mode) {
  nlohmann::json j;
  j["schema"] = 1;
  j["mode"] = mode;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows)
    j["rows"].push_back({{"param", r.param}, {"dofs", r.dofs}, {"beta", r.beta}});
  return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out.exceptions(std::ofstream::failbit | std::ofstream::badbit);
  out << text;
}

void write_matrix_csv(const Eigen::MatrixXd& A, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  out.exceptions(std::ofstream::failbit | std::ofstream::badbit);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (j) out << ',';
      out << fmt(A(i, j));
    }
    out << '\n';
  }
}

void write_matrix_binary(const Eigen::MatrixXd& A, const std::string& path,
                         const std::string& space_name, const std::string& sign_name) {
  nlohmann::json header;
  header["rows"] = A.rows();
  header["cols"] = A.cols();
  header["space"] = space_name;
  header["sign"] = sign_name;
  std::ofstream out(path, std::ios::binary);
  out.exceptions(std::ofstream::failbit | std::ofstream::badbit);
  out << header.dump() << '\n';
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      const double v = A(i, j);
      out.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
}

}  // namespace wavebem
