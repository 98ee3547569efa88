#include "wavebem/verify.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/QR>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "wavebem/errors.hpp"
#include "wavebem/experiments.hpp"
#include "wavebem/mesh.hpp"
#include "wavebem/operator.hpp"
#include "wavebem/quadrature.hpp"
#include "wavebem/solver.hpp"
#include "wavebem/spectral.hpp"

namespace wavebem {

namespace {

struct Suite {
  std::vector<CheckResult> results;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    results.push_back({name, ok, ok ? "" : detail});
  }

  void check_near(const std::string& name, double value, double expected, double tol) {
    const bool ok = std::abs(value - expected) <= tol;
    std::ostringstream os;
    os << "value " << value << " expected " << expected << " tol " << tol;
    check(name, ok, os.str());
  }

  template <class F, class E>
  void check_throws(const std::string& name, F&& f) {
    try {
      f();
      check(name, false, "no exception thrown");
    } catch (const E&) {
      check(name, true);
    } catch (const std::exception& e) {
      check(name, false, std::string("wrong exception type: ") + e.what());
    }
  }
};

LateralMesh random_mesh(std::mt19937& rng, double L, double T, int per_strand) {
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  auto strand = [&] {
    std::vector<double> b{0.0};
    std::vector<double> interior(per_strand - 1);
    for (double& v : interior) v = T * unif(rng);
    std::sort(interior.begin(), interior.end());
    for (double v : interior)
      if (v - b.back() > 1e-3 * T) b.push_back(v);
    b.push_back(T);
    return b;
  };
  LateralMesh m{L, T, strand(), strand()};
  m.validate();
  return m;
}

Eigen::VectorXd random_coeffs(std::mt19937& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = gauss(rng);
  return v;
}

void mesh_checks(Suite& s) {
  const LateralMesh u = uniform_mesh(3.0, 6.0, 16);
  const LateralMesh sp = shifted_pair_mesh(3.0, 2, {1.0}, {2.0});
  const LateralMesh nu = nonuniform_initial_mesh();
  for (const auto* m : {&u, &sp, &nu}) {
    const LateralMesh back = mesh_from_json(mesh_to_json(*m));
    s.check("mesh_json_roundtrip",
            back.L == m->L && back.T == m->T && back.left_breaks == m->left_breaks &&
                back.right_breaks == m->right_breaks,
            "roundtrip changed the mesh");
  }
  s.check("slice_count_examples",
          slice_count(3.0, 6.0).n == 2 && slice_count(3.0, 6.1).n == 3 &&
              slice_count(3.0, 5.9).n == 2 && slice_count(3.0, 3.0).n == 1 &&
              slice_count(3.0, 2.0 * std::numbers::pi).n == 3,
          "ceil semantics violated");
  s.check("slice_shift_uniform_even", satisfies_slice_shift(u) &&
                                          satisfies_slice_shift(refine(u)),
          "even uniform mesh should satisfy the slice shift");
  s.check("slice_shift_uniform_odd", !satisfies_slice_shift(uniform_mesh(3.0, 6.0, 3)),
          "odd uniform mesh must fail the literal breakpoint match");
  s.check("slice_shift_pair_exact", satisfies_slice_shift(sp, 0.0),
          "shifted pair construction should match at zero tolerance");
  s.check("slice_shift_pair_refined", satisfies_slice_shift(refine(sp)),
          "bisection should preserve the slice shift within default tolerance");
  const LateralMesh r = refine(u);
  s.check("refine_counts", r.left_elements() == 32 && r.max_width() == u.max_width() / 2,
          "bisection should double counts and halve widths");
}

void basis_checks(Suite& s, std::mt19937& rng) {
  const LateralMesh m = random_mesh(rng, 3.0, 6.0, 9);
  for (SpaceKind kind : {SpaceKind::pw_constant, SpaceKind::pw_linear_zero_init}) {
    const DiscreteSpace space{kind, m};
    const TraceFunction one =
        to_trace(space, Eigen::VectorXd::Ones(space.dof_count()));
    bool ok = true;
    std::uniform_real_distribution<double> unif(0.0, 6.0);
    for (int i = 0; i < 50; ++i) {
      const double t = unif(rng);
      for (Strand st : {Strand::left, Strand::right}) {
        const double first = space.strand_breaks(st)[1];
        const bool ramp = kind == SpaceKind::pw_linear_zero_init && t < first;
        const double want = ramp ? t / first : 1.0;
        ok = ok && std::abs(one.eval(st, t) - want) < 1e-13;
      }
    }
    s.check(kind == SpaceKind::pw_constant ? "partition_of_unity_pwc"
                                           : "partition_of_unity_pwl",
            ok, "sum of basis functions should be one past the initial ramp");
  }
  const DiscreteSpace space{SpaceKind::pw_linear_zero_init, m};
  const Eigen::VectorXd c = random_coeffs(rng, space.dof_count());
  const Eigen::VectorXd back = nodal_interpolate(
      space,
      [&](double t) { return to_trace(space, c).eval(Strand::left, t); },
      [&](double t) { return to_trace(space, c).eval(Strand::right, t); });
  s.check("interpolate_roundtrip", (back - c).cwiseAbs().maxCoeff() < 1e-12,
          "interpolating a member of the space must reproduce its coefficients");
  s.check_throws<std::function<void()>, std::domain_error>(
      "eval_beyond_T_throws",
      [&] { to_trace(space, c).eval(Strand::left, m.T + 0.5); });
  s.check_throws<std::function<void()>, PreconditionError>(
      "interpolate_nonzero_start_throws", [&] {
        nodal_interpolate(space, [](double) { return 1.0; },
                          [](double) { return 1.0; });
      });
}

void operator_checks(Suite& s, std::mt19937& rng) {
  const double L = 3.0, T = 6.0;

  {  // mass matrix shapes
    const DiscreteSpace pwc{SpaceKind::pw_constant, random_mesh(rng, L, T, 8)};
    const Eigen::MatrixXd M = mass_matrix(pwc);
    bool ok = true;
    int off = 0;
    for (Strand st : {Strand::left, Strand::right}) {
      const auto& b = pwc.strand_breaks(st);
      for (std::size_t e = 0; e + 1 < b.size(); ++e)
        ok = ok && M(off + e, off + e) == b[e + 1] - b[e];
      off += static_cast<int>(b.size()) - 1;
    }
    ok = ok && M.diagonal().asDiagonal().toDenseMatrix() == M;
    s.check("pwc_mass_is_width_diagonal", ok, "diagonal of element widths expected");

    const double h = 6.0 / 8;
    const DiscreteSpace pwl{SpaceKind::pw_linear_zero_init, uniform_mesh(L, T, 8)};
    const Eigen::MatrixXd Ml = mass_matrix(pwl);
    ok = std::abs(Ml(0, 0) - 2 * h / 3) < 1e-15 && std::abs(Ml(7, 7) - h / 3) < 1e-15 &&
         std::abs(Ml(0, 1) - h / 6) < 1e-15 && std::abs(Ml(3, 5)) == 0.0;
    s.check("pwl_mass_band", ok, "uniform hat overlaps 2h/3, h/3 terminal, h/6 off");
  }

  {  // first slice: the coupling vanishes and A = sign * M exactly
    const DiscreteSpace space{SpaceKind::pw_linear_zero_init, uniform_mesh(3.0, 2.0, 8)};
    const Eigen::MatrixXd M = mass_matrix(space);
    bool ok = true;
    for (Sign sign : {Sign::interior, Sign::exterior})
      ok = ok && (assemble_matrix(space, sign) - identity_weight(sign) * M)
                         .cwiseAbs()
                         .maxCoeff() == 0.0;
    s.check("first_slice_identity", ok, "T <= L must give exactly sign * mass");
  }

  const LateralMesh mesh = random_mesh(rng, L, T, 10);
  for (SpaceKind kind : {SpaceKind::pw_constant, SpaceKind::pw_linear_zero_init}) {
    const DiscreteSpace space{kind, mesh};
    const Eigen::MatrixXd Ai = assemble_matrix(space, Sign::interior);
    const Eigen::MatrixXd Ae = assemble_matrix(space, Sign::exterior);
    s.check("sign_difference_is_mass",
            (Ae - Ai - mass_matrix(space)).cwiseAbs().maxCoeff() == 0.0,
            "exterior minus interior must equal the mass matrix exactly");

    const Eigen::VectorXd v = random_coeffs(rng, space.dof_count());
    const TraceFunction tv = to_trace(space, v);
    const Eigen::VectorXd via_apply =
        pair_with_basis(space, apply_second_kind(tv, L, Sign::interior));
    const double scale = via_apply.cwiseAbs().maxCoeff() + 1.0;
    s.check("assemble_matches_apply",
            (Ai * v - via_apply).cwiseAbs().maxCoeff() < 1e-12 * scale,
            "matrix action and operator application disagree");

    const TraceFunction kk = apply_K(apply_K(tv, L), L);
    bool ok = true;
    std::uniform_real_distribution<double> unif(0.0, T);
    for (int i = 0; i < 200; ++i) {
      const double t = unif(rng);
      for (Strand st : {Strand::left, Strand::right}) {
        const double shifted = t - 2 * L >= 0.0 ? tv.eval(st, t - 2 * L) : 0.0;
        ok = ok && std::abs(4.0 * kk.eval(st, t) - shifted) < 1e-13;
      }
    }
    s.check("double_reflection_is_shift", ok,
            "4 K^2 should be the plain shift by 2L on the same strand");
  }

  {  // worked example: v(L, t) = t, v(0, .) = 0
    DiscreteSpace space{SpaceKind::pw_linear_zero_init, uniform_mesh(L, T, 6)};
    Eigen::VectorXd c = Eigen::VectorXd::Zero(space.dof_count());
    const auto& rb = space.mesh.right_breaks;
    for (std::size_t i = 1; i < rb.size(); ++i) c[6 + static_cast<int>(i) - 1] = rb[i];
    const TraceFunction kv = apply_K(to_trace(space, c), L);
    bool ok = true;
    for (double t : {0.5, 2.9, 3.1, 4.5, 5.9}) {
      const double want = t >= 3.0 ? -0.5 * (t - 3.0) : 0.0;
      ok = ok && std::abs(kv.eval(Strand::left, t) - want) < 1e-14 &&
           kv.eval(Strand::right, t) == 0.0;
    }
    s.check("reflection_worked_example", ok,
            "K of a right-strand ramp should be -1/2 (t - L) on the left strand");
  }

  {  // rhs quadrature: kink splitting makes order 8 agree with order 16
    const ProblemSpec p = make_problem('b', L, T);
    const DiscreteSpace space{SpaceKind::pw_linear_zero_init, uniform_mesh(L, T, 16)};
    const QuadratureSpec q8{8, p.data_kinks_left, p.data_kinks_right};
    const QuadratureSpec q16{16, p.data_kinks_left, p.data_kinks_right};
    const Eigen::VectorXd r8 = assemble_rhs(space, p.g0, p.gL, q8);
    const Eigen::VectorXd r16 = assemble_rhs(space, p.g0, p.gL, q16);
    s.check("rhs_gauss_order_saturated",
            (r8 - r16).cwiseAbs().maxCoeff() < 1e-12 * r16.cwiseAbs().maxCoeff(),
            "order-8 and order-16 right-hand sides differ beyond tolerance");

    const DiscreteSpace pwc{SpaceKind::pw_constant, mesh};
    const Eigen::VectorXd ones_rhs =
        assemble_rhs(pwc, [](double) { return 1.0; }, [](double) { return 1.0; }, {});
    bool ok = true;
    int off = 0;
    for (Strand st : {Strand::left, Strand::right}) {
      const auto& b = pwc.strand_breaks(st);
      for (std::size_t e = 0; e + 1 < b.size(); ++e)
        ok = ok && std::abs(ones_rhs[off + e] - (b[e + 1] - b[e])) < 1e-14;
      off += static_cast<int>(b.size()) - 1;
    }
    s.check("rhs_of_one_is_widths", ok, "constant data must integrate to element widths");
  }
}

void spectral_checks(Suite& s, std::mt19937& rng) {
  const double T = 6.0;

  {  // trigonometric orthogonality of the two mode systems
    bool ok = true;
    for (int j : {0, 1, 3})
      for (int k : {0, 1, 3}) {
        auto sines = [&](double t) {
          return std::sin(lambda_k(j) * t / T) * std::sin(lambda_k(k) * t / T);
        };
        auto cosines = [&](double t) {
          return std::cos(lambda_k(j) * t / T) * std::cos(lambda_k(k) * t / T);
        };
        std::vector<double> cuts;
        for (int i = 1; i < 64; ++i) cuts.push_back(T * i / 64.0);
        const double want = j == k ? T / 2 : 0.0;
        ok = ok && std::abs(gauss_integrate_split(sines, 0, T, cuts, 16) - want) < 1e-10;
        ok = ok && std::abs(gauss_integrate_split(cosines, 0, T, cuts, 16) - want) < 1e-10;
      }
    s.check("mode_orthogonality", ok, "sine/cosine systems should be (T/2)-orthogonal");
  }

  const LateralMesh mesh = random_mesh(rng, 3.0, T, 7);
  const DiscreteSpace space{SpaceKind::pw_linear_zero_init, mesh};

  {  // closed-form coefficients against quadrature on one hat function
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(space.dof_count());
    e0[1] = 1.0;
    const TraceFunction hat = to_trace(space, e0);
    const SpectralCoeffs c = sine_coefficients(hat, 24);
    bool ok = true;
    for (int k = 0; k < 24; ++k) {
      auto f = [&](double t) {
        return hat.eval(Strand::left, t) * std::sin(lambda_k(k) * t / T);
      };
      const double want =
          (2.0 / T) * gauss_integrate_split(f, 0, T, mesh.left_breaks, 16);
      ok = ok && std::abs(c.left[k] - want) < 1e-12;
    }
    s.check("sine_coefficients_exact", ok, "closed form disagrees with quadrature");
  }

  {  // single-mode norms and the duality product
    bool ok = true;
    for (int k : {0, 3, 17}) {
      SpectralCoeffs c;
      c.T = T;
      c.left = Eigen::VectorXd::Zero(32);
      c.right = Eigen::VectorXd::Zero(32);
      c.left[k] = 1.0;
      const double primal2 = h_half_norm(c) * h_half_norm(c);
      const double dual2 = dual_norm(c) * dual_norm(c);
      ok = ok && std::abs(primal2 - lambda_k(k) / 2) < 1e-12;
      ok = ok && std::abs(dual2 - T * T / (2 * lambda_k(k))) < 1e-12;
      ok = ok && std::abs(primal2 * dual2 - (T / 2) * (T / 2)) < 1e-12;
    }
    s.check("single_mode_norms", ok, "mode-k norms must be lambda_k/2 and T^2/(2 lambda_k)");
  }

  {  // antiderivative: -int_t^T of mode k is -(T/lambda_k) cos(lambda_k t/T)
    bool ok = true;
    for (int k : {0, 2}) {
      for (double t : {0.0, 1.3, 4.7}) {
        auto f = [&](double x) { return std::sin(lambda_k(k) * x / T); };
        const double numeric = -gauss_integrate(f, t, T, 16);
        const double closed = -(T / lambda_k(k)) * std::cos(lambda_k(k) * t / T);
        ok = ok && std::abs(numeric - closed) < 1e-12;
      }
    }
    s.check("antiderivative_mode_closed_form", ok,
            "backward antiderivative of mode k should be -(T/lambda_k) cos");
  }

  {  // fundamental theorem pieces on a random trace
    const Eigen::VectorXd c = random_coeffs(rng, space.dof_count());
    const TraceFunction f = to_trace(space, c);
    const QuadraticTrace F = antiderivative_back(f);
    bool ok = std::abs(F.eval(Strand::left, T)) < 1e-13 &&
              std::abs(F.eval(Strand::right, T)) < 1e-13;
    for (Strand st : {Strand::left, Strand::right}) {
      const StrandFunction& sf = f.strand(st);
      for (std::size_t e = 0; e + 1 < sf.breaks.size(); ++e) {
        const double a = sf.breaks[e], b = sf.breaks[e + 1];
        const double trapezoid = 0.5 * (sf.lo[e] + sf.hi[e]) * (b - a);
        double fb = e + 2 == sf.breaks.size() ? 0.0 : F.eval(st, b);
        ok = ok && std::abs(F.eval(st, a) + trapezoid - fb) < 1e-12;
      }
    }
    s.check("antiderivative_fundamental", ok,
            "F(b) - F(a) must equal the element integral, F(T) = 0");

    // realization: the backward antiderivative of f' is f - f(T)
    TraceFunction df;
    df.T = f.T;
    df.degree = 0;
    for (Strand st : {Strand::left, Strand::right}) {
      const StrandFunction& sf = f.strand(st);
      StrandFunction& out = st == Strand::left ? df.left : df.right;
      out.breaks = sf.breaks;
      for (std::size_t e = 0; e + 1 < sf.breaks.size(); ++e) {
        const double slope =
            (sf.hi[e] - sf.lo[e]) / (sf.breaks[e + 1] - sf.breaks[e]);
        out.lo.push_back(slope);
        out.hi.push_back(slope);
      }
    }
    const QuadraticTrace v = antiderivative_back(df);
    std::uniform_real_distribution<double> unif(0.0, T);
    bool ok2 = true;
    for (int i = 0; i < 100; ++i) {
      const double t = unif(rng);
      for (Strand st : {Strand::left, Strand::right}) {
        const double fT = f.eval(st, T);
        ok2 = ok2 && std::abs(v.eval(st, t) - (f.eval(st, t) - fT)) < 1e-12;
      }
    }
    s.check("derivative_realization", ok2,
            "antiderivative_back of f' should reproduce f - f(T)");
  }

  {  // dual gram agrees with direct assembly up to the global sign
    const DiscreteSpace small{SpaceKind::pw_linear_zero_init, uniform_mesh(3.0, T, 5)};
    const int K = 256;
    const Eigen::MatrixXd My = dual_gram(small, K);
    const int n = small.dof_count();
    Eigen::MatrixXd direct(n, n);
    std::vector<CosineSeries> ht(n);
    std::vector<QuadraticTrace> anti(n);
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd ej = Eigen::VectorXd::Zero(n);
      ej[j] = 1.0;
      const TraceFunction psi = to_trace(small, ej);
      ht[j] = ht_forward(sine_coefficients(psi, K));
      anti[j] = antiderivative_back(psi);
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) direct(i, j) = pair_cosine(ht[i], anti[j]);
    s.check("dual_gram_vs_direct",
            (My + direct).cwiseAbs().maxCoeff() < 1e-10,
            "spectral dual gram and the transform pairing must agree up to sign");
  }

  {  // gram matrices are symmetric positive definite at adequate mode counts
    bool adequate = false;
    const Eigen::MatrixXd Gp = primal_gram(space, default_mode_count(space.dof_count()),
                                           &adequate);
    const Eigen::MatrixXd Gd = dual_gram(space, default_mode_count(space.dof_count()));
    const bool sym = (Gp - Gp.transpose()).cwiseAbs().maxCoeff() == 0.0 &&
                     (Gd - Gd.transpose()).cwiseAbs().maxCoeff() == 0.0;
    const bool spd = Eigen::LLT<Eigen::MatrixXd>(Gp).info() == Eigen::Success &&
                     Eigen::LLT<Eigen::MatrixXd>(Gd).info() == Eigen::Success;
    s.check("gram_definiteness", sym && spd && adequate,
            "gram matrices should be symmetric positive definite");
    bool low_flag = true;
    primal_gram(space, 2, &low_flag);
    s.check("gram_mode_warning", !low_flag,
            "too few modes should be reported as inadequate");
  }

  {  // preconditions
    const DiscreteSpace pwc{SpaceKind::pw_constant, mesh};
    s.check_throws<std::function<void()>, PreconditionError>(
        "h_half_requires_zero_start", [&] {
          h_half_norm(to_trace(pwc, Eigen::VectorXd::Ones(pwc.dof_count())), 16);
        });
    s.check_throws<std::function<void()>, std::invalid_argument>(
        "sine_coefficients_reject_bad_modes",
        [&] { sine_coefficients(to_trace(pwc, Eigen::VectorXd::Zero(pwc.dof_count())), 0); });
  }
}

void solver_checks(Suite& s, std::mt19937& rng) {
  {  // residual-checked solve and singularity detection
    const int n = 24;
    Eigen::MatrixXd A = Eigen::MatrixXd::Random(n, n);
    A += n * Eigen::MatrixXd::Identity(n, n);
    const Eigen::VectorXd b = random_coeffs(rng, n);
    const Eigen::VectorXd x = solve_dense(A, b);
    s.check("solve_residual", (A * x - b).norm() <= 1e-10 * std::max(1.0, b.norm()),
            "solve residual above contract tolerance");
    s.check_throws<std::function<void()>, SingularMatrixError>(
        "solve_singular_throws",
        [&] { solve_dense(Eigen::MatrixXd::Zero(4, 4), Eigen::VectorXd::Ones(4)); });
  }

  {  // condition number basics
    s.check_near("kappa_identity", condition_number_2(Eigen::MatrixXd::Identity(6, 6)),
                 1.0, 1e-14);
    Eigen::VectorXd d(5);
    d << 1, 2, 3, 4, 5;
    s.check_near("kappa_diagonal", condition_number_2(d.asDiagonal().toDenseMatrix()),
                 5.0, 1e-13);
    const Eigen::MatrixXd A = Eigen::MatrixXd::Random(12, 12) +
                              12 * Eigen::MatrixXd::Identity(12, 12);
    const double k1 = condition_number_2(A), k2 = condition_number_2(3.7 * A);
    s.check("kappa_scale_invariant", std::abs(k1 - k2) < 1e-12 * k1,
            "condition number must not change under scaling");
  }

  {  // inf-sup basics: identity, scaling, orthogonal invariance
    const int n = 10;
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    s.check_near("infsup_identity", infsup_constant(I, I, I), 1.0, 1e-13);

    Eigen::MatrixXd B = Eigen::MatrixXd::Random(n, n);
    Eigen::MatrixXd Mx = Eigen::MatrixXd::Random(n, n);
    Eigen::MatrixXd My = Eigen::MatrixXd::Random(n, n);
    Mx = (Mx * Mx.transpose() + n * I).eval();
    My = (My * My.transpose() + n * I).eval();
    const double beta = infsup_constant(B, Mx, My);
    s.check_near("infsup_scaling", infsup_constant(2.0 * B, Mx, My), 2.0 * beta,
                 1e-10 * beta);

    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd::Random(n, n));
    const Eigen::MatrixXd Q = qr.householderQ();
    const double conj = infsup_constant(Q.transpose() * B * Q, Q.transpose() * Mx * Q,
                                        Q.transpose() * My * Q);
    s.check_near("infsup_orthogonal_invariance", conj, beta, 1e-10 * beta);
    s.check_throws<std::function<void()>, std::invalid_argument>(
        "infsup_rejects_indefinite", [&] { infsup_constant(B, -Mx, My); });
  }

  {  // first slice: the operator is -1/2 the identity, inf-sup in L2 is 1/2
    const DiscreteSpace space{SpaceKind::pw_constant, uniform_mesh(3.0, 2.0, 8)};
    const Eigen::MatrixXd A = assemble_matrix(space, Sign::interior);
    const Eigen::MatrixXd M = mass_matrix(space);
    s.check_near("infsup_first_slice", infsup_constant(A, M, M), 0.5, 1e-13);
  }
}

void experiments_checks(Suite& s) {
  {  // exact densities solve the interior equation
    for (char id : {'a', 'b'}) {
      const ProblemSpec p = make_problem(id, 3.0, 6.0);
      s.check(std::string("exact_density_residual_") + id,
              exact_density_residual(p) <= 1e-10, "closed-form density has a defect");
    }
  }

  {  // ellipticity lower bounds by slice count; first slice attains 1/2
    auto cs = [](int n) {
      const double x = std::sin(std::numbers::pi / (2.0 * (n + 1)));
      return x * x;
    };
    bool ok = true;
    for (SpaceKind kind : {SpaceKind::pw_constant, SpaceKind::pw_linear_zero_init})
      for (Sign sign : {Sign::interior, Sign::exterior}) {
        ok = ok && ellipticity_min(uniform_mesh(3.0, 6.0, 16), kind, sign) >=
                       cs(2) - 1e-10;
        ok = ok && ellipticity_min(uniform_mesh(3.0, 9.0, 18), kind, sign) >=
                       cs(3) - 1e-10;
        ok = ok && std::abs(ellipticity_min(uniform_mesh(3.0, 2.0, 8), kind, sign) -
                            0.5) < 1e-13;
      }
    s.check("ellipticity_bounds", ok, "Rayleigh quotient fell under sin^2(pi/(2(n+1)))");
  }

  {  // Galerkin orthogonality of a solved system
    const ProblemSpec p = make_problem('a', 3.0, 6.0);
    const DiscreteSpace space{SpaceKind::pw_constant, uniform_mesh(3.0, 6.0, 16)};
    const QuadratureSpec quad{8, p.data_kinks_left, p.data_kinks_right};
    const Eigen::MatrixXd A = assemble_matrix(space, Sign::interior);
    const Eigen::VectorXd rhs = assemble_rhs(space, p.g0, p.gL, quad);
    const Eigen::VectorXd x = solve_dense(A, rhs);
    const Eigen::VectorXd res =
        pair_with_basis(space, apply_second_kind(to_trace(space, x), 3.0, Sign::interior)) -
        rhs;
    s.check("galerkin_orthogonality", res.cwiseAbs().maxCoeff() < 1e-10,
            "discrete residual should vanish against every test function");
  }

  {  // quick end-to-end row: problem a, pwc, N = 64 total
    StudyConfig cfg;
    cfg.problem = 'a';
    cfg.space = SpaceKind::pw_constant;
    cfg.norm = ErrorNorm::l2;
    cfg.levels = 2;
    const auto rows = convergence_study(cfg);
    s.check("study_shape",
            rows.size() == 2 && rows[0].N == 64 && rows[1].N == 128 &&
                std::isnan(rows[0].eoc) && !std::isnan(rows[1].eoc),
            "study rows must double N and fill eoc from the second row");
    s.check_near("table_row_smoke", rows[0].error, 8.77e-2, 8.77e-3);
    const std::string csv = records_to_csv(rows);
    s.check("csv_deterministic",
            csv.rfind("N,error,eoc,kappa\n", 0) == 0 && csv == records_to_csv(rows),
            "CSV must carry the fixed header and be reproducible");
  }

  {  // h_half_error is insensitive to doubling the default mode count
    StudyConfig cfg;
    cfg.levels = 1;
    const LateralMesh mesh = study_mesh(MeshFamily::uniform, 3.0, 6.0, 64);
    const DiscreteSpace space{SpaceKind::pw_linear_zero_init, mesh};
    const ProblemSpec p = make_problem('a', 3.0, 6.0);
    const QuadratureSpec quad{8, p.data_kinks_left, p.data_kinks_right};
    const Eigen::VectorXd x =
        solve_dense(assemble_matrix(space, Sign::interior),
                    assemble_rhs(space, p.g0, p.gL, quad));
    const int K = default_mode_count(2 * space.dof_count());
    const double e1 = h_half_error(space, x, p, K);
    const double e2 = h_half_error(space, x, p, 2 * K);
    s.check("h_half_mode_saturation", std::abs(e1 - e2) < 1e-3 * e1,
            "doubling the truncation must not move the error at table resolution");
    s.check_throws<std::function<void()>, std::invalid_argument>(
        "h_half_rejects_pwc", [&] {
          const DiscreteSpace pwc{SpaceKind::pw_constant, mesh};
          h_half_error(pwc, Eigen::VectorXd::Zero(pwc.dof_count()), p);
        });
  }
}

}  // namespace

std::vector<CheckResult> run_verification(unsigned seed) {
  Suite s;
  std::mt19937 rng(seed);
  mesh_checks(s);
  basis_checks(s, rng);
  operator_checks(s, rng);
  spectral_checks(s, rng);
  solver_checks(s, rng);
  experiments_checks(s);
  return s.results;
}

}  // namespace wavebem
