#include "wavebem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace wavebem {

double LateralMesh::max_width() const {
  double h = 0.0;
  for (const auto* b : {&left_breaks, &right_breaks})
    for (std::size_t i = 0; i + 1 < b->size(); ++i)
      h = std::max(h, (*b)[i + 1] - (*b)[i]);
  return h;
}

void LateralMesh::validate() const {
  if (!(L > 0.0) || !(T > 0.0))
    throw std::invalid_argument("mesh: L and T must be positive");
  for (const auto* b : {&left_breaks, &right_breaks}) {
    if (b->size() < 2) throw std::invalid_argument("mesh: strand needs at least one element");
    if (b->front() != 0.0 || b->back() != T)
      throw std::invalid_argument("mesh: strand must span [0,T] exactly");
    for (std::size_t i = 0; i + 1 < b->size(); ++i)
      if (!((*b)[i] < (*b)[i + 1]))
        throw std::invalid_argument("mesh: breakpoints must be strictly increasing");
  }
}

LateralMesh uniform_mesh(double L, double T, int N) {
  if (!(L > 0.0) || !(T > 0.0) || N < 1)
    throw std::invalid_argument("uniform_mesh: L, T, N must be positive");
  std::vector<double> breaks(N + 1);
  for (int i = 0; i <= N; ++i) breaks[i] = (T * i) / N;
  breaks.front() = 0.0;
  breaks.back() = T;
  LateralMesh m{L, T, breaks, breaks};
  m.validate();
  return m;
}

TimeSlices slice_count(double L, double T) {
  if (!(L > 0.0) || !(T > 0.0))
    throw std::invalid_argument("slice_count: L and T must be positive");
  int n = static_cast<int>(std::ceil(T / L));
  if (n < 1) n = 1;
  while (n > 1 && (n - 1) * L >= T) --n;  // guard against ceil rounding
  TimeSlices s;
  s.n = n;
  for (int j = 1; j <= n; ++j)
    s.slices.emplace_back((j - 1) * L, j < n ? j * L : T);
  return s;
}

namespace {

// Breakpoints strictly inside (a, b), within tol of neither endpoint.
std::vector<double> interior_breaks(const std::vector<double>& breaks, double a,
                                    double b, double tol) {
  std::vector<double> out;
  for (double x : breaks)
    if (x > a + tol && x < b - tol) out.push_back(x);
  return out;
}

bool shifted_match(const std::vector<double>& from, const std::vector<double>& to,
                   double L, double tol) {
  if (from.size() != to.size()) return false;
  for (std::size_t i = 0; i < from.size(); ++i)
    if (std::abs((from[i] + L) - to[i]) > tol) return false;
  return true;
}

}  // namespace

bool satisfies_slice_shift(const LateralMesh& mesh, double rel_tol) {
  mesh.validate();
  const double tol = rel_tol * mesh.T;
  // Floor for the T = nL test and slice binning only: summed slice offsets
  // carry a few ulps even in meshes built to satisfy the shift exactly.
  const double bin_tol =
      std::max(tol, 16.0 * std::numeric_limits<double>::epsilon() * mesh.T);
  const double ratio = mesh.T / mesh.L;
  const int n = static_cast<int>(std::lround(ratio));
  if (n < 1 || std::abs(mesh.T - n * mesh.L) > bin_tol) return false;
  for (int j = 1; j < n; ++j) {
    const double a0 = (j - 1) * mesh.L, a1 = j * mesh.L, a2 = (j + 1) * mesh.L;
    auto lj = interior_breaks(mesh.left_breaks, a0, a1, bin_tol);
    auto rj = interior_breaks(mesh.right_breaks, a0, a1, bin_tol);
    auto lnext = interior_breaks(mesh.left_breaks, a1, a2, bin_tol);
    auto rnext = interior_breaks(mesh.right_breaks, a1, a2, bin_tol);
    if (!shifted_match(lj, rnext, mesh.L, tol)) return false;
    if (!shifted_match(rj, lnext, mesh.L, tol)) return false;
  }
  return true;
}

LateralMesh shifted_pair_mesh(double L, int n,
                              const std::vector<double>& seed_left,
                              const std::vector<double>& seed_right) {
  if (!(L > 0.0) || n < 1) throw std::invalid_argument("shifted_pair_mesh: bad L or n");
  auto with_endpoints = [&](const std::vector<double>& interior) {
    std::vector<double> s{0.0};
    s.insert(s.end(), interior.begin(), interior.end());
    s.push_back(L);
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (!(s[i] < s[i + 1]))
        throw std::invalid_argument(
            "shifted_pair_mesh: seed breakpoints must increase strictly inside (0,L)");
    return s;
  };
  const std::vector<double> seed_l = with_endpoints(seed_left);
  const std::vector<double> seed_r = with_endpoints(seed_right);

  // chain[v][j] is v placed in slice j+1 by repeatedly adding L, so a value
  // and its one-slice-later copy on the opposite strand are identical floats.
  auto chain = [&](const std::vector<double>& seed) {
    std::vector<std::vector<double>> c(seed.size(), std::vector<double>(n));
    for (std::size_t i = 0; i < seed.size(); ++i) {
      double v = seed[i];
      for (int j = 0; j < n; ++j) {
        c[i][j] = v;
        v += L;
      }
    }
    return c;
  };
  auto cl = chain(seed_l), cr = chain(seed_r);

  auto build = [&](bool left_first) {
    std::vector<double> breaks;
    for (int j = 0; j < n; ++j) {
      const bool use_left_seed = (j % 2 == 0) == left_first;
      const auto& c = use_left_seed ? cl : cr;
      const std::size_t first = breaks.empty() ? 0 : 1;  // slice start repeats
      for (std::size_t i = first; i < c.size(); ++i) breaks.push_back(c[i][j]);
    }
    return breaks;
  };

  LateralMesh m;
  m.L = L;
  m.left_breaks = build(true);
  m.right_breaks = build(false);
  m.T = m.left_breaks.back();
  m.right_breaks.back() = m.T;
  m.validate();
  return m;
}

LateralMesh nonuniform_initial_mesh() {
  const double L = 3.0;
  const double T = 2.0 * std::numbers::pi;
  auto breaks = [&](int N) {
    std::vector<double> b(N + 1);
    for (int i = 0; i <= N; ++i) b[i] = (T * i) / N;
    b.front() = 0.0;
    b.back() = T;
    return b;
  };
  LateralMesh m{L, T, breaks(40), breaks(24)};
  m.validate();
  return m;
}

LateralMesh refine(const LateralMesh& mesh) {
  mesh.validate();
  auto bisect = [](const std::vector<double>& b) {
    std::vector<double> out;
    out.reserve(2 * b.size() - 1);
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      out.push_back(b[i]);
      out.push_back(0.5 * (b[i] + b[i + 1]));
    }
    out.push_back(b.back());
    return out;
  };
  LateralMesh m{mesh.L, mesh.T, bisect(mesh.left_breaks), bisect(mesh.right_breaks)};
  m.validate();
  return m;
}

std::string mesh_to_json(const LateralMesh& mesh) {
  nlohmann::json j;
  j["L"] = mesh.L;
  j["T"] = mesh.T;
  j["left_breaks"] = mesh.left_breaks;
  j["right_breaks"] = mesh.right_breaks;
  return j.dump(2);
}

LateralMesh mesh_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("mesh_from_json: ") + e.what());
  }
  LateralMesh m;
  try {
    m.L = j.at("L").get<double>();
    m.T = j.at("T").get<double>();
    m.left_breaks = j.at("left_breaks").get<std::vector<double>>();
    m.right_breaks = j.at("right_breaks").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("mesh_from_json: ") + e.what());
  }
  m.validate();
  return m;
}

}  // namespace wavebem
