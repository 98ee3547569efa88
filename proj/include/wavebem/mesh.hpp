#pragma once

#include <string>
#include <utility>
#include <vector>

namespace wavebem {

// Mesh of the lateral boundary {0,L} x (0,T): two independent partitions
// ("strands") of the time interval, one per boundary point.
struct LateralMesh {
  double L = 0.0;
  double T = 0.0;
  std::vector<double> left_breaks;
  std::vector<double> right_breaks;

  int left_elements() const { return static_cast<int>(left_breaks.size()) - 1; }
  int right_elements() const { return static_cast<int>(right_breaks.size()) - 1; }
  int total_elements() const { return left_elements() + right_elements(); }
  double max_width() const;

  // Throws std::invalid_argument unless both strands start at exactly 0,
  // end at exactly T and are strictly increasing.
  void validate() const;
};

// Decomposition of (0,T) into slices of length L; the last slice is
// truncated when T is not a multiple of L.
struct TimeSlices {
  int n = 0;
  std::vector<std::pair<double, double>> slices;
};

// Both strands partitioned into N equal elements.
LateralMesh uniform_mesh(double L, double T, int N);

// Smallest n with T <= n*L together with the slice intervals.
TimeSlices slice_count(double L, double T);

// True iff T = nL (within rel_tol*T) and, for every pair of consecutive
// slices, the breakpoints interior to a slice shifted by +L coincide with
// the opposite strand's breakpoints interior to the next slice, in both
// directions.
bool satisfies_slice_shift(const LateralMesh& mesh, double rel_tol = 1e-12);

// Mesh with T = nL built from two seeds, each a set of breakpoints interior
// to (0,L): slice j of the left strand carries seed_left for odd j and
// seed_right for even j, the right strand the opposite way round.  Slice
// placement reuses one shared offset chain so the shift check passes with
// tolerance 0.
LateralMesh shifted_pair_mesh(double L, int n,
                              const std::vector<double>& seed_left,
                              const std::vector<double>& seed_right);

// Initial mesh of the assumption-violating family: L=3, T=2*pi, 40 uniform
// elements on the left strand and 24 on the right.
LateralMesh nonuniform_initial_mesh();

// Bisect every element on both strands.
LateralMesh refine(const LateralMesh& mesh);

std::string mesh_to_json(const LateralMesh& mesh);
LateralMesh mesh_from_json(const std::string& text);

}  // namespace wavebem
