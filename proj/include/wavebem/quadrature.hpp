#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace wavebem {

// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n - 1.
struct GaussRule {
  std::vector<double> nodes;    // the positive half; 0 listed once if present
  std::vector<double> weights;  // matching weights

  template <class F>
  double apply(const F& f, double a, double b) const {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i] == 0.0) {
        sum += weights[i] * f(mid);
      } else {
        sum += weights[i] * (f(mid + half * nodes[i]) + f(mid - half * nodes[i]));
      }
    }
    return half * sum;
  }
};

// Supported orders: 1, 2, 4, 8, 16 (throws std::invalid_argument otherwise).
inline const GaussRule& gauss_rule(int order) {
  static const GaussRule g1{{0.0}, {2.0}};
  static const GaussRule g2{{0.5773502691896257}, {1.0}};
  static const GaussRule g4{{0.3399810435848563, 0.8611363115940526},
                            {0.6521451548625461, 0.3478548451374538}};
  static const GaussRule g8{{0.1834346424956498, 0.5255324099163290,
                             0.7966664774136267, 0.9602898564975363},
                            {0.3626837833783620, 0.3137066458778873,
                             0.2223810344533745, 0.1012285362903763}};
  static const GaussRule g16{
      {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
       0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
       0.9445750230732326, 0.9894009349916499},
      {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
       0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
       0.0622535239386479, 0.0271524594117541}};
  switch (order) {
    case 1: return g1;
    case 2: return g2;
    case 4: return g4;
    case 8: return g8;
    case 16: return g16;
    default: throw std::invalid_argument("gauss_rule: unsupported order");
  }
}

template <class F>
double gauss_integrate(const F& f, double a, double b, int order) {
  return gauss_rule(order).apply(f, a, b);
}

// Integrate with the interval split at every listed kink that falls strictly
// inside (a, b), so the rule only ever sees smooth pieces.
template <class F>
double gauss_integrate_split(const F& f, double a, double b,
                             const std::vector<double>& kinks, int order) {
  std::vector<double> cuts{a};
  for (double k : kinks)
    if (k > a && k < b) cuts.push_back(k);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    sum += gauss_integrate(f, cuts[i], cuts[i + 1], order);
  return sum;
}

}  // namespace wavebem
