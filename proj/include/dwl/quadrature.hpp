#pragma once

#include <array>
#include <functional>

namespace dwl {

/// Adaptive Simpson integration of f over [a, b] with absolute tolerance.
/// The integrand must be finite on the closed interval.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth = 48);

/// Semi-infinite integral of a non-negative, eventually-decreasing f over
/// [a, inf). Segments grow geometrically; the measured inter-segment decay
/// ratio bounds the remaining tail. Stops once the tail estimate drops
/// below rel_tol times the accumulated value.
double integrate_tail(const std::function<double(double)>& f, double a,
                      double rel_tol, int max_segments = 5000);

/// Nodes and weights of the 8-point Gauss-Legendre rule on [0, 1].
struct GaussLegendre8 {
  static constexpr int n = 8;
  std::array<double, 8> node;
  std::array<double, 8> weight;
};
const GaussLegendre8& gauss_legendre_8();

}  // namespace dwl
