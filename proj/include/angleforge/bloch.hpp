#pragma once

#include "angleforge/core.hpp"

namespace angleforge {

// P(C^2) -> S_{R^3}: [(cos t, e^{iv} sin t)] -> (sin 2t cos v, sin 2t sin v, cos 2t).
// Halves of line angles become sphere angles: angle(rho u, rho v) = 2 angle([u],[v]).
inline Eigen::Vector3d to_bloch(const ComplexLine& line) {
  if (line.dim() != 2) throw std::invalid_argument("to_bloch: need dim 2");
  const Complex a = line.rep()[0];
  const Complex b = line.rep()[1];
  const double theta = std::atan2(std::abs(b), std::abs(a));  // in [0,pi/2]
  double nu = 0.0;                                            // poles: phase unidentifiable
  if (std::abs(a) > 1e-14 && std::abs(b) > 1e-14) nu = std::arg(b * std::conj(a));
  return {std::sin(2.0 * theta) * std::cos(nu), std::sin(2.0 * theta) * std::sin(nu),
          std::cos(2.0 * theta)};
}

inline ComplexLine from_bloch(const Eigen::Vector3d& p) {
  const double n = p.norm();
  if (std::abs(n - 1.0) > 1e-6) throw std::invalid_argument("from_bloch: not a unit vector");
  const Eigen::Vector3d q = p / n;
  const double theta = 0.5 * std::acos(clamp_unit(q[2]));
  const double nu = (std::abs(q[0]) + std::abs(q[1]) > 1e-14) ? std::atan2(q[1], q[0]) : 0.0;
  ComplexVec v(2);
  v << Complex(std::cos(theta), 0.0),
      Complex(std::cos(nu), std::sin(nu)) * std::sin(theta);
  return ComplexLine(v);
}

// The unique orthogonal line in P(C^2); Bloch antipode of the input.
inline ComplexLine orthocomplement(const ComplexLine& line) {
  if (line.dim() != 2) throw std::invalid_argument("orthocomplement: need dim 2");
  const Complex a = line.rep()[0];
  const Complex b = line.rep()[1];
  ComplexVec v(2);
  v << -std::conj(b), std::conj(a);
  return ComplexLine(v);
}

}  // namespace angleforge
