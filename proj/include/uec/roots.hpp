#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "uec/gpoly.hpp"

namespace uec {

struct Root {
  std::complex<double> value;
  int multiplicity = 1;
};

struct RootOptions {
  /// Residual tolerance relative to the evaluation scale sum |c_k| |z|^k.
  double tol = 1e-10;
  int max_iterations = 500;
  /// Angular offset of the initial Aberth circle.
  double start_angle = 0.4;
};

class RootFindingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All roots of a square-free polynomial given in double precision
/// (Aberth-Ehrlich simultaneous iteration followed by Newton polishing).
std::vector<std::complex<double>> aberth_roots(const CPoly& p, const RootOptions& opt = {});

/// All deg p roots with exact multiplicities: the square-free factors come
/// from exact gcds, their roots from aberth_roots. Output is sorted by
/// (real, imag) so results are reproducible.
std::vector<Root> roots_numeric(const GPoly& p, const RootOptions& opt = {});

}  // namespace uec
