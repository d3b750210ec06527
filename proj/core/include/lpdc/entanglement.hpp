#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lpdc/jsa.hpp"

namespace lpdc {

struct SchmidtResult {
  std::vector<double> singular_values;  // non-increasing, of f * sqrt(dnu_s dnu_i)
  std::vector<double> coefficients;     // lambda_n = s_n^2 / sum s^2
  double schmidt_number = 1.0;          // K = 1 / sum lambda_n^2
  double purity = 1.0;                  // sum lambda_n^2
  double entropy = 0.0;                 // -sum lambda_n log2 lambda_n, bits

  // Filled only when modes are requested; columns are Schmidt modes.
  Eigen::MatrixXcd signal_modes;
  Eigen::MatrixXcd idler_modes;
};

/// SVD of the grid-measure-scaled amplitude matrix. Singular values below
/// machine epsilon relative to the largest are dropped.
SchmidtResult schmidt_decompose(const JointAmplitude& jsa, bool with_modes = false);

/// Row (signal) or column (idler) sums of |f|^2 times the grid measure;
/// integrates to 1 against the matching axis step.
std::vector<double> marginal_spectrum(const JointAmplitude& jsa, Photon which);

}  // namespace lpdc
