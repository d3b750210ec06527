#include "lpdc/entanglement.hpp"

#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "lpdc/error.hpp"

namespace lpdc {

SchmidtResult schmidt_decompose(const JointAmplitude& jsa, bool with_modes) {
  jsa.require_normalized();
  const Eigen::MatrixXcd scaled = jsa.values * std::sqrt(jsa.cell_area());

  const unsigned options = with_modes ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : 0u;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(scaled, options);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorCode::decomposition_failure, "singular value decomposition did not converge");
  }
  const Eigen::VectorXd& s = svd.singularValues();
  if (s.size() == 0 || !(s(0) > 0.0)) {
    throw Error(ErrorCode::decomposition_failure, "joint amplitude has no non-zero singular value");
  }

  SchmidtResult out;
  const double cutoff = s(0) * std::numeric_limits<double>::epsilon();
  double total = 0.0;
  for (Eigen::Index n = 0; n < s.size() && s(n) > cutoff; ++n) {
    out.singular_values.push_back(s(n));
    total += s(n) * s(n);
  }
  double sum_sq = 0.0;
  double entropy = 0.0;
  out.coefficients.reserve(out.singular_values.size());
  for (double sv : out.singular_values) {
    const double lambda = sv * sv / total;
    out.coefficients.push_back(lambda);
    sum_sq += lambda * lambda;
    if (lambda > 0.0) entropy -= lambda * std::log2(lambda);
  }
  out.purity = sum_sq;
  out.schmidt_number = 1.0 / sum_sq;
  out.entropy = entropy;
  if (with_modes) {
    const auto kept = static_cast<Eigen::Index>(out.singular_values.size());
    out.signal_modes = svd.matrixU().leftCols(kept);
    out.idler_modes = svd.matrixV().leftCols(kept);
  }
  return out;
}

std::vector<double> marginal_spectrum(const JointAmplitude& jsa, Photon which) {
  jsa.require_normalized();
  const Eigen::MatrixXd density = jsa.values.cwiseAbs2();
  std::vector<double> out;
  if (which == Photon::signal) {
    const double step = jsa.grid.idler_step();
    const Eigen::VectorXd rows = density.rowwise().sum();
    out.resize(static_cast<std::size_t>(rows.size()));
    for (Eigen::Index r = 0; r < rows.size(); ++r) out[static_cast<std::size_t>(r)] = rows(r) * step;
  } else {
    const double step = jsa.grid.signal_step();
    const Eigen::RowVectorXd cols = density.colwise().sum();
    out.resize(static_cast<std::size_t>(cols.size()));
    for (Eigen::Index c = 0; c < cols.size(); ++c) out[static_cast<std::size_t>(c)] = cols(c) * step;
  }
  return out;
}

}  // namespace lpdc
