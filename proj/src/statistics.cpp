#include "schatten/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "schatten/errors.hpp"

namespace schatten {

long ChainLayout::total() const { return std::accumulate(chain_lengths.begin(), chain_lengths.end(), 0L); }

ChainLayout ChainLayout::single(long count, bool independent) {
  ChainLayout layout;
  layout.chain_lengths = {count};
  layout.independent = independent;
  return layout;
}

JointMean joint_batch_means(const Eigen::MatrixXd& values, const ChainLayout& layout, int target_batches) {
  const long n = values.rows();
  const Eigen::Index k = values.cols();
  if (layout.total() != n) throw DimensionMismatch("chain layout does not cover the draws");
  JointMean out;
  out.count = n;
  out.mean = Eigen::VectorXd::Zero(k);
  out.covariance = Eigen::MatrixXd::Constant(k, k, std::numeric_limits<double>::infinity());
  out.variance = Eigen::VectorXd::Zero(k);
  if (n == 0) return out;
  out.mean = values.colwise().mean().transpose();
  const Eigen::MatrixXd centered = values.rowwise() - out.mean.transpose();
  if (n > 1) {
    const Eigen::MatrixXd sample_cov = centered.transpose() * centered / static_cast<double>(n - 1);
    out.variance = sample_cov.diagonal();
    if (layout.independent) {
      out.covariance = sample_cov / static_cast<double>(n);
      out.batches = static_cast<int>(std::min<long>(n, std::numeric_limits<int>::max()));
      return out;
    }
  }

  const long chains = static_cast<long>(layout.chain_lengths.size());
  const long per_chain = std::max<long>(1, (target_batches + chains - 1) / chains);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(k, k);
  int batches = 0;
  long offset = 0;
  for (long len : layout.chain_lengths) {
    const long b_count = std::max<long>(1, std::min<long>(per_chain, len / 2));
    if (len == 0) continue;
    for (long b = 0; b < b_count; ++b) {
      const long lo = offset + len * b / b_count;
      const long hi = offset + len * (b + 1) / b_count;
      if (hi <= lo) continue;
      const Eigen::VectorXd batch_dev = centered.middleRows(lo, hi - lo).colwise().mean().transpose();
      const double w = static_cast<double>(hi - lo) / static_cast<double>(n);
      acc += (w * w) * batch_dev * batch_dev.transpose();
      ++batches;
    }
    offset += len;
  }
  out.batches = batches;
  if (batches >= 2) out.covariance = acc * (static_cast<double>(batches) / (batches - 1));
  return out;
}

SeriesMean batch_means(const Eigen::VectorXd& values, const ChainLayout& layout, int target_batches) {
  const JointMean joint = joint_batch_means(values, layout, target_batches);
  SeriesMean out;
  out.count = joint.count;
  out.mean = joint.mean.size() ? joint.mean[0] : 0.0;
  out.variance = joint.variance.size() ? joint.variance[0] : 0.0;
  const double se2 = joint.covariance.size() ? joint.covariance(0, 0) : std::numeric_limits<double>::infinity();
  out.std_err = std::sqrt(se2);
  if (se2 > 0.0 && std::isfinite(se2)) {
    out.ess = std::min(out.variance / se2, static_cast<double>(out.count));
  } else if (se2 == 0.0) {
    out.ess = static_cast<double>(out.count);
  }
  return out;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_distance needs two nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

}  // namespace schatten
