#pragma once

#include <vector>

#include <Eigen/Core>

namespace schatten {

// Mean of a scalar series with its standard error.
struct SeriesMean {
  double mean = 0.0;
  double std_err = 0.0;
  double variance = 0.0;  // per-draw sample variance
  double ess = 0.0;       // variance / std_err^2, capped at the draw count
  long count = 0;
};

// Joint means of several series evaluated on the same draws.
struct JointMean {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;  // covariance matrix of the mean estimator
  Eigen::VectorXd variance;    // per-draw sample variances
  long count = 0;
  int batches = 0;
};

// Layout of consecutive draws: chain k owns the next chain_lengths[k] rows.
struct ChainLayout {
  std::vector<long> chain_lengths;
  bool independent = false;  // draws are i.i.d., so the plain sample variance applies

  long total() const;
  static ChainLayout single(long count, bool independent);
};

constexpr int kTargetBatches = 40;

// values: one row per draw, one column per series. Batches never straddle chains.
JointMean joint_batch_means(const Eigen::MatrixXd& values, const ChainLayout& layout,
                            int target_batches = kTargetBatches);

SeriesMean batch_means(const Eigen::VectorXd& values, const ChainLayout& layout, int target_batches = kTargetBatches);

// Two-sample Kolmogorov-Smirnov statistic.
double ks_distance(std::vector<double> a, std::vector<double> b);

}  // namespace schatten
