#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace modalstats {

/// One uniformly sampled real channel.
struct TimeSeries {
  std::vector<double> samples;
  double dt = 0.0;  // seconds per sample, > 0

  TimeSeries() = default;
  TimeSeries(std::vector<double> s, double dt_);

  std::size_t size() const { return samples.size(); }
  double fs() const { return 1.0 / dt; }
  double duration() const { return static_cast<double>(samples.size()) * dt; }

  /// Throws invalid_input_error on non-finite samples, dt <= 0, or length < 2.
  void validate() const;
};

/// U synchronized channels sharing dt and length, stored column-per-channel.
class TimeSeriesSet {
public:
  TimeSeriesSet() = default;

  /// data has one column per channel, one row per sample.
  TimeSeriesSet(Eigen::MatrixXd data, double dt);

  explicit TimeSeriesSet(const std::vector<TimeSeries>& channels);

  int num_channels() const { return static_cast<int>(data_.cols()); }
  Eigen::Index num_samples() const { return data_.rows(); }
  double dt() const { return dt_; }
  double fs() const { return 1.0 / dt_; }

  const Eigen::MatrixXd& data() const { return data_; }
  Eigen::VectorXd channel(int u) const { return data_.col(u); }
  TimeSeries channel_series(int u) const;

private:
  Eigen::MatrixXd data_;
  double dt_ = 0.0;
};

}  // namespace modalstats
