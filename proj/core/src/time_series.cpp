#include "modalstats/time_series.hpp"

#include <cmath>

#include "modalstats/errors.hpp"

namespace modalstats {

TimeSeries::TimeSeries(std::vector<double> s, double dt_) : samples(std::move(s)), dt(dt_) {
  validate();
}

void TimeSeries::validate() const {
  if (dt <= 0.0 || !std::isfinite(dt))
    throw invalid_input_error("time_series: dt must be positive and finite");
  if (samples.size() < 2)
    throw invalid_input_error("time_series: need at least 2 samples");
  for (double x : samples)
    if (!std::isfinite(x)) throw invalid_input_error("time_series: non-finite sample");
}

TimeSeriesSet::TimeSeriesSet(Eigen::MatrixXd data, double dt)
    : data_(std::move(data)), dt_(dt) {
  if (dt_ <= 0.0 || !std::isfinite(dt_))
    throw invalid_input_error("time_series_set: dt must be positive and finite");
  if (data_.cols() < 1) throw invalid_input_error("time_series_set: need at least one channel");
  if (data_.rows() < 2) throw invalid_input_error("time_series_set: need at least 2 samples");
  if (!data_.allFinite()) throw invalid_input_error("time_series_set: non-finite sample");
}

TimeSeriesSet::TimeSeriesSet(const std::vector<TimeSeries>& channels) {
  if (channels.empty())
    throw invalid_input_error("time_series_set: need at least one channel");
  const std::size_t n = channels.front().size();
  const double dt = channels.front().dt;
  for (const auto& ch : channels) {
    ch.validate();
    if (ch.size() != n) throw invalid_input_error("time_series_set: channel length mismatch");
    if (ch.dt != dt) throw invalid_input_error("time_series_set: channel dt mismatch");
  }
  data_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(channels.size()));
  for (std::size_t u = 0; u < channels.size(); ++u)
    data_.col(static_cast<Eigen::Index>(u)) = Eigen::Map<const Eigen::VectorXd>(
        channels[u].samples.data(), static_cast<Eigen::Index>(n));
  dt_ = dt;
}

TimeSeries TimeSeriesSet::channel_series(int u) const {
  Eigen::VectorXd col = data_.col(u);
  return TimeSeries(std::vector<double>(col.data(), col.data() + col.size()), dt_);
}

}  // namespace modalstats
