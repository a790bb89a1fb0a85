#pragma once

#include <string>
#include <vector>

#include "modalstats/modal.hpp"
#include "modalstats/response.hpp"
#include "modalstats/time_series.hpp"

namespace modalstats {

// Model files are a JSON envelope; stress shapes can optionally live in a
// raw little-endian binary sidecar for large node sets. Signal files are
// either CSV ("t,ch1..chU", 17 significant digits) or the same raw binary
// format. All readers throw data_error on malformed content.

/// Writes model.json; with binary_nodes the per-node stress shapes go to
/// <path>.shapes.bin (row-major, node-major) and the JSON references it.
void write_model(const ModalModel& model, const std::string& path, bool binary_nodes = false);

ModalModel read_model(const std::string& path);

/// Dispatches on extension: ".csv" writes text, anything else raw binary.
void write_signals(const TimeSeriesSet& set, const std::string& path);

TimeSeriesSet read_signals(const std::string& path);

/// One CSV row per node: per-statistic normal/shear maxima with their sweep
/// angles when a critical-plane summary is present, plus the component
/// kurtosis values. Undefined kurtosis entries export as empty cells.
void write_field_csv(const std::vector<NodalFieldResult>& results, const std::string& path);

/// JSON summary: top-k node ids per statistic and the runtime breakdown.
void write_field_summary(const std::vector<NodalFieldResult>& results, const FieldRunStats& stats,
                         int top_k, const std::string& path);

}  // namespace modalstats
