#include "modalstats/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "modalstats/errors.hpp"

namespace modalstats {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr char kSignalMagic[8] = {'M', 'S', 'S', 'I', 'G', '0', '0', '1'};
constexpr char kMatrixMagic[8] = {'M', 'S', 'M', 'A', 'T', '0', '0', '1'};

void write_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t read_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

void write_doubles(std::ostream& os, const double* p, std::size_t n) {
  os.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n * sizeof(double)));
}

void read_doubles(std::istream& is, double* p, std::size_t n) {
  is.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(n * sizeof(double)));
  if (!is) throw data_error("binary file truncated");
}

void write_matrix_file(const Eigen::MatrixXd& m, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw data_error("cannot open for writing: " + path);
  os.write(kMatrixMagic, sizeof(kMatrixMagic));
  write_u32(os, static_cast<std::uint32_t>(m.rows()));
  write_u32(os, static_cast<std::uint32_t>(m.cols()));
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  write_doubles(os, rm.data(), static_cast<std::size_t>(rm.size()));
  if (!os) throw data_error("write failed: " + path);
}

Eigen::MatrixXd read_matrix_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw data_error("cannot open: " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMatrixMagic, sizeof(magic)) != 0)
    throw data_error("bad matrix file magic: " + path);
  const std::uint32_t rows = read_u32(is);
  const std::uint32_t cols = read_u32(is);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm(rows, cols);
  read_doubles(is, rm.data(), static_cast<std::size_t>(rows) * cols);
  return rm;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
  return arr;
}

Eigen::MatrixXd matrix_from_json(const json& arr, Eigen::Index rows, Eigen::Index cols,
                                 const char* what) {
  if (!arr.is_array() || static_cast<Eigen::Index>(arr.size()) != rows * cols)
    throw data_error(std::string("model: bad ") + what + " array size");
  Eigen::MatrixXd m(rows, cols);
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = arr[static_cast<std::size_t>(p++)];
  return m;
}

}  // namespace

void write_model(const ModalModel& model, const std::string& path, bool binary_nodes) {
  model.validate();
  json j;
  j["schema_version"] = 1;
  j["name"] = model.name;
  const int nr = model.num_modes();
  j["Nr"] = nr;
  j["Nx"] = model.num_inputs();
  j["Nsigma"] = model.num_stress_components();
  json modes = json::array();
  for (int r = 0; r < nr; ++r)
    modes.push_back({{"freq_hz", model.omega0(r) / (2.0 * std::numbers::pi)},
                     {"zeta", model.zeta(r)},
                     {"modal_mass", model.modal_mass(r)}});
  j["modes"] = std::move(modes);
  j["participation"] = matrix_to_json(model.participation);

  json nodes = json::array();
  for (const auto& n : model.nodes) {
    json node;
    node["id"] = n.id;
    node["coords"] = {n.coords[0], n.coords[1], n.coords[2]};
    if (!binary_nodes) node["stress_shape"] = matrix_to_json(n.stress_shape);
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);

  if (binary_nodes) {
    const int ns = model.num_stress_components();
    Eigen::MatrixXd stacked(static_cast<Eigen::Index>(model.nodes.size()) * ns, nr);
    for (std::size_t i = 0; i < model.nodes.size(); ++i)
      stacked.middleRows(static_cast<Eigen::Index>(i) * ns, ns) = model.nodes[i].stress_shape;
    const std::string sidecar = fs::path(path).filename().string() + ".shapes.bin";
    write_matrix_file(stacked, (fs::path(path).parent_path() / sidecar).string());
    j["stress_shapes_sidecar"] = sidecar;
  }

  std::ofstream os(path);
  if (!os) throw data_error("cannot open for writing: " + path);
  os << j.dump(2) << "\n";
  if (!os) throw data_error("write failed: " + path);
}

ModalModel read_model(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw data_error("cannot open: " + path);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw data_error("model: invalid JSON in " + path + ": " + e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != 1)
      throw data_error("model: unsupported schema version");
    ModalModel model;
    model.name = j.value("name", "");
    const int nr = j.at("Nr").get<int>();
    const int nx = j.at("Nx").get<int>();
    const int ns = j.at("Nsigma").get<int>();
    const auto& modes = j.at("modes");
    if (static_cast<int>(modes.size()) != nr) throw data_error("model: mode count mismatch");
    model.omega0.resize(nr);
    model.zeta.resize(nr);
    model.modal_mass.resize(nr);
    for (int r = 0; r < nr; ++r) {
      const auto& m = modes[static_cast<std::size_t>(r)];
      model.omega0(r) = 2.0 * std::numbers::pi * m.at("freq_hz").get<double>();
      model.zeta(r) = m.at("zeta").get<double>();
      model.modal_mass(r) = m.at("modal_mass").get<double>();
    }
    model.participation = matrix_from_json(j.at("participation"), nr, nx, "participation");

    const auto& nodes = j.at("nodes");
    model.nodes.resize(nodes.size());
    Eigen::MatrixXd stacked;
    const bool sidecar = j.contains("stress_shapes_sidecar");
    if (sidecar) {
      const fs::path sp =
          fs::path(path).parent_path() / j.at("stress_shapes_sidecar").get<std::string>();
      stacked = read_matrix_file(sp.string());
      if (stacked.rows() != static_cast<Eigen::Index>(nodes.size()) * ns || stacked.cols() != nr)
        throw data_error("model: sidecar dimensions disagree with JSON envelope");
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      auto& node = model.nodes[i];
      node.id = n.at("id").get<int>();
      const auto& c = n.at("coords");
      if (c.size() != 3) throw data_error("model: coords must have 3 entries");
      node.coords = {c[0].get<double>(), c[1].get<double>(), c[2].get<double>()};
      node.stress_shape = sidecar
                              ? stacked.middleRows(static_cast<Eigen::Index>(i) * ns, ns).eval()
                              : matrix_from_json(n.at("stress_shape"), ns, nr, "stress_shape");
    }
    model.validate();
    return model;
  } catch (const json::exception& e) {
    throw data_error("model: missing or malformed field in " + path + ": " + e.what());
  } catch (const invalid_input_error& e) {
    throw data_error("model: invalid content in " + path + ": " + e.what());
  }
}

void write_signals(const TimeSeriesSet& set, const std::string& path) {
  const bool csv = fs::path(path).extension() == ".csv";
  if (csv) {
    std::ofstream os(path);
    if (!os) throw data_error("cannot open for writing: " + path);
    os << "t";
    for (int u = 1; u <= set.num_channels(); ++u) os << ",ch" << u;
    os << "\n";
    for (Eigen::Index i = 0; i < set.num_samples(); ++i) {
      os << format_double(static_cast<double>(i) * set.dt());
      for (int u = 0; u < set.num_channels(); ++u)
        os << "," << format_double(set.data()(i, u));
      os << "\n";
    }
    if (!os) throw data_error("write failed: " + path);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw data_error("cannot open for writing: " + path);
  os.write(kSignalMagic, sizeof(kSignalMagic));
  write_u32(os, static_cast<std::uint32_t>(set.num_samples()));
  write_u32(os, static_cast<std::uint32_t>(set.num_channels()));
  const double dt = set.dt();
  write_doubles(os, &dt, 1);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = set.data();
  write_doubles(os, rm.data(), static_cast<std::size_t>(rm.size()));
  if (!os) throw data_error("write failed: " + path);
}

namespace {

TimeSeriesSet read_signals_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw data_error("cannot open: " + path);
  std::string line;
  if (!std::getline(is, line)) throw data_error("signals: empty file " + path);
  int columns = 1;
  for (char ch : line)
    if (ch == ',') ++columns;
  if (columns < 2) throw data_error("signals: need a time column and one channel");

  std::vector<double> times;
  std::vector<double> values;  // row-major
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      double v;
      try {
        v = std::stod(cell);
      } catch (const std::exception&) {
        throw data_error("signals: non-numeric cell in " + path);
      }
      if (col == 0)
        times.push_back(v);
      else
        values.push_back(v);
      ++col;
    }
    if (col != columns) throw data_error("signals: ragged row in " + path);
  }
  const std::size_t n = times.size();
  if (n < 2) throw data_error("signals: need at least 2 samples");

  const double duration = times.back() - times.front();
  const double dt = duration / static_cast<double>(n - 1);
  if (!(dt > 0.0)) throw data_error("signals: time column not increasing");
  for (std::size_t i = 0; i < n; ++i) {
    const double expected = times.front() + static_cast<double>(i) * dt;
    if (std::abs(times[i] - expected) > 1e-9 * std::max(duration, dt))
      throw data_error("signals: non-uniform time grid");
  }

  const int u_count = columns - 1;
  Eigen::MatrixXd data(static_cast<Eigen::Index>(n), u_count);
  for (std::size_t i = 0; i < n; ++i)
    for (int u = 0; u < u_count; ++u)
      data(static_cast<Eigen::Index>(i), u) = values[i * static_cast<std::size_t>(u_count) +
                                                     static_cast<std::size_t>(u)];
  return TimeSeriesSet(std::move(data), dt);
}

TimeSeriesSet read_signals_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw data_error("cannot open: " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kSignalMagic, sizeof(magic)) != 0)
    throw data_error("signals: bad magic in " + path);
  const std::uint32_t n = read_u32(is);
  const std::uint32_t u = read_u32(is);
  double dt = 0.0;
  read_doubles(is, &dt, 1);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm(n, u);
  read_doubles(is, rm.data(), static_cast<std::size_t>(n) * u);
  try {
    return TimeSeriesSet(rm, dt);
  } catch (const invalid_input_error& e) {
    throw data_error("signals: invalid content in " + path + ": " + e.what());
  }
}

}  // namespace

TimeSeriesSet read_signals(const std::string& path) {
  if (fs::path(path).extension() == ".csv") return read_signals_csv(path);
  return read_signals_binary(path);
}

void write_field_csv(const std::vector<NodalFieldResult>& results, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw data_error("cannot open for writing: " + path);
  const int ns = results.empty() ? 0 : static_cast<int>(results.front().cov.rows());

  os << "node_id";
  for (int c = 1; c <= ns; ++c) os << ",var_" << c;
  for (int c = 1; c <= ns; ++c) os << ",beta_" << c;
  const char* stats[] = {"mu2", "mu4", "mu4stat", "c4", "beta"};
  for (const char* s : stats)
    os << "," << s << "_normal_max," << s << "_normal_angle_deg," << s << "_shear_max," << s
       << "_shear_angle_deg";
  os << "\n";

  auto emit_extremum = [&os](const StatExtremum& e) {
    if (!e.defined) {
      os << ",,,,";
      return;
    }
    os << "," << format_double(e.normal_max) << "," << format_double(e.normal_angle_deg) << ","
       << format_double(e.shear_max) << "," << format_double(e.shear_angle_deg);
  };

  for (const auto& r : results) {
    os << r.node_id;
    for (int c = 0; c < ns; ++c) os << "," << format_double(r.cov(c, c));
    for (int c = 0; c < ns; ++c) {
      os << ",";
      if (r.beta_defined[static_cast<std::size_t>(c)]) os << format_double(r.beta(c));
    }
    if (r.critical_plane) {
      emit_extremum(r.critical_plane->mu2);
      emit_extremum(r.critical_plane->mu4);
      emit_extremum(r.critical_plane->mu4_stat);
      emit_extremum(r.critical_plane->c4);
      emit_extremum(r.critical_plane->beta);
    } else {
      for (int k = 0; k < 5; ++k) os << ",,,,";
    }
    os << "\n";
  }
  if (!os) throw data_error("write failed: " + path);
}

void write_field_summary(const std::vector<NodalFieldResult>& results, const FieldRunStats& stats,
                         int top_k, const std::string& path) {
  json j;
  j["nodes"] = results.size();
  j["threads"] = stats.threads;
  j["runtime_seconds"] = {{"modal_solution", stats.seconds_modal_solution},
                          {"modal_stats", stats.seconds_modal_stats},
                          {"per_node", stats.seconds_nodes}};

  const bool swept = !results.empty() && results.front().critical_plane.has_value();
  auto top_list = [&](const std::function<double(const NodalFieldResult&)>& key,
                      const std::function<bool(const NodalFieldResult&)>& valid) {
    std::vector<const NodalFieldResult*> order;
    for (const auto& r : results)
      if (valid(r)) order.push_back(&r);
    std::sort(order.begin(), order.end(),
              [&](const NodalFieldResult* a, const NodalFieldResult* b) {
                return key(*a) > key(*b);
              });
    json arr = json::array();
    for (std::size_t i = 0; i < order.size() && i < static_cast<std::size_t>(top_k); ++i)
      arr.push_back({{"node", order[i]->node_id}, {"value", key(*order[i])}});
    return arr;
  };

  json top;
  if (swept) {
    auto always = [](const NodalFieldResult&) { return true; };
    auto beta_ok = [](const NodalFieldResult& r) { return r.critical_plane->beta.defined; };
    top["mu2_normal"] = top_list([](const auto& r) { return r.critical_plane->mu2.normal_max; }, always);
    top["mu2_shear"] = top_list([](const auto& r) { return r.critical_plane->mu2.shear_max; }, always);
    top["mu4_normal"] = top_list([](const auto& r) { return r.critical_plane->mu4.normal_max; }, always);
    top["mu4_shear"] = top_list([](const auto& r) { return r.critical_plane->mu4.shear_max; }, always);
    top["mu4stat_normal"] =
        top_list([](const auto& r) { return r.critical_plane->mu4_stat.normal_max; }, always);
    top["mu4stat_shear"] =
        top_list([](const auto& r) { return r.critical_plane->mu4_stat.shear_max; }, always);
    top["c4_normal"] = top_list([](const auto& r) { return r.critical_plane->c4.normal_max; }, always);
    top["c4_shear"] = top_list([](const auto& r) { return r.critical_plane->c4.shear_max; }, always);
    top["beta_normal"] = top_list([](const auto& r) { return r.critical_plane->beta.normal_max; }, beta_ok);
    top["beta_shear"] = top_list([](const auto& r) { return r.critical_plane->beta.shear_max; }, beta_ok);
  } else {
    auto always = [](const NodalFieldResult&) { return true; };
    top["mu2"] = top_list([](const auto& r) { return r.cov(0, 0); }, always);
    top["mu4"] = top_list([](const auto& r) { return r.m4(0, 0, 0, 0); }, always);
    top["mu4stat"] = top_list([](const auto& r) { return r.m4_stat(0, 0, 0, 0); }, always);
    top["c4"] = top_list([](const auto& r) { return r.c4(0, 0, 0, 0); }, always);
    top["beta"] = top_list([](const auto& r) { return r.beta(0); },
                           [](const auto& r) { return r.beta_defined[0] != 0; });
  }
  j["top"] = std::move(top);

  std::ofstream os(path);
  if (!os) throw data_error("cannot open for writing: " + path);
  os << j.dump(2) << "\n";
  if (!os) throw data_error("write failed: " + path);
}

}  // namespace modalstats
