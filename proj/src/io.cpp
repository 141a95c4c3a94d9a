#include "arb/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "arb/errors.hpp"
#include "arb/rng.hpp"

namespace arb::io {

namespace {

constexpr char kMagic[4] = {'A', 'R', 'B', 'F'};
constexpr std::uint8_t kVersion = 1;

[[noreturn]] void parse_fail(const std::filesystem::path& path,
                             std::size_t line, const std::string& what) {
  throw ParseError(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::uint64_t parse_index(const std::string& token,
                          const std::filesystem::path& path,
                          std::size_t line) {
  if (token.empty() || token[0] == '-')
    parse_fail(path, line, "negative or empty index '" + token + "'");
  std::uint64_t value = 0;
  for (char c : token) {
    if (c < '0' || c > '9')
      parse_fail(path, line, "malformed index '" + token + "'");
    const std::uint64_t next = value * 10 + static_cast<std::uint64_t>(c - '0');
    if (next < value || next > 0xFFFFFFFFULL)
      parse_fail(path, line, "index overflow in '" + token + "'");
    value = next;
  }
  return value;
}

// temp-file + rename so a crash never leaves a truncated file at `path`
class AtomicWriter {
 public:
  explicit AtomicWriter(const std::filesystem::path& path)
      : target_(path), temp_(path.string() + ".tmp") {
    stream_.open(temp_, std::ios::binary | std::ios::trunc);
    if (!stream_)
      throw ParseError("cannot open for writing: " + temp_.string());
  }

  std::ofstream& stream() { return stream_; }

  void commit() {
    stream_.flush();
    if (!stream_) throw ParseError("write failed: " + temp_.string());
    stream_.close();
    std::filesystem::rename(temp_, target_);
  }

  ~AtomicWriter() {
    if (stream_.is_open()) {
      stream_.close();
      std::error_code ec;
      std::filesystem::remove(temp_, ec);
    }
  }

 private:
  std::filesystem::path target_;
  std::filesystem::path temp_;
  std::ofstream stream_;
};

}  // namespace

std::pair<std::size_t, EdgeList> load_edge_list(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list: " + path.string());

  EdgeList edges;
  std::optional<std::size_t> declared_n;
  std::uint64_t max_index = 0;
  bool any_edge = false;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a) || a[0] == '#') continue;
    if (a == "N" && line_no == 1) {
      if (!(ls >> b)) parse_fail(path, line_no, "missing count after N");
      declared_n = static_cast<std::size_t>(parse_index(b, path, line_no));
      if (ls >> extra) parse_fail(path, line_no, "trailing token '" + extra + "'");
      continue;
    }
    if (!(ls >> b)) parse_fail(path, line_no, "expected two indices");
    if (ls >> extra) parse_fail(path, line_no, "trailing token '" + extra + "'");
    const std::uint64_t u = parse_index(a, path, line_no);
    const std::uint64_t v = parse_index(b, path, line_no);
    max_index = std::max({max_index, u, v});
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    any_edge = true;
  }

  std::size_t n = declared_n.value_or(any_edge ? max_index + 1 : 0);
  if (declared_n && any_edge && max_index >= *declared_n)
    throw ParseError(path.string() + ": edge index " +
                     std::to_string(max_index) + " exceeds declared N " +
                     std::to_string(*declared_n));
  return {n, edges};
}

namespace {

FeatureMatrix load_feature_binary(const std::filesystem::path& path,
                                  std::ifstream& in) {
  char magic[4];
  std::uint8_t version = 0;
  std::uint64_t n = 0, f = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), 1);
  in.read(reinterpret_cast<char*>(&n), 8);
  in.read(reinterpret_cast<char*>(&f), 8);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw ParseError(path.string() + ": bad ARBF magic/header");
  if (version != kVersion)
    throw ParseError(path.string() + ": unsupported ARBF version " +
                     std::to_string(version));
  FeatureMatrix x(n, f);
  in.read(reinterpret_cast<char*>(x.data().data()),
          static_cast<std::streamsize>(n * f * sizeof(double)));
  if (!in || in.gcount() !=
                 static_cast<std::streamsize>(n * f * sizeof(double)))
    throw ParseError(path.string() + ": truncated ARBF payload (expected " +
                     std::to_string(n * f) + " values)");
  if (!x.all_finite())
    throw ParseError(path.string() + ": NaN/Inf in feature payload");
  return x;
}

FeatureMatrix load_feature_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::replace(line.begin(), line.end(), '\t', ' ');
    std::istringstream ls(line);
    std::vector<double> row;
    std::string token;
    while (ls >> token) {
      try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        if (std::isnan(v))
          parse_fail(path, line_no, "NaN entry rejected");
        row.push_back(v);
      } catch (const std::logic_error&) {
        parse_fail(path, line_no, "malformed value '" + token + "'");
      }
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size())
      parse_fail(path, line_no,
                 "ragged row: expected " +
                     std::to_string(rows.front().size()) + " values, got " +
                     std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw ParseError(path.string() + ": no feature rows found");
  FeatureMatrix x(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    std::copy(rows[i].begin(), rows[i].end(), x.row(i));
  return x;
}

}  // namespace

FeatureMatrix load_feature_matrix(const std::filesystem::path& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw ParseError("cannot open features: " + path.string());
  char magic[4] = {0, 0, 0, 0};
  probe.read(magic, 4);
  if (probe.gcount() == 4 && std::memcmp(magic, kMagic, 4) == 0) {
    probe.seekg(0);
    return load_feature_binary(path, probe);
  }
  return load_feature_text(path);
}

std::vector<int> load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open labels: " + path.string());
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string token;
    if (!(ls >> token) || token[0] == '#') continue;
    try {
      std::size_t used = 0;
      const int v = std::stoi(token, &used);
      if (used != token.size() || v < 0) throw std::invalid_argument(token);
      labels.push_back(v);
    } catch (const std::logic_error&) {
      parse_fail(path, line_no, "malformed class id '" + token + "'");
    }
  }
  return labels;
}

void save_features(const std::filesystem::path& path, const FeatureMatrix& x) {
  AtomicWriter writer(path);
  auto& out = writer.stream();
  out.write(kMagic, 4);
  out.write(reinterpret_cast<const char*>(&kVersion), 1);
  const std::uint64_t n = x.n_nodes(), f = x.n_features();
  out.write(reinterpret_cast<const char*>(&n), 8);
  out.write(reinterpret_cast<const char*>(&f), 8);
  out.write(reinterpret_cast<const char*>(x.data().data()),
            static_cast<std::streamsize>(x.data().size() * sizeof(double)));
  writer.commit();
}

void save_report(const std::filesystem::path& path, const EvalReport& report) {
  AtomicWriter writer(path);
  auto& out = writer.stream();
  out.precision(17);
  for (const auto& [key, value] : report_entries(report))
    out << key << ' ' << value << '\n';
  writer.commit();
}

LongtailGraph generate_longtail_graph(std::size_t n_nodes, double mean_degree,
                                      double powerlaw_exponent,
                                      double isolated_fraction,
                                      std::uint64_t seed) {
  if (n_nodes < 10)
    throw InputError("generate_longtail_graph: need at least 10 nodes");
  if (isolated_fraction < 0.0 || isolated_fraction > 0.5)
    throw InputError("generate_longtail_graph: isolated_fraction in [0,0.5]");
  if (mean_degree <= 0.0 || powerlaw_exponent <= 1.0)
    throw InputError("generate_longtail_graph: need mean_degree > 0 and "
                     "exponent > 1");

  const std::size_t n_isolated = static_cast<std::size_t>(
      std::floor(isolated_fraction * static_cast<double>(n_nodes)));
  const std::size_t max_degree = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::sqrt(static_cast<double>(n_nodes))));

  Rng rng(seed);
  constexpr int kRetryCap = 20;
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    // Truncated continuous power law via inverse CDF, then rescaled
    // multiplicatively toward the requested mean.
    std::vector<double> raw(n_nodes, 0.0);
    double raw_mean = 0.0;
    for (std::size_t i = n_isolated; i < n_nodes; ++i) {
      const double u = rng.next_double();
      raw[i] = std::min(
          std::pow(1.0 - u, -1.0 / (powerlaw_exponent - 1.0)),
          static_cast<double>(max_degree));
      raw_mean += raw[i];
    }
    raw_mean /= static_cast<double>(n_nodes - n_isolated);
    const double scale =
        mean_degree * static_cast<double>(n_nodes) /
        (static_cast<double>(n_nodes - n_isolated) * raw_mean);

    std::vector<std::size_t> degree(n_nodes, 0);
    std::vector<NodeId> stubs;
    for (std::size_t i = n_isolated; i < n_nodes; ++i) {
      degree[i] = std::clamp<std::size_t>(
          static_cast<std::size_t>(std::floor(raw[i] * scale + 0.5)), 1,
          max_degree);
      for (std::size_t s = 0; s < degree[i]; ++s)
        stubs.push_back(static_cast<NodeId>(i));
    }
    if (stubs.size() < 2) continue;
    if (stubs.size() % 2 == 1) stubs.pop_back();
    rng.shuffle(stubs);

    EdgeList edges;
    edges.reserve(stubs.size() / 2);
    for (std::size_t s = 0; s + 1 < stubs.size(); s += 2)
      if (stubs[s] != stubs[s + 1]) edges.emplace_back(stubs[s], stubs[s + 1]);

    Graph graph = Graph::build(n_nodes, edges);
    if (graph.n_edges() == 0) continue;
    // Forced-isolated rows must stay isolated; pairing never touches them.
    LongtailGraph out{std::move(graph), {}};
    std::size_t max_deg_seen = 0;
    for (std::size_t i = 0; i < n_nodes; ++i)
      max_deg_seen = std::max(max_deg_seen, out.graph.degree(
                                                static_cast<NodeId>(i)));
    out.degree_histogram.assign(max_deg_seen + 1, 0);
    for (std::size_t i = 0; i < n_nodes; ++i)
      ++out.degree_histogram[out.graph.degree(static_cast<NodeId>(i))];
    return out;
  }
  throw NumericError(
      "generate_longtail_graph: infeasible degree sequence after retries");
}

std::pair<EdgeList, std::map<std::uint64_t, NodeId>> remap_node_ids(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& raw_edges) {
  std::map<std::uint64_t, NodeId> id_map;
  EdgeList edges;
  edges.reserve(raw_edges.size());
  auto lookup = [&](std::uint64_t raw) {
    auto [it, inserted] =
        id_map.try_emplace(raw, static_cast<NodeId>(id_map.size()));
    return it->second;
  };
  for (const auto& [u, v] : raw_edges) {
    // Sequence the lookups: argument evaluation order is unspecified and
    // id assignment must follow first-seen order.
    const NodeId nu = lookup(u);
    const NodeId nv = lookup(v);
    edges.emplace_back(nu, nv);
  }
  return {edges, id_map};
}

}  // namespace arb::io
