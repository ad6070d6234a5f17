#include "bopgraph/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>
#include <utility>
#include <vector>

namespace bopgraph {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    fields.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

template <typename T>
std::optional<T> parse_number(std::string_view field) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
  throw InputError("line " + std::to_string(line_no) + ": " + what);
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  return in;
}

}  // namespace

Graph load_edge_list(std::istream& in, bool directed, const WarningSink& warnings) {
  std::map<std::pair<std::size_t, std::size_t>, double> arcs;
  std::size_t num_nodes = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto fields = split(content, '\t');
    if (fields.size() != 3)
      parse_error(line_no, "expected src<TAB>dst<TAB>weight, got " +
                               std::to_string(fields.size()) + " field(s)");
    const auto src = parse_number<std::size_t>(fields[0]);
    const auto dst = parse_number<std::size_t>(fields[1]);
    const auto weight = parse_number<double>(fields[2]);
    if (!src || !dst) parse_error(line_no, "node ids must be nonnegative integers");
    if (!weight) parse_error(line_no, "weight is not a number");
    if (!(*weight > 0.0) || !std::isfinite(*weight))
      parse_error(line_no, "weight must be positive and finite");
    if (*src == *dst) parse_error(line_no, "self-loop on node " + std::to_string(*src));
    auto key = std::make_pair(*src, *dst);
    if (!directed && key.first > key.second) std::swap(key.first, key.second);
    const auto [it, inserted] = arcs.insert_or_assign(key, *weight);
    if (!inserted)
      warn(warnings, "line " + std::to_string(line_no) + ": duplicate edge " +
                         std::to_string(*src) + " -> " + std::to_string(*dst) +
                         ", keeping the last weight");
    num_nodes = std::max({num_nodes, *src + 1, *dst + 1});
  }
  if (num_nodes == 0) throw InputError("edge list contains no edges");

  const auto n = static_cast<Eigen::Index>(num_nodes);
  Matrix a = Matrix::Zero(n, n);
  for (const auto& [key, weight] : arcs) {
    const auto i = static_cast<Eigen::Index>(key.first);
    const auto j = static_cast<Eigen::Index>(key.second);
    a(i, j) = weight;
    if (!directed) a(j, i) = weight;
  }
  return Graph::from_affinities(std::move(a), directed);
}

Graph load_edge_list_file(const std::string& path, bool directed, const WarningSink& warnings) {
  auto in = open_or_throw(path);
  return load_edge_list(in, directed, warnings);
}

void write_edge_list(std::ostream& out, const Graph& graph) {
  const auto& a = graph.affinities();
  const auto n = a.rows();
  std::ostringstream buf;
  buf << std::setprecision(std::numeric_limits<double>::max_digits10);
  buf << "# " << (graph.directed() ? "directed" : "undirected") << " graph, " << n << " nodes\n";
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = graph.directed() ? 0 : i + 1; j < n; ++j)
      if (a(i, j) > 0.0) buf << i << '\t' << j << '\t' << a(i, j) << '\n';
  out << buf.str();
}

LabelAssignment load_labels(std::istream& in, std::size_t num_nodes,
                            std::optional<int> num_classes) {
  std::vector<int> labels(num_nodes, LabelAssignment::kUnlabeled);
  int max_class = -1;
  std::string line;
  std::size_t line_no = 0;
  bool first_record = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto fields = split(content, ',');
    if (first_record) {
      first_record = false;
      if (!fields.empty() && !parse_number<long long>(fields[0])) {
        bool numeric_start = !fields[0].empty() &&
                             (std::isdigit(static_cast<unsigned char>(fields[0][0])) ||
                              fields[0][0] == '-');
        if (!numeric_start) continue;  // header
      }
    }
    if (fields.size() != 2) parse_error(line_no, "expected node,class");
    const auto node = parse_number<long long>(fields[0]);
    const auto cls = parse_number<long long>(fields[1]);
    if (!node || !cls) parse_error(line_no, "node and class must be integers");
    if (*node < 0 || static_cast<std::size_t>(*node) >= num_nodes)
      parse_error(line_no, "node id " + std::to_string(*node) + " out of range [0, " +
                               std::to_string(num_nodes) + ")");
    if (*cls < 0 || (num_classes && *cls >= *num_classes))
      parse_error(line_no, "class id " + std::to_string(*cls) + " out of range");
    auto& slot = labels[static_cast<std::size_t>(*node)];
    if (slot != LabelAssignment::kUnlabeled && slot != *cls)
      parse_error(line_no, "node " + std::to_string(*node) + " listed with conflicting classes " +
                               std::to_string(slot) + " and " + std::to_string(*cls));
    slot = static_cast<int>(*cls);
    max_class = std::max(max_class, slot);
  }
  const int m = num_classes.value_or(max_class + 1);
  if (m < 1) throw InputError("label file contains no labels");
  LabelAssignment result(std::move(labels), m);
  result.require_min_seeds(2);
  return result;
}

LabelAssignment load_labels_file(const std::string& path, std::size_t num_nodes,
                                 std::optional<int> num_classes) {
  auto in = open_or_throw(path);
  return load_labels(in, num_nodes, num_classes);
}

void write_labels(std::ostream& out, const LabelAssignment& labels) {
  out << "node,class\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels.is_labeled(i)) out << i << ',' << labels.label(i) << '\n';
}

}  // namespace bopgraph
