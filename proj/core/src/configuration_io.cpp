#include "hierperc/configuration_io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hierperc/errors.hpp"

namespace hierperc {

namespace {

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    fields.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

template <class T>
T parse_integer(std::string_view text, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParameterError(std::string("malformed ") + what + ": '" + std::string(text) + "'");
  }
  return value;
}

double parse_real(std::string_view text, const char* what) {
  std::string owned(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(owned, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != owned.size()) throw ParameterError(std::string("malformed ") + what + ": '" + owned + "'");
  return value;
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

void write_configuration_csv(std::ostream& out, const Configuration& config) {
  const auto& p = config.params();
  out << "N,n,alpha,beta,gamma,seed,replicate\n";
  out << p.order << ',' << p.radius << ',' << format_real(p.alpha) << ',' << format_real(p.beta) << ','
      << format_real(p.gamma) << ',' << p.seed << ',' << p.replicate << '\n';
  out << "open_mask,";
  if (config.open_mask()) {
    for (bool open : *config.open_mask()) out << (open ? '1' : '0');
  }
  out << '\n';
  out << "u,v\n";
  for (const auto& [u, v] : config.edges()) out << u << ',' << v << '\n';
}

Configuration read_configuration_csv(std::istream& in) {
  std::string line;
  if (!next_line(in, line) || line != "N,n,alpha,beta,gamma,seed,replicate") {
    throw ParameterError("configuration CSV: missing parameter header");
  }
  if (!next_line(in, line)) throw ParameterError("configuration CSV: missing parameter row");
  const auto fields = split(line, ',');
  if (fields.size() != 7) throw ParameterError("configuration CSV: parameter row needs 7 fields");
  PercolationParams params;
  params.order = parse_integer<unsigned>(fields[0], "N");
  params.radius = parse_integer<unsigned>(fields[1], "n");
  params.alpha = parse_real(fields[2], "alpha");
  params.beta = parse_real(fields[3], "beta");
  params.gamma = parse_real(fields[4], "gamma");
  params.seed = parse_integer<std::uint64_t>(fields[5], "seed");
  params.replicate = parse_integer<std::uint64_t>(fields[6], "replicate");
  params.validate();

  if (!next_line(in, line) || line.rfind("open_mask,", 0) != 0) throw ParameterError("configuration CSV: missing open_mask row");
  std::optional<std::vector<bool>> mask;
  const std::string_view bits = std::string_view(line).substr(10);
  if (!bits.empty()) {
    mask.emplace();
    mask->reserve(bits.size());
    for (char c : bits) {
      if (c != '0' && c != '1') throw ParameterError("configuration CSV: open_mask must be a bit string");
      mask->push_back(c == '1');
    }
  }

  if (!next_line(in, line) || line != "u,v") throw ParameterError("configuration CSV: missing edge header");
  std::vector<Edge> edges;
  while (next_line(in, line)) {
    if (line.empty()) continue;
    const auto uv = split(line, ',');
    if (uv.size() != 2) throw ParameterError("configuration CSV: edge rows need two labels");
    edges.emplace_back(parse_integer<Label>(uv[0], "label"), parse_integer<Label>(uv[1], "label"));
  }
  return Configuration(params, std::move(edges), std::move(mask));
}

}  // namespace hierperc
