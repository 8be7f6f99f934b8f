#include "bflab/weight_spec.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "bflab/config.hpp"

namespace bflab::weights {

namespace {

struct Parsed {
  std::string family;
  std::string arg;
};

Parsed split(const std::string& spec) {
  const auto c = spec.find(':');
  if (c == std::string::npos) return {spec, ""};
  return {spec.substr(0, c), spec.substr(c + 1)};
}

std::vector<double> numbers(const std::string& arg, std::size_t count) {
  std::vector<double> v;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_real("weight", item));
  if (v.size() != count)
    throw ConfigError("field 'weight': expected " + std::to_string(count) + " parameter(s) in '" + arg + "'");
  return v;
}

}  // namespace

dyadic::DyadicWeight dyadic_weight(const std::string& spec, int depth) {
  const Parsed s = split(spec);
  if (s.family == "file") {
    std::ifstream is(s.arg);
    if (!is) throw ConfigError("field 'weight': cannot read '" + s.arg + "'");
    std::vector<double> v;
    std::string line;
    while (std::getline(is, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      v.push_back(parse_real("weight", line));
    }
    if (v.size() != (std::size_t{1} << depth))
      throw ConfigError("field 'weight': file has " + std::to_string(v.size()) + " samples, expected 2^" +
                        std::to_string(depth));
    return dyadic::DyadicWeight(depth, std::move(v));
  }
  if (depth < 1 || depth > 24) throw ConfigError("field 'depth': must be in [1, 24]");
  const std::size_t n = std::size_t{1} << depth;
  std::vector<double> v(n);
  if (s.family == "const") {
    std::fill(v.begin(), v.end(), 1.0);
  } else if (s.family == "power") {
    const double a = numbers(s.arg, 1)[0];
    for (std::size_t i = 0; i < n; ++i) v[i] = std::pow(std::abs((i + 0.5) / n - 0.5), a);
  } else if (s.family == "twovalue") {
    const auto uv = numbers(s.arg, 2);
    for (std::size_t i = 0; i < n; ++i) v[i] = i < n / 2 ? uv[0] : uv[1];
  } else {
    throw ConfigError("field 'weight': unknown family '" + s.family + "'");
  }
  return dyadic::DyadicWeight(depth, std::move(v));
}

planar::PlanarWeight planar_weight(const std::string& spec, double p, int n, double L) {
  const Parsed s = split(spec);
  planar::GridField w;
  if (s.family == "file") {
    w = planar::read_field(s.arg);
  } else if (s.family == "const") {
    w = planar::GridField::from_function(n, L, [](double, double) { return cplx(1.0); });
  } else if (s.family == "power") {
    const double a = numbers(s.arg, 1)[0];
    const double h = L / n;
    w = planar::GridField::from_function(n, L, [&](double x, double y) {
      return cplx(std::pow(std::max(std::hypot(x, y), 0.5 * h), a), 0.0);
    });
  } else if (s.family == "twovalue") {
    const auto uv = numbers(s.arg, 2);
    w = planar::GridField::from_function(n, L, [&](double x, double) { return cplx(x < 0 ? uv[0] : uv[1]); });
  } else {
    throw ConfigError("field 'weight': unknown family '" + s.family + "'");
  }
  for (const auto& v : w.data())
    if (!(v.real() > 0.0) || v.imag() != 0.0) throw ConfigError("field 'weight': samples must be real and positive");
  return planar::make_weight(w, p);
}

}  // namespace bflab::weights
