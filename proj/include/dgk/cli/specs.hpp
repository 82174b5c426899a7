#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dgk/dgmap/lift.hpp"

namespace dgk::cli {

/// Contents of a ring spec file, before the field is fixed.
///
///   {"field": "F2", "type": "quotient", "variables": ["x","y"],
///    "weights": [1,1], "ideal": ["x^2", "y^2"]}
///   {"field": "F2", "type": "semigroup", "generators": [6,10,14,15]}
struct RingSpec {
  std::string field = "Q";
  bool semigroup = false;
  std::vector<std::string> variables;
  std::vector<int> weights;
  std::vector<std::string> ideal;
  std::vector<int> generators;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline RingSpec parse_ring_spec(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("ring spec: ") + e.what(), e.byte);
  }
  if (!j.is_object()) throw ValidationError("ring spec must be a JSON object");
  static const std::set<std::string> known = {"field", "type", "variables", "weights", "ideal", "generators"};
  for (const auto& [key, v] : j.items())
    if (!known.count(key)) throw ValidationError("ring spec: unknown key '" + key + "'");
  RingSpec s;
  try {
    s.field = j.value("field", std::string("Q"));
    const std::string type = j.value("type", std::string("quotient"));
    if (type == "semigroup") {
      s.semigroup = true;
      s.generators = j.at("generators").get<std::vector<int>>();
    } else if (type == "quotient") {
      s.variables = j.at("variables").get<std::vector<std::string>>();
      if (j.contains("weights")) s.weights = j.at("weights").get<std::vector<int>>();
      s.ideal = j.at("ideal").get<std::vector<std::string>>();
    } else {
      throw ValidationError("ring spec: type must be \"quotient\" or \"semigroup\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("ring spec: ") + e.what());
  }
  return s;
}

/// "F2", "F3", ..., or "Q"; anything else is rejected.
inline std::variant<PrimeField, RationalField> field_of(const std::string& name) {
  if (name == "Q") return RationalField{};
  if (name.size() >= 2 && name[0] == 'F' && name.find_first_not_of("0123456789", 1) == std::string::npos &&
      name.size() <= 10) {
    const unsigned long p = std::stoul(name.substr(1));
    if (p <= 0xffffffffUL) try {
        return PrimeField(static_cast<std::uint32_t>(p));
      } catch (const ValidationError&) {
      }
  }
  throw ValidationError("unsupported field '" + name + "' (use Fp for a prime p, or Q)");
}

template <ExactField F>
RingPtr<F> build_ring(const RingSpec& s, const F& field) {
  if (s.semigroup) return GradedRing<F>::semigroup_ring(field, s.generators);
  auto ctx = std::make_shared<const PolyContext<F>>(field, s.variables, s.weights);
  std::vector<Polynomial<F>> ideal;
  for (const auto& p : s.ideal) ideal.push_back(parse_poly<F>(p, ctx));
  return GradedRing<F>::artinian_quotient(ctx, ideal);
}

/// Lift file: one "ei -> <degree-one element>" line per generator, in any
/// order; blank lines and lines starting with '#' are skipped.
template <ExactField F>
Lift<F> parse_lift(std::string_view text, const RingPtr<F>& ring) {
  const std::size_t n = ring->num_generators();
  std::vector<KoszulElement<F>> images(n, KoszulElement<F>(ring));
  std::vector<bool> seen(n, false);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t start = offset;
    offset += line.size() + 1;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto arrow = line.find("->");
    if (arrow == std::string::npos) throw ParseError("lift line without '->'", start + first);
    std::string lhs = line.substr(first, arrow - first);
    lhs.erase(lhs.find_last_not_of(" \t") + 1);
    std::size_t idx = 0;
    if (lhs.size() < 2 || lhs[0] != 'e' || lhs.find_first_not_of("0123456789", 1) != std::string::npos ||
        lhs.size() > 4 || (idx = std::stoul(lhs.substr(1))) < 1 || idx > n)
      throw ParseError("left side must be e1..e" + std::to_string(n), start + first);
    if (seen[idx - 1]) throw ValidationError("lift gives e" + std::to_string(idx) + " twice");
    seen[idx - 1] = true;
    try {
      images[idx - 1] = parse_koszul<F>(std::string_view(line).substr(arrow + 2), ring);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), start + arrow + 2 + e.position());
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!seen[i]) throw ValidationError("lift misses e" + std::to_string(i + 1));
  return Lift<F>::from_images(ring, images);
}

}  // namespace dgk::cli
