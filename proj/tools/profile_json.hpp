#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "channel/profiles.hpp"
#include "channel/special_solution.hpp"
#include "channel/spectral.hpp"
#include "json.hpp"

namespace cli {

// One radial data item as given on the command line or in a config file.
struct DataSpec {
  enum class Kind { Profile, Band, Special } kind = Kind::Profile;
  chan::RadialProfile profile = chan::RadialProfile::zero();
  std::vector<chan::BandTerm> bands;
  chan::SpecialKind special_kind = chan::SpecialKind::G;
  int special_index = 1;
  nlohmann::json source;  // canonical description echoed into reports

  bool is_zero() const { return kind == Kind::Profile && profile.family == chan::Family::Zero; }
};

// Accepts a file path or an inline JSON object (text starting with '{').
// Schema: {"family": name, "a", "b", "coeffs", "p", "max_derivative_order"};
// family "band_gauss" takes "bands": [{"amplitude", "center", "width"}];
// family "special" takes "kind": "f"|"g" and "i".
DataSpec parse_data(const std::string& text_or_path);
DataSpec parse_data_json(const nlohmann::json& j);

// Random mixed bump data for seeded runs.
DataSpec random_data(std::mt19937_64& rng);

}  // namespace cli
