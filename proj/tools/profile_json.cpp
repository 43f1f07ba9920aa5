#include "profile_json.hpp"

#include <fstream>
#include <sstream>

#include "channel/errors.hpp"

namespace cli {

using nlohmann::json;

namespace {

double number(const json& j, const char* key, double fallback, bool required) {
  if (!j.contains(key)) {
    if (required) throw chan::InvalidArgument(std::string("profile is missing \"") + key + "\"");
    return fallback;
  }
  if (!j.at(key).is_number()) throw chan::InvalidArgument(std::string("profile field \"") + key + "\" must be a number");
  return j.at(key).get<double>();
}

std::vector<double> coeffs(const json& j) {
  if (!j.contains("coeffs")) return {};
  if (!j.at("coeffs").is_array()) throw chan::InvalidArgument("profile field \"coeffs\" must be an array");
  std::vector<double> out;
  for (const auto& c : j.at("coeffs")) {
    if (!c.is_number()) throw chan::InvalidArgument("profile coefficients must be numbers");
    out.push_back(c.get<double>());
  }
  return out;
}

}  // namespace

DataSpec parse_data_json(const json& j) {
  if (!j.is_object()) throw chan::InvalidArgument("profile must be a JSON object");
  if (!j.contains("family") || !j.at("family").is_string())
    throw chan::InvalidArgument("profile needs a string field \"family\"");
  const std::string fam = j.at("family").get<std::string>();
  DataSpec s;
  s.source = j;
  if (fam == "band_gauss") {
    s.kind = DataSpec::Kind::Band;
    if (!j.contains("bands") || !j.at("bands").is_array() || j.at("bands").empty())
      throw chan::InvalidArgument("band_gauss needs a non-empty \"bands\" array");
    for (const auto& b : j.at("bands"))
      s.bands.push_back({number(b, "amplitude", 1.0, false), number(b, "center", 0, true), number(b, "width", 0, true)});
    return s;
  }
  if (fam == "special") {
    s.kind = DataSpec::Kind::Special;
    const std::string kind = j.value("kind", std::string("g"));
    if (kind != "f" && kind != "g") throw chan::InvalidArgument("special data kind must be \"f\" or \"g\"");
    s.special_kind = kind == "f" ? chan::SpecialKind::F : chan::SpecialKind::G;
    s.special_index = static_cast<int>(number(j, "i", 1, false));
    return s;
  }
  const chan::Family f = chan::parse_family(fam);
  const auto c = coeffs(j);
  switch (f) {
    case chan::Family::Zero: s.profile = chan::RadialProfile::zero(); break;
    case chan::Family::Bump:
      s.profile = chan::RadialProfile::bump(number(j, "a", 0, true), number(j, "b", 0, true), c.empty() ? 1.0 : c[0]);
      break;
    case chan::Family::PolyBump:
      s.profile = chan::RadialProfile::poly_bump(number(j, "a", 0, true), number(j, "b", 0, true), c.empty() ? std::vector<double>{1.0} : c);
      break;
    case chan::Family::GaussPoly:
      s.profile = chan::RadialProfile::gauss_poly(number(j, "a", 0, true), number(j, "b", 0, true), c.empty() ? std::vector<double>{1.0} : c);
      break;
    case chan::Family::Power: s.profile = chan::RadialProfile::power(number(j, "p", 0, true), c.empty() ? 1.0 : c[0]); break;
    case chan::Family::ConstantExtendedPower:
      s.profile = chan::RadialProfile::constant_extended_power(number(j, "p", 0, true), number(j, "a", 0, true),
                                                                c.empty() ? 1.0 : c[0]);
      break;
  }
  if (j.contains("max_derivative_order")) s.profile.max_derivative_order = static_cast<int>(number(j, "max_derivative_order", 8, true));
  return s;
}

DataSpec parse_data(const std::string& text_or_path) {
  std::string text = text_or_path;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw chan::InvalidArgument("empty profile specification");
  if (text[first] != '{') {
    std::ifstream in(text_or_path);
    if (!in) throw chan::InvalidArgument("cannot read profile file " + text_or_path);
    std::ostringstream os;
    os << in.rdbuf();
    text = os.str();
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw chan::InvalidArgument(std::string("malformed profile JSON: ") + e.what());
  }
  return parse_data_json(j);
}

DataSpec random_data(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  const double a = 0.1 + 1.4 * u(rng);
  const double b = a + 0.5 + (3.0 - a - 0.5) * u(rng);
  json j = {{"family", "poly_bump"}, {"a", a}, {"b", b}, {"coeffs", {u(rng) - 0.5, 2 * u(rng) - 1, u(rng) - 0.5}}};
  return parse_data_json(j);
}

}  // namespace cli
