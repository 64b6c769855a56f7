#include "qmetric/tolerances.hpp"

#include <stdexcept>
#include <string>

namespace qmetric {

Tolerances parse_tolerances(std::string_view spec, Tolerances base) {
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    const std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.empty()) continue;

    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("tolerance override '" + std::string(item) + "' lacks '='");
    const std::string key(item.substr(0, eq));
    const std::string text(item.substr(eq + 1));
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("tolerance '" + key + "' has malformed value '" + text + "'");
    }
    if (!(value > 0.0)) throw std::invalid_argument("tolerance '" + key + "' must be positive");

    if (key == "sa") base.sa = value;
    else if (key == "state") base.state = value;
    else if (key == "eig") base.eig = value;
    else if (key == "metric") base.metric = value;
    else if (key == "lp") base.lp = value;
    else throw std::invalid_argument("unknown tolerance key '" + key + "'");
  }
  return base;
}

}  // namespace qmetric
