#include "ugkit/caps.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "ugkit/error.hpp"

namespace ugkit {

Caps Caps::from_env() {
  Caps caps;
  if (const char* env = std::getenv("UGKIT_CAPS")) caps.apply(env);
  return caps;
}

void Caps::apply(std::string_view spec) {
  while (!spec.empty()) {
    auto comma = spec.find(',');
    auto item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{}
                                           : spec.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::Usage, "bad cap '" + std::string(item) + "'");
    }
    auto key = item.substr(0, eq);
    auto val = item.substr(eq + 1);
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), n);
    if (ec != std::errc() || ptr != val.data() + val.size()) {
      throw Error(ErrorCode::Usage, "bad cap value '" + std::string(item) + "'");
    }
    if (key == "ranges") {
      ranges = n;
    } else if (key == "approx") {
      approx = n;
    } else if (key == "closure") {
      closure = n;
    } else {
      throw Error(ErrorCode::Usage, "unknown cap '" + std::string(key) + "'");
    }
  }
}

}  // namespace ugkit
