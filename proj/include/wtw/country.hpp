#pragma once

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace wtw {

/// Node identity for a nation. Codes read from flow data are 2-3 uppercase
/// alphanumerics; graphs loaded from Pajek files may carry arbitrary labels.
struct CountryId {
  std::string code;

  CountryId() = default;
  explicit CountryId(std::string c) : code(std::move(c)) {}

  static bool is_valid_code(std::string_view c) noexcept {
    if (c.size() < 2 || c.size() > 3) return false;
    for (char ch : c) {
      bool ok = (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9');
      if (!ok) return false;
    }
    return true;
  }

  friend auto operator<=>(const CountryId&, const CountryId&) = default;
  friend bool operator==(const CountryId&, const CountryId&) = default;
};

}  // namespace wtw

template <>
struct std::hash<wtw::CountryId> {
  std::size_t operator()(const wtw::CountryId& c) const noexcept {
    return std::hash<std::string>{}(c.code);
  }
};
