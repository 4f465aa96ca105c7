#pragma once

#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace xover::cli {

using Value = std::variant<bool, long long, double, std::string, std::vector<double>>;

// Flat, ordered key/value result set. Keys keep insertion order; setting an
// existing key replaces its value in place. Doubles are emitted with six
// significant digits in both formats.
class Report {
 public:
  Report(std::string command, std::string inputs_digest);

  void set(const std::string& key, Value value) { assign(key, std::move(value)); }
  template <typename T>
  void set(const std::string& key, const T& value) {
    if constexpr (std::is_same_v<T, bool>) {
      assign(key, Value{value});
    } else if constexpr (std::is_integral_v<T>) {
      assign(key, Value{static_cast<long long>(value)});
    } else if constexpr (std::is_floating_point_v<T>) {
      assign(key, Value{static_cast<double>(value)});
    } else if constexpr (std::is_convertible_v<const T&, std::string_view>) {
      assign(key, Value{std::string(std::string_view(value))});
    } else {
      assign(key, Value{value});
    }
  }

  const Value* find(std::string_view key) const;
  const std::vector<std::pair<std::string, Value>>& results() const { return results_; }

  std::string to_json() const;
  std::string to_csv() const;
  std::string render(std::string_view format) const;

 private:
  void assign(const std::string& key, Value value);
  std::string command_;
  std::string digest_;
  std::vector<std::pair<std::string, Value>> results_;
};

std::string format_number(double x);  // %.6g
double round_sig6(double x);

// FNV-1a, 64 bit, as 16 hex digits.
std::string digest(std::string_view bytes);

}  // namespace xover::cli
