#include "cli/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace xover::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

double round_sig6(double x) {
  if (!std::isfinite(x)) return x;
  const double r = std::strtod(format_number(x).c_str(), nullptr);
  return r == 0.0 ? 0.0 : r;
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Report::Report(std::string command, std::string inputs_digest)
    : command_(std::move(command)), digest_(std::move(inputs_digest)) {}

void Report::assign(const std::string& key, Value value) {
  for (auto& [k, v] : results_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  results_.emplace_back(key, std::move(value));
}

const Value* Report::find(std::string_view key) const {
  for (const auto& [k, v] : results_) {
    if (k == key) return &v;
  }
  return nullptr;
}

namespace {

nlohmann::ordered_json number_json(double x) {
  if (!std::isfinite(x)) return format_number(x);
  return round_sig6(x);
}

nlohmann::ordered_json to_json_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return number_json(x);
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
          auto arr = nlohmann::ordered_json::array();
          for (double d : x) arr.push_back(number_json(d));
          return arr;
        } else {
          return x;
        }
      },
      v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string to_csv_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_number(x);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return csv_escape(x);
        } else {
          std::string out;
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) out += ';';
            out += format_number(x[i]);
          }
          return out;
        }
      },
      v);
}

}  // namespace

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command_;
  j["inputs_digest"] = digest_;
  auto res = nlohmann::ordered_json::object();
  for (const auto& [k, v] : results_) res[k] = to_json_value(v);
  j["results"] = std::move(res);
  return j.dump(2) + "\n";
}

std::string Report::to_csv() const {
  std::ostringstream os;
  os << "key,value\n";
  os << "command," << csv_escape(command_) << '\n';
  os << "inputs_digest," << digest_ << '\n';
  for (const auto& [k, v] : results_) os << csv_escape(k) << ',' << to_csv_value(v) << '\n';
  return os.str();
}

std::string Report::render(std::string_view format) const {
  return format == "csv" ? to_csv() : to_json();
}

}  // namespace xover::cli
