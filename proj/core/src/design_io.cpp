#include "xover/design_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "xover/error.hpp"

namespace xover {

namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

struct Line {
  std::string_view text;
  int number;  // 1-based
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back({text.substr(start), number});
      break;
    }
    lines.push_back({text.substr(start, end - start), number++});
    start = end + 1;
  }
  return lines;
}

std::vector<Token> tokenize(const Line& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto& s = line.text;
  while (i < s.size()) {
    if (s[i] == ' ' || s[i] == '\t') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    out.push_back({s.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

int parse_int(const Token& tok, int line, std::string_view what) {
  int value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, tok.column,
                     "expected integer " + std::string(what) + ", got '" +
                         std::string(tok.text) + "'");
  }
  return value;
}

int parse_field(const Token& tok, int line, std::string_view key) {
  const std::string prefix = std::string(key) + "=";
  if (tok.text.substr(0, prefix.size()) != prefix) {
    throw ParseError(line, tok.column,
                     "expected '" + prefix + "<int>', got '" + std::string(tok.text) + "'");
  }
  Token rest{tok.text.substr(prefix.size()), tok.column + static_cast<int>(prefix.size())};
  const int v = parse_int(rest, line, key);
  if (v < 1) throw ParseError(line, rest.column, std::string(key) + " must be positive");
  return v;
}

void expect_blank_tail(const std::vector<Line>& lines, std::size_t from) {
  for (std::size_t i = from; i < lines.size(); ++i) {
    const auto toks = tokenize(lines[i]);
    if (!toks.empty()) {
      throw ParseError(lines[i].number, toks.front().column, "unexpected trailing content");
    }
  }
}

}  // namespace

CrossoverDesign parse_design(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0].text != kDesignHeader) {
    throw ParseError(1, 1, "expected header '" + std::string(kDesignHeader) + "'");
  }
  if (lines.size() < 2) throw ParseError(2, 1, "missing dimension line");
  const auto dims = tokenize(lines[1]);
  if (dims.size() != 3) {
    throw ParseError(2, dims.size() > 3 ? dims[3].column : 1,
                     "expected 't=<int> p=<int> s=<int>'");
  }
  const int t = parse_field(dims[0], 2, "t");
  const int p = parse_field(dims[1], 2, "p");
  const int s = parse_field(dims[2], 2, "s");

  IntMatrix layout(p, s);
  for (int r = 0; r < p; ++r) {
    const std::size_t li = 2 + static_cast<std::size_t>(r);
    if (li >= lines.size()) {
      throw ParseError(static_cast<int>(li) + 1, 1,
                       "expected " + std::to_string(p) + " period rows, found " +
                           std::to_string(r));
    }
    const auto toks = tokenize(lines[li]);
    if (static_cast<int>(toks.size()) != s) {
      const int col = static_cast<int>(toks.size()) > s ? toks[s].column
                                                        : static_cast<int>(lines[li].text.size()) + 1;
      throw ParseError(lines[li].number, col,
                       "expected " + std::to_string(s) + " entries, found " +
                           std::to_string(toks.size()));
    }
    for (int c = 0; c < s; ++c) {
      const int v = parse_int(toks[c], lines[li].number, "treatment label");
      if (v < 0 || v >= t) {
        throw ParseError(lines[li].number, toks[c].column,
                         "treatment label " + std::to_string(v) + " outside 0.." +
                             std::to_string(t - 1));
      }
      layout(r, c) = v;
    }
  }
  expect_blank_tail(lines, 2 + static_cast<std::size_t>(p));
  return CrossoverDesign(t, std::move(layout));
}

std::string format_design(const CrossoverDesign& design) {
  std::ostringstream os;
  os << kDesignHeader << '\n';
  os << "t=" << design.treatments() << " p=" << design.periods()
     << " s=" << design.subjects() << '\n';
  for (int r = 0; r < design.periods(); ++r) {
    for (int c = 0; c < design.subjects(); ++c) {
      if (c) os << ' ';
      os << design.layout()(r, c);
    }
    os << '\n';
  }
  return os.str();
}

DropoutPattern parse_pattern(std::string_view text, std::optional<int> expected_subjects) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty dropout pattern");
  const auto toks = tokenize(lines[0]);
  if (toks.empty()) throw ParseError(1, 1, "empty dropout pattern");
  if (expected_subjects && static_cast<int>(toks.size()) != *expected_subjects) {
    const int col = static_cast<int>(toks.size()) > *expected_subjects
                        ? toks[*expected_subjects].column
                        : static_cast<int>(lines[0].text.size()) + 1;
    throw ParseError(1, col,
                     "expected " + std::to_string(*expected_subjects) +
                         " completion periods, found " + std::to_string(toks.size()));
  }
  std::vector<int> completion;
  completion.reserve(toks.size());
  for (const auto& tok : toks) {
    const int v = parse_int(tok, 1, "completion period");
    if (v < 1) throw ParseError(1, tok.column, "completion period must be >= 1");
    completion.push_back(v);
  }
  expect_blank_tail(lines, 1);
  return DropoutPattern(std::move(completion));
}

std::string format_pattern(const DropoutPattern& pattern) {
  std::ostringstream os;
  for (std::size_t i = 0; i < pattern.completion().size(); ++i) {
    if (i) os << ' ';
    os << pattern.completion()[i];
  }
  os << '\n';
  return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CrossoverDesign read_design(const std::filesystem::path& path) {
  return parse_design(read_text_file(path));
}

void write_design(const std::filesystem::path& path, const CrossoverDesign& design) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << format_design(design);
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

DropoutPattern read_pattern(const std::filesystem::path& path,
                            std::optional<int> expected_subjects) {
  return parse_pattern(read_text_file(path), expected_subjects);
}

}  // namespace xover
