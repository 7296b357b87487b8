#include "aoi/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "aoi/errors.hpp"

namespace aoi {

namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool parse_size(std::string_view text, std::size_t& out) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

ChannelTrace parse_trace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  strip_cr(line);
  const auto space = line.find(' ');
  std::size_t n = 0;
  std::size_t t = 0;
  if (space == std::string::npos || !parse_size(std::string_view(line).substr(0, space), n) ||
      !parse_size(std::string_view(line).substr(space + 1), t))
    throw ParseError(1, "header must be \"N T\", got \"" + line + "\"");
  if (n == 0 || t == 0) throw ParseError(1, "N and T must be positive");

  std::vector<ChannelState> states;
  states.reserve(n * t);
  std::size_t lineno = 1;
  for (std::size_t row = 0; row < t; ++row) {
    ++lineno;
    if (!std::getline(in, line))
      throw ParseError(lineno, "expected " + std::to_string(t) + " rows, found " +
                                   std::to_string(row));
    strip_cr(line);
    if (line.size() != n)
      throw ParseError(lineno, "row has " + std::to_string(line.size()) +
                                   " symbols, expected " + std::to_string(n));
    for (char c : line) {
      if (c == 'G') {
        states.push_back(ChannelState::Good);
      } else if (c == 'B') {
        states.push_back(ChannelState::Bad);
      } else {
        throw ParseError(lineno, std::string("invalid symbol '") + c + "'");
      }
    }
  }
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (!line.empty())
      throw ParseError(lineno, "more rows than the header's T = " + std::to_string(t));
  }
  return ChannelTrace(n, t, std::move(states));
}

void write_trace(std::ostream& out, const ChannelTrace& trace) {
  out << trace.num_users() << ' ' << trace.horizon() << '\n';
  std::string row(trace.num_users(), 'B');
  for (std::size_t k = 0; k < trace.horizon(); ++k) {
    for (UserIndex i = 0; i < trace.num_users(); ++i) row[i] = to_char(trace.at(k, i));
    out << row << '\n';
  }
}

ChannelTrace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open trace file " + path.string());
  return parse_trace(in);
}

void save_trace(const ChannelTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write trace file " + path.string());
  write_trace(out, trace);
}

Schedule parse_schedule(std::istream& in) {
  Schedule schedule;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty()) continue;
    if (line == "-") {
      schedule.decisions.push_back(Decision::idle());
      continue;
    }
    std::size_t user = 0;
    if (!parse_size(line, user)) throw ParseError(lineno, "bad decision \"" + line + "\"");
    schedule.decisions.push_back(Decision::serve(user));
  }
  return schedule;
}

void write_schedule(std::ostream& out, const Schedule& schedule) {
  for (const auto& d : schedule.decisions) {
    if (d.is_idle()) {
      out << "-\n";
    } else {
      out << d.user() << '\n';
    }
  }
}

}  // namespace aoi
