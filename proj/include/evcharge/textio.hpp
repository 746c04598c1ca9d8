// Copyright 2026 The evcharge Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EVCHARGE_TEXTIO_HPP_
#define EVCHARGE_TEXTIO_HPP_

#include <charconv>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>

#include "evcharge/error.hpp"

namespace evcharge {

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

inline std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

// Whitespace-separated token reader for the snapshot formats.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  std::string next() {
    std::string tok;
    if (!(in_ >> tok)) throw ConfigError("snapshot: unexpected end of input");
    return tok;
  }
  void expect(std::string_view word) {
    std::string tok = next();
    if (tok != word) {
      throw ConfigError("snapshot: expected '" + std::string(word) +
                        "', got '" + tok + "'");
    }
  }
  double real() { return parse_double(next()); }
  std::int64_t integer() { return parse_int(next()); }

 private:
  std::istream& in_;
};

}  // namespace evcharge

#endif  // EVCHARGE_TEXTIO_HPP_
