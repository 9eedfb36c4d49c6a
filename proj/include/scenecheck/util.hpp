// Copyright 2026 The scenecheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCENECHECK_UTIL_HPP
#define SCENECHECK_UTIL_HPP

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace scenecheck {

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// hash_combine-style mixer for deriving per-record RNG seeds from a run seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  seed ^= salt + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

// Unbiased draw in [0, n). Rejection sampling on raw mt19937_64 output so the
// result depends only on the standardized engine, not on the (implementation
// defined) std::uniform_int_distribution.
inline std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t max = std::mt19937_64::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % n;
}

// 53-bit mantissa draw in [0, 1).
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

// RFC 4180 field quoting.
std::string csv_field(std::string_view value);

// ASCII-only lowercase; multi-byte sequences pass through untouched.
std::string to_lower_ascii(std::string_view text);

// Trim ends and collapse interior whitespace runs to single spaces.
std::string normalize_ws(std::string_view text);

std::vector<std::string> split_ws(std::string_view text);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace scenecheck

#endif  // SCENECHECK_UTIL_HPP
