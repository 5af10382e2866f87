// Copyright 2026 The GCI Authors
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

#pragma once

// Shared error type, deterministic random streams and small numeric helpers.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gci {

enum class Errc {
  kInvalidEdgeEndpoint,
  kSelfLoop,
  kDuplicateEdge,
  kEmptyGraph,
  kInvalidParams,
  kEmptyInput,
  kUnbalancedParenthesis,
  kUnmatchedRingClosure,
  kUnknownElement,
  kBadBracketAtom,
  kNotAnAtom,
  kFileNotFound,
  kMissingColumn,
  kModeMismatch,
  kShapeMismatch,
  kDegenerateDataset,
  kKTooLarge,
  kDimensionMismatch,
  kDegenerateLabels,
  kOneClassOnly,
  kLengthMismatch,
  kTooFewGraphs,
  kInvalidTheta,
  kSyntaxError,
  kDuplicateName,
  kUnknownAtom,
  kKindMismatch,
  kEmptyConcept,
  kFingerprintMismatch,
  kMalformedFile,
  kNonFinite,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::kInvalidEdgeEndpoint: return "InvalidEdgeEndpoint";
    case Errc::kSelfLoop: return "SelfLoop";
    case Errc::kDuplicateEdge: return "DuplicateEdge";
    case Errc::kEmptyGraph: return "EmptyGraph";
    case Errc::kInvalidParams: return "InvalidParams";
    case Errc::kEmptyInput: return "EmptyInput";
    case Errc::kUnbalancedParenthesis: return "UnbalancedParenthesis";
    case Errc::kUnmatchedRingClosure: return "UnmatchedRingClosure";
    case Errc::kUnknownElement: return "UnknownElement";
    case Errc::kBadBracketAtom: return "BadBracketAtom";
    case Errc::kNotAnAtom: return "NotAnAtom";
    case Errc::kFileNotFound: return "FileNotFound";
    case Errc::kMissingColumn: return "MissingColumn";
    case Errc::kModeMismatch: return "ModeMismatch";
    case Errc::kShapeMismatch: return "ShapeMismatch";
    case Errc::kDegenerateDataset: return "DegenerateDataset";
    case Errc::kKTooLarge: return "KTooLarge";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kDegenerateLabels: return "DegenerateLabels";
    case Errc::kOneClassOnly: return "OneClassOnly";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kTooFewGraphs: return "TooFewGraphs";
    case Errc::kInvalidTheta: return "InvalidTheta";
    case Errc::kSyntaxError: return "SyntaxError";
    case Errc::kDuplicateName: return "DuplicateName";
    case Errc::kUnknownAtom: return "UnknownAtom";
    case Errc::kKindMismatch: return "KindMismatch";
    case Errc::kEmptyConcept: return "EmptyConcept";
    case Errc::kFingerprintMismatch: return "FingerprintMismatch";
    case Errc::kMalformedFile: return "MalformedFile";
    case Errc::kNonFinite: return "NonFinite";
  }
  return "Unknown";
}

/// Every module reports failures through this exception. `offset` is a
/// character offset for parser errors, `line`/`column` for spec-file errors;
/// unused positions are -1.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail, long offset = -1)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code),
        offset_(offset) {}
  Error(Errc code, const std::string& detail, long line, long column)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail +
                           " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        code_(code),
        line_(line),
        column_(column) {}

  Errc code() const noexcept { return code_; }
  long offset() const noexcept { return offset_; }
  long line() const noexcept { return line_; }
  long column() const noexcept { return column_; }

 private:
  Errc code_;
  long offset_ = -1;
  long line_ = -1;
  long column_ = -1;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seeded generator with independent sub-streams.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The distributions are implemented here because the standard
/// library's are implementation-defined, and every artifact this library
/// writes must be reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x51ed2701ULL))) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw Error(Errc::kInvalidParams, "Rng::below(0)");
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Uniform integer in [lo, hi].
  long between(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  /// `count` distinct values from [0, n), in draw order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                      std::size_t count) {
    if (count > n) throw Error(Errc::kInvalidParams, "sample larger than population");
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t j = i + below(n - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// round(count * num / den) with halves rounded up, in exact integer math.
inline std::size_t round_half_up_fraction(std::size_t count, std::size_t num,
                                          std::size_t den) {
  return (2 * count * num + den) / (2 * den);
}

/// 64-bit FNV-1a; used for content fingerprints in artifacts and manifests.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[v & 0xf];
    v >>= 4;
  }
  return out;
}

}  // namespace gci
