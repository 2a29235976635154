#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "footprint/common.h"
#include "footprint/error.h"

namespace footprint::testing {

struct FuzzOutcome {
  int runs = 0;
  int values = 0;
  int declared_errors = 0;
  // Anything other than a value or footprint::Error. Crashes abort the
  // process and are caught by the sanitizer build instead.
  int undeclared = 0;
  std::string first_undeclared;
};

// One structure-aware-ish mutation: flips, overwrites with boundary values,
// truncation, splicing and insertion.
inline Bytes mutate(const Bytes& seed, std::mt19937_64& rng) {
  Bytes out = seed;
  auto pick = [&](std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); };
  int rounds = 1 + static_cast<int>(rng() % 8);
  for (int r = 0; r < rounds; ++r) {
    switch (rng() % 6) {
      case 0:
        if (!out.empty()) out[pick(out.size())] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
        break;
      case 1:
        if (!out.empty()) out[pick(out.size())] = static_cast<std::uint8_t>(rng());
        break;
      case 2: {
        static const std::uint32_t interesting[] = {0, 1, 0x7f, 0x80, 0xff, 0xffff, 0x7fffffff, 0x80000000u,
                                                    0xffffffffu, 0x10000};
        std::uint32_t v = interesting[rng() % std::size(interesting)];
        if (out.size() >= 4) {
          std::size_t at = pick(out.size() - 3);
          for (int i = 0; i < 4; ++i) out[at + i] = static_cast<std::uint8_t>(v >> (8 * i));
        }
        break;
      }
      case 3:
        out.resize(pick(out.size() + 1));
        break;
      case 4: {
        std::size_t at = pick(out.size() + 1);
        std::size_t n = 1 + pick(16);
        Bytes junk(n);
        for (auto& b : junk) b = static_cast<std::uint8_t>(rng());
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(at), junk.begin(), junk.end());
        break;
      }
      default:
        if (out.size() > 8) {
          std::size_t from = pick(out.size()), to = pick(out.size());
          std::size_t n = std::min({pick(64) + 1, out.size() - from, out.size() - to});
          std::copy_n(seed.begin() + static_cast<std::ptrdiff_t>(std::min(from, seed.size() - n)), n,
                      out.begin() + static_cast<std::ptrdiff_t>(to));
        }
    }
  }
  return out;
}

inline FuzzOutcome fuzz(const Bytes& seed, int runs, std::uint64_t rng_seed,
                        const std::function<void(ByteView)>& target) {
  std::mt19937_64 rng(rng_seed);
  FuzzOutcome outcome;
  for (int i = 0; i < runs; ++i) {
    Bytes input = mutate(seed, rng);
    ++outcome.runs;
    try {
      target(input);
      ++outcome.values;
    } catch (const Error&) {
      ++outcome.declared_errors;
    } catch (const std::exception& e) {
      if (outcome.undeclared++ == 0) outcome.first_undeclared = e.what();
    }
  }
  return outcome;
}

}  // namespace footprint::testing
