#pragma once

// Deterministic random streams. Recordings and reports must be bit-identical
// for a given seed, so everything here avoids std::*_distribution (their draw
// sequences are implementation-defined) and converts raw engine output to
// doubles explicitly.

#include <cstdint>
#include <random>
#include <string_view>

namespace phaserank {

// Finalizer step of splitmix64; used to derive independent stream ids.
std::uint64_t splitmix64(std::uint64_t& state);

std::uint64_t fnv1a64(std::string_view s);

// Combines a base seed with a salt (e.g. a tag id hash or a trial index) into
// a well-mixed stream seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1), 53 mantissa bits.
    double uniform();

    // Standard normal via Box-Muller; always consumes exactly two uniforms.
    double gaussian();

    std::uint64_t next_u64() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace phaserank
