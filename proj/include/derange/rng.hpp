#pragma once

#include <cstdint>
#include <random>

#include "derange/field.hpp"

namespace derange {

// Thin deterministic wrapper. std::uniform_int_distribution is implementation
// defined, so draws are reduced by hand to keep streams reproducible anywhere.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    uint64_t below(uint64_t n) { return n ? eng_() % n : 0; }

    fel field_elem(const Fp& fp) { return static_cast<fel>(below(fp.modulus())); }

    fel nonzero_field_elem(const Fp& fp) { return static_cast<fel>(1 + below(fp.modulus() - 1)); }

  private:
    std::mt19937_64 eng_;
};

} // namespace derange
