#pragma once

#include <span>

#include "nlswap/box.hpp"

namespace nlswap::bits {

/// Moves bit k of `word` to bit `positions[k]`.
inline Word scatter(Word word, std::span<const int> positions) {
  Word out = 0;
  for (std::size_t k = 0; k < positions.size(); ++k) out |= static_cast<Word>((word >> k) & 1U) << positions[k];
  return out;
}

/// Inverse of scatter: bit k of the result is bit `positions[k]` of `word`.
inline Word gather(Word word, std::span<const int> positions) {
  Word out = 0;
  for (std::size_t k = 0; k < positions.size(); ++k) out |= static_cast<Word>((word >> positions[k]) & 1U) << k;
  return out;
}

}  // namespace nlswap::bits
