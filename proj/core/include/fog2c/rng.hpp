#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fog2c {

using Rng = std::mt19937_64;

/// Expands a master seed into an independent named stream.
///
/// The stream seed depends only on (master, name, index), so adding a new
/// consumer never shifts the draws seen by an existing one.
std::uint64_t derive_seed(std::uint64_t master, std::string_view name,
                          std::uint64_t index = 0) noexcept;

inline Rng make_rng(std::uint64_t master, std::string_view name,
                    std::uint64_t index = 0) {
  return Rng{derive_seed(master, name, index)};
}

/// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace fog2c
