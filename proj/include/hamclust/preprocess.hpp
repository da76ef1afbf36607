#pragma once

#include <string_view>

#include "hamclust/dataset.hpp"

namespace hamclust {

enum class Preprocessing {
  none,
  minmax,    // (x - min) / (max - min) per feature
  zscore,    // (x - mean) / std per feature, population std
  pixel255,  // x / 255
  l2,        // each row divided by its Euclidean norm
};

std::string_view to_string(Preprocessing mode) noexcept;
/// Throws ConfigError on an unknown name.
Preprocessing parse_preprocessing(std::string_view name);

/// Constant features map to 0 under minmax and zscore; all-zero rows stay
/// zero under l2. Labels and name are kept.
Dataset preprocess(const Dataset& data, Preprocessing mode);

}  // namespace hamclust
