// Copyright 2026 The qsvm-ocr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Glyph images to two-component ink-ratio features.
 *
 * v = ink(left half) / ink(right half), h = ink(upper half) / ink(lower half).
 * For odd widths (heights) the central column (row) belongs to neither half.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qsvm::ocr {

class PgmFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class PgmTruncatedError : public PgmFormatError {
  public:
    using PgmFormatError::PgmFormatError;
};

/// A half of the mask used as a ratio denominator has no ink.
class BlankHalfError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Row-major grayscale image, 0 = black.
struct GlyphImage {
    std::size_t width = 0;
    std::size_t height = 0;
    unsigned max_value = 255;
    std::vector<std::uint8_t> pixels;

    [[nodiscard]] unsigned at(std::size_t x, std::size_t y) const {
        return pixels[y * width + x];
    }
};

struct InkMask {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> ink;

    [[nodiscard]] bool at(std::size_t x, std::size_t y) const { return ink[y * width + x] != 0; }
    [[nodiscard]] std::size_t count() const;
};

struct FeatureVector {
    double v = 0.0;
    double h = 0.0;

    [[nodiscard]] Eigen::Vector2d as_vector() const { return {v, h}; }
};

/// Affine map A (v, h)^T + c with optional L2 normalization afterwards.
struct ConversionMap {
    Eigen::Matrix2d a = Eigen::Matrix2d::Identity();
    Eigen::Vector2d c = Eigen::Vector2d::Zero();
    bool normalize = false;

    static ConversionMap identity(bool normalize = false);
    /// Diagonal map fitted so the bundled standard glyphs land on
    /// x1 = (0.9872, 0.1595) and x2 = (0.3544, 0.9351).
    static ConversionMap paper();

    [[nodiscard]] FeatureVector apply(const FeatureVector &raw) const;
};

/// Parses a P2 (ASCII) or P5 (binary) portable graymap with maxval <= 255.
GlyphImage load_image(std::string_view bytes);
GlyphImage load_image_file(const std::filesystem::path &path);

/// Dark-on-light by default: ink iff intensity < threshold * maxval. With
/// `light_ink`, ink iff intensity > (1 - threshold) * maxval.
InkMask binarize(const GlyphImage &img, double threshold_fraction = 0.5, bool light_ink = false);

FeatureVector ratios(const InkMask &mask);

FeatureVector featurize(const GlyphImage &img, const ConversionMap &map);

/// Exact two-point fit of a diagonal affine map: raw_a -> target_a and
/// raw_b -> target_b, component-wise.
ConversionMap calibrate(const FeatureVector &raw_a, const FeatureVector &target_a,
                        const FeatureVector &raw_b, const FeatureVector &target_b);

InkMask mirror_left_right(const InkMask &mask);
InkMask mirror_top_bottom(const InkMask &mask);
/// Nearest-neighbour upscale by an integer factor.
InkMask upscale(const InkMask &mask, std::size_t factor);

} // namespace qsvm::ocr
