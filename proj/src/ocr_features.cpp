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

#include "qsvm/ocr_features.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

namespace qsvm::ocr {

namespace {

constexpr std::size_t kMaxDimension = 1U << 15;

class HeaderReader {
  public:
    explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char ch = bytes_[pos_];
            if (ch == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') {
                    ++pos_;
                }
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    // Returns false at end of input; throws on a non-digit token.
    bool read_unsigned(std::size_t &out, const char *what) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) {
            return false;
        }
        if (!std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            throw PgmFormatError(std::string("PGM: expected a number for ") + what);
        }
        std::size_t v = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            v = v * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
            if (v > std::numeric_limits<std::uint32_t>::max()) {
                throw PgmFormatError(std::string("PGM: value too large for ") + what);
            }
            ++pos_;
        }
        out = v;
        return true;
    }

    std::size_t position() const { return pos_; }
    void advance(std::size_t n) { pos_ += n; }
    bool at_end() const { return pos_ >= bytes_.size(); }
    char peek() const { return bytes_[pos_]; }

  private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

void require(bool ok, const char *what) {
    if (!ok) {
        throw PgmTruncatedError(std::string("PGM: truncated before ") + what);
    }
}

FeatureVector checked(double v, double h) {
    if (!std::isfinite(v) || !std::isfinite(h) || v <= 0.0 || h <= 0.0) {
        throw BlankHalfError("ink ratio is not finite and positive");
    }
    return {v, h};
}

} // namespace

std::size_t InkMask::count() const {
    std::size_t n = 0;
    for (auto b : ink) {
        n += b != 0;
    }
    return n;
}

GlyphImage load_image(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        throw PgmFormatError("unsupported image format: expected PGM magic P2 or P5");
    }
    const bool binary = bytes[1] == '5';
    HeaderReader reader(bytes);
    reader.advance(2);
    if (!reader.at_end() && !std::isspace(static_cast<unsigned char>(reader.peek())) &&
        reader.peek() != '#') {
        throw PgmFormatError("unsupported image format: malformed magic number");
    }

    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t max_value = 0;
    require(reader.read_unsigned(width, "width"), "width");
    require(reader.read_unsigned(height, "height"), "height");
    require(reader.read_unsigned(max_value, "maxval"), "maxval");
    if (width == 0 || height == 0) {
        throw PgmFormatError("PGM: zero image dimension");
    }
    if (width < 2 || height < 2) {
        throw PgmFormatError("PGM: glyph images must be at least 2x2");
    }
    if (width > kMaxDimension || height > kMaxDimension) {
        throw PgmFormatError("PGM: image dimension too large");
    }
    if (max_value == 0 || max_value > 255) {
        throw PgmFormatError("PGM: maxval must be in [1, 255], got " + std::to_string(max_value));
    }

    GlyphImage img;
    img.width = width;
    img.height = height;
    img.max_value = static_cast<unsigned>(max_value);
    const std::size_t count = width * height;
    img.pixels.resize(count);

    if (binary) {
        // Exactly one whitespace byte separates maxval from the raster.
        require(!reader.at_end(), "raster");
        if (!std::isspace(static_cast<unsigned char>(reader.peek()))) {
            throw PgmFormatError("PGM: missing whitespace before raster");
        }
        reader.advance(1);
        const std::size_t start = reader.position();
        if (bytes.size() - start < count) {
            throw PgmTruncatedError("PGM: raster has " + std::to_string(bytes.size() - start) +
                                    " bytes, expected " + std::to_string(count));
        }
        for (std::size_t i = 0; i < count; ++i) {
            const auto v = static_cast<std::uint8_t>(bytes[start + i]);
            if (v > max_value) {
                throw PgmFormatError("PGM: sample exceeds maxval");
            }
            img.pixels[i] = v;
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t v = 0;
            if (!reader.read_unsigned(v, "sample")) {
                throw PgmTruncatedError("PGM: raster has " + std::to_string(i) +
                                        " samples, expected " + std::to_string(count));
            }
            if (v > max_value) {
                throw PgmFormatError("PGM: sample exceeds maxval");
            }
            img.pixels[i] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

GlyphImage load_image_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open image file: " + path.string());
    }
    const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return load_image(bytes);
}

InkMask binarize(const GlyphImage &img, double threshold_fraction, bool light_ink) {
    if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0)) {
        throw std::invalid_argument("threshold fraction must lie in (0, 1)");
    }
    InkMask mask{img.width, img.height, std::vector<std::uint8_t>(img.pixels.size())};
    const double max = img.max_value;
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const double p = img.pixels[i];
        mask.ink[i] = light_ink ? (p > (1.0 - threshold_fraction) * max)
                                : (p < threshold_fraction * max);
    }
    return mask;
}

FeatureVector ratios(const InkMask &mask) {
    const std::size_t w = mask.width;
    const std::size_t h = mask.height;
    const std::size_t left_end = w / 2;         // [0, left_end)
    const std::size_t right_begin = (w + 1) / 2; // [right_begin, w)
    const std::size_t upper_end = h / 2;
    const std::size_t lower_begin = (h + 1) / 2;

    std::size_t left = 0, right = 0, upper = 0, lower = 0, total = 0;
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            if (!mask.at(x, y)) {
                continue;
            }
            ++total;
            left += x < left_end;
            right += x >= right_begin;
            upper += y < upper_end;
            lower += y >= lower_begin;
        }
    }
    if (total == 0) {
        throw BlankHalfError("glyph mask has no ink");
    }
    if (right == 0) {
        throw BlankHalfError("right half of the glyph has no ink");
    }
    if (lower == 0) {
        throw BlankHalfError("lower half of the glyph has no ink");
    }
    if (left == 0) {
        throw BlankHalfError("left half of the glyph has no ink");
    }
    if (upper == 0) {
        throw BlankHalfError("upper half of the glyph has no ink");
    }
    return checked(static_cast<double>(left) / static_cast<double>(right),
                   static_cast<double>(upper) / static_cast<double>(lower));
}

ConversionMap ConversionMap::identity(bool normalize) {
    ConversionMap m;
    m.normalize = normalize;
    return m;
}

ConversionMap ConversionMap::paper() {
    // calibrate(raw(standard_6), x1, raw(standard_9), x2) on the bundled
    // glyphs; tests re-derive these from the assets.
    ConversionMap m;
    m.a << 1.2601448275862071, 0.0,
           0.0, 1.3767296523517385;
    m.c << -0.67662758620689678, -0.88414989775051156;
    m.normalize = false;
    return m;
}

FeatureVector ConversionMap::apply(const FeatureVector &raw) const {
    if (!(std::abs(a.determinant()) > 0.0)) {
        throw std::invalid_argument("conversion matrix is singular");
    }
    Eigen::Vector2d out = a * raw.as_vector() + c;
    if (normalize) {
        const double n = out.norm();
        if (!(n > 0.0)) {
            throw std::domain_error("converted feature vector is zero; cannot normalize");
        }
        out /= n;
    }
    return {out[0], out[1]};
}

FeatureVector featurize(const GlyphImage &img, const ConversionMap &map) {
    return map.apply(ratios(binarize(img)));
}

ConversionMap calibrate(const FeatureVector &raw_a, const FeatureVector &target_a,
                        const FeatureVector &raw_b, const FeatureVector &target_b) {
    if (raw_a.v == raw_b.v || raw_a.h == raw_b.h) {
        throw std::invalid_argument("calibration glyphs must differ in both ratios");
    }
    ConversionMap m;
    const double sv = (target_a.v - target_b.v) / (raw_a.v - raw_b.v);
    const double sh = (target_a.h - target_b.h) / (raw_a.h - raw_b.h);
    m.a << sv, 0.0, 0.0, sh;
    m.c << target_a.v - sv * raw_a.v, target_a.h - sh * raw_a.h;
    m.normalize = false;
    return m;
}

InkMask mirror_left_right(const InkMask &mask) {
    InkMask out = mask;
    for (std::size_t y = 0; y < mask.height; ++y) {
        for (std::size_t x = 0; x < mask.width; ++x) {
            out.ink[y * mask.width + x] = mask.ink[y * mask.width + (mask.width - 1 - x)];
        }
    }
    return out;
}

InkMask mirror_top_bottom(const InkMask &mask) {
    InkMask out = mask;
    for (std::size_t y = 0; y < mask.height; ++y) {
        for (std::size_t x = 0; x < mask.width; ++x) {
            out.ink[y * mask.width + x] = mask.ink[(mask.height - 1 - y) * mask.width + x];
        }
    }
    return out;
}

InkMask upscale(const InkMask &mask, std::size_t factor) {
    if (factor == 0) {
        throw std::invalid_argument("upscale factor must be positive");
    }
    InkMask out{mask.width * factor, mask.height * factor, {}};
    out.ink.resize(out.width * out.height);
    for (std::size_t y = 0; y < out.height; ++y) {
        for (std::size_t x = 0; x < out.width; ++x) {
            out.ink[y * out.width + x] = mask.ink[(y / factor) * mask.width + x / factor];
        }
    }
    return out;
}

} // namespace qsvm::ocr
