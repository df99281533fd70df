#pragma once

#include "skewtent/birkhoff.hpp"
#include "skewtent/kneading.hpp"
#include "skewtent/map.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

namespace skewtent {

struct RasterConfig
{
  Interval alpha_range{ 0.0, 1.0 };
  Interval beta_range{ 0.5, 1.0 };
  std::size_t width = 512;
  std::size_t height = 512;
  std::size_t prefix_len = 10;
  double c_tol = kDefaultCTol;
};

inline constexpr std::uint64_t kOutsideU = 0;

enum class OverlayLayer : std::uint8_t
{
  none = 0,
  gamma = 1,
  theta = 2,
};

/// Row 0 is the top of the image (largest beta).
struct RasterImage
{
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint64_t> ids;
  std::vector<OverlayLayer> overlay;

  std::uint64_t id(std::size_t col, std::size_t row) const
  {
    return ids[row * width + col];
  }
  OverlayLayer layer(std::size_t col, std::size_t row) const
  {
    return overlay[row * width + col];
  }
};

/// 64-bit FNV-1a of the symbol string, never equal to kOutsideU.
std::uint64_t prefix_identifier(const KneadingSequence& seq) noexcept;

/// Identifier of the kneading prefix at (alpha, beta), or kOutsideU.
std::uint64_t parameter_identifier(double alpha, double beta,
                                   std::size_t prefix_len,
                                   double c_tol = kDefaultCTol);

struct ParameterPoint
{
  double alpha;
  double beta;
};

ParameterPoint pixel_center(const RasterConfig& config, std::size_t col,
                            std::size_t row);

RasterImage kneading_raster(const RasterConfig& config);

enum class TangentSource
{
  gamma,
  theta,
};

struct OverlaySpec
{
  double alpha;
  double beta;
  TangentSource source;
};

struct OverlayOptions
{
  std::size_t n = kDefaultBirkhoffIterates;
  std::uint64_t seed = 1;
  std::size_t burn_in = kDefaultBurnIn;
  std::size_t prefix_len = kDefaultPrefixLength;
};

/// A tangent line through (alpha, beta).
struct OverlaySegment
{
  double alpha;
  double beta;
  double slope;
  TangentSource source;
};

/// Slope from the Birkhoff gamma estimate or from the Theta implicit slope.
OverlaySegment resolve_overlay(const OverlaySpec& spec,
                               const OverlayOptions& options = {});

/// Fractional row of the line at a given column centre.
double segment_row(const RasterConfig& config, const OverlaySegment& segment,
                   double col);

/// Draws every segment across the image, clipped to it. Theta lines go
/// first so coincident gamma lines stay visible on top.
RasterImage render_overlay(RasterImage image, const RasterConfig& config,
                           std::span<const OverlaySegment> segments);

using Rgb = std::array<std::uint8_t, 3>;

inline constexpr Rgb kGammaColor{ 255, 0, 0 };
inline constexpr Rgb kThetaColor{ 0, 0, 255 };
inline constexpr Rgb kOutsideColor{ 255, 255, 255 };

Rgb palette(std::uint64_t id) noexcept;

/// Binary PPM (P6).
void write_ppm(std::ostream& out, const RasterImage& image);

/// CSV with header col,row,alpha,beta,identifier.
void write_raster_csv(std::ostream& out, const RasterImage& image,
                      const RasterConfig& config);

} // namespace skewtent
