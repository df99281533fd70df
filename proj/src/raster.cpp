#include "skewtent/raster.hpp"

#include "skewtent/error.hpp"
#include "skewtent/theta.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <optional>

namespace skewtent {

std::uint64_t prefix_identifier(const KneadingSequence& seq) noexcept
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Symbol s : seq.symbols()) {
    h ^= static_cast<std::uint8_t>(s);
    h *= 0x100000001b3ULL;
  }
  return h == kOutsideU ? 1 : h;
}

std::uint64_t parameter_identifier(double alpha, double beta,
                                   std::size_t prefix_len, double c_tol)
{
  if (!in_region_u(alpha, beta)) {
    return kOutsideU;
  }
  return prefix_identifier(
    kneading_prefix(SkewTentMap(alpha, beta), prefix_len, c_tol));
}

ParameterPoint pixel_center(const RasterConfig& config, std::size_t col,
                            std::size_t row)
{
  const double fx = (static_cast<double>(col) + 0.5) /
                    static_cast<double>(config.width);
  const double fy = (static_cast<double>(row) + 0.5) /
                    static_cast<double>(config.height);
  return { config.alpha_range.lo + fx * config.alpha_range.width(),
           config.beta_range.hi - fy * config.beta_range.width() };
}

RasterImage kneading_raster(const RasterConfig& config)
{
  if (config.width == 0 || config.height == 0 || config.prefix_len == 0 ||
      !(config.alpha_range.width() > 0.0) ||
      !(config.beta_range.width() > 0.0)) {
    throw DomainError("raster needs a nonempty size, ranges and prefix");
  }
  RasterImage img;
  img.width = config.width;
  img.height = config.height;
  img.ids.resize(config.width * config.height);
  img.overlay.assign(config.width * config.height, OverlayLayer::none);
  for (std::size_t row = 0; row < config.height; ++row) {
    for (std::size_t col = 0; col < config.width; ++col) {
      const auto p = pixel_center(config, col, row);
      img.ids[row * config.width + col] =
        parameter_identifier(p.alpha, p.beta, config.prefix_len, config.c_tol);
    }
  }
  return img;
}

OverlaySegment resolve_overlay(const OverlaySpec& spec,
                               const OverlayOptions& options)
{
  const SkewTentMap map(spec.alpha, spec.beta);
  double slope = 0.0;
  if (spec.source == TangentSource::gamma) {
    const auto g =
      estimate_gamma(map, options.n, options.seed, options.burn_in);
    slope = slope_from_gamma(spec.alpha, spec.beta, g.gamma);
  } else {
    const auto blocks = rl_blocks(kneading_prefix(map, options.prefix_len));
    slope = implicit_slope(blocks, spec.alpha, spec.beta,
                           ThetaOptions{ 1e-12, 10000, false });
  }
  return { spec.alpha, spec.beta, slope, spec.source };
}

double segment_row(const RasterConfig& config, const OverlaySegment& segment,
                   double col)
{
  const double alpha =
    config.alpha_range.lo + (col + 0.5) / static_cast<double>(config.width) *
                              config.alpha_range.width();
  const double beta = segment.beta + segment.slope * (alpha - segment.alpha);
  return (config.beta_range.hi - beta) / config.beta_range.width() *
           static_cast<double>(config.height) -
         0.5;
}

RasterImage render_overlay(RasterImage image, const RasterConfig& config,
                           std::span<const OverlaySegment> segments)
{
  auto draw = [&](const OverlaySegment& seg) {
    const OverlayLayer layer = seg.source == TangentSource::gamma
                                 ? OverlayLayer::gamma
                                 : OverlayLayer::theta;
    const auto h = static_cast<long>(image.height);
    std::optional<long> prev_row;
    for (std::size_t col = 0; col < image.width; ++col) {
      const double y = segment_row(config, seg, static_cast<double>(col));
      long row = std::lround(y);
      // Lines on the border of the window (beta = 1, say) stay visible.
      if (y >= -0.5 && y <= static_cast<double>(h) - 0.5) {
        row = std::clamp(row, 0L, h - 1);
      }
      // Fill the vertical run between neighbouring columns for steep lines.
      long from = row;
      long to = row;
      if (prev_row && row > *prev_row) {
        from = *prev_row + 1;
      } else if (prev_row && row < *prev_row) {
        to = *prev_row - 1;
      }
      for (long r = std::max(from, 0L); r <= std::min(to, h - 1); ++r) {
        image.overlay[static_cast<std::size_t>(r) * image.width + col] = layer;
      }
      prev_row = row;
    }
  };
  for (const auto& s : segments) {
    if (s.source == TangentSource::theta) {
      draw(s);
    }
  }
  for (const auto& s : segments) {
    if (s.source == TangentSource::gamma) {
      draw(s);
    }
  }
  return image;
}

Rgb palette(std::uint64_t id) noexcept
{
  if (id == kOutsideU) {
    return kOutsideColor;
  }
  std::uint64_t z = id;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  // Keep classes away from pure red/blue and white.
  return { static_cast<std::uint8_t>(32 + (z & 0x7F)),
           static_cast<std::uint8_t>(64 + ((z >> 8) & 0x9F)),
           static_cast<std::uint8_t>(32 + ((z >> 16) & 0x7F)) };
}

void write_ppm(std::ostream& out, const RasterImage& image)
{
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  for (std::size_t i = 0; i < image.ids.size(); ++i) {
    Rgb c = palette(image.ids[i]);
    if (image.overlay[i] == OverlayLayer::gamma) {
      c = kGammaColor;
    } else if (image.overlay[i] == OverlayLayer::theta) {
      c = kThetaColor;
    }
    out.write(reinterpret_cast<const char*>(c.data()), 3);
  }
}

void write_raster_csv(std::ostream& out, const RasterImage& image,
                      const RasterConfig& config)
{
  out << "col,row,alpha,beta,identifier\n";
  for (std::size_t row = 0; row < image.height; ++row) {
    for (std::size_t col = 0; col < image.width; ++col) {
      const auto p = pixel_center(config, col, row);
      out << fmt::format("{},{},{:.17g},{:.17g},{}\n", col, row, p.alpha,
                         p.beta, image.id(col, row));
    }
  }
}

} // namespace skewtent
