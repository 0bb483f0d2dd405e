#pragma once

#include <cmath>
#include <span>
#include <string>

#include "exflat/error.hpp"

namespace exflat {

enum class TrivialRoof { halfplane, exterior_disk_2d, exterior_disk_md };

inline const char* to_string(TrivialRoof kind) noexcept {
  switch (kind) {
    case TrivialRoof::halfplane: return "halfplane";
    case TrivialRoof::exterior_disk_2d: return "exterior_disk_2d";
    case TrivialRoof::exterior_disk_md: return "exterior_disk_md";
  }
  return "unknown";
}

/// Roof of the elementary exceptional domains on the closed domain:
/// x_1 on {x_1 >= 0}, log|x| on {|x| >= 1} in the plane, 1 - |x|^{2-m} on {|x| >= 1} in R^m.
/// The point's length is the ambient dimension; `m` must match it for the last kind.
inline double catalogue_trivial(TrivialRoof kind, std::span<const double> point, int m = 2) {
  if (point.empty()) throw Error(ErrorKind::InvalidArgument, "point must have at least one coordinate");
  double norm_sq = 0.0;
  for (const double x : point) norm_sq += x * x;
  const double norm = std::sqrt(norm_sq);
  switch (kind) {
    case TrivialRoof::halfplane:
      if (!(point[0] >= 0.0)) throw Error(ErrorKind::OutsideDomain, "half-space requires x_1 >= 0");
      return point[0];
    case TrivialRoof::exterior_disk_2d:
      if (point.size() != 2) throw Error(ErrorKind::InvalidArgument, "exterior_disk_2d takes a planar point");
      if (!(norm >= 1.0)) throw Error(ErrorKind::OutsideDomain, "exterior disk requires |x| >= 1");
      return std::log(norm);
    case TrivialRoof::exterior_disk_md:
      if (m < 3) throw Error(ErrorKind::InvalidArgument, "exterior_disk_md requires m >= 3");
      if (point.size() != static_cast<std::size_t>(m))
        throw Error(ErrorKind::InvalidArgument, "point dimension must equal m = " + std::to_string(m));
      if (!(norm >= 1.0)) throw Error(ErrorKind::OutsideDomain, "exterior ball requires |x| >= 1");
      return 1.0 - std::pow(norm, 2.0 - m);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown roof kind");
}

}  // namespace exflat
