#pragma once

#include "lstamm/cfmm.hpp"

#include <span>

namespace lstamm::detail {

// -dx_1/dx_0 on the level set through `reserves` (Curve families only).
double curve_spot_price(const CurveFamily& family, std::span<const double> reserves);

}  // namespace lstamm::detail
