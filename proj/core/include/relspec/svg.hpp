#pragma once

#include <string>
#include <vector>

#include "relspec/types.hpp"

namespace relspec {

struct SvgLayer {
    std::vector<cplx> points;
    std::string color = "#1f6fb2";
    double radius = 2.5;
    std::string label;
};

/// One canonical picture per run: Q(Sigma) boundary, the real spectral
/// bands, and point layers (spectra, targets). Viewport scales to the
/// region's bounding box.
void write_spectrum_svg(const std::string& path, const QRegion& region,
                        const IntervalUnion& sigma,
                        const std::vector<SvgLayer>& layers);

/// Points-only variant when no region is available.
void write_points_svg(const std::string& path, const std::vector<SvgLayer>& layers);

}  // namespace relspec
