#pragma once

#include <string>
#include <vector>

#include "relia/spc.hpp"

namespace relia {

enum class YScale { Log10, Linear };

struct ChartConfig {
    int width = 900;
    int height = 540;
    YScale y_scale = YScale::Log10;
    std::string title = "Mean value control chart";
    bool show_labels = true;
};

// Self-contained SVG 1.1 document: three horizontal limit lines labeled
// UCL/CL/LCL, one marker per point (x = failure index, y = diff), alarm
// markers drawn distinctly and annotated with their index. Byte-identical
// output for identical inputs.
std::string render_chart(const std::vector<ChartPoint>& points, const ControlLimits& limits,
                         const ChartConfig& config = {});

}  // namespace relia
