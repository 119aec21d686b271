#pragma once

#include <string>
#include <utility>
#include <vector>

#include "viasnet/io/png.hpp"

namespace viasnet::io {

struct Color {
    uint8_t r = 0, g = 0, b = 0;
};

struct PlotSeries {
    std::vector<double> x, y;
    Color color{30, 90, 200};
    bool points = false; // polyline otherwise
};

// Per-category whisker summary (violin stand-in): box spans p10..p90, whiskers
// span min..max, ticks at median, dot at mean.
struct PlotBox {
    std::string label;
    double min = 0, p10 = 0, median = 0, p90 = 0, max = 0, mean = 0;
};

struct PlotSpec {
    std::string title, xlabel, ylabel;
    std::vector<PlotSeries> series;
    std::vector<std::pair<double, double>> bars; // (left_edge, height), uniform width
    double bar_width = 0.0;
    std::vector<double> vlines;
    std::vector<double> hlines;
    std::vector<PlotBox> boxes;
    int width = 900, height = 540;
};

void render_plot(const std::string& path, const PlotSpec& spec);

// Low-level primitives reused by the report renderer.
void draw_line(Image& im, int x0, int y0, int x1, int y1, Color c);
void draw_text(Image& im, int x, int y, const std::string& text, Color c);
void fill_rect(Image& im, int x0, int y0, int x1, int y1, Color c);

} // namespace viasnet::io
