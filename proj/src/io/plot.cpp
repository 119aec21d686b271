#include "viasnet/io/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include <fmt/format.h>

namespace viasnet::io {
namespace {

// 5x7 bitmap font, rows top-down, low 5 bits per row (MSB = left column).
struct Glyph {
    char ch;
    uint8_t rows[7];
};

constexpr Glyph kFont[] = {
    {'A', {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
    {'B', {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E}},
    {'C', {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E}},
    {'D', {0x1E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1E}},
    {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}},
    {'F', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10}},
    {'G', {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}},
    {'H', {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
    {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'J', {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C}},
    {'K', {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}},
    {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}},
    {'M', {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}},
    {'N', {0x11, 0x19, 0x15, 0x13, 0x11, 0x11, 0x11}},
    {'O', {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
    {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}},
    {'Q', {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D}},
    {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
    {'S', {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E}},
    {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
    {'U', {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
    {'V', {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04}},
    {'W', {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A}},
    {'X', {0x11, 0x0A, 0x04, 0x04, 0x04, 0x0A, 0x11}},
    {'Y', {0x11, 0x11, 0x0A, 0x04, 0x04, 0x04, 0x04}},
    {'Z', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F}},
    {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}},
    {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}},
    {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
    {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}},
    {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
    {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}},
    {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
    {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}},
    {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
    {'.', {0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C}},
    {'-', {0x00, 0x00, 0x00, 0x1F, 0x00, 0x00, 0x00}},
    {'+', {0x00, 0x04, 0x04, 0x1F, 0x04, 0x04, 0x00}},
    {':', {0x00, 0x0C, 0x0C, 0x00, 0x0C, 0x0C, 0x00}},
    {'/', {0x01, 0x01, 0x02, 0x04, 0x08, 0x10, 0x10}},
    {'_', {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1F}},
    {'%', {0x19, 0x1A, 0x02, 0x04, 0x08, 0x0B, 0x13}},
    {'(', {0x02, 0x04, 0x08, 0x08, 0x08, 0x04, 0x02}},
    {')', {0x08, 0x04, 0x02, 0x02, 0x02, 0x04, 0x08}},
    {' ', {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}},
};

const uint8_t* glyph(char c) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    for (const auto& g : kFont)
        if (g.ch == c) return g.rows;
    return kFont[std::size(kFont) - 1].rows; // unknown -> blank
}

struct Axes {
    int x0, y0, x1, y1; // pixel box (y grows down)
    double xmin, xmax, ymin, ymax;
    int px(double x) const {
        return x0 + static_cast<int>(std::lround((x - xmin) / (xmax - xmin) * (x1 - x0)));
    }
    int py(double y) const {
        return y1 - static_cast<int>(std::lround((y - ymin) / (ymax - ymin) * (y1 - y0)));
    }
};

std::string tick_label(double v) {
    std::string s = fmt::format("{:.4g}", v);
    return s;
}

void expand(double& lo, double& hi) {
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = (hi - lo) * 0.05;
    lo -= pad;
    hi += pad;
}

} // namespace

void draw_line(Image& im, int x0, int y0, int x1, int y1, Color c) {
    int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
        im.set(x0, y0, c.r, c.g, c.b);
        if (x0 == x1 && y0 == y1) break;
        int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

void draw_text(Image& im, int x, int y, const std::string& text, Color c) {
    int cx = x;
    for (char ch : text) {
        const uint8_t* rows = glyph(ch);
        for (int r = 0; r < 7; ++r)
            for (int col = 0; col < 5; ++col)
                if (rows[r] & (1 << (4 - col))) im.set(cx + col, y + r, c.r, c.g, c.b);
        cx += 6;
    }
}

void fill_rect(Image& im, int x0, int y0, int x1, int y1, Color c) {
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) im.set(x, y, c.r, c.g, c.b);
}

void render_plot(const std::string& path, const PlotSpec& spec) {
    Image im(spec.width, spec.height);
    const Color axis{40, 40, 40};
    const Color grid{225, 225, 225};
    Axes ax;
    ax.x0 = 70;
    ax.y0 = 30;
    ax.x1 = spec.width - 20;
    ax.y1 = spec.height - 45;

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto see = [&](double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    };
    for (const auto& s : spec.series)
        for (size_t i = 0; i < s.x.size(); ++i) see(s.x[i], s.y[i]);
    for (const auto& [x, h] : spec.bars) {
        see(x, 0.0);
        see(x + spec.bar_width, h);
    }
    if (!spec.boxes.empty()) {
        for (size_t i = 0; i < spec.boxes.size(); ++i) {
            see(static_cast<double>(i), spec.boxes[i].min);
            see(static_cast<double>(i + 1), spec.boxes[i].max);
        }
    }
    for (double v : spec.vlines) see(v, ymin == 1e300 ? 0.0 : ymin);
    for (double v : spec.hlines) see(xmin == 1e300 ? 0.0 : xmin, v);
    if (xmin > xmax) {
        xmin = 0;
        xmax = 1;
    }
    if (ymin > ymax) {
        ymin = 0;
        ymax = 1;
    }
    expand(xmin, xmax);
    expand(ymin, ymax);
    ax.xmin = xmin;
    ax.xmax = xmax;
    ax.ymin = ymin;
    ax.ymax = ymax;

    // grid + ticks
    for (int t = 0; t <= 5; ++t) {
        const double xv = xmin + (xmax - xmin) * t / 5.0;
        const double yv = ymin + (ymax - ymin) * t / 5.0;
        draw_line(im, ax.px(xv), ax.y0, ax.px(xv), ax.y1, grid);
        draw_line(im, ax.x0, ax.py(yv), ax.x1, ax.py(yv), grid);
        draw_text(im, ax.px(xv) - 12, ax.y1 + 6, tick_label(xv), axis);
        draw_text(im, 6, ax.py(yv) - 3, tick_label(yv), axis);
    }

    for (const auto& [x, h] : spec.bars) {
        fill_rect(im, ax.px(x) + 1, ax.py(h), ax.px(x + spec.bar_width) - 1, ax.py(0.0),
                  Color{120, 160, 220});
    }
    for (double v : spec.vlines)
        for (int y = ax.y0; y <= ax.y1; y += 4) draw_line(im, ax.px(v), y, ax.px(v), y + 1, Color{200, 40, 40});
    for (double v : spec.hlines)
        for (int x = ax.x0; x <= ax.x1; x += 4) draw_line(im, x, ax.py(v), x + 1, ax.py(v), Color{200, 40, 40});

    for (const auto& s : spec.series) {
        if (s.points) {
            for (size_t i = 0; i < s.x.size(); ++i)
                fill_rect(im, ax.px(s.x[i]) - 1, ax.py(s.y[i]) - 1, ax.px(s.x[i]) + 1,
                          ax.py(s.y[i]) + 1, s.color);
        } else {
            for (size_t i = 1; i < s.x.size(); ++i)
                draw_line(im, ax.px(s.x[i - 1]), ax.py(s.y[i - 1]), ax.px(s.x[i]), ax.py(s.y[i]),
                          s.color);
        }
    }

    if (!spec.boxes.empty()) {
        for (size_t i = 0; i < spec.boxes.size(); ++i) {
            const auto& b = spec.boxes[i];
            const double cx = static_cast<double>(i) + 0.5;
            const int x = ax.px(cx);
            const int half = std::max(3, (ax.px(0.85) - ax.px(0.15)) / 2 /
                                             std::max<int>(1, static_cast<int>(spec.boxes.size())));
            draw_line(im, x, ax.py(b.min), x, ax.py(b.max), axis);
            fill_rect(im, x - half, ax.py(b.p90), x + half, ax.py(b.p10), Color{170, 200, 240});
            draw_line(im, x - half, ax.py(b.median), x + half, ax.py(b.median), Color{180, 40, 40});
            fill_rect(im, x - 1, ax.py(b.mean) - 1, x + 1, ax.py(b.mean) + 1, Color{20, 20, 20});
            draw_text(im, x - 3 * static_cast<int>(b.label.size()), ax.y1 + 16, b.label, axis);
        }
    }

    draw_line(im, ax.x0, ax.y0, ax.x0, ax.y1, axis);
    draw_line(im, ax.x0, ax.y1, ax.x1, ax.y1, axis);
    draw_text(im, ax.x0, 12, spec.title, axis);
    draw_text(im, (ax.x0 + ax.x1) / 2 - 3 * static_cast<int>(spec.xlabel.size()), spec.height - 14,
              spec.xlabel, axis);
    draw_text(im, 6, ax.y0 - 12, spec.ylabel, axis);

    write_png(path, im);
}

} // namespace viasnet::io
