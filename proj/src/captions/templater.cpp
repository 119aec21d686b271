#include "viasnet/captions/templater.hpp"

#include <cmath>

namespace viasnet::captions {

std::string direction_word(double vx, double vy) {
    if (std::fabs(vx) >= 2.0 * std::fabs(vy)) return vx >= 0 ? "right" : "left";
    if (std::fabs(vy) >= 2.0 * std::fabs(vx)) return vy >= 0 ? "down" : "up";
    return "diagonally";
}

std::string caption_from_truth(const corpus::SceneTruth& scene) {
    if (scene.cluttered)
        return "Many small colorful blobs scatter across a " + scene.bg_name + " background.";
    if (scene.blobs.size() == 1) {
        const auto& b = scene.blobs[0];
        return "A " + b.color_name + " blob moves " + direction_word(b.vx, b.vy) + " across a " +
               scene.bg_name + " background.";
    }
    std::string out = "A " + scene.blobs[0].color_name + " blob and a " +
                      scene.blobs[1].color_name + " blob drift across a " + scene.bg_name +
                      " background.";
    return out;
}

} // namespace viasnet::captions
