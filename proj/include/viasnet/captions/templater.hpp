#pragma once

#include <string>

#include "viasnet/corpus/synth.hpp"

namespace viasnet::captions {

// Rule-based caption for a synthetic scene; also the stub provider's output.
// Pure function of the scene truth.
std::string caption_from_truth(const corpus::SceneTruth& scene);

// Direction word for a velocity vector.
std::string direction_word(double vx, double vy);

} // namespace viasnet::captions
