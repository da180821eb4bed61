#pragma once

#include <string>
#include <vector>

#include "cmctori/surface.hpp"

namespace cmctori {

// SVG rendering of a profile curve: the rotation axis as the unit circle,
// the profile as a single path, bulge/neck markers as classed circles.
// The viewBox is normalized to the unit axis circle with a small margin.
std::string profile_svg(const std::vector<ProfilePoint>& profile);

// CSV dump: x, projected coordinates, signed axis distance.
std::string profile_csv(const std::vector<ProfilePoint>& profile);

}  // namespace cmctori
