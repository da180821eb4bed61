#include "cmctori/svg.hpp"

#include <cstdio>
#include <sstream>

namespace cmctori {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5f", v);
  return buf;
}

}  // namespace

std::string profile_svg(const std::vector<ProfilePoint>& profile) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" "
        "viewBox=\"-1.25 -1.25 2.5 2.5\" width=\"640\" height=\"640\">\n";
  os << "  <circle class=\"axis\" cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" "
        "stroke=\"#888\" stroke-width=\"0.01\"/>\n";
  if (!profile.empty()) {
    os << "  <path class=\"profile\" fill=\"none\" stroke=\"#1040c0\" "
          "stroke-width=\"0.008\" d=\"";
    for (size_t i = 0; i < profile.size(); ++i) {
      os << (i == 0 ? "M " : "L ") << fmt(profile[i].px) << ' '
         << fmt(-profile[i].py) << ' ';
    }
    os << "Z\"/>\n";
    for (const auto& p : profile) {
      if (p.is_bulge)
        os << "  <circle class=\"bulge\" cx=\"" << fmt(p.px) << "\" cy=\""
           << fmt(-p.py) << "\" r=\"0.02\" fill=\"#c03030\"/>\n";
      else if (p.is_neck)
        os << "  <circle class=\"neck\" cx=\"" << fmt(p.px) << "\" cy=\""
           << fmt(-p.py) << "\" r=\"0.02\" fill=\"#30a050\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string profile_csv(const std::vector<ProfilePoint>& profile) {
  std::ostringstream os;
  os << "x,px,py,axis_distance\n";
  for (const auto& p : profile) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g\n", p.x, p.px,
                  p.py, p.axis_distance);
    os << buf;
  }
  return os.str();
}

}  // namespace cmctori
