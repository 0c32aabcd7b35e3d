#pragma once

#include <string>
#include <vector>

// Minimal line plots written as standalone SVG.
namespace qdiscord::svg {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = true;
  std::vector<Series> series;
};

// Points that cannot be drawn (non-finite, or non-positive on a log axis)
// break the polyline. Throws ArgumentError when no point is drawable.
std::string render(const Plot& p);

void write_file(const std::string& path, const Plot& p);

}  // namespace qdiscord::svg
