#pragma once

#include <string>
#include <vector>

namespace greenlaunch::eval {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> err;  // 95% half-widths; empty = no error bars
};

struct Bar {
  std::string label;
  double value = 0.0;
  int group = 0;  // bars sharing a group get the same color
};

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series);

void write_bar_chart(const std::string& path, const std::string& title,
                     const std::string& y_label, const std::vector<Bar>& bars);

}  // namespace greenlaunch::eval
