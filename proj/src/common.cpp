#include "asbeam/common.hpp"

#include <cstdio>

namespace asbeam {

namespace {

double pairwise_sum_range(const double* data, std::size_t count) {
  if (count <= 8) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += data[i];
    return acc;
  }
  std::size_t half = count / 2;
  return pairwise_sum_range(data, half) + pairwise_sum_range(data + half, count - half);
}

}  // namespace

double pairwise_sum(const std::vector<double>& terms) {
  return pairwise_sum_range(terms.data(), terms.size());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace asbeam
