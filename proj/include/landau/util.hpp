#ifndef LANDAU_UTIL_HPP
#define LANDAU_UTIL_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace landau {

/// Runs fn(i) for i in [0, count) on a small thread pool. Work items must be
/// independent; results should be written to pre-sized per-index slots so the
/// output is deterministic regardless of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Trapezoidal quadrature of samples y over abscissae x (same length).
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

std::vector<double> linspace(double a, double b, int count);
std::vector<double> logspace(double a, double b, int count); // log-uniform in [a,b], a,b > 0

/// Monotone piecewise-cubic (Fritsch–Carlson) interpolant. Input abscissae
/// must be strictly increasing; values monotone for monotone interpolation.
class PchipInterpolant {
  public:
    PchipInterpolant() = default;
    PchipInterpolant(std::vector<double> x, std::vector<double> y);
    double operator()(double x) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    bool empty() const { return x_.empty(); }

  private:
    std::vector<double> x_, y_, slope_;
};

/// Minimal CSV writer with deterministic %.12g formatting.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    ~CsvWriter();
    void row(const std::vector<double>& values);
    void raw_row(const std::string& line);

  private:
    struct Impl;
    Impl* impl_;
};

std::string format_double(double v);

} // namespace landau

#endif
