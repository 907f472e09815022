#include "landau/util.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace landau {

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 4;
    const std::size_t workers = std::min<std::size_t>(hw, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<bool> failed{false};
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    failed.store(true);
                    throw; // std::terminate: work items are expected to record
                           // their own errors instead of throwing
                }
            }
        });
    }
    for (auto& t : pool) t.join();
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("trapezoid: need matching arrays with >= 2 samples");
    double acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        acc += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return acc;
}

std::vector<double> linspace(double a, double b, int count) {
    if (count < 2) return {a};
    std::vector<double> out(count);
    const double h = (b - a) / (count - 1);
    for (int i = 0; i < count; ++i) out[i] = a + h * i;
    out.back() = b;
    return out;
}

std::vector<double> logspace(double a, double b, int count) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("logspace: endpoints must be positive");
    auto t = linspace(std::log(a), std::log(b), count);
    for (auto& v : t) v = std::exp(v);
    return t;
}

PchipInterpolant::PchipInterpolant(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n != y_.size() || n < 2)
        throw std::invalid_argument("PchipInterpolant: need matching arrays with >= 2 samples");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("PchipInterpolant: abscissae must be strictly increasing");

    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);

    slope_.assign(n, 0.0);
    slope_[0] = d[0];
    slope_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            const double w1 = 2.0 * (x_[i + 1] - x_[i]) + (x_[i] - x_[i - 1]);
            const double w2 = (x_[i + 1] - x_[i]) + 2.0 * (x_[i] - x_[i - 1]);
            slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    // Fritsch–Carlson endpoint limiting keeps the interpolant monotone.
    auto limit_end = [&](std::size_t i, double di) {
        if (slope_[i] * di <= 0.0)
            slope_[i] = 0.0;
        else if (std::abs(slope_[i]) > 3.0 * std::abs(di))
            slope_[i] = 3.0 * di;
    };
    limit_end(0, d[0]);
    limit_end(n - 1, d[n - 2]);
}

double PchipInterpolant::operator()(double x) const {
    if (empty()) throw std::logic_error("PchipInterpolant: empty");
    const std::size_t n = x_.size();
    if (x <= x_.front()) x = x_.front();
    if (x >= x_.back()) x = x_.back();
    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (x_[mid] <= x ? lo : hi) = mid;
    }
    const double h = x_[lo + 1] - x_[lo];
    const double t = (x - x_[lo]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * y_[lo] + h10 * h * slope_[lo] + h01 * y_[lo + 1] + h11 * h * slope_[lo + 1];
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : impl_(new Impl) {
    impl_->out.open(path);
    if (!impl_->out)
        throw std::runtime_error("CsvWriter: cannot open " + path);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) impl_->out << ',';
        impl_->out << columns[i];
    }
    impl_->out << '\n';
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) impl_->out << ',';
        impl_->out << format_double(values[i]);
    }
    impl_->out << '\n';
}

void CsvWriter::raw_row(const std::string& line) { impl_->out << line << '\n'; }

} // namespace landau
