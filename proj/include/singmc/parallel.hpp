#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <string_view>
#include <vector>

namespace singmc {

/// serial runs the worker partitions one after another on the calling
/// thread. It is the reference path: for the same worker count it produces
/// bit-identical results to openmp, which runs the partitions concurrently.
enum class Execution { serial, openmp };

std::string_view to_string(Execution execution) noexcept;

/// True when the library was compiled with OpenMP support.
bool openmp_enabled() noexcept;

/// Splits `total` samples across `workers` partitions; worker w receives
/// total / workers samples plus one if w < total % workers.
struct Partition {
    std::size_t total;
    std::size_t workers;

    std::size_t count(std::size_t worker) const noexcept {
        return total / workers + (worker < total % workers ? 1 : 0);
    }
    /// Index of the first sample owned by `worker`.
    std::size_t offset(std::size_t worker) const noexcept {
        const std::size_t base = total / workers, extra = total % workers;
        return worker * base + (worker < extra ? worker : extra);
    }
};

/// Calls body(w) for w in [0, workers). Exceptions are captured per
/// worker; the one thrown by the lowest-indexed worker is rethrown after
/// all workers finish, which matches what the serial path would raise.
template <class Body>
void for_each_worker(std::size_t workers, Execution execution, Body&& body) {
    if (execution == Execution::serial || workers == 1) {
        for (std::size_t w = 0; w < workers; ++w) body(w);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    const auto count = static_cast<std::int64_t>(workers);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static, 1) num_threads(static_cast<int>(workers))
#endif
    for (std::int64_t w = 0; w < count; ++w) {
        try {
            body(static_cast<std::size_t>(w));
        } catch (...) {
            errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    void merge(const CompensatedSum& other) noexcept {
        add(other.sum_);
        comp_ += other.comp_;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// One-pass moments: Welford mean and centered sum of squares, plus a
/// compensated raw sum of squares. Partials merge with Chan's update.
class Moments {
public:
    void add(double x) noexcept {
        ++count_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
        sum_sq_.add(x * x);
    }

    void merge(const Moments& other) noexcept {
        if (other.count_ == 0) return;
        if (count_ == 0) {
            *this = other;
            return;
        }
        const double na = static_cast<double>(count_), nb = static_cast<double>(other.count_);
        const double n = na + nb;
        const double delta = other.mean_ - mean_;
        mean_ += delta * (nb / n);
        m2_ += other.m2_ + delta * delta * (na * nb / n);
        count_ += other.count_;
        sum_sq_.merge(other.sum_sq_);
    }

    std::size_t count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    /// Sample variance with the N - 1 denominator.
    double variance() const noexcept {
        return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
    }
    double mean_of_squares() const noexcept {
        return count_ ? sum_sq_.value() / static_cast<double>(count_) : 0.0;
    }

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    CompensatedSum sum_sq_;
};

}  // namespace singmc
