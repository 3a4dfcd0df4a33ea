#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <vector>

namespace smm {

enum class Execution { Parallel, Serial };

// Exceptions must not leave an OpenMP region. Loop bodies wrap their work in
// run(); the first exception is kept and rethrown after the region.
class FirstError {
public:
    template <class Fn>
    void run(Fn&& fn) noexcept {
        try {
            fn();
        } catch (...) {
            std::lock_guard lock(mu_);
            if (!error_) error_ = std::current_exception();
        }
    }
    void rethrow() const {
        if (error_) std::rethrow_exception(error_);
    }

private:
    std::mutex mu_;
    std::exception_ptr error_;
};

// Evaluates fn(k) for k = 0..n-1 and returns the results by index. Each call
// must depend only on k (per-path RNG streams), so both execution modes give
// identical vectors.
template <class T, class Fn>
std::vector<T> run_ensemble(std::size_t n, Execution mode, Fn&& fn) {
    std::vector<T> out(n);
    const long long m = static_cast<long long>(n);
    if (mode == Execution::Parallel) {
        FirstError err;
#pragma omp parallel for schedule(dynamic, 64)
        for (long long k = 0; k < m; ++k)
            err.run([&] { out[static_cast<std::size_t>(k)] = fn(static_cast<std::size_t>(k)); });
        err.rethrow();
    } else {
        for (long long k = 0; k < m; ++k) out[static_cast<std::size_t>(k)] = fn(static_cast<std::size_t>(k));
    }
    return out;
}

}  // namespace smm
