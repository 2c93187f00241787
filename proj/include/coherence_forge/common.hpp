// common.hpp — shared scalar type, tolerances, error types, seeding and hashing
#pragma once

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace coherence_forge {

using cx = std::complex<double>;

namespace tol {
// Construction-time invariants (hermiticity, trace, PSD) are checked at this
// tolerance; per-call comparison tolerances are passed explicitly.
inline constexpr double validation = 1e-10;
// Eigenvalues below this count as zero for support/rank decisions.
inline constexpr double support = 1e-12;
// Matrix entries below this modulus count as structural zeros.
inline constexpr double entry = 1e-12;
}  // namespace tol

struct dimension_mismatch_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct not_hermitian_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct not_psd_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct no_convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct not_incoherent_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct certification_failed_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct unsupported_dims_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Derives an independent per-trial seed from a master seed and a trial index
// (splitmix64 finalizer), so Monte Carlo trials are replayable in isolation.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// FNV-1a over raw little-endian doubles; used to fingerprint the inputs of a
// verification trial so failures can be replayed bit-exactly.
class fnv1a_hasher {
  public:
    void feed(double x) {
        unsigned char bytes[sizeof(double)];
        std::memcpy(bytes, &x, sizeof(double));
        for (unsigned char b : bytes) {
            state_ ^= b;
            state_ *= 0x100000001b3ull;
        }
    }
    void feed(const cx& z) {
        feed(z.real());
        feed(z.imag());
    }
    std::uint64_t value() const { return state_; }
    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out(16, '0');
        std::uint64_t v = state_;
        for (int i = 15; i >= 0; --i) {
            out[static_cast<std::size_t>(i)] = digits[v & 0xf];
            v >>= 4;
        }
        return out;
    }

  private:
    std::uint64_t state_ = 0xcbf29ce484222325ull;
};

// Thread cap for trial-parallel suites: COHERENCE_FORGE_THREADS if set,
// otherwise 1 (callers opt in to hardware concurrency explicitly).
inline unsigned thread_cap_from_env(unsigned fallback = 1) {
    if (const char* env = std::getenv("COHERENCE_FORGE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return fallback;
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. Work is assigned by
// atomic index; callers store results by index so output order never depends
// on the schedule.
template <typename Fn>
void parallel_for_indexed(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    const unsigned count = static_cast<unsigned>(
        std::min<std::size_t>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace coherence_forge
