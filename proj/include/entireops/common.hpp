#pragma once

// Shared vocabulary for the entireops library: error types, the three-valued
// verdict used by every checker, and a log-magnitude/phase representation for
// evaluating expressions whose moduli overflow or underflow double range.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace entireops {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Degree cap for polynomial inputs: n! overflows double at 171, and every
// factorial-weighted path in the library stays finite through degree 100.
inline constexpr int kDegreeCap = 100;

// Divisor floor on quadrature contours: below this a bare 1/Phi_n division
// is numerically meaningless.
inline constexpr double kNearZeroFloor = 1e-8;

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

namespace detail {

inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline std::string fmt(const std::complex<double>& z) {
  if (z.imag() == 0.0) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0.0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i";
}

}  // namespace detail

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OverflowError : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct NearZeroDivisorError : Error { using Error::Error; };
struct ZeroOnContourError : Error { using Error::Error; };
struct DegreeCapError : Error { using Error::Error; };
struct SeqExhaustedError : Error { using Error::Error; };
struct ZeroScalarError : Error { using Error::Error; };

struct ValidationError : Error {
  std::vector<std::string> issues;
  explicit ValidationError(std::vector<std::string> list)
      : Error(join(list)), issues(std::move(list)) {}

 private:
  static std::string join(const std::vector<std::string>& list) {
    std::string msg = "configuration invalid:";
    for (const auto& s : list) msg += "\n  - " + s;
    return msg;
  }
};

// PASS_NUMERIC is deliberately not a proof: it means every sampled quantity
// satisfied the hypothesis with the documented margins.
enum class Verdict { PassNumeric, Fail, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::PassNumeric: return "PASS_NUMERIC";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

// FAIL dominates, then INCONCLUSIVE; both operands PASS is required for PASS.
inline Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive)
    return Verdict::Inconclusive;
  return Verdict::PassNumeric;
}

inline Verdict combine(std::initializer_list<Verdict> vs) {
  Verdict r = Verdict::PassNumeric;
  for (Verdict v : vs) r = combine(r, v);
  return r;
}

// value = exp(lmag) * exp(i*phase).  lmag = -inf encodes exact zero.
// add_headroom tracks the worst relative cancellation seen at any addition
// while building this value: log(|l + r| / max(|l|, |r|)).  Phases computed
// through an addition with headroom below log(1e-8) are untrusted.
struct LogComplex {
  double lmag = -std::numeric_limits<double>::infinity();
  double phase = 0.0;
  double add_headroom = 0.0;  // <= 0 once any cancellation occurred

  static LogComplex from(cplx v) {
    LogComplex r;
    double m = std::abs(v);
    r.lmag = (m == 0.0) ? -std::numeric_limits<double>::infinity() : std::log(m);
    r.phase = (m == 0.0) ? 0.0 : std::arg(v);
    return r;
  }

  static LogComplex one() { return {0.0, 0.0, 0.0}; }

  bool is_zero() const { return !std::isfinite(lmag) && lmag < 0; }

  cplx to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    if (lmag > 709.0)
      throw OverflowError("magnitude exp(" + std::to_string(lmag) +
                          ") exceeds double range");
    return std::polar(std::exp(lmag), phase);
  }

  double log_abs() const { return lmag; }
};

inline LogComplex log_mul(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero() || b.is_zero())
    return {-std::numeric_limits<double>::infinity(), 0.0,
            std::min(a.add_headroom, b.add_headroom)};
  return {a.lmag + b.lmag, std::remainder(a.phase + b.phase, kTwoPi),
          std::min(a.add_headroom, b.add_headroom)};
}

inline LogComplex log_pow(const LogComplex& a, long long k) {
  if (k == 0) return LogComplex::one();
  if (a.is_zero()) return a;
  return {a.lmag * static_cast<double>(k),
          std::remainder(a.phase * static_cast<double>(k), kTwoPi),
          a.add_headroom};
}

inline LogComplex log_add(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero()) return {b.lmag, b.phase, std::min(a.add_headroom, b.add_headroom)};
  if (b.is_zero()) return {a.lmag, a.phase, std::min(a.add_headroom, b.add_headroom)};
  const LogComplex& hi = (a.lmag >= b.lmag) ? a : b;
  const LogComplex& lo = (a.lmag >= b.lmag) ? b : a;
  // |lo/hi| <= 1, so the sum is hi * (unit + small).
  cplx w = std::polar(1.0, hi.phase) +
           std::polar(std::exp(lo.lmag - hi.lmag), lo.phase);
  double m = std::abs(w);
  LogComplex r;
  r.add_headroom = std::min(a.add_headroom, b.add_headroom);
  if (m == 0.0) {
    r.lmag = -std::numeric_limits<double>::infinity();
    r.phase = 0.0;
    r.add_headroom = std::min(r.add_headroom, std::log(1e-300));
    return r;
  }
  r.lmag = hi.lmag + std::log(m);
  r.phase = std::arg(w);
  r.add_headroom = std::min(r.add_headroom, std::log(m > 2.0 ? 2.0 : m));
  return r;
}

namespace detail {

inline unsigned thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("ENTIREOPS_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

}  // namespace detail

// Runs fn(i) for i in [0, count).  Results must be written to index-addressed
// storage so the outcome is independent of the thread count (and therefore of
// ENTIREOPS_THREADS); reductions happen serially in the caller afterwards.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  unsigned threads = detail::thread_cap();
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::atomic<std::size_t> next{0};
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace entireops
