#pragma once
#include <complex>
#include <stdexcept>
#include <string>
#include <cmath>

#if defined(_OPENMP)
#include <omp.h>
#else
static inline int omp_get_max_threads() { return 1; }
static inline int omp_get_thread_num() { return 0; }
static inline void omp_set_num_threads(int) {}
static inline double omp_get_wtime() {
  return static_cast<double>(clock()) / CLOCKS_PER_SEC;
}
#endif

namespace photonwave {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};

// Internal unit system: c = hbar = eps0 = 1. Any unit conversion belongs at
// the CLI boundary, never inside the library.
struct Constants {
  double c = 1.0;
  double hbar = 1.0;
  double eps0 = 1.0;
};
inline constexpr Constants units{};

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
};
inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.dot(b); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

struct CVec3 {
  cplx x{0, 0}, y{0, 0}, z{0, 0};

  CVec3() = default;
  CVec3(cplx a, cplx b, cplx c) : x(a), y(b), z(c) {}
  explicit CVec3(const Vec3& v) : x(v.x), y(v.y), z(v.z) {}

  CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  CVec3 operator-(const CVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  CVec3 operator*(cplx s) const { return {x * s, y * s, z * s}; }
  CVec3 conj() const { return {std::conj(x), std::conj(y), std::conj(z)}; }
  // unconjugated dot; pair with conj() explicitly where a sesquilinear form is meant
  cplx dot(const CVec3& o) const { return x * o.x + y * o.y + z * o.z; }
  CVec3 cross(const CVec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const {
    return std::sqrt(std::norm(x) + std::norm(y) + std::norm(z));
  }
};
inline CVec3 operator*(cplx s, const CVec3& v) { return v * s; }
inline CVec3 conj(const CVec3& v) { return v.conj(); }
inline cplx dot(const CVec3& a, const CVec3& b) { return a.dot(b); }
inline CVec3 cross(const CVec3& a, const CVec3& b) { return a.cross(b); }

// Spacetime point (t, r) used for state origins and field arguments.
struct SpaceTime {
  double t = 0;
  Vec3 r{};
};

// Error taxonomy mirrored by CLI exit codes: all of these map to exit 1.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CoverageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DetectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace photonwave
