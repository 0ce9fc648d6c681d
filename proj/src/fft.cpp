#include "fft.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace nlch::detail {

namespace {

struct FftwDeleter {
  void operator()(void* p) const { fftw_free(p); }
};

template <class T>
using Aligned = std::unique_ptr<T[], FftwDeleter>;

template <class T>
Aligned<T> aligned(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * (n == 0 ? 1 : n)));
  if (p == nullptr) throw std::bad_alloc();
  return Aligned<T>(p);
}

enum class PlanType { r2c, c2r, r2r };
using PlanKey = std::tuple<PlanType, int, int, int, int>;

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

std::map<PlanKey, fftw_plan>& plan_cache() {
  static std::map<PlanKey, fftw_plan> cache;
  return cache;
}

// Plans are keyed by shape; the planning arrays come from fftw_malloc, so any
// fftw_malloc buffer later passed to the new-array execute has matching alignment.
fftw_plan get_plan(PlanType type, int nx, int ny, int kx, int ky) {
  std::lock_guard lock(plan_mutex());
  auto key = PlanKey{type, nx, ny, kx, ky};
  auto& cache = plan_cache();
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const std::size_t n_real = static_cast<std::size_t>(nx) * ny;
  const std::size_t n_cplx = static_cast<std::size_t>(nx / 2 + 1) * ny;
  auto rbuf = aligned<double>(n_real);
  auto cbuf = aligned<fftw_complex>(n_cplx);
  auto rbuf2 = aligned<double>(n_real);
  const unsigned flags = FFTW_ESTIMATE;
  fftw_plan plan = nullptr;
  switch (type) {
    case PlanType::r2c:
      plan = ny == 1 ? fftw_plan_dft_r2c_1d(nx, rbuf.get(), cbuf.get(), flags)
                     : fftw_plan_dft_r2c_2d(ny, nx, rbuf.get(), cbuf.get(), flags);
      break;
    case PlanType::c2r:
      plan = ny == 1 ? fftw_plan_dft_c2r_1d(nx, cbuf.get(), rbuf.get(), flags)
                     : fftw_plan_dft_c2r_2d(ny, nx, cbuf.get(), rbuf.get(), flags);
      break;
    case PlanType::r2r:
      plan = ny == 1 ? fftw_plan_r2r_1d(nx, rbuf.get(), rbuf2.get(), static_cast<fftw_r2r_kind>(kx), flags)
                     : fftw_plan_r2r_2d(ny, nx, rbuf.get(), rbuf2.get(), static_cast<fftw_r2r_kind>(ky),
                                        static_cast<fftw_r2r_kind>(kx), flags);
      break;
  }
  if (plan == nullptr) throw std::runtime_error("fftw: failed to create plan");
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

std::vector<Complex> r2c(const Grid& grid, std::span<const double> in) {
  const int nx = grid.nx, ny = grid.ny;
  if (in.size() != grid.size()) throw ShapeError("r2c: input size does not match grid");
  fftw_plan plan = get_plan(PlanType::r2c, nx, ny, 0, 0);
  const std::size_t n_cplx = static_cast<std::size_t>(nx / 2 + 1) * ny;
  auto rbuf = aligned<double>(in.size());
  auto cbuf = aligned<fftw_complex>(n_cplx);
  std::memcpy(rbuf.get(), in.data(), sizeof(double) * in.size());
  fftw_execute_dft_r2c(plan, rbuf.get(), cbuf.get());
  std::vector<Complex> out(n_cplx);
  std::memcpy(static_cast<void*>(out.data()), cbuf.get(), sizeof(fftw_complex) * n_cplx);
  return out;
}

std::vector<double> c2r(const Grid& grid, std::span<const Complex> in) {
  const int nx = grid.nx, ny = grid.ny;
  const std::size_t n_cplx = static_cast<std::size_t>(nx / 2 + 1) * ny;
  if (in.size() != n_cplx) throw ShapeError("c2r: coefficient layout does not match grid");
  fftw_plan plan = get_plan(PlanType::c2r, nx, ny, 0, 0);
  auto cbuf = aligned<fftw_complex>(n_cplx);
  auto rbuf = aligned<double>(grid.size());
  std::memcpy(static_cast<void*>(cbuf.get()), in.data(), sizeof(fftw_complex) * n_cplx);
  fftw_execute_dft_c2r(plan, cbuf.get(), rbuf.get());
  std::vector<double> out(grid.size());
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = rbuf[i] * scale;
  return out;
}

std::vector<double> r2r(int nx, int ny, fftw_r2r_kind kind_x, fftw_r2r_kind kind_y, std::span<const double> in) {
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  if (in.size() != n) throw ShapeError("r2r: input size does not match shape");
  fftw_plan plan = get_plan(PlanType::r2r, nx, ny, kind_x, ny == 1 ? 0 : kind_y);
  auto ibuf = aligned<double>(n);
  auto obuf = aligned<double>(n);
  std::memcpy(ibuf.get(), in.data(), sizeof(double) * n);
  fftw_execute_r2r(plan, ibuf.get(), obuf.get());
  return std::vector<double>(obuf.get(), obuf.get() + n);
}

namespace {

// Even-length DCT-II through a single real FFT of the even/odd reordered input.
std::vector<int> reorder(int n) {
  std::vector<int> p(n);
  for (int m = 0; m < n / 2; ++m) {
    p[m] = 2 * m;
    p[n - 1 - m] = 2 * m + 1;
  }
  return p;
}

std::vector<Complex> quarter_twiddle(int n) {
  std::vector<Complex> w(n);
  for (int k = 0; k < n; ++k) w[k] = std::polar(1.0, -M_PI * k / (2.0 * n));
  return w;
}

bool fast_path(const Grid& grid) {
  return grid.size() >= 4096 && grid.nx % 2 == 0 && (grid.ny == 1 || grid.ny % 2 == 0);
}

}  // namespace

std::vector<double> dct(const Grid& grid, std::span<const double> in) {
  if (!fast_path(grid)) return r2r(grid.nx, grid.ny, FFTW_REDFT10, FFTW_REDFT10, in);
  if (in.size() != grid.size()) throw ShapeError("dct: input size does not match grid");
  const int nx = grid.nx, ny = grid.ny, hx = nx / 2 + 1;
  const auto px = reorder(nx);
  const auto py = ny == 1 ? std::vector<int>{0} : reorder(ny);
  auto rbuf = aligned<double>(grid.size());
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) rbuf[static_cast<std::size_t>(j) * nx + i] = in[static_cast<std::size_t>(py[j]) * nx + px[i]];
  auto cbuf = aligned<fftw_complex>(static_cast<std::size_t>(hx) * ny);
  fftw_execute_dft_r2c(get_plan(PlanType::r2c, nx, ny, 0, 0), rbuf.get(), cbuf.get());
  const auto* c = reinterpret_cast<const double*>(cbuf.get());
  const auto wx = quarter_twiddle(nx);
  const auto wy = quarter_twiddle(ny);
  std::vector<double> out(grid.size());
  // Columns k1 > nx/2 follow from conjugate symmetry of the half spectrum.
  for (int k2 = 0; k2 < ny; ++k2) {
    const int m2 = (ny - k2) % ny;
    const double cy = wy[k2].real(), sy = wy[k2].imag();
    const double* va = c + 2 * static_cast<std::size_t>(k2) * hx;
    const double* vb = c + 2 * static_cast<std::size_t>(m2) * hx;
    double* row = out.data() + static_cast<std::size_t>(k2) * nx;
    for (int k1 = 0; k1 <= nx / 2; ++k1) {
      const double ar = va[2 * k1], ai = va[2 * k1 + 1], br = vb[2 * k1], bi = vb[2 * k1 + 1];
      const double sr = cy * (ar + br) - sy * (ai - bi);
      const double si = cy * (ai + bi) + sy * (ar - br);
      const double scale = ny == 1 ? 1.0 : 2.0;
      row[k1] = scale * (wx[k1].real() * sr - wx[k1].imag() * si);
      if (k1 > 0 && k1 < nx / 2) row[nx - k1] = scale * (wx[nx - k1].real() * sr + wx[nx - k1].imag() * si);
    }
  }
  return out;
}

std::vector<double> idct(const Grid& grid, std::span<const double> in) {
  if (!fast_path(grid)) {
    auto out = r2r(grid.nx, grid.ny, FFTW_REDFT01, FFTW_REDFT01, in);
    double scale = 1.0 / (2.0 * grid.nx);
    if (grid.ny > 1) scale /= 2.0 * grid.ny;
    for (double& v : out) v *= scale;
    return out;
  }
  if (in.size() != grid.size()) throw ShapeError("idct: input size does not match grid");
  const int nx = grid.nx, ny = grid.ny, hx = nx / 2 + 1;
  const auto wx = quarter_twiddle(nx);
  auto cbuf = aligned<fftw_complex>(static_cast<std::size_t>(hx) * ny);
  auto* c = reinterpret_cast<Complex*>(cbuf.get());
  auto y = [&](int k1, int k2) {
    if (k1 >= nx || k2 >= ny) return 0.0;
    return in[static_cast<std::size_t>(k2) * nx + k1];
  };
  const auto wy = quarter_twiddle(ny);
  const double quarter = ny == 1 ? 0.5 : 0.25;
  for (int k2 = 0; k2 < ny; ++k2) {
    const int m2 = k2 == 0 ? ny : ny - k2;
    for (int k1 = 0; k1 < hx; ++k1) {
      const int m1 = k1 == 0 ? nx : nx - k1;
      const double p = y(k1, k2) - y(m1, m2), q = -(y(m1, k2) + y(k1, m2));
      const double wr = wx[k1].real() * wy[k2].real() - wx[k1].imag() * wy[k2].imag();
      const double wi = wx[k1].real() * wy[k2].imag() + wx[k1].imag() * wy[k2].real();
      c[static_cast<std::size_t>(k2) * hx + k1] = Complex(quarter * (wr * p + wi * q), quarter * (wr * q - wi * p));
    }
  }
  auto rbuf = aligned<double>(grid.size());
  fftw_execute_dft_c2r(get_plan(PlanType::c2r, nx, ny, 0, 0), cbuf.get(), rbuf.get());
  const auto px = reorder(nx);
  const auto py = ny == 1 ? std::vector<int>{0} : reorder(ny);
  const double scale = 1.0 / static_cast<double>(grid.size());
  std::vector<double> out(grid.size());
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      out[static_cast<std::size_t>(py[j]) * nx + px[i]] = rbuf[static_cast<std::size_t>(j) * nx + i] * scale;
  return out;
}

}  // namespace nlch::detail
