#include "lapack.hpp"

#include <dlfcn.h>

#include <cstdlib>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hqed::lapack {

namespace {

using dsyevr_t = void(const char*, const char*, const char*, const int*, double*, const int*, const double*,
                      const double*, const int*, const int*, const double*, int*, double*, double*, const int*, int*,
                      double*, const int*, int*, const int*, int*, std::size_t, std::size_t, std::size_t);
using zheevr_t = void(const char*, const char*, const char*, const int*, std::complex<double>*, const int*,
                      const double*, const double*, const int*, const int*, const double*, int*, double*,
                      std::complex<double>*, const int*, int*, std::complex<double>*, const int*, double*,
                      const int*, int*, const int*, int*, std::size_t, std::size_t, std::size_t);
using dsbevx_t = void(const char*, const char*, const char*, const int*, const int*, double*, const int*, double*,
                      const int*, const double*, const double*, const int*, const int*, const double*, int*, double*,
                      double*, const int*, double*, int*, int*, int*, std::size_t, std::size_t, std::size_t);
using set_threads_t = void(int);

struct Backend {
  const char* name = nullptr;
  dsyevr_t* dsyevr = nullptr;
  zheevr_t* zheevr = nullptr;
  dsbevx_t* dsbevx = nullptr;
};

// OpenBLAS 0.3.20's AVX-512 kernels return wrong eigenvectors from the tridiagonal reduction for n >~ 150.
// The core type is read once at load, so it must be in the environment before dlopen. A user setting wins.
void choose_core_type() {
  if (std::getenv("OPENBLAS_CORETYPE") != nullptr) return;
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx512f") && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    setenv("OPENBLAS_CORETYPE", "Haswell", 0);
}

const Backend& backend() {
  static Backend b;
  static std::once_flag once;
  std::call_once(once, [] {
    choose_core_type();
    const char* candidates[] = {
#ifdef HQED_OPENBLAS_PATH
        HQED_OPENBLAS_PATH,
#endif
        "libopenblas.so.0", "libopenblas.so", "liblapack.so.3"};
    for (const char* name : candidates) {
      void* h = dlopen(name, RTLD_NOW | RTLD_LOCAL);
      if (h == nullptr) continue;
      auto* d = reinterpret_cast<dsyevr_t*>(dlsym(h, "dsyevr_"));
      auto* z = reinterpret_cast<zheevr_t*>(dlsym(h, "zheevr_"));
      auto* sb = reinterpret_cast<dsbevx_t*>(dlsym(h, "dsbevx_"));
      if (d == nullptr || z == nullptr || sb == nullptr) {
        dlclose(h);
        continue;
      }
      // Parallelism lives in the sweep's workers; serial BLAS keeps results bit-stable.
      if (auto* st = reinterpret_cast<set_threads_t*>(dlsym(h, "openblas_set_num_threads"))) st(1);
      b = Backend{name, d, z, sb};
      return;
    }
  });
  if (b.dsyevr == nullptr) throw std::runtime_error("no LAPACK library with dsyevr_/zheevr_/dsbevx_ could be loaded");
  return b;
}

constexpr double kAbstol = std::numeric_limits<double>::min();  // dlamch('S')

}  // namespace

int dsyevr(Eigen::MatrixXd& a, int count, bool want_vectors, Eigen::VectorXd& w, Eigen::MatrixXd& z, int& found) {
  const Backend& b = backend();
  const int n = static_cast<int>(a.rows());
  const int lda = std::max(1, n), il = 1, iu = count;
  const double vl = 0, vu = 0;
  const char jobz = want_vectors ? 'V' : 'N', range = 'I', uplo = 'U';
  w.resize(n);
  if (want_vectors) z.resize(n, count);
  const int ldz = want_vectors ? n : 1;
  double dummy_z = 0;
  double* zp = want_vectors ? z.data() : &dummy_z;
  std::vector<int> isuppz(2 * static_cast<std::size_t>(std::max(1, count)));
  int info = 0;
  int lwork = -1, liwork = -1, iwork_q = 0;
  double work_q = 0;
  b.dsyevr(&jobz, &range, &uplo, &n, a.data(), &lda, &vl, &vu, &il, &iu, &kAbstol, &found, w.data(), zp, &ldz,
           isuppz.data(), &work_q, &lwork, &iwork_q, &liwork, &info, 1, 1, 1);
  if (info != 0) return info;
  lwork = static_cast<int>(work_q);
  liwork = iwork_q;
  std::vector<double> work(static_cast<std::size_t>(lwork));
  std::vector<int> iwork(static_cast<std::size_t>(liwork));
  b.dsyevr(&jobz, &range, &uplo, &n, a.data(), &lda, &vl, &vu, &il, &iu, &kAbstol, &found, w.data(), zp, &ldz,
           isuppz.data(), work.data(), &lwork, iwork.data(), &liwork, &info, 1, 1, 1);
  return info;
}

int zheevr(Eigen::MatrixXcd& a, int count, Eigen::VectorXd& w, Eigen::MatrixXcd& z, int& found) {
  const Backend& b = backend();
  const int n = static_cast<int>(a.rows());
  const int lda = std::max(1, n), il = 1, iu = count, ldz = std::max(1, n);
  const double vl = 0, vu = 0;
  const char jobz = 'V', range = 'I', uplo = 'U';
  w.resize(n);
  z.resize(n, count);
  std::vector<int> isuppz(2 * static_cast<std::size_t>(std::max(1, count)));
  int info = 0;
  int lwork = -1, lrwork = -1, liwork = -1, iwork_q = 0;
  std::complex<double> work_q;
  double rwork_q = 0;
  b.zheevr(&jobz, &range, &uplo, &n, a.data(), &lda, &vl, &vu, &il, &iu, &kAbstol, &found, w.data(), z.data(), &ldz,
           isuppz.data(), &work_q, &lwork, &rwork_q, &lrwork, &iwork_q, &liwork, &info, 1, 1, 1);
  if (info != 0) return info;
  lwork = static_cast<int>(work_q.real());
  lrwork = static_cast<int>(rwork_q);
  liwork = iwork_q;
  std::vector<std::complex<double>> work(static_cast<std::size_t>(lwork));
  std::vector<double> rwork(static_cast<std::size_t>(lrwork));
  std::vector<int> iwork(static_cast<std::size_t>(liwork));
  b.zheevr(&jobz, &range, &uplo, &n, a.data(), &lda, &vl, &vu, &il, &iu, &kAbstol, &found, w.data(), z.data(), &ldz,
           isuppz.data(), work.data(), &lwork, rwork.data(), &lrwork, iwork.data(), &liwork, &info, 1, 1, 1);
  return info;
}

int dsbevx(Eigen::MatrixXd& ab, int kd, int count, Eigen::VectorXd& w, int& found) {
  const Backend& b = backend();
  const int n = static_cast<int>(ab.cols());
  const int ldab = kd + 1, ldq = 1, ldz = 1, il = 1, iu = count;
  const double vl = 0, vu = 0;
  const char jobz = 'N', range = 'I', uplo = 'U';
  const double band_abstol = 2 * kAbstol;  // most accurate bisection per the routine's documentation
  w.resize(n);
  double q = 0, z = 0;
  std::vector<double> work(7 * static_cast<std::size_t>(n));
  std::vector<int> iwork(5 * static_cast<std::size_t>(n)), ifail(static_cast<std::size_t>(n));
  int info = 0;
  b.dsbevx(&jobz, &range, &uplo, &n, &kd, ab.data(), &ldab, &q, &ldq, &vl, &vu, &il, &iu, &band_abstol, &found, w.data(),
           &z, &ldz, work.data(), iwork.data(), ifail.data(), &info, 1, 1, 1);
  return info;
}

const char* backend_name() { return backend().name; }

}  // namespace hqed::lapack
