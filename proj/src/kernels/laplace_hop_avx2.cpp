#include "nwb/kernels/laplace_hop.hpp"

// AVX2 lane: one 2-spinor per 256-bit register, same mul/add order as the
// scalar reference (cmul_by_scalar matches cmul), no FMA.

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace nwb::kernels::detail {

#if defined(__AVX2__)

namespace {

inline __m256d cmul_by_scalar(__m256d v, __m256d ar, __m256d ai) {
  const __m256d t1 = _mm256_mul_pd(v, ar);
  const __m256d t2 = _mm256_mul_pd(_mm256_permute_pd(v, 0x5), ai);
  return _mm256_addsub_pd(t1, t2);
}

} // namespace

void laplace_hop_avx2(const HopTables& t, double c, const cdbl* in,
                      cdbl* out) {
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d chv = _mm256_set1_pd(-0.5 * c);
  const double* ip = reinterpret_cast<const double*>(in);
  double* op = reinterpret_cast<double*>(out);

  for (std::size_t x = 0; x < t.nsite; ++x) {
    const __m256d psi = _mm256_loadu_pd(ip + 4 * x);
    __m256d acc = _mm256_setzero_pd();

    for (int mu = 0; mu < 4; ++mu) {
      const std::size_t f = static_cast<std::size_t>(t.fwd[mu][x]);
      const std::size_t b = static_cast<std::size_t>(t.bwd[mu][x]);

      acc = _mm256_add_pd(acc, _mm256_mul_pd(psi, cv));

      const cdbl u = t.link[mu][x];
      const __m256d wf = cmul_by_scalar(_mm256_loadu_pd(ip + 4 * f),
                                        _mm256_set1_pd(u.real()),
                                        _mm256_set1_pd(u.imag()));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(wf, chv));

      const cdbl ub = t.link[mu][b];
      const __m256d wb = cmul_by_scalar(_mm256_loadu_pd(ip + 4 * b),
                                        _mm256_set1_pd(ub.real()),
                                        _mm256_set1_pd(-ub.imag()));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(wb, chv));
    }

    _mm256_storeu_pd(op + 4 * x, acc);
  }
}

#else // !__AVX2__

void laplace_hop_avx2(const HopTables& t, double c, const cdbl* in,
                      cdbl* out) {
  laplace_hop_scalar(t, c, in, out);
}

#endif

} // namespace nwb::kernels::detail
