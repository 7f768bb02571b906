#include "nwb/kernels/wilson_hop.hpp"

// AVX2 lane: a 2-spinor is one 256-bit register [h0r, h0i, h1r, h1i]. The
// spin matrices become 128-bit half swaps, re/im permutes and lane sign
// flips, all rounding-free, so this lane matches the scalar reference bit
// for bit (same multiply/add order, no FMA contraction).

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace nwb::kernels::detail {

#if defined(__AVX2__)

namespace {

constexpr long long SGN = 0x8000000000000000LL;

inline __m256d cmul_by_scalar(__m256d v, __m256d ar, __m256d ai) {
  const __m256d t1 = _mm256_mul_pd(v, ar);
  const __m256d t2 = _mm256_mul_pd(_mm256_permute_pd(v, 0x5), ai);
  return _mm256_addsub_pd(t1, t2);
}

inline __m256d swap_halves(__m256d v) {
  return _mm256_permute2f128_pd(v, v, 0x01);
}

} // namespace

void wilson_hop_avx2(const HopTables& t, double rw, bool dagger,
                     const cdbl* in, cdbl* out) {
  const double cf0 = (1.0 - rw) * 0.5;
  const double cb0 = -(1.0 + rw) * 0.5;
  const double cf = dagger ? cb0 : cf0;
  const double cb = dagger ? cf0 : cb0;
  const __m256d rwv = _mm256_set1_pd(rw);
  const __m256d cfv = _mm256_set1_pd(cf);
  const __m256d cbv = _mm256_set1_pd(cb);

  // lane sign masks, lowest lane last in set_epi64x
  const __m256d neg13 = _mm256_castsi256_pd(_mm256_set_epi64x(SGN, 0, SGN, 0));
  const __m256d neg01 = _mm256_castsi256_pd(_mm256_set_epi64x(0, 0, SGN, SGN));
  const __m256d neg12 = _mm256_castsi256_pd(_mm256_set_epi64x(0, SGN, SGN, 0));
  const __m256d neg02 = _mm256_castsi256_pd(_mm256_set_epi64x(0, SGN, 0, SGN));
  const __m256d neg23 = _mm256_castsi256_pd(_mm256_set_epi64x(SGN, SGN, 0, 0));
  const __m256d neg03 = _mm256_castsi256_pd(_mm256_set_epi64x(SGN, 0, 0, SGN));

  const double* ip = reinterpret_cast<const double*>(in);
  double* op = reinterpret_cast<double*>(out);

  for (std::size_t x = 0; x < t.nsite; ++x) {
    const __m256d psi = _mm256_loadu_pd(ip + 4 * x);
    __m256d acc = _mm256_setzero_pd();

    for (int mu = 0; mu < 4; ++mu) {
      const std::size_t f = static_cast<std::size_t>(t.fwd[mu][x]);
      const std::size_t b = static_cast<std::size_t>(t.bwd[mu][x]);
      __m256d h = _mm256_mul_pd(psi, rwv);

      if (cf != 0.0) {
        const cdbl u = t.link[mu][x];
        const __m256d w = cmul_by_scalar(_mm256_loadu_pd(ip + 4 * f),
                                         _mm256_set1_pd(u.real()),
                                         _mm256_set1_pd(u.imag()));
        h = _mm256_add_pd(h, _mm256_mul_pd(w, cfv));
      }
      {
        const cdbl ub = t.link[mu][b];
        const __m256d w = cmul_by_scalar(_mm256_loadu_pd(ip + 4 * b),
                                         _mm256_set1_pd(ub.real()),
                                         _mm256_set1_pd(-ub.imag()));
        h = _mm256_add_pd(h, _mm256_mul_pd(w, cbv));
      }

      __m256d s;
      if (!dagger) {
        switch (mu) {
          case 0: s = h; break;
          case 1: // -i tau1
            s = _mm256_xor_pd(_mm256_permute_pd(swap_halves(h), 0x5), neg13);
            break;
          case 2: // -i tau2
            s = _mm256_xor_pd(swap_halves(h), neg01);
            break;
          default: // -i tau3
            s = _mm256_xor_pd(_mm256_permute_pd(h, 0x5), neg12);
            break;
        }
      } else {
        switch (mu) {
          case 0: s = h; break;
          case 1: // +i tau1
            s = _mm256_xor_pd(_mm256_permute_pd(swap_halves(h), 0x5), neg02);
            break;
          case 2: // +i tau2
            s = _mm256_xor_pd(swap_halves(h), neg23);
            break;
          default: // +i tau3
            s = _mm256_xor_pd(_mm256_permute_pd(h, 0x5), neg03);
            break;
        }
      }
      acc = _mm256_add_pd(acc, s);
    }

    _mm256_storeu_pd(op + 4 * x, acc);
  }
}

#else // !__AVX2__

void wilson_hop_avx2(const HopTables& t, double rw, bool dagger,
                     const cdbl* in, cdbl* out) {
  wilson_hop_scalar(t, rw, dagger, in, out);
}

#endif

} // namespace nwb::kernels::detail
