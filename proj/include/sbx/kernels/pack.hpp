#pragma once

// Lane abstractions for the batched trial kernels. One templated kernel body
// is instantiated with ScalarPack (the reference) and Avx2Pack (4 trials per
// vector). Both packs implement every operation with the same IEEE semantics
// and the build disables FP contraction, so for a fixed trial seed the two
// instantiations produce bit-identical trajectories.

#include <cmath>
#include <cstdint>

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace sbx::kernels {

struct ScalarPack {
  static constexpr int width = 1;
  using F = double;
  using U = std::uint64_t;
  using M = bool;

  static F fbroadcast(double x) { return x; }
  static F fzero() { return 0.0; }
  static F add(F a, F b) { return a + b; }
  static F sub(F a, F b) { return a - b; }
  static F mul(F a, F b) { return a * b; }
  static F div(F a, F b) { return a / b; }
  static F fmin(F a, F b) { return b < a ? b : a; }
  static F fmax(F a, F b) { return b > a ? b : a; }
  static F fabs_(F a) { return std::fabs(a); }

  static M le(F a, F b) { return a <= b; }
  static M lt(F a, F b) { return a < b; }
  static M ge(F a, F b) { return a >= b; }
  static M mfalse() { return false; }
  static M mand(M a, M b) { return a && b; }
  static M mor(M a, M b) { return a || b; }
  static M mnot(M a) { return !a; }
  static F select(M m, F a, F b) { return m ? a : b; }
  static bool all(M m) { return m; }

  static U ubroadcast(std::uint64_t x) { return x; }
  static U uadd(U a, U b) { return a + b; }
  static U uxor(U a, U b) { return a ^ b; }
  static U uor(U a, U b) { return a | b; }
  template <int N>
  static U ushl(U a) {
    return a << N;
  }
  template <int N>
  static U ushr(U a) {
    return a >> N;
  }
  // Exact for values below 2^53.
  static F u53_to_f(U v) { return static_cast<double>(v); }

  static void fstore(double* dst, F v) { *dst = v; }
  static void ustore(std::uint64_t* dst, U v) { *dst = v; }
  static U uload(const std::uint64_t* src) { return *src; }
  static F fload(const double* src) { return *src; }
  static void mstore(bool* dst, M m) { *dst = m; }
};

#if defined(__AVX2__)

struct Avx2Pack {
  static constexpr int width = 4;
  using F = __m256d;
  using U = __m256i;
  using M = __m256d;  // compare result; all-ones or all-zeros per lane

  static F fbroadcast(double x) { return _mm256_set1_pd(x); }
  static F fzero() { return _mm256_setzero_pd(); }
  static F add(F a, F b) { return _mm256_add_pd(a, b); }
  static F sub(F a, F b) { return _mm256_sub_pd(a, b); }
  static F mul(F a, F b) { return _mm256_mul_pd(a, b); }
  static F div(F a, F b) { return _mm256_div_pd(a, b); }
  static F fmin(F a, F b) { return _mm256_min_pd(a, b); }
  static F fmax(F a, F b) { return _mm256_max_pd(a, b); }
  static F fabs_(F a) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), a);
  }

  static M le(F a, F b) { return _mm256_cmp_pd(a, b, _CMP_LE_OQ); }
  static M lt(F a, F b) { return _mm256_cmp_pd(a, b, _CMP_LT_OQ); }
  static M ge(F a, F b) { return _mm256_cmp_pd(a, b, _CMP_GE_OQ); }
  static M mfalse() { return _mm256_setzero_pd(); }
  static M mand(M a, M b) { return _mm256_and_pd(a, b); }
  static M mor(M a, M b) { return _mm256_or_pd(a, b); }
  static M mnot(M a) { return _mm256_xor_pd(a, _mm256_castsi256_pd(_mm256_set1_epi64x(-1))); }
  static F select(M m, F a, F b) { return _mm256_blendv_pd(b, a, m); }
  static bool all(M m) { return _mm256_movemask_pd(m) == 0xF; }

  static U ubroadcast(std::uint64_t x) {
    return _mm256_set1_epi64x(static_cast<long long>(x));
  }
  static U uadd(U a, U b) { return _mm256_add_epi64(a, b); }
  static U uxor(U a, U b) { return _mm256_xor_si256(a, b); }
  static U uor(U a, U b) { return _mm256_or_si256(a, b); }
  template <int N>
  static U ushl(U a) {
    return _mm256_slli_epi64(a, N);
  }
  template <int N>
  static U ushr(U a) {
    return _mm256_srli_epi64(a, N);
  }

  // Exact u64 -> f64 for values below 2^53 via the split + magic-constant
  // trick: both halves convert exactly and their sum fits in 53 bits.
  static F u53_to_f(U v) {
    const U lo = _mm256_and_si256(v, _mm256_set1_epi64x(0xFFFFFFFFLL));
    const U hi = _mm256_srli_epi64(v, 32);
    const F dlo = _mm256_sub_pd(
        _mm256_castsi256_pd(_mm256_or_si256(lo, _mm256_set1_epi64x(0x4330000000000000LL))),
        _mm256_set1_pd(0x1.0p52));
    const F dhi = _mm256_sub_pd(
        _mm256_castsi256_pd(_mm256_or_si256(hi, _mm256_set1_epi64x(0x4530000000000000LL))),
        _mm256_set1_pd(0x1.0p84));
    return _mm256_add_pd(dhi, dlo);
  }

  static void fstore(double* dst, F v) { _mm256_storeu_pd(dst, v); }
  static void ustore(std::uint64_t* dst, U v) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst), v);
  }
  static U uload(const std::uint64_t* src) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src));
  }
  static F fload(const double* src) { return _mm256_loadu_pd(src); }
  static void mstore(bool* dst, M m) {
    const int bits = _mm256_movemask_pd(m);
    for (int i = 0; i < 4; ++i) dst[i] = (bits >> i) & 1;
  }
};

#endif  // __AVX2__

// xoshiro256++ with one independent stream per lane; mirrors sbx::Xoshiro256pp.
template <class P>
struct XoshiroLanes {
  typename P::U s0, s1, s2, s3;

  template <int R>
  static typename P::U rotl(typename P::U x) {
    return P::uor(P::template ushl<R>(x), P::template ushr<64 - R>(x));
  }

  typename P::U next_u64() {
    const auto result = P::uadd(rotl<23>(P::uadd(s0, s3)), s0);
    const auto t = P::template ushl<17>(s1);
    s2 = P::uxor(s2, s0);
    s3 = P::uxor(s3, s1);
    s1 = P::uxor(s1, s2);
    s0 = P::uxor(s0, s3);
    s2 = P::uxor(s2, t);
    s3 = rotl<45>(s3);
    return result;
  }

  typename P::F next_double() {
    const auto bits = P::template ushr<11>(next_u64());
    return P::mul(P::u53_to_f(bits), P::fbroadcast(0x1.0p-53));
  }
};

}  // namespace sbx::kernels
