#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "tweezer/kernels.hpp"

using namespace tw;

namespace {

std::vector<std::complex<double>> random_state(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::complex<double>> out(n);
  for (auto& v : out)
    v = {std::ldexp(static_cast<double>(rng() >> 11), -53) - 0.5,
         std::ldexp(static_cast<double>(rng() >> 11), -53) - 0.5};
  return out;
}

std::vector<double> random_reals(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = std::ldexp(static_cast<double>(rng() >> 11), -53) - 0.5;
  return out;
}

}  // namespace

TEST_CASE("parallel pointwise kernels are bit-identical to the serial reference") {
  for (int n : {17, 560, 4096}) {
    auto v = random_reals(n, 1);
    auto x = random_reals(n, 2);

    auto a = random_state(n, 3);
    auto b = a;
    kernels::phase_apply(a, v, 0.37);
    kernels::phase_apply_serial(b, v, 0.37);
    for (int i = 0; i < n; ++i) CHECK(a[i] == b[i]);

    auto f = random_state(n, 4);
    kernels::pointwise_multiply(a, f);
    kernels::pointwise_multiply_serial(b, f);
    for (int i = 0; i < n; ++i) CHECK(a[i] == b[i]);

    auto va = v, vb = v;
    kernels::add_gaussian_well(va, x, 0.1, 2.5, 0.05);
    kernels::add_gaussian_well_serial(vb, x, 0.1, 2.5, 0.05);
    for (int i = 0; i < n; ++i) CHECK(va[i] == vb[i]);
  }
}

TEST_CASE("phase application preserves magnitude") {
  auto a = random_state(1024, 9);
  auto v = random_reals(1024, 10);
  auto before = a;
  kernels::phase_apply(a, v, 1.234);
  for (int i = 0; i < 1024; ++i)
    CHECK(std::abs(a[i]) == doctest::Approx(std::abs(before[i])).epsilon(1e-14));
}

TEST_CASE("reductions") {
  std::vector<std::complex<double>> a = {{1, 0}, {0, 2}, {-1, 1}};
  CHECK(kernels::norm_sq(a) == doctest::Approx(7.0));
  std::vector<std::complex<double>> b = {{1, 0}, {1, 0}, {0, 1}};
  const auto ip = kernels::inner(a, b);
  CHECK(ip.real() == doctest::Approx(2.0));  // conj(a).b summed
  std::vector<double> w = {2.0, 0.5, 1.0};
  CHECK(kernels::weighted_abs2(a, w) == doctest::Approx(2.0 + 2.0 + 2.0));
}
