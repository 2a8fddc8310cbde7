#include <gtest/gtest.h>

#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "pslab/experiment.hpp"
#include "pslab/expsums.hpp"
#include "pslab/parallel.hpp"

namespace {

class Workers {
 public:
  explicit Workers(int n) : saved_(pslab::worker_count()) { pslab::set_worker_count(n); }
  ~Workers() { pslab::set_worker_count(saved_); }

 private:
  int saved_;
};

double harmonic_tail(std::size_t n) {
  return pslab::ordered_sum<double>(n, [](std::size_t i) {
    return std::sin(static_cast<double>(i) * 0.37) / static_cast<double>(i + 1);
  });
}

}  // namespace

TEST(Parallel, OrderedSumIsBitwiseStable) {
  const std::size_t n = 100000;
  double ref = 0;
  {
    Workers w(1);
    ref = harmonic_tail(n);
  }
  for (int k : {2, 3, 8}) {
    Workers w(k);
    EXPECT_EQ(std::bit_cast<std::uint64_t>(harmonic_tail(n)), std::bit_cast<std::uint64_t>(ref)) << k;
  }
}

TEST(Parallel, OrderedMapCoversEveryIndex) {
  Workers w(4);
  const auto v = pslab::ordered_map<std::size_t>(2049, [](std::size_t i) { return i * i; });
  ASSERT_EQ(v.size(), 2049u);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], i * i);
  EXPECT_TRUE(pslab::ordered_map<int>(0, [](std::size_t) { return 1; }).empty());
}

TEST(Parallel, FirstExceptionInChunkOrder) {
  Workers w(8);
  std::atomic<int> ran{0};
  try {
    pslab::run_chunks(16, [&](std::size_t c) {
      ++ran;
      if (c == 3 || c == 11) throw std::runtime_error("chunk " + std::to_string(c));
    });
    FAIL() << "expected a throw";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "chunk 3");
  }
}

TEST(Parallel, CompensationRecoversSmallTerms) {
  pslab::CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  EXPECT_EQ(s.value(), 1000.0);
}

TEST(Parallel, ExperimentResultsIndependentOfWorkers) {
  const auto alpha = pslab::AlphaSpec::parse("sqrt:2");
  const auto beta = pslab::FixedReal::from_integer(0, 128);
  const pslab::Rational g(19, 20);
  const auto params = pslab::derive_params(alpha, beta, g, 1.0, 0.0, {1393, 985});
  pslab::GammaSums a, b;
  double oa = 0, ob = 0;
  std::complex<double> sa, sb;
  {
    Workers w(1);
    a = pslab::gamma_sums(params);
    oa = pslab::omega_sum(alpha, beta, 0.2, 31, 5000);
    sa = pslab::prime_phase_sum(alpha, 3, 20000);
  }
  {
    Workers w(8);
    b = pslab::gamma_sums(params);
    ob = pslab::omega_sum(alpha, beta, 0.2, 31, 5000);
    sb = pslab::prime_phase_sum(alpha, 3, 20000);
  }
  EXPECT_EQ(std::bit_cast<std::uint64_t>(a.gamma), std::bit_cast<std::uint64_t>(b.gamma));
  EXPECT_EQ(std::bit_cast<std::uint64_t>(a.gamma1), std::bit_cast<std::uint64_t>(b.gamma1));
  EXPECT_EQ(std::bit_cast<std::uint64_t>(oa), std::bit_cast<std::uint64_t>(ob));
  EXPECT_EQ(std::bit_cast<std::uint64_t>(sa.real()), std::bit_cast<std::uint64_t>(sb.real()));
  EXPECT_EQ(std::bit_cast<std::uint64_t>(sa.imag()), std::bit_cast<std::uint64_t>(sb.imag()));
}

TEST(Parallel, WorkerCountFloorsAtOne) {
  Workers w(3);
  EXPECT_EQ(pslab::worker_count(), 3);
  pslab::set_worker_count(0);
  EXPECT_EQ(pslab::worker_count(), 1);
}
