#include <cmath>
#include <set>

#include "doctest.h"
#include "rst/rng.hpp"

using namespace rst;

TEST_SUITE("rng") {

// Known-answer vectors published with the Random123 reference implementation.
TEST_CASE("philox bijection matches reference vectors") {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::bijection(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::bijection(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::bijection(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("same key and stream give the same sequence") {
  Philox4x32 a(42, 7, 3), b(42, 7, 3);
  for (int i = 0; i < 1000; ++i) REQUIRE(a() == b());
}

TEST_CASE("different streams and keys diverge") {
  Philox4x32 a(42, 7, 3), b(42, 7, 4), c(43, 7, 3), d(42, 8, 3);
  std::set<std::uint64_t> first{a(), b(), c(), d()};
  CHECK(first.size() == 4);
}

TEST_CASE("discard skips exactly n outputs") {
  for (std::uint64_t n : {0ULL, 1ULL, 2ULL, 3ULL, 7ULL, 1000ULL}) {
    Philox4x32 a(9, 1, 2), b(9, 1, 2);
    for (std::uint64_t i = 0; i < n; ++i) a();
    b.discard(n);
    CHECK(a() == b());
  }
}

TEST_CASE("uniform01 lies in [0, 1) with mean 1/2 and variance 1/12") {
  auto g = make_stream(1, 0, Stream::check);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = uniform01(g);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    s += u;
    s2 += u * u;
  }
  const double mean = s / n;
  CHECK(std::abs(mean - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(s2 / n - mean * mean - 1.0 / 12.0) < 2e-3);
}

TEST_CASE("mix64 is a bijection on a sample and spreads nearby inputs") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(mix64(i));
  CHECK(seen.size() == 10000);
  CHECK(__builtin_popcountll(mix64(1) ^ mix64(2)) > 16);
}

}
