#include <doctest.h>

#include <random>
#include <set>

#include "eitdicke/philox.hpp"

using eitdicke::Philox4x64;
using eitdicke::Xoshiro256pp;

static_assert(std::uniform_random_bit_generator<Philox4x64>);
static_assert(std::uniform_random_bit_generator<Xoshiro256pp>);

// Known answers from an independent Philox4x64-10 implementation (numpy's
// bit generator, which increments its counter before each block).
TEST_CASE("Philox4x64-10 known answers") {
  const auto a = Philox4x64::generate({1, 0, 0, 0}, {0, 0});
  CHECK(a[0] == 0x02f4ba6408e4d89bULL);
  CHECK(a[1] == 0x3dd62b0b9ca8c5b2ULL);
  CHECK(a[2] == 0x1c8667a55d902e79ULL);
  CHECK(a[3] == 0x907d7a052fd5b4dcULL);

  Philox4x64::Block c{~0ULL, 0, 0, 0};
  Philox4x64::increment(c);
  CHECK((c == Philox4x64::Block{0, 1, 0, 0}));
  const auto b = Philox4x64::generate(c, {0, 0});
  CHECK(b[0] == 0xe85facf8b3b067d6ULL);
  CHECK(b[1] == 0xfdbc6a61c123b5f8ULL);
  CHECK(b[2] == 0x349bde9a4b8d60c1ULL);
  CHECK(b[3] == 0x39212690df8b178aULL);
}

TEST_CASE("Philox stream layout") {
  Philox4x64 g(7, 3);
  const auto first = Philox4x64::generate({0, 0, 3, 0}, {7, 0});
  const auto second = Philox4x64::generate({1, 0, 3, 0}, {7, 0});
  for (int i = 0; i < 4; ++i) CHECK(g() == first[i]);
  for (int i = 0; i < 4; ++i) CHECK(g() == second[i]);
}

TEST_CASE("per-trajectory xoshiro streams") {
  auto a = Xoshiro256pp::for_stream(1, 0);
  auto b = Xoshiro256pp::for_stream(1, 0);
  auto c = Xoshiro256pp::for_stream(1, 1);
  auto d = Xoshiro256pp::for_stream(2, 0);
  std::set<std::uint64_t> firsts;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    if (i == 0) {
      firsts.insert(x);
      firsts.insert(c());
      firsts.insert(d());
    }
  }
  CHECK(firsts.size() == 3);

  // Rough uniformity of the top bit over many streams.
  int ones = 0;
  for (std::uint64_t s = 0; s < 20000; ++s) ones += static_cast<int>(Xoshiro256pp::for_stream(9, s)() >> 63);
  CHECK(std::abs(ones - 10000) < 4 * 71);
}
